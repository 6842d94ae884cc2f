use clap::{Parser, Subcommand};
use ksmaps::cli;

/// Verifiers for unital qubit maps: positivity, Kadison-Schwarz defect
/// search, closed-form region analysis, Choi spectra and entanglement
/// witnesses. Commands print a JSON object; exit code 0 means an
/// affirmative verdict, 1 a negative one, 2 an input error.
#[derive(Parser)]
#[command(name = "ksmaps", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide positivity of a map (sphere search for ||Tw|| > 1 + lambda·w).
    CheckPositivity {
        /// Map document (JSON: {lambda, T} | {family: {a, k}} | {builtin}).
        #[arg(long)]
        map: std::path::PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 256)]
        starts: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Search for a Kadison-Schwarz violation of a map.
    CheckKs {
        #[arg(long)]
        map: std::path::PathBuf,
        /// Number of defect samples before refinement.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Classify an (a, k) grid of family maps and write a CSV.
    ScanRegion {
        #[arg(long)]
        a_min: f64,
        #[arg(long)]
        a_max: f64,
        #[arg(long)]
        k_min: f64,
        #[arg(long)]
        k_max: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Output CSV path.
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Choi spectrum of a map.
    Choi {
        #[arg(long)]
        map: std::path::PathBuf,
        /// Halve the Choi matrix (trace 1 instead of 2).
        #[arg(long, default_value_t = false)]
        normalized: bool,
    },
    /// Entanglement-witness checks for the Choi matrix of a map.
    Witness {
        #[arg(long)]
        map: std::path::PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Closed-form quantities for the family map at (a, k).
    Family {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        k: f64,
        #[arg(long, default_value_t = 512)]
        budget: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn load_map(path: &std::path::Path) -> Result<ksmaps::maps::UnitalQubitMap, cli::CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        cli::CliError::Invalid(format!("cannot read {}: {e}", path.display()))
    })?;
    cli::parse_map_document(&text)
}

fn main() {
    let args = Args::parse();
    let result: Result<(serde_json::Value, i32), cli::CliError> = match args.command {
        Command::CheckPositivity {
            map,
            tol,
            starts,
            seed,
        } => load_map(&map).map(|m| cli::cmd_check_positivity(&m, tol, starts, seed)),
        Command::CheckKs {
            map,
            budget,
            seed,
            tol,
        } => load_map(&map).map(|m| cli::cmd_check_ks(&m, budget, seed, tol)),
        Command::ScanRegion {
            a_min,
            a_max,
            k_min,
            k_max,
            step,
            budget,
            seed,
            out,
        } => cli::cmd_scan_region(
            a_min,
            a_max,
            k_min,
            k_max,
            step,
            budget,
            seed,
            out.to_str().unwrap_or_default(),
        ),
        Command::Choi { map, normalized } => load_map(&map).map(|m| cli::cmd_choi(&m, normalized)),
        Command::Witness {
            map,
            samples,
            seed,
            tol,
        } => load_map(&map).map(|m| cli::cmd_witness(&m, samples, seed, tol)),
        Command::Family { a, k, budget, seed } => cli::cmd_family(a, k, budget, seed),
    };
    match result {
        Ok((value, code)) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
