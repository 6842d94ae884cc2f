//! Scan an (a, k) grid of family maps and write the region CSV used for
//! plotting.
//!
//! Run with `cargo run --release --example region_scan`. Writes
//! `region.csv` in the working directory; load it with any CSV reader or
//! gnuplot (`set datafile separator ","`).

use ksmaps::family::{region_csv, scan_region};
use ksmaps::ks::KsVerdict;
use ksmaps::OptimizerConfig;

fn main() {
    let cfg = OptimizerConfig {
        starts: 2000,
        ..OptimizerConfig::default()
    };
    let cells = scan_region(0.0, 1.0, 0.0, 1.45, 0.05, &cfg).expect("valid range");

    let positive = cells.iter().filter(|c| c.positive).count();
    let analytic = cells.iter().filter(|c| c.analytic_ks).count();
    let violations = cells
        .iter()
        .filter(|c| c.ks_numeric == KsVerdict::ViolationFound)
        .count();
    println!(
        "{} cells: {} positive, {} in the closed-form region, {} numeric violations",
        cells.len(),
        positive,
        analytic,
        violations
    );

    // The closed-form region never overlaps a numeric violation.
    let overlap = cells
        .iter()
        .filter(|c| c.analytic_ks && c.positive && c.ks_numeric == KsVerdict::ViolationFound)
        .count();
    println!("cells with predicate && positive && violation: {overlap}");

    // Coarse text rendering, k increasing upward: '#' analytic region,
    // '+' no violation found, 'x' violation.
    let mut ks: Vec<f64> = cells.iter().map(|c| c.k).collect();
    ks.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ks.dedup();
    for k in ks {
        let mut line = format!("k={k:4.2} ");
        for c in cells.iter().filter(|c| (c.k - k).abs() < 1e-12) {
            line.push(if c.analytic_ks {
                '#'
            } else if c.ks_numeric == KsVerdict::NoViolationFound {
                '+'
            } else {
                'x'
            });
        }
        println!("{line}");
    }
    println!("       a = 0.00 .. 1.00");

    std::fs::write("region.csv", region_csv(&cells)).expect("write region.csv");
    println!("wrote region.csv ({} rows)", cells.len());
}
