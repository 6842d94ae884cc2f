//! Command implementations behind the `ksmaps` binary: parse map documents,
//! run the verifiers, and emit JSON verdicts or CSV region data.
//!
//! Exit-code convention: 0 for a success or affirmative verdict, 1 for a
//! negative verdict, 2 for input errors.

use crate::choi::{choi_matrix, is_entanglement_witness};
use crate::family::{
    a1_region_inequality, analytic_ks_predicate, numeric_f_max, reduced_form_audit, region_csv,
    scan_region, FamilyParams,
};
use crate::ks::{verify_ks, KsVerdict};
use crate::maps::UnitalQubitMap;
use crate::numerics::OptimizerConfig;
use crate::pauli::C;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("cannot write {path}: {source}")]
    Unwritable {
        path: String,
        source: std::io::Error,
    },
}

/// On-disk map description: exactly one of an explicit `(lambda, T)` pair,
/// a `family {a, k}` block, or a named builtin.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub lambda: Option<[f64; 3]>,
    #[serde(rename = "T")]
    pub t: Option<[[f64; 3]; 3]>,
    pub family: Option<FamilyDoc>,
    pub builtin: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDoc {
    pub a: f64,
    pub k: f64,
}

pub fn parse_map_document(text: &str) -> Result<UnitalQubitMap, CliError> {
    let doc: MapDocument = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let explicit = doc.lambda.is_some() || doc.t.is_some();
    let forms = [explicit, doc.family.is_some(), doc.builtin.is_some()];
    if forms.iter().filter(|b| **b).count() != 1 {
        return Err(CliError::Invalid(
            "exactly one of {lambda, T}, {family}, {builtin} must be present".into(),
        ));
    }
    if explicit {
        let (lambda, t) = match (doc.lambda, doc.t) {
            (Some(l), Some(t)) => (l, t),
            _ => {
                return Err(CliError::Invalid(
                    "explicit form needs both lambda and T".into(),
                ))
            }
        };
        if lambda.iter().any(|v| !v.is_finite())
            || t.iter().flatten().any(|v| !v.is_finite())
        {
            return Err(CliError::Invalid("lambda and T must be finite reals".into()));
        }
        return Ok(UnitalQubitMap::new(lambda, t));
    }
    if let Some(f) = doc.family {
        let p = FamilyParams::new(f.a, f.k).map_err(|e| CliError::Invalid(e.to_string()))?;
        return Ok(p.make_map());
    }
    match doc.builtin.as_deref() {
        Some("identity") => Ok(UnitalQubitMap::identity()),
        Some("transposition") => Ok(UnitalQubitMap::transposition()),
        Some(other) => Err(CliError::Invalid(format!(
            "unknown builtin {other:?}; expected \"identity\" or \"transposition\""
        ))),
        None => unreachable!("one form guaranteed present"),
    }
}

fn complex_pair(z: C) -> Value {
    json!([z.re, z.im])
}

/// Positivity verdict as JSON; exit 0 when positive, 1 when not.
pub fn cmd_check_positivity(
    map: &UnitalQubitMap,
    tol: f64,
    starts: usize,
    seed: u64,
) -> (Value, i32) {
    let cfg = OptimizerConfig::default().with_seed(seed).with_starts(starts);
    let v = map.is_positive(&cfg, tol);
    let out = json!({
        "positive": v.positive,
        "margin": v.margin,
        "witness_w": v.witness.map(|w| json!([w[0], w[1], w[2]])).unwrap_or(Value::Null),
        "seed": seed,
    });
    (out, if v.positive { 0 } else { 1 })
}

/// Defect-search report as JSON; exit 0 for no violation, 1 for violation.
pub fn cmd_check_ks(map: &UnitalQubitMap, budget: usize, seed: u64, tol: f64) -> (Value, i32) {
    let cfg = OptimizerConfig::default().with_seed(seed).with_starts(budget);
    let r = verify_ks(map, &cfg, tol);
    let witness = r.witness.map(|w| {
        json!({
            "w0": complex_pair(w.w0),
            "w": [complex_pair(w.w[0]), complex_pair(w.w[1]), complex_pair(w.w[2])],
        })
    });
    let out = json!({
        "verdict": r.verdict.as_str(),
        "witness": witness.unwrap_or(Value::Null),
        "min_defect_eigenvalue": r.min_defect_eigenvalue,
        "samples_evaluated": r.samples_evaluated,
        "seed": r.seed,
    });
    let code = match r.verdict {
        KsVerdict::NoViolationFound => 0,
        KsVerdict::ViolationFound => 1,
    };
    (out, code)
}

/// Write the region CSV and return a summary line.
#[allow(clippy::too_many_arguments)]
pub fn cmd_scan_region(
    a_min: f64,
    a_max: f64,
    k_min: f64,
    k_max: f64,
    step: f64,
    budget: usize,
    seed: u64,
    out_path: &str,
) -> Result<(Value, i32), CliError> {
    let cfg = OptimizerConfig::default().with_seed(seed).with_starts(budget);
    let cells = scan_region(a_min, a_max, k_min, k_max, step, &cfg)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let csv = region_csv(&cells);
    std::fs::write(out_path, csv).map_err(|source| CliError::Unwritable {
        path: out_path.to_string(),
        source,
    })?;
    let positive = cells.iter().filter(|c| c.positive).count();
    let analytic = cells.iter().filter(|c| c.analytic_ks).count();
    let violations = cells
        .iter()
        .filter(|c| c.ks_numeric == KsVerdict::ViolationFound)
        .count();
    let out = json!({
        "rows": cells.len(),
        "positive": positive,
        "analytic_ks": analytic,
        "ks_violations": violations,
        "out": out_path,
        "seed": seed,
    });
    Ok((out, 0))
}

/// Choi spectrum as JSON; always exit 0 on valid input.
pub fn cmd_choi(map: &UnitalQubitMap, normalized: bool) -> (Value, i32) {
    let w = choi_matrix(map, normalized);
    let spec = w.spectrum().expect("Choi matrix is Hermitian by construction");
    let out = json!({
        "eigenvalues": spec.eigenvalues,
        "trace": w.trace(),
        "normalized": normalized,
    });
    (out, 0)
}

/// Entanglement-witness checks as JSON; exit 0 when all three pass.
pub fn cmd_witness(
    map: &UnitalQubitMap,
    samples: usize,
    seed: u64,
    tol: f64,
) -> (Value, i32) {
    let w = choi_matrix(map, false);
    let rep = is_entanglement_witness(&w, map, samples, seed, tol);
    let out = json!({
        "map_positive": rep.positivity.positive,
        "positivity_margin": rep.positivity.margin,
        "positivity_witness_w": rep.positivity.witness.map(|w| json!([w[0], w[1], w[2]])).unwrap_or(Value::Null),
        "min_choi_eigenvalue": rep.min_choi_eigenvalue,
        "choi_not_psd": rep.choi_not_psd,
        "separable_min_value": rep.separable_min_value,
        "separable_nonnegative": rep.separable_nonnegative,
        "entangled_state_value": rep.entangled_state_value.map(Value::from).unwrap_or(Value::Null),
        "is_witness": rep.is_witness,
        "samples": rep.samples,
        "seed": rep.seed,
        "notes": rep.notes,
    });
    (out, if rep.is_witness { 0 } else { 1 })
}

/// Closed-form family quantities at `(a, k)` as JSON.
pub fn cmd_family(a: f64, k: f64, budget: usize, seed: u64) -> Result<(Value, i32), CliError> {
    let p = FamilyParams::new(a, k).map_err(|e| CliError::Invalid(e.to_string()))?;
    let cfg = OptimizerConfig::default().with_seed(seed).with_starts(budget.clamp(16, 4096));
    let audit = reduced_form_audit(&p);
    let a1 = if (a - 1.0).abs() < 1e-12 {
        a1_region_inequality(k).ok()
    } else {
        None
    };
    fn maxima(v: Result<f64, crate::family::FamilyError>) -> (Value, Value) {
        match v {
            Ok(x) => (Value::from(x), Value::Null),
            Err(e) => (Value::Null, Value::from(e.to_string())),
        }
    }
    let (m2, m2_reason) = maxima(p.m2());
    let (m3, m3_reason) = maxima(p.m3());
    let (m4, m4_reason) = maxima(p.m4());
    let out = json!({
        "a": a,
        "k": k,
        "m1": p.m1(),
        "m2": m2,
        "m2_reason": m2_reason,
        "m3": m3,
        "m3_reason": m3_reason,
        "m4": m4,
        "m4_reason": m4_reason,
        "analytic_ks": analytic_ks_predicate(&p),
        "a1_region_inequality": a1.map(Value::from).unwrap_or(Value::Null),
        "numeric_f_max": numeric_f_max(&p, &cfg),
        "case3_attained": audit.case3_attained.map(Value::from).unwrap_or(Value::Null),
        "m4_vs_reduction": audit.general_vs_reduction.map(Value::from).unwrap_or(Value::Null),
        "seed": seed,
    });
    Ok((out, 0))
}
