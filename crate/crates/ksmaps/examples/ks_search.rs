//! Defect-operator search for Kadison-Schwarz violations.
//!
//! The defect `D(x) = Phi(x*x) - Phi(x)* Phi(x)` must be positive
//! semidefinite for every `x`; the search minimizes its smallest eigenvalue
//! over normalized arguments and reports a reproducible witness when it
//! dips below zero.
//!
//! Run with `cargo run --example ks_search`.

use ksmaps::ks::{check_ks_at, ks_defect, scalar_conditions, verify_ks};
use ksmaps::numerics::min_eigenvalue;
use ksmaps::pauli::PauliForm;
use ksmaps::{FamilyParams, OptimizerConfig, UnitalQubitMap};

fn report(label: &str, phi: &UnitalQubitMap, budget: usize) {
    let cfg = OptimizerConfig::default().with_starts(budget);
    let r = verify_ks(phi, &cfg, 1e-8);
    println!(
        "{label}: {} (min defect eigenvalue {:+.6}, {} samples, seed {})",
        r.verdict.as_str(),
        r.min_defect_eigenvalue,
        r.samples_evaluated,
        r.seed
    );
    if let Some(w) = r.witness {
        let d = ks_defect(phi, &w);
        let dense = vec![vec![d.e[0][0], d.e[0][1]], vec![d.e[1][0], d.e[1][1]]];
        println!(
            "  witness reproduces the violation independently: min eig {:+.6}",
            min_eigenvalue(&dense).unwrap()
        );
    }
}

fn main() {
    report("identity       ", &UnitalQubitMap::identity(), 4000);
    report("transposition  ", &UnitalQubitMap::transposition(), 10_000);
    report(
        "family a=0.5 k=0.4",
        &FamilyParams::new(0.5, 0.4).unwrap().make_map(),
        10_000,
    );
    report(
        "family a=1.0 k=0.6",
        &FamilyParams::new(1.0, 0.6).unwrap().make_map(),
        10_000,
    );

    // Pointwise checks: Hermitian arguments always satisfy the inequality
    // for positive unital maps; the matrix unit E12 breaks transposition.
    let tr = UnitalQubitMap::transposition();
    let s1 = PauliForm::real(0.0, [1.0, 0.0, 0.0]);
    let e12 = PauliForm::matrix_unit(0, 1);
    println!("\ntransposition at s1:  ok = {}", check_ks_at(&tr, &s1, 1e-9));
    println!("transposition at E12: ok = {}", check_ks_at(&tr, &e12, 1e-9));

    // The scalar conditions mirror the defect verdict exactly.
    let phi = FamilyParams::new(1.0, 0.6).unwrap().make_map();
    let s = 1.0 / 2f64.sqrt();
    let x = PauliForm::new(
        ksmaps::C::new(0.0, 0.0),
        [ksmaps::C::new(0.0, 0.0), ksmaps::C::new(s, 0.0), ksmaps::C::new(0.0, s)],
    );
    let sc = scalar_conditions(&phi, &x);
    println!(
        "\nscalar conditions at the witness: {:.4} <= {:.4} is {}, {:.4} <= {:.4} is {}",
        sc.lhs1,
        sc.rhs1,
        sc.lhs1 <= sc.rhs1 + 1e-8,
        sc.lhs2,
        sc.rhs2,
        sc.lhs2 <= sc.rhs2 + 1e-8,
    );
}
