//! Positivity decisions for unital qubit maps, with a counterexample whose
//! Bloch witness is checked by hand.
//!
//! Run with `cargo run --example positivity`.

use ksmaps::{FamilyParams, OptimizerConfig, UnitalQubitMap};

fn show(label: &str, phi: &UnitalQubitMap, cfg: &OptimizerConfig) {
    let v = phi.is_positive(cfg, 1e-8);
    match v.witness {
        Some(w) => println!(
            "{label}: positive = {}, margin = {:+.6}, witness w = [{:+.4}, {:+.4}, {:+.4}]",
            v.positive, v.margin, w[0], w[1], w[2]
        ),
        None => println!("{label}: positive = {}, margin = {:+.6}", v.positive, v.margin),
    }
}

fn main() {
    let cfg = OptimizerConfig::default();

    show("identity      ", &UnitalQubitMap::identity(), &cfg);
    show("transposition ", &UnitalQubitMap::transposition(), &cfg);

    // lambda = (1,0,0), T = diag(0, 0.6, 0.6): not positive. The witness w
    // maximizes ||T w|| - lambda.w at sqrt(1 + k^2) > 1.
    let phi = FamilyParams::new(1.0, 0.6).unwrap().make_map();
    show("family a=1 k=0.6", &phi, &cfg);
    let v = phi.is_positive(&cfg, 1e-8);
    if let Some(w) = v.witness {
        let tw = phi.t_apply(&w);
        let lhs = (tw[0] * tw[0] + tw[1] * tw[1] + tw[2] * tw[2]).sqrt();
        let rhs = 1.0 + w[0];
        println!("  witness check: ||T w|| = {lhs:.6} > 1 + lambda.w = {rhs:.6}");
        println!("  the state (I + w.s)/2 maps to a matrix with a negative eigenvalue:");
        let out = phi.apply(&ksmaps::PauliForm::real(0.5, [w[0] / 2.0, w[1] / 2.0, w[2] / 2.0]));
        println!(
            "  output coefficients (w0 = {:.5}, |w| = {:.5}), min eigenvalue {:+.5}",
            out.w0.re,
            out.norm_w_sqr().sqrt(),
            out.w0.re - out.norm_w_sqr().sqrt()
        );
    }

    // Within the family the positivity boundary is the circle a^2 + k^2 = 1.
    println!("\nfamily positivity along a = 0.6:");
    for k in [0.5, 0.7, 0.79, 0.81, 0.9] {
        let phi = FamilyParams::new(0.6, k).unwrap().make_map();
        let v = phi.is_positive(&cfg, 1e-8);
        println!(
            "  k = {k:.2}: positive = {} (a^2 + k^2 = {:.4})",
            v.positive,
            0.36 + k * k
        );
    }

    // Necessary bounds hold for every positive map but do not certify one.
    let phi = FamilyParams::new(1.0, 0.6).unwrap().make_map();
    println!(
        "\nnecessary bounds for the non-positive family map: {}",
        phi.necessary_bounds()
    );
}
