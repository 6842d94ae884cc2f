//! Tour of the Pauli coefficient algebra: conversions, products, adjoints
//! and positivity.
//!
//! Run with `cargo run --example pauli_algebra`.

use ksmaps::pauli::{cross, multiply, PauliForm, C};

fn main() {
    // E11 = diag(1, 0) has coefficients (1/2, (0, 0, 1/2)).
    let e11 = PauliForm::matrix_unit(0, 0);
    println!("E11 coefficients: w0 = {}, w = {:?}", e11.w0, e11.w);
    println!("E11 dense: {:?}", e11.to_matrix().e);

    // s1 s2 = i s3 without touching dense matrices.
    let s1 = PauliForm::real(0.0, [1.0, 0.0, 0.0]);
    let s2 = PauliForm::real(0.0, [0.0, 1.0, 0.0]);
    let prod = multiply(&s1, &s2);
    println!("s1 * s2 = (w0 = {}, w = {:?})", prod.w0, prod.w);

    // x* x for x = (s2 + i s3)/sqrt(2): the coefficients (1, (-1, 0, 0))
    // describe the rank-one projector I - s1.
    let s = 1.0 / 2f64.sqrt();
    let x = PauliForm::new(C::new(0.0, 0.0), [C::new(0.0, 0.0), C::new(s, 0.0), C::new(0.0, s)]);
    let xx = x.star_square();
    println!("x*x = (w0 = {}, w = {:?})", xx.w0, xx.w);
    println!("x*x is PSD: {}", xx.is_psd(1e-9));

    // A Hermitian form is PSD exactly when ||w|| <= w0.
    let boundary = PauliForm::real(1.0, [0.0, 0.0, -1.0]);
    println!(
        "(1, (0,0,-1)) PSD: {} (rank-one boundary case)",
        boundary.is_psd(1e-9)
    );
    let not_psd = PauliForm::real(0.07125, [0.0, 0.15435, 0.0]);
    println!(
        "(0.07125, (0, 0.15435, 0)) PSD: {} (0.15435 > 0.07125)",
        not_psd.is_psd(1e-9)
    );

    // The complex cross product conjugates neither argument; pairing w with
    // conj(w) produces the purely imaginary first component -i.
    let w = [C::new(0.0, 0.0), C::new(s, 0.0), C::new(0.0, s)];
    let wc = [w[0].conj(), w[1].conj(), w[2].conj()];
    println!("cross(w, conj w) = {:?}", cross(&w, &wc));

    // Round trip through the dense representation is exact to 1e-12.
    let p = PauliForm::new(
        C::new(0.3, -0.2),
        [C::new(0.1, 0.7), C::new(-0.4, 0.0), C::new(0.0, 0.25)],
    );
    let q = PauliForm::from_matrix(&p.to_matrix());
    println!("round-trip deviation: {:.3e}", q.max_abs_diff(&p));
}
