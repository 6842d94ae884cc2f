//! Unital qubit maps in the `(lambda, T)` representation.
//!
//! A unital linear map on `M_2(C)` acts on Pauli coefficients as
//! `(w0, w) -> (w0 + lambda·w, T w)` with `lambda` a real 3-vector and `T` a
//! real 3x3 matrix; `Phi(I) = I` holds by construction. Positivity is
//! equivalent to `||T w|| <= 1 + lambda·w` on the real unit ball, decided
//! here by a sphere search (the objective is convex, so the maximum sits on
//! the boundary) with interior spot checks.

use crate::numerics::{maximize_with_starts, Domain, OptimizerConfig};
use crate::pauli::{C, PauliForm, ZERO};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MapError {
    #[error("matrix is not a rotation (orthogonal, determinant +1) to 1e-9")]
    NotARotation,
    #[error("mixing weight {0} outside [0, 1]")]
    OutOfRange(f64),
}

/// Unital qubit map `(lambda, T)`; both blocks are stored real, which is the
/// adjoint-preserving case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitalQubitMap {
    lambda: [f64; 3],
    t: [[f64; 3]; 3],
}

/// Outcome of the positivity decision.
#[derive(Debug, Clone)]
pub struct PositivityVerdict {
    pub positive: bool,
    /// Unit Bloch vector maximizing `||T w|| - lambda·w` when not positive.
    pub witness: Option<[f64; 3]>,
    /// `1 - max_w (||T w|| - lambda·w)`; negative when the map is not positive.
    pub margin: f64,
}

impl UnitalQubitMap {
    pub fn new(lambda: [f64; 3], t: [[f64; 3]; 3]) -> Self {
        Self { lambda, t }
    }

    /// The identity map.
    pub fn identity() -> Self {
        Self::new(
            [0.0; 3],
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        )
    }

    /// Transposition: `T = diag(1, -1, 1)`, `lambda = 0`.
    pub fn transposition() -> Self {
        Self::new(
            [0.0; 3],
            [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]],
        )
    }

    pub fn lambda(&self) -> [f64; 3] {
        self.lambda
    }

    pub fn t(&self) -> [[f64; 3]; 3] {
        self.t
    }

    /// `(w0, w) -> (w0 + lambda·w, T w)`; the dot product does not conjugate `w`.
    pub fn apply(&self, p: &PauliForm) -> PauliForm {
        let l = C::new(self.lambda[0], 0.0) * p.w[0]
            + C::new(self.lambda[1], 0.0) * p.w[1]
            + C::new(self.lambda[2], 0.0) * p.w[2];
        let mut tw = [ZERO; 3];
        for (i, row) in self.t.iter().enumerate() {
            tw[i] = C::new(row[0], 0.0) * p.w[0]
                + C::new(row[1], 0.0) * p.w[1]
                + C::new(row[2], 0.0) * p.w[2];
        }
        PauliForm::new(p.w0 + l, tw)
    }

    /// Real matrix-vector product `T w`.
    pub fn t_apply(&self, w: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, row) in self.t.iter().enumerate() {
            out[i] = row[0] * w[0] + row[1] * w[1] + row[2] * w[2];
        }
        out
    }

    /// Trace preservation is `lambda = 0`.
    pub fn is_trace_preserving(&self, tol: f64) -> bool {
        norm3(&self.lambda) <= tol
    }

    /// Decide positivity by maximizing `g(w) = ||T w|| - lambda·w` over the
    /// unit sphere (axis starts always included) with ball-interior spot
    /// checks; positive iff `max g <= 1 + tol`.
    pub fn is_positive(&self, cfg: &OptimizerConfig, tol: f64) -> PositivityVerdict {
        let g = |w: &[f64]| {
            let tw = self.t_apply(&[w[0], w[1], w[2]]);
            norm3(&tw) - (self.lambda[0] * w[0] + self.lambda[1] * w[1] + self.lambda[2] * w[2])
        };
        let mut axis_starts = Vec::with_capacity(6);
        for i in 0..3 {
            for s in [1.0, -1.0] {
                let mut v = vec![0.0; 3];
                v[i] = s;
                axis_starts.push(v);
            }
        }
        let (mut arg, mut best) = maximize_with_starts(g, &Domain::Sphere { dim: 3 }, cfg, &axis_starts)
            .expect("sphere domain is valid");
        // Interior spot checks; for the convex objective they can only
        // confirm the sphere maximum.
        for p in crate::numerics::start_points(&Domain::Ball { dim: 3, radius: 1.0 }, 32, cfg.seed)
        {
            let v = g(&p);
            if v > best {
                best = v;
                arg = p;
            }
        }
        let positive = best <= 1.0 + tol;
        PositivityVerdict {
            positive,
            witness: if positive {
                None
            } else {
                Some([arg[0], arg[1], arg[2]])
            },
            margin: 1.0 - best,
        }
    }

    /// Necessary conditions from positivity: `||T||_op <= 1 + ||lambda||`
    /// and `||lambda|| <= 1`. These do not imply positivity.
    pub fn necessary_bounds(&self) -> bool {
        let cfg = OptimizerConfig::default();
        let (_, opnorm) = maximize_with_starts(
            |w| norm3(&self.t_apply(&[w[0], w[1], w[2]])),
            &Domain::Sphere { dim: 3 },
            &cfg,
            &[],
        )
        .expect("sphere domain is valid");
        let ln = norm3(&self.lambda);
        opnorm <= 1.0 + ln + 1e-9 && ln <= 1.0 + 1e-12
    }

    /// Conjugation `x -> U Phi(V x V*) U*` expressed through the Bloch
    /// rotations of `U` and `V`: `lambda' = R_V^T lambda`, `T' = R_U T R_V`.
    pub fn conjugate(
        &self,
        ru: &[[f64; 3]; 3],
        rv: &[[f64; 3]; 3],
    ) -> Result<UnitalQubitMap, MapError> {
        if !is_rotation(ru, 1e-9) || !is_rotation(rv, 1e-9) {
            return Err(MapError::NotARotation);
        }
        let mut lambda = [0.0; 3];
        for i in 0..3 {
            for j in 0..3 {
                lambda[i] += rv[j][i] * self.lambda[j];
            }
        }
        let tv = mat_mul(&self.t, rv);
        let t = mat_mul(ru, &tv);
        Ok(UnitalQubitMap::new(lambda, t))
    }

    /// Componentwise convex combination `t*self + (1-t)*other`.
    pub fn convex_combine(&self, other: &UnitalQubitMap, t: f64) -> Result<UnitalQubitMap, MapError> {
        if !(0.0..=1.0).contains(&t) {
            return Err(MapError::OutOfRange(t));
        }
        let mut lambda = [0.0; 3];
        let mut tt = [[0.0; 3]; 3];
        for i in 0..3 {
            lambda[i] = t * self.lambda[i] + (1.0 - t) * other.lambda[i];
            for j in 0..3 {
                tt[i][j] = t * self.t[i][j] + (1.0 - t) * other.t[i][j];
            }
        }
        Ok(UnitalQubitMap::new(lambda, tt))
    }
}

pub(crate) fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn mat_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut r = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for (k, brow) in b.iter().enumerate() {
                r[i][j] += a[i][k] * brow[j];
            }
        }
    }
    r
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn is_rotation(m: &[[f64; 3]; 3], tol: f64) -> bool {
    // orthogonality: M^T M = I
    for i in 0..3 {
        for j in 0..3 {
            let mut g = 0.0;
            for row in m.iter() {
                g += row[i] * row[j];
            }
            let want = if i == j { 1.0 } else { 0.0 };
            if (g - want).abs() > tol {
                return false;
            }
        }
    }
    (det3(m) - 1.0).abs() <= tol
}

/// Rotation about a unit axis by `angle` (Rodrigues form); test/demo helper.
pub fn rotation_about(axis: [f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let n = norm3(&axis);
    let (x, y, z) = (axis[0] / n, axis[1] / n, axis[2] / n);
    let (s, c) = angle.sin_cos();
    let v = 1.0 - c;
    [
        [c + x * x * v, x * y * v - z * s, x * z * v + y * s],
        [y * x * v + z * s, c + y * y * v, y * z * v - x * s],
        [z * x * v - y * s, z * y * v + x * s, c + z * z * v],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Matrix2;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_map(rng: &mut ChaCha8Rng) -> UnitalQubitMap {
        let mut lam = [0.0; 3];
        let mut t = [[0.0; 3]; 3];
        for v in lam.iter_mut() {
            *v = rng.gen_range(-1.0..1.0);
        }
        for row in t.iter_mut() {
            for v in row.iter_mut() {
                *v = rng.gen_range(-1.0..1.0);
            }
        }
        UnitalQubitMap::new(lam, t)
    }

    fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        (0..n)
            .map(|i| {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
                let r = (1.0 - z * z).sqrt();
                let th = golden * i as f64;
                [r * th.cos(), r * th.sin(), z]
            })
            .collect()
    }

    /// Brute-force positivity oracle: smallest eigenvalue of `Phi(I + w·s)`
    /// over a Bloch-sphere grid.
    fn grid_positive(phi: &UnitalQubitMap, points: usize, tol: f64) -> bool {
        fibonacci_sphere(points).iter().all(|w| {
            let p = PauliForm::real(1.0, *w);
            let out = phi.apply(&p);
            out.w0.re - out.norm_w_sqr().sqrt() >= -tol
        })
    }

    #[test]
    fn apply_examples() {
        let id = UnitalQubitMap::identity();
        let p = PauliForm::new(
            C::new(0.3, 0.1),
            [C::new(0.2, -0.4), C::new(0.0, 0.9), C::new(-0.5, 0.0)],
        );
        assert!(id.apply(&p).max_abs_diff(&p) < 1e-15);

        let phi = UnitalQubitMap::new([1.0, 0.0, 0.0], [[0.0; 3], [0.0, 0.6, 0.0], [0.0, 0.0, 0.6]]);
        let e11 = PauliForm::real(0.5, [0.0, 0.0, 0.5]);
        let out = phi.apply(&e11);
        // diag(0.8, 0.2)
        let m = out.to_matrix();
        assert!((m.e[0][0] - C::new(0.8, 0.0)).norm() < 1e-12);
        assert!((m.e[1][1] - C::new(0.2, 0.0)).norm() < 1e-12);

        // unitality
        let one = PauliForm::identity();
        assert!(phi.apply(&one).max_abs_diff(&one) < 1e-15);
    }

    #[test]
    fn trace_preserving_examples() {
        let t = [[0.3, 0.0, 0.0], [0.0, 0.2, 0.0], [0.0, 0.0, 0.1]];
        assert!(UnitalQubitMap::new([0.0; 3], t).is_trace_preserving(1e-9));
        assert!(!UnitalQubitMap::new([0.5, 0.0, 0.0], t).is_trace_preserving(1e-9));
        assert!(UnitalQubitMap::new([1e-12, 0.0, 0.0], t).is_trace_preserving(1e-9));
    }

    #[test]
    fn positivity_examples() {
        let cfg = OptimizerConfig::default();
        let v = UnitalQubitMap::identity().is_positive(&cfg, 1e-8);
        assert!(v.positive);
        assert!(v.margin.abs() < 1e-9);

        let v = UnitalQubitMap::transposition().is_positive(&cfg, 1e-8);
        assert!(v.positive);
        assert!(v.margin.abs() < 1e-9);

        let phi = UnitalQubitMap::new([1.0, 0.0, 0.0], [[0.0; 3], [0.0, 0.6, 0.0], [0.0, 0.0, 0.6]]);
        let v = phi.is_positive(&cfg, 1e-8);
        assert!(!v.positive);
        // max g = sqrt(1 + 0.36), witness w1 = -1/sqrt(1.36)
        assert!((v.margin - (1.0 - 1.36f64.sqrt())).abs() < 1e-6);
        let w = v.witness.unwrap();
        assert!((w[0] + 0.857_492_925_7).abs() < 1e-4);
        assert!(((w[1] * w[1] + w[2] * w[2]).sqrt() - 0.514_495_755_4).abs() < 1e-4);
        // the witness certifies: ||T w|| > 1 + lambda·w
        let tw = phi.t_apply(&w);
        assert!(norm3(&tw) > 1.0 + w[0] + 1e-3);
    }

    #[test]
    fn necessary_bounds_examples() {
        assert!(UnitalQubitMap::identity().necessary_bounds());
        let t = [[0.0; 3], [0.0, 0.6, 0.0], [0.0, 0.0, 0.6]];
        assert!(!UnitalQubitMap::new([1.5, 0.0, 0.0], t).necessary_bounds());
        // necessary only: holds for this non-positive map
        assert!(UnitalQubitMap::new([1.0, 0.0, 0.0], t).necessary_bounds());
    }

    #[test]
    fn conjugate_examples() {
        let idr = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let phi = UnitalQubitMap::transposition();
        let same = phi.conjugate(&idr, &idr).unwrap();
        assert_eq!(same, phi);

        // rotation by pi about z: diag(-1, -1, 1)
        let rz = rotation_about([0.0, 0.0, 1.0], std::f64::consts::PI);
        let rot = phi.conjugate(&rz, &idr).unwrap();
        let want = [[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((rot.t()[i][j] - want[i][j]).abs() < 1e-12);
            }
        }

        let bad = [[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert!(matches!(
            phi.conjugate(&bad, &idr),
            Err(MapError::NotARotation)
        ));
        // reflections (det -1) are rejected
        let refl = [[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert!(matches!(
            phi.conjugate(&refl, &idr),
            Err(MapError::NotARotation)
        ));
    }

    #[test]
    fn conjugate_matches_bloch_composition() {
        // apply(conjugate(phi, RU, RV), (w0, w)) must equal the composition
        // (w0, w) -> (w0, RV w) -> phi -> rotate by RU, for real w.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let phi = random_map(&mut rng);
            let ru = rotation_about(
                [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.1..1.0)],
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let rv = rotation_about(
                [rng.gen_range(0.1..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)],
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let psi = phi.conjugate(&ru, &rv).unwrap();
            let w = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            let w0 = rng.gen_range(-1.0..1.0);
            let lhs = psi.apply(&PauliForm::real(w0, w));
            let rvw = [
                rv[0][0] * w[0] + rv[0][1] * w[1] + rv[0][2] * w[2],
                rv[1][0] * w[0] + rv[1][1] * w[1] + rv[1][2] * w[2],
                rv[2][0] * w[0] + rv[2][1] * w[1] + rv[2][2] * w[2],
            ];
            let mid = phi.apply(&PauliForm::real(w0, rvw));
            let mv = [mid.w[0].re, mid.w[1].re, mid.w[2].re];
            let ruv = [
                ru[0][0] * mv[0] + ru[0][1] * mv[1] + ru[0][2] * mv[2],
                ru[1][0] * mv[0] + ru[1][1] * mv[1] + ru[1][2] * mv[2],
                ru[2][0] * mv[0] + ru[2][1] * mv[1] + ru[2][2] * mv[2],
            ];
            let rhs = PauliForm::real(mid.w0.re, ruv);
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn convex_combine_examples() {
        let a = UnitalQubitMap::identity();
        let b = UnitalQubitMap::transposition();
        assert_eq!(a.convex_combine(&b, 1.0).unwrap(), a);
        assert_eq!(a.convex_combine(&b, 0.0).unwrap(), b);
        let mid = a.convex_combine(&b, 0.5).unwrap();
        let want = [[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((mid.t()[i][j] - want[i][j]).abs() < 1e-15);
            }
        }
        assert!(matches!(
            a.convex_combine(&b, 1.5),
            Err(MapError::OutOfRange(_))
        ));
    }

    #[test]
    fn convex_combine_is_linear_on_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..200 {
            let p1 = random_map(&mut rng);
            let p2 = random_map(&mut rng);
            let t = rng.gen_range(0.0..1.0);
            let mix = p1.convex_combine(&p2, t).unwrap();
            let w0 = C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let w = [
                C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            ];
            let x = PauliForm::new(w0, w);
            let lhs = mix.apply(&x).to_matrix();
            let m1 = p1.apply(&x).to_matrix();
            let m2 = p2.apply(&x).to_matrix();
            let mut rhs = Matrix2::zero();
            for i in 0..2 {
                for j in 0..2 {
                    rhs.e[i][j] = C::new(t, 0.0) * m1.e[i][j] + C::new(1.0 - t, 0.0) * m2.e[i][j];
                }
            }
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn positivity_agrees_with_grid_oracle_sample() {
        // Smaller sample here; the full 10^3-map audit runs in the
        // acceptance suite.
        let cfg = OptimizerConfig {
            starts: 64,
            ..OptimizerConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..100 {
            let phi = random_map(&mut rng);
            let fast = phi.is_positive(&cfg, 1e-6).positive;
            let slow = grid_positive(&phi, 10_000, 1e-6);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn positivity_invariant_under_conjugation() {
        let cfg = OptimizerConfig {
            starts: 64,
            ..OptimizerConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..100 {
            let phi = random_map(&mut rng);
            let ru = rotation_about(
                [rng.gen_range(-1.0..1.0), rng.gen_range(0.1..1.0), rng.gen_range(-1.0..1.0)],
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let rv = rotation_about(
                [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(0.1..1.0)],
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let psi = phi.conjugate(&ru, &rv).unwrap();
            assert_eq!(
                phi.is_positive(&cfg, 1e-8).positive,
                psi.is_positive(&cfg, 1e-8).positive
            );
        }
    }

    #[test]
    fn positive_implies_necessary_bounds() {
        let cfg = OptimizerConfig {
            starts: 64,
            ..OptimizerConfig::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        let mut hits = 0;
        for _ in 0..400 {
            let phi = random_map(&mut rng);
            let v = phi.is_positive(&cfg, 1e-8);
            if v.positive {
                hits += 1;
                assert!(phi.necessary_bounds());
            }
        }
        assert!(hits > 0, "sample contained no positive maps");
    }
}
