//! The two-parameter family `lambda = (a, 0, 0)`, `T = diag(0, k, k)` and
//! its closed-form region analysis.
//!
//! Whether a family map satisfies the Kadison-Schwarz inequality reduces to
//! bounding the boundary function `F(x, y)` over the triangle
//! `{x, y >= 0, x + y <= 1}` by `1 - k^2`. The edge maxima are:
//!
//! * `m1 = F(0, 1) = k^2 + a` on the `x = 0` edge,
//! * `m2 = F(1, 0) = a^2 - k^2` (endpoint value quoted for `a^2 > k^2`),
//! * `m3` the interior critical value of `F(x, 0)` (quoted for `a^2 < k^2`),
//! * `m4` a closed-form expression attached to the `x + y = 1` edge.
//!
//! `m4` is kept exactly as published even though it does not agree with the
//! attained maximum of `F` on that edge; [`FamilyParams::case3_peak`]
//! evaluates the attained value at the true stationary point
//! ([`FamilyParams::critical_y`]) and [`reduced_form_audit`] reports the
//! discrepancies side by side instead of resolving them. `m3` as published
//! fails its own derivation (it is not the value of `F` at the critical
//! point); it is implemented here from the critical point itself, which the
//! tests pin against a grid oracle.

use crate::ks::{verify_ks, KsVerdict};
use crate::maps::UnitalQubitMap;
use crate::numerics::{maximize, Domain, OptimizerConfig};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("invalid family parameters: need 0 <= a <= 1 and 0 <= k <= (1+a)/sqrt(2), got a={a}, k={k}")]
    InvalidParams { a: f64, k: f64 },
    #[error("(x, y) = ({x}, {y}) outside the triangle 0 <= x+y <= 1")]
    OutOfDomain { x: f64, y: f64 },
    #[error("outside validity region: {0}")]
    DomainError(&'static str),
    #[error("r must satisfy r1^2 + r2^2 + r3^2 = 1")]
    NotNormalized,
    #[error("invalid scan range")]
    InvalidRange,
}

/// Parameters `(a, k)` with `0 <= a <= 1` and `0 <= k <= (1+a)/sqrt(2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    a: f64,
    k: f64,
}

/// One cell of a region scan.
#[derive(Debug, Clone)]
pub struct RegionCell {
    pub a: f64,
    pub k: f64,
    pub positive: bool,
    pub positivity_margin: f64,
    /// Closed-form sufficiency predicate ([`analytic_ks_predicate`]).
    pub analytic_ks: bool,
    pub m1: f64,
    pub m4: Option<f64>,
    pub ks_numeric: KsVerdict,
    pub min_defect_eig: f64,
}

impl FamilyParams {
    pub fn new(a: f64, k: f64) -> Result<Self, FamilyError> {
        let kmax = (1.0 + a) / 2f64.sqrt();
        if !(0.0..=1.0).contains(&a) || !(k >= 0.0 && k <= kmax + 1e-12) {
            return Err(FamilyError::InvalidParams { a, k });
        }
        Ok(Self { a, k })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// The map `lambda = (a, 0, 0)`, `T = diag(0, k, k)`.
    pub fn make_map(&self) -> UnitalQubitMap {
        UnitalQubitMap::new(
            [self.a, 0.0, 0.0],
            [[0.0; 3], [0.0, self.k, 0.0], [0.0, 0.0, self.k]],
        )
    }

    /// Boundary function
    /// `F(x, y) = 2k sqrt((k^2/4) y^2 + x (1 - x + a y)) + a y + (a^2 - k^2) x`
    /// on the triangle `{x, y >= 0, x + y <= 1}`.
    pub fn f(&self, x: f64, y: f64) -> Result<f64, FamilyError> {
        if x < -1e-12 || y < -1e-12 || x + y > 1.0 + 1e-9 {
            return Err(FamilyError::OutOfDomain { x, y });
        }
        Ok(self.f_unchecked(x, y))
    }

    fn f_unchecked(&self, x: f64, y: f64) -> f64 {
        let (a, k) = (self.a, self.k);
        let inner = (k * k / 4.0) * y * y + x * (1.0 - x + a * y);
        2.0 * k * inner.max(0.0).sqrt() + a * y + (a * a - k * k) * x
    }

    /// Maximum of `F` on the `x = 0` edge: `F(0, 1) = k^2 + a`.
    pub fn m1(&self) -> f64 {
        self.k * self.k + self.a
    }

    /// Endpoint value `F(1, 0) = a^2 - k^2`, quoted as the `y = 0` edge
    /// maximum for `a^2 - k^2 > 0`.
    pub fn m2(&self) -> Result<f64, FamilyError> {
        let u = self.a * self.a - self.k * self.k;
        if u <= 0.0 {
            return Err(FamilyError::DomainError("m2 requires a^2 - k^2 > 0"));
        }
        Ok(u)
    }

    /// Critical value of `F(x, 0)` for `a^2 - k^2 < 0`:
    /// `F(x_c, 0) = sqrt(4k^2 + (a^2-k^2)^2)/2 + (a^2-k^2)/2`.
    pub fn m3(&self) -> Result<f64, FamilyError> {
        let u = self.a * self.a - self.k * self.k;
        if u >= 0.0 {
            return Err(FamilyError::DomainError("m3 requires a^2 - k^2 < 0"));
        }
        let d = 4.0 * self.k * self.k + u * u;
        Ok(d.sqrt() / 2.0 + u / 2.0)
    }

    /// The published closed form attached to the `x + y = 1` edge, evaluated
    /// literally. Valid for `a^2 - k^2 - a < 0` and `k^2 <= 4(1 + a)`.
    ///
    /// This expression does not reproduce `F` at the edge's stationary
    /// point; see [`Self::case3_peak`] for the attained value and
    /// [`reduced_form_audit`] for the comparison.
    pub fn m4(&self) -> Result<f64, FamilyError> {
        let (a, k) = (self.a, self.k);
        let u3 = a * a - k * k - a;
        if u3 >= 0.0 {
            return Err(FamilyError::DomainError("m4 requires a^2 - k^2 - a < 0"));
        }
        if k * k > 4.0 * (1.0 + a) {
            return Err(FamilyError::DomainError("m4 requires k^2 <= 4(1 + a)"));
        }
        let b = k * k / 4.0 - (1.0 + a);
        let den = u3 * u3 + k * k * (4.0 + 4.0 * a - k * k);
        let t1 = 2.0 * k.powi(3) * (1.0 + a) / den.sqrt();
        let t2 = -(1.0 + a) * u3 / (2.0 * b);
        let t3 = a * a - k * k;
        let num = a * (a * (a - 1.0).powi(2) + 2.0 * k * k * (3.0 - a)) * (1.0 + a).powi(2)
            + k.powi(4) * (1.0 + a);
        let t4 = (num / den).sqrt() / (2.0 * b);
        Ok(t1 + t2 + t3 + t4)
    }

    /// Stationary point of `F(x, 0)` (`x_c^2 - x_c + p = 0` with
    /// `p = k^2 / (4k^2 + (a^2-k^2)^2)`): the root above 1/2 when
    /// `a^2 - k^2 > 0`, below 1/2 when `a^2 - k^2 < 0`.
    pub fn critical_x(&self) -> Result<f64, FamilyError> {
        let u = self.a * self.a - self.k * self.k;
        if u == 0.0 {
            return Err(FamilyError::DomainError("critical_x requires a^2 != k^2"));
        }
        let p = self.k * self.k / (4.0 * self.k * self.k + u * u);
        let disc = 1.0 - 4.0 * p;
        if disc < 0.0 {
            return Err(FamilyError::DomainError("negative discriminant"));
        }
        Ok(if u > 0.0 {
            (1.0 + disc.sqrt()) / 2.0
        } else {
            (1.0 - disc.sqrt()) / 2.0
        })
    }

    /// Stationary point of `F(1 - y, y)` on the diagonal edge. Solves
    /// `B y^2 + (1+a) y - q = 0` with `B = k^2/4 - (1+a)` and
    /// `q = k^2 (1+a)^2 / ((a^2-k^2-a)^2 + k^2 (4(1+a) - k^2))`, taking the
    /// root above the vertex bound `(1+a)/(2 + 2a - k^2/2)`, the one where
    /// the radicand of `F` is decreasing.
    pub fn critical_y(&self) -> Result<f64, FamilyError> {
        let (a, k) = (self.a, self.k);
        if k == 0.0 {
            return Err(FamilyError::DomainError("critical_y requires k > 0"));
        }
        let u3 = a * a - k * k - a;
        if u3 >= 0.0 {
            return Err(FamilyError::DomainError("critical_y requires a^2 - k^2 - a < 0"));
        }
        if k * k > 4.0 * (1.0 + a) {
            return Err(FamilyError::DomainError("critical_y requires k^2 <= 4(1 + a)"));
        }
        let b = k * k / 4.0 - (1.0 + a);
        let den = u3 * u3 + k * k * (4.0 * (1.0 + a) - k * k);
        let q = k * k * (1.0 + a) * (1.0 + a) / den;
        let disc = (1.0 + a) * (1.0 + a) + 4.0 * q * b;
        if disc < 0.0 {
            return Err(FamilyError::DomainError("negative discriminant"));
        }
        Ok((-(1.0 + a) - disc.sqrt()) / (2.0 * b))
    }

    /// Attained value of `F` at the diagonal-edge stationary point,
    /// `F(1 - y_c, y_c)`.
    pub fn case3_peak(&self) -> Result<f64, FamilyError> {
        let y = self.critical_y()?;
        Ok(self.f_unchecked(1.0 - y, y))
    }
}

/// Closed-form sufficiency predicate for the family:
/// `a^2 - k^2 <= a`, `m1 <= 1 - k^2`, and `m4 <= 1 - k^2` where `m4` is
/// defined. The first comparison is non-strict so that the degenerate
/// boundary `k = 0`, `a in {0, 1}` (where the maps are manifestly
/// Kadison-Schwarz) classifies as inside.
pub fn analytic_ks_predicate(p: &FamilyParams) -> bool {
    let bound = 1.0 - p.k() * p.k();
    if p.a() * p.a() - p.k() * p.k() > p.a() {
        return false;
    }
    if p.m1() > bound {
        return false;
    }
    match p.m4() {
        Ok(v) => v <= bound,
        Err(_) => true,
    }
}

/// Published reduction of `m4` at `a = 1`.
pub fn m4_reduction_a1(k: f64) -> f64 {
    let k2 = k * k;
    ((k2 - 8.0) * (2f64.sqrt() * k2 + 2.0)
        + 4.0 * (2.0 * k2 + 2f64.powf(-0.25) * (k * (8.0 + k2)).sqrt()))
        / (2.0 * (k2 - 8.0))
}

/// Published reduction of `m4` at `a = 1/2`.
pub fn m4_reduction_a_half(k: f64) -> f64 {
    let k2 = k * k;
    let den = (k2 + 0.25) * (k2 + 0.25) + k2 * (6.0 - k2);
    let num = 0.75 * ((k2 + 0.25) * (k2 + 0.25) + k2 * (2.0 - k2)) + 1.5 * k2 * k2;
    3.0 * k.powi(3) / den.sqrt() + (2.0 * (num / den).sqrt() + 3.0 * (k2 + 0.25)) / (k2 - 6.0)
        + 0.25
        - k2
}

/// The `a = 1` region inequality: reduction of `m4` at `a = 1` compared
/// against `1 - k^2`, evaluated literally. Kept separate from
/// [`analytic_ks_predicate`] because the two disagree at `a = 1`; the CLI
/// reports both next to the numeric verdict.
pub fn a1_region_inequality(k: f64) -> Result<bool, FamilyError> {
    if !(0.0..=2f64.sqrt() + 1e-12).contains(&k) {
        return Err(FamilyError::DomainError("a1 region needs 0 <= k <= sqrt(2)"));
    }
    Ok(m4_reduction_a1(k) <= 1.0 - k * k)
}

/// Side-by-side comparison of the closed forms attached to the diagonal
/// edge. Mismatches are reported, never averaged away.
#[derive(Debug, Clone)]
pub struct ReducedFormAudit {
    pub m4_general: Option<f64>,
    pub case3_attained: Option<f64>,
    /// Published reduction at the matching `a`, when `a` is 1 or 1/2.
    pub reduction: Option<f64>,
    /// `|m4_general - reduction|` when both exist.
    pub general_vs_reduction: Option<f64>,
    /// `|m4_general - case3_attained|` when both exist.
    pub general_vs_attained: Option<f64>,
}

pub fn reduced_form_audit(p: &FamilyParams) -> ReducedFormAudit {
    let m4 = p.m4().ok();
    let peak = p.case3_peak().ok();
    let reduction = if (p.a() - 1.0).abs() < 1e-12 {
        Some(m4_reduction_a1(p.k()))
    } else if (p.a() - 0.5).abs() < 1e-12 {
        Some(m4_reduction_a_half(p.k()))
    } else {
        None
    };
    ReducedFormAudit {
        m4_general: m4,
        case3_attained: peak,
        reduction,
        general_vs_reduction: match (m4, reduction) {
            (Some(x), Some(y)) => Some((x - y).abs()),
            _ => None,
        },
        general_vs_attained: match (m4, peak) {
            (Some(x), Some(y)) => Some((x - y).abs()),
            _ => None,
        },
    }
}

/// Both sides of the polar-form worst-case inequality with `w0 = 0` and
/// `||w|| = 1`:
/// `2k sqrt(k^2 r2^2 r3^2 sin^2 g1 + r1^2 (r2^2 + r3^2 + 2 r2 r3 a sin g1))`
/// against `1 - 2 a r2 r3 sin g1 - a^2 r1^2 - k^2 (r2^2 + r3^2)`.
/// A derivation cross-check only; the defect operator is ground truth.
pub fn reduced_inequality(
    p: &FamilyParams,
    r: [f64; 3],
    gamma1: f64,
) -> Result<(f64, f64), FamilyError> {
    let n2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
    if (n2 - 1.0).abs() > 1e-9 || r.iter().any(|v| *v < 0.0) {
        return Err(FamilyError::NotNormalized);
    }
    let (a, k) = (p.a(), p.k());
    let s = gamma1.sin();
    let (r1, r2, r3) = (r[0], r[1], r[2]);
    let inner = k * k * r2 * r2 * r3 * r3 * s * s
        + r1 * r1 * (r2 * r2 + r3 * r3 + 2.0 * r2 * r3 * a * s);
    let lhs = 2.0 * k * inner.max(0.0).sqrt();
    let rhs = 1.0 - 2.0 * a * r2 * r3 * s - a * a * r1 * r1 - k * k * (r2 * r2 + r3 * r3);
    Ok((lhs, rhs))
}

/// Maximize `F` over the triangle: multistart search plus the three edges
/// scanned at step 1e-4. Returns the maximum value.
pub fn numeric_f_max(p: &FamilyParams, cfg: &OptimizerConfig) -> f64 {
    numeric_f_max_with_argmax(p, cfg).0
}

/// [`numeric_f_max`] returning the maximizer as well.
pub fn numeric_f_max_with_argmax(p: &FamilyParams, cfg: &OptimizerConfig) -> (f64, [f64; 2]) {
    let (best_pt, best) = maximize(
        |v: &[f64]| p.f_unchecked(v[0], v[1]),
        &Domain::Triangle,
        cfg,
    )
    .expect("triangle domain is valid");
    let mut best_arg = [best_pt[0], best_pt[1]];
    let mut best_val = best;
    let n = 10_000usize;
    for i in 0..=n {
        let t = i as f64 / n as f64;
        for (x, y) in [(0.0, t), (t, 0.0), (t, 1.0 - t)] {
            let v = p.f_unchecked(x, y);
            if v > best_val {
                best_val = v;
                best_arg = [x, y];
            }
        }
    }
    (best_val, best_arg)
}

fn cell_seed(seed: u64, i: usize, j: usize) -> u64 {
    // SplitMix64 over (seed, cell index) so cells stay schedule-independent.
    let idx = ((i as u64) << 20) | ((j as u64) + 1);
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(idx));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Classify every `(a, k)` grid cell: positivity, the closed-form
/// predicate, and the numeric defect search. Cells with
/// `k > (1 + a)/sqrt(2)` are skipped. Cells are independent and evaluated
/// in parallel; per-cell seeds derive from `(cfg.seed, cell index)` so the
/// output does not depend on scheduling.
pub fn scan_region(
    a_min: f64,
    a_max: f64,
    k_min: f64,
    k_max: f64,
    step: f64,
    cfg: &OptimizerConfig,
) -> Result<Vec<RegionCell>, FamilyError> {
    if step <= 0.0 || !step.is_finite() || a_min > a_max + 1e-12 || k_min > k_max + 1e-12 {
        return Err(FamilyError::InvalidRange);
    }
    if !(0.0..=1.0).contains(&a_min) || !(0.0..=1.0).contains(&a_max) || k_min < 0.0 {
        return Err(FamilyError::InvalidRange);
    }
    let na = ((a_max - a_min) / step + 0.5).floor() as usize + 1;
    let nk = ((k_max - k_min) / step + 0.5).floor() as usize + 1;
    let mut coords = Vec::new();
    for i in 0..na {
        let a = a_min + i as f64 * step;
        if a > a_max + step / 2.0 {
            break;
        }
        for j in 0..nk {
            let k = k_min + j as f64 * step;
            if k > k_max + step / 2.0 {
                break;
            }
            if k > (1.0 + a) / 2f64.sqrt() + 1e-12 {
                continue;
            }
            coords.push((i, j, a, k));
        }
    }
    let cells: Vec<RegionCell> = coords
        .par_iter()
        .map(|&(i, j, a, k)| {
            let p = FamilyParams::new(a.min(1.0), k).expect("grid point inside family domain");
            let map = p.make_map();
            let seed = cell_seed(cfg.seed, i, j);
            let pos_cfg = OptimizerConfig {
                starts: 64,
                max_iterations: 200,
                step_tolerance: 1e-10,
                seed,
            };
            let verdict = map.is_positive(&pos_cfg, 1e-8);
            let ks_cfg = OptimizerConfig {
                seed,
                ..*cfg
            };
            let report = verify_ks(&map, &ks_cfg, 1e-8);
            RegionCell {
                a,
                k,
                positive: verdict.positive,
                positivity_margin: verdict.margin,
                analytic_ks: analytic_ks_predicate(&p),
                m1: p.m1(),
                m4: p.m4().ok(),
                ks_numeric: report.verdict,
                min_defect_eig: report.min_defect_eigenvalue,
            }
        })
        .collect();
    Ok(cells)
}

fn fmt9(v: f64) -> String {
    format!("{v:.8e}")
}

/// Render cells as CSV: header
/// `a,k,positive,positivity_margin,analytic_ks,m1,m4,ks_numeric,min_defect_eig`,
/// floats with 9 significant digits, undefined `m4` as `nan`.
pub fn region_csv(cells: &[RegionCell]) -> String {
    let mut out = String::from("a,k,positive,positivity_margin,analytic_ks,m1,m4,ks_numeric,min_defect_eig\n");
    for c in cells {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            fmt9(c.a),
            fmt9(c.k),
            c.positive,
            fmt9(c.positivity_margin),
            c.analytic_ks,
            fmt9(c.m1),
            c.m4.map_or_else(|| "nan".to_string(), fmt9),
            c.ks_numeric.as_str(),
            fmt9(c.min_defect_eig),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(a: f64, k: f64) -> FamilyParams {
        FamilyParams::new(a, k).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(FamilyParams::new(0.5, 0.4).is_ok());
        assert!(FamilyParams::new(-0.1, 0.4).is_err());
        assert!(FamilyParams::new(0.5, 1.2).is_err());
        assert!(FamilyParams::new(1.0, 2f64.sqrt()).is_ok());
    }

    #[test]
    fn make_map_examples() {
        let m = p(0.0, 0.0).make_map();
        assert_eq!(m.lambda(), [0.0; 3]);
        assert_eq!(m.t(), [[0.0; 3]; 3]);

        let m = p(0.5, 0.4).make_map();
        assert_eq!(m.lambda(), [0.5, 0.0, 0.0]);
        assert_eq!(m.t()[1][1], 0.4);
        assert_eq!(m.t()[2][2], 0.4);
        assert_eq!(m.t()[0][0], 0.0);
    }

    #[test]
    fn f_examples_and_edges() {
        let q = p(0.7, 0.3);
        assert!(q.f(0.0, 0.0).unwrap().abs() < 1e-15);
        // F(0, 1) = k^2 + a
        assert!((q.f(0.0, 1.0).unwrap() - (0.09 + 0.7)).abs() < 1e-12);
        // F(1, 0) = a^2 - k^2
        assert!((q.f(1.0, 0.0).unwrap() - (0.49 - 0.09)).abs() < 1e-12);
        assert!(q.f(0.7, 0.4).is_err());
        assert!(q.f(-0.1, 0.2).is_err());

        // edge identities on a grid: F(0,y) = y(k^2+a), F(x,0) = 2k sqrt(x(1-x)) + (a^2-k^2)x
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            let f0y = q.f(0.0, t).unwrap();
            assert!((f0y - t * (0.09 + 0.7)).abs() < 1e-12);
            let fx0 = q.f(t, 0.0).unwrap();
            let want = 2.0 * 0.3 * (t * (1.0 - t)).sqrt() + (0.49 - 0.09) * t;
            assert!((fx0 - want).abs() < 1e-12);
        }
    }

    #[test]
    fn maxima_examples() {
        // m1 at a = 0.5 and a = 1
        assert!((p(0.5, 0.3).m1() - (0.09 + 0.5)).abs() < 1e-15);
        assert!((p(1.0, 0.6).m1() - 1.36).abs() < 1e-15);

        // m2 valid only for a^2 > k^2
        assert!((p(0.8, 0.2).m2().unwrap() - 0.6).abs() < 1e-15);
        assert!(p(0.2, 0.8).m2().is_err());

        // m3 valid only for a^2 < k^2; equals the grid max of F(x, 0)
        assert!(p(0.8, 0.2).m3().is_err());
        let q = p(0.2, 0.8);
        let m3 = q.m3().unwrap();
        let mut grid = f64::NEG_INFINITY;
        for i in 0..=200_000 {
            let x = i as f64 / 200_000.0;
            grid = grid.max(q.f(x, 0.0).unwrap());
        }
        assert!((m3 - grid).abs() < 1e-9, "m3={m3} grid={grid}");
        assert!((m3 - 0.554_400_374_531_753_2).abs() < 1e-12);
    }

    #[test]
    fn critical_x_examples() {
        // a^2 - k^2 > 0: root above 1/2, stationary to finite differences
        let q = p(0.8, 0.2);
        let xc = q.critical_x().unwrap();
        assert!(xc > 0.5);
        let h = 1e-6;
        let der = (q.f(xc + h, 0.0).unwrap() - q.f(xc - h, 0.0).unwrap()) / (2.0 * h);
        assert!(der.abs() < 1e-6);

        // a^2 - k^2 < 0: root below 1/2
        let q = p(0.2, 0.8);
        let xc = q.critical_x().unwrap();
        assert!(xc < 0.5);
        let der = (q.f(xc + h, 0.0).unwrap() - q.f(xc - h, 0.0).unwrap()) / (2.0 * h);
        assert!(der.abs() < 1e-6);

        // the two quadratic roots sum to 1
        let u = 0.2f64 * 0.2 - 0.8 * 0.8;
        let pp = 0.64 / (4.0 * 0.64 + u * u);
        let r1 = (1.0 + (1.0 - 4.0 * pp).sqrt()) / 2.0;
        let r2 = (1.0 - (1.0 - 4.0 * pp).sqrt()) / 2.0;
        assert!((r1 + r2 - 1.0).abs() < 1e-15);

        assert!(p(0.5, 0.5).critical_x().is_err());
    }

    #[test]
    fn critical_y_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        for _ in 0..300 {
            let a = rng.gen_range(0.01..1.0);
            let k = rng.gen_range(0.02..(1.0 + a) / 2f64.sqrt());
            let q = p(a, k);
            let yc = q.critical_y().unwrap();
            // in (bound, 1]
            let bound = (1.0 + a) / (2.0 + 2.0 * a - k * k / 2.0);
            assert!(yc > bound && yc <= 1.0 + 1e-12, "a={a} k={k} yc={yc}");
            // stationary on the diagonal edge
            let h = 1e-6;
            let g = |y: f64| q.f(1.0 - y, y).unwrap();
            let der = (g(yc + h) - g(yc - h)) / (2.0 * h);
            assert!(der.abs() < 5e-5, "a={a} k={k} der={der}");
            // attained value consistency
            assert!((g(yc) - q.case3_peak().unwrap()).abs() < 1e-12);
        }
        // specific value: a=0.5, k=0.4 has y_c = 5/7 and peak exactly 0.84
        let q = p(0.5, 0.4);
        assert!((q.critical_y().unwrap() - 5.0 / 7.0).abs() < 1e-12);
        assert!((q.case3_peak().unwrap() - 0.84).abs() < 1e-12);
    }

    #[test]
    fn case3_peak_matches_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        for _ in 0..50 {
            let a = rng.gen_range(0.01..1.0);
            let k = rng.gen_range(0.05..(1.0 + a) / 2f64.sqrt());
            let q = p(a, k);
            let mut grid = f64::NEG_INFINITY;
            for i in 0..=100_000 {
                let y = i as f64 / 100_000.0;
                grid = grid.max(q.f(1.0 - y, y).unwrap());
            }
            assert!((q.case3_peak().unwrap() - grid).abs() < 1e-8);
        }
    }

    #[test]
    fn predicate_examples() {
        assert!(analytic_ks_predicate(&p(0.5, 0.4)));
        assert!(!analytic_ks_predicate(&p(0.5, 0.6)));
        assert!(analytic_ks_predicate(&p(0.0, 0.0)));
        assert!(!analytic_ks_predicate(&p(1.0, 0.6)));
    }

    #[test]
    fn a1_region_examples() {
        assert!(a1_region_inequality(0.0).unwrap());
        assert!(a1_region_inequality(0.6).unwrap());
        assert!(!a1_region_inequality(1.3).unwrap());
        assert!(a1_region_inequality(1.5).is_err());
    }

    #[test]
    fn reduced_inequality_examples() {
        let q = p(0.7, 0.5);
        // r = (1, 0, 0): lhs 0, rhs 1 - a^2
        let (lhs, rhs) = reduced_inequality(&q, [1.0, 0.0, 0.0], 0.3).unwrap();
        assert!(lhs.abs() < 1e-15);
        assert!((rhs - (1.0 - 0.49)).abs() < 1e-12);

        // r = (0, 1/sqrt2, 1/sqrt2), sin g1 = 1, a = 1: lhs = k^2, rhs = -k^2
        let q = p(1.0, 0.5);
        let s = 1.0 / 2f64.sqrt();
        let (lhs, rhs) = reduced_inequality(&q, [0.0, s, s], std::f64::consts::FRAC_PI_2).unwrap();
        assert!((lhs - 0.25).abs() < 1e-12);
        assert!((rhs + 0.25).abs() < 1e-12);

        assert!(reduced_inequality(&q, [0.5, 0.5, 0.5], 0.0).is_err());
    }

    #[test]
    fn reduced_inequality_change_of_variables() {
        // with sin g1 = 1, x = r1^2, y = 2 r2 r3: lhs + ay + (a^2-k^2)x == F(x,y)
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..500 {
            let a = rng.gen_range(0.0..1.0);
            let k = rng.gen_range(0.0..(1.0 + a) / 2f64.sqrt());
            let q = p(a, k);
            let mut r: [f64; 3] = [
                rng.gen_range(0.0..1.0),
                rng.gen_range(0.0..1.0),
                rng.gen_range(0.0..1.0),
            ];
            let n = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
            if n < 1e-6 {
                continue;
            }
            for v in r.iter_mut() {
                *v /= n;
            }
            let (lhs, rhs) = reduced_inequality(&q, r, std::f64::consts::FRAC_PI_2).unwrap();
            let x = r[0] * r[0];
            let y = 2.0 * r[1] * r[2];
            let f = q.f(x, y).unwrap();
            assert!((lhs + a * y + (a * a - k * k) * x - f).abs() < 1e-10);
            assert!((rhs - (1.0 - k * k - a * y - (a * a - k * k) * x)).abs() < 1e-10);
        }
    }

    #[test]
    fn numeric_f_max_examples() {
        let cfg = OptimizerConfig::default();
        // (0.5, 0.4): the maximum sits on the diagonal edge at 0.84
        let q = p(0.5, 0.4);
        let (v, arg) = numeric_f_max_with_argmax(&q, &cfg);
        assert!((v - 0.84).abs() < 1e-4);
        assert!((arg[0] + arg[1] - 1.0).abs() < 1e-6);
        assert!(v >= q.m1() - 1e-9);

        // (1, 0.6): max >= m1 = 1.36 > 1 - k^2
        let q = p(1.0, 0.6);
        assert!(numeric_f_max(&q, &cfg) >= 1.36 - 1e-9);
    }

    #[test]
    fn reduced_form_audit_reports_discrepancies() {
        let audit = reduced_form_audit(&p(0.5, 0.4));
        // the general closed form and its published a=1/2 reduction disagree,
        // and neither matches the attained edge value; all three are reported
        assert!(audit.general_vs_reduction.unwrap() > 1e-3);
        assert!(audit.general_vs_attained.unwrap() > 1e-3);
        assert!((audit.case3_attained.unwrap() - 0.84).abs() < 1e-9);

        let audit = reduced_form_audit(&p(1.0, 0.6));
        assert!(audit.general_vs_reduction.unwrap() > 1e-3);
    }

    #[test]
    fn scan_region_examples() {
        let cfg = OptimizerConfig {
            starts: 400,
            ..OptimizerConfig::default()
        };
        // single-column scan at a = 0.5
        let cells = scan_region(0.5, 0.5, 0.0, 0.7, 0.01, &cfg).unwrap();
        assert_eq!(cells.len(), 71);
        for c in &cells {
            assert_eq!(c.analytic_ks, c.k <= 0.5, "k = {}", c.k);
        }
        // reversed bounds are rejected
        assert!(scan_region(0.3, 0.2, 0.0, 0.1, 0.01, &cfg).is_err());
        // a range whose every cell exceeds the k cap comes back empty
        let empty = scan_region(0.0, 0.0, 1.2, 1.3, 0.01, &cfg).unwrap();
        assert!(empty.is_empty());
        assert_eq!(region_csv(&empty).lines().count(), 1);

        // determinism
        let again = scan_region(0.5, 0.5, 0.0, 0.7, 0.01, &cfg).unwrap();
        assert_eq!(region_csv(&cells), region_csv(&again));
    }

    #[test]
    fn family_positivity_boundary_matches_grid_oracle() {
        // The analytic boundary is not assumed; a dense Bloch-sphere grid
        // is ground truth. The grid is fine enough (1e5 points) to resolve
        // every cell of the 50x50 parameter grid.
        use crate::pauli::PauliForm;
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        let n = 100_000usize;
        let sphere: Vec<[f64; 3]> = (0..n)
            .map(|i| {
                let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
                let r = (1.0 - z * z).sqrt();
                let th = golden * i as f64;
                [r * th.cos(), r * th.sin(), z]
            })
            .collect();
        let cfg = OptimizerConfig {
            starts: 64,
            ..OptimizerConfig::default()
        };
        let mut cells = Vec::new();
        for i in 0..50 {
            let a = i as f64 / 49.0;
            for j in 0..50 {
                cells.push((a, j as f64 * (1.0 + a) / (2f64.sqrt() * 49.0)));
            }
        }
        let bad: Vec<(f64, f64)> = cells
            .par_iter()
            .filter(|&&(a, k)| {
                let map = p(a, k).make_map();
                let fast = map.is_positive(&cfg, 1e-8).positive;
                let slow = sphere.iter().all(|w| {
                    let out = map.apply(&PauliForm::real(1.0, *w));
                    out.w0.re - out.norm_w_sqr().sqrt() >= -1e-8
                });
                fast != slow
            })
            .copied()
            .collect();
        assert!(bad.is_empty(), "checker/oracle disagreement at {bad:?}");
    }

    #[test]
    fn csv_shape() {
        let cfg = OptimizerConfig {
            starts: 64,
            ..OptimizerConfig::default()
        };
        let cells = scan_region(0.0, 0.04, 0.0, 0.04, 0.02, &cfg).unwrap();
        let csv = region_csv(&cells);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "a,k,positive,positivity_margin,analytic_ks,m1,m4,ks_numeric,min_defect_eig"
        );
        for line in lines {
            assert_eq!(line.split(',').count(), 9);
        }
    }
}
