//! Small dense Hermitian eigensolver and a deterministic multistart maximizer.
//!
//! The eigensolver runs cyclic complex Jacobi rotations; each rotation
//! diagonalizes one 2x2 principal block exactly, so residuals stay at
//! machine precision for the n <= 8 matrices used here. The maximizer
//! combines a low-discrepancy lattice with seeded random starts and refines
//! by projected coordinate ascent with step halving; it needs no gradients,
//! which matters because some objectives (minimum eigenvalue of a defect
//! operator) are not smooth at eigenvalue crossings.

use crate::pauli::C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("matrix is not Hermitian to tolerance {0}")]
    NotHermitian(f64),
    #[error("Jacobi sweep cap reached without convergence")]
    NoConvergence,
    #[error("unsupported or degenerate domain: {0}")]
    InvalidDomain(&'static str),
}

/// Eigenvalues sorted descending with matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[i]` is the unit column vector for `eigenvalues[i]`.
    pub eigenvectors: Vec<Vec<C>>,
}

/// Budget and seeding for the multistart search.
#[derive(Debug, Clone, Copy)]
pub struct OptimizerConfig {
    pub starts: usize,
    pub max_iterations: usize,
    pub step_tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            starts: 256,
            max_iterations: 200,
            step_tolerance: 1e-10,
            seed: 42,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_starts(mut self, starts: usize) -> Self {
        self.starts = starts.max(1);
        self
    }
}

/// Compact search domains understood by [`maximize`].
#[derive(Debug, Clone)]
pub enum Domain {
    /// Euclidean ball of the given radius centered at the origin.
    Ball { dim: usize, radius: f64 },
    /// Unit sphere (the boundary of the unit ball).
    Sphere { dim: usize },
    /// `{(x, y) : x >= 0, y >= 0, x + y <= 1}`.
    Triangle,
    /// Product of closed intervals.
    Box(Vec<(f64, f64)>),
}

impl Domain {
    pub fn dim(&self) -> usize {
        match self {
            Domain::Ball { dim, .. } | Domain::Sphere { dim } => *dim,
            Domain::Triangle => 2,
            Domain::Box(iv) => iv.len(),
        }
    }

    fn validate(&self) -> Result<(), NumericsError> {
        match self {
            Domain::Ball { dim, radius } => {
                if *dim == 0 || !radius.is_finite() || *radius <= 0.0 {
                    return Err(NumericsError::InvalidDomain("ball needs dim >= 1, radius > 0"));
                }
            }
            Domain::Sphere { dim } => {
                if *dim == 0 {
                    return Err(NumericsError::InvalidDomain("sphere needs dim >= 1"));
                }
            }
            Domain::Triangle => {}
            Domain::Box(iv) => {
                if iv.is_empty() || iv.iter().any(|(lo, hi)| lo > hi || !lo.is_finite() || !hi.is_finite()) {
                    return Err(NumericsError::InvalidDomain("box needs nonempty ordered intervals"));
                }
            }
        }
        Ok(())
    }

    /// Project a point onto the domain in place.
    pub fn project(&self, v: &mut [f64]) {
        match self {
            Domain::Ball { radius, .. } => {
                let n = norm(v);
                if n > *radius {
                    let s = *radius / n;
                    for x in v.iter_mut() {
                        *x *= s;
                    }
                }
            }
            Domain::Sphere { .. } => {
                let n = norm(v);
                if n < 1e-12 {
                    v.fill(0.0);
                    v[0] = 1.0;
                } else {
                    for x in v.iter_mut() {
                        *x /= n;
                    }
                }
            }
            Domain::Triangle => {
                // Exact Euclidean projection onto the 2-simplex: nearest of
                // the interior point and the clamped projections onto the
                // three edges.
                let (x, y) = (v[0], v[1]);
                if x >= 0.0 && y >= 0.0 && x + y <= 1.0 {
                    return;
                }
                let t = ((x - y + 1.0) / 2.0).clamp(0.0, 1.0);
                let candidates = [
                    (0.0, y.clamp(0.0, 1.0)),
                    (x.clamp(0.0, 1.0), 0.0),
                    (t, 1.0 - t),
                ];
                let (mut bx, mut by) = candidates[0];
                let mut bd = f64::INFINITY;
                for (cx, cy) in candidates {
                    let d = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                    if d < bd {
                        bd = d;
                        bx = cx;
                        by = cy;
                    }
                }
                v[0] = bx;
                v[1] = by;
            }
            Domain::Box(iv) => {
                for (x, (lo, hi)) in v.iter_mut().zip(iv.iter()) {
                    *x = x.clamp(*lo, *hi);
                }
            }
        }
    }

    fn initial_step(&self) -> f64 {
        match self {
            Domain::Ball { radius, .. } => radius / 2.0,
            Domain::Sphere { .. } => 0.5,
            Domain::Triangle => 0.25,
            Domain::Box(iv) => {
                let w = iv
                    .iter()
                    .map(|(lo, hi)| hi - lo)
                    .fold(0.0f64, f64::max);
                (w / 4.0).max(1e-3)
            }
        }
    }

    /// Map a point of the unit cube into the domain.
    fn embed_cube(&self, z: &[f64], out: &mut Vec<f64>) {
        out.clear();
        match self {
            Domain::Ball { radius, .. } => {
                out.extend(z.iter().map(|t| (2.0 * t - 1.0) * radius));
                self.project(out);
            }
            Domain::Sphere { .. } => {
                out.extend(z.iter().map(|t| 2.0 * t - 1.0));
                self.project(out);
            }
            Domain::Triangle => {
                let (x, y) = (z[0], z[1]);
                if x + y <= 1.0 {
                    out.extend([x, y]);
                } else {
                    out.extend([1.0 - x, 1.0 - y]);
                }
            }
            Domain::Box(iv) => {
                out.extend(z.iter().zip(iv.iter()).map(|(t, (lo, hi))| lo + t * (hi - lo)));
            }
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Kronecker lattice coordinate generator for the given dimension.
struct Lattice {
    alpha: Vec<f64>,
}

impl Lattice {
    fn new(dim: usize) -> Self {
        // Root of x^(d+1) = x + 1, the generalized golden ratio.
        let d = dim as f64;
        let mut phi = 1.5f64;
        for _ in 0..64 {
            phi = (1.0 + phi).powf(1.0 / (d + 1.0));
        }
        let alpha = (1..=dim).map(|j| (1.0 / phi).powi(j as i32)).collect();
        Self { alpha }
    }

    fn point(&self, i: usize, out: &mut Vec<f64>) {
        out.clear();
        for a in &self.alpha {
            out.push((0.5 + (i as f64 + 1.0) * a).fract());
        }
    }
}

/// Deterministic projected coordinate ascent from `x0`.
/// Returns `(argmax, value, evaluations)`.
pub(crate) fn coordinate_ascent<F: Fn(&[f64]) -> f64>(
    f: &F,
    domain: &Domain,
    x0: &[f64],
    max_iterations: usize,
    step_tolerance: f64,
) -> (Vec<f64>, f64, usize) {
    let dim = domain.dim();
    let mut x = x0.to_vec();
    domain.project(&mut x);
    let mut fx = f(&x);
    let mut evals = 1usize;
    let mut step = domain.initial_step();
    let mut cand = vec![0.0; dim];
    for _ in 0..max_iterations {
        let mut improved = false;
        for j in 0..dim {
            for sgn in [1.0, -1.0] {
                cand.copy_from_slice(&x);
                cand[j] += sgn * step;
                domain.project(&mut cand);
                let fc = f(&cand);
                evals += 1;
                if fc > fx {
                    x.copy_from_slice(&cand);
                    fx = fc;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < step_tolerance {
                break;
            }
        }
    }
    (x, fx, evals)
}

/// Generate the deterministic multistart sequence for a domain: lattice
/// points interleaved with seeded uniform points, so a larger budget is a
/// strict prefix extension of a smaller one.
pub(crate) fn start_points(domain: &Domain, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let dim = domain.dim();
    let lattice = Lattice::new(dim);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cube = vec![0.0; dim];
    let mut pt = Vec::with_capacity(dim);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        if i % 2 == 0 {
            let mut raw = Vec::new();
            lattice.point(i / 2, &mut raw);
            domain.embed_cube(&raw, &mut pt);
        } else {
            match domain {
                Domain::Sphere { .. } => {
                    // isotropic direction via Box-Muller pairs
                    pt.clear();
                    while pt.len() < dim {
                        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
                        let u2: f64 = rng.gen_range(0.0..1.0);
                        let r = (-2.0 * u1.ln()).sqrt();
                        pt.push(r * (2.0 * std::f64::consts::PI * u2).cos());
                        if pt.len() < dim {
                            pt.push(r * (2.0 * std::f64::consts::PI * u2).sin());
                        }
                    }
                    domain.project(&mut pt);
                }
                _ => {
                    for z in cube.iter_mut() {
                        *z = rng.gen_range(0.0..1.0);
                    }
                    domain.embed_cube(&cube, &mut pt);
                }
            }
        }
        out.push(pt.clone());
    }
    out
}

/// Maximize `f` over `domain` with the multistart budget in `cfg`.
///
/// Deterministic for a fixed seed; the returned point is feasible and the
/// value dominates `f` at every start point. Ties keep the first argmax in
/// scan order.
pub fn maximize<F: Fn(&[f64]) -> f64>(
    f: F,
    domain: &Domain,
    cfg: &OptimizerConfig,
) -> Result<(Vec<f64>, f64), NumericsError> {
    maximize_with_starts(f, domain, cfg, &[])
}

/// [`maximize`] with caller-supplied extra start points (evaluated and
/// refined before the generated sequence).
pub fn maximize_with_starts<F: Fn(&[f64]) -> f64>(
    f: F,
    domain: &Domain,
    cfg: &OptimizerConfig,
    extra_starts: &[Vec<f64>],
) -> Result<(Vec<f64>, f64), NumericsError> {
    domain.validate()?;
    let starts = start_points(domain, cfg.starts.max(1), cfg.seed);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for s in extra_starts.iter().chain(starts.iter()) {
        let (x, fx, _) = coordinate_ascent(&f, domain, s, cfg.max_iterations, cfg.step_tolerance);
        match &best {
            Some((_, fb)) if fx <= *fb => {}
            _ => best = Some((x, fx)),
        }
    }
    Ok(best.expect("at least one start"))
}

/// Cyclic complex Jacobi eigendecomposition for Hermitian `h` (n <= 8).
///
/// Sweeps until the off-diagonal Frobenius mass drops below 1e-14, capped at
/// 100 sweeps.
pub fn hermitian_eigen(h: &[Vec<C>], tol: f64) -> Result<HermitianSpectrum, NumericsError> {
    let n = h.len();
    if n == 0 || n > 8 || h.iter().any(|row| row.len() != n) {
        return Err(NumericsError::InvalidDomain("matrix must be square with n in 1..=8"));
    }
    let mut herm_err = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            herm_err = herm_err.max((h[i][j] - h[j][i].conj()).norm());
        }
    }
    if herm_err > tol {
        return Err(NumericsError::NotHermitian(tol));
    }

    // Work on the Hermitian average so tol-level asymmetry cannot drift.
    let mut a = vec![vec![C::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = (h[i][j] + h[j][i].conj()) * 0.5;
        }
    }
    let mut v = vec![vec![C::new(0.0, 0.0); n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = C::new(1.0, 0.0);
    }

    let off_mass = |a: &Vec<Vec<C>>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _ in 0..100 {
        if off_mass(&a) < 1e-14 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.norm() == 0.0 {
                    continue;
                }
                // Phase that makes the (p,q) entry real, then a real rotation.
                let phase = apq / apq.norm();
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = diag(1, conj(phase)) * [[c, s], [-s, c]] in the (p, q)
                // plane; J^* A J zeroes the (p, q) entry exactly.
                let jpp = C::new(c, 0.0);
                let jpq = C::new(s, 0.0);
                let jqp = -C::new(s, 0.0) * phase.conj();
                let jqq = C::new(c, 0.0) * phase.conj();
                // A <- J^* A J ; update columns then rows.
                for r in 0..n {
                    let arp = a[r][p];
                    let arq = a[r][q];
                    a[r][p] = arp * jpp + arq * jqp;
                    a[r][q] = arp * jpq + arq * jqq;
                }
                for col in 0..n {
                    let apc = a[p][col];
                    let aqc = a[q][col];
                    a[p][col] = jpp.conj() * apc + jqp.conj() * aqc;
                    a[q][col] = jpq.conj() * apc + jqq.conj() * aqc;
                }
                a[p][q] = C::new(0.0, 0.0);
                a[q][p] = C::new(0.0, 0.0);
                a[p][p] = C::new(a[p][p].re, 0.0);
                a[q][q] = C::new(a[q][q].re, 0.0);
                for r in 0..n {
                    let vrp = v[r][p];
                    let vrq = v[r][q];
                    v[r][p] = vrp * jpp + vrq * jqp;
                    v[r][q] = vrp * jpq + vrq * jqq;
                }
            }
        }
    }
    if !converged && off_mass(&a) >= 1e-14 {
        return Err(NumericsError::NoConvergence);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].re.partial_cmp(&a[i][i].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i].re).collect();
    let eigenvectors: Vec<Vec<C>> = order
        .iter()
        .map(|&i| (0..n).map(|r| v[r][i]).collect())
        .collect();
    Ok(HermitianSpectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(h: &[Vec<C>]) -> Result<f64, NumericsError> {
    let spec = hermitian_eigen(h, 1e-9)?;
    Ok(*spec.eigenvalues.last().expect("nonempty spectrum"))
}

/// Smallest eigenvalue of a 2x2 Hermitian matrix without allocation;
/// identical up to rounding to routing through [`hermitian_eigen`].
pub(crate) fn min_eigenvalue_2x2(m: &crate::pauli::Matrix2) -> f64 {
    let a = m.e[0][0].re;
    let d = m.e[1][1].re;
    let b = m.e[0][1];
    let mid = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    mid - rad
}
