//! Choi matrices and entanglement-witness machinery.
//!
//! The (unnormalized) Choi matrix of a map is the block matrix
//! `W = sum_ij E_ij (x) Phi(E_ij)`; for unital maps its trace is 2. `W` is
//! positive semidefinite exactly when the map is completely positive. For a
//! positive map, `Tr[W rho] >= 0` on every separable state, so a negative
//! eigenvalue turns `W` into an entanglement witness with the eigenvector's
//! pure state as the detected entangled state.

use crate::maps::{PositivityVerdict, UnitalQubitMap};
use crate::numerics::{hermitian_eigen, HermitianSpectrum, NumericsError, OptimizerConfig};
use crate::pauli::{C, PauliForm, ZERO};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type Matrix4 = [[C; 4]; 4];

#[derive(Debug, Error)]
pub enum ChoiError {
    #[error("rho is not a state (Hermitian, PSD, unit trace to 1e-9)")]
    NotAState,
    #[error("Choi matrix has no negative eigenvalue (map is completely positive at this normalization)")]
    NoNegativeEigenvalue,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Choi matrix with its normalization flag; unnormalized trace is 2 for
/// unital maps, the normalized variant halves it.
#[derive(Debug, Clone)]
pub struct ChoiMatrix {
    pub entries: Matrix4,
    pub normalized: bool,
}

/// Pure product state `rho = |a><a| (x) |b><b|` with its factors.
#[derive(Debug, Clone)]
pub struct ProductState {
    pub rho: Matrix4,
    pub factor_a: [[C; 2]; 2],
    pub factor_b: [[C; 2]; 2],
}

/// Report of the three entanglement-witness checks.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub positivity: PositivityVerdict,
    pub min_choi_eigenvalue: f64,
    pub choi_not_psd: bool,
    pub separable_min_value: f64,
    pub separable_nonnegative: bool,
    pub entangled_state_value: Option<f64>,
    /// Conjunction of the three checks.
    pub is_witness: bool,
    pub samples: usize,
    pub seed: u64,
    pub notes: Vec<String>,
}

/// Build `W = sum_ij E_ij (x) Phi(E_ij)` (default), halved when
/// `normalized` is set.
pub fn choi_matrix(phi: &UnitalQubitMap, normalized: bool) -> ChoiMatrix {
    let mut w = [[ZERO; 4]; 4];
    let scale = if normalized { 0.5 } else { 1.0 };
    for i in 0..2 {
        for j in 0..2 {
            let block = phi.apply(&PauliForm::matrix_unit(i, j)).to_matrix();
            for r in 0..2 {
                for c in 0..2 {
                    w[2 * i + r][2 * j + c] = C::new(scale, 0.0) * block.e[r][c];
                }
            }
        }
    }
    ChoiMatrix {
        entries: w,
        normalized,
    }
}

impl ChoiMatrix {
    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[i][i].re).sum()
    }

    /// Eigendecomposition through the Jacobi solver.
    pub fn spectrum(&self) -> Result<HermitianSpectrum, ChoiError> {
        let dense: Vec<Vec<C>> = self.entries.iter().map(|r| r.to_vec()).collect();
        Ok(hermitian_eigen(&dense, 1e-9)?)
    }

    pub fn min_eigenvalue(&self) -> Result<f64, ChoiError> {
        Ok(*self
            .spectrum()?
            .eigenvalues
            .last()
            .expect("4x4 spectrum is nonempty"))
    }
}

fn mat4_trace_product(w: &Matrix4, rho: &Matrix4) -> C {
    let mut tr = ZERO;
    for i in 0..4 {
        for k in 0..4 {
            tr += w[i][k] * rho[k][i];
        }
    }
    tr
}

fn is_state(rho: &Matrix4, tol: f64) -> bool {
    // Hermitian
    for i in 0..4 {
        for j in 0..4 {
            if (rho[i][j] - rho[j][i].conj()).norm() > tol {
                return false;
            }
        }
    }
    // unit trace
    let tr: f64 = (0..4).map(|i| rho[i][i].re).sum();
    if (tr - 1.0).abs() > tol {
        return false;
    }
    // PSD
    let dense: Vec<Vec<C>> = rho.iter().map(|r| r.to_vec()).collect();
    match hermitian_eigen(&dense, tol.max(1e-9)) {
        Ok(s) => *s.eigenvalues.last().unwrap() >= -tol,
        Err(_) => false,
    }
}

/// `Re Tr(W rho)` for a state `rho`; the imaginary part vanishes for
/// Hermitian `W` and `rho`.
pub fn witness_value(w: &ChoiMatrix, rho: &Matrix4) -> Result<f64, ChoiError> {
    if !is_state(rho, 1e-9) {
        return Err(ChoiError::NotAState);
    }
    let tr = mat4_trace_product(&w.entries, rho);
    debug_assert!(tr.im.abs() < 1e-10);
    Ok(tr.re)
}

fn haar_qubit(rng: &mut ChaCha8Rng) -> [C; 2] {
    loop {
        let mut v = [ZERO; 2];
        let mut n2 = 0.0;
        for z in v.iter_mut() {
            let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            let r = (-2.0 * u1.ln()).sqrt();
            *z = C::new(
                r * (2.0 * std::f64::consts::PI * u2).cos(),
                r * (2.0 * std::f64::consts::PI * u2).sin(),
            );
            n2 += z.norm_sqr();
        }
        if n2 > 1e-12 {
            let n = n2.sqrt();
            return [v[0] / n, v[1] / n];
        }
    }
}

fn projector(v: &[C; 2]) -> [[C; 2]; 2] {
    let mut p = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            p[i][j] = v[i] * v[j].conj();
        }
    }
    p
}

/// Deterministic sample of `n` pure product states from isotropic factors.
pub fn sample_separable(n: usize, seed: u64) -> Vec<ProductState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let a = projector(&haar_qubit(&mut rng));
            let b = projector(&haar_qubit(&mut rng));
            let mut rho = [[ZERO; 4]; 4];
            for i in 0..2 {
                for j in 0..2 {
                    for r in 0..2 {
                        for c in 0..2 {
                            rho[2 * i + r][2 * j + c] = a[i][j] * b[r][c];
                        }
                    }
                }
            }
            ProductState {
                rho,
                factor_a: a,
                factor_b: b,
            }
        })
        .collect()
}

/// Pure state of the most negative eigenvector of `W`; its witness value
/// reproduces that eigenvalue.
pub fn entangled_witness_state(w: &ChoiMatrix) -> Result<Matrix4, ChoiError> {
    let spec = w.spectrum()?;
    let min = *spec.eigenvalues.last().unwrap();
    if min >= 0.0 {
        return Err(ChoiError::NoNegativeEigenvalue);
    }
    let v = spec.eigenvectors.last().unwrap();
    let mut rho = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            rho[i][j] = v[i] * v[j].conj();
        }
    }
    Ok(rho)
}

/// Run the three witness checks: the map is positive, the Choi matrix has a
/// negative eigenvalue, and sampled separable states pair nonnegatively.
pub fn is_entanglement_witness(
    w: &ChoiMatrix,
    phi: &UnitalQubitMap,
    samples: usize,
    seed: u64,
    tol: f64,
) -> WitnessReport {
    let cfg = OptimizerConfig::default().with_seed(seed);
    let positivity = phi.is_positive(&cfg, tol);
    let min_eig = w.min_eigenvalue().unwrap_or(f64::NAN);
    let choi_not_psd = min_eig < -tol;

    let mut sep_min = f64::INFINITY;
    for s in sample_separable(samples, seed) {
        let v = witness_value(w, &s.rho).expect("sampled product states are states");
        sep_min = sep_min.min(v);
    }
    if samples == 0 {
        sep_min = f64::NAN;
    }
    let separable_nonnegative = samples == 0 || sep_min >= -tol;

    let entangled_state_value = if choi_not_psd {
        entangled_witness_state(w)
            .ok()
            .and_then(|rho| witness_value(w, &rho).ok())
    } else {
        None
    };

    let mut notes = Vec::new();
    if choi_not_psd && !positivity.positive {
        notes.push(format!(
            "Choi matrix has a negative eigenvalue ({min_eig:.6}) but the map itself is not \
             positive (witness Bloch vector {:?}); the witness construction requires a positive \
             map, so the negativity does not certify an entanglement witness here",
            positivity.witness.unwrap_or([0.0; 3])
        ));
    }
    if !separable_nonnegative {
        notes.push(format!(
            "a sampled product state pairs negatively ({sep_min:.6}); W cannot be a witness"
        ));
    }

    let is_witness = positivity.positive && choi_not_psd && separable_nonnegative;
    WitnessReport {
        positivity,
        min_choi_eigenvalue: min_eig,
        choi_not_psd,
        separable_min_value: sep_min,
        separable_nonnegative,
        entangled_state_value,
        is_witness,
        samples,
        seed,
        notes,
    }
}
