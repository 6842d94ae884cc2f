//! Unital qubit maps in the Pauli basis: positivity and Kadison-Schwarz
//! verification, closed-form parameter-region analysis, Choi matrices and
//! entanglement witnesses.
//!
//! A unital linear map on `M_2(C)` is the pair `(lambda, T)` acting on
//! Pauli coefficients as `(w0, w) -> (w0 + lambda·w, T w)`. This crate
//! decides, analytically where closed forms exist and numerically
//! everywhere, whether such a map is positive (`||Tw|| <= 1 + lambda·w` on
//! the Bloch ball) and whether it satisfies the Kadison-Schwarz inequality
//! `Phi(x*x) >= Phi(x)* Phi(x)`; it evaluates the closed-form region
//! analysis of the two-parameter family `lambda = (a,0,0)`,
//! `T = diag(0,k,k)`, and it builds Choi-matrix entanglement witnesses.
//! Every analytic claim is paired with an independent brute-force oracle in
//! the test suites.
//!
//! Start with the runnable examples: `cargo run --example positivity`,
//! `ks_search`, `family_analysis`, `region_scan`, `choi_witness`,
//! `pauli_algebra`.

#![allow(clippy::needless_range_loop)]

pub mod choi;
pub mod cli;
pub mod family;
pub mod ks;
pub mod maps;
pub mod numerics;
pub mod pauli;

pub use choi::{choi_matrix, ChoiMatrix, ProductState, WitnessReport};
pub use family::{analytic_ks_predicate, FamilyParams, RegionCell};
pub use ks::{ks_defect, scalar_conditions, verify_ks, KsReport, KsVerdict};
pub use maps::{PositivityVerdict, UnitalQubitMap};
pub use numerics::{hermitian_eigen, maximize, Domain, HermitianSpectrum, OptimizerConfig};
pub use pauli::{Matrix2, PauliForm, C};
