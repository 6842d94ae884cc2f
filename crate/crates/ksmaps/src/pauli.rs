//! Exact Pauli-basis algebra for 2x2 complex matrices.
//!
//! Every `A ∈ M_2(C)` decomposes as `A = w0*I + w1*s1 + w2*s2 + w3*s3` with
//! complex coefficients. [`PauliForm`] stores `(w0, w)`; [`Matrix2`] is the
//! dense counterpart. Products, adjoints and positivity tests are evaluated
//! through closed forms in the coefficients and cross-checked against dense
//! arithmetic in the tests.

use num_complex::Complex64;

pub type C = Complex64;

pub(crate) const ZERO: C = C::new(0.0, 0.0);
pub(crate) const ONE: C = C::new(1.0, 0.0);

/// Coefficients of a 2x2 complex matrix in the basis `{I, s1, s2, s3}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliForm {
    pub w0: C,
    pub w: [C; 3],
}

/// Dense 2x2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub e: [[C; 2]; 2],
}

/// Complex bilinear cross product; neither argument is conjugated.
pub fn cross(u: &[C; 3], v: &[C; 3]) -> [C; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub(crate) fn dot(u: &[C; 3], v: &[C; 3]) -> C {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

impl PauliForm {
    pub fn new(w0: C, w: [C; 3]) -> Self {
        Self { w0, w }
    }

    /// Form with real coefficients (a Hermitian matrix).
    pub fn real(w0: f64, w: [f64; 3]) -> Self {
        Self {
            w0: C::new(w0, 0.0),
            w: [C::new(w[0], 0.0), C::new(w[1], 0.0), C::new(w[2], 0.0)],
        }
    }

    /// The identity matrix.
    pub fn identity() -> Self {
        Self::real(1.0, [0.0, 0.0, 0.0])
    }

    /// Matrix unit `E_ij` (1 at row i, column j, zero elsewhere), i,j in {0,1}.
    pub fn matrix_unit(i: usize, j: usize) -> Self {
        let h = C::new(0.5, 0.0);
        let ih = C::new(0.0, 0.5);
        match (i, j) {
            (0, 0) => Self::new(h, [ZERO, ZERO, h]),
            (0, 1) => Self::new(ZERO, [h, ih, ZERO]),
            (1, 0) => Self::new(ZERO, [h, -ih, ZERO]),
            (1, 1) => Self::new(h, [ZERO, ZERO, -h]),
            _ => panic!("matrix_unit index out of range"),
        }
    }

    /// `w0*I + w·s` as a dense matrix.
    pub fn to_matrix(&self) -> Matrix2 {
        let i = C::new(0.0, 1.0);
        Matrix2 {
            e: [
                [self.w0 + self.w[2], self.w[0] - i * self.w[1]],
                [self.w[0] + i * self.w[1], self.w0 - self.w[2]],
            ],
        }
    }

    /// Inverse of [`to_matrix`](Self::to_matrix): `w0 = tr(m)/2`, `wi = tr(m*si)/2`.
    pub fn from_matrix(m: &Matrix2) -> Self {
        let i = C::new(0.0, 1.0);
        let h = C::new(0.5, 0.0);
        Self {
            w0: (m.e[0][0] + m.e[1][1]) * h,
            w: [
                (m.e[0][1] + m.e[1][0]) * h,
                i * (m.e[0][1] - m.e[1][0]) * h,
                (m.e[0][0] - m.e[1][1]) * h,
            ],
        }
    }

    /// Adjoint `(conj(w0), conj(w))`.
    pub fn adjoint(&self) -> Self {
        Self {
            w0: self.w0.conj(),
            w: [self.w[0].conj(), self.w[1].conj(), self.w[2].conj()],
        }
    }

    /// `x* x` through the coefficient identity
    /// `x*x = (|w0|^2 + ||w||^2) I + (w0 conj(w) + conj(w0) w - i [w, conj(w)])·s`.
    pub fn star_square(&self) -> Self {
        let wc = [self.w[0].conj(), self.w[1].conj(), self.w[2].conj()];
        let i = C::new(0.0, 1.0);
        let cr = cross(&self.w, &wc);
        let s = self.w0.norm_sqr() + self.norm_w_sqr();
        let mut v = [ZERO; 3];
        for j in 0..3 {
            v[j] = self.w0 * wc[j] + self.w0.conj() * self.w[j] - i * cr[j];
        }
        Self {
            w0: C::new(s, 0.0),
            w: v,
        }
    }

    /// `|w1|^2 + |w2|^2 + |w3|^2`.
    pub fn norm_w_sqr(&self) -> f64 {
        self.w[0].norm_sqr() + self.w[1].norm_sqr() + self.w[2].norm_sqr()
    }

    /// `|w0|^2 + ||w||^2`, the squared Hilbert-Schmidt norm divided by 2.
    pub fn norm_sqr(&self) -> f64 {
        self.w0.norm_sqr() + self.norm_w_sqr()
    }

    /// Positive semidefinite test: the coefficients must be real to `tol`
    /// and satisfy `||w|| <= w0 + tol`.
    pub fn is_psd(&self, tol: f64) -> bool {
        let imag_ok = self.w0.im.abs() <= tol
            && self.w.iter().all(|c| c.im.abs() <= tol);
        imag_ok && self.norm_w_sqr().sqrt() <= self.w0.re + tol
    }

    /// Hermitian to `tol` (all imaginary parts below `tol`).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.w0.im.abs() <= tol && self.w.iter().all(|c| c.im.abs() <= tol)
    }

    pub fn scale(&self, c: C) -> Self {
        Self {
            w0: c * self.w0,
            w: [c * self.w[0], c * self.w[1], c * self.w[2]],
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m = (self.w0 - other.w0).norm();
        for j in 0..3 {
            m = m.max((self.w[j] - other.w[j]).norm());
        }
        m
    }
}

/// Product in coefficient form:
/// `(a0 I + a·s)(b0 I + b·s) = (a0 b0 + a·b) I + (a0 b + b0 a + i a×b)·s`.
pub fn multiply(p: &PauliForm, q: &PauliForm) -> PauliForm {
    let i = C::new(0.0, 1.0);
    let cr = cross(&p.w, &q.w);
    let mut v = [ZERO; 3];
    for j in 0..3 {
        v[j] = p.w0 * q.w[j] + q.w0 * p.w[j] + i * cr[j];
    }
    PauliForm {
        w0: p.w0 * q.w0 + dot(&p.w, &q.w),
        w: v,
    }
}

impl Matrix2 {
    pub fn zero() -> Self {
        Self { e: [[ZERO; 2]; 2] }
    }

    pub fn identity() -> Self {
        Self {
            e: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    /// Pauli matrix `s_i`, i in {1,2,3}.
    pub fn pauli(i: usize) -> Self {
        let im = C::new(0.0, 1.0);
        match i {
            1 => Self {
                e: [[ZERO, ONE], [ONE, ZERO]],
            },
            2 => Self {
                e: [[ZERO, -im], [im, ZERO]],
            },
            3 => Self {
                e: [[ONE, ZERO], [ZERO, -ONE]],
            },
            _ => panic!("pauli index must be 1, 2 or 3"),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                r.e[i][j] = self.e[i][0] * other.e[0][j] + self.e[i][1] * other.e[1][j];
            }
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                r.e[i][j] = self.e[i][j] - other.e[i][j];
            }
        }
        r
    }

    pub fn adjoint(&self) -> Self {
        let mut r = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                r.e[i][j] = self.e[j][i].conj();
            }
        }
        r
    }

    pub fn trace(&self) -> C {
        self.e[0][0] + self.e[1][1]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.e[i][j] - other.e[i][j]).norm());
            }
        }
        m
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }
}
