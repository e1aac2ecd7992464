//! The complex symplectic representation of quaternionic matrices.
//!
//! Writing `q = z₁ + z₂e₂` with `z₁ = w + x·i`, `z₂ = y + z·i` (so `e₁ ↔ i`),
//! a single quaternion maps to
//!
//! ```text
//!     χ(q) = [  z₁    z₂ ]
//!            [ −z̄₂    z̄₁ ]
//! ```
//!
//! An `r × c` matrix `M = A + B e₂` is stored in block form
//! `[[A, B], [−B̄, Ā]]` as a `2r × 2c` complex matrix. The map is a ring
//! homomorphism and sends the quaternionic adjoint to the conjugate
//! transpose.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{HMatrix, HVector};
use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Symplectic residual accepted by [`ComplexEmbedding::lift`].
pub const LIFT_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexEmbedding {
    rows: usize,
    cols: usize,
    matrix: DMatrix<Complex64>,
}

#[inline]
fn split(q: Quaternion) -> (Complex64, Complex64) {
    (Complex64::new(q.w, q.x), Complex64::new(q.y, q.z))
}

#[inline]
fn join(z1: Complex64, z2: Complex64) -> Quaternion {
    Quaternion::new(z1.re, z1.im, z2.re, z2.im)
}

impl ComplexEmbedding {
    pub fn embed(m: &HMatrix) -> Self {
        let (r, c) = (m.rows(), m.cols());
        let mut out = DMatrix::<Complex64>::zeros(2 * r, 2 * c);
        for i in 0..r {
            for j in 0..c {
                let (z1, z2) = split(m[(i, j)]);
                out[(i, j)] = z1;
                out[(i, c + j)] = z2;
                out[(r + i, j)] = -z2.conj();
                out[(r + i, c + j)] = z1.conj();
            }
        }
        ComplexEmbedding { rows: r, cols: c, matrix: out }
    }

    pub fn embed_vector(v: &HVector) -> Self {
        Self::embed(&v.to_column())
    }

    /// Wraps a raw complex matrix; the quaternionic shape is half of its own.
    pub fn from_complex(matrix: DMatrix<Complex64>) -> Result<Self> {
        let (r2, c2) = matrix.shape();
        if r2 % 2 != 0 || c2 % 2 != 0 || r2 == 0 || c2 == 0 {
            return Err(Error::DimensionMismatch {
                expected: "even, nonzero complex dimensions".into(),
                found: format!("{r2}x{c2}"),
            });
        }
        Ok(ComplexEmbedding { rows: r2 / 2, cols: c2 / 2, matrix })
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    /// Complex dimension `2n` of a square embedding.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `max |J·conj(χ)·J⁻¹ − χ|`, in block form: `D = Ā` and `C = −B̄`.
    pub fn symplectic_residual(&self) -> f64 {
        let (r, c) = (self.rows, self.cols);
        let m = &self.matrix;
        let mut res: f64 = 0.0;
        for i in 0..r {
            for j in 0..c {
                res = res.max((m[(r + i, c + j)] - m[(i, j)].conj()).norm());
                res = res.max((m[(r + i, j)] + m[(i, c + j)].conj()).norm());
            }
        }
        res
    }

    pub fn lift(&self) -> Result<HMatrix> {
        self.lift_within(LIFT_TOLERANCE)
    }

    /// Inverse of [`ComplexEmbedding::embed`], averaging each block with its
    /// symplectic partner.
    pub fn lift_within(&self, tolerance: f64) -> Result<HMatrix> {
        let residual = self.symplectic_residual();
        if !(residual <= tolerance) {
            return Err(Error::NotSymplectic { residual });
        }
        let (r, c) = (self.rows, self.cols);
        let m = &self.matrix;
        Ok(HMatrix::from_fn(r, c, |i, j| {
            let z1 = (m[(i, j)] + m[(r + i, c + j)].conj()) * 0.5;
            let z2 = (m[(i, c + j)] - m[(r + i, j)].conj()) * 0.5;
            join(z1, z2)
        }))
    }
}

/// The quaternionic ket whose embedding has `u` as its first column.
pub(crate) fn ket_from_complex_column(u: &[Complex64]) -> HVector {
    let n = u.len() / 2;
    let entries = (0..n).map(|i| join(u[i], -u[n + i].conj())).collect();
    HVector::new(entries).expect("nonempty column")
}
