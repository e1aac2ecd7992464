//! Quaternionic linear algebra over the right ℍ-module of kets.
//!
//! Kets accept scalars on the right (`|a⟩q`), bras on the left (`q⟨b|`).
//! Matrices act on the left of kets and therefore commute with right scalar
//! multiplication: `M(v·q) = (Mv)·q`.

mod embed;
mod spectral;

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{dims, Error, Result};
use crate::quat::Quaternion;

pub use embed::{ComplexEmbedding, LIFT_TOLERANCE};
pub use spectral::{eig_hermitian, expm_antihermitian, AntiHermitianExp, Spectrum};

/// Hermiticity tolerance accepted by the spectral routines.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// A ket: column of quaternions, scalars act on the right.
#[derive(Clone, Debug, PartialEq)]
pub struct HVector(Vec<Quaternion>);

impl HVector {
    pub fn new(entries: Vec<Quaternion>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("vector length must be at least 1".into()));
        }
        Ok(HVector(entries))
    }

    pub fn zeros(n: usize) -> Self {
        HVector(vec![Quaternion::ZERO; n.max(1)])
    }

    /// The `i`-th standard basis ket of length `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = HVector::zeros(n);
        v.0[i] = Quaternion::ONE;
        v
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        HVector::new(values.iter().map(|&r| Quaternion::real(r)).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn entries(&self) -> &[Quaternion] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Quaternion> {
        self.0
    }

    /// `|v⟩·q`.
    pub fn mul_right(&self, q: Quaternion) -> HVector {
        HVector(self.0.iter().map(|&a| a * q).collect())
    }

    pub fn scale(&self, s: f64) -> HVector {
        HVector(self.0.iter().map(|&a| a * s).collect())
    }

    /// The bra `⟨v|` with entries `conj(vᵢ)`.
    pub fn dagger(&self) -> HCovector {
        HCovector(self.0.iter().map(|q| q.conj()).collect())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Result<HVector> {
        let n = self.norm();
        if !(n > 0.0) {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.scale(1.0 / n))
    }

    pub fn max_abs_diff(&self, other: &HVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.max_abs_diff(*b))
            .fold(0.0, f64::max)
    }

    pub fn checked_add(&self, other: &HVector) -> Result<HVector> {
        check_len(self.len(), other.len())?;
        Ok(HVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &HVector) -> Result<HVector> {
        check_len(self.len(), other.len())?;
        Ok(HVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect()))
    }

    /// The `n × 1` matrix holding this ket.
    pub fn to_column(&self) -> HMatrix {
        HMatrix { rows: self.len(), cols: 1, data: self.0.clone() }
    }
}

impl Index<usize> for HVector {
    type Output = Quaternion;
    fn index(&self, i: usize) -> &Quaternion {
        &self.0[i]
    }
}

impl IndexMut<usize> for HVector {
    fn index_mut(&mut self, i: usize) -> &mut Quaternion {
        &mut self.0[i]
    }
}

/// A bra: row of quaternions, scalars act on the left.
#[derive(Clone, Debug, PartialEq)]
pub struct HCovector(Vec<Quaternion>);

impl HCovector {
    pub fn new(entries: Vec<Quaternion>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("covector length must be at least 1".into()));
        }
        Ok(HCovector(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.0
    }

    /// `q⟨b|`.
    pub fn mul_left(&self, q: Quaternion) -> HCovector {
        HCovector(self.0.iter().map(|&b| q * b).collect())
    }

    /// The number `⟨b|v⟩ = Σ bᵢvᵢ`.
    pub fn apply(&self, ket: &HVector) -> Result<Quaternion> {
        check_len(self.len(), ket.len())?;
        Ok(self.0.iter().zip(ket.entries()).map(|(&b, &v)| b * v).sum())
    }

    pub fn dagger(&self) -> HVector {
        HVector(self.0.iter().map(|q| q.conj()).collect())
    }
}

/// `⟨a|b⟩ = Σᵢ conj(aᵢ)·bᵢ`.
pub fn inner(bra_source: &HVector, ket: &HVector) -> Result<Quaternion> {
    check_len(bra_source.len(), ket.len())?;
    Ok(bra_source
        .entries()
        .iter()
        .zip(ket.entries())
        .map(|(a, &b)| a.conj() * b)
        .sum())
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a.to_string(), found: b.to_string() });
    }
    Ok(())
}

/// Dense row-major quaternionic matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl HMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        HMatrix { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Quaternion::ONE)
    }

    /// `q·I` on an `n`-dimensional space.
    pub fn scalar(n: usize, q: Quaternion) -> Self {
        let mut m = HMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = q;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        HMatrix { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: (rows * cols).to_string(),
                found: data.len().to_string(),
            });
        }
        Ok(HMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        HMatrix::from_row_major(r, c, rows.into_iter().flatten().collect())
    }

    /// Real matrix embedded in the real subring, row-major.
    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        HMatrix::from_row_major(rows, cols, values.iter().map(|&r| Quaternion::real(r)).collect())
    }

    pub fn diagonal(values: &[Quaternion]) -> Self {
        let n = values.len();
        let mut m = HMatrix::zeros(n, n);
        for (i, &q) in values.iter().enumerate() {
            m[(i, i)] = q;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn column(&self, j: usize) -> HVector {
        HVector((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    /// `(M†)ᵢⱼ = conj(Mⱼᵢ)`.
    pub fn adjoint(&self) -> HMatrix {
        HMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// `Σₖ Aᵢₖ·Bₖⱼ`, products taken in that order.
    pub fn matmul(&self, rhs: &HMatrix) -> Result<HMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: dims(rhs.rows, rhs.cols),
            });
        }
        let mut out = HMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, &a) in row.iter().enumerate() {
                if a == Quaternion::ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &HVector) -> Result<HVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols.to_string(),
                found: v.len().to_string(),
            });
        }
        Ok(HVector(
            (0..self.rows)
                .map(|i| {
                    self.data[i * self.cols..(i + 1) * self.cols]
                        .iter()
                        .zip(v.entries())
                        .map(|(&a, &b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }

    /// `q·M`, entry-wise left multiplication.
    pub fn scale_left(&self, q: Quaternion) -> HMatrix {
        self.map(|a| q * a)
    }

    /// `M·q`, entry-wise right multiplication.
    pub fn scale_right(&self, q: Quaternion) -> HMatrix {
        self.map(|a| a * q)
    }

    pub fn scale(&self, s: f64) -> HMatrix {
        self.map(|a| a * s)
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> HMatrix {
        HMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f(a)).collect() }
    }

    pub fn checked_add(&self, rhs: &HMatrix) -> Result<HMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &HMatrix) -> Result<HMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &HMatrix, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> Result<HMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: dims(self.rows, self.cols),
                found: dims(rhs.rows, rhs.cols),
            });
        }
        Ok(HMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    /// `AB − BA`.
    pub fn commutator(&self, rhs: &HMatrix) -> Result<HMatrix> {
        self.matmul(rhs)?.checked_sub(&rhs.matmul(self)?)
    }

    /// Largest absolute component over all entries.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|q| q.w.abs().max(q.x.abs()).max(q.y.abs()).max(q.z.abs()))
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &HMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| a.max_abs_diff(*b)).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |M − M†|`; infinite for non-square matrices.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut r: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                r = r.max(self[(i, j)].max_abs_diff(self[(j, i)].conj()));
            }
        }
        r
    }

    /// `max |M + M†|`; infinite for non-square matrices.
    pub fn antihermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut r: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                r = r.max(self[(i, j)].max_abs_diff(-self[(j, i)].conj()));
            }
        }
        r
    }

    /// `⟨v|M|v⟩`; real for Hermitian `M`.
    pub fn expectation(&self, v: &HVector) -> Result<Quaternion> {
        inner(v, &self.apply(v)?)
    }

    /// Restriction to the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> HMatrix {
        HMatrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])])
    }
}

impl Index<(usize, usize)> for HMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for HMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; use the `checked_*` methods and
// `matmul` where shapes come from user input.

impl Add for &HMatrix {
    type Output = HMatrix;
    fn add(self, rhs: &HMatrix) -> HMatrix {
        self.checked_add(rhs).expect("matrix shapes differ")
    }
}

impl Sub for &HMatrix {
    type Output = HMatrix;
    fn sub(self, rhs: &HMatrix) -> HMatrix {
        self.checked_sub(rhs).expect("matrix shapes differ")
    }
}

impl Mul for &HMatrix {
    type Output = HMatrix;
    fn mul(self, rhs: &HMatrix) -> HMatrix {
        self.matmul(rhs).expect("inner dimensions differ")
    }
}

impl Mul<&HVector> for &HMatrix {
    type Output = HVector;
    fn mul(self, rhs: &HVector) -> HVector {
        self.apply(rhs).expect("inner dimensions differ")
    }
}

impl Neg for &HMatrix {
    type Output = HMatrix;
    fn neg(self) -> HMatrix {
        self.map(|a| -a)
    }
}
