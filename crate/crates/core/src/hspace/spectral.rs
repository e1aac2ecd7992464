//! Hermitian spectra and unitary exponentials through the complex embedding.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::embed::{ket_from_complex_column, ComplexEmbedding};
use super::{inner, HMatrix, HVector, HERMITIAN_TOLERANCE};
use crate::error::{Error, Result};

/// Eigenvalues closer than this (relative to the spectral scale) form one
/// degenerate cluster.
const CLUSTER_GAP: f64 = 1e-8;

/// Symplectic drift tolerated when lifting an exponential back to ℍ.
const EXP_LIFT_TOLERANCE: f64 = 1e-8;

/// Right eigen-decomposition `H vₖ = vₖ λₖ` of a quaternionic Hermitian matrix.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Ascending, one per quaternionic dimension.
    pub values: Vec<f64>,
    /// Orthonormal under [`inner`]. Within a degenerate cluster the basis is
    /// arbitrary; compare projectors, not vectors.
    pub vectors: Vec<HVector>,
    /// Largest split `|λ₂ₖ₊₁ − λ₂ₖ|` between paired complex eigenvalues.
    pub pairing_residual: f64,
    /// Largest imaginary norm of the Rayleigh quotients `⟨vₖ|H|vₖ⟩`.
    pub reality_residual: f64,
}

impl Spectrum {
    /// `Σₖ vₖ λₖ ⟨vₖ|`.
    pub fn reconstruct(&self) -> HMatrix {
        let n = self.vectors.first().map_or(0, HVector::len);
        let mut out = HMatrix::zeros(n, n);
        for (v, &lambda) in self.vectors.iter().zip(&self.values) {
            for i in 0..n {
                let left = v[i] * lambda;
                for j in 0..n {
                    out[(i, j)] += left * v[j].conj();
                }
            }
        }
        out
    }
}

fn complex_hermitian_eigen(m: DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Eigensolver("non-finite matrix entry".into()));
    }
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |i, j| {
        eig.eigenvectors[(i, order[j])]
    });
    Ok((values, vectors))
}

/// `w ← w − Σ vₖ⟨vₖ|w⟩`, applied twice for stability.
fn project_out(w: &HVector, basis: &[HVector]) -> HVector {
    let mut w = w.clone();
    for _ in 0..2 {
        for v in basis {
            let coeff = inner(v, &w).expect("equal lengths");
            w = w.checked_sub(&v.mul_right(coeff)).expect("equal lengths");
        }
    }
    w
}

pub fn eig_hermitian(h: &HMatrix) -> Result<Spectrum> {
    let residual = h.hermitian_residual();
    if !(residual <= HERMITIAN_TOLERANCE) {
        return Err(Error::NotHermitian { residual });
    }
    let n = h.rows();
    let (values, vecs) = complex_hermitian_eigen(ComplexEmbedding::embed(h).into_matrix())?;
    let scale = values.iter().fold(1.0f64, |a, v| a.max(v.abs()));

    // Each quaternionic eigenvector spans two complex ones (u and its
    // symplectic partner). Inside a cluster, greedily keep the complex
    // eigenvector with the largest component outside the quaternionic span
    // of those already kept.
    let mut out_values = Vec::with_capacity(n);
    let mut out_vectors: Vec<HVector> = Vec::with_capacity(n);
    let mut pairing_residual: f64 = 0.0;
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end] - values[end - 1] < CLUSTER_GAP * scale {
            end += 1;
        }
        let want = (end - start) / 2;
        let mut candidates: Vec<HVector> = (start..end)
            .map(|k| {
                let col: Vec<Complex64> = vecs.column(k).iter().copied().collect();
                ket_from_complex_column(&col)
            })
            .collect();
        for pick in 0..want {
            let (best, residual) = candidates
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let r = project_out(c, &out_vectors);
                    (k, r)
                })
                .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
                .ok_or_else(|| Error::Eigensolver("empty eigenvalue cluster".into()))?;
            candidates.swap_remove(best);
            out_vectors.push(residual.normalized()?);
            let lo = values[start + 2 * pick];
            let hi = values[start + 2 * pick + 1];
            pairing_residual = pairing_residual.max((hi - lo).abs());
            out_values.push(0.5 * (lo + hi));
        }
        start = end;
    }
    if out_vectors.len() != n {
        return Err(Error::Eigensolver(format!(
            "recovered {} of {n} quaternionic eigenvectors",
            out_vectors.len()
        )));
    }
    let mut reality_residual: f64 = 0.0;
    for v in &out_vectors {
        reality_residual = reality_residual.max(h.expectation(v)?.imag_norm());
    }
    Ok(Spectrum { values: out_values, vectors: out_vectors, pairing_residual, reality_residual })
}

/// Cached spectral form of an anti-Hermitian generator `A`, so that
/// `exp(tA)` can be evaluated for many `t`.
///
/// With `K = i·χ(A)` Hermitian and `K = V Λ V^H`,
/// `χ(exp(tA)) = V e^{−iΛt} V^H`.
#[derive(Clone, Debug)]
pub struct AntiHermitianExp {
    n: usize,
    values: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

impl AntiHermitianExp {
    pub fn new(a: &HMatrix) -> Result<Self> {
        let residual = a.antihermitian_residual();
        if !(residual <= HERMITIAN_TOLERANCE) {
            return Err(Error::NotAntiHermitian { residual });
        }
        let k = ComplexEmbedding::embed(a).into_matrix() * Complex64::i();
        let (values, vectors) = complex_hermitian_eigen(k)?;
        Ok(AntiHermitianExp { n: a.rows(), values, vectors })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn phases(&self, t: f64) -> Vec<Complex64> {
        self.values.iter().map(|&l| Complex64::from_polar(1.0, -l * t)).collect()
    }

    /// `exp(tA)`.
    pub fn at(&self, t: f64) -> Result<HMatrix> {
        let phases = self.phases(t);
        let mut scaled = self.vectors.clone();
        for (j, p) in phases.iter().enumerate() {
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= *p);
        }
        let u = scaled * self.vectors.adjoint();
        ComplexEmbedding::from_complex(u)?.lift_within(EXP_LIFT_TOLERANCE)
    }

    /// `exp(tA)·v` without forming the full propagator.
    pub fn apply(&self, t: f64, v: &HVector) -> Result<HVector> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n.to_string(), found: v.len().to_string() });
        }
        let x = ComplexEmbedding::embed_vector(v).into_matrix();
        let mut y = self.vectors.adjoint() * x;
        for (j, p) in self.phases(t).iter().enumerate() {
            y.row_mut(j).iter_mut().for_each(|z| *z *= *p);
        }
        let out = &self.vectors * y;
        Ok(ComplexEmbedding::from_complex(out)?.lift_within(EXP_LIFT_TOLERANCE)?.column(0))
    }
}

/// `exp(A)` for anti-Hermitian `A`; the result is unitary.
pub fn expm_antihermitian(a: &HMatrix) -> Result<HMatrix> {
    AntiHermitianExp::new(a)?.at(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::{Quaternion, UnitQuaternion};
    use crate::random::{random_antihermitian, random_hermitian};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    const E1: Quaternion = Quaternion::E1;
    const ONE: Quaternion = Quaternion::ONE;

    fn projector(vs: &[&HVector]) -> HMatrix {
        let n = vs[0].len();
        HMatrix::from_fn(n, n, |i, j| vs.iter().map(|v| v[i] * v[j].conj()).sum())
    }

    #[test]
    fn two_by_two_with_quaternionic_offdiagonal() {
        // K = [[0, e₁], [−e₁, 0]] squares to I, so I + K has spectrum {0, 2}.
        let h = HMatrix::from_rows(vec![vec![ONE, E1], vec![-E1, ONE]]).unwrap();
        let k = &h - &HMatrix::identity(2);
        assert!((&k * &k).max_abs_diff(&HMatrix::identity(2)) < 1e-15);
        let s = eig_hermitian(&h).unwrap();
        assert!((s.values[0] - 0.0).abs() < 1e-12);
        assert!((s.values[1] - 2.0).abs() < 1e-12);
        for (v, &l) in s.vectors.iter().zip(&s.values) {
            assert!(h.apply(v).unwrap().max_abs_diff(&v.mul_right(Quaternion::real(l))) < 1e-9);
        }
    }

    #[test]
    fn diagonal_spectrum() {
        let h = HMatrix::diagonal(&[Quaternion::real(3.0), Quaternion::real(-1.0)]);
        let s = eig_hermitian(&h).unwrap();
        assert!((s.values[0] + 1.0).abs() < 1e-14 && (s.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = HMatrix::from_rows(vec![vec![E1]]).unwrap();
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
        assert!(matches!(expm_antihermitian(&HMatrix::identity(2)), Err(Error::NotAntiHermitian { .. })));
    }

    #[test]
    fn random_spectral_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 2..=6 {
            for _ in 0..10 {
                let h = random_hermitian(&mut rng, n);
                let s = eig_hermitian(&h).unwrap();
                assert!(s.values.windows(2).all(|w| w[0] <= w[1]));
                assert!(s.reality_residual < 1e-10);
                assert!(s.pairing_residual < 1e-10);
                for (i, v) in s.vectors.iter().enumerate() {
                    let hv = h.apply(v).unwrap();
                    assert!(hv.max_abs_diff(&v.mul_right(Quaternion::real(s.values[i]))) < 1e-9);
                    for (j, w) in s.vectors.iter().enumerate() {
                        let expect = if i == j { ONE } else { Quaternion::ZERO };
                        assert!(inner(v, w).unwrap().max_abs_diff(expect) < 1e-10);
                    }
                }
                let err = s.reconstruct().checked_sub(&h).unwrap().frobenius_norm() / h.frobenius_norm();
                assert!(err < 1e-8, "reconstruction {err}");
            }
        }
    }

    #[test]
    fn degenerate_cluster_projectors() {
        // diag(1, 1, 2) rotated by a random unitary: the 1-eigenspace is
        // two-dimensional over ℍ and its projector is basis independent.
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let u = expm_antihermitian(&random_antihermitian(&mut rng, 3)).unwrap();
        let d = HMatrix::diagonal(&[ONE, ONE, Quaternion::real(2.0)]);
        let h = &(&u * &d) * &u.adjoint();
        let s = eig_hermitian(&h).unwrap();
        assert!((s.values[0] - 1.0).abs() < 1e-12 && (s.values[1] - 1.0).abs() < 1e-12);
        let p = projector(&[&s.vectors[0], &s.vectors[1]]);
        let expected = projector(&[&u.column(0), &u.column(1)]);
        assert!(p.max_abs_diff(&expected) < 1e-10);
    }

    #[test]
    fn exponential_examples() {
        assert!(expm_antihermitian(&HMatrix::zeros(3, 3)).unwrap().max_abs_diff(&HMatrix::identity(3)) < 1e-15);

        let a = HMatrix::from_rows(vec![vec![E1 * PI]]).unwrap();
        let u = expm_antihermitian(&a).unwrap();
        let scalar = Quaternion::exp_polar(1.0, UnitQuaternion::E1, PI);
        assert!(u[(0, 0)].max_abs_diff(scalar) < 1e-14);
        assert!(u[(0, 0)].max_abs_diff(-ONE) < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let a = random_antihermitian(&mut rng, 4);
        let u = expm_antihermitian(&a).unwrap();
        assert!((&u.adjoint() * &u).max_abs_diff(&HMatrix::identity(4)) < 1e-9);
    }

    #[test]
    fn cached_exponential_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let a = random_antihermitian(&mut rng, 5);
        let family = AntiHermitianExp::new(&a).unwrap();
        let v = crate::random::random_hvector(&mut rng, 5);
        let direct = family.at(0.7).unwrap().apply(&v).unwrap();
        assert!(family.apply(0.7, &v).unwrap().max_abs_diff(&direct) < 1e-12);
        let u1 = family.at(0.3).unwrap();
        let u2 = family.at(0.4).unwrap();
        assert!((&u1 * &u2).max_abs_diff(&family.at(0.7).unwrap()) < 1e-12);
    }
}
