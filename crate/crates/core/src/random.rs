//! Seeded generators for random operators, states and tables.
//!
//! All draws come from a caller-owned RNG; nothing here keeps state.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::hspace::{expm_antihermitian, HMatrix, HVector};
use crate::quat::{random_quaternion, Quaternion, UnitQuaternion};

pub fn random_hvector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HVector {
    HVector::new((0..n).map(|_| random_quaternion(rng, false)).collect()).expect("n >= 1")
}

pub fn random_unit_hvector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HVector {
    random_hvector(rng, n).normalized().expect("nonzero draw")
}

pub fn random_hmatrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> HMatrix {
    HMatrix::from_fn(rows, cols, |_, _| random_quaternion(rng, false))
}

/// `(M + M†)/2` for Gaussian `M`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HMatrix {
    let m = random_hmatrix(rng, n, n);
    (&m + &m.adjoint()).scale(0.5)
}

/// `(M − M†)/2` for Gaussian `M`.
pub fn random_antihermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HMatrix {
    let m = random_hmatrix(rng, n, n);
    (&m - &m.adjoint()).scale(0.5)
}

pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HMatrix {
    expm_antihermitian(&random_antihermitian(rng, n)).expect("anti-Hermitian by construction")
}

/// Random element of the complex subring `span{1, η}`.
pub fn random_in_subring<R: Rng + ?Sized>(rng: &mut R, eta: UnitQuaternion) -> Quaternion {
    let a: f64 = rng.sample(StandardNormal);
    let b: f64 = rng.sample(StandardNormal);
    Quaternion::real(a) + eta.get() * b
}

/// Hermitian matrix whose entries all lie in `span{1, η}`, so it commutes
/// with `η·I`.
pub fn random_hermitian_commuting<R: Rng + ?Sized>(rng: &mut R, n: usize, eta: UnitQuaternion) -> HMatrix {
    let m = HMatrix::from_fn(n, n, |_, _| random_in_subring(rng, eta));
    (&m + &m.adjoint()).scale(0.5)
}
