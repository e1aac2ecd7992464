//! Real quaternions `q = w + x e₁ + y e₂ + z e₃`.
//!
//! Basis products follow `eᵢeⱼ = −δᵢⱼ + εᵢⱼₖ eₖ` with `ε₁₂₃ = +1`, so
//! `e₁e₂ = e₃`, `e₂e₃ = e₁`, `e₃e₁ = e₂`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this modulus a quaternion is treated as non-invertible.
pub const INVERSE_GUARD: f64 = 1e-300;

/// Imaginary parts shorter than this have no well-defined polar axis.
pub const AXIS_GUARD: f64 = 1e-12;

/// Maximum modulus error accepted when wrapping a value as a unit quaternion.
pub const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const E1: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const E3: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    /// The four basis units `1, e₁, e₂, e₃`, indexed by component.
    pub const BASIS: [Quaternion; 4] = [Self::ONE, Self::E1, Self::E2, Self::E3];

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub const fn pure(x: f64, y: f64, z: f64) -> Self {
        Quaternion::new(0.0, x, y, z)
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Hamilton product `self · rhs`.
    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Quaternion) -> Quaternion {
        let (a, b) = (self, rhs);
        Quaternion {
            w: a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            x: a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            y: a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            z: a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        }
    }

    #[inline]
    pub fn conj(self) -> Quaternion {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        // hypot-style scaling is unnecessary at the magnitudes used here
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn imag(self) -> Quaternion {
        Quaternion::pure(self.x, self.y, self.z)
    }

    #[inline]
    pub fn imag_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn inverse(self) -> Result<Quaternion> {
        let n2 = self.norm_sqr();
        if !(self.norm() > INVERSE_GUARD) {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj() * (1.0 / n2))
    }

    #[inline]
    pub fn scale(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// `pq − qp`.
    #[inline]
    pub fn commutator(self, rhs: Quaternion) -> Quaternion {
        self * rhs - rhs * self
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Quaternion) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// `magnitude · (cos φ + axis sin φ)`.
    pub fn exp_polar(magnitude: f64, axis: UnitQuaternion, angle: f64) -> Quaternion {
        let (s, c) = angle.sin_cos();
        (Quaternion::ONE * c + axis.get() * s) * magnitude
    }

    /// Inverse of [`Quaternion::exp_polar`] on the `A = +1` branch.
    ///
    /// A real quaternion has no polar axis; it is reported with axis `e₁`,
    /// angle `0` or `π`, and `degenerate_axis` set.
    pub fn polar(self) -> Result<PolarForm> {
        let magnitude = self.norm();
        if !(magnitude > INVERSE_GUARD) {
            return Err(Error::ZeroDivisor);
        }
        let v = self.imag_norm();
        if v < AXIS_GUARD {
            let angle = if self.w >= 0.0 { 0.0 } else { std::f64::consts::PI };
            return Ok(PolarForm {
                magnitude,
                axis: UnitQuaternion::E1,
                angle,
                degenerate_axis: true,
            });
        }
        let axis = UnitQuaternion(self.imag() * (1.0 / v));
        Ok(PolarForm {
            magnitude,
            axis,
            angle: v.atan2(self.w),
            degenerate_axis: false,
        })
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}e1 {:+}e2 {:+}e3", self.w, self.x, self.y, self.z)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, r: Quaternion) -> Quaternion {
        Quaternion::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, r: Quaternion) -> Quaternion {
        Quaternion::mul(self, r)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        self.scale(1.0 / s)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, r: Quaternion) {
        *self = *self + r;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, r: Quaternion) {
        *self = *self - r;
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, r: Quaternion) {
        *self = *self * r;
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |a, b| a + b)
    }
}

/// A quaternion of modulus one. Inverse and conjugate coincide.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(into = "Quaternion")]
pub struct UnitQuaternion(Quaternion);

impl UnitQuaternion {
    pub const ONE: UnitQuaternion = UnitQuaternion(Quaternion::ONE);
    pub const E1: UnitQuaternion = UnitQuaternion(Quaternion::E1);
    pub const E2: UnitQuaternion = UnitQuaternion(Quaternion::E2);
    pub const E3: UnitQuaternion = UnitQuaternion(Quaternion::E3);

    /// Accepts `q` if `| |q| − 1 | ≤ 1e−12` and renormalizes it.
    pub fn new(q: Quaternion) -> Result<Self> {
        let n = q.norm();
        if !((n - 1.0).abs() <= UNIT_TOLERANCE) {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(UnitQuaternion(q * (1.0 / n)))
    }

    /// Scales any nonzero quaternion onto the unit sphere.
    pub fn normalize(q: Quaternion) -> Result<Self> {
        let n = q.norm();
        if !(n > INVERSE_GUARD) {
            return Err(Error::ZeroDivisor);
        }
        Ok(UnitQuaternion(q * (1.0 / n)))
    }

    #[inline]
    pub fn get(self) -> Quaternion {
        self.0
    }

    #[inline]
    pub fn inverse(self) -> UnitQuaternion {
        UnitQuaternion(self.0.conj())
    }

    pub fn is_pure(self) -> bool {
        self.0.w.abs() <= UNIT_TOLERANCE
    }

    /// `cos φ + axis sin φ`; `axis` must be pure imaginary.
    pub fn from_axis_angle(axis: UnitQuaternion, angle: f64) -> Result<Self> {
        if !axis.is_pure() {
            return Err(Error::NotPureImaginary { real: axis.0.w });
        }
        UnitQuaternion::new(Quaternion::exp_polar(1.0, axis, angle))
    }
}

impl From<UnitQuaternion> for Quaternion {
    fn from(u: UnitQuaternion) -> Self {
        u.0
    }
}

impl<'de> Deserialize<'de> for UnitQuaternion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // Stored values are kept bit-for-bit; only the norm is validated.
        let q = Quaternion::deserialize(d)?;
        UnitQuaternion::new(q).map_err(serde::de::Error::custom)?;
        Ok(UnitQuaternion(q))
    }
}

/// `q = magnitude · (cos angle + axis sin angle)` with `angle ∈ [0, π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarForm {
    pub magnitude: f64,
    pub axis: UnitQuaternion,
    pub angle: f64,
    /// Set when the source was real and `axis` is the placeholder `e₁`.
    pub degenerate_axis: bool,
}

impl PolarForm {
    pub fn reconstruct(&self) -> Quaternion {
        Quaternion::exp_polar(self.magnitude, self.axis, self.angle)
    }

    pub fn checked_axis(&self) -> Result<UnitQuaternion> {
        if self.degenerate_axis {
            Err(Error::DegenerateAxis)
        } else {
            Ok(self.axis)
        }
    }
}

/// Draws a quaternion from `rng`.
///
/// With `unit` set the result is uniform on the 3-sphere (normalized
/// Gaussian 4-vector); otherwise each component is standard normal.
pub fn random_quaternion<R: Rng + ?Sized>(rng: &mut R, unit: bool) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if !unit {
            return q;
        }
        let n = q.norm();
        if n > 1e-8 {
            return q * (1.0 / n);
        }
    }
}

pub fn random_quaternion_seeded(seed: u64, unit: bool) -> Quaternion {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_quaternion(&mut rng, unit)
}

pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> UnitQuaternion {
    UnitQuaternion(random_quaternion(rng, true))
}

/// Uniform unit vector in span{e₁, e₂, e₃}.
pub fn random_pure_unit<R: Rng + ?Sized>(rng: &mut R) -> UnitQuaternion {
    loop {
        let q = Quaternion::pure(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        let n = q.norm();
        if n > 1e-8 {
            return UnitQuaternion(q * (1.0 / n));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const E: [Quaternion; 4] = Quaternion::BASIS;

    fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
        match (i, j, k) {
            (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
            (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
            _ => 0.0,
        }
    }

    /// eᵢeⱼ from the structure constants, independent of the product formula.
    fn basis_product_from_table(i: usize, j: usize) -> Quaternion {
        if i == 0 {
            return E[j];
        }
        if j == 0 {
            return E[i];
        }
        let mut out = Quaternion::real(if i == j { -1.0 } else { 0.0 });
        for k in 1..4 {
            out += E[k] * levi_civita(i, j, k);
        }
        out
    }

    /// Bilinear expansion over basis products.
    fn mul_by_table(p: Quaternion, q: Quaternion) -> Quaternion {
        let (pa, qa) = (p.to_array(), q.to_array());
        let mut out = Quaternion::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                out += basis_product_from_table(i, j) * (pa[i] * qa[j]);
            }
        }
        out
    }

    #[test]
    fn basis_table_is_exact() {
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(E[i] * E[j], basis_product_from_table(i, j), "e{i} e{j}");
            }
        }
        assert_eq!(Quaternion::E1 * Quaternion::E2, Quaternion::E3);
    }

    #[test]
    fn product_examples() {
        let q = Quaternion::new(2.0, 3.0, 0.0, 0.0);
        assert_eq!(q * Quaternion::ONE, q);
        let lhs = Quaternion::new(1.0, 1.0, 0.0, 0.0) * Quaternion::new(1.0, 0.0, 1.0, 0.0);
        assert_eq!(lhs, Quaternion::new(1.0, 1.0, 1.0, 1.0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let p = random_quaternion(&mut rng, false);
            let q = random_quaternion(&mut rng, false);
            assert!((p * q).max_abs_diff(mul_by_table(p, q)) < 1e-13);
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(Quaternion::new(1.0, 1.0, 0.0, 0.0).conj(), Quaternion::new(1.0, -1.0, 0.0, 0.0));
        let (e2, e3) = (Quaternion::E2, Quaternion::E3);
        assert_eq!((e2 * e3).conj(), -Quaternion::E1);
        assert_eq!(e3.conj() * e2.conj(), -Quaternion::E1);
        let q = random_quaternion_seeded(9, false);
        assert_eq!(q.conj().conj(), q);
    }

    #[test]
    fn inverses() {
        assert_eq!(Quaternion::E1.inverse().unwrap(), -Quaternion::E1);
        assert_eq!(Quaternion::real(2.0).inverse().unwrap(), Quaternion::real(0.5));
        let q = Quaternion::new(1.0, 1.0, 1.0, 1.0);
        let inv = q.inverse().unwrap();
        assert!(inv.max_abs_diff(Quaternion::new(0.25, -0.25, -0.25, -0.25)) < 1e-15);
        assert!((q * inv).max_abs_diff(Quaternion::ONE) < 1e-12);
        assert!(matches!(Quaternion::ZERO.inverse(), Err(Error::ZeroDivisor)));
        assert!(matches!(Quaternion::real(1e-301).inverse(), Err(Error::ZeroDivisor)));
    }

    #[test]
    fn polar_examples() {
        let q = Quaternion::exp_polar(1.0, UnitQuaternion::E1, PI / 2.0);
        assert!(q.max_abs_diff(Quaternion::E1) < 1e-15);
        let q = Quaternion::exp_polar(1.0, UnitQuaternion::E2, PI);
        assert!(q.max_abs_diff(-Quaternion::ONE) < 1e-15);

        let q = Quaternion::new(0.5, 0.0, 0.0, 3f64.sqrt() / 2.0);
        let p = q.polar().unwrap();
        assert!((p.magnitude - 1.0).abs() < 1e-15);
        assert!(p.axis.get().max_abs_diff(Quaternion::E3) < 1e-15);
        assert!((p.angle - PI / 3.0).abs() < 1e-15);
        assert!(p.reconstruct().max_abs_diff(q) < 1e-15);
    }

    #[test]
    fn polar_degenerate_axis_is_flagged() {
        let p = Quaternion::real(-2.0).polar().unwrap();
        assert!(p.degenerate_axis);
        assert_eq!(p.axis, UnitQuaternion::E1);
        assert_eq!(p.angle, PI);
        assert!(matches!(p.checked_axis(), Err(Error::DegenerateAxis)));
        assert!(p.reconstruct().max_abs_diff(Quaternion::real(-2.0)) < 1e-15);
        let p = Quaternion::real(3.0).polar().unwrap();
        assert_eq!(p.angle, 0.0);
        assert!(matches!(Quaternion::ZERO.polar(), Err(Error::ZeroDivisor)));
    }

    #[test]
    fn unit_construction() {
        assert!(UnitQuaternion::new(Quaternion::real(1.0 + 1e-13)).is_ok());
        assert!(matches!(UnitQuaternion::new(Quaternion::real(1.1)), Err(Error::NotUnit { .. })));
        assert!(UnitQuaternion::from_axis_angle(UnitQuaternion::ONE, 0.3).is_err());
    }

    #[test]
    fn random_is_deterministic_and_unit() {
        let a = random_quaternion_seeded(42, true);
        let b = random_quaternion_seeded(42, true);
        assert_eq!(a, b);
        assert!((a.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unit_samples_have_zero_mean() {
        // Uniform on S³: each coordinate has mean 0 and variance 1/4,
        // so the sample-mean standard error at 10⁵ draws is 1.6e−3.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 100_000;
        let (mut sw, mut sw2) = (0.0, 0.0);
        for _ in 0..n {
            let q = random_quaternion(&mut rng, true);
            sw += q.w;
            sw2 += q.w * q.w;
        }
        let mean = sw / n as f64;
        assert!(mean.abs() < 0.02, "mean {mean}");
        assert!((sw2 / n as f64 - 0.25).abs() < 0.01);
    }
}
