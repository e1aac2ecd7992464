//! Plain complex linear algebra used as an independent reference for
//! evolution restricted to a complex subring.

use num_complex::Complex64;
use qqm_core::Quaternion;

/// Dense row-major complex square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        CMatrix { n, data: (0..n * n).map(|k| f(k / n, k % n)).collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    fn add_assign(&mut self, rhs: &CMatrix) {
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }

    fn l1(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).sum()
    }

    /// Taylor series with scaling and squaring.
    pub fn expm(&self) -> CMatrix {
        let norm = self.l1();
        let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
        let a = self.scale(Complex64::new(0.5f64.powi(squarings), 0.0));
        let mut sum = Self::identity(self.n);
        let mut term = Self::identity(self.n);
        for k in 1..=30 {
            term = term.matmul(&a).scale(Complex64::new(1.0 / k as f64, 0.0));
            sum.add_assign(&term);
        }
        for _ in 0..squarings {
            sum = sum.matmul(&sum);
        }
        sum
    }
}

/// Maps `q ∈ span{1, η}` to `w + i⟨q, η⟩`.
pub fn to_complex(q: Quaternion, eta: Quaternion) -> Complex64 {
    Complex64::new(q.w, q.x * eta.x + q.y * eta.y + q.z * eta.z)
}

pub fn from_complex(z: Complex64, eta: Quaternion) -> Quaternion {
    Quaternion::real(z.re) + eta * z.im
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_exponential() {
        let m = CMatrix::from_fn(1, |_, _| Complex64::new(0.0, 3.0));
        let e = m.expm().get(0, 0);
        assert!((e - Complex64::new(3f64.cos(), 3f64.sin())).norm() < 1e-14);
    }

    #[test]
    fn rotation_generator() {
        let t = 2.2;
        let m = CMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => Complex64::new(-t, 0.0),
            (1, 0) => Complex64::new(t, 0.0),
            _ => Complex64::new(0.0, 0.0),
        });
        let e = m.expm();
        assert!((e.get(0, 0).re - t.cos()).abs() < 1e-14);
        assert!((e.get(1, 0).re - t.sin()).abs() < 1e-14);
    }

    #[test]
    fn subring_round_trip() {
        let eta = Quaternion::pure(0.0, 0.6, 0.8);
        let q = Quaternion::real(0.3) + eta * -1.7;
        assert!(from_complex(to_complex(q, eta), eta).max_abs_diff(q) < 1e-15);
    }
}
