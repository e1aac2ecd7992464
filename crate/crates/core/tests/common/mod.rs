#![allow(dead_code)]

use proptest::prelude::*;
use qqm_core::hspace::{HMatrix, HVector};
use qqm_core::{Quaternion, UnitQuaternion};

pub fn quaternion() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-10.0f64..10.0).prop_map(Quaternion::from)
}

pub fn unit() -> impl Strategy<Value = UnitQuaternion> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("away from zero", |a| a.iter().map(|v| v * v).sum::<f64>() > 1e-6)
        .prop_map(|a| UnitQuaternion::normalize(Quaternion::from(a)).unwrap())
}

pub fn pure_unit() -> impl Strategy<Value = UnitQuaternion> {
    prop::array::uniform3(-1.0f64..1.0)
        .prop_filter("away from zero", |a| a.iter().map(|v| v * v).sum::<f64>() > 1e-6)
        .prop_map(|a| {
            let n = a.iter().map(|v| v * v).sum::<f64>().sqrt();
            UnitQuaternion::new(Quaternion::pure(a[0] / n, a[1] / n, a[2] / n)).unwrap()
        })
}

pub fn hvector(n: usize) -> impl Strategy<Value = HVector> {
    prop::collection::vec(quaternion(), n).prop_map(|v| HVector::new(v).unwrap())
}

pub fn hmatrix(rows: usize, cols: usize) -> impl Strategy<Value = HMatrix> {
    prop::collection::vec(quaternion(), rows * cols).prop_map(move |v| HMatrix::from_row_major(rows, cols, v).unwrap())
}

pub fn square(max: usize) -> impl Strategy<Value = HMatrix> {
    (1..=max).prop_flat_map(|n| hmatrix(n, n))
}

pub fn hermitian(max: usize) -> impl Strategy<Value = HMatrix> {
    square(max).prop_map(|m| (&m + &m.adjoint()).scale(0.5))
}

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Matrix exponential by Taylor series with scaling and squaring.
pub fn taylor_expm(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    let norm: f64 = m.iter().map(|z| z.norm()).sum::<f64>();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let a = m * Complex64::new(0.5f64.powi(squarings), 0.0);
    let mut sum = DMatrix::<Complex64>::identity(n, n);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=30 {
        term = &term * &a * Complex64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

pub fn cmax(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
