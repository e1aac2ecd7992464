mod common;

use common::{quaternion, unit};
use proptest::prelude::*;
use qqm_core::quat::{random_quaternion_seeded, PolarForm};
use qqm_core::Quaternion;

/// Left-multiplication matrix of `p`, written out from the Cayley table.
fn left_matrix(p: Quaternion) -> [[f64; 4]; 4] {
    let [a, b, c, d] = p.to_array();
    [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
}

fn matrix_product(p: Quaternion, q: Quaternion) -> Quaternion {
    let m = left_matrix(p);
    let v = q.to_array();
    let mut out = [0.0; 4];
    for (i, row) in m.iter().enumerate() {
        out[i] = row.iter().zip(&v).map(|(x, y)| x * y).sum();
    }
    Quaternion::from(out)
}

#[test]
fn signed_basis_associativity_is_exact() {
    let signed: Vec<Quaternion> = Quaternion::BASIS.iter().flat_map(|&e| [e, -e]).collect();
    for &p in &signed {
        for &q in &signed {
            for &r in &signed {
                assert_eq!((p * q) * r, p * (q * r));
            }
        }
    }
}

#[test]
fn noncommutativity_witness() {
    let (p, q) = (Quaternion::E1, Quaternion::E2);
    assert!((p * q - q * p).norm() > 1.0);
}

#[test]
fn seeded_draws_are_reproducible() {
    assert_eq!(random_quaternion_seeded(42, true), random_quaternion_seeded(42, true));
    assert!((random_quaternion_seeded(42, true).norm() - 1.0).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn product_matches_matrix_oracle(p in quaternion(), q in quaternion()) {
        prop_assert!((p * q).max_abs_diff(matrix_product(p, q)) <= 1e-12);
    }

    #[test]
    fn associativity(p in quaternion(), q in quaternion(), r in quaternion()) {
        let scale = p.norm() * q.norm() * r.norm();
        prop_assert!(((p * q) * r).max_abs_diff(p * (q * r)) <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn norm_is_multiplicative(p in quaternion(), q in quaternion()) {
        let lhs = (p * q).norm();
        let rhs = p.norm() * q.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn conjugation_reverses_products(p in quaternion(), q in quaternion()) {
        let scale = (p.norm() * q.norm()).max(1.0);
        prop_assert!((p * q).conj().max_abs_diff(q.conj() * p.conj()) <= 1e-12 * scale);
    }

    #[test]
    fn inverse_is_two_sided(p in quaternion().prop_filter("nonzero", |p| p.norm() > 1e-3)) {
        let inv = p.inverse().unwrap();
        prop_assert!((p * inv).max_abs_diff(Quaternion::ONE) <= 1e-12);
        prop_assert!((inv * p).max_abs_diff(Quaternion::ONE) <= 1e-12);
    }

    #[test]
    fn polar_round_trip(p in quaternion().prop_filter("non-real", |p| p.imag_norm() > 1e-6)) {
        let polar: PolarForm = p.polar().unwrap();
        prop_assert!(!polar.degenerate_axis);
        prop_assert!((0.0..=std::f64::consts::PI).contains(&polar.angle));
        prop_assert!(polar.reconstruct().max_abs_diff(p) <= 1e-10 * p.norm().max(1.0));
    }

    #[test]
    fn unit_inverse_is_conjugate(u in unit()) {
        prop_assert_eq!(u.inverse().get(), u.get().conj());
        prop_assert!((u.get() * u.inverse().get()).max_abs_diff(Quaternion::ONE) <= 1e-15);
    }
}
