mod common;

use common::{pure_unit, taylor_expm};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use qqm_core::dynamics::{
    check_ccr, evolve, heisenberg_rhs, superselection_witness, EvolutionState, GridSpec, IotaSpec, Propagator,
};
use qqm_core::hspace::{eig_hermitian, HMatrix, HVector};
use qqm_core::random::{random_hermitian, random_hermitian_commuting, random_in_subring, random_unit_hvector};
use qqm_core::{Error, Quaternion, UnitQuaternion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spectral_norm(h: &HMatrix) -> f64 {
    eig_hermitian(h).unwrap().values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Maps `span{1, η}` onto ℂ with `η ↦ i`.
fn to_complex(q: Quaternion, eta: Quaternion) -> Complex64 {
    let im = q.x * eta.x + q.y * eta.y + q.z * eta.z;
    Complex64::new(q.w, im)
}

fn complex_subring_case(eta: UnitQuaternion, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let iota = IotaSpec::new(eta).unwrap();
    let n = 4;
    let h = random_hermitian_commuting(&mut rng, n, eta);
    let psi = HVector::new((0..n).map(|_| random_in_subring(&mut rng, eta)).collect()).unwrap().normalized().unwrap();
    let t = 1.3;
    let state = EvolutionState::new(psi.clone(), 0.0, h.clone(), iota).unwrap();
    let out = evolve(&state, t).unwrap();

    let e = eta.get();
    let hc = DMatrix::from_fn(n, n, |i, j| to_complex(h[(i, j)], e));
    let psic = DMatrix::from_fn(n, 1, |i, _| to_complex(psi[i], e));
    let reference = taylor_expm(&(hc * Complex64::new(0.0, -t))) * psic;
    let mut err: f64 = 0.0;
    for i in 0..n {
        let q = out.psi[i];
        // The result must stay in the subring.
        let back = Quaternion::real(reference[(i, 0)].re) + e * reference[(i, 0)].im;
        err = err.max(q.max_abs_diff(back));
    }
    err
}

#[test]
fn complex_subring_matches_complex_reference() {
    for (k, eta) in [UnitQuaternion::E1, UnitQuaternion::E2, UnitQuaternion::E3].into_iter().enumerate() {
        let err = complex_subring_case(eta, 100 + k as u64);
        assert!(err <= 1e-10, "eta {:?}: {err}", eta);
    }
}

#[test]
fn heisenberg_matches_symmetric_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let iota = IotaSpec::default();
    let dt = 1e-5;
    for _ in 0..20 {
        let h = random_hermitian_commuting(&mut rng, 4, iota.eta());
        let h = h.scale(1.0 / h.frobenius_norm());
        let a = random_hermitian_commuting(&mut rng, 4, iota.eta());
        let a = a.scale(1.0 / a.frobenius_norm());
        let prop = Propagator::new(&h, iota).unwrap();
        let heis = |t: f64| {
            let u = prop.matrix(t).unwrap();
            &(&u.adjoint() * &a) * &u
        };
        let fd = (&heis(dt) - &heis(-dt)).scale(0.5 / dt);
        let rhs = heisenberg_rhs(&a, &h, iota, &HMatrix::zeros(4, 4)).unwrap();
        assert!(fd.max_abs_diff(&rhs) <= 1e-8, "{}", fd.max_abs_diff(&rhs));
    }
}

#[test]
fn explicit_time_dependence_is_added() {
    let iota = IotaSpec::default();
    let h = HMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
    let d = HMatrix::from_real(2, 2, &[0.0, 2.0, 2.0, 0.0]).unwrap();
    let rhs = heisenberg_rhs(&h, &h, iota, &d).unwrap();
    assert_eq!(rhs, d);
}

#[test]
fn grid_heisenberg_velocity() {
    let iota = IotaSpec::default();
    let grid = GridSpec::centered(256, 16.0 / 255.0).unwrap();
    let mass = 1.7;
    let q = grid.position();
    let p = grid.momentum(iota);
    let h = (&p * &p).scale(0.5 / mass);
    let dq = heisenberg_rhs(&q, &h, iota, &HMatrix::zeros(256, 256)).unwrap();
    let v = p.scale(1.0 / mass);
    let mut worst: f64 = 0.0;
    for psi in grid.affine_probes() {
        let lhs = &dq * &psi;
        let rhs = &v * &psi;
        for i in 2..254 {
            worst = worst.max((lhs[i] - rhs[i]).norm());
        }
    }
    assert!(worst <= 1e-6, "{worst}");
}

#[test]
fn grid_ccr_on_256_points() {
    let grid = GridSpec::centered(256, 16.0 / 255.0).unwrap();
    let r = check_ccr(&grid.canonical_pair(IotaSpec::default()).unwrap());
    assert!(r.qp_deviation <= 1e-8);
    assert_eq!((r.qq, r.pp), (0.0, 0.0));
}

#[test]
fn superselection_is_necessary() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let iota = IotaSpec::default();
    let h = random_hermitian(&mut rng, 4);
    let psi = random_unit_hvector(&mut rng, 4);
    assert!(superselection_witness(&h, iota, &psi, 1.0).unwrap() > 1e-6);
    let state = EvolutionState::new(psi, 0.0, h, iota).unwrap();
    assert!(matches!(evolve(&state, 1.0), Err(Error::SuperselectionViolated { .. })));
}

#[test]
fn small_time_generator_is_second_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let iota = IotaSpec::default();
    let h = random_hermitian_commuting(&mut rng, 4, iota.eta());
    let psi = random_unit_hvector(&mut rng, 4);
    let prop = Propagator::new(&h, iota).unwrap();
    let step = |t: f64| {
        let exact = prop.apply(t, &psi).unwrap();
        let linear = psi.checked_sub(&iota.apply(&h).apply(&psi).unwrap().scale(t)).unwrap();
        exact.max_abs_diff(&linear)
    };
    let (e1, e2) = (step(1e-2), step(5e-3));
    assert!((e1 / e2 - 4.0).abs() < 0.4, "ratio {}", e1 / e2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn norm_energy_group_law(seed in any::<u64>(), eta in pure_unit(), n in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let iota = IotaSpec::new(eta).unwrap();
        let h = random_hermitian_commuting(&mut rng, n, eta);
        let psi = random_unit_hvector(&mut rng, n);
        let t_max = 100.0 / spectral_norm(&h);
        let s0 = EvolutionState::new(psi.clone(), 0.0, h, iota).unwrap();
        let e0 = s0.energy().w;
        for k in 1..=4 {
            let s = evolve(&s0, t_max * k as f64 / 4.0).unwrap();
            prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-9);
            prop_assert!((s.energy().w - e0).abs() <= 1e-9 * e0.abs().max(1.0));
        }
        let (t1, t2) = (0.37 * t_max, 0.41 * t_max);
        let two_step = evolve(&evolve(&s0, t1).unwrap(), t1 + t2).unwrap();
        let one_step = evolve(&s0, t1 + t2).unwrap();
        prop_assert!(two_step.psi.max_abs_diff(&one_step.psi) <= 1e-9);
        let back = evolve(&one_step, 0.0).unwrap();
        prop_assert!(back.psi.max_abs_diff(&psi) <= 1e-9);
    }
}
