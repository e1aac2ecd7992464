use qqm_core::hspace::eig_hermitian;
use qqm_core::oscillator::{build, check_oscillator_ccr, evolve_expectations};

const ROUNDING_FLOOR: f64 = 1e-13;

#[test]
fn interior_ccr_for_each_truncation() {
    let mut previous = [f64::INFINITY; 2];
    for n in [8, 12, 16] {
        for (slot, modes) in [vec![0], vec![0, 1]].iter().enumerate() {
            let osc = build(1.0, n, modes).unwrap();
            let r = check_oscillator_ccr(&osc).unwrap();
            let dev = r.interior_max();
            assert!(dev <= 1e-10, "N={n} modes={modes:?}: {r:?}");
            // Interior deviations are pure rounding, which grows like N·ε.
            assert!(dev <= previous[slot].max(ROUNDING_FLOOR), "N={n}: {dev:e}");
            assert!(r.full_space >= (n - 1) as f64);
            previous[slot] = dev;
        }
    }
}

#[test]
fn spectrum_matches_ladder_levels() {
    for (omega, modes) in [(1.0, vec![0]), (0.7, vec![1, 3])] {
        let osc = build(omega, 10, &modes).unwrap();
        let spec = eig_hermitian(osc.hamiltonian()).unwrap();
        let exact = osc.exact_spectrum();
        for (got, want) in spec.values.iter().zip(&exact) {
            assert!((got - want).abs() <= 1e-9);
        }
        let k = modes.len() as f64;
        assert!((exact[0] - omega * k / 2.0).abs() < 1e-15);
    }
}

#[test]
fn ehrenfest_over_two_periods() {
    for (omega, modes, alphas) in [
        (1.0, vec![0], vec![(1.0, 0.0)]),
        (2.5, vec![2], vec![(0.6, -0.4)]),
        (1.0, vec![0, 3], vec![(0.5, 0.2), (-0.4, 0.3)]),
    ] {
        let osc = build(omega, 16, &modes).unwrap();
        let psi = osc.coherent_state(&alphas).unwrap();
        let period = 2.0 * std::f64::consts::PI / omega;
        let times: Vec<f64> = (0..=100).map(|i| 2.0 * period * i as f64 / 100.0).collect();
        let tr = evolve_expectations(&osc, &psi, &times).unwrap();
        assert!(tr.ehrenfest_residual <= 1e-6, "{}", tr.ehrenfest_residual);
        assert!(tr.energy_drift <= 1e-8);
        let q = &tr.trace.expectations;
        assert!(q[50][0].max_abs_diff(q[0][0]) <= 1e-6);
    }
}
