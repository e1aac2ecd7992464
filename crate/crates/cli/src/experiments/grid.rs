use qqm_core::dynamics::{
    check_ccr, heisenberg_rhs, momentum_grid_check, momentum_richardson, plane_wave_check, GridSpec,
};
use qqm_core::hspace::{HMatrix, HVector};
use qqm_core::quat::random_quaternion;
use qqm_core::Quaternion;
use rand::Rng;

use super::{rng_for, Outcome};
use crate::config::ResolvedConfig;
use crate::error::CliResult;
use crate::report::{MaxDev, Record};

const BOX_LENGTH: f64 = 16.0;
const MASS: f64 = 1.7;

pub fn run(cfg: &ResolvedConfig) -> CliResult<Outcome> {
    let mut rng = rng_for(cfg);
    let iota = cfg.iota();
    let mut ratio_exact = MaxDev::default();
    let mut ratio_stencil = MaxDev::default();
    let mut identity = MaxDev::default();
    let mut constant = MaxDev::default();
    let mut wave_discrete = MaxDev::default();
    let mut wave_continuum = MaxDev::default();
    let mut ccr = MaxDev::default();
    let mut ccr_full = f64::INFINITY;
    let mut velocity = MaxDev::default();

    for &n in &cfg.dims {
        let grid = GridSpec::centered(n, BOX_LENGTH / (n - 1) as f64)?;
        for _ in 0..cfg.trials {
            let amp = random_quaternion(&mut rng, true);
            let width: f64 = rng.random_range(0.8..1.0);
            let f = move |x: f64| amp * (-0.5 * (x / width).powi(2)).exp();
            let df = move |x: f64| f(x) * (-x / (width * width));
            let exact = momentum_richardson(&grid, iota, f, Some(&df))?;
            ratio_exact.push((exact.ratio - 4.0).abs());
            let stencil = momentum_richardson(&grid, iota, f, None)?;
            ratio_stencil.push((stencil.ratio - 4.0).abs());
            identity.push(exact.coarse.identity_residual.max(exact.fine.identity_residual));

            let k: f64 = rng.random_range(0.5..2.0);
            let wave = plane_wave_check(&grid, iota, k)?;
            wave_discrete.push(wave.discrete_residual);
            // Leading truncation error of the central difference is k³h²/6.
            wave_continuum.push(wave.deviation / (k.powi(3) * grid.spacing.powi(2) / 6.0));
        }

        let c = random_quaternion(&mut rng, false);
        let psi = HVector::new((0..n).map(|i| if (2..n - 2).contains(&i) { c } else { Quaternion::ZERO }).collect())?;
        constant.push(momentum_grid_check(&grid, iota, &psi, None)?.deviation);

        let r = check_ccr(&grid.canonical_pair(iota)?);
        ccr.push(r.qp_deviation.max(r.qq).max(r.pp));
        ccr_full = ccr_full.min(r.qp_full);

        // ι[H, Q] = P/m on affine states, rows clear of the P² stencil.
        let q = grid.position();
        let p = grid.momentum(iota);
        let h = (&p * &p).scale(0.5 / MASS);
        let dq = heisenberg_rhs(&q, &h, iota, &HMatrix::zeros(n, n))?;
        let v = p.scale(1.0 / MASS);
        for probe in grid.affine_probes() {
            let lhs = &dq * &probe;
            let rhs = &v * &probe;
            for i in 2..n - 2 {
                velocity.push((lhs[i] - rhs[i]).norm());
            }
        }
    }

    let records = vec![
        Record::upper("richardson_exact_ratio", ratio_exact.get(), cfg.tolerance("richardson_ratio", 0.4)),
        Record::upper("richardson_stencil_ratio", ratio_stencil.get(), cfg.tolerance("richardson_ratio", 0.4)),
        Record::upper("momentum_identity", identity.get(), cfg.tolerance("momentum_identity", 1e-12)),
        Record::upper("constant_interior", constant.get(), cfg.tolerance("constant_interior", 1e-10)),
        Record::upper("plane_wave_discrete", wave_discrete.get(), cfg.tolerance("plane_wave_discrete", 1e-12)),
        Record::upper("plane_wave_continuum_scaled", wave_continuum.get(), cfg.tolerance("plane_wave_continuum_scaled", 1.01)),
        Record::upper("grid_ccr_affine", ccr.get(), cfg.tolerance("grid_ccr_affine", 1e-8)),
        Record::lower("grid_ccr_full_matrix", ccr_full, cfg.tolerance("grid_ccr_full_matrix", 0.5)),
        Record::upper("grid_velocity", velocity.get(), cfg.tolerance("grid_velocity", 1e-6)),
    ];
    Ok(Outcome { records, traces: Vec::new() })
}
