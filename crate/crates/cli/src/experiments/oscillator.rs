use qqm_core::hspace::eig_hermitian;
use qqm_core::oscillator::{check_oscillator_ccr, evolve_expectations, FockOscillator, OscillatorSpec};
use rand::Rng;

use super::{rng_for, Outcome, Trace};
use crate::config::ResolvedConfig;
use crate::error::CliResult;
use crate::report::{MaxDev, Record};

const TIME_SAMPLES: usize = 200;

pub fn run(cfg: &ResolvedConfig) -> CliResult<Outcome> {
    let mut rng = rng_for(cfg);
    let truncations = match cfg.truncation {
        Some(n) => vec![n],
        None => cfg.dims.clone(),
    };
    let build = |n: usize, modes: &[usize]| {
        FockOscillator::build(OscillatorSpec {
            omega: cfg.omega,
            truncation: n,
            modes: modes.to_vec(),
            iota: cfg.iota(),
            allow_many_modes: false,
        })
    };

    let mut ccr = MaxDev::default();
    let mut hermitian = MaxDev::default();
    let mut spectrum = MaxDev::default();
    let mut edge_min = f64::INFINITY;
    let mut records = Vec::new();
    for &n in &truncations {
        let mut per_n = MaxDev::default();
        for modes in &cfg.modes {
            let osc = build(n, modes)?;
            let r = check_oscillator_ccr(&osc)?;
            per_n.push(r.interior_max());
            hermitian.push(r.hermitian_qp);
            edge_min = edge_min.min(r.full_space);
            let values = eig_hermitian(osc.hamiltonian())?.values;
            for (got, want) in values.iter().zip(osc.exact_spectrum()) {
                spectrum.push((got - want).abs());
            }
        }
        records.push(Record::upper(format!("ccr_interior_n{n}"), per_n.get(), cfg.tolerance("ccr_interior", 1e-10)));
        ccr.push(per_n.get());
    }
    records.push(Record::upper("ccr_interior", ccr.get(), cfg.tolerance("ccr_interior", 1e-10)));
    records.push(Record::upper("ccr_hermitian_pair", hermitian.get(), cfg.tolerance("ccr_hermitian_pair", 1e-10)));
    // The truncation edge must break the relations by an O(1) amount.
    records.push(Record::lower("ccr_full_space", edge_min, cfg.tolerance("ccr_full_space", 1.0)));
    records.push(Record::upper("spectrum", spectrum.get(), cfg.tolerance("spectrum", 1e-9)));

    // Coherent states over two periods at the largest truncation.
    let n = *truncations.iter().max().expect("nonempty");
    let period = 2.0 * std::f64::consts::PI / cfg.omega;
    let times: Vec<f64> = (0..=TIME_SAMPLES).map(|i| 2.0 * period * i as f64 / TIME_SAMPLES as f64).collect();
    let mut ehrenfest = MaxDev::default();
    let mut energy = MaxDev::default();
    let mut traces = Vec::new();
    for modes in &cfg.modes {
        let osc = build(n, modes)?;
        let alphas: Vec<(f64, f64)> = modes
            .iter()
            .map(|_| {
                let r = rng.random_range(0.3..1.0);
                let phi = rng.random_range(0.0..2.0 * std::f64::consts::PI);
                (r * phi.cos(), r * phi.sin())
            })
            .collect();
        let psi = osc.coherent_state(&alphas)?;
        let tr = evolve_expectations(&osc, &psi, &times)?;
        ehrenfest.push(tr.ehrenfest_residual);
        energy.push(tr.energy_drift);
        if traces.is_empty() {
            traces.push(Trace { file: "oscillator_trace.csv".into(), csv: tr.trace.to_csv() });
        }
    }
    records.push(Record::upper("ehrenfest", ehrenfest.get(), cfg.tolerance("ehrenfest", 1e-6)));
    records.push(Record::upper("energy_drift", energy.get(), cfg.tolerance("energy_drift", 1e-8)));
    Ok(Outcome { records, traces })
}
