use qqm_core::dynamics::{
    evolve, heisenberg_rhs, superselection_witness, EvolutionState, EvolutionTrace, Generator, IotaSpec, Propagator,
};
use qqm_core::hspace::{eig_hermitian, HMatrix, HVector};
use qqm_core::quat::random_pure_unit;
use qqm_core::random::{random_hermitian, random_hermitian_commuting, random_in_subring, random_unit_hvector};
use qqm_core::Error;
use rand::Rng;

use super::{dim_for, rng_for, Outcome, Trace};
use crate::config::ResolvedConfig;
use crate::error::CliResult;
use crate::reference::{from_complex, to_complex, CMatrix};
use crate::report::{MaxDev, Record};

const FD_STEP: f64 = 1e-5;
const GENERATOR_SIZE: f64 = 1e-4;

fn spectral_norm(h: &HMatrix) -> CliResult<f64> {
    Ok(eig_hermitian(h)?.values.iter().fold(0.0, |m: f64, v| m.max(v.abs())))
}

pub fn run(cfg: &ResolvedConfig) -> CliResult<Outcome> {
    let mut rng = rng_for(cfg);
    let iota = cfg.iota();
    let mut records = Vec::new();

    let mut iota_adjoint = MaxDev::default();
    let mut iota_unitary = MaxDev::default();
    for &n in &cfg.dims {
        let op = iota.operator(n);
        iota_adjoint.push((&op.adjoint() + &op).max_abs());
        iota_unitary.push((&op.adjoint() * &op).max_abs_diff(&HMatrix::identity(n)));
    }
    records.push(Record::upper("iota_anti_hermitian", iota_adjoint.get(), cfg.tolerance("iota_anti_hermitian", 0.0)));
    records.push(Record::upper("iota_unitary", iota_unitary.get(), cfg.tolerance("iota_unitary", 0.0)));

    let mut gen_antiherm = MaxDev::default();
    let mut gen_defect = MaxDev::default();
    let mut fd = MaxDev::default();
    for k in 0..cfg.trials {
        let n = dim_for(cfg, k);
        let dw = random_hermitian_commuting(&mut rng, n, iota.eta());
        let dw = dw.scale(GENERATOR_SIZE / dw.frobenius_norm());
        let g = Generator::new(dw, iota)?;
        gen_antiherm.push(g.g().antihermitian_residual());
        gen_defect.push(g.first_order_unitarity_defect());

        // Symmetric difference of U(t)†AU(t) at t = ±dt.
        let h = random_hermitian_commuting(&mut rng, n, iota.eta());
        let h = h.scale(1.0 / h.frobenius_norm());
        let a = random_hermitian_commuting(&mut rng, n, iota.eta());
        let a = a.scale(1.0 / a.frobenius_norm());
        let prop = Propagator::new(&h, iota)?;
        let heis = |t: f64| -> CliResult<HMatrix> {
            let u = prop.matrix(t)?;
            Ok(&(&u.adjoint() * &a) * &u)
        };
        let diff = (&heis(FD_STEP)? - &heis(-FD_STEP)?).scale(0.5 / FD_STEP);
        let rhs = heisenberg_rhs(&a, &h, iota, &HMatrix::zeros(n, n))?;
        fd.push(diff.max_abs_diff(&rhs));
    }
    records.push(Record::upper("generator_anti_hermitian", gen_antiherm.get(), cfg.tolerance("generator_anti_hermitian", 1e-12)));
    records.push(Record::upper("generator_first_order_unitarity", gen_defect.get(), cfg.tolerance("generator_first_order_unitarity", 1e-7)));
    records.push(Record::upper("heisenberg_finite_difference", fd.get(), cfg.tolerance("heisenberg_finite_difference", 1e-8)));

    // Norm, energy, group law and reversibility over random (H, η) pairs.
    let mut norm = MaxDev::default();
    let mut energy = MaxDev::default();
    let mut group = MaxDev::default();
    let mut reverse = MaxDev::default();
    let mut trace = None;
    for k in 0..cfg.trials {
        let n = dim_for(cfg, k);
        let eta = random_pure_unit(&mut rng);
        let sweep_iota = IotaSpec::new(eta)?;
        let psi = random_unit_hvector(&mut rng, n);
        if cfg.violate_superselection {
            let h = random_hermitian(&mut rng, n);
            let t = 100.0 / spectral_norm(&h)?;
            norm.push(superselection_witness(&h, sweep_iota, &psi, t)?);
            continue;
        }
        let h = random_hermitian_commuting(&mut rng, n, eta);
        let t_max = 100.0 / spectral_norm(&h)?;
        let s0 = EvolutionState::new(psi.clone(), 0.0, h.clone(), sweep_iota)?;
        let e0 = s0.energy().w;
        let times: Vec<f64> = (0..=20).map(|i| t_max * i as f64 / 20.0).collect();
        let tr = EvolutionTrace::record(&s0, &times, &[("H".to_string(), h)])?;
        norm.push(tr.max_norm_drift(1.0));
        energy.push(tr.max_energy_drift() / e0.abs().max(1.0));
        let (t1, t2) = (0.37 * t_max, 0.41 * t_max);
        let two_step = evolve(&evolve(&s0, t1)?, t1 + t2)?;
        let one_step = evolve(&s0, t1 + t2)?;
        group.push(two_step.psi.max_abs_diff(&one_step.psi));
        reverse.push(evolve(&one_step, 0.0)?.psi.max_abs_diff(&psi));
        if trace.is_none() {
            trace = Some(tr.to_csv());
        }
    }
    let drift_tol = 1e-9;
    records.push(Record::upper("norm_drift", norm.get(), cfg.tolerance("norm_drift", drift_tol)));
    if !cfg.violate_superselection {
        records.push(Record::upper("energy_drift", energy.get(), cfg.tolerance("energy_drift", drift_tol)));
        records.push(Record::upper("group_law", group.get(), cfg.tolerance("group_law", drift_tol)));
        records.push(Record::upper("reversibility", reverse.get(), cfg.tolerance("reversibility", drift_tol)));
    }

    records.push(Record::upper(
        "complex_subring_reference",
        complex_reference(&mut rng, cfg, iota)?,
        cfg.tolerance("complex_subring_reference", 1e-10),
    ));

    // Outside the commutant: the unchecked exponential drifts and every
    // checked entry point refuses.
    let mut witness_min = f64::INFINITY;
    let mut rejects = true;
    for &n in &cfg.dims {
        let n = n.max(2);
        let h = random_hermitian(&mut rng, n);
        let psi = random_unit_hvector(&mut rng, n);
        let w = superselection_witness(&h, iota, &psi, 1.0)?;
        witness_min = if w.is_nan() { f64::NAN } else { witness_min.min(w) };
        let state = EvolutionState::new(psi, 0.0, h.clone(), iota)?;
        rejects &= matches!(evolve(&state, 1.0), Err(Error::SuperselectionViolated { .. }));
        rejects &= matches!(Propagator::new(&h, iota), Err(Error::SuperselectionViolated { .. }));
        rejects &= matches!(
            heisenberg_rhs(&h, &h, iota, &HMatrix::zeros(n, n)),
            Err(Error::SuperselectionViolated { .. })
        );
    }
    records.push(Record::lower("superselection_witness_drift", witness_min, cfg.tolerance("superselection_witness_drift", 1e-6)));
    records.push(Record::flag("superselection_rejected", rejects));

    let traces = trace.map(|csv| Trace { file: "evolution_trace.csv".into(), csv }).into_iter().collect();
    Ok(Outcome { records, traces })
}

/// Evolves `H, ψ` with entries in `span{1, η}` and compares against a plain
/// complex exponential under `η ↦ i`.
fn complex_reference<R: Rng>(rng: &mut R, cfg: &ResolvedConfig, iota: IotaSpec) -> CliResult<f64> {
    let eta = iota.eta();
    let e = eta.get();
    let mut worst = MaxDev::default();
    for k in 0..cfg.trials.min(cfg.dims.len() * 4) {
        let n = dim_for(cfg, k);
        let h = random_hermitian_commuting(rng, n, eta);
        let psi = HVector::new((0..n).map(|_| random_in_subring(rng, eta)).collect())?.normalized()?;
        let t: f64 = rng.random_range(0.1..5.0);
        let out = evolve(&EvolutionState::new(psi.clone(), 0.0, h.clone(), iota)?, t)?;
        let hc = CMatrix::from_fn(n, |i, j| to_complex(h[(i, j)], e));
        let psic: Vec<_> = (0..n).map(|i| to_complex(psi[i], e)).collect();
        let reference = hc.scale(num_complex::Complex64::new(0.0, -t)).expm().apply(&psic);
        for i in 0..n {
            worst.push(out.psi[i].max_abs_diff(from_complex(reference[i], e)));
        }
    }
    Ok(worst.get())
}
