//! The quaternionic harmonic oscillator `q = Σ qᵅe_α` on a truncated Fock
//! space, one bosonic mode per selected component `α`.
//!
//! Product states are indexed by `Σₖ nₖ·Nᵏ`, where `nₖ` is the occupation of
//! the `k`-th selected mode and `N` the truncation.

use serde::{Deserialize, Serialize};

use crate::dynamics::{check_ccr, CanonicalPair, EvolutionState, EvolutionTrace, Interior, IotaSpec};
use crate::error::{Error, Result};
use crate::hspace::{HMatrix, HVector};
use crate::quat::Quaternion;

pub const MIN_TRUNCATION: usize = 8;
/// Occupation weight allowed on the top two levels of any mode.
pub const EDGE_TOLERANCE: f64 = 1e-8;
/// Modes allowed without [`OscillatorSpec::allow_many_modes`].
pub const DEFAULT_MAX_MODES: usize = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OscillatorSpec {
    pub omega: f64,
    pub truncation: usize,
    /// Distinct components from `{0, 1, 2, 3}`.
    pub modes: Vec<usize>,
    #[serde(default)]
    pub iota: IotaSpec,
    /// Permits three or four modes (product dimension `N³` or `N⁴`).
    #[serde(default)]
    pub allow_many_modes: bool,
}

impl Default for OscillatorSpec {
    fn default() -> Self {
        OscillatorSpec { omega: 1.0, truncation: 12, modes: vec![0], iota: IotaSpec::default(), allow_many_modes: false }
    }
}

/// Per-mode `Qᵅ`, `Pᵅ` (unit mass) and `H = Σ ω(n_α + ½)`.
#[derive(Clone, Debug)]
pub struct FockOscillator {
    spec: OscillatorSpec,
    dim: usize,
    annihilation: Vec<HMatrix>,
    q: Vec<HMatrix>,
    p: Vec<HMatrix>,
    h: HMatrix,
}

fn occupation(index: usize, mode: usize, n: usize) -> usize {
    (index / n.pow(mode as u32)) % n
}

impl FockOscillator {
    pub fn build(spec: OscillatorSpec) -> Result<Self> {
        let OscillatorSpec { omega, truncation: n, ref modes, iota, allow_many_modes } = spec;
        if n < MIN_TRUNCATION {
            return Err(Error::TruncationTooSmall { truncation: n, minimum: MIN_TRUNCATION });
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidArgument(format!("omega must be positive, got {omega}")));
        }
        let mut sorted = modes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if modes.is_empty() || sorted.len() != modes.len() || sorted.iter().any(|&m| m > 3) {
            return Err(Error::InvalidArgument(format!("modes must be distinct values in 0..=3, got {modes:?}")));
        }
        if modes.len() > DEFAULT_MAX_MODES && !allow_many_modes {
            return Err(Error::InvalidArgument(format!(
                "{} modes requested; set allow_many_modes for more than {DEFAULT_MAX_MODES}",
                modes.len()
            )));
        }
        let k = modes.len();
        let dim = n.pow(k as u32);
        let stride = |m: usize| n.pow(m as u32);
        let annihilation: Vec<HMatrix> = (0..k)
            .map(|m| {
                HMatrix::from_fn(dim, dim, |i, j| {
                    let nj = occupation(j, m, n);
                    if nj > 0 && i + stride(m) == j {
                        Quaternion::real((nj as f64).sqrt())
                    } else {
                        Quaternion::ZERO
                    }
                })
            })
            .collect();
        let q_scale = 1.0 / (2.0 * omega).sqrt();
        let p_scale = (0.5 * omega).sqrt();
        let q = annihilation.iter().map(|a| (a + &a.adjoint()).scale(q_scale)).collect();
        let p = annihilation.iter().map(|a| iota.apply(&(&a.adjoint() - a)).scale(p_scale)).collect();
        let energies: Vec<Quaternion> = (0..dim)
            .map(|i| {
                let quanta: usize = (0..k).map(|m| occupation(i, m, n)).sum();
                Quaternion::real(omega * (quanta as f64 + 0.5 * k as f64))
            })
            .collect();
        Ok(FockOscillator { spec, dim, annihilation, q, p, h: HMatrix::diagonal(&energies) })
    }

    pub fn spec(&self) -> &OscillatorSpec {
        &self.spec
    }

    pub fn omega(&self) -> f64 {
        self.spec.omega
    }

    pub fn truncation(&self) -> usize {
        self.spec.truncation
    }

    pub fn iota(&self) -> IotaSpec {
        self.spec.iota
    }

    pub fn modes(&self) -> &[usize] {
        &self.spec.modes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn annihilation(&self) -> &[HMatrix] {
        &self.annihilation
    }

    pub fn q(&self) -> &[HMatrix] {
        &self.q
    }

    pub fn p(&self) -> &[HMatrix] {
        &self.p
    }

    pub fn hamiltonian(&self) -> &HMatrix {
        &self.h
    }

    /// Occupations of each selected mode in product state `index`.
    pub fn occupations(&self, index: usize) -> Vec<usize> {
        (0..self.spec.modes.len()).map(|m| occupation(index, m, self.spec.truncation)).collect()
    }

    /// States with every occupation below `N − 1`.
    pub fn interior(&self) -> Vec<usize> {
        let top = self.spec.truncation - 1;
        (0..self.dim).filter(|&i| self.occupations(i).iter().all(|&o| o < top)).collect()
    }

    /// Exact levels `ω(Σn_α + k/2)`, ascending.
    pub fn exact_spectrum(&self) -> Vec<f64> {
        let mut e: Vec<f64> = (0..self.dim).map(|i| self.h[(i, i)].w).collect();
        e.sort_by(f64::total_cmp);
        e
    }

    /// `qᵝ = (Qᵝ + ιPᵝ/ω)/√2`.
    pub fn coordinate(&self, m: usize) -> HMatrix {
        let ip = self.spec.iota.apply(&self.p[m]).scale(1.0 / self.spec.omega);
        (&self.q[m] + &ip).scale(std::f64::consts::FRAC_1_SQRT_2)
    }

    /// `q̇ᵝ = (Pᵝ − ιωQᵝ)/√2`.
    pub fn velocity(&self, m: usize) -> HMatrix {
        let iq = self.spec.iota.apply(&self.q[m]).scale(self.spec.omega);
        (&self.p[m] - &iq).scale(std::f64::consts::FRAC_1_SQRT_2)
    }

    /// `Q = Σ_α Qᵅe_α` and `Q̇ = Σ_α Pᵅe_α` over the selected modes.
    pub fn q_operator(&self) -> QOperator {
        let mut position = HMatrix::zeros(self.dim, self.dim);
        let mut velocity = HMatrix::zeros(self.dim, self.dim);
        for (k, &alpha) in self.spec.modes.iter().enumerate() {
            let unit = Quaternion::BASIS[alpha];
            position = &position + &self.q[k].scale_right(unit);
            velocity = &velocity + &self.p[k].scale_right(unit);
        }
        QOperator { position, velocity }
    }

    /// Normalized product of truncated coherent states,
    /// `cₙ ∝ e^{−|α|²/2} αⁿ/√n!`, with `α = re + im·η` per mode.
    pub fn coherent_state(&self, alphas: &[(f64, f64)]) -> Result<HVector> {
        let k = self.spec.modes.len();
        if alphas.len() != k {
            return Err(Error::DimensionMismatch { expected: k.to_string(), found: alphas.len().to_string() });
        }
        let n = self.spec.truncation;
        let eta = self.spec.iota.eta().get();
        let per_mode: Vec<Vec<Quaternion>> = alphas
            .iter()
            .map(|&(re, im)| {
                let alpha = Quaternion::real(re) + eta * im;
                let mut c = Vec::with_capacity(n);
                let mut term = Quaternion::real((-0.5 * alpha.norm_sqr()).exp());
                for level in 0..n {
                    c.push(term);
                    term = term * alpha * (1.0 / ((level + 1) as f64).sqrt());
                }
                c
            })
            .collect();
        let entries = (0..self.dim)
            .map(|i| self.occupations(i).iter().enumerate().map(|(m, &o)| per_mode[m][o]).fold(Quaternion::ONE, |a, b| a * b))
            .collect();
        HVector::new(entries)?.normalized()
    }

    pub fn ground_state(&self) -> HVector {
        HVector::basis(self.dim, 0)
    }

    /// Weight on states with any occupation `≥ N − 2`.
    pub fn edge_weight(&self, psi: &HVector) -> f64 {
        let cut = self.spec.truncation - 2;
        (0..self.dim)
            .filter(|&i| self.occupations(i).iter().any(|&o| o >= cut))
            .map(|i| psi[i].norm_sqr())
            .sum()
    }
}

/// Free-function form of [`FockOscillator::build`] with the default `ι`.
pub fn build(omega: f64, truncation: usize, mode_subset: &[usize]) -> Result<FockOscillator> {
    FockOscillator::build(OscillatorSpec { omega, truncation, modes: mode_subset.to_vec(), ..Default::default() })
}

/// The quaternion-valued position and velocity operators.
#[derive(Clone, Debug)]
pub struct QOperator {
    pub position: HMatrix,
    pub velocity: HMatrix,
}

impl QOperator {
    /// `max |Q† − (Q⁰ − Σᵢ Qⁱeᵢ)|` given the component list of `osc`.
    pub fn adjoint_residual(&self, osc: &FockOscillator) -> f64 {
        let mut expected = HMatrix::zeros(osc.dim, osc.dim);
        for (k, &alpha) in osc.spec.modes.iter().enumerate() {
            expected = &expected + &osc.q[k].scale_right(Quaternion::BASIS[alpha].conj());
        }
        self.position.adjoint().max_abs_diff(&expected)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OscillatorCcrReport {
    /// `max ‖[qᵝ, q̇_α]‖` on the interior.
    pub q_qdot: f64,
    /// `max ‖[qᵝ†, q̇_α†]‖`.
    pub qdag_qdotdag: f64,
    /// `max ‖[qᵝ†, q̇_α] − ιδ‖`.
    pub qdag_qdot: f64,
    /// `max ‖[qᵝ, q̇_α†] − ιδ‖`.
    pub q_qdotdag: f64,
    /// `max ‖[Qᵝ, Pᵅ] − ιδ‖` for the Hermitian components.
    pub hermitian_qp: f64,
    /// Largest of the above over the full truncated space.
    pub full_space: f64,
}

impl OscillatorCcrReport {
    pub fn interior_max(&self) -> f64 {
        self.q_qdot.max(self.qdag_qdotdag).max(self.qdag_qdot).max(self.q_qdotdag).max(self.hermitian_qp)
    }
}

/// Evaluates the four relations between `qᵝ`, `q̇_α` and their adjoints on
/// the interior, plus the Hermitian `[Qᵝ, Pᵅ] = ιδ`.
pub fn check_oscillator_ccr(osc: &FockOscillator) -> Result<OscillatorCcrReport> {
    let k = osc.spec.modes.len();
    let iota = osc.spec.iota.operator(osc.dim);
    let zero = HMatrix::zeros(osc.dim, osc.dim);
    let interior = osc.interior();
    let coords: Vec<HMatrix> = (0..k).map(|m| osc.coordinate(m)).collect();
    let vels: Vec<HMatrix> = (0..k).map(|m| osc.velocity(m)).collect();
    let mut report = OscillatorCcrReport::default();
    for b in 0..k {
        let qb = &coords[b];
        let qb_dag = qb.adjoint();
        for a in 0..k {
            let v = &vels[a];
            let v_dag = v.adjoint();
            let delta = if a == b { &iota } else { &zero };
            let checks = [
                (qb.commutator(v)?, &zero, &mut report.q_qdot),
                (qb_dag.commutator(&v_dag)?, &zero, &mut report.qdag_qdotdag),
                (qb_dag.commutator(v)?, delta, &mut report.qdag_qdot),
                (qb.commutator(&v_dag)?, delta, &mut report.q_qdotdag),
            ];
            for (c, target, slot) in checks {
                let defect = &c - target;
                *slot = slot.max(defect.submatrix(&interior, &interior).max_abs());
                report.full_space = report.full_space.max(defect.max_abs());
            }
        }
    }
    let pair = CanonicalPair::new(osc.q.clone(), osc.p.clone(), osc.spec.iota, Interior::Indices(interior))?;
    let hermitian = check_ccr(&pair);
    report.hermitian_qp = hermitian.qp_deviation.max(hermitian.qq).max(hermitian.pp);
    report.full_space = report.full_space.max(hermitian.qp_full);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OscillatorTrace {
    /// Observables `Q<α>` then `P<α>` per selected mode.
    pub trace: EvolutionTrace,
    /// `max |⟨Qᵅ⟩(t) − ⟨Qᵅ⟩(0)cos ωt − ⟨Pᵅ⟩(0)sin(ωt)/ω|`.
    pub ehrenfest_residual: f64,
    /// `max |⟨H⟩(t) − ⟨H⟩(0)|`.
    pub energy_drift: f64,
}

/// Evolves `psi0` under `H` and compares `⟨Qᵅ⟩(t)` with the classical
/// trajectory.
pub fn evolve_expectations(osc: &FockOscillator, psi0: &HVector, t_grid: &[f64]) -> Result<OscillatorTrace> {
    if psi0.len() != osc.dim {
        return Err(Error::DimensionMismatch { expected: osc.dim.to_string(), found: psi0.len().to_string() });
    }
    let norm = psi0.norm_sqr();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidArgument(format!("initial state must be normalized, |psi|^2 = {norm}")));
    }
    let weight = osc.edge_weight(psi0);
    if weight > EDGE_TOLERANCE {
        return Err(Error::EdgeSupport { weight });
    }
    let k = osc.spec.modes.len();
    let mut observables = Vec::with_capacity(2 * k);
    for (m, &alpha) in osc.spec.modes.iter().enumerate() {
        observables.push((format!("Q{alpha}"), osc.q[m].clone()));
    }
    for (m, &alpha) in osc.spec.modes.iter().enumerate() {
        observables.push((format!("P{alpha}"), osc.p[m].clone()));
    }
    let state = EvolutionState::new(psi0.clone(), 0.0, osc.h.clone(), osc.spec.iota)?;
    let trace = EvolutionTrace::record(&state, t_grid, &observables)?;
    let omega = osc.spec.omega;
    let q0: Vec<Quaternion> = (0..k).map(|m| osc.q[m].expectation(psi0)).collect::<Result<_>>()?;
    let p0: Vec<Quaternion> = (0..k).map(|m| osc.p[m].expectation(psi0)).collect::<Result<_>>()?;
    let mut ehrenfest_residual: f64 = 0.0;
    for (t, row) in trace.times.iter().zip(&trace.expectations) {
        let (s, c) = (omega * t).sin_cos();
        for m in 0..k {
            let classical = q0[m] * c + p0[m] * (s / omega);
            ehrenfest_residual = ehrenfest_residual.max(row[m].max_abs_diff(classical));
        }
    }
    let energy_drift = trace.max_energy_drift();
    Ok(OscillatorTrace { trace, ehrenfest_residual, energy_drift })
}
