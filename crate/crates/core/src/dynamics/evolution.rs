use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::iota::IotaSpec;
use crate::error::{Error, Result};
use crate::hspace::{inner, AntiHermitianExp, ComplexEmbedding, HMatrix, HVector, HERMITIAN_TOLERANCE};
use crate::quat::Quaternion;

/// Norm drift budget for [`evolve`].
pub const NORM_TOLERANCE: f64 = 1e-9;

/// `U(t) = exp(−ιHt)`, diagonalized once and reused for any `t`.
#[derive(Clone, Debug)]
pub struct Propagator {
    h: HMatrix,
    iota: IotaSpec,
    exp: AntiHermitianExp,
}

impl Propagator {
    pub fn new(h: &HMatrix, iota: IotaSpec) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::DimensionMismatch {
                expected: "square".into(),
                found: crate::error::dims(h.rows(), h.cols()),
            });
        }
        let residual = h.hermitian_residual();
        if !(residual <= HERMITIAN_TOLERANCE) {
            return Err(Error::NotHermitian { residual });
        }
        iota.check_superselection(h)?;
        let generator = iota.apply(h).scale(-1.0);
        Ok(Propagator { h: h.clone(), iota, exp: AntiHermitianExp::new(&generator)? })
    }

    pub fn hamiltonian(&self) -> &HMatrix {
        &self.h
    }

    pub fn iota(&self) -> IotaSpec {
        self.iota
    }

    pub fn matrix(&self, t: f64) -> Result<HMatrix> {
        self.exp.at(t)
    }

    pub fn apply(&self, t: f64, psi: &HVector) -> Result<HVector> {
        self.exp.apply(t, psi)
    }
}

/// A state ket at time `t` under a fixed Hamiltonian.
#[derive(Clone, Debug)]
pub struct EvolutionState {
    pub psi: HVector,
    pub t: f64,
    pub h: HMatrix,
    pub iota: IotaSpec,
}

impl EvolutionState {
    pub fn new(psi: HVector, t: f64, h: HMatrix, iota: IotaSpec) -> Result<Self> {
        if psi.len() != h.rows() || !h.is_square() {
            return Err(Error::DimensionMismatch {
                expected: crate::error::dims(psi.len(), psi.len()),
                found: crate::error::dims(h.rows(), h.cols()),
            });
        }
        Ok(EvolutionState { psi, t, h, iota })
    }

    /// `⟨ψ|ψ⟩`, which is real.
    pub fn norm_sqr(&self) -> f64 {
        self.psi.norm_sqr()
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn energy(&self) -> Quaternion {
        self.h.expectation(&self.psi).expect("shape checked at construction")
    }
}

/// `ψ(t_final) = exp(−ιH(t_final − t))·ψ(t)`.
pub fn evolve(state: &EvolutionState, t_final: f64) -> Result<EvolutionState> {
    let prop = Propagator::new(&state.h, state.iota)?;
    let psi = prop.apply(t_final - state.t, &state.psi)?;
    Ok(EvolutionState { psi, t: t_final, ..state.clone() })
}

/// Per-time samples of norm, energy and observable expectations.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EvolutionTrace {
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
    pub energies: Vec<f64>,
    pub observable_names: Vec<String>,
    /// `expectations[k][j]` is `⟨ψ(tₖ)|Oⱼ|ψ(tₖ)⟩`.
    pub expectations: Vec<Vec<Quaternion>>,
}

impl EvolutionTrace {
    /// Samples `state` at each time in `times` using one shared propagator.
    pub fn record(
        state: &EvolutionState,
        times: &[f64],
        observables: &[(String, HMatrix)],
    ) -> Result<EvolutionTrace> {
        let prop = Propagator::new(&state.h, state.iota)?;
        let mut trace = EvolutionTrace {
            observable_names: observables.iter().map(|(n, _)| n.clone()).collect(),
            ..Default::default()
        };
        for &t in times {
            let psi = prop.apply(t - state.t, &state.psi)?;
            trace.times.push(t);
            trace.norms.push(inner(&psi, &psi)?.w);
            trace.energies.push(state.h.expectation(&psi)?.w);
            let row = observables.iter().map(|(_, o)| o.expectation(&psi)).collect::<Result<Vec<_>>>()?;
            trace.expectations.push(row);
        }
        Ok(trace)
    }

    pub fn max_norm_drift(&self, reference: f64) -> f64 {
        self.norms.iter().map(|n| (n - reference).abs()).fold(0.0, f64::max)
    }

    pub fn max_energy_drift(&self) -> f64 {
        let Some(&e0) = self.energies.first() else { return 0.0 };
        self.energies.iter().map(|e| (e - e0).abs()).fold(0.0, f64::max)
    }

    /// Columns `t, norm, energy`, then `<name>_w.._z` per observable.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,norm,energy");
        for name in &self.observable_names {
            for c in ["w", "x", "y", "z"] {
                let _ = write!(out, ",{name}_{c}");
            }
        }
        out.push('\n');
        for k in 0..self.times.len() {
            let _ = write!(out, "{:.16e},{:.16e},{:.16e}", self.times[k], self.norms[k], self.energies[k]);
            for q in &self.expectations[k] {
                for v in q.to_array() {
                    let _ = write!(out, ",{v:.16e}");
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Norm drift `|‖ψ(t)‖² − ‖ψ‖²|` after exponentiating `−ιHt` directly,
/// with no superselection or Hermiticity check.
///
/// When `[ι, H] ≠ 0` the generator is not anti-Hermitian and the drift is
/// generically nonzero.
pub fn superselection_witness(h: &HMatrix, iota: IotaSpec, psi: &HVector, t: f64) -> Result<f64> {
    let generator = iota.apply(h).scale(-t);
    let u = ComplexEmbedding::embed(&generator).into_matrix().exp();
    let x = ComplexEmbedding::embed_vector(psi).into_matrix();
    let y = u * &x;
    // Both columns of the embedded ket carry the same norm.
    let before = x.column(0).norm_squared();
    let after = y.column(0).norm_squared();
    Ok((after - before).abs())
}
