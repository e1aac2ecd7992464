//! One module per experiment kind. Each returns its records and any trace
//! CSVs; writing files is left to the caller.

mod algebra;
mod evolution;
mod grid;
mod measurement;
mod oscillator;

use qqm_core::hspace::HMatrix;
use qqm_core::measurement::{BasisLabel, MeasurementSymbol, TransformationTable};
use qqm_core::quat::random_quaternion;
use qqm_core::random::random_unitary;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ExperimentKind, ResolvedConfig};
use crate::error::CliResult;
use crate::report::Record;

/// A CSV written next to `report.json`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub file: String,
    pub csv: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub records: Vec<Record>,
    pub traces: Vec<Trace>,
}

pub fn execute(cfg: &ResolvedConfig) -> CliResult<Outcome> {
    match cfg.experiment {
        ExperimentKind::AlgebraLaws => algebra::run(cfg),
        ExperimentKind::MeasurementInvariants => measurement::invariants(cfg),
        ExperimentKind::GaugeSweep => measurement::gauge_sweep(cfg),
        ExperimentKind::DegreeConstraint => measurement::degree_constraint(cfg),
        ExperimentKind::Evolution => evolution::run(cfg),
        ExperimentKind::Oscillator => oscillator::run(cfg),
        ExperimentKind::GridMomentum => grid::run(cfg),
    }
}

pub(crate) fn rng_for(cfg: &ResolvedConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

/// Dimension used by trial `k`, cycling through `cfg.dims`.
pub(crate) fn dim_for(cfg: &ResolvedConfig, k: usize) -> usize {
    cfg.dims[k % cfg.dims.len()]
}

pub(crate) fn label(id: &str, n: usize) -> BasisLabel {
    BasisLabel::new(id, n).expect("positive size")
}

pub(crate) fn random_symbol<R: Rng>(rng: &mut R, out: &BasisLabel, inn: &BasisLabel) -> MeasurementSymbol {
    let q = random_quaternion(rng, false);
    let a = rng.random_range(0..out.size);
    let b = rng.random_range(0..inn.size);
    MeasurementSymbol::new(out.clone(), a, inn.clone(), b, q).expect("indices drawn in range")
}

/// Several bases of one size, each given by a unitary whose columns are its
/// kets in a common reference frame. Tables and symbol operators are both
/// read off these matrices, so products can be checked against plain
/// matrix multiplication.
pub(crate) struct Frame {
    pub labels: Vec<BasisLabel>,
    kets: Vec<HMatrix>,
}

impl Frame {
    pub fn random<R: Rng>(rng: &mut R, ids: &[&str], n: usize) -> Self {
        let labels = ids.iter().map(|id| label(id, n)).collect();
        let kets = ids.iter().map(|_| random_unitary(rng, n)).collect();
        Frame { labels, kets }
    }

    fn index(&self, b: &BasisLabel) -> usize {
        self.labels.iter().position(|l| l == b).expect("basis belongs to frame")
    }

    /// `⟨a|b⟩` for `a` in basis `i` and `b` in basis `j`.
    pub fn table(&self, i: usize, j: usize) -> CliResult<TransformationTable> {
        if i == j {
            return Ok(TransformationTable::identity(&self.labels[i]));
        }
        let m = &self.kets[i].adjoint() * &self.kets[j];
        Ok(TransformationTable::from_matrix(self.labels[i].clone(), self.labels[j].clone(), m)?)
    }

    /// `|a⟩q⟨b|` in the reference frame.
    pub fn operator(&self, s: &MeasurementSymbol) -> HMatrix {
        let ket = self.kets[self.index(s.out_basis())].column(s.out_state());
        let bra = self.kets[self.index(s.in_basis())].column(s.in_state());
        let q = s.weight();
        HMatrix::from_fn(ket.len(), bra.len(), |i, j| ket[i] * q * bra[j].conj())
    }
}

/// Magnitude used to make weight errors relative.
pub(crate) fn scale_of(weights: &[qqm_core::Quaternion]) -> f64 {
    weights.iter().map(|w| w.norm()).product::<f64>().max(1.0)
}
