use serde::{Deserialize, Serialize};

use super::iota::IotaSpec;
use crate::error::{Error, Result};
use crate::hspace::{HMatrix, HVector};

/// Where the relation `[Qˢ, Pᵣ] = ιδˢᵣ` is required to hold.
#[derive(Clone, Debug, PartialEq)]
pub enum Interior {
    Full,
    /// Compress onto the span of these basis vectors.
    Indices(Vec<usize>),
    /// Apply to each probe state and compare on the listed rows only.
    Probes { states: Vec<HVector>, rows: Vec<usize> },
}

/// Position and momentum component lists sharing one `ι`.
#[derive(Clone, Debug)]
pub struct CanonicalPair {
    q: Vec<HMatrix>,
    p: Vec<HMatrix>,
    iota: IotaSpec,
    interior: Interior,
}

impl CanonicalPair {
    /// Checks shapes and `[Q, ι] = [P, ι] = 0`.
    pub fn new(q: Vec<HMatrix>, p: Vec<HMatrix>, iota: IotaSpec, interior: Interior) -> Result<Self> {
        let n = q.first().map(HMatrix::rows).ok_or_else(|| Error::InvalidArgument("empty position list".into()))?;
        if q.len() != p.len() {
            return Err(Error::DimensionMismatch { expected: q.len().to_string(), found: p.len().to_string() });
        }
        for m in q.iter().chain(&p) {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: crate::error::dims(n, n),
                    found: crate::error::dims(m.rows(), m.cols()),
                });
            }
            iota.check_superselection(m)?;
        }
        let bad_index = match &interior {
            Interior::Full => None,
            Interior::Indices(ix) => ix.iter().find(|&&i| i >= n),
            Interior::Probes { states, rows } => {
                if let Some(s) = states.iter().find(|s| s.len() != n) {
                    return Err(Error::DimensionMismatch { expected: n.to_string(), found: s.len().to_string() });
                }
                rows.iter().find(|&&i| i >= n)
            }
        };
        if let Some(i) = bad_index {
            return Err(Error::InvalidArgument(format!("interior index {i} outside dimension {n}")));
        }
        Ok(CanonicalPair { q, p, iota, interior })
    }

    pub fn q(&self) -> &[HMatrix] {
        &self.q
    }

    pub fn p(&self) -> &[HMatrix] {
        &self.p
    }

    pub fn iota(&self) -> IotaSpec {
        self.iota
    }

    pub fn interior(&self) -> &Interior {
        &self.interior
    }

    pub fn dim(&self) -> usize {
        self.q[0].rows()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CcrReport {
    /// `max ‖[Qˢ, Qʳ]‖`.
    pub qq: f64,
    /// `max ‖[Pₛ, Pᵣ]‖`.
    pub pp: f64,
    /// `max ‖[Qˢ, Pᵣ] − ιδˢᵣ‖` on the interior.
    pub qp_deviation: f64,
    /// The same deviation over the whole space.
    pub qp_full: f64,
}

fn deviation_on(m: &HMatrix, interior: &Interior) -> f64 {
    match interior {
        Interior::Full => m.max_abs(),
        Interior::Indices(ix) => m.submatrix(ix, ix).max_abs(),
        Interior::Probes { states, rows } => states
            .iter()
            .map(|s| {
                let v = m * s;
                rows.iter().map(|&i| v[i].norm()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max),
    }
}

fn max_pairwise(ms: &[HMatrix]) -> f64 {
    let mut out: f64 = 0.0;
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            out = out.max((&(a * b) - &(b * a)).max_abs());
        }
    }
    out
}

pub fn check_ccr(pair: &CanonicalPair) -> CcrReport {
    let n = pair.dim();
    let iota = pair.iota.operator(n);
    let zero = HMatrix::zeros(n, n);
    let mut qp_deviation: f64 = 0.0;
    let mut qp_full: f64 = 0.0;
    for (s, q) in pair.q.iter().enumerate() {
        for (r, p) in pair.p.iter().enumerate() {
            let target = if s == r { &iota } else { &zero };
            let defect = &(&(q * p) - &(p * q)) - target;
            qp_deviation = qp_deviation.max(deviation_on(&defect, &pair.interior));
            qp_full = qp_full.max(defect.max_abs());
        }
    }
    CcrReport { qq: max_pairwise(&pair.q), pp: max_pairwise(&pair.p), qp_deviation, qp_full }
}

/// `dA/dt = ι[H, A] + ∂A/∂t`, the Heisenberg-picture derivative of
/// `U(t)†AU(t)` with `U(t) = exp(−ιHt)`.
pub fn heisenberg_rhs(a: &HMatrix, h: &HMatrix, iota: IotaSpec, da_dt_explicit: &HMatrix) -> Result<HMatrix> {
    iota.check_superselection(h)?;
    let commutator = h.commutator(a)?;
    iota.apply(&commutator).checked_add(da_dt_explicit)
}
