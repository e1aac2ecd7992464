use serde::{Deserialize, Serialize};

use super::registry::TableRegistry;
use super::symbol::{mul_symbols, BasisLabel, MeasurementSymbol};
use super::table::{TablePair, TransformationTable};
use crate::error::Result;
use crate::quat::Quaternion;

/// Tolerance for [`DegreeConstraint::holds`].
pub const DEGREE_TOLERANCE: f64 = 1e-10;

/// `p(a|b) = ⟨b|a⟩⟨a|b⟩` with `⟨b|a⟩ = conj⟨a|b⟩`.
pub fn transition_probability(t: &TransformationTable, a: usize, b: usize) -> f64 {
    let ab = t.get(a, b);
    (ab.conj() * ab).w
}

/// The full product `⟨b|a⟩⟨a|b⟩` read from both directions of a pair.
pub fn transition_weight(pair: &TablePair, a: usize, b: usize) -> Quaternion {
    pair.backward().get(b, a) * pair.forward().get(a, b)
}

/// Weight of `M̂ᵦM̂ₐM̂ᵦ` for `a` in `t.to_basis()` and `b` in `t.from_basis()`,
/// formed by two symbol products.
pub fn sandwich(b: usize, a: usize, t: &TransformationTable) -> Result<Quaternion> {
    let mb = MeasurementSymbol::selective(t.from_basis(), b)?;
    let ma = MeasurementSymbol::selective(t.to_basis(), a)?;
    let ba = mul_symbols(&mb, &ma, &t.reciprocal())?;
    Ok(mul_symbols(&ba, &mb, t)?.weight())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceKind {
    Left,
    Right,
    Central,
}

/// Trace functionals of `M̂ₐᵇ(q)`:
/// `Tr_L = q⟨b|a⟩`, `Tr_R = ⟨b|a⟩q`, `Tr_C = Σₑ⟨e|a⟩q⟨b|e⟩`.
///
/// The central kind sums over `central_basis`, defaulting to the output
/// basis of `m`.
pub fn trace(
    m: &MeasurementSymbol,
    kind: TraceKind,
    tables: &TableRegistry,
    central_basis: Option<&BasisLabel>,
) -> Result<Quaternion> {
    let q = m.weight();
    let (a, b) = (m.out_state(), m.in_state());
    match kind {
        TraceKind::Left | TraceKind::Right => {
            let ba = tables.get(m.in_basis(), m.out_basis())?.get(b, a);
            Ok(if kind == TraceKind::Left { q * ba } else { ba * q })
        }
        TraceKind::Central => {
            let e_basis = central_basis.unwrap_or(m.out_basis());
            let ea = tables.get(e_basis, m.out_basis())?;
            let be = tables.get(m.in_basis(), e_basis)?;
            Ok((0..e_basis.size).map(|e| ea.get(e, a) * q * be.get(b, e)).sum())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeConstraint {
    pub lhs: Quaternion,
    pub rhs: Quaternion,
    pub holds: bool,
}

/// Compares `ΣₐΣᵦ⟨a|b⟩⟨b|a⟩` with `ΣᵦΣₐ⟨b|a⟩⟨a|b⟩`.
pub fn check_degree_constraint(pair: &TablePair) -> DegreeConstraint {
    let (f, g) = (pair.forward(), pair.backward());
    let (n, m) = (f.to_basis().size, f.from_basis().size);
    let mut lhs = Quaternion::ZERO;
    for a in 0..n {
        for b in 0..m {
            lhs += f.get(a, b) * g.get(b, a);
        }
    }
    let mut rhs = Quaternion::ZERO;
    for b in 0..m {
        for a in 0..n {
            rhs += g.get(b, a) * f.get(a, b);
        }
    }
    DegreeConstraint { lhs, rhs, holds: lhs.max_abs_diff(rhs) <= DEGREE_TOLERANCE }
}
