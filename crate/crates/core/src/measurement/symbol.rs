use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::table::{GaugePhase, TransformationTable};
use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Weights with modulus at or below this are dropped from a [`SymbolSum`].
pub const CANONICAL_ZERO: f64 = 1e-14;

/// A complete set of compatible properties, identified by name, with `size`
/// distinguishable states.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisLabel {
    pub id: String,
    pub size: usize,
}

impl BasisLabel {
    pub fn new(id: impl Into<String>, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidArgument("basis size must be at least 1".into()));
        }
        Ok(BasisLabel { id: id.into(), size })
    }

    pub(crate) fn check_state(&self, index: usize) -> Result<()> {
        if index >= self.size {
            return Err(Error::StateOutOfRange { basis: self.id.clone(), index, size: self.size });
        }
        Ok(())
    }

    pub(crate) fn expect_same(&self, other: &BasisLabel, context: &str) -> Result<()> {
        if self != other {
            return Err(Error::BasisMismatch(format!(
                "{context}: {}({}) vs {}({})",
                self.id, self.size, other.id, other.size
            )));
        }
        Ok(())
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.id, self.size)
    }
}

/// The weighted dyad `M̂ₐᵇ(q) = |a⟩q⟨b|`: accepts state `b` of `in_basis`,
/// emits state `a` of `out_basis`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementSymbol {
    out_basis: BasisLabel,
    out_state: usize,
    in_basis: BasisLabel,
    in_state: usize,
    weight: Quaternion,
}

impl MeasurementSymbol {
    pub fn new(
        out_basis: BasisLabel,
        out_state: usize,
        in_basis: BasisLabel,
        in_state: usize,
        weight: Quaternion,
    ) -> Result<Self> {
        out_basis.check_state(out_state)?;
        in_basis.check_state(in_state)?;
        Ok(MeasurementSymbol { out_basis, out_state, in_basis, in_state, weight })
    }

    /// The elementary selective measurement `M̂ₐ = M̂ₐᵃ(1)`.
    pub fn selective(basis: &BasisLabel, a: usize) -> Result<Self> {
        Self::new(basis.clone(), a, basis.clone(), a, Quaternion::ONE)
    }

    pub fn out_basis(&self) -> &BasisLabel {
        &self.out_basis
    }

    pub fn out_state(&self) -> usize {
        self.out_state
    }

    pub fn in_basis(&self) -> &BasisLabel {
        &self.in_basis
    }

    pub fn in_state(&self) -> usize {
        self.in_state
    }

    pub fn weight(&self) -> Quaternion {
        self.weight
    }

    pub fn with_weight(&self, weight: Quaternion) -> Self {
        MeasurementSymbol { weight, ..self.clone() }
    }

    /// `λ·M̂ₐᵇ(q) = M̂ₐᵇ(λq)`.
    pub fn scale_left(&self, lambda: Quaternion) -> Self {
        self.with_weight(lambda * self.weight)
    }

    /// `M̂ₐᵇ(q)·λ = M̂ₐᵇ(qλ)`.
    pub fn scale_right(&self, lambda: Quaternion) -> Self {
        self.with_weight(self.weight * lambda)
    }

    /// `(|a⟩q⟨b|)† = |b⟩q̄⟨a|`.
    pub fn adjoint(&self) -> Self {
        MeasurementSymbol {
            out_basis: self.in_basis.clone(),
            out_state: self.in_state,
            in_basis: self.out_basis.clone(),
            in_state: self.out_state,
            weight: self.weight.conj(),
        }
    }

    /// `M̂ₐᵇ(q) ↦ M̂ₐᵇ(λₐ q λᵦ⁻¹)`.
    ///
    /// Paired with [`TransformationTable::gauge_transform`] this preserves
    /// every product, since the inner factors cancel pairwise.
    pub fn gauge_transform(&self, out_phase: &GaugePhase, in_phase: &GaugePhase) -> Result<Self> {
        out_phase.basis().expect_same(&self.out_basis, "gauge phase for output basis")?;
        in_phase.basis().expect_same(&self.in_basis, "gauge phase for input basis")?;
        let la = out_phase.get(self.out_state).get();
        let lb = in_phase.get(self.in_state).inverse().get();
        Ok(self.with_weight(la * self.weight * lb))
    }
}

/// `M̂ₐᵇ(q₁)·M̂_cᵈ(q₂) = M̂ₐᵈ(q₁⟨b|c⟩q₂)`.
///
/// `link` must carry `⟨b|c⟩` for `b` in `left.in_basis` and `c` in
/// `right.out_basis`; for equal bases this is the identity table.
pub fn mul_symbols(
    left: &MeasurementSymbol,
    right: &MeasurementSymbol,
    link: &TransformationTable,
) -> Result<MeasurementSymbol> {
    link.to_basis().expect_same(left.in_basis(), "link table rows vs left input basis")?;
    link.from_basis().expect_same(right.out_basis(), "link table columns vs right output basis")?;
    let overlap = link.get(left.in_state, right.out_state);
    Ok(MeasurementSymbol {
        out_basis: left.out_basis.clone(),
        out_state: left.out_state,
        in_basis: right.in_basis.clone(),
        in_state: right.in_state,
        weight: left.weight * overlap * right.weight,
    })
}

pub fn adjoint_symbol(m: &MeasurementSymbol) -> MeasurementSymbol {
    m.adjoint()
}

/// A finite sum of symbols over one `(out_basis, in_basis)` pair, kept in
/// canonical form: one weight per `(a, b)`, negligible weights dropped.
///
/// The empty sum is `0̂` and adopts the bases of whatever it is added to.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SymbolSum {
    bases: Option<(BasisLabel, BasisLabel)>,
    terms: BTreeMap<(usize, usize), Quaternion>,
}

impl SymbolSum {
    pub fn zero() -> Self {
        SymbolSum::default()
    }

    /// `1̂ = Σₐ M̂ₐ`.
    pub fn identity(basis: &BasisLabel) -> Self {
        let terms = (0..basis.size).map(|a| ((a, a), Quaternion::ONE)).collect();
        SymbolSum { bases: Some((basis.clone(), basis.clone())), terms }
    }

    pub fn from_symbol(m: &MeasurementSymbol) -> Self {
        let mut s = SymbolSum {
            bases: Some((m.out_basis.clone(), m.in_basis.clone())),
            terms: BTreeMap::new(),
        };
        s.accumulate(m.out_state, m.in_state, m.weight);
        s
    }

    pub fn from_symbols<'a>(symbols: impl IntoIterator<Item = &'a MeasurementSymbol>) -> Result<Self> {
        symbols
            .into_iter()
            .try_fold(SymbolSum::zero(), |acc, m| acc.add(&SymbolSum::from_symbol(m)))
    }

    pub fn bases(&self) -> Option<(&BasisLabel, &BasisLabel)> {
        self.bases.as_ref().map(|(o, i)| (o, i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weight of the `|a⟩⟨b|` term (zero when absent).
    pub fn weight(&self, a: usize, b: usize) -> Quaternion {
        self.terms.get(&(a, b)).copied().unwrap_or(Quaternion::ZERO)
    }

    pub fn symbols(&self) -> Vec<MeasurementSymbol> {
        let Some((out, inn)) = &self.bases else { return Vec::new() };
        self.terms
            .iter()
            .map(|(&(a, b), &q)| MeasurementSymbol {
                out_basis: out.clone(),
                out_state: a,
                in_basis: inn.clone(),
                in_state: b,
                weight: q,
            })
            .collect()
    }

    fn accumulate(&mut self, a: usize, b: usize, q: Quaternion) {
        let entry = self.terms.entry((a, b)).or_insert(Quaternion::ZERO);
        *entry += q;
        if entry.norm() <= CANONICAL_ZERO {
            self.terms.remove(&(a, b));
        }
    }

    fn merged_bases(&self, other: &SymbolSum) -> Result<Option<(BasisLabel, BasisLabel)>> {
        match (&self.bases, &other.bases) {
            (None, b) | (b, None) => Ok(b.clone()),
            (Some((o1, i1)), Some((o2, i2))) => {
                o1.expect_same(o2, "sum output bases")?;
                i1.expect_same(i2, "sum input bases")?;
                Ok(self.bases.clone())
            }
        }
    }

    pub fn add(&self, other: &SymbolSum) -> Result<SymbolSum> {
        let bases = self.merged_bases(other)?;
        let mut out = SymbolSum { bases, terms: self.terms.clone() };
        for (&(a, b), &q) in &other.terms {
            out.accumulate(a, b, q);
        }
        Ok(out)
    }

    /// Product against `right`, with `link` giving `⟨b|c⟩` between this
    /// sum's input basis and `right`'s output basis.
    pub fn mul(&self, right: &SymbolSum, link: &TransformationTable) -> Result<SymbolSum> {
        let (Some((out, inn)), Some((r_out, r_in))) = (&self.bases, &right.bases) else {
            return Ok(SymbolSum::zero());
        };
        link.to_basis().expect_same(inn, "link table rows vs left input basis")?;
        link.from_basis().expect_same(r_out, "link table columns vs right output basis")?;
        let mut product = SymbolSum { bases: Some((out.clone(), r_in.clone())), terms: BTreeMap::new() };
        for (&(a, b), &q1) in &self.terms {
            for (&(c, d), &q2) in &right.terms {
                product.accumulate(a, d, q1 * link.get(b, c) * q2);
            }
        }
        Ok(product)
    }

    pub fn adjoint(&self) -> SymbolSum {
        SymbolSum {
            bases: self.bases.as_ref().map(|(o, i)| (i.clone(), o.clone())),
            terms: self.terms.iter().map(|(&(a, b), &q)| ((b, a), q.conj())).collect(),
        }
    }

    pub fn scale_left(&self, lambda: Quaternion) -> SymbolSum {
        let mut out = SymbolSum { bases: self.bases.clone(), terms: BTreeMap::new() };
        for (&(a, b), &q) in &self.terms {
            out.accumulate(a, b, lambda * q);
        }
        out
    }

    /// Largest weight difference over the union of terms; infinite if the
    /// bases disagree.
    pub fn max_abs_diff(&self, other: &SymbolSum) -> f64 {
        if self.merged_bases(other).is_err() {
            return f64::INFINITY;
        }
        let mut d: f64 = 0.0;
        for key in self.terms.keys().chain(other.terms.keys()) {
            d = d.max(self.weight(key.0, key.1).max_abs_diff(other.weight(key.0, key.1)));
        }
        d
    }
}

pub fn sum_symbols(s1: &SymbolSum, s2: &SymbolSum) -> Result<SymbolSum> {
    s1.add(s2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(id: &str, n: usize) -> BasisLabel {
        BasisLabel::new(id, n).unwrap()
    }

    #[test]
    fn construction_checks_indices() {
        let a = basis("A", 2);
        assert!(matches!(
            MeasurementSymbol::new(a.clone(), 2, a.clone(), 0, Quaternion::ONE),
            Err(Error::StateOutOfRange { .. })
        ));
        assert!(BasisLabel::new("Z", 0).is_err());
    }

    #[test]
    fn same_basis_products_follow_kronecker_delta() {
        let a = basis("A", 4);
        let id = TransformationTable::identity(&a);
        let m01 = MeasurementSymbol::new(a.clone(), 0, a.clone(), 1, Quaternion::ONE).unwrap();
        let m23 = MeasurementSymbol::new(a.clone(), 2, a.clone(), 3, Quaternion::ONE).unwrap();
        let p = mul_symbols(&m01, &m23, &id).unwrap();
        assert_eq!(p.weight(), Quaternion::ZERO);
        assert!(SymbolSum::from_symbol(&p).is_zero());

        let m1 = MeasurementSymbol::selective(&a, 1).unwrap();
        assert_eq!(mul_symbols(&m1, &m1, &id).unwrap(), m1);
    }

    #[test]
    fn weights_compose_in_order() {
        let b = basis("B", 1);
        let c = basis("C", 1);
        let link = TransformationTable::new(b.clone(), c.clone(), vec![vec![Quaternion::E3]]).unwrap();
        let left = MeasurementSymbol::new(b.clone(), 0, b.clone(), 0, Quaternion::E1).unwrap();
        let right = MeasurementSymbol::new(c.clone(), 0, c.clone(), 0, Quaternion::E2).unwrap();
        let p = mul_symbols(&left, &right, &link).unwrap();
        // e₁e₃ = −e₂, (−e₂)e₂ = 1
        assert_eq!(p.weight(), Quaternion::ONE);
        assert_eq!(p.out_basis(), &b);
        assert_eq!(p.in_basis(), &c);
    }

    #[test]
    fn mismatched_link_is_rejected() {
        let a = basis("A", 2);
        let b = basis("B", 2);
        let m = MeasurementSymbol::selective(&a, 0).unwrap();
        let n = MeasurementSymbol::selective(&b, 0).unwrap();
        let id = TransformationTable::identity(&a);
        assert!(matches!(mul_symbols(&m, &n, &id), Err(Error::BasisMismatch(_))));
    }

    #[test]
    fn sums_identity_and_zero() {
        let a = basis("A", 3);
        let id = TransformationTable::identity(&a);
        let all: Vec<_> = (0..3).map(|k| MeasurementSymbol::selective(&a, k).unwrap()).collect();
        assert_eq!(SymbolSum::from_symbols(&all).unwrap(), SymbolSum::identity(&a));

        let m = SymbolSum::from_symbol(&MeasurementSymbol::selective(&a, 1).unwrap());
        assert_eq!(m.add(&SymbolSum::zero()).unwrap(), m);
        assert_eq!(SymbolSum::zero().add(&m).unwrap(), m);

        // M̂ₐ′(Σₐ M̂ₐ) = Σₐ M̂ₐ′M̂ₐ
        let lhs = m.mul(&SymbolSum::identity(&a), &id).unwrap();
        let mut rhs = SymbolSum::zero();
        for s in &all {
            rhs = rhs.add(&m.mul(&SymbolSum::from_symbol(s), &id).unwrap()).unwrap();
        }
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, m);
        assert!(m.mul(&SymbolSum::zero(), &id).unwrap().is_zero());
    }

    #[test]
    fn canonical_form_drops_cancellations() {
        let a = basis("A", 2);
        let m = MeasurementSymbol::new(a.clone(), 0, a.clone(), 1, Quaternion::E2).unwrap();
        let s = SymbolSum::from_symbol(&m).add(&SymbolSum::from_symbol(&m.scale_left(-Quaternion::ONE))).unwrap();
        assert!(s.is_zero());
        let doubled = SymbolSum::from_symbols([&m, &m]).unwrap();
        assert_eq!(doubled.len(), 1);
        assert_eq!(doubled.weight(0, 1), Quaternion::E2 * 2.0);
    }

    #[test]
    fn adjoint_examples() {
        let a = basis("A", 2);
        let b = basis("B", 3);
        let m = MeasurementSymbol::new(a.clone(), 1, b.clone(), 2, Quaternion::ONE).unwrap();
        let adj = m.adjoint();
        assert_eq!((adj.out_basis(), adj.out_state(), adj.in_basis(), adj.in_state()), (&b, 2, &a, 1));
        let sel = MeasurementSymbol::selective(&a, 0).unwrap();
        assert_eq!(sel.adjoint(), sel);
        let w = MeasurementSymbol::new(a.clone(), 0, a.clone(), 1, Quaternion::E2).unwrap();
        assert_eq!(w.adjoint(), MeasurementSymbol::new(a.clone(), 1, a.clone(), 0, -Quaternion::E2).unwrap());
        let sum = SymbolSum::from_symbols([&m, &m.scale_left(Quaternion::E1)]).unwrap();
        assert_eq!(sum.adjoint().adjoint(), sum);
    }

    #[test]
    fn sum_basis_mismatch() {
        let a = basis("A", 2);
        let b = basis("B", 2);
        let x = SymbolSum::identity(&a);
        let y = SymbolSum::identity(&b);
        assert!(matches!(x.add(&y), Err(Error::BasisMismatch(_))));
    }
}
