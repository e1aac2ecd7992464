use rand::Rng;
use serde::{Deserialize, Serialize};

use super::symbol::BasisLabel;
use crate::error::{Error, Result};
use crate::hspace::HMatrix;
use crate::quat::{Quaternion, UnitQuaternion};
use crate::random::random_unitary;

/// Maximum `|⟨b|a⟩ − conj⟨a|b⟩|` accepted when registering a pair.
pub const RECIPROCAL_TOLERANCE: f64 = 1e-12;

/// The transformation functions `⟨a|b⟩` linking `from_basis` (columns) to
/// `to_basis` (rows).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct TransformationTable {
    to_basis: BasisLabel,
    from_basis: BasisLabel,
    entries: HMatrix,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    to_basis: BasisLabel,
    from_basis: BasisLabel,
    entries: Vec<Vec<Quaternion>>,
}

impl TryFrom<TableJson> for TransformationTable {
    type Error = Error;

    fn try_from(raw: TableJson) -> Result<Self> {
        TransformationTable::new(raw.to_basis, raw.from_basis, raw.entries)
    }
}

impl From<TransformationTable> for TableJson {
    fn from(t: TransformationTable) -> Self {
        let entries = (0..t.entries.rows())
            .map(|i| (0..t.entries.cols()).map(|j| t.entries[(i, j)]).collect())
            .collect();
        TableJson { to_basis: t.to_basis, from_basis: t.from_basis, entries }
    }
}

impl TransformationTable {
    pub fn new(to_basis: BasisLabel, from_basis: BasisLabel, entries: Vec<Vec<Quaternion>>) -> Result<Self> {
        let m = HMatrix::from_rows(entries)?;
        Self::from_matrix(to_basis, from_basis, m)
    }

    pub fn from_matrix(to_basis: BasisLabel, from_basis: BasisLabel, entries: HMatrix) -> Result<Self> {
        if entries.rows() != to_basis.size || entries.cols() != from_basis.size {
            return Err(Error::DimensionMismatch {
                expected: crate::error::dims(to_basis.size, from_basis.size),
                found: crate::error::dims(entries.rows(), entries.cols()),
            });
        }
        if to_basis == from_basis && entries.max_abs_diff(&HMatrix::identity(to_basis.size)) > RECIPROCAL_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "a table from {to_basis} to itself must be the identity"
            )));
        }
        Ok(TransformationTable { to_basis, from_basis, entries })
    }

    /// `⟨a|a′⟩ = δ`.
    pub fn identity(basis: &BasisLabel) -> Self {
        TransformationTable {
            to_basis: basis.clone(),
            from_basis: basis.clone(),
            entries: HMatrix::identity(basis.size),
        }
    }

    /// A random unitary table between two distinct bases of equal size.
    pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, to_basis: BasisLabel, from_basis: BasisLabel) -> Result<Self> {
        if to_basis.size != from_basis.size {
            return Err(Error::DimensionMismatch {
                expected: format!("equal sizes, got {}", to_basis.size),
                found: from_basis.size.to_string(),
            });
        }
        let u = random_unitary(rng, to_basis.size);
        Self::from_matrix(to_basis, from_basis, u)
    }

    pub fn to_basis(&self) -> &BasisLabel {
        &self.to_basis
    }

    pub fn from_basis(&self) -> &BasisLabel {
        &self.from_basis
    }

    pub fn entries(&self) -> &HMatrix {
        &self.entries
    }

    /// `⟨a|b⟩`.
    pub fn get(&self, a: usize, b: usize) -> Quaternion {
        self.entries[(a, b)]
    }

    /// The table `⟨b|a⟩ = conj⟨a|b⟩`.
    pub fn reciprocal(&self) -> TransformationTable {
        TransformationTable {
            to_basis: self.from_basis.clone(),
            from_basis: self.to_basis.clone(),
            entries: self.entries.adjoint(),
        }
    }

    /// `Σᵦ⟨a|b⟩⟨b|c⟩ = ⟨a|c⟩`.
    pub fn compose(&self, next: &TransformationTable) -> Result<TransformationTable> {
        self.from_basis.expect_same(&next.to_basis, "table composition")?;
        Ok(TransformationTable {
            to_basis: self.to_basis.clone(),
            from_basis: next.from_basis.clone(),
            entries: self.entries.matmul(&next.entries)?,
        })
    }

    /// `⟨a|b⟩ ↦ λₐ⟨a|b⟩λᵦ⁻¹`.
    pub fn gauge_transform(&self, g_to: &GaugePhase, g_from: &GaugePhase) -> Result<TransformationTable> {
        g_to.basis().expect_same(&self.to_basis, "gauge phase for target basis")?;
        g_from.basis().expect_same(&self.from_basis, "gauge phase for source basis")?;
        let entries = HMatrix::from_fn(self.entries.rows(), self.entries.cols(), |a, b| {
            g_to.get(a).get() * self.entries[(a, b)] * g_from.get(b).inverse().get()
        });
        Ok(TransformationTable { entries, ..self.clone() })
    }

    pub fn max_abs_diff(&self, other: &TransformationTable) -> f64 {
        if self.to_basis != other.to_basis || self.from_basis != other.from_basis {
            return f64::INFINITY;
        }
        self.entries.max_abs_diff(&other.entries)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn compose_tables(t_ab: &TransformationTable, t_bc: &TransformationTable) -> Result<TransformationTable> {
    t_ab.compose(t_bc)
}

pub fn gauge_transform(
    t: &TransformationTable,
    g_to: &GaugePhase,
    g_from: &GaugePhase,
) -> Result<TransformationTable> {
    t.gauge_transform(g_to, g_from)
}

/// One unit quaternion `λₐ` per state of a basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PhaseJson", into = "PhaseJson")]
pub struct GaugePhase {
    basis: BasisLabel,
    lambdas: Vec<UnitQuaternion>,
}

#[derive(Serialize, Deserialize)]
struct PhaseJson {
    basis: BasisLabel,
    lambdas: Vec<UnitQuaternion>,
}

impl TryFrom<PhaseJson> for GaugePhase {
    type Error = Error;

    fn try_from(raw: PhaseJson) -> Result<Self> {
        GaugePhase::new(raw.basis, raw.lambdas)
    }
}

impl From<GaugePhase> for PhaseJson {
    fn from(g: GaugePhase) -> Self {
        PhaseJson { basis: g.basis, lambdas: g.lambdas }
    }
}

impl GaugePhase {
    pub fn new(basis: BasisLabel, lambdas: Vec<UnitQuaternion>) -> Result<Self> {
        if lambdas.len() != basis.size {
            return Err(Error::DimensionMismatch {
                expected: basis.size.to_string(),
                found: lambdas.len().to_string(),
            });
        }
        Ok(GaugePhase { basis, lambdas })
    }

    pub fn trivial(basis: &BasisLabel) -> Self {
        GaugePhase { basis: basis.clone(), lambdas: vec![UnitQuaternion::ONE; basis.size] }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, basis: &BasisLabel) -> Self {
        let lambdas = (0..basis.size).map(|_| crate::quat::random_unit(rng)).collect();
        GaugePhase { basis: basis.clone(), lambdas }
    }

    pub fn basis(&self) -> &BasisLabel {
        &self.basis
    }

    pub fn lambdas(&self) -> &[UnitQuaternion] {
        &self.lambdas
    }

    pub fn get(&self, a: usize) -> UnitQuaternion {
        self.lambdas[a]
    }

    pub fn inverse(&self) -> GaugePhase {
        GaugePhase { basis: self.basis.clone(), lambdas: self.lambdas.iter().map(|l| l.inverse()).collect() }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// A table together with its reverse direction.
#[derive(Clone, Debug, PartialEq)]
pub struct TablePair {
    forward: TransformationTable,
    backward: TransformationTable,
}

impl TablePair {
    /// Pairs `forward` with its conjugate-transpose reciprocal.
    pub fn reciprocal(forward: TransformationTable) -> Self {
        let backward = forward.reciprocal();
        TablePair { forward, backward }
    }

    /// Checks `⟨b|a⟩ = conj⟨a|b⟩` entrywise.
    pub fn checked(forward: TransformationTable, backward: TransformationTable) -> Result<Self> {
        let pair = Self::raw(forward, backward)?;
        let residual = pair.reciprocity_residual();
        if !(residual <= RECIPROCAL_TOLERANCE) {
            return Err(Error::NotReciprocal { residual });
        }
        Ok(pair)
    }

    /// No reciprocity constraint; only the bases must mirror each other.
    pub fn raw(forward: TransformationTable, backward: TransformationTable) -> Result<Self> {
        forward.to_basis.expect_same(&backward.from_basis, "paired table bases")?;
        forward.from_basis.expect_same(&backward.to_basis, "paired table bases")?;
        Ok(TablePair { forward, backward })
    }

    pub fn forward(&self) -> &TransformationTable {
        &self.forward
    }

    pub fn backward(&self) -> &TransformationTable {
        &self.backward
    }

    pub fn reciprocity_residual(&self) -> f64 {
        self.forward.entries.max_abs_diff(&self.backward.entries.adjoint())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hadamard_like() -> TransformationTable {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let one = Quaternion::real(s);
        let e1 = Quaternion::E1 * s;
        TransformationTable::new(
            BasisLabel::new("A", 2).unwrap(),
            BasisLabel::new("B", 2).unwrap(),
            vec![vec![one, e1], vec![e1, one]],
        )
        .unwrap()
    }

    #[test]
    fn composition_examples() {
        let t = hadamard_like();
        let id_b = TransformationTable::identity(t.from_basis());
        assert_eq!(t.compose(&id_b).unwrap(), t);
        let back = t.compose(&t.reciprocal()).unwrap();
        assert!(back.entries().max_abs_diff(&HMatrix::identity(2)) < 1e-15);
        assert_eq!(back.to_basis(), back.from_basis());
        assert!(matches!(t.compose(&t), Err(Error::BasisMismatch(_))));

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = BasisLabel::new("A", 4).unwrap();
        let b = BasisLabel::new("B", 4).unwrap();
        let u = TransformationTable::random_unitary(&mut rng, a.clone(), b).unwrap();
        let id = u.compose(&u.reciprocal()).unwrap();
        assert!(id.max_abs_diff(&TransformationTable::identity(&a)) < 1e-12);
    }

    #[test]
    fn same_basis_table_must_be_identity() {
        let a = BasisLabel::new("A", 2).unwrap();
        let bad = TransformationTable::new(a.clone(), a.clone(), vec![vec![Quaternion::ONE; 2]; 2]);
        assert!(bad.is_err());
        let wrong_shape = TransformationTable::new(a.clone(), BasisLabel::new("B", 3).unwrap(), vec![vec![Quaternion::ONE; 2]; 2]);
        assert!(matches!(wrong_shape, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn gauge_round_trip() {
        let t = hadamard_like();
        let g_to = GaugePhase::trivial(t.to_basis());
        let g_from = GaugePhase::trivial(t.from_basis());
        assert_eq!(t.gauge_transform(&g_to, &g_from).unwrap(), t);

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let g_to = GaugePhase::random(&mut rng, t.to_basis());
        let g_from = GaugePhase::random(&mut rng, t.from_basis());
        let there = t.gauge_transform(&g_to, &g_from).unwrap();
        let back = there.gauge_transform(&g_to.inverse(), &g_from.inverse()).unwrap();
        assert!(back.max_abs_diff(&t) < 1e-12);
        assert!(t.gauge_transform(&g_from, &g_to).is_err());
    }

    #[test]
    fn pair_reciprocity() {
        let t = hadamard_like();
        assert!(TablePair::checked(t.clone(), t.reciprocal()).is_ok());
        let mut skewed = t.reciprocal();
        skewed.entries[(0, 1)] += Quaternion::E3 * 1e-6;
        assert!(matches!(TablePair::checked(t.clone(), skewed.clone()), Err(Error::NotReciprocal { .. })));
        assert!(TablePair::raw(t, skewed).is_ok());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = BasisLabel::new("A", 3).unwrap();
        let b = BasisLabel::new("B", 3).unwrap();
        let t = TransformationTable::random_unitary(&mut rng, a.clone(), b).unwrap();
        let back = TransformationTable::from_json(&t.to_json().unwrap()).unwrap();
        for (x, y) in t.entries().as_slice().iter().zip(back.entries().as_slice()) {
            for (u, v) in x.to_array().iter().zip(y.to_array()) {
                assert_eq!(u.to_bits(), v.to_bits());
            }
        }
        let g = GaugePhase::random(&mut rng, &a);
        let g2 = GaugePhase::from_json(&g.to_json().unwrap()).unwrap();
        assert_eq!(g, g2);

        let json = t.to_json().unwrap();
        assert!(json.starts_with("{\"to_basis\":{\"id\":\"A\",\"size\":3}"));
    }

    #[test]
    fn json_rejects_bad_input() {
        let bad_shape = r#"{"to_basis":{"id":"A","size":2},"from_basis":{"id":"B","size":2},"entries":[[[1,0,0,0]]]}"#;
        assert!(TransformationTable::from_json(bad_shape).is_err());
        let non_unit = r#"{"basis":{"id":"A","size":1},"lambdas":[[2,0,0,0]]}"#;
        assert!(GaugePhase::from_json(non_unit).is_err());
    }
}
