use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, RwLock};

use super::symbol::{mul_symbols, BasisLabel, MeasurementSymbol, SymbolSum};
use super::table::{TablePair, TransformationTable};
use crate::error::{Error, Result};

type Key = (BasisLabel, BasisLabel);

/// Basis-pair → table map shared between threads.
///
/// Lookups take a shared lock; registration is exclusive. Every lookup of a
/// key, hit or miss, marks it as read, and registering a read key fails with
/// [`Error::RegistrationAfterRead`]. Tables from a basis to itself are the
/// identity and are never stored.
#[derive(Debug, Default)]
pub struct TableRegistry {
    // Lock order: `read` before `tables`.
    read: Mutex<HashSet<Key>>,
    tables: RwLock<HashMap<Key, Arc<TransformationTable>>>,
}

impl TableRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `table` together with its conjugate reciprocal.
    pub fn register(&self, table: TransformationTable) -> Result<()> {
        self.insert(TablePair::reciprocal(table))
    }

    /// Registers an explicit pair, checking reciprocity.
    pub fn register_pair(&self, forward: TransformationTable, backward: TransformationTable) -> Result<()> {
        self.insert(TablePair::checked(forward, backward)?)
    }

    /// Registers a pair without the reciprocity check.
    pub fn register_raw(&self, forward: TransformationTable, backward: TransformationTable) -> Result<()> {
        self.insert(TablePair::raw(forward, backward)?)
    }

    fn insert(&self, pair: TablePair) -> Result<()> {
        let (f, b) = (pair.forward(), pair.backward());
        if f.to_basis() == f.from_basis() {
            return Err(Error::InvalidArgument(format!(
                "tables from {} to itself are implicit identities",
                f.to_basis()
            )));
        }
        let kf = (f.to_basis().clone(), f.from_basis().clone());
        let kb = (b.to_basis().clone(), b.from_basis().clone());
        let read = self.read.lock().expect("registry lock poisoned");
        for k in [&kf, &kb] {
            if read.contains(k) {
                return Err(Error::RegistrationAfterRead { to: k.0.id.clone(), from: k.1.id.clone() });
            }
        }
        let mut tables = self.tables.write().expect("registry lock poisoned");
        for k in [&kf, &kb] {
            if tables.contains_key(k) {
                return Err(Error::DuplicateTable { to: k.0.id.clone(), from: k.1.id.clone() });
            }
        }
        tables.insert(kf, Arc::new(f.clone()));
        tables.insert(kb, Arc::new(b.clone()));
        Ok(())
    }

    /// The table `⟨a|b⟩` with `a ∈ to`, `b ∈ from`.
    pub fn get(&self, to: &BasisLabel, from: &BasisLabel) -> Result<Arc<TransformationTable>> {
        if to == from {
            return Ok(Arc::new(TransformationTable::identity(to)));
        }
        let key = (to.clone(), from.clone());
        self.read.lock().expect("registry lock poisoned").insert(key.clone());
        self.tables
            .read()
            .expect("registry lock poisoned")
            .get(&key)
            .cloned()
            .ok_or_else(|| Error::MissingTable { to: to.id.clone(), from: from.id.clone() })
    }

    pub fn len(&self) -> usize {
        self.tables.read().expect("registry lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn link(&self, to: &BasisLabel, from: &BasisLabel) -> Result<Arc<TransformationTable>> {
        self.get(to, from).map_err(|e| match e {
            Error::MissingTable { to, from } => {
                Error::BasisMismatch(format!("no table registered from {from} to {to}"))
            }
            other => other,
        })
    }

    /// Symbol product using the registered link between the inner bases.
    pub fn mul(&self, left: &MeasurementSymbol, right: &MeasurementSymbol) -> Result<MeasurementSymbol> {
        let link = self.link(left.in_basis(), right.out_basis())?;
        mul_symbols(left, right, &link)
    }

    pub fn mul_sums(&self, left: &SymbolSum, right: &SymbolSum) -> Result<SymbolSum> {
        let (Some((_, inn)), Some((out, _))) = (left.bases(), right.bases()) else {
            return Ok(SymbolSum::zero());
        };
        let link = self.link(inn, out)?;
        left.mul(right, &link)
    }
}
