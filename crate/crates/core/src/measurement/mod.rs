//! Weighted measurement symbols over ℍ, transformation tables between
//! complete sets of states, gauge phases and the derived functionals.

mod functionals;
mod registry;
mod symbol;
mod table;

pub use functionals::{
    check_degree_constraint, sandwich, trace, transition_probability, transition_weight, DegreeConstraint,
    TraceKind, DEGREE_TOLERANCE,
};
pub use registry::TableRegistry;
pub use symbol::{adjoint_symbol, mul_symbols, sum_symbols, BasisLabel, MeasurementSymbol, SymbolSum, CANONICAL_ZERO};
pub use table::{compose_tables, gauge_transform, GaugePhase, TablePair, TransformationTable, RECIPROCAL_TOLERANCE};
