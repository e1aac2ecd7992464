//! The imaginary-unit operator, generators, canonical pairs and time
//! evolution under the superselection rule `[ι, H] = 0`.

mod ccr;
mod evolution;
mod grid;
mod iota;

pub use ccr::{check_ccr, heisenberg_rhs, CanonicalPair, CcrReport, Interior};
pub use evolution::{
    evolve, superselection_witness, EvolutionState, EvolutionTrace, Propagator, NORM_TOLERANCE,
};
pub use grid::{
    momentum_grid_check, momentum_richardson, plane_wave_check, GridSpec, MomentumGridReport, PlaneWaveReport,
    RichardsonReport,
    SUPPORT_TOLERANCE,
};
pub use iota::{induced_variation, Generator, IotaSpec, GENERATOR_TOLERANCE, SUPERSELECTION_TOLERANCE};
