//! Quaternionic quantum mechanics over the measurement-symbol algebra.
//!
//! Layers, bottom up:
//!
//! * [`quat`]: the scalar ring ℍ.
//! * [`hspace`]: right ℍ-modules, quaternionic matrices, the complex
//!   symplectic embedding used for spectra and exponentials.
//! * [`measurement`]: weighted measurement symbols `|a⟩q⟨b|`, transformation
//!   tables `⟨a|b⟩`, gauge automorphisms, transition probabilities, traces.
//! * [`dynamics`]: the imaginary-unit operator `ι = η·I`, generators,
//!   canonical pairs, Heisenberg and Schrödinger evolution, grid momentum.
//! * [`oscillator`]: the quaternionic harmonic oscillator on a truncated
//!   Fock space.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod dynamics;
pub mod error;
pub mod hspace;
pub mod measurement;
pub mod oscillator;
pub mod quat;
pub mod random;

pub use error::{Error, Result};
pub use hspace::{ComplexEmbedding, HCovector, HMatrix, HVector};
pub use quat::{PolarForm, Quaternion, UnitQuaternion};
