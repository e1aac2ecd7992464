//! Seeded inputs shared by the benchmarks.

use qqm_core::dynamics::IotaSpec;
use qqm_core::hspace::{HMatrix, HVector};
use qqm_core::random::{random_hermitian, random_hermitian_commuting, random_unit_hvector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn hermitian(n: usize, seed: u64) -> HMatrix {
    random_hermitian(&mut rng(seed), n)
}

/// A Hamiltonian commuting with `ι = e₁` and a unit state.
pub fn evolution_inputs(n: usize, seed: u64) -> (HMatrix, HVector, IotaSpec) {
    let mut r = rng(seed);
    let iota = IotaSpec::default();
    let h = random_hermitian_commuting(&mut r, n, iota.eta());
    let psi = random_unit_hvector(&mut r, n);
    (h, psi, iota)
}
