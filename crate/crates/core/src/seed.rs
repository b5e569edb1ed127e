//! Deterministic seed derivation.
//!
//! Experiments derive many independent RNG streams (one per replication, and
//! several per simulation run) from a single master seed. Derivation is a
//! SplitMix64 step over the master seed combined with a stream index, so
//! streams are reproducible, order-independent, and pairwise distinct for
//! distinct indices.

/// One SplitMix64 output for the given state.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derive the seed for stream `index` from `master`.
pub fn derive(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}
