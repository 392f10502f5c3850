//! Input sizes shared by the criterion benches.

/// `x` values for the `pi` benches.
pub const PI_POINTS: &[u64] = &[1_000, 10_000, 100_000, 1_000_000];

/// Prime counts for the generator benches.
pub const GEN_COUNTS: &[usize] = &[1_000, 10_000, 100_000];

/// Builds the sieve once so the oracle benches measure lookups only.
pub fn sieve_for(x: u64) -> odsq_core::SieveTable {
    odsq_core::SieveTable::build(x).expect("bench sieve")
}
