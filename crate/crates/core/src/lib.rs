//! Prime counting and prime generation over the main sequence of odd
//! numbers `U_n = 3 + 2n`.
//!
//! - [`sequences`]: index arithmetic and T-series wheels.
//! - [`zfuncs`]: closed-form p-composite counters.
//! - [`ascending`]: k*l, k²*l and k^j counters, `W_n` and `pi(x)`.
//! - [`primegen`]: partition-based generator of the first N primes.
//! - [`oracle`]: sieve, factorization and brute-force class counts.
//! - [`report`]: differential checks of the closed forms against the oracle.

pub mod ascending;
pub mod error;
pub mod oracle;
pub mod primegen;
pub mod report;
pub mod sequences;
pub mod zfuncs;

pub use ascending::{
    assemble_w, assemble_w_with, chi, count_kkl, count_kkl_paper, count_kl, count_kpow,
    count_kpowl, iroot, pi_of, pi_of_with, CompositePattern, PiBreakdown, Strategy, WAssembly,
};
pub use error::{Error, Result};
pub use oracle::{factorize_ascending, oracle_pi, sieve_build, AscendingFactorization, SieveTable};
pub use primegen::{first_n_primes, GeneratorState, PartitionReport};
pub use report::{verify, ClassSpec, Report, ReportRow, Variant};
pub use sequences::{element_at, eta, index_at, m_count, sigma, wheel_build, wheel_stream, WheelSpec};
pub use zfuncs::{count_3, count_p_corrected, count_p_paper, enumerate_p_composites, ZCounter};
