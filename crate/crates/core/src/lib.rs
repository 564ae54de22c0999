//! LCSk++ and LCSk similarity for long strings.
//!
//! The metric counts the length of the longest common subsequence whose
//! index sets split into aligned runs of consecutive positions, each run at
//! least `k` long. It is computed by extracting all `k`-length substring
//! matches ("match pairs") and sweeping their start and end events in
//! row-major order over a Fenwick tree of per-column maxima, in
//! `O(m + n + r log r)` time for `r` match pairs.
//!
//! ```
//! use lcskpp::lcskpp;
//!
//! assert_eq!(lcskpp(b"ABCBA", b"ABCBA", 3).unwrap(), 5);
//! assert_eq!(lcskpp(b"ABCBA", b"ABCDE", 3).unwrap(), 3);
//! ```
//!
//! Besides the production path the crate ships slow reference
//! implementations ([`oracle`]), a random string model used to pick `k`
//! ([`simmodel`]), and a Monte Carlo runner for score distributions
//! ([`harness`]).

pub mod cli;
pub mod error;
pub mod events;
pub mod fenwick;
pub mod harness;
pub mod match_pairs;
pub mod oracle;
pub mod sequence;
pub mod simmodel;
pub mod sweep;

pub use error::{Error, Result};
pub use events::{build_events, Event, EventKind};
pub use fenwick::PrefixMaxIndex;
pub use match_pairs::{
    continuation_lookup, count_match_pairs, find_match_pairs, find_match_pairs_capped, MatchPair,
};
pub use sequence::{Alphabet, Sequence};
pub use sweep::{lcsk, lcskpp, reconstruct, sweep, BackLink, ChainResult, Mode};
