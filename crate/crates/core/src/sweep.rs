//! The row-major event sweep that chains match pairs.
//!
//! For a match pair `P` the sweep computes `dp(P)`, the best k++ common
//! subsequence of the prefixes ending at `P`'s end. A start event seeds
//! `dp(P) = k + max dp` over pairs whose end column is `<= j_P` (all of
//! which have already ended, since rows are swept in order). An end event
//! applies the `+1` diagonal continuation from the pair at
//! `(i_P - 1, j_P - 1)` and then publishes `dp(P)` at column `j_P + k`.
//! Without the continuation step the same sweep yields `k * LCSk`.

use crate::error::{check_k, Result};
use crate::events::{build_events, EventKind};
use crate::fenwick::PrefixMaxIndex;
use crate::match_pairs::{continuation_lookup, find_match_pairs, MatchPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Runs of length at least `k`.
    #[default]
    Lcskpp,
    /// Nonoverlapping segments of length exactly `k`.
    Lcsk,
}

/// How the optimal chain reaches a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackLink {
    /// The pair opens the chain.
    None,
    /// A fully disjoint predecessor, worth `+k`.
    Precedes(usize),
    /// The pair one step up-left on the diagonal, worth `+1`.
    Continues(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainResult {
    /// LCSk++ length, or the LCSk segment count in [`Mode::Lcsk`].
    pub value: u64,
    pub k: usize,
    pub mode: Mode,
    /// Match pairs in row-major order; `dp` and `back` are indexed by position here.
    pub pairs: Vec<MatchPair>,
    pub dp: Vec<u64>,
    pub back: Vec<BackLink>,
    /// Lowest-indexed pair attaining the maximum `dp`.
    pub best_pair: Option<usize>,
}

impl ChainResult {
    /// Number of match pairs `r`.
    pub fn match_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn reconstruct(&self) -> Vec<(usize, usize)> {
        reconstruct(self)
    }
}

/// Runs the sweep on `x` and `y`.
pub fn sweep(x: &[u8], y: &[u8], k: usize, mode: Mode) -> Result<ChainResult> {
    let pairs = find_match_pairs(x, y, k)?;
    sweep_pairs(pairs, k, mode)
}

/// Runs the sweep on pre-extracted pairs, which must be sorted row-major.
pub fn sweep_pairs(pairs: Vec<MatchPair>, k: usize, mode: Mode) -> Result<ChainResult> {
    check_k(k)?;
    debug_assert!(pairs.windows(2).all(|w| w[0] < w[1]));

    let r = pairs.len();
    let mut dp = vec![0u64; r];
    let mut back = vec![BackLink::None; r];
    let columns = pairs.iter().map(|p| p.j).max().map_or(0, |j| j + k + 1);
    let mut max_col_dp = PrefixMaxIndex::new(columns);
    let kv = k as u64;

    for ev in build_events(&pairs, k) {
        let id = ev.pair_id;
        let p = pairs[id];
        match ev.kind {
            EventKind::Start => {
                let (best, from) = max_col_dp.query_tagged(p.j);
                dp[id] = kv + best;
                back[id] = match from {
                    Some(g) if best > 0 => BackLink::Precedes(g),
                    _ => BackLink::None,
                };
            }
            EventKind::End => {
                if mode == Mode::Lcskpp && p.i > 0 && p.j > 0 {
                    if let Some(g) = continuation_lookup(&pairs, p.i - 1, p.j - 1) {
                        if dp[g] + 1 >= dp[id] {
                            dp[id] = dp[g] + 1;
                            back[id] = BackLink::Continues(g);
                        }
                    }
                }
                max_col_dp.update_tagged(p.j + k, dp[id], id);
            }
        }
    }

    let mut best_pair = None;
    let mut best = 0;
    for (id, &v) in dp.iter().enumerate() {
        if v > best {
            best = v;
            best_pair = Some(id);
        }
    }
    let value = match mode {
        Mode::Lcskpp => best,
        Mode::Lcsk => best / kv,
    };
    Ok(ChainResult {
        value,
        k,
        mode,
        pairs,
        dp,
        back,
        best_pair,
    })
}

/// Aligned index pairs `(i, j)` of an optimal chain, ascending in both.
///
/// A pair entered by precedence (or opening the chain) contributes its `k`
/// cells; a pair entered by continuation contributes only its last cell.
pub fn reconstruct(result: &ChainResult) -> Vec<(usize, usize)> {
    let k = result.k;
    let pairs = &result.pairs;
    let mut cells = Vec::new();
    let mut current = result.best_pair;
    while let Some(id) = current {
        let p = pairs[id];
        match result.back[id] {
            BackLink::Continues(g) => {
                assert!(
                    p.continues(&pairs[g]),
                    "broken continuation link at pair {id}"
                );
                cells.push((p.i + k - 1, p.j + k - 1));
                current = Some(g);
            }
            link => {
                cells.extend((0..k).rev().map(|d| (p.i + d, p.j + d)));
                current = match link {
                    BackLink::Precedes(g) => {
                        assert!(
                            pairs[g].precedes(&p, k),
                            "broken precedence link at pair {id}"
                        );
                        Some(g)
                    }
                    _ => None,
                };
            }
        }
    }
    cells.reverse();
    cells
}

/// LCSk++ length of `x` and `y`.
pub fn lcskpp(x: &[u8], y: &[u8], k: usize) -> Result<u64> {
    Ok(sweep(x, y, k, Mode::Lcskpp)?.value)
}

/// Maximal number of nonoverlapping matching substrings of length exactly `k`.
pub fn lcsk(x: &[u8], y: &[u8], k: usize) -> Result<u64> {
    Ok(sweep(x, y, k, Mode::Lcsk)?.value)
}
