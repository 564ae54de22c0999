//! Extraction of `k`-match pairs: positions `(i, j)` where `x[i..i + k]`
//! equals `y[j..j + k]`.
//!
//! Windows over `{A, C, G, T}` with `k <= 32` are packed two bits per symbol
//! into a `u64`, which is collision-free. Any other input is keyed by a
//! polynomial rolling hash modulo `2^61 - 1`; equal keys are only candidates
//! and every candidate is verified by direct comparison.

use std::collections::HashMap;
use std::ops::{ControlFlow, Range};

use crate::error::{check_k, Error, Result};

/// Start of a `k`-match pair. The end is `(i + k, j + k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatchPair {
    pub i: usize,
    pub j: usize,
}

impl MatchPair {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub const fn end(&self, k: usize) -> (usize, usize) {
        (self.i + k, self.j + k)
    }

    /// `self` ends weakly above-left of where `other` starts.
    pub const fn precedes(&self, other: &MatchPair, k: usize) -> bool {
        self.i + k <= other.i && self.j + k <= other.j
    }

    /// `self` lies one step down-right of `other` on the same diagonal.
    pub const fn continues(&self, other: &MatchPair) -> bool {
        self.i == other.i + 1 && self.j == other.j + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum KeyScheme {
    /// Two bits per nucleotide; keys are the windows themselves.
    Packed,
    /// Rolling hash; keys must be verified.
    Rolling,
}

const MERSENNE_61: u64 = (1 << 61) - 1;
const HASH_BASE: u64 = 0x1f3d_5b79_a2c4_e681 % MERSENNE_61;

fn mul_mod(a: u64, b: u64) -> u64 {
    let p = (a as u128) * (b as u128);
    let lo = (p as u64) & MERSENNE_61;
    let hi = (p >> 61) as u64;
    let s = lo + hi;
    if s >= MERSENNE_61 {
        s - MERSENNE_61
    } else {
        s
    }
}

fn nucleotide_code(b: u8) -> Option<u64> {
    match b {
        b'A' => Some(0),
        b'C' => Some(1),
        b'G' => Some(2),
        b'T' => Some(3),
        _ => None,
    }
}

fn choose_scheme(x: &[u8], y: &[u8], k: usize) -> KeyScheme {
    let is_dna = |s: &[u8]| s.iter().all(|&b| nucleotide_code(b).is_some());
    if k <= 32 && is_dna(x) && is_dna(y) {
        KeyScheme::Packed
    } else {
        KeyScheme::Rolling
    }
}

/// Key of every length-`k` window of `s`; `s.len() >= k` is assumed.
fn window_keys(s: &[u8], k: usize, scheme: KeyScheme) -> Vec<u64> {
    let windows = s.len() + 1 - k;
    let mut keys = Vec::with_capacity(windows);
    match scheme {
        KeyScheme::Packed => {
            let mask = if k == 32 {
                u64::MAX
            } else {
                (1u64 << (2 * k)) - 1
            };
            let mut code = 0u64;
            for (pos, &b) in s.iter().enumerate() {
                code = ((code << 2) | nucleotide_code(b).expect("checked by scheme")) & mask;
                if pos + 1 >= k {
                    keys.push(code);
                }
            }
        }
        KeyScheme::Rolling => {
            // weight of the symbol leaving the window
            let mut lead = 1u64;
            for _ in 1..k {
                lead = mul_mod(lead, HASH_BASE);
            }
            let mut h = 0u64;
            for (pos, &b) in s.iter().enumerate() {
                if pos >= k {
                    let out = mul_mod(s[pos - k] as u64 + 1, lead);
                    h = (h + MERSENNE_61 - out) % MERSENNE_61;
                }
                h = (mul_mod(h, HASH_BASE) + b as u64 + 1) % MERSENNE_61;
                if pos + 1 >= k {
                    keys.push(h);
                }
            }
        }
    }
    keys
}

/// Window start positions of `y` grouped by key.
struct KmerIndex {
    positions: Vec<usize>,
    buckets: HashMap<u64, Range<usize>>,
}

impl KmerIndex {
    fn build(keys: &[u64]) -> Self {
        let mut order: Vec<(u64, usize)> = keys.iter().copied().zip(0..).collect();
        order.sort_unstable();
        let mut buckets = HashMap::new();
        let mut start = 0;
        for end in 1..=order.len() {
            if end == order.len() || order[end].0 != order[start].0 {
                buckets.insert(order[start].0, start..end);
                start = end;
            }
        }
        Self {
            positions: order.into_iter().map(|(_, j)| j).collect(),
            buckets,
        }
    }

    fn candidates(&self, key: u64) -> &[usize] {
        match self.buckets.get(&key) {
            Some(range) => &self.positions[range.clone()],
            None => &[],
        }
    }
}

/// Calls `emit(i, j)` for every verified match pair in row-major order,
/// until `emit` breaks.
fn for_each_match(
    x: &[u8],
    y: &[u8],
    k: usize,
    mut emit: impl FnMut(usize, usize) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if k > x.len() || k > y.len() {
        return ControlFlow::Continue(());
    }
    let scheme = choose_scheme(x, y, k);
    let index = KmerIndex::build(&window_keys(y, k, scheme));
    for (i, key) in window_keys(x, k, scheme).into_iter().enumerate() {
        for &j in index.candidates(key) {
            if scheme == KeyScheme::Packed || x[i..i + k] == y[j..j + k] {
                emit(i, j)?;
            }
        }
    }
    ControlFlow::Continue(())
}

/// All `k`-match pairs between `x` and `y`, sorted row-major.
///
/// Empty when `k` exceeds either length. Fails only for `k = 0`.
pub fn find_match_pairs(x: &[u8], y: &[u8], k: usize) -> Result<Vec<MatchPair>> {
    check_k(k)?;
    let mut pairs = Vec::new();
    let _ = for_each_match(x, y, k, |i, j| {
        pairs.push(MatchPair::new(i, j));
        ControlFlow::Continue(())
    });
    Ok(pairs)
}

/// Like [`find_match_pairs`], but gives up once more than `cap` pairs exist.
pub fn find_match_pairs_capped(x: &[u8], y: &[u8], k: usize, cap: usize) -> Result<Vec<MatchPair>> {
    check_k(k)?;
    let mut pairs = Vec::new();
    let flow = for_each_match(x, y, k, |i, j| {
        if pairs.len() == cap {
            return ControlFlow::Break(());
        }
        pairs.push(MatchPair::new(i, j));
        ControlFlow::Continue(())
    });
    if flow.is_break() {
        return Err(Error::invalid(format!(
            "more than {cap} match pairs for k = {k}; use a larger k (see suggest-k)"
        )));
    }
    Ok(pairs)
}

/// Number of `k`-match pairs, without materializing them.
pub fn count_match_pairs(x: &[u8], y: &[u8], k: usize) -> Result<usize> {
    check_k(k)?;
    let mut r = 0;
    let _ = for_each_match(x, y, k, |_, _| {
        r += 1;
        ControlFlow::Continue(())
    });
    Ok(r)
}

/// Index of the pair starting exactly at `(row, col)` in a row-major sorted list.
pub fn continuation_lookup(pairs: &[MatchPair], row: usize, col: usize) -> Option<usize> {
    pairs.binary_search(&MatchPair::new(row, col)).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(x: &[u8], y: &[u8], k: usize) -> Vec<MatchPair> {
        let mut out = Vec::new();
        if k > x.len() || k > y.len() {
            return out;
        }
        for i in 0..=x.len() - k {
            for j in 0..=y.len() - k {
                if x[i..i + k] == y[j..j + k] {
                    out.push(MatchPair::new(i, j));
                }
            }
        }
        out
    }

    fn figure_pairs() -> Vec<MatchPair> {
        find_match_pairs(b"ATTATG", b"CTATAGAGTA", 2).unwrap()
    }

    #[test]
    fn figure_has_exactly_five_pairs() {
        let pairs = figure_pairs();
        let mut expected: Vec<_> = [(2, 1), (3, 2), (0, 2), (2, 3), (2, 8)]
            .iter()
            .map(|&(i, j)| MatchPair::new(i, j))
            .collect();
        expected.sort();
        assert_eq!(pairs, expected);
    }

    #[test]
    fn k_longer_than_inputs_gives_nothing() {
        assert!(find_match_pairs(b"ABC", b"ABC", 4).unwrap().is_empty());
        assert!(find_match_pairs(b"", b"ABC", 1).unwrap().is_empty());
    }

    #[test]
    fn overlapping_windows_in_repeats() {
        let pairs = find_match_pairs(b"AAAA", b"AA", 2).unwrap();
        assert_eq!(
            pairs,
            vec![
                MatchPair::new(0, 0),
                MatchPair::new(1, 0),
                MatchPair::new(2, 0)
            ]
        );
    }

    #[test]
    fn cap_limits_extraction() {
        let x = b"AAAAAAAA";
        assert_eq!(find_match_pairs_capped(x, x, 2, 49).unwrap().len(), 49);
        assert!(find_match_pairs_capped(x, x, 2, 48).is_err());
    }

    #[test]
    fn zero_k_rejected() {
        assert!(find_match_pairs(b"A", b"A", 0).is_err());
        assert!(count_match_pairs(b"A", b"A", 0).is_err());
    }

    #[test]
    fn packed_path_at_k_32_and_rolling_path_beyond() {
        let x = b"ACGTTGCAACGTTGCAACGTTGCAACGTTGCAACGTACGT".to_vec();
        let y = [&b"GG"[..], &x[..]].concat();
        for k in [31, 32, 33, 40] {
            assert_eq!(
                find_match_pairs(&x, &y, k).unwrap(),
                naive(&x, &y, k),
                "k={k}"
            );
        }
    }

    #[test]
    fn general_alphabet_matches_naive() {
        let x = b"the quick brown fox jumps over the lazy dog the end";
        let y = b"a lazy dog jumps over the quick brown fox, the end";
        for k in 1..8 {
            assert_eq!(find_match_pairs(x, y, k).unwrap(), naive(x, y, k));
            assert_eq!(count_match_pairs(x, y, k).unwrap(), naive(x, y, k).len());
        }
    }

    #[test]
    fn figure_relations() {
        let k = 2;
        let [a, b, c, d, e] =
            [(2, 1), (3, 2), (0, 2), (2, 3), (2, 8)].map(|(i, j)| MatchPair::new(i, j));
        assert!(b.continues(&a));
        assert!(c.precedes(&e, k));
        assert!(!a.precedes(&b, k));
        assert!(!c.precedes(&d, k));
        assert!(!a.continues(&b));
    }

    #[test]
    fn lookup_hits_and_misses() {
        let pairs = vec![MatchPair::new(2, 1), MatchPair::new(3, 2)];
        assert_eq!(continuation_lookup(&pairs, 2, 1), Some(0));
        assert_eq!(continuation_lookup(&pairs, 1, 0), None);

        let fig = figure_pairs();
        let b = fig.iter().position(|p| *p == MatchPair::new(3, 2)).unwrap();
        let a = continuation_lookup(&fig, fig[b].i - 1, fig[b].j - 1).unwrap();
        assert_eq!(fig[a], MatchPair::new(2, 1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn extraction_equals_naive(
                x in proptest::collection::vec(0u8..4, 0..60),
                y in proptest::collection::vec(0u8..4, 0..60),
                k in 1usize..7,
                dna in any::<bool>(),
            ) {
                let map = |s: Vec<u8>| -> Vec<u8> {
                    s.into_iter().map(|c| if dna { b"ACGT"[c as usize] } else { c }).collect()
                };
                let (x, y) = (map(x), map(y));
                prop_assert_eq!(find_match_pairs(&x, &y, k).unwrap(), naive(&x, &y, k));
            }
        }
    }
}
