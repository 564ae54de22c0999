//! Random string model for unrelated and similar pairs, and the choice of
//! `k` that keeps the expected number of match pairs linear.
//!
//! Symbols are i.i.d. from an [`AlphabetDistribution`]. With
//! `S = sum p_c^2` the expected match-pair count is about
//! `(n + m) + n m S^k`, so `k_fast = ceil(log_{1/S}(n m / (n + m)))`.
//!
//! Generators use ChaCha20 (`rand_chacha` 0.3.1) seeded from a 64-bit seed.
//! Each string gets its own ChaCha stream id, so `X` and `Y` are
//! independent and neither depends on how many draws the other made.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::sequence::{Alphabet, Sequence};

/// Reproducibility seed for the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Seed(pub u64);

impl Seed {
    /// Child seed number `index`, decorrelated with a SplitMix64 finalizer.
    pub fn derive(self, index: u64) -> Seed {
        let mut z = self
            .0
            .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        Seed(z ^ (z >> 31))
    }

    fn rng(self, stream: u64) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.0);
        rng.set_stream(stream);
        rng
    }
}

const STREAM_X: u64 = 0;
const STREAM_Y: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct AlphabetDistribution {
    alphabet: Alphabet,
    probs: Vec<f64>,
}

impl AlphabetDistribution {
    /// Requires at least two symbols, nonnegative probabilities summing to 1
    /// within `1e-12`, and a match probability below 1.
    pub fn new(symbols: &[u8], probs: &[f64]) -> Result<Self> {
        let alphabet = Alphabet::new(symbols)?;
        if symbols.len() != probs.len() {
            return Err(Error::invalid(format!(
                "{} symbols but {} probabilities",
                symbols.len(),
                probs.len()
            )));
        }
        if symbols.len() < 2 {
            return Err(Error::invalid("distribution needs at least two symbols"));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::invalid(
                "probabilities must be finite and nonnegative",
            ));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let dist = Self {
            alphabet,
            probs: probs.to_vec(),
        };
        if dist.match_probability() >= 1.0 - 1e-12 {
            return Err(Error::invalid(
                "distribution puts all mass on one symbol; match probability is 1",
            ));
        }
        Ok(dist)
    }

    pub fn uniform(symbols: &[u8]) -> Result<Self> {
        let p = 1.0 / symbols.len() as f64;
        let mut probs = vec![p; symbols.len()];
        // absorb rounding so the sum is 1 to within an ulp or two
        if let Some(last) = probs.last_mut() {
            *last = 1.0 - p * (symbols.len() - 1) as f64;
        }
        Self::new(symbols, &probs)
    }

    /// Uniform over `A, C, G, T`.
    pub fn dna_uniform() -> Self {
        Self::uniform(Alphabet::DNA).expect("static distribution")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[u8] {
        self.alphabet.symbols()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// `S`, the chance two independent draws are equal.
    pub fn match_probability(&self) -> f64 {
        self.probs.iter().map(|p| p * p).sum()
    }

    /// `1 - S`, the per-position mismatch rate of unrelated strings.
    pub fn unrelated_error(&self) -> f64 {
        1.0 - self.match_probability()
    }

    fn sampler(&self) -> WeightedIndex<f64> {
        WeightedIndex::new(&self.probs).expect("validated weights")
    }

    fn sample(&self, n: usize, rng: &mut ChaCha20Rng) -> Vec<u8> {
        let sampler = self.sampler();
        let symbols = self.symbols();
        (0..n).map(|_| symbols[sampler.sample(rng)]).collect()
    }
}

/// How a similar pair's second string is mutated at each position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MutationModel {
    /// With probability `e`, redraw the symbol from the distribution; the
    /// redraw may reproduce the original, so mismatches occur at rate
    /// `e (1 - S)`.
    #[default]
    Redraw,
    /// With probability `e`, replace the symbol with a uniformly chosen
    /// different one; mismatches occur at rate exactly `e`.
    ForceChange,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairClass {
    Unrelated,
    Similar {
        e_similar: f64,
        model: MutationModel,
    },
}

impl PairClass {
    pub fn similar(e_similar: f64) -> Self {
        PairClass::Similar {
            e_similar,
            model: MutationModel::default(),
        }
    }

    pub fn error_rate(&self) -> Option<f64> {
        match self {
            PairClass::Unrelated => None,
            PairClass::Similar { e_similar, .. } => Some(*e_similar),
        }
    }

    /// Checks `0 <= e_similar < e_unrelated` for the given distribution.
    pub fn validate(&self, dist: &AlphabetDistribution) -> Result<()> {
        if let PairClass::Similar { e_similar, .. } = *self {
            let e_unrelated = dist.unrelated_error();
            if !(0.0..e_unrelated).contains(&e_similar) {
                return Err(Error::invalid(format!(
                    "e_similar = {e_similar} must lie in [0, e_unrelated = {e_unrelated})"
                )));
            }
        }
        Ok(())
    }

    pub fn generate(
        &self,
        n: usize,
        dist: &AlphabetDistribution,
        seed: Seed,
    ) -> Result<(Sequence, Sequence)> {
        match *self {
            PairClass::Unrelated => Ok(gen_unrelated(n, dist, seed)),
            PairClass::Similar { e_similar, model } => gen_similar(n, dist, e_similar, model, seed),
        }
    }
}

pub fn match_probability(dist: &AlphabetDistribution) -> f64 {
    dist.match_probability()
}

/// Two independent length-`n` strings.
pub fn gen_unrelated(n: usize, dist: &AlphabetDistribution, seed: Seed) -> (Sequence, Sequence) {
    let x = dist.sample(n, &mut seed.rng(STREAM_X));
    let y = dist.sample(n, &mut seed.rng(STREAM_Y));
    (Sequence::new(x), Sequence::new(y))
}

/// A random string and a substitution-only mutated copy of it.
pub fn gen_similar(
    n: usize,
    dist: &AlphabetDistribution,
    e_similar: f64,
    model: MutationModel,
    seed: Seed,
) -> Result<(Sequence, Sequence)> {
    PairClass::Similar { e_similar, model }.validate(dist)?;
    let x = dist.sample(n, &mut seed.rng(STREAM_X));
    let mut rng = seed.rng(STREAM_Y);
    let sampler = dist.sampler();
    let symbols = dist.symbols();
    let y = x
        .iter()
        .map(|&orig| {
            if !rng.gen_bool(e_similar) {
                return orig;
            }
            match model {
                MutationModel::Redraw => symbols[sampler.sample(&mut rng)],
                MutationModel::ForceChange => {
                    let pick = rng.gen_range(0..symbols.len() - 1);
                    let orig_idx = symbols.iter().position(|&s| s == orig).expect("own symbol");
                    symbols[if pick >= orig_idx { pick + 1 } else { pick }]
                }
            }
        })
        .collect::<Vec<u8>>();
    Ok((Sequence::new(x), Sequence::new(y)))
}

/// `(n + m) + n m S^k`: diagonal allowance plus off-diagonal expectation.
pub fn expected_match_pairs(n: usize, m: usize, k: usize, dist: &AlphabetDistribution) -> f64 {
    let s = dist.match_probability();
    (n + m) as f64 + (n as f64) * (m as f64) * s.powi(k as i32)
}

/// Smallest integer `k >= 1` with `n m S^k <= n + m`.
pub fn k_fast(n: usize, m: usize, dist: &AlphabetDistribution) -> usize {
    let (n, m) = (n.max(1) as f64, m.max(1) as f64);
    let ratio = n * m / (n + m);
    let exact = ratio.ln() / (1.0 / dist.match_probability()).ln();
    // tolerate float noise when the ratio is an exact power of 1/S
    let k = (exact - 1e-9).ceil();
    if k < 1.0 {
        1
    } else {
        k as usize
    }
}
