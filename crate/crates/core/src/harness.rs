//! Monte Carlo runner for LCSk++ score distributions.
//!
//! Trial `t` of an experiment draws its pair from `base_seed.derive(t)`, so
//! trials are independent of each other and of scheduling. Trials run on
//! the current rayon pool and are aggregated in index order, which keeps
//! results bit-identical for any thread count.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_k, Error, Result};
use crate::simmodel::{AlphabetDistribution, MutationModel, PairClass, Seed};
use crate::sweep::lcskpp;

pub const HISTOGRAM_BINS: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub k: usize,
    pub pair_class: PairClass,
    pub trials: usize,
    pub base_seed: Seed,
    pub dist: AlphabetDistribution,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        check_k(self.k)?;
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.n == 0 {
            return Err(Error::invalid("string length must be at least 1"));
        }
        self.pair_class.validate(&self.dist)
    }

    pub fn trial_seed(&self, trial: usize) -> Seed {
        self.base_seed.derive(trial as u64)
    }
}

/// Uniform-bin histogram over `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub counts: Vec<u64>,
}

impl Histogram {
    fn new(bins: usize) -> Self {
        Self {
            counts: vec![0; bins],
        }
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    /// `(lo, hi)` of bin `b`; the last bin is closed on the right.
    pub fn bin_edges(&self, b: usize) -> (f64, f64) {
        let w = self.bins() as f64;
        (b as f64 / w, (b + 1) as f64 / w)
    }

    fn add(&mut self, v: f64) {
        let b = ((v * self.bins() as f64) as usize).min(self.bins() - 1);
        self.counts[b] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Shared probability mass `sum_b min(p_b, q_b)`; 0 is fully separated.
    pub fn overlap(&self, other: &Histogram) -> f64 {
        let (ta, tb) = (self.total().max(1) as f64, other.total().max(1) as f64);
        self.counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| (a as f64 / ta).min(b as f64 / tb))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialStats {
    /// Mean of LCSk++ / n.
    pub mean_normalized: f64,
    /// Sample standard deviation of LCSk++ / n (divisor `trials - 1`; 0 for one trial).
    pub stddev_normalized: f64,
    pub histogram: Histogram,
    pub trials: usize,
}

/// Per-trial normalized scores, in trial order.
pub fn trial_scores(config: &ExperimentConfig) -> Result<Vec<f64>> {
    config.validate()?;
    (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let (x, y) =
                config
                    .pair_class
                    .generate(config.n, &config.dist, config.trial_seed(t))?;
            Ok(lcskpp(&x, &y, config.k)? as f64 / config.n as f64)
        })
        .collect()
}

pub fn run_trials(config: &ExperimentConfig) -> Result<TrialStats> {
    Ok(summarize(&trial_scores(config)?))
}

fn summarize(scores: &[f64]) -> TrialStats {
    let trials = scores.len();
    let mean = scores.iter().sum::<f64>() / trials as f64;
    let stddev = if trials > 1 {
        let ss: f64 = scores.iter().map(|v| (v - mean) * (v - mean)).sum();
        (ss / (trials - 1) as f64).sqrt()
    } else {
        0.0
    };
    let mut histogram = Histogram::new(HISTOGRAM_BINS);
    for &v in scores {
        histogram.add(v);
    }
    TrialStats {
        mean_normalized: mean,
        stddev_normalized: stddev,
        histogram,
        trials,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityReport {
    pub unrelated: Experiment,
    pub similar: Experiment,
    /// Similar mean minus unrelated mean.
    pub mean_gap: f64,
    /// Whether the similar class scores higher on average.
    pub separated: bool,
    /// Histogram overlap mass in `[0, 1]`.
    pub overlap: f64,
}

/// Runs both classes on disjoint seed streams and compares them.
#[allow(clippy::too_many_arguments)]
pub fn separability_report(
    n: usize,
    k: usize,
    e_similar: f64,
    model: MutationModel,
    trials: usize,
    base_seed: Seed,
    dist: &AlphabetDistribution,
) -> Result<SeparabilityReport> {
    let config = |pair_class, stream: u64| ExperimentConfig {
        n,
        k,
        pair_class,
        trials,
        base_seed: base_seed.derive((1u64 << 40) + stream),
        dist: dist.clone(),
    };
    let similar_cfg = config(PairClass::Similar { e_similar, model }, 1);
    similar_cfg.validate()?;
    let unrelated = Experiment::run(config(PairClass::Unrelated, 0))?;
    let similar = Experiment::run(similar_cfg)?;
    let mean_gap = similar.stats.mean_normalized - unrelated.stats.mean_normalized;
    Ok(SeparabilityReport {
        mean_gap,
        separated: similar.stats.mean_normalized > unrelated.stats.mean_normalized,
        overlap: unrelated.stats.histogram.overlap(&similar.stats.histogram),
        unrelated,
        similar,
    })
}

/// A configuration together with its outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub stats: TrialStats,
}

impl Experiment {
    pub fn run(config: ExperimentConfig) -> Result<Self> {
        let stats = run_trials(&config)?;
        Ok(Self { config, stats })
    }
}

/// The `k x length x class` grid of the published score table: k in {10, 20},
/// n in {1000, 10000, 100000}, unrelated plus e in {0.20, 0.10, 0.05}.
/// `n = 100000` rows are slow and only included on request.
pub fn table_grid(trials: usize, base_seed: Seed, include_long: bool) -> Vec<ExperimentConfig> {
    let lengths: &[usize] = if include_long {
        &[1000, 10_000, 100_000]
    } else {
        &[1000, 10_000]
    };
    let classes = [
        PairClass::Unrelated,
        PairClass::similar(0.20),
        PairClass::similar(0.10),
        PairClass::similar(0.05),
    ];
    let mut configs = Vec::new();
    for k in [10, 20] {
        for &n in lengths {
            for pair_class in classes {
                let index = configs.len() as u64;
                configs.push(ExperimentConfig {
                    n,
                    k,
                    pair_class,
                    trials,
                    base_seed: base_seed.derive(index),
                    dist: AlphabetDistribution::dna_uniform(),
                });
            }
        }
    }
    configs
}

/// One line of the summary CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub k: usize,
    pub n: usize,
    /// `unrelated` or the similar-pair error rate.
    pub error: String,
    pub mean_normalized: f64,
    pub stddev_normalized: f64,
    pub trials: usize,
    pub seed: u64,
}

impl From<&Experiment> for TableRow {
    fn from(e: &Experiment) -> Self {
        Self {
            k: e.config.k,
            n: e.config.n,
            error: match e.config.pair_class.error_rate() {
                None => "unrelated".to_string(),
                Some(rate) => rate.to_string(),
            },
            mean_normalized: e.stats.mean_normalized,
            stddev_normalized: e.stats.stddev_normalized,
            trials: e.stats.trials,
            seed: e.config.base_seed.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramRow {
    pub bin_lo: f64,
    pub bin_hi: f64,
    pub count: u64,
}

/// Companion histogram path for row `index` of the table at `path`:
/// `dir/stem.csv` becomes `dir/stem_hist<index>.csv`.
pub fn histogram_path(path: &Path, index: usize) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}_hist{index}.csv"))
}

fn csv_writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(BufWriter::new(file)))
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    }
}

fn write_rows<T: Serialize>(path: &Path, header: &[&str], rows: &[T]) -> Result<()> {
    let mut w = csv_writer(path)?;
    if rows.is_empty() {
        w.write_record(header).map_err(csv_err(path))?;
    }
    for row in rows {
        w.serialize(row).map_err(csv_err(path))?;
    }
    let mut inner = w
        .into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?;
    inner.flush().map_err(|e| Error::io(path, e))
}

pub const TABLE_HEADER: [&str; 7] = [
    "k",
    "n",
    "error",
    "mean_normalized",
    "stddev_normalized",
    "trials",
    "seed",
];

/// Writes the summary table plus one histogram CSV per experiment.
pub fn write_table(experiments: &[Experiment], path: &Path) -> Result<()> {
    let rows: Vec<TableRow> = experiments.iter().map(TableRow::from).collect();
    write_rows(path, &TABLE_HEADER, &rows)?;
    for (index, e) in experiments.iter().enumerate() {
        let hist = &e.stats.histogram;
        let rows: Vec<HistogramRow> = (0..hist.bins())
            .map(|b| {
                let (bin_lo, bin_hi) = hist.bin_edges(b);
                HistogramRow {
                    bin_lo,
                    bin_hi,
                    count: hist.counts[b],
                }
            })
            .collect();
        write_rows(
            &histogram_path(path, index),
            &["bin_lo", "bin_hi", "count"],
            &rows,
        )?;
    }
    Ok(())
}

pub fn read_table(path: &Path) -> Result<Vec<TableRow>> {
    let mut reader = csv::Reader::from_path(path).map_err(csv_err(path))?;
    reader
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_err(path))
}

pub fn read_histogram(path: &Path) -> Result<Vec<HistogramRow>> {
    let mut reader = csv::Reader::from_path(path).map_err(csv_err(path))?;
    reader
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_err(path))
}
