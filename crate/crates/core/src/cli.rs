//! Command-line front end: `compute`, `simulate`, `suggest-k`.
//!
//! Results go to stdout (or `--out`), diagnostics to stderr. Exit status is
//! 0 on success, 1 on I/O failure and 2 on usage or parameter errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::harness::{self, Experiment, ExperimentConfig};
use crate::match_pairs::find_match_pairs_capped;
use crate::oracle::validate_chain;
use crate::sequence::{Alphabet, Sequence};
use crate::simmodel::{
    expected_match_pairs, k_fast, AlphabetDistribution, MutationModel, PairClass, Seed,
};
use crate::sweep::{sweep_pairs, Mode};

#[derive(Debug, Parser)]
#[command(name = "lcskpp", version, about = "LCSk++ similarity of long strings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute LCSk++ (or LCSk) between two sequences.
    Compute(ComputeArgs),
    /// Monte Carlo score statistics under the random pair model.
    Simulate(SimulateArgs),
    /// Suggest the smallest k keeping the match-pair count linear.
    SuggestK(SuggestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Fasta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Lcskpp,
    Lcsk,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Lcskpp => Mode::Lcskpp,
            ModeArg::Lcsk => Mode::Lcsk,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Unrelated,
    Similar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MutationArg {
    Redraw,
    ForceChange,
}

impl From<MutationArg> for MutationModel {
    fn from(m: MutationArg) -> Self {
        match m {
            MutationArg::Redraw => MutationModel::Redraw,
            MutationArg::ForceChange => MutationModel::ForceChange,
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// First sequence file.
    #[arg(long, conflicts_with = "x_lit", required_unless_present = "x_lit")]
    pub x: Option<PathBuf>,
    /// First sequence given inline.
    #[arg(long)]
    pub x_lit: Option<String>,
    /// Second sequence file.
    #[arg(long, conflicts_with = "y_lit", required_unless_present = "y_lit")]
    pub y: Option<PathBuf>,
    /// Second sequence given inline.
    #[arg(long)]
    pub y_lit: Option<String>,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
    /// FASTA record id to read from --x (default: first record).
    #[arg(long)]
    pub x_record: Option<String>,
    /// FASTA record id to read from --y (default: first record).
    #[arg(long)]
    pub y_record: Option<String>,
    /// Keep FASTA letter case instead of uppercasing.
    #[arg(long)]
    pub preserve_case: bool,
    /// Reject symbols outside this alphabet (e.g. dna, protein, uniform:01).
    #[arg(long)]
    pub alphabet: Option<String>,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "lcskpp")]
    pub mode: ModeArg,
    /// Print the matched index pairs, one "i<TAB>j" line each.
    #[arg(long)]
    pub reconstruct: bool,
    /// Report the match-pair count and elapsed time on stderr.
    #[arg(long)]
    pub stats: bool,
    /// Abort when the number of match pairs exceeds this.
    #[arg(long, default_value_t = 100_000_000)]
    pub max_pairs: usize,
    /// Write results here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Accepted for uniformity with other subcommands; the computation is sequential.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, required_unless_present = "table_grid")]
    pub n: Option<usize>,
    #[arg(long, required_unless_present = "table_grid")]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value = "similar")]
    pub class: ClassArg,
    /// Per-position mutation probability of similar pairs.
    #[arg(long = "e")]
    pub e_similar: Option<f64>,
    #[arg(long, value_enum, default_value = "redraw")]
    pub mutation: MutationArg,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Symbol distribution (acgt-uniform, protein-uniform, uniform:SYMBOLS, A=0.4,C=0.6,...).
    #[arg(long, default_value = "acgt-uniform")]
    pub alphabet: String,
    /// Run unrelated and similar classes and report their separation.
    #[arg(long)]
    pub both_classes: bool,
    /// Run the k in {10, 20} x n in {1000, 10000} x class grid.
    #[arg(long, conflicts_with_all = ["n", "k", "both_classes"])]
    pub table_grid: bool,
    /// Add n = 100000 to the grid.
    #[arg(long, requires = "table_grid")]
    pub include_long: bool,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Summary CSV path; histograms are written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuggestArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value = "acgt-uniform")]
    pub alphabet: String,
}

/// Parses a symbol distribution.
///
/// Accepts `acgt-uniform` (or `dna`), `protein-uniform` (or `protein`),
/// `uniform:SYMBOLS`, or an explicit list like `A=0.5,C=0.3,G=0.1,T=0.1`.
pub fn parse_distribution(spec: &str) -> Result<AlphabetDistribution> {
    match spec {
        "acgt-uniform" | "dna" => return AlphabetDistribution::uniform(Alphabet::DNA),
        "protein-uniform" | "protein" => return AlphabetDistribution::uniform(Alphabet::PROTEIN),
        _ => {}
    }
    if let Some(symbols) = spec.strip_prefix("uniform:") {
        return AlphabetDistribution::uniform(symbols.as_bytes());
    }
    let mut symbols = Vec::new();
    let mut probs = Vec::new();
    for item in spec.split(',') {
        let (sym, p) = item
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("cannot parse alphabet {spec:?}")))?;
        let sym = sym.trim().as_bytes();
        if sym.len() != 1 {
            return Err(Error::invalid(format!("symbol {sym:?} must be one byte")));
        }
        symbols.push(sym[0]);
        probs.push(
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("bad probability {p:?}")))?,
        );
    }
    AlphabetDistribution::new(&symbols, &probs)
}

fn parse_alphabet(spec: &str) -> Result<Alphabet> {
    match spec {
        "acgt" | "acgt-uniform" | "dna" => Ok(Alphabet::dna()),
        "protein" | "protein-uniform" => Alphabet::new(Alphabet::PROTEIN),
        _ => Ok(parse_distribution(spec)?.alphabet().clone()),
    }
}

/// Sequence of the chosen FASTA record (the first one when `id` is `None`).
pub fn parse_fasta(text: &[u8], id: Option<&str>) -> Result<Vec<u8>> {
    let mut current: Option<bool> = None;
    let mut seq = Vec::new();
    let mut found = false;
    for line in text.split(|&b| b == b'\n') {
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        if let Some(header) = line.strip_prefix(b">") {
            if found {
                break;
            }
            let name = header
                .split(|b| b.is_ascii_whitespace())
                .next()
                .unwrap_or_default();
            let selected = id.is_none_or(|want| want.as_bytes() == name);
            current = Some(selected);
            found = selected;
        } else if current == Some(true) {
            seq.extend(line.iter().filter(|b| !b.is_ascii_whitespace()));
        } else if current.is_none() && line.iter().any(|b| !b.is_ascii_whitespace()) {
            return Err(Error::Format(
                "FASTA input must start with a '>' header".into(),
            ));
        }
    }
    if !found {
        return Err(Error::Format(match id {
            Some(id) => format!("no FASTA record named {id:?}"),
            None => "no FASTA records".into(),
        }));
    }
    Ok(seq)
}

fn load_input(
    path: Option<&Path>,
    literal: Option<&str>,
    args: &ComputeArgs,
    record: Option<&str>,
) -> Result<Sequence> {
    let raw = match (path, literal) {
        (_, Some(lit)) => lit.as_bytes().to_vec(),
        (Some(p), None) => std::fs::read(p).map_err(|e| Error::io(p, e))?,
        (None, None) => return Err(Error::invalid("missing input")),
    };
    let mut bytes = match args.format {
        Format::Fasta => {
            let mut s = parse_fasta(&raw, record)?;
            if !args.preserve_case {
                s.make_ascii_uppercase();
            }
            s
        }
        Format::Plain if literal.is_some() => raw,
        Format::Plain => {
            let mut s = raw;
            if s.last() == Some(&b'\n') {
                s.pop();
                if s.last() == Some(&b'\r') {
                    s.pop();
                }
            }
            s
        }
    };
    match &args.alphabet {
        Some(spec) => Sequence::with_alphabet(std::mem::take(&mut bytes), &parse_alphabet(spec)?),
        None => Ok(Sequence::new(bytes)),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn compute(args: &ComputeArgs) -> Result<()> {
    if args.k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let x = load_input(
        args.x.as_deref(),
        args.x_lit.as_deref(),
        args,
        args.x_record.as_deref(),
    )?;
    let y = load_input(
        args.y.as_deref(),
        args.y_lit.as_deref(),
        args,
        args.y_record.as_deref(),
    )?;

    let started = Instant::now();
    let pairs = find_match_pairs_capped(&x, &y, args.k, args.max_pairs)?;
    let r = pairs.len();
    let result = sweep_pairs(pairs, args.k, args.mode.into())?;
    let elapsed = started.elapsed();

    let mut text = format!("{}\n", result.value);
    if args.reconstruct {
        let cells = result.reconstruct();
        let (xi, yj): (Vec<_>, Vec<_>) = cells.iter().copied().unzip();
        debug_assert!(validate_chain(&x, &y, args.k, &xi, &yj));
        for (i, j) in cells {
            writeln!(text, "{i}\t{j}").expect("write to string");
        }
    }
    emit(args.out.as_deref(), &text)?;
    if args.stats {
        eprintln!("match_pairs={r}");
        eprintln!("elapsed_seconds={:.6}", elapsed.as_secs_f64());
    }
    Ok(())
}

fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(Error::invalid("--threads must be at least 1"));
        }
        builder = builder.num_threads(t);
    }
    builder
        .build()
        .map_err(|e| Error::invalid(format!("cannot start thread pool: {e}")))
}

fn summary_line(stats: &harness::TrialStats) -> String {
    format!(
        "mean={} stddev={}",
        stats.mean_normalized, stats.stddev_normalized
    )
}

pub fn simulate(args: &SimulateArgs) -> Result<()> {
    let dist = parse_distribution(&args.alphabet)?;
    let pool = thread_pool(args.threads)?;
    let seed = Seed(args.seed);
    let mut text = String::new();
    let experiments = pool.install(|| -> Result<Vec<Experiment>> {
        if args.table_grid {
            let mut done = Vec::new();
            for mut config in harness::table_grid(args.trials, seed, args.include_long) {
                if let PairClass::Similar { model, .. } = &mut config.pair_class {
                    *model = args.mutation.into();
                }
                config.dist = dist.clone();
                let e = Experiment::run(config)?;
                let row = harness::TableRow::from(&e);
                writeln!(
                    text,
                    "k={} n={} error={} {}",
                    row.k,
                    row.n,
                    row.error,
                    summary_line(&e.stats)
                )
                .expect("write to string");
                done.push(e);
            }
            return Ok(done);
        }
        let (n, k) = (args.n.unwrap_or_default(), args.k.unwrap_or_default());
        let e_similar = || {
            args.e_similar
                .ok_or_else(|| Error::invalid("--e is required for similar pairs"))
        };
        if args.both_classes {
            let report = harness::separability_report(
                n,
                k,
                e_similar()?,
                args.mutation.into(),
                args.trials,
                seed,
                &dist,
            )?;
            writeln!(text, "unrelated {}", summary_line(&report.unrelated.stats))
                .expect("write to string");
            writeln!(text, "similar {}", summary_line(&report.similar.stats))
                .expect("write to string");
            writeln!(
                text,
                "gap={} separated={} overlap={}",
                report.mean_gap, report.separated, report.overlap
            )
            .expect("write to string");
            return Ok(vec![report.unrelated, report.similar]);
        }
        let pair_class = match args.class {
            ClassArg::Unrelated => PairClass::Unrelated,
            ClassArg::Similar => PairClass::Similar {
                e_similar: e_similar()?,
                model: args.mutation.into(),
            },
        };
        let e = Experiment::run(ExperimentConfig {
            n,
            k,
            pair_class,
            trials: args.trials,
            base_seed: seed,
            dist: dist.clone(),
        })?;
        writeln!(text, "{}", summary_line(&e.stats)).expect("write to string");
        Ok(vec![e])
    })?;
    if let Some(path) = &args.out {
        harness::write_table(&experiments, path)?;
    }
    print!("{text}");
    Ok(())
}

pub fn suggest_k(args: &SuggestArgs) -> Result<()> {
    if args.n == 0 || args.m == 0 {
        return Err(Error::invalid("--n and --m must be at least 1"));
    }
    let dist = parse_distribution(&args.alphabet)?;
    let k = k_fast(args.n, args.m, &dist);
    println!("k={k}");
    println!("S={}", dist.match_probability());
    println!(
        "expected_match_pairs={}",
        expected_match_pairs(args.n, args.m, k, &dist)
    );
    Ok(())
}

/// Parses `args` and runs the command, returning the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Simulate(a) => simulate(a),
        Command::SuggestK(a) => suggest_k(a),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
