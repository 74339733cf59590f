//! The `posimod` command line: load an instance file, run one operation and
//! print one JSON record per result.
//!
//! Exit codes: 0 success, 1 semantic negative (law violated, transcript
//! covers every candidate), 2 usage, parse or precondition error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instances::{adversary_witness, q_k_lower_bound, BuildOptions, InstanceDescriptor, QueryTranscript};
use crate::maximize::{brute_force_max, max_posimodular, step_bound};
use crate::minimize::{
    brute_force_min, candidate_pool, compute_extreme_sets, enumerate_all_minimizers, min_d_le_3, min_posimodular,
    OptimizationResult,
};
use crate::oracle::{format_value, CountMode, SetFunctionOracle};
use crate::subset::SubsetMask;
use crate::verify::{verify, Law, Verdict, ViolationWitness};

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk instance: `{"schema_version": 1, "range_bound": d?, "instance": {"family": ..}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range_bound: Option<u64>,
    pub instance: InstanceDescriptor,
}

impl InstanceFile {
    pub fn new(instance: InstanceDescriptor) -> Self {
        InstanceFile {
            schema_version: SCHEMA_VERSION,
            range_bound: None,
            instance,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files serialize")
    }

    pub fn build(&self, count_mode: CountMode) -> Result<SetFunctionOracle> {
        self.instance.build_with(BuildOptions {
            range_bound: self.range_bound,
            count_mode,
            record_queries: false,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceSummary {
    pub family: &'static str,
    pub n: usize,
    pub range_bound: Option<u64>,
}

impl InstanceSummary {
    fn of(file: &InstanceFile, oracle: &SetFunctionOracle) -> Self {
        InstanceSummary {
            family: file.instance.family_name(),
            n: oracle.n(),
            range_bound: oracle.range_bound(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Covered,
}

/// One machine-readable result record.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<SubsetMask>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sets: Option<Vec<SubsetMask>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    pub oracle_calls: u64,
    pub wall_time_ms: f64,
}

impl RunReport {
    fn new(command: &'static str) -> Self {
        RunReport {
            command,
            status: Status::Ok,
            instance: None,
            algorithm: None,
            witness: None,
            value: None,
            sets: None,
            violation: None,
            details: None,
            oracle_calls: 0,
            wall_time_ms: 0.0,
        }
    }

    fn optimum(mut self, result: &OptimizationResult) -> Self {
        self.algorithm = Some(result.algorithm.tag());
        self.witness = Some(result.witness);
        self.value = Some(format_value(&result.value));
        self.oracle_calls = result.oracle_calls;
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Violation | Status::Covered => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "posimod", version, about = "Optimize posimodular set functions given as instance files")]
pub struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Count every oracle query, not just distinct subsets.
    #[arg(long, global = true)]
    pub count_raw: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MinAlgorithm {
    /// `d3` for range bound at most 3, `general` otherwise, `brute` without a bound.
    Auto,
    Brute,
    D3,
    General,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a structural law exhaustively.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "posimodular", value_parser = parse_law)]
        law: Law,
    },
    /// Minimize over nonempty subsets.
    Min {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        algorithm: MinAlgorithm,
    },
    /// Maximize over nonempty subsets.
    Max {
        file: PathBuf,
        /// Use exhaustive search instead of the bounded-range algorithm.
        #[arg(long)]
        brute: bool,
    },
    /// List all extreme sets.
    Extreme { file: PathBuf },
    /// Stream every minimizer, one JSON line each.
    EnumMin {
        file: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Query lower bound for telling `g` from every `g_S`, and optionally an
    /// adversary set for a transcript.
    Lowerbound {
        n: usize,
        k: usize,
        /// JSON file `{"n": .., "queries": [[0,1,2], ..]}`.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Sizes of the intermediate structures of the general minimizer.
    Stats { file: PathBuf },
}

fn parse_law(s: &str) -> std::result::Result<Law, String> {
    Law::parse(s).ok_or_else(|| format!("unknown law {s:?} (posimodular, submodular, monotone, symmetric)"))
}

/// Parse arguments, run, print to `out`, and return the process exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    run(&cli, out, err)
}

/// Entry point of the `posimod` binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_from(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mode = if cli.count_raw { CountMode::Raw } else { CountMode::Memoized };
    let emit = |out: &mut dyn Write, report: &RunReport| {
        let text = if cli.pretty {
            serde_json::to_string_pretty(report)
        } else {
            serde_json::to_string(report)
        }
        .expect("reports serialize");
        let _ = writeln!(out, "{text}");
    };
    let result = match &cli.command {
        Command::EnumMin { file, limit } => cmd_enum_min(file, *limit, mode, &mut |r| emit(out, r)).map(|_| 0),
        command => execute(command, mode).map(|report| {
            emit(out, &report);
            report.exit_code()
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", serde_json::json!({ "error": e.to_string() }));
            2
        }
    }
}

/// Run any command except `enum-min` and return its report.
pub fn execute(command: &Command, mode: CountMode) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = match command {
        Command::Verify { file, law } => cmd_verify(file, *law, mode)?,
        Command::Min { file, algorithm } => cmd_min(file, *algorithm, mode)?,
        Command::Max { file, brute } => cmd_max(file, *brute, mode)?,
        Command::Extreme { file } => cmd_extreme(file, mode)?,
        Command::Lowerbound { n, k, transcript } => cmd_lowerbound(*n, *k, transcript.as_deref())?,
        Command::Stats { file } => cmd_stats(file, mode)?,
        Command::EnumMin { .. } => return Err(Error::Parse("enum-min streams; use run()".into())),
    };
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

fn load(file: &Path, mode: CountMode) -> Result<(InstanceFile, SetFunctionOracle)> {
    let f = InstanceFile::load(file)?;
    let oracle = f.build(mode)?;
    Ok((f, oracle))
}

pub fn cmd_verify(file: &Path, law: Law, mode: CountMode) -> Result<RunReport> {
    let (f, oracle) = load(file, mode)?;
    let mut report = RunReport::new("verify");
    report.instance = Some(InstanceSummary::of(&f, &oracle));
    report.details = Some(serde_json::json!({ "law": law }));
    if let Verdict::Violated(w) = verify(&oracle, law)? {
        report.status = Status::Violation;
        report.violation = Some(w);
    }
    report.oracle_calls = oracle.call_count();
    Ok(report)
}

pub fn cmd_min(file: &Path, algorithm: MinAlgorithm, mode: CountMode) -> Result<RunReport> {
    let (f, oracle) = load(file, mode)?;
    let result = match algorithm {
        MinAlgorithm::Brute => brute_force_min(&oracle)?,
        MinAlgorithm::D3 => min_d_le_3(&oracle)?,
        MinAlgorithm::General => min_posimodular(&oracle)?,
        MinAlgorithm::Auto => match oracle.range_bound() {
            None => brute_force_min(&oracle)?,
            Some(d) if d <= 3 => min_d_le_3(&oracle)?,
            Some(_) => min_posimodular(&oracle)?,
        },
    };
    let mut report = RunReport::new("min").optimum(&result);
    report.instance = Some(InstanceSummary::of(&f, &oracle));
    Ok(report)
}

pub fn cmd_max(file: &Path, brute: bool, mode: CountMode) -> Result<RunReport> {
    let (f, oracle) = load(file, mode)?;
    let result = if brute {
        brute_force_max(&oracle)?
    } else {
        max_posimodular(&oracle)?
    };
    let mut report = RunReport::new("max").optimum(&result);
    report.instance = Some(InstanceSummary::of(&f, &oracle));
    if !brute {
        let d = oracle.require_range_bound()?;
        report.details = Some(serde_json::json!({ "step_bound": step_bound(oracle.n(), d) }));
    }
    Ok(report)
}

pub fn cmd_extreme(file: &Path, mode: CountMode) -> Result<RunReport> {
    let (f, oracle) = load(file, mode)?;
    let sets = compute_extreme_sets(&oracle)?;
    let mut report = RunReport::new("extreme");
    report.instance = Some(InstanceSummary::of(&f, &oracle));
    report.details = Some(serde_json::json!({ "count": sets.len() }));
    report.sets = Some(sets);
    report.oracle_calls = oracle.call_count();
    Ok(report)
}

/// Streams one report per minimizer through `sink`; returns how many were emitted.
pub fn cmd_enum_min(
    file: &Path,
    limit: Option<usize>,
    mode: CountMode,
    sink: &mut dyn FnMut(&RunReport),
) -> Result<usize> {
    let start = Instant::now();
    let (_, oracle) = load(file, mode)?;
    let stream = enumerate_all_minimizers(&oracle)?;
    let value = format_value(&stream.min_value());
    let mut count = 0;
    for (i, x) in stream.take(limit.unwrap_or(usize::MAX)).enumerate() {
        let mut report = RunReport::new("enum-min");
        report.witness = Some(x);
        report.value = Some(value.clone());
        report.details = Some(serde_json::json!({ "index": i }));
        report.oracle_calls = oracle.call_count();
        report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        sink(&report);
        count += 1;
    }
    Ok(count)
}

#[derive(Debug, Deserialize)]
struct TranscriptFile {
    n: usize,
    queries: Vec<SubsetMask>,
}

pub fn cmd_lowerbound(n: usize, k: usize, transcript: Option<&Path>) -> Result<RunReport> {
    let q = q_k_lower_bound(n, k)?;
    let mut report = RunReport::new("lowerbound");
    report.value = Some(q.to_string());
    let mut details = serde_json::json!({
        "n": n,
        "k": k,
        "q_k": q.to_string(),
        "q_k_approx": q.to_f64(),
    });
    if let Some(path) = transcript {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let raw: TranscriptFile = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.n != n {
            return Err(Error::Parse(format!("transcript has n = {}, expected {n}", raw.n)));
        }
        let t = QueryTranscript::new(raw.n, raw.queries)?;
        details["queries"] = t.len().into();
        match adversary_witness(&t, k)? {
            Some(s) => report.witness = Some(s),
            None => report.status = Status::Covered,
        }
    }
    report.details = Some(details);
    Ok(report)
}

pub fn cmd_stats(file: &Path, mode: CountMode) -> Result<RunReport> {
    let (f, oracle) = load(file, mode)?;
    let pool = candidate_pool(&oracle)?;
    let n = oracle.n();
    let closure_bound: u64 = (0..=pool.d.min(n as u64)).map(|i| num_integer::binomial(n as u64, i)).sum();
    let mut report = RunReport::new("stats");
    report.instance = Some(InstanceSummary::of(&f, &oracle));
    report.details = Some(serde_json::json!({
        "minimal_unreachable": pool.unreachable.len(),
        "clauses": pool.phi.len(),
        "closures": pool.closures.len(),
        "closure_bound": closure_bound,
        "candidates": pool.candidates.len(),
    }));
    report.oracle_calls = oracle.call_count();
    Ok(report)
}
