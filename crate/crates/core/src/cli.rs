//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags, unreadable
//! inputs), 2 when a certificate fails verification or a classification
//! runs into a contradiction. Reports go to stdout, diagnostics to stderr.
//! `QX_THREADS` caps the worker threads used by `classify`, `check` and
//! `summarize`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::classify::{
    self, classify_range, load_certificates, load_registry, store_certificate, ClassifyError,
    ClassifyOptions, Format, StoreError,
};
use crate::criteria::CriterionId;
use crate::search::{Budget, Exhaustion, Limit, SearchStatus, SplitterSearch};
use crate::splitting::{lattice_basis, Arms, Certificate, QuasiCrossShape};

pub const THREADS_VAR: &str = "QX_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "quasicross", version, about = "Lattice tilings by quasi-crosses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify every dimension 1..=max-n for one shape.
    Classify(RangeArgs),
    /// Show every criterion outcome for a single dimension.
    Check(CheckArgs),
    /// Search for a splitting of Z_q.
    Search(SearchArgs),
    /// Verify stored or inline certificates.
    Verify(VerifyArgs),
    /// Aggregate statistics for a classification run.
    Summarize(RangeArgs),
}

#[derive(Debug, Args)]
struct ShapeArgs {
    #[arg(long)]
    kplus: u64,
    #[arg(long)]
    kminus: u64,
}

impl ShapeArgs {
    fn arms(&self) -> Result<Arms, Failure> {
        Arms::new(self.kplus, self.kminus).map_err(Failure::usage)
    }
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Registry JSON of dimensions with known tilings.
    #[arg(long)]
    registry: Option<PathBuf>,
    /// JSON-lines certificate store.
    #[arg(long)]
    certificates: Option<PathBuf>,
    /// Comma-separated criteria to run, in attribution order.
    #[arg(long, value_delimiter = ',', conflicts_with = "dry_run")]
    criteria: Option<Vec<CriterionId>>,
    /// Run no criteria; only tilings from the inputs are reported.
    #[arg(long)]
    dry_run: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct RangeArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_n: u64,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[command(flatten)]
    input: InputArgs,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["q", "n"]))]
struct SearchArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: Option<u64>,
    #[arg(long)]
    node_budget: Option<u64>,
    /// Advisory wall-clock limit; results may then vary between runs.
    #[arg(long)]
    time_budget_ms: Option<u64>,
    /// Count all splitter sets instead of stopping at the first one.
    #[arg(long)]
    count: bool,
    #[arg(long, default_value = "certificates.jsonl")]
    certificates: PathBuf,
    /// Do not append a found splitting to the certificate store.
    #[arg(long)]
    no_store: bool,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["certificates", "q"]))]
struct VerifyArgs {
    #[arg(long)]
    certificates: Option<PathBuf>,
    #[arg(long, requires_all = ["kplus", "kminus", "splitters"])]
    q: Option<u64>,
    #[arg(long)]
    kplus: Option<u64>,
    #[arg(long)]
    kminus: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    splitters: Option<Vec<u64>>,
    /// Also print a basis of the tiling lattice.
    #[arg(long)]
    basis: bool,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(e: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }

    fn failed(e: impl ToString) -> Self {
        Self {
            code: EXIT_FAILED,
            message: e.to_string(),
        }
    }
}

impl From<StoreError> for Failure {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::Parse { .. } | StoreError::Certificate { .. } => Failure::failed(e),
            StoreError::Io { .. } | StoreError::Registry { .. } => Failure::usage(e),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Contradiction { .. } | ClassifyError::Certificate(_) => Failure::failed(e),
            _ => Failure::usage(e),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e)
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{rendered}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Classify(args) => {
            let (c, format) = classify_from(&args.shape, args.max_n, &args.input)?;
            out.write_all(classify::render_verdicts(&c, format).as_bytes())?;
        }
        Command::Summarize(args) => {
            let (c, format) = classify_from(&args.shape, args.max_n, &args.input)?;
            let summary = classify::summarize(&c);
            out.write_all(classify::render_summary(&summary, format).as_bytes())?;
        }
        Command::Check(args) => {
            let (c, format) = classify_from(&args.shape, args.n, &args.input)?;
            let report = c.get(args.n).expect("classified through n");
            out.write_all(classify::render_check(report, format).as_bytes())?;
        }
        Command::Search(args) => search(&args, out, err)?,
        Command::Verify(args) => verify(&args, out)?,
    }
    Ok(())
}

fn threads() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(Failure::usage(format!(
                "{THREADS_VAR} must be a positive integer, got `{v}`"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn classify_from(
    shape: &ShapeArgs,
    n_max: u64,
    input: &InputArgs,
) -> Result<(classify::Classification, Format), Failure> {
    let arms = shape.arms()?;
    let registry = input.registry.as_deref().map(load_registry).transpose()?;
    let certificates = match &input.certificates {
        Some(path) => load_certificates(path)?,
        None => Vec::new(),
    };
    let criteria = if input.dry_run {
        Vec::new()
    } else {
        let mut chosen = input.criteria.clone().unwrap_or_else(|| CriterionId::ALL.to_vec());
        chosen.sort_unstable();
        chosen.dedup();
        chosen
    };
    let options = ClassifyOptions::default()
        .with_criteria(criteria)
        .with_threads(threads()?);
    let c = classify_range(arms, n_max, registry.as_ref(), &certificates, &options)?;
    Ok((c, input.format))
}

fn search(args: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let arms = args.shape.arms()?;
    let n = match (args.q, args.n) {
        (Some(q), _) => arms.dimension_for_order(q).ok_or_else(|| {
            Failure::usage(format!("q = {q} is not of the form n({}) + 1", arms.total()))
        })?,
        (None, Some(n)) => n,
        (None, None) => unreachable!("clap requires --q or --n"),
    };
    let shape = arms.at(n).map_err(Failure::usage)?;
    let mut budget = Budget {
        max_nodes: args.node_budget,
        max_time: None,
    };
    if let Some(ms) = args.time_budget_ms {
        budget = budget.with_time(Duration::from_millis(ms));
    }
    let multipliers = shape.multiplier_set();
    let searcher = SplitterSearch::new(&multipliers).budget(budget);

    writeln!(out, "shape      {shape}")?;
    writeln!(out, "q          {}", shape.q())?;
    if args.count {
        let outcome = searcher.count();
        match outcome.interrupted {
            None => writeln!(out, "count      {}", outcome.count)?,
            Some(limit) => {
                writeln!(out, "count      >= {}", outcome.count)?;
                writeln!(out, "stopped    {}", describe_limit(limit))?;
            }
        }
        writeln!(out, "nodes      {}", outcome.stats.nodes)?;
        return Ok(());
    }

    let outcome = searcher.find();
    match &outcome.status {
        SearchStatus::Found(splitting) => {
            writeln!(out, "status     found")?;
            writeln!(out, "splitters  {}", join(splitting.splitters()))?;
        }
        SearchStatus::Exhausted(Exhaustion::TreeClosed) => {
            writeln!(out, "status     none")?;
        }
        SearchStatus::Exhausted(Exhaustion::Indivisible { q, multipliers }) => {
            writeln!(out, "status     none ({multipliers} does not divide {})", q - 1)?;
        }
        SearchStatus::TimedOut(limit) => {
            writeln!(out, "status     undecided")?;
            writeln!(out, "stopped    {}", describe_limit(*limit))?;
        }
    }
    writeln!(out, "nodes      {}", outcome.stats.nodes)?;

    if let (Some(splitting), false) = (outcome.splitting(), args.no_store) {
        let cert = Certificate::from_splitting(arms, splitting);
        let written = store_certificate(&args.certificates, &cert)?;
        let note = if written { "stored in" } else { "already in" };
        writeln!(err, "certificate {note} {}", args.certificates.display())?;
    }
    Ok(())
}

fn describe_limit(limit: Limit) -> String {
    match limit {
        Limit::Nodes(n) => format!("node budget {n}"),
        Limit::WallClock(d) => format!("time budget {} ms", d.as_millis()),
    }
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let certificates = match (&args.certificates, args.q) {
        (Some(path), _) => load_certificates(path)?,
        (None, Some(q)) => {
            let cert = Certificate {
                q,
                k_plus: args.kplus.expect("required by clap"),
                k_minus: args.kminus.expect("required by clap"),
                splitters: args.splitters.clone().expect("required by clap"),
            };
            vec![cert]
        }
        (None, None) => unreachable!("clap requires an input"),
    };
    for cert in &certificates {
        let splitting = cert.to_verified_splitting().map_err(Failure::failed)?;
        let shape: QuasiCrossShape = cert.shape().map_err(Failure::failed)?;
        writeln!(out, "ok {shape} q={} splitters={}", cert.q, join(splitting.splitters()))?;
        if args.basis {
            let basis = lattice_basis(&splitting).map_err(Failure::failed)?;
            for row in basis.rows() {
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                writeln!(out, "  {}", cells.join(" "))?;
            }
        }
    }
    Ok(())
}

fn join(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Default location of a data file shipped with the crate.
pub fn data_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("quasicross").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&["classify", "--kplus", "3"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["classify", "-k", "3"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        let (code, _, err) = run_args(&["classify", "--kplus", "1", "--kminus", "3", "--max-n", "4"]);
        assert_eq!(code, EXIT_USAGE, "{err}");
        let (code, _, _) = run_args(&[
            "classify", "--kplus", "3", "--kminus", "1", "--max-n", "4", "--criteria", "nope",
        ]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("classify"));
    }

    #[test]
    fn search_by_dimension_without_storing() {
        let (code, out, _) = run_args(&[
            "search", "--kplus", "3", "--kminus", "1", "--n", "6", "--no-store",
        ]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("status     found"), "{out}");
        let (code, _, _) = run_args(&["search", "--kplus", "3", "--kminus", "1", "--q", "24"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn inline_verify() {
        let ok = ["verify", "--q", "25", "--kplus", "3", "--kminus", "1", "--splitters", "1,5,6,11,16,21"];
        assert_eq!(run_args(&ok).0, EXIT_OK);
        let bad = ["verify", "--q", "25", "--kplus", "3", "--kminus", "1", "--splitters", "1,5,6,11,16,22"];
        let (code, _, err) = run_args(&bad);
        assert_eq!(code, EXIT_FAILED);
        assert!(err.contains("collision"), "{err}");
    }
}
