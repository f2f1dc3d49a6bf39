//! `cayley` command line: field construction, clique numbers, theorem
//! verification over parameter grids, JSON/CSV reports.
//!
//! Exit codes: 0 when every report passes (or the command is informational),
//! 1 when any verification FAILs, 2 on usage and module errors.

use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use cayley_core::arith::prime_power;
use cayley_core::geometry::{directions_of_with, grid_of, is_collinear, DirectionSetRecord};
use cayley_core::gf::DEFAULT_MAX_FIELD_BITS;
use cayley_core::theorems::{
    character_margin, square_field, verify_gp_theorem, verify_main_conclusion, vlm_verify, Config,
    GpCaseInput, Verdict, VerificationReport, DEFAULT_SEED,
};
use cayley_core::{CayleyGraph, CliqueOptions, EltSet, Field, FieldSummary, Parallelism, SetSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "cayley", version, about = "Clique computations on Cayley graphs over F_{q^2}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: number of processors). 1 runs sequentially.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, env = "CAYLEY_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, env = "CAYLEY_MAX_FIELD_BITS", default_value_t = DEFAULT_MAX_FIELD_BITS)]
    pub max_field_bits: u32,
    /// Report elapsed_ms as 0 so output is byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite fields.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Generalized Paley graphs GP(q^2, d).
    #[command(subcommand)]
    Gp(GpCmd),
    /// Theorem verification.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Directions determined by A x A in AG(2, q^2).
    Directions(SetArgs),
    /// Character margin of a set for a character of the given order.
    Margin(MarginArgs),
}

#[derive(Debug, Subcommand)]
pub enum FieldCmd {
    Build {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum GpCmd {
    /// Clique number with one witness through 0.
    Omega {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u64,
    },
    /// All cliques of a given size through the anchor vertices.
    Cliques {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u64,
        /// Comma-separated element codes.
        #[arg(long, default_value = "0,1")]
        through: CodeList,
        /// Clique size (default q).
        #[arg(long)]
        size: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Paley graphs of square order, odd prime powers in the range.
    Vlm {
        #[arg(long)]
        q: Span,
    },
    /// The main clique theorem for one connection set.
    Main {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        set: SetSpec,
    },
    /// The coset-union theorem over a (q, d, k) grid.
    Gp {
        #[arg(long)]
        q: Span,
        #[arg(long)]
        d: Span,
        #[arg(long, default_value = "0")]
        k: Span,
    },
}

#[derive(Debug, Args)]
pub struct SetArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub set: SetSpec,
}

#[derive(Debug, Args)]
pub struct MarginArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub set: SetSpec,
    #[arg(long)]
    pub order: u64,
}

/// Inclusive integer span `a..b`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub fn values(self) -> impl Iterator<Item = u64> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("`{t}` is not a non-negative integer"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b)?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Span { lo, hi })
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeList(pub Vec<u32>);

impl FromStr for CodeList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| format!("`{t}` is not an element code")))
            .collect::<Result<_, _>>()
            .map(CodeList)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("no reports to emit")]
    EmptyReportList,
    #[error("write failed: {0}")]
    Write(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cayley_core::Error),
    #[error(transparent)]
    Io(#[from] IoError),
}

impl CliError {
    /// Short machine-readable kind, e.g. `IndexNotDividing`.
    pub fn kind(&self) -> String {
        match self {
            CliError::Usage(_) => "UsageError".into(),
            CliError::Io(e) => match e {
                IoError::EmptyReportList => "EmptyReportList".into(),
                _ => "IoError".into(),
            },
            CliError::Core(e) => {
                let dbg = format!("{e:?}");
                dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.to_string() }).to_string()
    }
}

pub const CSV_COLUMNS: [&str; 12] = [
    "theorem",
    "q",
    "d",
    "k",
    "set",
    "branch_a",
    "branch_b",
    "verdict",
    "omega",
    "witness_count",
    "elapsed_ms",
    "reason",
];

/// Serializes reports as a JSON array or as CSV with [`CSV_COLUMNS`].
pub fn emit_report<W: Write>(reports: &[VerificationReport], format: Format, mut out: W) -> Result<(), IoError> {
    if reports.is_empty() {
        return Err(IoError::EmptyReportList);
    }
    match format {
        Format::Json => {
            serde_json::to_writer(&mut out, reports).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_COLUMNS)?;
            for r in reports {
                let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
                let flag = |k: &str| r.hypothesis.get(k).map(|b| b.to_string()).unwrap_or_default();
                w.write_record([
                    r.theorem.clone(),
                    r.q.to_string(),
                    opt(r.d),
                    opt(r.k),
                    r.set.clone(),
                    flag("branch_a"),
                    flag("branch_b"),
                    r.verdict.as_str().to_string(),
                    opt(r.omega.map(|o| o as u64)),
                    r.witnesses.len().to_string(),
                    r.elapsed_ms.to_string(),
                    r.reason.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct DirectionsOutput {
    field: FieldSummary,
    set: String,
    points: usize,
    collinear: bool,
    count: usize,
    directions: DirectionSetRecord,
}

enum Output {
    Info(String),
    Reports(Vec<VerificationReport>),
}

impl Cli {
    fn config(&self) -> Config {
        Config {
            max_field_bits: self.max_field_bits,
            parallelism: if self.jobs == Some(1) {
                Parallelism::Sequential
            } else {
                Parallelism::Parallel
            },
            seed: self.seed,
        }
    }

    fn field(&self, q: u64) -> Result<std::sync::Arc<Field>, CliError> {
        Ok(square_field(q, self.max_field_bits)?)
    }
}

fn info<T: Serialize>(value: &T) -> Output {
    Output::Info(serde_json::to_string(value).expect("serializable output"))
}

fn gp_graph(cli: &Cli, q: u64, d: u64) -> Result<CayleyGraph, CliError> {
    Ok(CayleyGraph::generalized_paley(&cli.field(q)?, d)?)
}

fn gp_grid(cli: &Cli, qs: Span, ds: Span, ks: Span) -> Result<Vec<VerificationReport>, CliError> {
    let cfg = cli.config();
    let jobs: Vec<(u64, u64, u64)> = qs
        .values()
        .flat_map(|q| ds.values().flat_map(move |d| ks.values().map(move |k| (q, d, k))))
        .collect();
    let run = |&(q, d, k): &(u64, u64, u64)| -> Result<VerificationReport, CliError> {
        let skip = |why: String| {
            let label = SetSpec::Cosets { d, js: (0..=k as i64).collect() }.to_string();
            let mut r = VerificationReport::skipped("thm-gp", q, label, why);
            r.d = Some(d);
            r.k = Some(k);
            r
        };
        if prime_power(q).is_none() {
            return Ok(skip(format!("q = {q} is not a prime power")));
        }
        let n1 = q * q - 1;
        if d < 2 || n1 % d != 0 {
            return Ok(skip(format!("d = {d} does not divide q^2-1 = {n1}")));
        }
        match verify_gp_theorem(GpCaseInput::new(q, d, k), &cfg) {
            Ok(r) => Ok(r),
            Err(cayley_core::Error::NotSymmetric) => Ok(skip("S is not symmetric (S ≠ -S)".into())),
            Err(cayley_core::Error::NotApplicable(why)) => Ok(skip(why)),
            Err(e) => Err(e.into()),
        }
    };
    let results: Vec<_> = if cfg.parallelism == Parallelism::Sequential {
        jobs.iter().map(run).collect()
    } else {
        jobs.par_iter().map(run).collect()
    };
    results.into_iter().collect()
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let cfg = cli.config();
    let clique_opts = CliqueOptions {
        exhaustive: false,
        parallelism: cfg.parallelism,
    };
    Ok(match &cli.command {
        Command::Field(FieldCmd::Build { p, m }) => {
            info(&Field::with_cap(*p, *m, cli.max_field_bits)?.summary())
        }
        Command::Gp(GpCmd::Omega { q, d }) => {
            let mut r = gp_graph(cli, *q, *d)?.clique_number_with(clique_opts);
            if cli.no_timing {
                r.elapsed = 0;
            }
            info(&r)
        }
        Command::Gp(GpCmd::Cliques { q, d, through, size }) => {
            let g = gp_graph(cli, *q, *d)?;
            let anchors = EltSet::from_codes(g.field(), through.0.iter().copied())?;
            let size = size.unwrap_or(*q as usize);
            let mut r = g.cliques_through_with(&anchors, size, cfg.parallelism)?;
            if cli.no_timing {
                r.elapsed = 0;
            }
            info(&r)
        }
        Command::Verify(VerifyCmd::Vlm { q }) => {
            let qs = q.values().filter(|&q| q % 2 == 1 && prime_power(q).is_some());
            Output::Reports(qs.map(|q| vlm_verify(q, &cfg)).collect::<Result<_, _>>()?)
        }
        Command::Verify(VerifyCmd::Main { q, set }) => {
            let field = cli.field(*q)?;
            let s = set.resolve(&field)?;
            let mut r = verify_main_conclusion(&field, &s)?;
            r.set = set.to_string();
            Output::Reports(vec![r])
        }
        Command::Verify(VerifyCmd::Gp { q, d, k }) => Output::Reports(gp_grid(cli, *q, *d, *k)?),
        Command::Directions(SetArgs { q, set }) => {
            let field = cli.field(*q)?;
            let a = set.resolve(&field)?;
            let u = grid_of(&a)?;
            let dirs = directions_of_with(&u, cfg.parallelism)?;
            info(&DirectionsOutput {
                field: field.summary(),
                set: set.to_string(),
                points: u.len(),
                collinear: is_collinear(&u),
                count: dirs.len(),
                directions: dirs.to_record(),
            })
        }
        Command::Margin(MarginArgs { q, set, order }) => {
            let field = cli.field(*q)?;
            info(&character_margin(&field, &set.resolve(&field)?, *order)?)
        }
    })
}

/// Runs a parsed command and writes its output; returns the exit code.
pub fn run(cli: &Cli) -> Result<i32, CliError> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Verify(_)) {
        return Err(CliError::Usage("csv output is only available for `verify` reports".into()));
    }
    let output = match cli.jobs {
        Some(0) => return Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| dispatch(cli))?,
        None => dispatch(cli)?,
    };
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(io::BufWriter::new(File::create(path).map_err(IoError::from)?)),
        None => Box::new(io::stdout().lock()),
    };
    let code = match output {
        Output::Info(value) => {
            writeln!(sink, "{value}").map_err(IoError::from)?;
            0
        }
        Output::Reports(mut reports) => {
            for r in &mut reports {
                r.seed = Some(cli.seed);
                if cli.no_timing {
                    r.elapsed_ms = 0;
                }
            }
            emit_report(&reports, cli.format, &mut sink)?;
            i32::from(reports.iter().any(|r| r.verdict == Verdict::Fail))
        }
    };
    sink.flush().map_err(IoError::from)?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(verdict: Verdict) -> VerificationReport {
        let mut r = VerificationReport::new("thm-main", 5, "squares");
        r.hypothesis.insert("branch_a".into(), false);
        r.hypothesis.insert("branch_b".into(), true);
        r.witnesses = vec![vec![0, 1, 7, 13, 19]];
        r.verdict = verdict;
        r.elapsed_ms = 4;
        r
    }

    #[test]
    fn spans() {
        assert_eq!("3..13".parse::<Span>().unwrap(), Span { lo: 3, hi: 13 });
        assert_eq!("7".parse::<Span>().unwrap(), Span { lo: 7, hi: 7 });
        assert!("5..3".parse::<Span>().is_err());
        assert!("a..3".parse::<Span>().is_err());
        assert_eq!("3..5".parse::<Span>().unwrap().values().collect::<Vec<_>>(), vec![3, 4, 5]);
    }

    #[test]
    fn code_lists() {
        assert_eq!("0,1".parse::<CodeList>().unwrap(), CodeList(vec![0, 1]));
        assert!("0,x".parse::<CodeList>().is_err());
    }

    #[test]
    fn csv_single_row() {
        let mut buf = Vec::new();
        emit_report(&[report(Verdict::Pass)], Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_COLUMNS.join(","));
        assert_eq!(lines[1], "thm-main,5,,,squares,false,true,PASS,,1,4,");
        assert_eq!(lines.len(), 2);
    }

    #[test]
    fn skipped_rows_carry_reason() {
        let r = VerificationReport::skipped("thm-gp", 5, "cosets(7;0)", "d = 7 does not divide q^2-1 = 24");
        let mut buf = Vec::new();
        emit_report(&[report(Verdict::Pass), r], Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().nth(2).unwrap().contains(",SKIP,"));
        assert!(text.contains("does not divide"));
    }

    #[test]
    fn empty_list_is_an_error() {
        let err = emit_report(&[], Format::Json, Vec::new()).unwrap_err();
        assert!(matches!(err, IoError::EmptyReportList));
    }

    #[test]
    fn json_roundtrip() {
        let reports = vec![report(Verdict::Pass), report(Verdict::Inapplicable)];
        let mut buf = Vec::new();
        emit_report(&reports, Format::Json, &mut buf).unwrap();
        let back: Vec<VerificationReport> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, reports);
    }

    #[test]
    fn error_kinds() {
        let e = CliError::from(cayley_core::Error::IndexNotDividing { d: 7, group_order: 24 });
        assert_eq!(e.kind(), "IndexNotDividing");
        let json: serde_json::Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(json["error"], "IndexNotDividing");
        assert_eq!(CliError::from(cayley_core::Error::NotSymmetric).kind(), "NotSymmetric");
    }
}
