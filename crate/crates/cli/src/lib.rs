//! Command-line front end for `enorb-core`: orbit and poset queries, quiver
//! strata reports, the verification campaign and the self-test suites.

pub mod campaign;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use enorb_core::{
    count_strata, enumerate_bipartitions, enumerate_strata_upto, generic_point_jacobian, quiver_data, selftest, Bipartition, Error as CoreError,
};
use serde::Serialize;
use serde_json::json;

pub use campaign::{VerificationRecord, TOOL_VERSION};

/// Largest size accepted by `orbits` and `hasse`.
pub const MAX_N: usize = 20;
/// Largest size accepted by `verify`; sizes 8 and 9 take hours.
pub const MAX_VERIFY_N: usize = 9;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cache {}: {source}", path.display())]
    Cache { path: PathBuf, source: std::io::Error },
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for bad input, 3 for internal failures such as arithmetic overflow.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                CoreError::Overflow | CoreError::ChainMembership { .. } => 3,
                _ => 2,
            },
            CliError::Cache { .. } | CliError::Io(_) => 3,
        }
    }
}

/// What a successful command concluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PartSel {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
    All,
}

impl PartSel {
    pub fn parts(self) -> Vec<u8> {
        match self {
            PartSel::One => vec![1],
            PartSel::Two => vec![2],
            PartSel::Three => vec![3],
            PartSel::All => vec![1, 2, 3],
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "enorb", version, about = "Enhanced nilpotent orbits, their closures and enhanced quiver varieties")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the bipartitions of n with their orbit dimensions.
    Orbits {
        #[arg(long)]
        n: usize,
    },
    /// Decide whether the first orbit lies in the closure of the second.
    Closure { lower: String, upper: String },
    /// Covering relations of the closure order on bipartitions of n.
    Hasse {
        #[arg(long)]
        n: usize,
    },
    /// Chain data, expected dimensions and the generic chain point.
    Quiver {
        #[arg(long)]
        bipartition: String,
    },
    /// Table of strata with exact dimensions and bounds.
    Strata {
        #[arg(long)]
        bipartition: String,
        /// List at most this many strata.
        #[arg(long, default_value_t = 2000)]
        limit: usize,
    },
    /// Check the stratum conjecture for every bipartition up to size n.
    Verify {
        #[arg(long, conflicts_with = "bipartition", required_unless_present = "bipartition")]
        n: Option<usize>,
        #[arg(long)]
        bipartition: Option<String>,
        /// Parts that decide the exit status; all parts are always computed.
        #[arg(long, value_enum, default_value_t = PartSel::All)]
        part: PartSel,
        /// Worker threads (defaults to the number of cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// JSON-lines result cache; cached bipartitions are not recomputed.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run the formula-versus-oracle suites.
    Selftest {
        /// Run only these suites.
        #[arg(long)]
        suite: Vec<String>,
        /// Override every suite's size bound.
        #[arg(long)]
        size: Option<usize>,
        /// List the registered suites and exit.
        #[arg(long)]
        list: bool,
    },
}

fn parse_bipartition(s: &str) -> Result<Bipartition, CliError> {
    s.parse::<Bipartition>().map_err(CliError::from)
}

fn check_n(n: usize, max: usize) -> Result<(), CliError> {
    if n > max {
        return Err(CliError::Usage(format!("--n {n} is out of range (at most {max})")));
    }
    Ok(())
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

/// Runs a parsed command, writing results to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Orbits { n } => cmd_orbits(*n, fmt, out),
        Command::Closure { lower, upper } => cmd_closure(lower, upper, fmt, out),
        Command::Hasse { n } => cmd_hasse(*n, fmt, out),
        Command::Quiver { bipartition } => cmd_quiver(bipartition, fmt, out),
        Command::Strata { bipartition, limit } => cmd_strata(bipartition, *limit, fmt, out),
        Command::Verify {
            n,
            bipartition,
            part,
            jobs,
            cache,
        } => {
            let targets = match (n, bipartition) {
                (Some(n), _) => {
                    check_n(*n, MAX_VERIFY_N)?;
                    (1..=*n).flat_map(enumerate_bipartitions).collect()
                }
                (None, Some(b)) => {
                    let b = parse_bipartition(b)?;
                    if b.size() == 0 {
                        return Err(CliError::Usage("verify needs a nonempty bipartition".into()));
                    }
                    vec![b]
                }
                (None, None) => return Err(CliError::Usage("verify needs --n or --bipartition".into())),
            };
            let jobs = jobs.unwrap_or_else(default_jobs);
            if jobs == 0 {
                return Err(CliError::Usage("--jobs must be at least 1".into()));
            }
            cmd_verify(&targets, &part.parts(), jobs, cache.as_deref(), fmt, out)
        }
        Command::Selftest { suite, size, list } => cmd_selftest(suite, *size, *list, fmt, out),
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

pub fn cmd_orbits(n: usize, fmt: Format, out: &mut dyn Write) -> Result<Status, CliError> {
    check_n(n, MAX_N)?;
    let orbits = enumerate_bipartitions(n);
    match fmt {
        Format::Json => {
            let rows: Vec<_> = orbits
                .iter()
                .map(|b| json!({"mu": b.mu, "nu": b.nu, "dim": b.enhanced_orbit_dim()}))
                .collect();
            write_json(out, &rows)?;
        }
        Format::Text => {
            writeln!(out, "# bipartition dim")?;
            for b in &orbits {
                writeln!(out, "{:<24} {}", b.to_string(), b.enhanced_orbit_dim())?;
            }
        }
    }
    Ok(Status::Success)
}

pub fn cmd_closure(lower: &str, upper: &str, fmt: Format, out: &mut dyn Write) -> Result<Status, CliError> {
    let (a, b) = (parse_bipartition(lower)?, parse_bipartition(upper)?);
    let leq = a.biorder_leq(&b)?;
    match fmt {
        Format::Json => write_json(out, &json!({"lower": a, "upper": b, "in_closure": leq}))?,
        Format::Text => writeln!(out, "{a} <= {b}: {leq}")?,
    }
    Ok(Status::Success)
}

pub fn cmd_hasse(n: usize, fmt: Format, out: &mut dyn Write) -> Result<Status, CliError> {
    check_n(n, MAX_N)?;
    let mut edges = Vec::new();
    for b in enumerate_bipartitions(n) {
        for m in b.degeneration_moves() {
            let codim = b.enhanced_orbit_dim() - m.result.enhanced_orbit_dim();
            edges.push((b.clone(), m, codim));
        }
    }
    match fmt {
        Format::Json => {
            let rows: Vec<_> = edges
                .iter()
                .map(|(b, m, c)| json!({"from": b, "to": m.result, "move_type": m.move_type, "boxes_moved": m.boxes_moved, "codim": c}))
                .collect();
            write_json(out, &rows)?;
        }
        Format::Text => {
            writeln!(out, "# from -> to  type  boxes  codim")?;
            for (b, m, c) in &edges {
                writeln!(out, "{} -> {}  {}  {}  {}", b, m.result, m.move_type, m.boxes_moved, c)?;
            }
        }
    }
    Ok(Status::Success)
}

fn tuple(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn cmd_quiver(bipartition: &str, fmt: Format, out: &mut dyn Write) -> Result<Status, CliError> {
    let b = parse_bipartition(bipartition)?;
    let q = quiver_data(&b)?;
    let (d_r, d_ri) = q.naive_dims();
    let chain = generic_point_jacobian(&b);
    match fmt {
        Format::Json => {
            let chain = match &chain {
                Ok(r) => json!({
                    "constructed": true,
                    "equations_hold": r.equations_hold,
                    "in_open_locus": r.in_open_locus,
                    "corank": r.corank,
                    "tangent_dim": r.tangent_dim,
                }),
                Err(e) => json!({"constructed": false, "error": e.to_string()}),
            };
            write_json(out, &json!({"bipartition": b, "quiver": q, "d_r": d_r, "d_rI": d_ri, "generic_chain": chain}))?;
        }
        Format::Text => {
            writeln!(out, "bipartition {b}")?;
            writeln!(out, "r = ({})", tuple(&q.r))?;
            writeln!(out, "I = {{{}}}", tuple(&q.i_set))?;
            writeln!(out, "t = {}", q.t)?;
            writeln!(out, "dim U = ({})", tuple(&q.dims_u))?;
            writeln!(out, "d = {d_r}")?;
            writeln!(out, "d_I = {d_ri}")?;
            match &chain {
                Ok(r) => writeln!(
                    out,
                    "generic chain: equations {}, open locus {}, corank {}, tangent dimension {}",
                    r.equations_hold, r.in_open_locus, r.corank, r.tangent_dim
                )?,
                Err(e) => writeln!(out, "generic chain: not constructed ({e})")?,
            }
        }
    }
    Ok(Status::Success)
}

pub fn cmd_strata(bipartition: &str, limit: usize, fmt: Format, out: &mut dyn Write) -> Result<Status, CliError> {
    let b = parse_bipartition(bipartition)?;
    let q = quiver_data(&b)?;
    let (d_r, d_ri) = q.naive_dims();
    let total = count_strata(&q)?;
    let strata = enumerate_strata_upto(&q, limit)?;
    if (strata.len() as u64) < total {
        eprintln!("note: listing {} of {total} strata (raise --limit for more)", strata.len());
    }
    match fmt {
        Format::Json => write_json(out, &json!({"bipartition": b, "quiver": q, "d_r": d_r, "d_rI": d_ri, "total": total, "strata": strata}))?,
        Format::Text => {
            writeln!(out, "bipartition {b}: d = {d_r}, d_I = {d_ri}, {total} strata")?;
            writeln!(out, "# dim bound corollary generic codim1 image | xi_0 | xi_1 | ...")?;
            for s in &strata {
                writeln!(
                    out,
                    "{:>4} {:>5} {:>9} {:>7} {:>6} {:>12} | {}",
                    s.dim_exact,
                    s.dim_bound,
                    s.corollary_bound,
                    s.generic as u8,
                    s.codim1_predicate as u8,
                    s.phi_image.to_string(),
                    s.label()
                )?;
            }
        }
    }
    Ok(Status::Success)
}

pub fn cmd_verify(
    targets: &[Bipartition],
    parts: &[u8],
    jobs: usize,
    cache: Option<&std::path::Path>,
    fmt: Format,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let (records, computed) = campaign::run_campaign(targets, jobs, cache)?;
    eprintln!("verified {computed} bipartitions, {} from cache", records.len() - computed);
    let summary = campaign::summarize(&records, parts);
    match fmt {
        Format::Json => write_json(out, &summary)?,
        Format::Text => write!(out, "{}", campaign::render_summary(&summary))?,
    }
    Ok(if summary.passed { Status::Success } else { Status::VerificationFailed })
}

#[derive(Serialize)]
struct SuiteLine<'a> {
    id: &'a str,
    module: &'a str,
    size: usize,
    passed: bool,
    checked: u64,
    failed: u64,
    failures: Vec<String>,
}

pub fn cmd_selftest(only: &[String], size: Option<usize>, list: bool, fmt: Format, out: &mut dyn Write) -> Result<Status, CliError> {
    if let Some(unknown) = only.iter().find(|id| selftest::find(id).is_none()) {
        return Err(CliError::Usage(format!("unknown suite {unknown:?}; see selftest --list")));
    }
    let suites: Vec<&selftest::Suite> = selftest::registry()
        .iter()
        .filter(|s| only.is_empty() || only.iter().any(|id| id == s.id))
        .collect();
    if list {
        for s in &suites {
            writeln!(out, "{:<40} {:<22} n<={:<3} {}", s.id, s.module, s.default_size, s.statement)?;
        }
        return Ok(Status::Success);
    }
    let mut lines = Vec::new();
    for s in suites {
        let n = size.unwrap_or(s.default_size);
        let o = (s.run)(n)?;
        if fmt == Format::Text {
            writeln!(out, "{} {:<40} n<={:<3} checked {}", if o.passed() { "PASS" } else { "FAIL" }, s.id, n, o.checked)?;
            for f in &o.failures {
                writeln!(out, "    {f}")?;
            }
        }
        lines.push(SuiteLine {
            id: s.id,
            module: s.module,
            size: n,
            passed: o.passed(),
            checked: o.checked,
            failed: o.failed,
            failures: o.failures,
        });
    }
    let passed = lines.iter().all(|l| l.passed);
    match fmt {
        Format::Json => write_json(out, &lines)?,
        Format::Text => writeln!(out, "selftest: {}", if passed { "PASS" } else { "FAIL" })?,
    }
    Ok(if passed { Status::Success } else { Status::VerificationFailed })
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I, out: &mut dyn Write) -> Result<Status, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
    run(&cli, out)
}
