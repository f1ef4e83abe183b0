//! The verification campaign: one task per bipartition, an append-only
//! JSON-lines cache fed by a single writer thread, and a deterministic
//! summary.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::thread;
use std::time::Instant;

use enorb_core::{verify_conjecture, Bipartition, ConjectureReport};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A failing stratum kept with its record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub part: u8,
    pub stratum: String,
    pub dim_exact: i64,
}

/// One line of the cache.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub bipartition: Bipartition,
    pub parts_passed: [bool; 3],
    pub stratum_count: u64,
    pub max_dim: i64,
    pub runtime_ms: u64,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
}

impl VerificationRecord {
    pub fn from_report(r: &ConjectureReport, runtime_ms: u64) -> Self {
        let mut witnesses = Vec::new();
        for (k, part) in [&r.part1, &r.part2, &r.part3].into_iter().enumerate() {
            for s in &part.witnesses {
                witnesses.push(Witness {
                    part: k as u8 + 1,
                    stratum: s.label(),
                    dim_exact: s.dim_exact,
                });
            }
        }
        VerificationRecord {
            bipartition: r.bipartition.clone(),
            parts_passed: r.parts_passed(),
            stratum_count: r.stratum_count,
            max_dim: r.max_dim,
            runtime_ms,
            tool_version: TOOL_VERSION.to_string(),
            witnesses,
        }
    }

    pub fn key(&self) -> String {
        self.bipartition.to_string()
    }

    /// Whether every selected part (1-based) passed.
    pub fn passes(&self, parts: &[u8]) -> bool {
        parts.iter().all(|&p| self.parts_passed[p as usize - 1])
    }
}

/// Records of the current tool version, keyed by bipartition.
pub fn load_cache(path: &Path) -> Result<HashMap<String, VerificationRecord>, CliError> {
    let mut out = HashMap::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
        Err(source) => {
            return Err(CliError::Cache {
                path: path.to_path_buf(),
                source,
            })
        }
    };
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| CliError::Cache {
            path: path.to_path_buf(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<VerificationRecord>(&line) {
            Ok(r) if r.tool_version == TOOL_VERSION => {
                out.insert(r.key(), r);
            }
            Ok(_) => {}
            Err(e) => eprintln!("warning: {}:{}: skipping unreadable record: {e}", path.display(), n + 1),
        }
    }
    Ok(out)
}

type Writer = (mpsc::Sender<VerificationRecord>, thread::JoinHandle<Result<(), CliError>>);

/// Appends records as they arrive; the only code that touches the file.
fn spawn_writer(path: PathBuf) -> Result<Writer, CliError> {
    let cache_err = |source| CliError::Cache { path: path.clone(), source };
    let mut file = OpenOptions::new().create(true).append(true).open(&path).map_err(cache_err)?;
    let (tx, rx) = mpsc::channel::<VerificationRecord>();
    let handle = thread::spawn(move || {
        for record in rx {
            let line = serde_json::to_string(&record).expect("records serialize");
            writeln!(file, "{line}")
                .and_then(|_| file.flush())
                .map_err(|source| CliError::Cache { path: path.clone(), source })?;
        }
        Ok(())
    });
    Ok((tx, handle))
}

fn verify_one(b: &Bipartition) -> Result<VerificationRecord, CliError> {
    let start = Instant::now();
    let report = verify_conjecture(b)?;
    Ok(VerificationRecord::from_report(&report, start.elapsed().as_millis() as u64))
}

#[cfg(feature = "parallel")]
fn run_tasks(todo: &[Bipartition], jobs: usize, tx: Option<mpsc::Sender<VerificationRecord>>) -> Result<Vec<VerificationRecord>, CliError> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?;
    pool.install(|| {
        todo.par_iter()
            .map_with(tx, |tx, b| {
                let r = verify_one(b)?;
                if let Some(tx) = tx {
                    // the writer only stops early after an I/O error, reported on join
                    let _ = tx.send(r.clone());
                }
                Ok(r)
            })
            .collect()
    })
}

#[cfg(not(feature = "parallel"))]
fn run_tasks(todo: &[Bipartition], _jobs: usize, tx: Option<mpsc::Sender<VerificationRecord>>) -> Result<Vec<VerificationRecord>, CliError> {
    todo.iter()
        .map(|b| {
            let r = verify_one(b)?;
            if let Some(tx) = &tx {
                let _ = tx.send(r.clone());
            }
            Ok(r)
        })
        .collect()
}

/// Records for every target in target order, plus how many were computed.
pub fn run_campaign(targets: &[Bipartition], jobs: usize, cache: Option<&Path>) -> Result<(Vec<VerificationRecord>, usize), CliError> {
    let cached = match cache {
        Some(p) => load_cache(p)?,
        None => HashMap::new(),
    };
    let todo: Vec<Bipartition> = targets.iter().filter(|b| !cached.contains_key(&b.to_string())).cloned().collect();
    let computed = if todo.is_empty() {
        Vec::new()
    } else {
        let (tx, writer) = match cache {
            Some(p) => {
                let (tx, h) = spawn_writer(p.to_path_buf())?;
                (Some(tx), Some(h))
            }
            None => (None, None),
        };
        let result = run_tasks(&todo, jobs, tx);
        if let Some(h) = writer {
            h.join().expect("cache writer panicked")?;
        }
        result?
    };
    let n_computed = computed.len();
    let mut by_key: HashMap<String, VerificationRecord> = cached;
    for r in computed {
        by_key.insert(r.key(), r);
    }
    let records = targets
        .iter()
        .map(|b| by_key.remove(&b.to_string()).expect("every target was verified or cached"))
        .collect();
    Ok((records, n_computed))
}

/// Per-size tallies for the summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeRow {
    pub size: usize,
    pub orbits: usize,
    pub passed: [usize; 3],
    pub strata: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureLine {
    pub bipartition: String,
    pub failed_parts: Vec<u8>,
    pub witnesses: Vec<Witness>,
}

/// Campaign summary. Contains no timings, so warm and cold runs agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub tool_version: String,
    pub parts: Vec<u8>,
    pub rows: Vec<SizeRow>,
    pub failures: Vec<FailureLine>,
    pub passed: bool,
}

pub fn summarize(records: &[VerificationRecord], parts: &[u8]) -> Summary {
    let mut rows: Vec<SizeRow> = Vec::new();
    let mut failures = Vec::new();
    for r in records {
        let size = r.bipartition.size();
        if rows.last().map(|row| row.size) != Some(size) {
            rows.push(SizeRow {
                size,
                orbits: 0,
                passed: [0; 3],
                strata: 0,
            });
        }
        let row = rows.last_mut().expect("just pushed");
        row.orbits += 1;
        row.strata += r.stratum_count;
        for k in 0..3 {
            row.passed[k] += r.parts_passed[k] as usize;
        }
        let failed_parts: Vec<u8> = parts.iter().copied().filter(|&p| !r.parts_passed[p as usize - 1]).collect();
        if !failed_parts.is_empty() {
            failures.push(FailureLine {
                bipartition: r.key(),
                witnesses: r.witnesses.iter().filter(|w| failed_parts.contains(&w.part)).cloned().collect(),
                failed_parts,
            });
        }
    }
    Summary {
        tool_version: TOOL_VERSION.to_string(),
        parts: parts.to_vec(),
        passed: failures.is_empty(),
        rows,
        failures,
    }
}

pub fn render_summary(s: &Summary) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:>4}  {:>6}  {:>7}  {:>7}  {:>7}  {:>14}\n", "size", "orbits", "part 1", "part 2", "part 3", "strata"));
    for row in &s.rows {
        let cell = |k: usize| {
            if s.parts.contains(&(k as u8 + 1)) {
                format!("{}/{}", row.passed[k], row.orbits)
            } else {
                "-".to_string()
            }
        };
        out.push_str(&format!(
            "{:>4}  {:>6}  {:>7}  {:>7}  {:>7}  {:>14}\n",
            row.size,
            row.orbits,
            cell(0),
            cell(1),
            cell(2),
            row.strata
        ));
    }
    for f in &s.failures {
        out.push_str(&format!("FAIL {} parts {:?}\n", f.bipartition, f.failed_parts));
        for w in &f.witnesses {
            out.push_str(&format!("  part {} witness (dim {}): {}\n", w.part, w.dim_exact, w.stratum));
        }
    }
    let parts: Vec<String> = s.parts.iter().map(u8::to_string).collect();
    out.push_str(&format!("verdict (parts {}): {}\n", parts.join(","), if s.passed { "PASS" } else { "FAIL" }));
    out
}
