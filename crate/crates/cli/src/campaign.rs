//! Simulation campaigns: configuration, batching with resumable progress
//! files, and the results CSV.

use crate::config::{parse_bool, parse_list, parse_num, pick, KeyValues};
use crate::io::{results_csv, write_atomic, ResultRow};
use clap::Args;
use exrec_core::circuit::NoiseModel;
use exrec_core::decoders::DecoderOptions;
use exrec_core::gadgets::{build_exrec, EcStyle, ExRecConfig};
use exrec_core::montecarlo::{count_failures, Engine, FailureEstimate};
use exrec_core::stabilizer::CodeSpec;
use exrec_core::{Error, Result};
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Args, Debug, Default)]
pub struct SimulateArgs {
    /// Campaign file with `key = value` lines; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub code: Option<String>,
    /// steane, shor or knill.
    #[arg(long)]
    pub style: Option<String>,
    /// Preparation attempts per ancilla.
    #[arg(long = "L")]
    pub l: Option<String>,
    /// Verification rounds per attempt.
    #[arg(long = "R")]
    pub r: Option<String>,
    /// Noiseless ancilla preparation.
    #[arg(long)]
    pub perfect_ancilla: bool,
    /// eq (memory noise at p0) or 0 (noiseless waits).
    #[arg(long)]
    pub pmem: Option<String>,
    /// Comma-separated p0 grid.
    #[arg(long)]
    pub p0: Option<String>,
    #[arg(long)]
    pub trials: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    /// Trials per progress batch (default: one batch per point).
    #[arg(long)]
    pub batch: Option<String>,
    #[arg(long)]
    pub workers: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory holding persisted decoder tables.
    #[arg(long)]
    pub tables: Option<PathBuf>,
    /// Reuse finished batches from the progress file next to --out.
    #[arg(long)]
    pub resume: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmemMode {
    Eq,
    Zero,
}

impl PmemMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "eq" | "p0" => Ok(PmemMode::Eq),
            "0" | "zero" => Ok(PmemMode::Zero),
            _ => Err(Error::Parse(format!("pmem: expected eq or 0, got {s:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PmemMode::Eq => "eq",
            PmemMode::Zero => "0",
        }
    }

    pub fn of(est: &FailureEstimate) -> Self {
        if est.pmem == 0.0 {
            PmemMode::Zero
        } else {
            PmemMode::Eq
        }
    }
}

/// Label stored in the `code` column: catalog id, then `+style` for a
/// non-default EC style and `+perfect` for noiseless ancillas.
pub fn label(cfg: &ExRecConfig) -> String {
    let mut s = cfg.spec.id();
    if cfg.style != EcStyle::default_for(cfg.spec) {
        s.push('+');
        s.push_str(cfg.style.name());
    }
    if cfg.perfect_ancilla {
        s.push_str("+perfect");
    }
    s
}

pub fn parse_label(s: &str, l: usize, r: usize) -> Result<ExRecConfig> {
    let mut parts = s.split('+');
    let spec = CodeSpec::parse(parts.next().unwrap_or(""))?;
    let mut cfg = ExRecConfig::new(spec, l, r);
    for p in parts {
        match p {
            "perfect" => cfg.perfect_ancilla = true,
            other => cfg.style = EcStyle::parse(other)?,
        }
    }
    Ok(cfg)
}

#[derive(Clone, Debug)]
pub struct Campaign {
    pub exrec: ExRecConfig,
    pub pmem: PmemMode,
    pub p0: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub batch: u64,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub tables: Option<PathBuf>,
    pub resume: bool,
}

fn required(v: Option<String>, key: &str) -> Result<String> {
    v.ok_or_else(|| Error::Parse(format!("missing required setting {key:?}")))
}

impl Campaign {
    pub fn from_args(a: SimulateArgs) -> Result<Self> {
        let file = match &a.config {
            Some(p) => KeyValues::load(p)?,
            None => KeyValues::default(),
        };
        let spec = CodeSpec::parse(&required(pick(a.code, &file, "code"), "code")?)?;
        let l = parse_num("L", &required(pick(a.l, &file, "L"), "L")?)?;
        let r = parse_num("R", &required(pick(a.r, &file, "R"), "R")?)?;
        let mut exrec = ExRecConfig::new(spec, l, r);
        if let Some(s) = pick(a.style, &file, "style") {
            exrec.style = EcStyle::parse(&s)?;
        }
        exrec.perfect_ancilla = a.perfect_ancilla || file.get("perfect-ancilla").map(|v| parse_bool("perfect-ancilla", v)).transpose()?.unwrap_or(false);
        let pmem = PmemMode::parse(&pick(a.pmem, &file, "pmem").unwrap_or_else(|| "eq".into()))?;
        let p0 = parse_list("p0", &required(pick(a.p0, &file, "p0"), "p0")?)?;
        if let Some(p) = p0.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::Parse(format!("p0 = {p} is not a probability")));
        }
        let trials = parse_num("trials", &required(pick(a.trials, &file, "trials"), "trials")?)?;
        let seed = parse_num("seed", &required(pick(a.seed, &file, "seed"), "seed")?)?;
        let batch: u64 = pick(a.batch, &file, "batch").map(|v| parse_num("batch", &v)).transpose()?.unwrap_or(0);
        let workers = match pick(a.workers, &file, "workers") {
            Some(v) => parse_num("workers", &v)?,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        if workers == 0 {
            return Err(Error::Parse("workers must be at least 1".into()));
        }
        let out = a.out.or_else(|| file.get("out").map(PathBuf::from));
        let tables = a.tables.or_else(|| file.get("tables").map(PathBuf::from));
        let resume = a.resume || file.get("resume").map(|v| parse_bool("resume", v)).transpose()?.unwrap_or(false);
        Ok(Campaign { exrec, pmem, p0, trials, seed, batch: if batch == 0 { trials.max(1) } else { batch }, workers, out, tables, resume })
    }

    /// Settings that determine the results; worker count and paths are
    /// excluded.
    pub fn canonical(&self) -> String {
        let grid: Vec<String> = self.p0.iter().map(f64::to_string).collect();
        format!(
            "code={} style={} L={} R={} perfect-ancilla={} pmem={} p0={} trials={} seed={} batch={}",
            self.exrec.spec.id(),
            self.exrec.style.name(),
            self.exrec.l,
            self.exrec.r,
            self.exrec.perfect_ancilla,
            self.pmem.name(),
            grid.join(","),
            self.trials,
            self.seed,
            self.batch
        )
    }

    pub fn hash(&self) -> String {
        let d = Sha256::digest(self.canonical().as_bytes());
        d.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn noise(&self, p0: f64) -> Result<NoiseModel> {
        NoiseModel::uniform(p0, self.pmem == PmemMode::Eq)
    }

    pub fn metadata(&self) -> Vec<String> {
        vec![
            format!("exrec {}", env!("CARGO_PKG_VERSION")),
            format!("config {}", self.canonical()),
            format!("config-hash {}", self.hash()),
            format!("seed {}", self.seed),
            "sampling leading-EC faults drawn jointly with rectangle faults; per-trial streams keyed by (seed, trial index)".into(),
        ]
    }
}

fn progress_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".progress");
    PathBuf::from(s)
}

type BatchKey = (u64, u64);

/// Finished batches of this campaign: (p0 bits, first trial) → counts.
fn load_progress(path: &Path, hash: &str) -> Result<HashMap<BatchKey, (u64, u64, u64)>> {
    let mut done = HashMap::new();
    let Ok(text) = std::fs::read_to_string(path) else { return Ok(done) };
    for line in text.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 6 || f[0] != hash {
            continue;
        }
        let p0: f64 = parse_num("progress p0", f[1])?;
        let start = parse_num("progress start", f[2])?;
        done.insert((p0.to_bits(), start), (parse_num("progress end", f[3])?, parse_num("progress failures", f[4])?, parse_num("progress exhausted", f[5])?));
    }
    Ok(done)
}

/// Runs the campaign and returns the CSV bytes (also written to `out`).
pub fn run(c: &Campaign) -> Result<Vec<u8>> {
    let tag = label(&c.exrec);
    let mut rows = Vec::new();
    if c.trials > 0 && !c.p0.is_empty() {
        let exrec = Arc::new(build_exrec(c.exrec)?);
        let engine = Engine::new(exrec, &DecoderOptions { table_dir: c.tables.clone() })?;
        let progress = c.out.as_deref().map(progress_path);
        let done = match (&progress, c.resume) {
            (Some(p), true) => load_progress(p, &c.hash())?,
            _ => HashMap::new(),
        };
        let mut log = match &progress {
            Some(p) => Some(
                OpenOptions::new()
                    .create(true)
                    .write(true)
                    .append(c.resume)
                    .truncate(!c.resume)
                    .open(p)
                    .map_err(|e| Error::Resource(format!("{}: {e}", p.display())))?,
            ),
            None => None,
        };
        for &p0 in &c.p0 {
            let noise = c.noise(p0)?;
            let (mut failures, mut exhausted) = (0, 0);
            let mut start = 0;
            while start < c.trials {
                let end = (start + c.batch).min(c.trials);
                let (f, e) = match done.get(&(p0.to_bits(), start)) {
                    Some(&(e0, f, e)) if e0 == end => (f, e),
                    _ => {
                        let (f, e) = count_failures(&engine, noise, c.seed, start..end, c.workers)?;
                        if let Some(log) = log.as_mut() {
                            writeln!(log, "{} {p0} {start} {end} {f} {e}", c.hash())?;
                            log.flush()?;
                        }
                        (f, e)
                    }
                };
                failures += f;
                exhausted += e;
                start = end;
                if c.out.is_some() {
                    eprintln!("{tag} L={} R={} p0={p0}: {end}/{} trials, {failures} failures", c.exrec.l, c.exrec.r, c.trials);
                }
            }
            let est = FailureEstimate::from_counts(p0, noise.pmem, c.trials, failures, exhausted, c.seed);
            rows.push(ResultRow { code: tag.clone(), l: c.exrec.l, r: c.exrec.r, est });
        }
    }
    let bytes = results_csv(&c.metadata(), &rows)?;
    if let Some(out) = &c.out {
        write_atomic(out, &bytes)?;
        let _ = std::fs::remove_file(progress_path(out));
    }
    Ok(bytes)
}
