//! Catalog, synthesis, counting, decoder verification and fault scans.

use crate::io::write_atomic;
use clap::{Args, Subcommand};
use exrec_core::decoders::cyclic::{table_file, CyclicDecoder};
use exrec_core::decoders::verify::exhaustive_size;
use exrec_core::decoders::{decoder, verify_decoder, DecoderOptions, VerifyMode};
use exrec_core::gadgets::{build_exrec, count_cx_per_rec, encoder, latin_listing, latin_schedule, rectangle_census, standard_a, Basis, EcStyle, ExRecConfig};
use exrec_core::montecarlo::{single_fault_scan, Engine};
use exrec_core::stabilizer::{build_code, CodeSpec, DecoderId};
use exrec_core::{Error, Result};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Writes to `out` atomically, or to stdout.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(bytes)?;
            so.flush()?;
            Ok(())
        }
    }
}

#[derive(Subcommand)]
pub enum CodesCmd {
    /// One row per catalog entry.
    List,
    /// Parameters and stabilizer generators of one code.
    Show { code: String },
}

pub fn codes(c: CodesCmd) -> Result<()> {
    let mut s = String::new();
    match c {
        CodesCmd::List => {
            let _ = writeln!(s, "{:<10} {:<12} {:<20} {:<26} tx,tz", "id", "[[n,k,d]]", "family", "decoder");
            for spec in CodeSpec::all() {
                let (tx, tz) = spec.correctable();
                let _ = writeln!(s, "{:<10} {:<12} {:<20} {:<26} {tx},{tz}", spec.id(), spec.to_string(), spec.family(), spec.decoder().as_str());
            }
        }
        CodesCmd::Show { code } => {
            let spec = CodeSpec::parse(&code)?;
            let c = build_code(spec)?;
            let _ = writeln!(s, "# {} {} {} decoder={}", spec.id(), spec, spec.family(), c.decoder.as_str());
            s.push_str(&c.stabilizers_text());
        }
    }
    emit(None, s.as_bytes())
}

#[derive(Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub code: String,
    /// zero or plus.
    #[arg(long, default_value = "zero")]
    pub basis: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn synth(a: SynthArgs) -> Result<()> {
    let spec = CodeSpec::parse(&a.code)?;
    let code = build_code(spec)?;
    let basis = Basis::parse(&a.basis)?;
    let plan = encoder(spec, &code, basis)?;
    let mut s = String::new();
    let _ = writeln!(s, "# {} |{}> encoder: {} CNOTs, depth {}", spec.id(), basis.name(), plan.cnot_count(), plan.depth);
    s.push_str(&plan.circuit()?.to_text());
    if let Ok(css) = code.css() {
        let g = match basis {
            Basis::Zero => css.hx.clone(),
            Basis::Plus => css.hx.stack(&css.lx),
        };
        let (am, perm) = standard_a(&g)?;
        let sched = latin_schedule(&am);
        let _ = writeln!(s, "# standard form A ({}x{}), column permutation {:?}", am.nrows(), am.ncols(), perm);
        for line in am.to_text().lines() {
            let _ = writeln!(s, "# A {line}");
        }
        let _ = writeln!(s, "# latin schedule: {} CNOTs, depth {}", sched.entries.len(), sched.depth);
        s.push_str(&latin_listing(&am, &sched));
    }
    emit(a.out.as_deref(), s.as_bytes())
}

#[derive(Args)]
pub struct CountArgs {
    #[arg(long)]
    pub code: String,
    #[arg(long = "L", default_value_t = 1)]
    pub l: usize,
    #[arg(long = "R", default_value_t = 1)]
    pub r: usize,
    /// steane, shor or knill (default depends on the code).
    #[arg(long)]
    pub style: Option<String>,
    #[arg(long)]
    pub perfect_ancilla: bool,
}

impl CountArgs {
    fn config(&self) -> Result<ExRecConfig> {
        let mut c = ExRecConfig::new(CodeSpec::parse(&self.code)?, self.l, self.r);
        if let Some(s) = &self.style {
            c.style = EcStyle::parse(s)?;
        }
        c.perfect_ancilla = self.perfect_ancilla;
        Ok(c)
    }
}

pub fn count(a: CountArgs) -> Result<()> {
    let x = build_exrec(a.config()?)?;
    let cx = count_cx_per_rec(&x);
    let census = rectangle_census(&x);
    let mut s = String::new();
    let _ = writeln!(s, "exrec {}", x.config);
    let _ = writeln!(s, "CX/Rec {}", cx.table);
    let _ = writeln!(s, "  convention: coupling CNOTs charged once per ancilla attempt");
    let _ = writeln!(s, "  physical (coupling once per EC) {}", cx.physical);
    let _ = writeln!(s, "  delta {}", cx.delta());
    let _ = writeln!(s, "  gate CNOTs {}", x.ga.circuit.census().cnot);
    let _ = writeln!(s, "census (all attempts)");
    let _ = writeln!(s, "  prepZero {}", census.prep_zero);
    let _ = writeln!(s, "  prepPlus {}", census.prep_plus);
    let _ = writeln!(s, "  cnot {}", census.cnot);
    for (g, k) in &census.gates {
        let _ = writeln!(s, "  {g} {k}");
    }
    let _ = writeln!(s, "  measX {}", census.meas_x);
    let _ = writeln!(s, "  measZ {}", census.meas_z);
    let _ = writeln!(s, "  wait {}", census.wait);
    let _ = writeln!(s, "  total {}", census.total());
    emit(None, s.as_bytes())
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Catalog id or `all`.
    #[arg(long)]
    pub code: String,
    /// Random patterns per error class instead of an exhaustive scan.
    #[arg(long)]
    pub sample: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Directory holding persisted decoder tables.
    #[arg(long)]
    pub tables: Option<PathBuf>,
    /// Build and persist missing decoder tables into --tables.
    #[arg(long)]
    pub build_tables: bool,
}

pub fn decode_verify(a: VerifyArgs) -> Result<()> {
    let specs = if a.code == "all" { CodeSpec::all() } else { vec![CodeSpec::parse(&a.code)?] };
    let opts = DecoderOptions { table_dir: a.tables.clone() };
    let mut failed = Vec::new();
    for spec in specs {
        let code = build_code(spec)?;
        if a.build_tables && code.decoder == DecoderId::QrTable {
            let dir = a.tables.as_ref().ok_or_else(|| Error::Parse("--build-tables needs --tables".into()))?;
            std::fs::create_dir_all(dir).map_err(|e| Error::Resource(format!("{}: {e}", dir.display())))?;
            let path = dir.join(table_file(&code.id));
            if !path.exists() {
                CyclicDecoder::build(&code, (code.d - 1) / 2)?.save_table(&path)?;
                eprintln!("wrote {}", path.display());
            }
        }
        let mode = match a.sample {
            Some(samples) => VerifyMode::Sampled { samples, seed: a.seed },
            None => VerifyMode::Exhaustive,
        };
        if mode == VerifyMode::Exhaustive && a.code == "all" && exhaustive_size(spec, &code) > exrec_core::decoders::verify::EXHAUSTIVE_BUDGET {
            println!("{:<10} skipped: exhaustive scan over budget, use --sample", spec.id());
            continue;
        }
        let dec = decoder(spec, &code, &opts)?;
        let rep = verify_decoder(spec, &code, &*dec, mode)?;
        let mut line = format!("{:<10} {:<12} {:<26}", spec.id(), spec.to_string(), rep.decoder);
        for c in &rep.classes {
            let _ = write!(line, " {}: w<={} checked={} failed={}", c.name, c.max_weight, c.checked, c.failed);
        }
        println!("{line} {}", if rep.passed() { "PASS" } else { "FAIL" });
        if !rep.passed() {
            failed.push(spec.id());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::Invariant(format!("decoder miscorrections for {}", failed.join(", "))))
    }
}

pub fn scan(a: CountArgs) -> Result<()> {
    let x = Arc::new(build_exrec(a.config()?)?);
    let engine = Engine::new(x.clone(), &DecoderOptions::default())?;
    let bad = single_fault_scan(&engine);
    let mut s = String::new();
    let _ = writeln!(s, "exrec {}", x.config);
    let _ = writeln!(s, "instances {}", exrec_core::montecarlo::scan::instances(&engine).len());
    let _ = writeln!(s, "locations {}", exrec_core::montecarlo::scan::scan_size(&engine));
    let _ = writeln!(s, "malignant {}", bad.len());
    for m in &bad {
        let _ = writeln!(s, "{} loc={} pauli={} {:?}", m.key, m.fault.loc, m.fault.pauli, m.verdict);
    }
    emit(None, s.as_bytes())?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Invariant(format!("{} malignant single faults", bad.len())))
    }
}
