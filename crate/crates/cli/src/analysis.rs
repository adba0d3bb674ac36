//! Threshold fits and overhead tables from results files.

use crate::campaign::{parse_label, PmemMode};
use crate::commands::emit;
use crate::io::{read_results, ResultRow};
use clap::Args;
use exrec_core::gadgets::{build_exrec, count_cx_per_rec};
use exrec_core::montecarlo::FailureEstimate;
use exrec_core::threshold::{fit_pseudo_threshold, overhead_report, render_csv, render_markdown, CurvePoint, OverheadInput};
use exrec_core::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Args)]
pub struct ThresholdArgs {
    /// Results files; rows of the same configuration are pooled.
    #[arg(long = "in", required = true, num_args = 1..)]
    pub inputs: Vec<PathBuf>,
    /// Polynomial degree (default: 2, raised to 3 for a poor fit).
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub resamples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ReportArgs {
    #[arg(long = "in", required = true, num_args = 1..)]
    pub inputs: Vec<PathBuf>,
    /// md or csv.
    #[arg(long, default_value = "md")]
    pub format: String,
    #[arg(long, default_value_t = 1000)]
    pub resamples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub type ConfigKey = (String, usize, usize);

/// Rows grouped by (label, L, R), with repeated (p0, pmem) rows pooled.
pub fn load(inputs: &[PathBuf]) -> Result<BTreeMap<ConfigKey, Vec<FailureEstimate>>> {
    let mut pooled: BTreeMap<(ConfigKey, u64, u64), FailureEstimate> = BTreeMap::new();
    for path in inputs {
        for ResultRow { code, l, r, est } in read_results(path)? {
            let k = ((code, l, r), est.p0.to_bits(), est.pmem.to_bits());
            pooled
                .entry(k)
                .and_modify(|e| {
                    *e = FailureEstimate::from_counts(e.p0, e.pmem, e.trials + est.trials, e.failures + est.failures, e.exhausted + est.exhausted, e.seed)
                })
                .or_insert(est);
        }
    }
    let mut groups: BTreeMap<ConfigKey, Vec<FailureEstimate>> = BTreeMap::new();
    for ((k, _, _), e) in pooled {
        groups.entry(k).or_default().push(e);
    }
    for v in groups.values_mut() {
        v.sort_by(|a, b| a.p0.total_cmp(&b.p0));
    }
    Ok(groups)
}

pub fn threshold(a: ThresholdArgs) -> Result<()> {
    let groups = load(&a.inputs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut s = String::new();
    let _ = writeln!(s, "# exrec {}", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        s,
        "# fit weighted least-squares polynomial in p0 with intercept, degree {}, {} Gaussian resamples of p1, seed {}",
        a.degree.map_or("auto (2, or 3 when chi2/dof > 3)".to_string(), |d| d.to_string()),
        a.resamples,
        a.seed
    );
    s.push_str("code,L,R,pmem,pTh,sigma,degree,roots,resamples,points,extrapolated,note\n");
    for ((code, l, r), ests) in &groups {
        for mode in [PmemMode::Zero, PmemMode::Eq] {
            let pts: Vec<CurvePoint> = ests
                .iter()
                .filter(|e| PmemMode::of(e) == mode && e.trials > 0)
                .map(|e| CurvePoint { p0: e.p0, p1: e.p1, sigma: e.stderr })
                .collect();
            if pts.is_empty() {
                continue;
            }
            match fit_pseudo_threshold(&pts, a.degree, a.resamples, &mut rng) {
                Ok(t) => {
                    let _ = writeln!(
                        s,
                        "{code},{l},{r},{},{:e},{:e},{},{},{},{},{},",
                        mode.name(),
                        t.p_th,
                        t.sigma,
                        t.degree,
                        t.roots,
                        t.resamples,
                        pts.len(),
                        t.extrapolated
                    );
                }
                Err(e) => {
                    let note = e.to_string().replace([',', '"'], ";");
                    let _ = writeln!(s, "{code},{l},{r},{},,,,,{},{},,{note}", mode.name(), a.resamples, pts.len());
                }
            }
        }
    }
    emit(a.out.as_deref(), s.as_bytes())
}

pub fn report(a: ReportArgs) -> Result<()> {
    let md = match a.format.as_str() {
        "md" => true,
        "csv" => false,
        f => return Err(Error::Parse(format!("format: expected md or csv, got {f:?}"))),
    };
    let mut inputs = Vec::new();
    for ((code, l, r), estimates) in load(&a.inputs)? {
        let cfg = parse_label(&code, l, r)?;
        let (n, k, d) = cfg.spec.params();
        let cx = count_cx_per_rec(&build_exrec(cfg)?);
        inputs.push(OverheadInput { code_id: code, n, k, d, l, r, cx_per_rec: cx.table, estimates });
    }
    let rows = overhead_report(&inputs, a.resamples, &mut ChaCha8Rng::seed_from_u64(a.seed))?;
    let body = if md { render_markdown(&rows) } else { render_csv(&rows) };
    emit(a.out.as_deref(), body.as_bytes())
}
