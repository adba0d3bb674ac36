//! Overhead tables: block parameters, CNOTs per rectangle, encoded error
//! rate at p0 = 1e-4 and pseudo-thresholds, for both memory-noise modes.

use super::fit::{extrapolate_log_linear, fit_pseudo_threshold, CurvePoint};
use crate::error::Result;
use crate::montecarlo::FailureEstimate;
use rand::Rng;
use std::fmt::Write as _;

/// Reference noise rate of the p1 columns.
pub const REFERENCE_P0: f64 = 1e-4;

/// A value with its standard error; extrapolated values print in brackets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub value: f64,
    pub sigma: f64,
    pub extrapolated: bool,
}

impl Cell {
    pub fn render(&self) -> String {
        if self.extrapolated {
            return format!("[{:.1e}]", self.value);
        }
        if self.value == 0.0 {
            return "0".into();
        }
        let exp = self.value.abs().log10().floor() as i32;
        let m = 10f64.powi(exp);
        let s = self.sigma / m;
        let digits = if s > 0.0 { (-s.log10().floor()).clamp(2.0, 6.0) as usize } else { 2 };
        format!("({:.digits$} ± {:.digits$})e{exp}", self.value / m, s)
    }
}

fn render(c: &Option<Cell>) -> String {
    c.as_ref().map_or_else(|| "--".into(), Cell::render)
}

/// Simulated curves of one ex-Rec configuration.
#[derive(Clone, Debug)]
pub struct OverheadInput {
    pub code_id: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub l: usize,
    pub r: usize,
    pub cx_per_rec: usize,
    pub estimates: Vec<FailureEstimate>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OverheadRow {
    pub code_id: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub l: usize,
    pub r: usize,
    pub cx_per_rec: usize,
    pub p1_mem: Option<Cell>,
    pub p1_nomem: Option<Cell>,
    pub pth_mem: Option<Cell>,
    pub pth_nomem: Option<Cell>,
}

fn points(ests: &[&FailureEstimate]) -> Vec<CurvePoint> {
    ests.iter().filter(|e| e.trials > 0).map(|e| CurvePoint { p0: e.p0, p1: e.p1, sigma: e.stderr }).collect()
}

fn p1_cell(ests: &[&FailureEstimate]) -> Option<Cell> {
    let at = ests.iter().filter(|e| (e.p0 - REFERENCE_P0).abs() <= 1e-12 && e.failures > 0).max_by_key(|e| e.trials);
    if let Some(e) = at {
        return Some(Cell { value: e.p1, sigma: e.stderr, extrapolated: false });
    }
    let pts: Vec<CurvePoint> = points(ests).into_iter().filter(|p| p.p1 > 0.0).collect();
    let fit = extrapolate_log_linear(&pts, REFERENCE_P0).ok()?;
    Some(Cell { value: fit.p1_star, sigma: fit.p1_star * fit.ln_sigma, extrapolated: true })
}

fn pth_cell<R: Rng + ?Sized>(ests: &[&FailureEstimate], resamples: usize, rng: &mut R) -> Option<Cell> {
    let pts: Vec<CurvePoint> = points(ests).into_iter().filter(|p| p.sigma > 0.0).collect();
    let est = fit_pseudo_threshold(&pts, None, resamples, rng).ok()?;
    Some(Cell { value: est.p_th, sigma: est.sigma, extrapolated: est.extrapolated })
}

/// Builds one table row; curves with too few points leave their cells
/// empty.
pub fn overhead_row<R: Rng + ?Sized>(input: &OverheadInput, resamples: usize, rng: &mut R) -> Result<OverheadRow> {
    let mem: Vec<&FailureEstimate> = input.estimates.iter().filter(|e| e.pmem > 0.0).collect();
    let nomem: Vec<&FailureEstimate> = input.estimates.iter().filter(|e| e.pmem == 0.0).collect();
    Ok(OverheadRow {
        code_id: input.code_id.clone(),
        n: input.n,
        k: input.k,
        d: input.d,
        l: input.l,
        r: input.r,
        cx_per_rec: input.cx_per_rec,
        p1_nomem: p1_cell(&nomem),
        p1_mem: p1_cell(&mem),
        pth_nomem: pth_cell(&nomem, resamples, rng),
        pth_mem: pth_cell(&mem, resamples, rng),
    })
}

/// Rows for every input, ordered by block size, code, L and R.
pub fn overhead_report<R: Rng + ?Sized>(inputs: &[OverheadInput], resamples: usize, rng: &mut R) -> Result<Vec<OverheadRow>> {
    let mut sorted: Vec<&OverheadInput> = inputs.iter().collect();
    sorted.sort_by(|a, b| (a.n, &a.code_id, a.l, a.r).cmp(&(b.n, &b.code_id, b.l, b.r)));
    sorted.into_iter().map(|i| overhead_row(i, resamples, rng)).collect()
}

const HEADER: [&str; 8] = ["[[n,k,d]]", "L", "R", "CX/Rec", "p1(pmem=0)", "p1(pmem=p0)", "pth(pmem=0)", "pth(pmem=p0)"];

fn cells(r: &OverheadRow) -> [String; 8] {
    [
        format!("[[{},{},{}]]", r.n, r.k, r.d),
        r.l.to_string(),
        r.r.to_string(),
        r.cx_per_rec.to_string(),
        render(&r.p1_nomem),
        render(&r.p1_mem),
        render(&r.pth_nomem),
        render(&r.pth_mem),
    ]
}

pub fn render_markdown(rows: &[OverheadRow]) -> String {
    let mut s = format!("| code | {} |\n|{}\n", HEADER.join(" | "), "---|".repeat(HEADER.len() + 1));
    for r in rows {
        let _ = writeln!(s, "| {} | {} |", r.code_id, cells(r).join(" | "));
    }
    s
}

pub fn render_csv(rows: &[OverheadRow]) -> String {
    let mut s = format!("code,{}\n", HEADER.join(","));
    for r in rows {
        let c = cells(r);
        let _ = writeln!(s, "{},\"{}\",{}", r.code_id, c[0], c[1..].join(","));
    }
    s
}
