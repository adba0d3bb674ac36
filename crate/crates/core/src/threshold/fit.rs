//! Pseudo-threshold fits and log-linear extrapolation of failure-rate
//! curves.

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Normal};

/// One measured point of a failure-rate curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub p0: f64,
    pub p1: f64,
    pub sigma: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdEstimate {
    /// Mean crossing point p1(p0) = p0 over resamples.
    pub p_th: f64,
    /// Standard deviation of the crossing over resamples.
    pub sigma: f64,
    pub degree: usize,
    pub resamples: usize,
    /// Resamples that produced a crossing inside the data range.
    pub roots: usize,
    /// Crossing lies outside the sampled p0 range.
    pub extrapolated: bool,
    pub inputs: Vec<CurvePoint>,
}

/// Polynomial in the scaled variable p0 / scale, lowest order first.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
    pub scale: f64,
}

impl Polynomial {
    pub fn eval(&self, p0: f64) -> f64 {
        let x = p0 / self.scale;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[piv][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, piv);
        b.swap(c, piv);
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Weighted least-squares polynomial through (p0, y) with weights 1/σ².
pub fn fit_polynomial(p0: &[f64], y: &[f64], sigma: &[f64], degree: usize) -> Result<Polynomial> {
    let scale = p0.iter().fold(0.0f64, |m, &p| m.max(p.abs()));
    if p0.len() <= degree || scale == 0.0 {
        return Err(Error::Parameter(format!("{} points cannot fix a degree-{degree} polynomial", p0.len())));
    }
    let m = degree + 1;
    let mut a = vec![vec![0.0; m]; m];
    let mut b = vec![0.0; m];
    for ((&p, &yi), &s) in p0.iter().zip(y).zip(sigma) {
        let w = 1.0 / (s * s);
        let pows: Vec<f64> = (0..m).map(|k| (p / scale).powi(k as i32)).collect();
        for i in 0..m {
            b[i] += w * pows[i] * yi;
            for j in 0..m {
                a[i][j] += w * pows[i] * pows[j];
            }
        }
    }
    let coeffs = solve(a, b).ok_or_else(|| Error::UnstableFit("singular normal equations".into()))?;
    Ok(Polynomial { coeffs, scale })
}

/// χ² per degree of freedom of a fit; `None` without spare points.
pub fn reduced_chi2(poly: &Polynomial, pts: &[CurvePoint]) -> Option<f64> {
    let dof = pts.len().checked_sub(poly.coeffs.len()).filter(|&d| d > 0)?;
    let chi2: f64 = pts.iter().map(|p| ((poly.eval(p.p0) - p.p1) / p.sigma).powi(2)).sum();
    Some(chi2 / dof as f64)
}

/// First crossing of poly(p) = p inside [lo, hi].
pub fn crossing(poly: &Polynomial, lo: f64, hi: f64) -> Option<f64> {
    let f = |p: f64| poly.eval(p) - p;
    const STEPS: usize = 256;
    let mut a = lo;
    let mut fa = f(a);
    if fa == 0.0 {
        return Some(a);
    }
    for i in 1..=STEPS {
        let b = lo + (hi - lo) * i as f64 / STEPS as f64;
        let fb = f(b);
        if fb == 0.0 {
            return Some(b);
        }
        if fa.signum() != fb.signum() {
            let (mut x, mut y, mut fx) = (a, b, fa);
            for _ in 0..100 {
                let m = 0.5 * (x + y);
                let fm = f(m);
                if fm.signum() == fx.signum() {
                    x = m;
                    fx = fm;
                } else {
                    y = m;
                }
            }
            return Some(0.5 * (x + y));
        }
        a = b;
        fa = fb;
    }
    None
}

/// Degree chosen when none is given: quadratic, or cubic when the
/// quadratic misfits (χ²/dof > 3) and enough points are available.
pub fn auto_degree(pts: &[CurvePoint]) -> Result<usize> {
    let (x, y, s) = columns(pts);
    let quad = fit_polynomial(&x, &y, &s, 2)?;
    Ok(match reduced_chi2(&quad, pts) {
        Some(c) if c > 3.0 && pts.len() >= 5 => 3,
        _ => 2,
    })
}

fn columns(pts: &[CurvePoint]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    (pts.iter().map(|p| p.p0).collect(), pts.iter().map(|p| p.p1).collect(), pts.iter().map(|p| p.sigma).collect())
}

/// Resampled pseudo-threshold: each resample draws p1 from Normal(p̂1, σ),
/// fits a polynomial of the given (or automatic) degree and solves
/// p1(p0) = p0 on the sampled range.
pub fn fit_pseudo_threshold<R: Rng + ?Sized>(pts: &[CurvePoint], degree: Option<usize>, resamples: usize, rng: &mut R) -> Result<ThresholdEstimate> {
    let degree = match degree {
        Some(d) => d,
        None => auto_degree(pts)?,
    };
    if pts.len() < degree + 2 {
        return Err(Error::Parameter(format!("{} points for a degree-{degree} fit; need {}", pts.len(), degree + 2)));
    }
    if let Some(p) = pts.iter().find(|p| !(p.sigma > 0.0) || !p.p0.is_finite() || !p.p1.is_finite()) {
        return Err(Error::Parameter(format!("point at p0 = {} has no positive standard error", p.p0)));
    }
    if resamples == 0 {
        return Err(Error::Parameter("at least one resample is needed".into()));
    }
    let mut sorted = pts.to_vec();
    sorted.sort_by(|a, b| a.p0.total_cmp(&b.p0));
    let (x, y, s) = columns(&sorted);
    let (lo, hi) = (x[0], x[x.len() - 1]);
    let dists: Vec<Normal<f64>> = y.iter().zip(&s).map(|(&m, &sd)| Normal::new(m, sd).expect("finite")).collect();
    let mut roots = Vec::with_capacity(resamples);
    let mut draw = vec![0.0; y.len()];
    for _ in 0..resamples {
        for (d, n) in draw.iter_mut().zip(&dists) {
            *d = n.sample(rng);
        }
        if let Ok(poly) = fit_polynomial(&x, &draw, &s, degree) {
            if let Some(r) = crossing(&poly, lo, hi) {
                roots.push(r);
            }
        }
    }
    if 2 * roots.len() < resamples {
        return Err(Error::UnstableFit(format!("only {} of {resamples} resamples cross p1 = p0 in [{lo:e}, {hi:e}]", roots.len())));
    }
    let mean = roots.iter().sum::<f64>() / roots.len() as f64;
    let var = if roots.len() > 1 { roots.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (roots.len() - 1) as f64 } else { 0.0 };
    Ok(ThresholdEstimate {
        p_th: mean,
        sigma: var.sqrt(),
        degree,
        resamples,
        roots: roots.len(),
        extrapolated: mean < lo || mean > hi,
        inputs: sorted,
    })
}

/// Line through (p0, ln p1) and its value at p0*.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLinear {
    /// ln p1 = a + b·p0.
    pub a: f64,
    pub b: f64,
    pub p0_star: f64,
    pub p1_star: f64,
    /// Standard error of ln p1 at p0* from the weighted fit.
    pub ln_sigma: f64,
    /// p0* lies outside the fitted range.
    pub extrapolated: bool,
}

/// Least-squares fit of ln p1 against p0 (weights from the relative
/// errors when available), evaluated at `p0_star`.
pub fn extrapolate_log_linear(pts: &[CurvePoint], p0_star: f64) -> Result<LogLinear> {
    if pts.len() < 2 {
        return Err(Error::Parameter("a line needs at least two points".into()));
    }
    if let Some(p) = pts.iter().find(|p| !(p.p1 > 0.0)) {
        return Err(Error::Parameter(format!("log-linear fit needs p1 > 0, got {} at p0 = {}", p.p1, p.p0)));
    }
    let w: Vec<f64> = pts.iter().map(|p| if p.sigma > 0.0 { (p.p1 / p.sigma).powi(2) } else { 1.0 }).collect();
    let sw: f64 = w.iter().sum();
    let mx = pts.iter().zip(&w).map(|(p, w)| w * p.p0).sum::<f64>() / sw;
    let my = pts.iter().zip(&w).map(|(p, w)| w * p.p1.ln()).sum::<f64>() / sw;
    let sxx: f64 = pts.iter().zip(&w).map(|(p, w)| w * (p.p0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Parameter("log-linear fit needs two distinct p0 values".into()));
    }
    let sxy: f64 = pts.iter().zip(&w).map(|(p, w)| w * (p.p0 - mx) * (p.p1.ln() - my)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let ln_sigma = (1.0 / sw + (p0_star - mx).powi(2) / sxx).sqrt();
    let (lo, hi) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), p| (l.min(p.p0), h.max(p.p0)));
    Ok(LogLinear { a, b, p0_star, p1_star: (a + b * p0_star).exp(), ln_sigma, extrapolated: p0_star < lo || p0_star > hi })
}
