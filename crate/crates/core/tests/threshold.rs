use exrec_core::montecarlo::FailureEstimate;
use exrec_core::threshold::fit::{crossing, reduced_chi2};
use exrec_core::threshold::*;
use exrec_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn exact(f: impl Fn(f64) -> f64, p0s: &[f64], rel: f64) -> Vec<CurvePoint> {
    p0s.iter().map(|&p| CurvePoint { p0: p, p1: f(p), sigma: rel * f(p) }).collect()
}

#[test]
fn noise_free_quadratic_crosses_at_closed_form() {
    // 2p0²/1e-3 = p0 at p0 = 5e-4
    let pts = exact(|p| 2.0 * p * p / 1e-3, &[2e-4, 3e-4, 4e-4, 6e-4, 8e-4], 1e-9);
    let est = fit_pseudo_threshold(&pts, Some(2), 200, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    assert!((est.p_th - 5e-4).abs() < 1e-10, "{}", est.p_th);
    assert_eq!((est.degree, est.roots, est.extrapolated), (2, 200, false));
}

#[test]
fn synthetic_quadratic_with_one_percent_noise_is_recovered() {
    let truth = |p: f64| 4000.0 * p * p + 0.05 * p;
    let p_true = 0.95 / 4000.0;
    let grid = [1e-4, 1.5e-4, 2e-4, 2.5e-4, 3e-4, 3.5e-4];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut inside = 0;
    for _ in 0..100 {
        let pts: Vec<CurvePoint> = grid
            .iter()
            .map(|&p| {
                let s = 0.01 * truth(p);
                CurvePoint { p0: p, p1: Normal::new(truth(p), s).unwrap().sample(&mut rng), sigma: s }
            })
            .collect();
        let est = fit_pseudo_threshold(&pts, Some(2), 300, &mut rng).unwrap();
        if (est.p_th - p_true).abs() <= 3.0 * est.sigma {
            inside += 1;
        }
    }
    assert!(inside >= 95, "{inside} of 100 within 3σ");
}

#[test]
fn automatic_degree_bumps_for_cubic_data() {
    let pts = exact(|p| 3e6 * p * p * p + 10.0 * p * p, &[1e-4, 2e-4, 4e-4, 6e-4, 8e-4, 1e-3], 0.01);
    let quad = fit_polynomial(
        &pts.iter().map(|p| p.p0).collect::<Vec<_>>(),
        &pts.iter().map(|p| p.p1).collect::<Vec<_>>(),
        &pts.iter().map(|p| p.sigma).collect::<Vec<_>>(),
        2,
    )
    .unwrap();
    assert!(reduced_chi2(&quad, &pts).unwrap() > 3.0);
    let est = fit_pseudo_threshold(&pts, None, 100, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    assert_eq!(est.degree, 3);
    let pts = exact(|p| 2.0 * p * p / 1e-3, &[2e-4, 3e-4, 4e-4, 6e-4, 8e-4], 0.01);
    assert_eq!(fit_pseudo_threshold(&pts, None, 100, &mut ChaCha8Rng::seed_from_u64(3)).unwrap().degree, 2);
}

#[test]
fn curve_below_the_diagonal_is_an_unstable_fit() {
    let pts = exact(|p| 10.0 * p * p, &[1e-4, 2e-4, 3e-4, 4e-4], 0.01);
    let err = fit_pseudo_threshold(&pts, Some(2), 100, &mut ChaCha8Rng::seed_from_u64(4)).unwrap_err();
    assert!(matches!(err, Error::UnstableFit(_)));
}

#[test]
fn fit_preconditions() {
    let pts = exact(|p| p * p, &[1e-4, 2e-4, 3e-4], 0.01);
    assert!(matches!(fit_pseudo_threshold(&pts, Some(2), 10, &mut ChaCha8Rng::seed_from_u64(0)), Err(Error::Parameter(_))));
    let mut pts = exact(|p| p * p, &[1e-4, 2e-4, 3e-4, 4e-4], 0.01);
    pts[1].sigma = 0.0;
    assert!(matches!(fit_pseudo_threshold(&pts, Some(2), 10, &mut ChaCha8Rng::seed_from_u64(0)), Err(Error::Parameter(_))));
}

#[test]
fn crossing_is_bracketed_by_the_range() {
    let p = fit_polynomial(&[1.0, 2.0, 3.0], &[0.5, 4.0, 9.0], &[1.0; 3], 2).unwrap();
    assert!(crossing(&p, 1.5, 3.0).is_none());
}

#[test]
fn log_linear_recovers_exact_line() {
    let (a, b) = (-9.0, 4000.0);
    let pts = exact(|p| (a + b * p).exp(), &[5e-4, 1e-3, 1.5e-3, 2e-3], 0.1);
    let fit = extrapolate_log_linear(&pts, 1e-4).unwrap();
    assert!((fit.a - a).abs() < 1e-9 && (fit.b - b).abs() < 1e-6);
    assert!((fit.p1_star - (a + b * 1e-4).exp()).abs() < 1e-12);
    assert!(fit.extrapolated);
    assert!(!extrapolate_log_linear(&pts, 1e-3).unwrap().extrapolated);
}

#[test]
fn log_linear_slope_with_five_percent_noise() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (a, b) = (-12.0, 3000.0);
    let grid: Vec<f64> = (1..=8).map(|i| i as f64 * 2.5e-4).collect();
    let mut inside = 0;
    for _ in 0..50 {
        let pts: Vec<CurvePoint> = grid
            .iter()
            .map(|&p| {
                let v = (a + b * p).exp();
                CurvePoint { p0: p, p1: v * (1.0 + 0.05 * Normal::new(0.0, 1.0).unwrap().sample(&mut rng)), sigma: 0.05 * v }
            })
            .collect();
        let fit = extrapolate_log_linear(&pts, 0.0).unwrap();
        let sxx: f64 = {
            let m = grid.iter().sum::<f64>() / grid.len() as f64;
            grid.iter().map(|p| (p - m).powi(2)).sum()
        };
        let slope_sigma = 0.05 / sxx.sqrt();
        if (fit.b - b).abs() <= 3.0 * slope_sigma {
            inside += 1;
        }
    }
    assert!(inside >= 47, "{inside}");
}

#[test]
fn log_linear_rejects_zero_rates() {
    let pts = [CurvePoint { p0: 1e-3, p1: 0.0, sigma: 0.0 }, CurvePoint { p0: 2e-3, p1: 1e-5, sigma: 1e-6 }];
    assert!(matches!(extrapolate_log_linear(&pts, 1e-4), Err(Error::Parameter(_))));
}

#[test]
fn scaling_closed_forms() {
    assert!((threshold_from_sets(1e6, 1) - 1e-6).abs() < 1e-20);
    assert!((threshold_from_sets(1e6, 2) - 1e-3).abs() < 1e-15);
    assert_eq!(project_p1(3e-4, 3e-4, 3), 3e-4);
    assert!((project_p1(1e-4, 1e-3, 2) - 1e-6).abs() < 1e-20);
}

#[test]
fn binomial_threshold_approaches_asymptote() {
    let (alpha, delta) = (1.0, 0.05);
    let n = 10_000u64;
    let direct = binomial_threshold((alpha * n as f64) as u64, (delta * n as f64) as u64);
    let asym = asymptotic_threshold(alpha, delta);
    assert!((direct - asym).abs() <= (delta / alpha).powi(2), "{direct} vs {asym}");
    // the difference shrinks with δ
    let d2 = binomial_threshold(n, n / 100);
    assert!((d2 - asymptotic_threshold(1.0, 0.01)).abs() < (direct - asym).abs());
    assert!((scaling::ln_binomial(10, 3) - 120f64.ln()).abs() < 1e-12);
}

fn est(p0: f64, pmem: f64, trials: u64, failures: u64) -> FailureEstimate {
    FailureEstimate::from_counts(p0, pmem, trials, failures, 0, 1)
}

#[test]
fn empty_report_is_header_only() {
    let rows = overhead_report(&[], 100, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
    assert!(rows.is_empty());
    assert_eq!(render_csv(&rows).lines().count(), 1);
    assert_eq!(render_markdown(&rows).lines().count(), 2);
}

#[test]
fn report_rows_are_ordered_and_reproducible() {
    let curve = |pmem: bool| -> Vec<FailureEstimate> {
        [1e-4, 2e-4, 3e-4, 4e-4, 6e-4]
            .iter()
            .map(|&p| est(p, if pmem { p } else { 0.0 }, 1_000_000, (p * p * 5e9).round() as u64))
            .collect()
    };
    let mk = |id: &str, n, l| OverheadInput {
        code_id: id.into(),
        n,
        k: 1,
        d: 3,
        l,
        r: 1,
        cx_per_rec: 100 * n,
        estimates: curve(true).into_iter().chain(curve(false)).collect(),
    };
    let inputs = vec![mk("steane", 7, 5), mk("bs3", 9, 1), mk("steane", 7, 2)];
    let a = overhead_report(&inputs, 200, &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
    let b = overhead_report(&inputs, 200, &mut ChaCha8Rng::seed_from_u64(8)).unwrap();
    assert_eq!(render_csv(&a), render_csv(&b));
    assert_eq!(render_markdown(&a), render_markdown(&b));
    let order: Vec<(String, usize)> = a.iter().map(|r| (r.code_id.clone(), r.l)).collect();
    assert_eq!(order, [("steane".to_string(), 2), ("steane".to_string(), 5), ("bs3".to_string(), 1)]);
    let pth = a[0].pth_mem.unwrap();
    assert!((pth.value - 2e-4).abs() < 5.0 * pth.sigma.max(1e-6), "{pth:?}");
    assert_eq!(a[0].p1_mem.unwrap().value, 5e-5);
    assert!(render_csv(&a).lines().nth(1).unwrap().starts_with("steane,\"[[7,1,3]]\",2,1,700,"));
}

#[test]
fn missing_reference_point_is_extrapolated_in_brackets() {
    let input = OverheadInput {
        code_id: "golay".into(),
        n: 23,
        k: 1,
        d: 7,
        l: 10,
        r: 1,
        cx_per_rec: 16_023,
        estimates: vec![est(1e-3, 1e-3, 100_000, 10), est(1.5e-3, 1.5e-3, 100_000, 60), est(2e-3, 2e-3, 100_000, 240)],
    };
    let row = overhead_report(&[input], 50, &mut ChaCha8Rng::seed_from_u64(1)).unwrap().remove(0);
    let cell = row.p1_mem.unwrap();
    assert!(cell.extrapolated);
    assert!(cell.render().starts_with('[') && cell.render().ends_with(']'));
    assert!(row.p1_nomem.is_none() && row.pth_nomem.is_none());
}
