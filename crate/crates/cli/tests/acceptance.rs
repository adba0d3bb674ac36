//! One line per acceptance criterion. Criteria 1-4 and 9 are computed here
//! and asserted; 5-8 are read from the campaign results under `results/`
//! and reported without failing the run.

use exrec_cli::analysis::load;
use exrec_cli::campaign::{run, Campaign, PmemMode};
use exrec_core::circuit::NoiseModel;
use exrec_core::decoders::cyclic::{table_file, CyclicDecoder};
use exrec_core::decoders::{decoder, verify_decoder, DecoderOptions, VerifyMode};
use exrec_core::gadgets::*;
use exrec_core::galois::BinaryMatrix;
use exrec_core::montecarlo::{estimate_p1, single_fault_scan, Engine, FailureEstimate};
use exrec_core::stabilizer::{build_code, CodeSpec};
use exrec_core::threshold::{fit_pseudo_threshold, CurvePoint};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

fn line(n: usize, ok: Option<bool>, detail: &str) {
    let tag = match ok {
        Some(true) => "PASS",
        Some(false) => "FAIL",
        None => "NOT RUN",
    };
    println!("criterion {n}: {tag}: {detail}");
}

fn results_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../results")
}

fn criterion_1() -> bool {
    let t = Instant::now();
    let hx = build_code(CodeSpec::Steane).unwrap().css.unwrap().hx;
    let (a, perm) = standard_a(&hx).unwrap();
    let want = BinaryMatrix::from_strs(&["1101", "1011", "0111"]).unwrap();
    let s = latin_schedule(&a);
    let listing = latin_listing(&a, &s);
    let golden = "# time 1\ncnot 1,4\ncnot 2,7\ncnot 3,6\n# time 2\ncnot 1,5\ncnot 2,4\ncnot 3,7\n# time 3\ncnot 1,7\ncnot 2,6\ncnot 3,5\n";
    let code = build_code(CodeSpec::Steane).unwrap();
    let enc = encoder(CodeSpec::Steane, &code, Basis::Zero).unwrap();
    let elapsed = t.elapsed();
    let ok = a == want && s.entries.len() == 9 && s.depth == 3 && listing == golden && enc.cnot_count() == 9 && enc.depth == 3 && elapsed.as_secs_f64() < 1.0;
    line(1, Some(ok), &format!("A = {:?}, permutation {perm:?}, {} CNOTs, depth {}, listing matches: {}, {:.0?}", a.to_text().lines().collect::<Vec<_>>(), s.entries.len(), s.depth, listing == golden, elapsed));
    ok
}

fn criterion_2() -> bool {
    let t = Instant::now();
    let exhaustive = [CodeSpec::FiveQubit, CodeSpec::Steane, CodeSpec::BaconShor(3), CodeSpec::Surface(3), CodeSpec::ReedMuller15, CodeSpec::Polynomial21, CodeSpec::Golay, CodeSpec::BaconShor(5), CodeSpec::Concat49];
    let sampled = [CodeSpec::Surface(5), CodeSpec::Qr47, CodeSpec::BaconShor(7), CodeSpec::Polynomial60, CodeSpec::BaconShor(9), CodeSpec::Surface(7)];
    let dir = std::env::temp_dir().join(format!("exrec-acceptance-tables-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let opts = DecoderOptions { table_dir: Some(dir.clone()) };
    let mut ok = true;
    let mut parts = Vec::new();
    for (spec, mode) in exhaustive.iter().map(|&s| (s, VerifyMode::Exhaustive)).chain(sampled.iter().map(|&s| (s, VerifyMode::Sampled { samples: 1_000_000, seed: 2 }))) {
        let code = build_code(spec).unwrap();
        if spec == CodeSpec::Qr47 {
            // persisted table, then decoded from the file
            CyclicDecoder::build(&code, 5).unwrap().save_table(&dir.join(table_file(&code.id))).unwrap();
        }
        let dec = decoder(spec, &code, &opts).unwrap();
        let rep = verify_decoder(spec, &code, &*dec, mode).unwrap();
        let failed: u64 = rep.classes.iter().map(|c| c.failed).sum();
        ok &= failed == 0;
        let kind = if mode == VerifyMode::Exhaustive { "exh" } else { "1e6" };
        parts.push(format!("{spec} {kind} {} checked {failed} failed", rep.checked()));
    }
    let _ = std::fs::remove_dir_all(&dir);
    line(2, Some(ok), &format!("{}; {:.0?}", parts.join(", "), t.elapsed()));
    ok
}

fn engine(spec: CodeSpec, style: EcStyle, l: usize, r: usize) -> Engine {
    let mut cfg = ExRecConfig::new(spec, l, r);
    cfg.style = style;
    Engine::new(Arc::new(build_exrec(cfg).unwrap()), &DecoderOptions::default()).unwrap()
}

fn criterion_3() -> bool {
    let t = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for (spec, style, l, r) in [
        (CodeSpec::Steane, EcStyle::Steane, 2, 1),
        (CodeSpec::BaconShor(3), EcStyle::Steane, 1, 1),
        (CodeSpec::Surface(3), EcStyle::Steane, 3, 1),
        (CodeSpec::Surface(3), EcStyle::Shor, 1, 1),
        (CodeSpec::BaconShor(5), EcStyle::Steane, 5, 1),
        (CodeSpec::FiveQubit, EcStyle::Knill, 1, 1),
    ] {
        let e = engine(spec, style, l, r);
        let bad = single_fault_scan(&e).len();
        ok &= bad == 0;
        parts.push(format!("{} {}: {bad} malignant", spec, e.exrec.config));
    }
    line(3, Some(ok), &format!("{}; {:.0?}", parts.join(", "), t.elapsed()));
    ok
}

fn criterion_4() -> bool {
    let mut ok = true;
    let mut parts = Vec::new();
    for (spec, l, r, want) in [(CodeSpec::Steane, 2, 1, 519usize), (CodeSpec::BaconShor(3), 1, 1, 69)] {
        let cx = count_cx_per_rec(&build_exrec(ExRecConfig::new(spec, l, r)).unwrap());
        let rel = (cx.table as f64 - want as f64).abs() / want as f64;
        ok &= rel <= 0.10;
        parts.push(format!("{spec} L={l} R={r}: {} (table {want}, physical {}, delta {})", cx.table, cx.physical, cx.delta()));
    }
    line(4, Some(ok), &parts.join(", "));
    ok
}

/// Pseudo-threshold of one configuration from the results files, pmem = p0.
fn fitted(label: &str, l: usize, r: usize, mode: PmemMode, min_trials: u64) -> Result<(f64, f64, usize), String> {
    let files: Vec<PathBuf> = std::fs::read_dir(results_dir())
        .map_err(|_| "no results directory".to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .collect();
    let groups = load(&files).map_err(|e| e.to_string())?;
    let ests: Vec<&FailureEstimate> = groups
        .get(&(label.to_string(), l, r))
        .ok_or_else(|| format!("no {label} L={l} R={r} results"))?
        .iter()
        .filter(|e| PmemMode::of(e) == mode && e.trials >= min_trials)
        .collect();
    let pts: Vec<CurvePoint> = ests.iter().map(|e| CurvePoint { p0: e.p0, p1: e.p1, sigma: e.stderr }).collect();
    let est = fit_pseudo_threshold(&pts, None, 1000, &mut ChaCha8Rng::seed_from_u64(1)).map_err(|e| e.to_string())?;
    Ok((est.p_th, est.sigma, pts.len()))
}

fn compare(label: &str, l: usize, r: usize, target: (f64, f64), min_trials: u64) -> (Option<bool>, String) {
    match fitted(label, l, r, PmemMode::Eq, min_trials) {
        Ok((p, s, n)) => {
            let z = (p - target.0).abs() / (s * s + target.1 * target.1).sqrt();
            (Some(z <= 3.0), format!("{label} L={l} R={r} pTh = {p:.3e} ± {s:.1e} from {n} points, target {:.3e} ± {:.1e}, {z:.1} combined σ", target.0, target.1))
        }
        Err(e) => (None, format!("{label} L={l} R={r}: {e}")),
    }
}

fn combine(n: usize, items: Vec<(Option<bool>, String)>) {
    let ok = if items.iter().any(|i| i.0.is_none()) { None } else { Some(items.iter().all(|i| i.0 == Some(true))) };
    line(n, ok, &items.into_iter().map(|i| i.1).collect::<Vec<_>>().join("; "));
}

fn criterion_6() {
    let files: Vec<PathBuf> = std::fs::read_dir(results_dir()).map(|d| d.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "csv")).collect()).unwrap_or_default();
    let groups = load(&files).unwrap_or_default();
    let at = groups.get(&("bs3".to_string(), 1, 1)).and_then(|v| v.iter().find(|e| e.p0 == 1e-4 && e.pmem == 1e-4 && e.trials >= 10_000_000).cloned());
    match at {
        Some(e) => {
            let z = (e.p1 - 4.90e-5).abs() / (e.stderr.powi(2) + 0.09e-5f64.powi(2)).sqrt();
            line(6, Some(z <= 3.0), &format!("[[9,1,3]] p1(1e-4) = {:.3e} ± {:.1e} over {} trials, target 4.90e-5 ± 0.09e-5, {z:.1} combined σ", e.p1, e.stderr, e.trials));
        }
        None => line(6, None, "no bs3 p0 = pmem = 1e-4 result with 1e7 trials"),
    }
}

/// Property check for rows outside the desk-scale targets: p1 is
/// nondecreasing in p0 within 3σ on every results curve.
fn monotone_everywhere() -> (Option<bool>, String) {
    let files: Vec<PathBuf> = std::fs::read_dir(results_dir()).map(|d| d.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "csv")).collect()).unwrap_or_default();
    let Ok(groups) = load(&files) else { return (None, "unreadable results".into()) };
    if groups.is_empty() {
        return (None, "no results".into());
    }
    let mut curves = 0;
    for ests in groups.values() {
        for mode in [PmemMode::Eq, PmemMode::Zero] {
            let c: Vec<&FailureEstimate> = ests.iter().filter(|e| PmemMode::of(e) == mode).collect();
            curves += 1;
            for w in c.windows(2) {
                if w[1].p1 + 3.0 * (w[0].stderr.powi(2) + w[1].stderr.powi(2)).sqrt() < w[0].p1 {
                    return (Some(false), format!("p1 decreases between p0 = {} and {}", w[0].p0, w[1].p0));
                }
            }
        }
    }
    (Some(true), format!("p1 monotone in p0 within 3σ on all {curves} curves"))
}

fn criterion_9() -> bool {
    let mut c = Campaign {
        exrec: ExRecConfig::new(CodeSpec::Steane, 2, 1),
        pmem: PmemMode::Eq,
        p0: vec![1e-3, 3e-3],
        trials: 20_000,
        seed: 77,
        batch: 6_000,
        workers: 1,
        out: None,
        tables: None,
        resume: false,
    };
    let base = run(&c).unwrap();
    let mut ok = true;
    for w in [8, 64] {
        c.workers = w;
        ok &= run(&c).unwrap() == base;
    }
    let e = engine(CodeSpec::BaconShor(3), EcStyle::Steane, 1, 1);
    let noise = NoiseModel::uniform(2e-3, true).unwrap();
    let a = estimate_p1(&e, noise, 20_000, 5, 1).unwrap();
    ok &= [8, 64].iter().all(|&w| estimate_p1(&e, noise, 20_000, 5, w).unwrap() == a);
    line(9, Some(ok), &format!("results CSV ({} bytes) byte-identical for 1, 8 and 64 workers", base.len()));
    ok
}

#[test]
fn acceptance() {
    let c1 = criterion_1();
    let c2 = criterion_2();
    let c3 = criterion_3();
    let c4 = criterion_4();
    combine(5, vec![compare("bs3", 1, 1, (2.06e-4, 0.02e-4), 1_000_000), compare("steane", 5, 1, (2.58e-4, 0.06e-4), 1_000_000), compare("bs5", 5, 1, (9.74e-4, 0.07e-4), 1_000_000)]);
    criterion_6();
    combine(7, vec![compare("steane+perfect", 1, 1, (9.1e-4, 0.2e-4), 1)]);
    combine(8, vec![compare("golay", 30, 1, (2.25e-3, 0.03e-3), 1), compare("surface3", 10, 1, (2.54e-4, 0.07e-4), 1), monotone_everywhere()]);
    let c9 = criterion_9();
    assert!(c1 && c2 && c3 && c4 && c9);
}
