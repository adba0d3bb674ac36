use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn exrec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exrec")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("exrec-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

fn text(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn codes_list_has_every_catalog_entry() {
    let o = exrec(&["codes", "list"]);
    assert!(o.status.success());
    let t = text(&o);
    assert_eq!(t.lines().count(), 16);
    for p in ["[[5,1,3]]", "[[7,1,3]]", "[[9,1,3]]", "[[13,1,3]]", "[[23,1,7]]", "[[47,1,11]]", "[[49,1,9]]", "[[60,4,10]]", "[[85,1,7]]"] {
        assert!(t.contains(p), "{p}");
    }
    let s = text(&exrec(&["codes", "show", "steane"]));
    assert_eq!(s.lines().filter(|l| !l.starts_with('#')).count(), 6);
}

#[test]
fn steane_zero_synthesis_matches_golden_listing() {
    let o = exrec(&["synth", "--code", "steane", "--basis", "zero"]);
    assert!(o.status.success());
    let t = text(&o);
    assert!(t.contains("# A 1101\n# A 1011\n# A 0111\n"));
    let golden = "# latin schedule: 9 CNOTs, depth 3\n# time 1\ncnot 1,4\ncnot 2,7\ncnot 3,6\n# time 2\ncnot 1,5\ncnot 2,4\ncnot 3,7\n# time 3\ncnot 1,7\ncnot 2,6\ncnot 3,5\n";
    assert!(t.ends_with(golden), "{t}");
    assert!(t.starts_with("# steane |zero> encoder: 9 CNOTs, depth 3"));
}

#[test]
fn count_reports_table_convention_and_delta() {
    let t = text(&exrec(&["count", "--code", "steane", "--L", "2", "--R", "1"]));
    assert!(t.contains("CX/Rec 519\n"));
    assert!(t.contains("delta 28\n"));
    let t = text(&exrec(&["count", "--code", "bs3", "--L", "1", "--R", "1"]));
    assert!(t.contains("CX/Rec 69\n"));
}

#[test]
fn empty_campaign_writes_header_only() {
    let d = scratch("empty");
    let out = d.join("r.csv");
    let o = exrec(&["simulate", "--code", "steane", "--L", "2", "--R", "1", "--p0", "1e-3", "--trials", "0", "--seed", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let body = fs::read_to_string(&out).unwrap();
    let data: Vec<&str> = body.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data, ["code,L,R,p0,pmem,trials,failures,p1,stderr,exhaustedCount,seed"]);
    assert!(body.contains("# seed 3\n") && body.contains("# config-hash "));
}

fn campaign(d: &Path, workers: &str, extra: &[&str]) -> Vec<u8> {
    let out = d.join(format!("w{workers}.csv"));
    let mut args = vec!["simulate", "--code", "bs3", "--L", "1", "--R", "1", "--p0", "2e-3,4e-3", "--trials", "30000", "--batch", "7000", "--seed", "9"];
    args.extend_from_slice(&["--workers", workers, "--out", out.to_str().unwrap()]);
    args.extend_from_slice(extra);
    assert!(exrec(&args).status.success());
    fs::read(out).unwrap()
}

#[test]
fn results_are_byte_identical_across_worker_counts() {
    let d = scratch("workers");
    let base = campaign(&d, "1", &[]);
    assert_eq!(campaign(&d, "8", &[]), base);
    assert_eq!(campaign(&d, "64", &[]), base);
}

#[test]
fn resumed_campaign_matches_uninterrupted_run() {
    let d = scratch("resume");
    let full = campaign(&d, "2", &[]);
    let hash = String::from_utf8_lossy(&full).lines().find_map(|l| l.strip_prefix("# config-hash ").map(str::to_string)).unwrap();
    // the first batch of the first point, run on its own
    let o = exrec(&["simulate", "--code", "bs3", "--L", "1", "--R", "1", "--p0", "2e-3", "--trials", "7000", "--seed", "9"]);
    let row = text(&o).lines().last().unwrap().to_string();
    let f: Vec<&str> = row.split(',').collect();
    let progress = d.join("w2.csv.progress");
    fs::write(&progress, format!("{hash} 0.002 0 7000 {} {}\n", f[6], f[9])).unwrap();
    assert_eq!(campaign(&d, "2", &["--resume"]), full);
    // a progress line is really reused
    fs::write(&progress, format!("{hash} 0.002 0 7000 0 0\n")).unwrap();
    assert_ne!(campaign(&d, "2", &["--resume"]), full);
    assert!(!progress.exists());
}

#[test]
fn config_file_and_flag_override() {
    let d = scratch("config");
    let cfg = d.join("c.conf");
    fs::write(&cfg, "code = steane\nL = 2\nR = 1\np0 = 1e-3\ntrials = 1000\nseed = 4\n").unwrap();
    let a = text(&exrec(&["simulate", "--config", cfg.to_str().unwrap()]));
    let b = text(&exrec(&["simulate", "--config", cfg.to_str().unwrap(), "--seed", "5"]));
    assert!(a.contains("seed=4") && b.contains("seed=5"));
    assert!(a.lines().last().unwrap().starts_with("steane,2,1,0.001,0.001,1000,"));
}

#[test]
fn exit_codes() {
    let code = |o: Output| o.status.code().unwrap();
    assert_eq!(code(exrec(&["count", "--code", "nosuch"])), 2);
    assert_eq!(code(exrec(&["simulate", "--code", "steane", "--L", "1", "--R", "1", "--p0", "1e-3", "--trials", "5"])), 2, "seed is mandatory");
    assert_eq!(code(exrec(&["simulate", "--config", "/nonexistent/campaign.conf"])), 3);
    let d = scratch("codes");
    let cfg = d.join("bad.conf");
    fs::write(&cfg, "code = steane\ncolour = blue\n").unwrap();
    assert_eq!(code(exrec(&["simulate", "--config", cfg.to_str().unwrap()])), 2);
    assert_eq!(code(exrec(&["decode-verify", "--code", "qr47", "--sample", "10", "--tables", d.to_str().unwrap()])), 3, "missing table");
    assert_eq!(code(exrec(&["scan-single-fault", "--code", "steane", "--L", "1", "--R", "0"])), 4);
    assert_eq!(code(exrec(&["scan-single-fault", "--code", "steane", "--L", "2", "--R", "1"])), 0);
    assert_eq!(code(exrec(&["decode-verify", "--code", "golay"])), 0);
}

#[test]
fn threshold_and_report_from_results() {
    let d = scratch("analysis");
    let csv = d.join("r.csv");
    let mut body = String::from("# synthetic\ncode,L,R,p0,pmem,trials,failures,p1,stderr,exhaustedCount,seed\n");
    for p in [1e-4, 1.5e-4, 2e-4, 3e-4, 4e-4] {
        let trials = 10_000_000u64;
        let f = (p * p / 2e-4 * trials as f64).round() as u64;
        body.push_str(&format!("bs3,1,1,{p},{p},{trials},{f},0,0,0,1\n"));
    }
    fs::write(&csv, body).unwrap();
    let o = exrec(&["threshold", "--in", csv.to_str().unwrap(), "--resamples", "200"]);
    assert!(o.status.success());
    let t = text(&o);
    let row = t.lines().find(|l| l.starts_with("bs3,1,1,eq,")).unwrap();
    let pth: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
    assert!((pth - 2e-4).abs() < 1e-5, "{row}");
    let md = text(&exrec(&["report", "--in", csv.to_str().unwrap(), "--format", "md", "--resamples", "200"]));
    assert!(md.lines().nth(2).unwrap().starts_with("| bs3 | [[9,1,3]] | 1 | 1 | 69 | -- | (5.00 ± "), "{md}");
    let again = text(&exrec(&["report", "--in", csv.to_str().unwrap(), "--format", "csv", "--resamples", "200"]));
    assert_eq!(again, text(&exrec(&["report", "--in", csv.to_str().unwrap(), "--format", "csv", "--resamples", "200"])));
}
