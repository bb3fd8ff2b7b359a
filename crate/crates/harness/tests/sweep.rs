use std::fs;
use std::io::Write;
use std::path::Path;

use apery_core::congruences::CheckId;
use apery_harness::config::{Format, PathSel, SweepConfig};
use apery_harness::identity::{run_identities, IdentityRun};
use apery_harness::{cross_check, run_sweep, HarnessError, Record};

fn read_records(path: &Path) -> Vec<Record> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn with_out(cfg: SweepConfig, dir: &Path, name: &str) -> SweepConfig {
    SweepConfig {
        out: Some(dir.join(name)),
        ..cfg
    }
}

#[test]
fn thm_main_ii_grid_has_264_passing_records() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = with_out(SweepConfig::new(CheckId::ThmMainII, 3, 100).with_xs(-5..=5), dir.path(), "a.jsonl");
    let s = run_sweep(&cfg).unwrap();
    assert_eq!((s.counts.tuples, s.counts.passes), (264, 264));
    assert_eq!(s.exit_code(), 0);
    let records = read_records(cfg.out.as_ref().unwrap());
    assert_eq!(records.len(), 264);
    // ascending (p, x)
    let keys: Vec<(i64, i64)> = records
        .iter()
        .map(|r| (r.params["p"].as_i64().unwrap(), r.params["x"].as_i64().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(keys[0], (3, -5));
}

#[test]
fn conj12_single_prime() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = with_out(SweepConfig::new(CheckId::Conj12, 3, 4), dir.path(), "c.jsonl");
    let s = run_sweep(&cfg).unwrap();
    assert_eq!((s.counts.tuples, s.counts.passes), (1, 1));
    let r = &read_records(cfg.out.as_ref().unwrap())[0];
    assert_eq!(r.extra.rep.as_deref(), Some("1,1"));
    assert_eq!((r.modulus.as_deref(), r.lhs.as_deref()), (Some("9"), Some("7")));
    assert_eq!(r.pass, Some(true));
}

#[test]
fn empty_prime_range_is_a_config_error() {
    let cfg = SweepConfig::new(CheckId::ThmMainII, 24, 28).with_xs([1]);
    assert!(matches!(run_sweep(&cfg), Err(HarnessError::Config(_))));
    let cfg = SweepConfig::new(CheckId::ThmMainII, 10, 5).with_xs([1]);
    assert!(matches!(run_sweep(&cfg), Err(HarnessError::Config(_))));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = with_out(SweepConfig::new(CheckId::Conj12, 3, 10), dir.path(), "missing/dir/out.jsonl");
    assert!(matches!(run_sweep(&cfg), Err(HarnessError::Io { .. })));
}

#[test]
fn thm3_cross_check_has_no_divergences() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = with_out(
        SweepConfig::new(CheckId::Thm3, 5, 200).with_xs(-5..=5).with_path(PathSel::Both),
        dir.path(),
        "t.jsonl",
    );
    let s = cross_check(&cfg).unwrap();
    assert_eq!(s.counts.divergences, 0);
    assert_eq!(s.counts.passes, s.counts.tuples);
    assert!(read_records(cfg.out.as_ref().unwrap()).iter().all(|r| r.path == "both"));
    assert!(cross_check(&cfg.clone().with_path(PathSel::Fast)).is_err());
}

#[test]
fn central_binomial_cross_check_to_500() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = with_out(
        SweepConfig::new(CheckId::CentralBinomial, 3, 500).with_xs([-3, 1, 2]).with_path(PathSel::Both),
        dir.path(),
        "cb.jsonl",
    );
    let s = cross_check(&cfg).unwrap();
    assert_eq!(s.counts.divergences, 0);
    assert_eq!(s.exit_code(), 0);
}

#[test]
fn single_tuple_run_counts_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = with_out(
        SweepConfig::new(CheckId::Thm2, 5, 5).with_xs([1]).with_path(PathSel::Both),
        dir.path(),
        "one.jsonl",
    );
    let s = cross_check(&cfg).unwrap();
    assert_eq!((s.counts.tuples, s.counts.passes), (1, 1));
}

#[test]
fn skips_are_recorded_with_a_tag() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = with_out(SweepConfig::new(CheckId::Ppsun, 3, 7).with_xs([0, 5]), dir.path(), "p.jsonl");
    cfg.avals = vec![1, 2, 9];
    let s = run_sweep(&cfg).unwrap();
    assert_eq!(s.exit_code(), 0);
    let records = read_records(cfg.out.as_ref().unwrap());
    assert_eq!(records.len() as u64, s.counts.tuples);
    let skipped: Vec<&Record> = records.iter().filter(|r| r.pass.is_none()).collect();
    assert_eq!(skipped.len() as u64, s.counts.skips);
    assert!(skipped.iter().any(|r| r.extra.flags == ["LIMIT_EXCEEDED"]));
    assert!(skipped.iter().any(|r| r.extra.flags == ["NOT_INVERTIBLE"]));
}

#[test]
fn output_is_deterministic_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let base = SweepConfig::new(CheckId::Thm43, 1, 30).with_xs(-3..=3);
    let mut a = with_out(base.clone(), dir.path(), "a.jsonl");
    a.jobs = 1;
    a.rs = vec![2, 3];
    a.avals = vec![0, 1];
    let mut b = a.clone();
    b.jobs = 3;
    b.out = Some(dir.path().join("b.jsonl"));
    run_sweep(&a).unwrap();
    run_sweep(&b).unwrap();
    let (fa, fb) = (fs::read(a.out.unwrap()).unwrap(), fs::read(b.out.unwrap()).unwrap());
    assert!(!fa.is_empty());
    assert_eq!(fa, fb);
}

fn resume_case(check: CheckId, lo: u64, hi: u64, xs: &[i64], path: PathSel, format: Format) {
    let dir = tempfile::tempdir().unwrap();
    let mut full = SweepConfig::new(check, lo, hi).with_xs(xs.iter().copied()).with_path(path);
    full.chunk = 5;
    full.format = format;
    let whole = with_out(full.clone(), dir.path(), "whole.out");
    let whole_summary = run_sweep(&whole).unwrap();

    let mut part = with_out(full, dir.path(), "part.out");
    part.checkpoint = Some(dir.path().join("part.ckpt"));
    part.stop_after_chunks = Some(2);
    let first = run_sweep(&part).unwrap();
    assert!(first.interrupted);
    // a torn record and a torn checkpoint line, as after a kill mid-chunk
    fs::OpenOptions::new()
        .append(true)
        .open(part.out.as_ref().unwrap())
        .unwrap()
        .write_all(b"{\"check\":\"tor")
        .unwrap();
    fs::OpenOptions::new()
        .append(true)
        .open(part.checkpoint.as_ref().unwrap())
        .unwrap()
        .write_all(b"{\"chunk\":9")
        .unwrap();
    part.stop_after_chunks = Some(1);
    run_sweep(&part).unwrap();
    part.stop_after_chunks = None;
    part.jobs = 2;
    let resumed = run_sweep(&part).unwrap();
    assert!(!resumed.interrupted);
    assert_eq!(resumed.counts, whole_summary.counts);
    assert_eq!(
        fs::read(whole.out.as_ref().unwrap()).unwrap(),
        fs::read(part.out.as_ref().unwrap()).unwrap(),
        "{check}"
    );
}

#[test]
fn resume_matches_an_uninterrupted_run() {
    resume_case(CheckId::Schmidt, 1, 40, &[-2, 1], PathSel::Exact, Format::Jsonl);
    resume_case(CheckId::Thm2, 3, 200, &[-1, 2], PathSel::Both, Format::Jsonl);
    resume_case(CheckId::Conj12, 3, 400, &[0], PathSel::Fast, Format::Csv);
}

#[test]
fn checkpoint_for_another_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = with_out(SweepConfig::new(CheckId::Conj12, 3, 100), dir.path(), "o.jsonl");
    cfg.checkpoint = Some(dir.path().join("o.ckpt"));
    cfg.chunk = 4;
    cfg.stop_after_chunks = Some(1);
    run_sweep(&cfg).unwrap();
    cfg.hi = 200;
    assert!(matches!(run_sweep(&cfg), Err(HarnessError::Config(_))));
}

#[test]
fn summary_csv_and_meta() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = with_out(SweepConfig::new(CheckId::Cor15, 3, 50), dir.path(), "o.jsonl");
    let summary = dir.path().join("summary.csv");
    cfg.summary = Some(summary.clone());
    run_sweep(&cfg).unwrap();
    let text = fs::read_to_string(&summary).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check,tuples,passes,fails,skips,wall_ms"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..5], ["cor15", "14", "13", "0", "1"]);
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta[0]["config"]["check"], "cor15");
    assert!(meta[0]["started_unix_ms"].as_u64().unwrap() > 0);
}

#[test]
fn identity_suites() {
    let dir = tempfile::tempdir().unwrap();
    let mut run = IdentityRun::new("amkr");
    run.bounds.r = 3;
    run.bounds.amkr_m = 6;
    run.out = Some(dir.path().join("amkr.jsonl"));
    let s = run_identities(&run).unwrap();
    assert_eq!(s.len(), 1);
    assert!(s[0].counts.tuples > 0);
    assert_eq!(s[0].counts.passes, s[0].counts.tuples);
    let records = read_records(run.out.as_ref().unwrap());
    assert_eq!(records.len() as u64, s[0].counts.tuples);
    assert!(records.iter().all(|r| r.modulus.is_none() && r.pass == Some(true)));

    let mut run = IdentityRun::new("half_integer");
    run.bounds.half_m = 30;
    run.out = Some(dir.path().join("half.jsonl"));
    let s = run_identities(&run).unwrap();
    assert_eq!((s[0].counts.tuples, s[0].counts.passes), (31, 31));

    assert!(matches!(
        run_identities(&IdentityRun::new("nonexistent")),
        Err(HarnessError::UnknownSuite(_))
    ));
}
