use std::fs;
use std::process::{Command, Output};

fn apery(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apery"))
        .args(args)
        .env_remove("APERY_JOBS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn rep_prints_the_representation() {
    let out = apery(&["rep", "--prime", "3"]);
    assert_eq!((code(&out), String::from_utf8_lossy(&out.stdout).trim()), (0, "1,1"));
    let out = apery(&["rep", "--prime", "11"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "3,1");
    let out = apery(&["rep", "--prime", "5"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "none");
    assert_eq!(code(&apery(&["rep", "--prime", "9"])), 2);
}

#[test]
fn verify_writes_records_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let res = apery(&[
        "verify", "--check", "thm_main_ii", "--primes", "3:100", "--x", "-5:5", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 264);
}

#[test]
fn verify_to_stdout() {
    let res = apery(&["verify", "--check", "conj12", "--primes", "3:4"]);
    assert_eq!(code(&res), 0);
    let line = String::from_utf8(res.stdout).unwrap();
    assert_eq!(line.lines().count(), 1);
    assert!(line.contains("\"rep\":\"1,1\""));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "check = \"thm2\"\nprimes = \"3:30\"\nx = \"-2:2\"\npath = \"both\"\n").unwrap();
    let out = dir.path().join("r.jsonl");
    let res = apery(&[
        "verify", "--config", cfg.to_str().unwrap(), "--x", "1", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().all(|l| l.contains("\"path\":\"both\"")));
}

#[test]
fn csv_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let res = apery(&[
        "verify", "--check", "cor15", "--primes", "3:20", "--format", "csv", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&res), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("check,params,modulus,lhs,rhs,pass,path,extra\n"));
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn usage_and_config_errors_exit_two() {
    for args in [
        &["verify", "--check", "thm_main_ii", "--primes", "24:28", "--x", "1"][..],
        &["verify", "--check", "thm_main_ii", "--primes", "3:10"],
        &["verify", "--check", "conj44", "--n", "1:3", "--x", "1", "--path", "fast"],
        &["verify", "--check", "nonexistent", "--primes", "3:10"],
        &["verify", "--check", "conj12", "--primes", "3:10", "--x", "1"],
        &["identity", "--suite", "nonexistent"],
        &["scan", "--conjecture", "9.9"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&apery(args)), 2, "{args:?}");
    }
}

#[test]
fn identity_suite_exit_codes() {
    assert_eq!(code(&apery(&["identity", "--suite", "half_integer", "--m-max", "30"])), 0);
    assert_eq!(code(&apery(&["identity", "--suite", "amkr", "--r-max", "3", "--m-max", "6"])), 0);
}

#[test]
fn scan_writes_per_check_files() {
    let dir = tempfile::tempdir().unwrap();
    let res = apery(&[
        "scan", "--conjecture", "1.2", "--primes", "3:300", "--both-below", "100", "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 3);
    let conj = fs::read_to_string(dir.path().join("conj12.jsonl")).unwrap();
    assert!(conj.lines().any(|l| l.contains("\"path\":\"both\"")));
    assert!(conj.lines().any(|l| l.contains("\"path\":\"fast\"")));

    let res = apery(&[
        "scan", "--conjecture", "4.4", "--n", "1:12", "--x", "-2:2", "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&res), 0);
    assert_eq!(fs::read_to_string(dir.path().join("conj44.jsonl")).unwrap().lines().count(), 12 * 5 * 3 * 2 * 2);
}

#[test]
fn killed_run_resumes_to_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let whole = dir.path().join("whole.jsonl");
    let part = dir.path().join("part.jsonl");
    let ckpt = dir.path().join("part.ckpt");
    let common = ["verify", "--check", "schmidt", "--n", "1:50", "--x", "-3:3", "--r", "2,3", "--eps", "+1,-1", "--chunk", "7"];
    let run = |extra: &[&str]| {
        let mut args: Vec<&str> = common.to_vec();
        args.extend_from_slice(extra);
        apery(&args)
    };
    assert_eq!(code(&run(&["--out", whole.to_str().unwrap()])), 0);
    let part_args = ["--out", part.to_str().unwrap(), "--checkpoint", ckpt.to_str().unwrap()];
    let mut first = part_args.to_vec();
    first.extend(["--stop-after-chunks", "3"]);
    assert_eq!(code(&run(&first)), 0);
    assert!(fs::metadata(&part).unwrap().len() < fs::metadata(&whole).unwrap().len());
    assert_eq!(code(&run(&part_args)), 0);
    assert_eq!(fs::read(&whole).unwrap(), fs::read(&part).unwrap());
}
