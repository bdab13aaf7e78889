use std::fs;
use std::path::Path;

use quiver_parity::cli::{main_with_args, run, Command, RunArgs, RunConfig};

const A2: &str = r#"{"type": "A2", "vertices": ["i", "j"], "arrows": [{"from": "i", "to": "j"}]}"#;

fn setup(dir: &Path, body: &str) -> std::path::PathBuf {
    fs::write(dir.join("a2.json"), A2).unwrap();
    let cfg = dir.join("run.toml");
    fs::write(&cfg, format!("quiver = \"a2.json\"\n{body}")).unwrap();
    cfg
}

fn args(cfg: &Path) -> RunArgs {
    RunArgs { config: cfg.to_path_buf(), out: None, jobs: None }
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((p.strip_prefix(dir).unwrap().display().to_string(), fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn orbits_on_a2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(dir.path(), "nu = [[1, 1]]\n");
    let c = RunConfig::load(&cfg).unwrap();
    let out = run(&Command::Orbits(args(&cfg)), &c).unwrap();
    let rows: Vec<&str> = out.text.lines().filter(|l| l.starts_with("ai+aj")).collect();
    assert_eq!(rows.len(), 2);
    let dims: Vec<&str> = rows.iter().map(|r| r.split_whitespace().rev().nth(1).unwrap()).collect();
    assert_eq!(dims, ["0", "1"]);
}

#[test]
fn f_dim_columns_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(dir.path(), "nu_cap = 3\n");
    let out = run(&Command::FDim(args(&cfg)), &RunConfig::load(&cfg).unwrap()).unwrap();
    let rows: Vec<Vec<&str>> = out.text.lines().skip(1).take(9).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r[1] == r[2] && r[3] == "yes"));
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn even_scan_verdict_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(dir.path(), "nu_cap = 3\n");
    let c = RunConfig::load(&cfg).unwrap();
    let out = run(&Command::EvenScan(args(&cfg)), &c).unwrap();
    assert!(out.text.contains("0 alerts") && out.text.contains("verdict even-consistent"), "{}", out.text);
    let first = files(&dir.path().join("out"));
    run(&Command::EvenScan(args(&cfg)), &c).unwrap();
    assert_eq!(first, files(&dir.path().join("out")));

    // a fresh directory gives byte-identical records
    let other = tempfile::tempdir().unwrap();
    let cfg2 = setup(other.path(), "nu_cap = 3\n");
    run(&Command::EvenScan(args(&cfg2)), &RunConfig::load(&cfg2).unwrap()).unwrap();
    assert_eq!(first, files(&other.path().join("out")));
}

#[test]
fn resume_completes_the_same_records() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(dir.path(), "nu_cap = 2\n");
    let c = RunConfig::load(&cfg).unwrap();
    run(&Command::Fibers(args(&cfg)), &c).unwrap();
    let full = files(&dir.path().join("out"));
    // drop half of the records, as if interrupted
    for (k, (name, _)) in full.iter().enumerate() {
        if k % 2 == 0 {
            fs::remove_file(dir.path().join("out").join(name)).unwrap();
        }
    }
    run(&Command::Fibers(args(&cfg)), &c).unwrap();
    assert_eq!(full, files(&dir.path().join("out")));
}

#[test]
fn budget_exhaustion_is_partial() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(dir.path(), "nu = [[2, 2]]\nbudget = 3\n");
    let out = run(&Command::Fibers(args(&cfg)), &RunConfig::load(&cfg).unwrap()).unwrap();
    assert!(out.incomplete > 0 && out.records > out.incomplete);
    assert_eq!(out.exit_code(), 3);
    assert!(out.text.contains("INCOMPLETE"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(dir.path(), "nu = [[1, 1]]\n");
    let run_main = |sub: &str, cfg: &Path| main_with_args(["qparity", sub, "--config", cfg.to_str().unwrap()]);
    assert_eq!(run_main("basis", &cfg), 0);
    assert_eq!(run_main("res-check", &cfg), 0);

    let missing = dir.path().join("missing.toml");
    fs::write(&missing, "quiver = \"nowhere.json\"\n").unwrap();
    assert_eq!(run_main("orbits", &missing), 2);
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "quiver = \"a2.json\"\nprimes = [6]\n").unwrap();
    assert_eq!(run_main("orbits", &bad), 2);
    fs::write(&bad, "quiver = \"a2.json\"\nnu_cap = 0\n").unwrap();
    assert_eq!(run_main("orbits", &bad), 2);
    fs::write(&bad, "quiver = \"a2.json\"\nunknown = 1\n").unwrap();
    assert_eq!(run_main("orbits", &bad), 2);
    fs::write(&bad, "quiver = \"a2.json\"\nnu = [[1, 1, 1]]\n").unwrap();
    assert_eq!(run_main("orbits", &bad), 2);
    assert_eq!(main_with_args(["qparity", "no-such-command"]), 2);
}

#[test]
fn klr_check_and_basis_records() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(dir.path(), "nu = [[1, 1], [2, 1]]\n");
    let c = RunConfig::load(&cfg).unwrap();
    let out = run(&Command::KlrCheck(args(&cfg)), &c).unwrap();
    assert_eq!((out.records, out.defects), (2, 0));
    let out = run(&Command::Basis(args(&cfg)), &c).unwrap();
    assert_eq!(out.text.matches("basis coincidence: coincide").count(), 2, "{}", out.text);
    let rec = files(&dir.path().join("out/records/basis"));
    assert_eq!(rec.len(), 2);
    let v: serde_json::Value = serde_json::from_slice(&rec[0].1).unwrap();
    for k in ["kind", "quiver", "nu", "y", "lambda", "q", "payload", "status", "version"] {
        assert!(v.get(k).is_some(), "record lacks {k}");
    }
}
