use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_wigner-lab");
const MODES: [&str; 4] = ["entropy-sweep", "efficiency-sweep", "collapse-check", "clicks"];

fn config(dir: &TempDir, name: &str, json: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, json).unwrap();
    path
}

fn run(mode: &str, config: &Path, extra: &[&str]) -> Output {
    Command::new(BIN).arg(mode).arg("--config").arg(config).args(extra).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn header(csv: &str) -> &str {
    csv.lines().find(|l| !l.starts_with('#')).unwrap()
}

fn small(dir: &TempDir) -> PathBuf {
    config(dir, "small.json", r#"{"xi_list": [0.05], "v_list": [0.0, 0.8], "samples": 2000, "quad_order": 12}"#)
}

#[test]
fn column_headers_match_golden_files() {
    let dir = TempDir::new().unwrap();
    let cfg = small(&dir);
    for mode in MODES {
        let out = run(mode, &cfg, &[]);
        assert_eq!(out.status.code(), Some(0), "{mode}: {}", String::from_utf8_lossy(&out.stderr));
        let golden = fs::read_to_string(format!("{}/tests/golden/{mode}.header", env!("CARGO_MANIFEST_DIR"))).unwrap();
        assert_eq!(header(&stdout(&out)), golden.trim_end(), "{mode}");
    }
}

#[test]
fn meta_block_and_row_order() {
    let dir = TempDir::new().unwrap();
    let cfg = config(&dir, "c.json", r#"{"xi_list": [0.05, 0.1], "v_list": [0.8, 0.0], "quad_order": 12}"#);
    let text = stdout(&run("entropy-sweep", &cfg, &[]));
    let meta: Vec<&str> = text.lines().take_while(|l| l.starts_with('#')).collect();
    assert_eq!(
        meta,
        [
            "# tool=wigner-lab",
            concat!("# version=", env!("CARGO_PKG_VERSION")),
            "# mode=entropy-sweep",
            "# seed=12648430",
            "# quad_order=12",
            "# m=1.0000000000000000e0",
        ]
    );
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(meta.len() + 1)
        .map(|l| {
            let mut f = l.split(',').map(|x| x.parse::<f64>().unwrap_or(f64::NAN));
            (f.next().unwrap(), f.next().unwrap())
        })
        .collect();
    assert_eq!(rows, [(0.8, 0.05), (0.8, 0.1), (0.0, 0.05), (0.0, 0.1)]);
}

#[test]
fn fixed_seed_reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let cfg = small(&dir);
    let a = run("clicks", &cfg, &[]);
    let b = run("clicks", &cfg, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run("clicks", &cfg, &["--seed", "1"]);
    assert!(stdout(&c).contains("# seed=1\n"));
}

#[test]
fn flags_override_config() {
    let dir = TempDir::new().unwrap();
    let cfg = config(
        &dir,
        "c.json",
        r#"{"mode": "clicks", "xi_list": [0.05], "v_list": [0.5], "quad_order": 12, "seed": 5}"#,
    );
    let out_path = dir.path().join("rows.json");
    let out = run(
        "collapse-check",
        &cfg,
        &["--seed", "9", "--quad-order", "10", "--format", "json", "--out", out_path.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["meta"]["mode"], "collapse-check");
    assert_eq!(doc["meta"]["seed"], 9);
    assert_eq!(doc["meta"]["quad_order"], 10);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 3);
    assert_eq!(doc["rows"][0]["residual"], 0.0);
}

#[test]
fn output_path_from_config() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("table.csv");
    let json = format!(
        r#"{{"xi_list": [0.05], "v_list": [0.3], "quad_order": 10, "output_path": {}}}"#,
        serde_json::to_string(&target).unwrap()
    );
    let cfg = config(&dir, "c.json", &json);
    let out = run("efficiency-sweep", &cfg, &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(fs::read_to_string(&target).unwrap().contains("eta_mean"));
}

#[test]
fn flagged_rows_exit_with_two() {
    let dir = TempDir::new().unwrap();
    // Within (−1, 1) but past the clamp, so the row is flagged.
    let cfg = config(&dir, "c.json", r#"{"xi_list": [0.05], "v_list": [0.99999999999], "quad_order": 10}"#);
    let out = run("entropy-sweep", &cfg, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).lines().last().unwrap().ends_with(",true,true"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("flagged"));
}

#[test]
fn bad_input_exits_with_one() {
    let dir = TempDir::new().unwrap();
    let typo = config(&dir, "typo.json", r#"{"xi_list": [0.05], "v_list": [0.3], "seeed": 1}"#);
    let out = run("clicks", &typo, &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("seeed"));

    let bad_v = config(&dir, "v.json", r#"{"xi_list": [0.05], "v_list": [1.0]}"#);
    assert_eq!(run("clicks", &bad_v, &[]).status.code(), Some(1));

    let missing = dir.path().join("absent.json");
    assert_eq!(run("clicks", &missing, &[]).status.code(), Some(1));

    let cfg = small(&dir);
    assert_eq!(run("clicks", &cfg, &["--quad-order", "4"]).status.code(), Some(1));
}

#[test]
fn unknown_mode_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let out = run("plot", &small(&dir), &[]);
    assert_eq!(out.status.code(), Some(1));
    let help = Command::new(BIN).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("entropy-sweep"));
}
