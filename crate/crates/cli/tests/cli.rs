use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;
use superlocc::PureState;
use superlocc_cli::statefile::{emit_state_file, parse_state_file};

const BIN: &str = env!("CARGO_BIN_EXE_superlocc");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_reports_conversion() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.toml", "version = 1\nform = \"vector\"\namplitudes = [0.7071067811865476, 0.5477225575051661, 0.4472135954999579]\n");
    let b = write(dir.path(), "b.toml", "version = 1\nform = \"vector\"\namplitudes = [0.7745966692414834, 0.5477225575051661, 0.31622776601683794]\n");
    let o = run(&["classify", &a, &b]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ConvertibleAtoB"), "{}", stdout(&o));
}

#[test]
fn superpose_writes_readable_state() {
    let dir = tempfile::tempdir().unwrap();
    let psi = write(dir.path(), "psi.toml", "version = 1\nform = \"matrix\"\namplitudes = [[1.0, 0.0], [0.0, 0.0]]\n");
    let phi = write(dir.path(), "phi.toml", "version = 1\nform = \"matrix\"\namplitudes = [[0.0, 0.0], [0.0, 1.0]]\n");
    let out = dir.path().join("gamma.toml");
    let o = run(&["superpose", "--alpha", "0.7071067811865476", &psi, &phi, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let m = run(&["measure", out.to_str().unwrap(), "--measures", "e"]);
    assert_eq!(m.status.code(), Some(0));
    let e: f64 = stdout(&m).lines().find_map(|l| l.strip_prefix("e=")).unwrap().parse().unwrap();
    assert!((e - 1.0).abs() < 1e-12);
}

#[test]
fn vanishing_superposition_is_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let psi = write(dir.path(), "psi.toml", "version = 1\nform = \"matrix\"\namplitudes = [[1.0, 0.0], [0.0, 0.0]]\n");
    let neg = write(dir.path(), "neg.toml", "version = 1\nform = \"matrix\"\namplitudes = [[-1.0, 0.0], [0.0, 0.0]]\n");
    let o = run(&["superpose", "--alpha", "0.7071067811865476", &psi, &neg]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn norm_tolerance_and_renormalize_flag() {
    let dir = tempfile::tempdir().unwrap();
    let off = write(dir.path(), "off.toml", "version = 1\nform = \"vector\"\namplitudes = [0.8, 0.8]\n");
    assert_eq!(run(&["measure", &off]).status.code(), Some(2));
    assert_eq!(run(&["measure", "--renormalize", &off]).status.code(), Some(0));
}

#[test]
fn argument_errors_exit_two() {
    assert_eq!(run(&["bounds", "--random", "3"]).status.code(), Some(2));
    assert_eq!(run(&["tables", "--samples", "3"]).status.code(), Some(2));
    assert_eq!(run(&["measure", "/nonexistent/state.toml"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--random", "3", "--seed", "1", "--theorems", "T42"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn bound_survey_is_seed_deterministic() {
    let args = ["bounds", "--random", "50", "--seed", "9", "--format", "csv", "--workers", "1"];
    let a = run(&args);
    let mut more = args.to_vec();
    more[8] = "4";
    let b = run(&more);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("theorem,n,hold_rate,worst_margin,certificate_ids"));
}

#[test]
fn survey_certificates_replay() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs");
    let o = run(&["bounds", "--random", "100", "--seed", "4", "--certificates", certs.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let files: Vec<String> =
        fs::read_dir(&certs).unwrap().map(|e| e.unwrap().path().to_str().unwrap().to_string()).collect();
    assert!(!files.is_empty());
    let mut args = vec!["replay"];
    args.extend(files.iter().map(String::as_str));
    assert_eq!(run(&args).status.code(), Some(0));
}

#[test]
fn tampered_certificate_fails_replay() {
    let dir = tempfile::tempdir().unwrap();
    let certs = dir.path().join("certs");
    run(&["bounds", "--random", "100", "--seed", "4", "--theorems", "T5", "--certificates", certs.to_str().unwrap()]);
    let file = fs::read_dir(&certs).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&file).unwrap();
    let tampered: String = text
        .lines()
        .map(|l| if l.starts_with("margin_lower") { "margin_lower = 1.0e0".to_string() } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n");
    fs::write(&file, tampered).unwrap();
    assert_eq!(run(&["replay", file.to_str().unwrap()]).status.code(), Some(3));
}

proptest! {
    #[test]
    fn matrix_files_round_trip(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-1.0f64..1.0, 16)) {
        let raw: Vec<f64> = seed[..rows * cols].to_vec();
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let state = PureState::matrix(rows, cols, raw.iter().map(|x| x / norm).collect()).unwrap();
        let text = emit_state_file(&state, None);
        let back = parse_state_file(&text, false).unwrap();
        prop_assert_eq!(emit_state_file(&back.state, None), text);
    }
}
