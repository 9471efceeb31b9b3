use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn noisegaf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noisegaf")).args(args).output().expect("run binary")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    let mut a: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    a.push(format!("--out={}", dir.display()));
    let refs: Vec<&str> = a.iter().map(String::as_str).collect();
    let out = noisegaf(&refs);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let text = fs::read_to_string(path).unwrap();
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn manifest(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn spherical_sample_has_degree_plus_one_rows() {
    let d = tempfile::tempdir().unwrap();
    run_in(d.path(), &["sample", "--model", "spherical", "--params", "N=3"]);
    let text = fs::read_to_string(d.path().join("coefficients.csv")).unwrap();
    assert!(text.starts_with("k,re,im\n"));
    let rows = csv_rows(&d.path().join("coefficients.csv"));
    assert_eq!(rows.len(), 4);
    // 17 significant digits
    assert!(rows[0][1].contains('e') && rows[0][1].split('e').next().unwrap().trim_start_matches('-').len() == 18);
}

#[test]
fn same_seed_gives_same_digests() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["sample", "--model", "planar", "--seed", "7", "--window=-1,1,-1,1"];
    run_in(a.path(), &args);
    run_in(b.path(), &args);
    let ma = manifest(&a.path().join("sample.manifest.json"));
    let mb = manifest(&b.path().join("sample.manifest.json"));
    assert_eq!(ma["outputs"], mb["outputs"]);
    assert_eq!(ma["seed"], 7);
    for key in ["command", "argv", "params", "stream_policy", "version", "wall_clock_seconds"] {
        assert!(ma.get(key).is_some(), "manifest lacks {key}");
    }
}

#[test]
fn negative_truncation_is_a_usage_error() {
    let out = noisegaf(&["sample", "--model", "planar", "--truncation", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn spherical_zeros_count_equals_degree() {
    let d = tempfile::tempdir().unwrap();
    run_in(d.path(), &["zeros", "--model", "spherical", "--params", "N=16", "--trials", "1"]);
    let rows = csv_rows(&d.path().join("zeros.csv"));
    assert_eq!(rows.len(), 16);
    assert!(rows.iter().all(|r| r[0] == "0"));
}

#[test]
fn planar_zero_count_matches_area_over_pi() {
    let d = tempfile::tempdir().unwrap();
    run_in(d.path(), &["zeros", "--model", "planar", "--window=-2,2,-2,2", "--trials", "100", "--grid", "16"]);
    let rows = csv_rows(&d.path().join("zeros.csv"));
    let mut counts = vec![0.0f64; 100];
    for r in &rows {
        counts[r[0].parse::<usize>().unwrap()] += 1.0;
    }
    let mean = counts.iter().sum::<f64>() / 100.0;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / 99.0;
    let se = (var / 100.0).sqrt();
    let expected = 16.0 / std::f64::consts::PI;
    assert!((mean - expected).abs() < 4.0 * se, "mean {mean} ± {se}, expected {expected}");
}

#[test]
fn malformed_window_is_a_usage_error() {
    for w in ["--window=1,2,3", "--window=disk:x", "--window=2,1,0,1"] {
        let out = noisegaf(&["zeros", "--model", "planar", w]);
        assert_eq!(out.status.code(), Some(2), "{w}");
    }
}

#[test]
fn unknown_model_or_parameter_is_a_usage_error() {
    assert_eq!(noisegaf(&["sample", "--model", "toroidal"]).status.code(), Some(2));
    assert_eq!(noisegaf(&["sample", "--model", "planar", "--params", "alpha=1"]).status.code(), Some(2));
    assert_eq!(noisegaf(&["zeros", "--model", "hyperbolic", "--window=disk:1.5"]).status.code(), Some(2));
}

#[test]
fn short_truncation_is_refused_with_the_required_one() {
    let d = tempfile::tempdir().unwrap();
    let out = noisegaf(&[
        "zeros",
        "--model",
        "planar",
        "--window=-2,2,-2,2",
        "--truncation",
        "5",
        &format!("--out={}", d.path().display()),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    let line = err.lines().find(|l| l.starts_with("minimal adequate truncation:")).expect("required truncation printed");
    let n: usize = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(n > 5);
    assert!(!d.path().join("zeros.csv").exists());
}

#[test]
fn verify_exit_codes() {
    assert_eq!(noisegaf(&["verify", "nonsense"]).status.code(), Some(2));
    let out = noisegaf(&["verify", "bases", "--scale", "0.1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("gram") && text.contains("generating"));
}

#[test]
fn emit_plot_writes_field_and_script() {
    let d = tempfile::tempdir().unwrap();
    run_in(d.path(), &["zeros", "--model", "planar", "--window=-2,2,-2,2", "--emit-plot", "--grid", "16"]);
    let script = fs::read_to_string(d.path().join("zeros_plot.py")).unwrap();
    assert!(script.contains("zeros.csv") && script.contains("field.csv"));
    assert_eq!(csv_rows(&d.path().join("field.csv")).len(), 200 * 200);
    let field = fs::read_to_string(d.path().join("field.csv")).unwrap();
    assert!(field.starts_with("x,y,re,im,abs,normalized\n"));
    let m = manifest(&d.path().join("zeros.manifest.json"));
    assert_eq!(m["outputs"].as_array().unwrap().len(), 3);
}

#[test]
fn hidden_signal_shifts_one_coefficient() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let base = ["transform", "--model", "charlier", "--params", "a=5", "--grid", "8"];
    run_in(a.path(), &base);
    let mut with = base.to_vec();
    with.extend(["--params", "signal_k=3,signal_amp=10"]);
    run_in(b.path(), &with);
    let ra = csv_rows(&a.path().join("transform.csv"));
    let rb = csv_rows(&b.path().join("transform.csv"));
    assert_eq!(ra.len(), rb.len());
    for (k, (x, y)) in ra.iter().zip(&rb).enumerate() {
        let dx = y[1].parse::<f64>().unwrap() - x[1].parse::<f64>().unwrap();
        let dy = y[2].parse::<f64>().unwrap() - x[2].parse::<f64>().unwrap();
        let want = if k == 3 { 10.0 } else { 0.0 };
        assert!((dx - want).abs() < 1e-12 && dy.abs() < 1e-12, "k={k}: {dx} {dy}");
    }
}

/// Every command, run twice with different worker counts, then re-run from
/// its manifest: all CSV outputs byte-identical.
#[test]
fn outputs_are_deterministic_across_runs_and_workers() {
    let commands: [&[&str]; 7] = [
        &["sample", "--model", "hyperbolic", "--params", "alpha=0.5", "--window=disk:0.8"],
        &["transform", "--model", "bargmann", "--params", "N=1", "--window=-2,2,-2,2", "--grid", "12"],
        &["zeros", "--model", "planar", "--window=-2,2,-2,2", "--trials", "6", "--grid", "16", "--emit-plot"],
        &["zeros", "--model", "krawtchouk", "--params", "N=12,p=0.3", "--trials", "4", "--grid", "16"],
        &["intensity", "--model", "hyperbolic", "--window=disk:0.5", "--trials", "8", "--grid", "16"],
        &["intensity", "--model", "spherical", "--params", "N=6", "--window=disk:1", "--trials", "5", "--grid", "16"],
        &["certify", "--model", "bargmann", "--window=disk:1", "--truncation", "60", "--trials", "6"],
    ];
    for args in commands {
        let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let mut one = args.to_vec();
        one.push("--workers=1");
        let mut three = args.to_vec();
        three.push("--workers=3");
        run_in(a.path(), &one);
        run_in(b.path(), &three);
        let name = format!("{}.manifest.json", args[0]);
        let ma = manifest(&a.path().join(&name));
        let outputs = ma["outputs"].as_array().unwrap();
        assert!(!outputs.is_empty());
        for o in outputs {
            let f = o["file"].as_str().unwrap();
            assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{args:?}: {f}");
        }
        let r = tempfile::tempdir().unwrap();
        let out = noisegaf(&[
            "rerun",
            a.path().join(&name).to_str().unwrap(),
            &format!("--out={}", r.path().display()),
            "--workers=2",
        ]);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        for o in outputs {
            let f = o["file"].as_str().unwrap();
            assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(r.path().join(f)).unwrap(), "{args:?}: {f}");
        }
    }
}

#[test]
fn rerun_detects_tampered_outputs() {
    let d = tempfile::tempdir().unwrap();
    run_in(d.path(), &["sample", "--model", "spherical", "--params", "N=4"]);
    let path = d.path().join("sample.manifest.json");
    let mut m = manifest(&path);
    m["outputs"][0]["sha256"] = serde_json::Value::String("0".repeat(64));
    fs::write(&path, serde_json::to_string(&m).unwrap()).unwrap();
    let out = noisegaf(&["rerun", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
