use std::path::PathBuf;
use std::process::{Command, Output};

use alpharm::solution::BoundaryData;
use num_complex::Complex64;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn alpharm(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_alpharm"));
    cmd.args(args).current_dir(fixture(""));
    match seed {
        Some(s) => cmd.env("ALPHARM_SEED", s),
        None => cmd.env_remove("ALPHARM_SEED"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["--help"], 0),
        (&["kernel", "--alpha", "1", "--r", "0.5"], 0),
        (&["kernel", "--alpha", "-1", "--r", "0.5"], 2),
        (&["kernel", "--alpha", "0", "--r", "0:1:5"], 2),
        (&["kernel", "--alpha", "zero", "--r", "0.5"], 1),
        (&["nonsense"], 1),
        (&["verify", "--solution", "missing.json"], 1),
        (&["verify", "--solution", "unknown_field.json"], 1),
        (&["verify", "--solution", "overstated.json", "--m", "1"], 3),
        (&["verify", "--solution", "constant.json", "--radius", "1.5"], 2),
        (&["landau", "--alpha", "0.5", "--p", "2", "--norm", "1", "--lambda", "1"], 2),
        (&["landau", "--alpha", "-0.5", "--p", "0.5", "--norm", "1", "--lambda", "1"], 2),
    ];
    for (args, code) in cases {
        let o = alpharm(args, None);
        assert_eq!(o.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn errors_go_to_stderr() {
    let o = alpharm(&["kernel", "--alpha", "-3", "--r", "0.5"], None);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bounds.csv");
    let args = ["bounds", "--alpha", "1", "--r", "0:0.9:4"];
    let direct = alpharm(&args, None);
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let o = alpharm(&with_out, None);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    let text = stdout(&direct);
    assert_eq!(text.lines().count(), 5);
    assert!(!text.contains('\r'));
}

#[test]
fn verify_is_seeded() {
    let args = ["verify", "--solution", "extremal_k1.json", "--m", "1", "--points", "30"];
    let a = alpharm(&args, Some("7"));
    let b = alpharm(&args, Some("7"));
    let c = alpharm(&args, Some("8"));
    let d = alpharm(&args, None);
    let e = alpharm(&args, Some("0"));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(d.stdout, e.stdout);
    assert_eq!(alpharm(&args, Some("many")).status.code(), Some(1));
    for line in stdout(&a).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["label", "lhs", "rhs", "slack", "satisfied"] {
            assert!(v.get(key).is_some(), "{line}");
        }
    }
}

#[test]
fn boundary_csv_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.csv");
    let data = BoundaryData::from_fn(64, |t| Complex64::new(t.cos(), 0.0)).unwrap();
    data.write_csv(std::fs::File::create(&path).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    let o = alpharm(&["eval", "--boundary", p, "--alpha", "0", "--r", "0.5", "--order", "4"], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut rows = text.lines();
    let header = rows.next().unwrap();
    assert!(header.starts_with("r,"), "{header}");
    assert!(rows.count() > 0);

    let o = alpharm(&["verify", "--boundary", p, "--alpha", "1"], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    // too few samples for the requested order
    let o = alpharm(&["eval", "--boundary", p, "--alpha", "0", "--order", "20"], None);
    assert_eq!(o.status.code(), Some(2));

    std::fs::write(&path, "theta,re,im\n0,1,0\n0.5,1,0\n").unwrap();
    let o = alpharm(&["eval", "--boundary", p, "--alpha", "0"], None);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn landau_outputs_json() {
    let o = alpharm(&["landau", "--alpha", "-0.5", "--p", "inf", "--norm", "1", "--lambda", "1"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rho = v["rho0"].as_f64().unwrap();
    assert!(rho > 0.0 && rho < 1.0);
}

#[test]
fn scan_sweeps_alpha() {
    let o = alpharm(&["scan", "--alpha", "-0.5:0:3", "--p", "2"], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 4);
}
