use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_biphoton"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_config(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// `quantity -> numeric` from an analyze CSV.
fn analyze_values(csv: &str) -> std::collections::HashMap<String, f64> {
    csv.lines()
        .skip(1)
        .filter_map(|l| {
            let mut it = l.split(',');
            let name = it.next()?.to_string();
            let v = it.next()?.parse().ok()?;
            Some((name, v))
        })
        .collect()
}

fn analyze(json: &str) -> std::collections::HashMap<String, f64> {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", json);
    let o = run(&["analyze", "--config", &cfg]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    analyze_values(&stdout(&o))
}

#[test]
fn analyze_single_basis_state() {
    let v = analyze(r#"{"coefficients": [[1,0],[0,0],[0,0],[0,0]]}"#);
    assert!((v["pol.k"] - 1.0).abs() < 1e-12);
    assert!((v["pol.p"] - 1.0).abs() < 1e-12);
    assert!(v["pol.c"].abs() < 1e-12);
}

#[test]
fn analyze_symmetric_bell_coefficient() {
    let v = analyze(r#"{"basis": "mixed", "coefficients": [[0,0],[1,0],[0,0],[0,0]]}"#);
    assert!((v["pol.k"] - 2.0).abs() < 1e-12);
    assert!(v["pol.p"].abs() < 1e-12);
    assert!((v["freq.c"] - 1.0).abs() < 1e-12);
}

#[test]
fn analyze_antisymmetric_bell_coefficient() {
    let v = analyze(r#"{"basis": "mixed", "coefficients": [[0,0],[0,0],[0,0],[1,0]]}"#);
    assert!((v["pol.c"] - 1.0).abs() < 1e-12);
    assert!(v["pol.p"].abs() < 1e-12);
    assert!(v["pol.s_full"].abs() < 1e-12);
}

#[test]
fn analyze_reports_residuals_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", r#"{"coefficients": [[0.5,0.1],[0.3,-0.2],[0.1,0.6],[0.4,0]], "auto_normalize": true}"#);
    let o = run(&["analyze", "--config", &cfg]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("quantity,numeric,closed_form,residual\n"));
    for line in text.lines().filter(|l| l.starts_with("check.")) {
        let residual: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(residual < 1e-10, "{line}");
    }
    let o = run(&["analyze", "--config", &cfg, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["polarization"]["k"].as_f64().unwrap() >= 1.0);
    assert!(v["polarization"]["s_rel"].is_null());
}

#[test]
fn analyze_outputs_filter() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"coefficients": [[1,0],[0,0],[0,0],[0,0]], "outputs": ["pol.k", "check.k_pol"]}"#,
    );
    let text = stdout(&run(&["analyze", "--config", &cfg]));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = write_config(dir.path(), "a.json", "{ not json");
    let unnormalized = write_config(dir.path(), "b.json", r#"{"coefficients": [[1,0],[1,0],[0,0],[0,0]]}"#);
    let bad_steps = write_config(dir.path(), "c.json", r#"{"sweep": {"family": "example1", "steps": 1}}"#);
    for args in [
        vec!["analyze", "--config", bad_json.as_str()],
        vec!["analyze", "--config", unnormalized.as_str()],
        vec!["analyze", "--config", "/nonexistent/config.json"],
        vec!["sweep", "--config", bad_steps.as_str()],
        vec!["sweep"],
        vec!["sweep", "--family", "nope"],
        vec!["sweep", "--family", "example1", "--from", "0.6", "--to", "0.2"],
        vec!["figure", "--fig", "6"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn sweep_csv_contract() {
    let o = run(&["sweep", "--family", "example1", "--steps", "101"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "b_minus,k_pol,p,c_pol,s_full,s_reduced_pol,i_pol,k_freq,c_freq,s_reduced_freq,i_freq,s_rel_freq,c_cl_freq,k_photon,k_2qb,p_2qb,c_2qb"
    );
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 101);
    for r in &rows {
        assert_eq!(r.len(), 17);
        assert!((r[1] - 2.0).abs() < 1e-12);
    }
    assert_eq!(rows[0][0], 0.0);
    assert_eq!(rows[100][0], 1.0);
    assert!(rows[0][4].abs() < 1e-12);
    assert!(rows[100][4].abs() < 1e-12);
    assert!(text.ends_with('\n') && !text.contains(",\n"));
}

#[test]
fn sweep_config_phases_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "s.json",
        r#"{"sweep": {"family": "example2b", "steps": 5, "phases": {"phi1": 0.5, "phi4": -0.5}}, "outputs": ["c_pol", "c_2qb"]}"#,
    );
    let out = dir.path().join("out.csv");
    let o = run(&["sweep", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("b_minus,c_pol,c_2qb\n"));
    assert_eq!(text.lines().count(), 6);
    let again = stdout(&run(&["sweep", "--config", &cfg]));
    assert_eq!(text, again);
}

#[test]
fn sweep_flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.json", r#"{"sweep": {"family": "example1", "steps": 5}}"#);
    let text = stdout(&run(&["sweep", "--config", &cfg, "--steps", "3", "--phi", "-1.2"]));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn scaled_family_needs_coefficients() {
    let o = run(&["sweep", "--family", "scaled"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "s.json",
        r#"{"basis": "mixed", "coefficients": [[0.6,0],[0,0.8],[0,0],[0,0]], "sweep": {"family": "scaled", "parameter": "c4", "steps": 3}}"#,
    );
    let o = run(&["sweep", "--config", &cfg]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("c4,"));
}

#[test]
fn figure_headers() {
    let headers = [
        "b_minus,s",
        "b_minus,k,c,s_rel,i,c_cl",
        "b_minus,k,c,i,p",
        "b_minus,k_pol,p_4,c_pol,k_2qb,p_2qb,c_2qb",
        "b_minus,k_pol,p_4,c_pol,k_2qb,p_2qb,c_2qb",
    ];
    for (i, h) in headers.iter().enumerate() {
        let o = run(&["figure", "--fig", &(i + 1).to_string()]);
        assert!(o.status.success());
        let text = stdout(&o);
        assert_eq!(text.lines().next().unwrap(), *h);
        assert_eq!(text.lines().count(), 202);
    }
}

#[test]
fn figure_json() {
    let o = run(&["figure", "--fig", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["columns"].as_array().unwrap().len(), 6);
    assert_eq!(v["rows"].as_array().unwrap().len(), 201);
}

#[test]
fn verify_passes_on_seed_42() {
    let o = run(&["verify", "--seed", "42", "--trials", "1000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_single_basis_state() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", r#"{"coefficients": [[1,0],[0,0],[0,0],[0,0]]}"#);
    let o = run(&["verify", "--trials", "1", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_detects_corruption() {
    let o = run(&["verify", "--trials", "5", "--corrupt", "hermiticity"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("hermiticity_pol"));
    let failing: Vec<String> = stdout(&o).lines().filter(|l| l.ends_with(",FAIL")).map(String::from).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].starts_with("hermiticity_pol,"));
}

#[test]
fn verify_output_independent_of_threads() {
    let a = run(&["verify", "--trials", "200", "--threads", "1"]);
    let b = run(&["verify", "--trials", "200", "--threads", "3"]);
    assert_eq!(a.stdout, b.stdout);
}
