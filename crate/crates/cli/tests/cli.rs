use std::process::{Command, Output};

fn gupdelta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gupdelta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn compare_emits_report_schema() {
    let out = gupdelta(&["compare"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for key in ["params", "schrodinger", "path_integral", "deltas", "bc_matrix", "caveats"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["params"]["alpha"], 0.01);
    assert_eq!(v["schrodinger"]["energy"], -0.51);
}

#[test]
fn exit_status_tracks_check_failures() {
    for suite in ["laplace-table", "free", "delta-schrodinger"] {
        let out = gupdelta(&["verify", "--suite", suite]);
        let any_failed = json(&out)["checks"]
            .as_array()
            .unwrap()
            .iter()
            .any(|c| c["pass"] == false);
        assert_eq!(out.status.code(), Some(if any_failed { 1 } else { 0 }), "{suite}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(gupdelta(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(gupdelta(&["bound-state"]).status.code(), Some(2));
    assert_eq!(gupdelta(&["bound-state", "--method", "schrodinger", "--v", "1"]).status.code(), Some(2));
    assert_eq!(gupdelta(&["compare", "--hbar", "0"]).status.code(), Some(2));
    assert_eq!(gupdelta(&["compare", "--alpha-grid", "0:1"]).status.code(), Some(2));
    assert_eq!(
        gupdelta(&["free-kernel", "--qf", "1", "--q0", "0", "--tau", "1", "--epsilon", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn missing_pole_is_numerical_failure() {
    // No root of the resummed denominator once 2√(3α) > 1.
    let out = gupdelta(&["bound-state", "--method", "path-integral", "--alpha", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("root finding failed"));
}

#[test]
fn output_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = gupdelta(&["verify", "--suite", "laplace-table", "--format", "csv", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    assert!(String::from_utf8(text).unwrap().starts_with("suite,name,measured,tolerance,pass,detail\n"));
}

#[test]
fn unwritable_output_names_path() {
    let out = gupdelta(&["compare", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent-dir/report.json"));
}

#[test]
fn config_file_overrides_tolerances() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("strict.cfg");
    std::fs::write(&cfg, "# impossible Talbot bound\ntolerances.laplace_talbot = 1e-30\n").unwrap();
    let out = gupdelta(&["verify", "--suite", "laplace-table", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    std::fs::write(&cfg, "tolerances.unknown = 1\n").unwrap();
    let out = gupdelta(&["verify", "--suite", "laplace-table", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn alpha_grid_dat_columns() {
    let out = gupdelta(&["compare", "--alpha-grid", "0:0.01:3", "--format", "gnuplot-dat"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# alpha B B_prime spectral_E spectral_err gap"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn free_kernel_time_kinds() {
    let real = json(&gupdelta(&["free-kernel", "--qf", "1", "--q0", "0", "--time", "1", "--alpha", "0"]));
    // √(1/2πi)·e^{i/2}
    let mag = (1.0 / (2.0 * std::f64::consts::PI)).sqrt();
    let phase = 0.5 - std::f64::consts::FRAC_PI_4;
    assert!((real["re"].as_f64().unwrap() - mag * phase.cos()).abs() < 1e-14);
    assert!((real["im"].as_f64().unwrap() - mag * phase.sin()).abs() < 1e-14);

    let green = json(&gupdelta(&["free-kernel", "--qf", "0", "--q0", "0", "--epsilon", "0.5", "--alpha", "0"]));
    assert_eq!(green["re"], 1.0);
    assert_eq!(green["time"]["energy"], 0.5);
}

#[test]
fn green_near_pole_is_refused() {
    let out = gupdelta(&["green", "--qf", "1", "--q0", "1", "--epsilon", "0.5", "--alpha", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let ok = gupdelta(&["green", "--qf", "1", "--q0", "1", "--tau", "1", "--format", "csv"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().starts_with("q_f,q_0,free,correction,total\n"));
}
