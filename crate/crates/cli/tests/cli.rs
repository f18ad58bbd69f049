use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gup1d"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(o: &Output, name: &str) -> Vec<f64> {
    let (h, rows) = csv_rows(o);
    let i = h
        .iter()
        .position(|c| c == name)
        .unwrap_or_else(|| panic!("no column {name} in {h:?}"));
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn linear_defaults_give_five_levels() {
    let o = run(&["linear"]);
    assert_eq!(o.status.code(), Some(0));
    let e = column(&o, "e_analytic");
    assert_eq!(e.len(), 5);
    assert!((e[0] - 1.85576).abs() < 5e-6);
    assert!(column(&o, "abs_delta").iter().all(|d| *d < 1e-4));
}

#[test]
fn linear_lambda_shifts_every_level() {
    let base = column(&run(&["linear"]), "e_analytic");
    let shifted = column(&run(&["linear", "--lambda", "1"]), "e_analytic");
    for (a, b) in base.iter().zip(&shifted) {
        assert!((b - a + 0.5).abs() < 1e-12);
    }
}

#[test]
fn negative_slope_is_a_usage_error() {
    let o = run(&["linear", "--slope", "-1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("slope"));
}

#[test]
fn malformed_arguments_exit_two() {
    assert_eq!(run(&["linear", "--mass", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["linear", "--n-min", "4", "--n-max", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn barrier_half_transmission() {
    let o = run(&["barrier"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(column(&o, "t"), vec![0.5]);
    assert_eq!(column(&o, "rc"), vec![0.5]);
}

#[test]
fn barrier_sweep_is_unitary() {
    let o = run(&[
        "barrier",
        "--lambda",
        "0.3",
        "--e-min",
        "0.1",
        "--e-max",
        "4",
        "--e-steps",
        "40",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let t = column(&o, "t");
    let rc = column(&o, "rc");
    assert_eq!(t.len(), 40);
    for (a, b) in t.iter().zip(&rc) {
        assert!((a + b - 1.0).abs() < 1e-12);
    }
    assert!(column(&o, "excess_exact").iter().all(|x| *x > 0.0));
}

#[test]
fn stark_unit_element() {
    let o = run(&["stark", "--field", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(column(&o, "h12"), vec![0.75]);
    let o = run(&["stark", "--n-max", "3", "--format", "json"]);
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let h12: Vec<f64> = rows.iter().map(|r| r["h12"].as_f64().unwrap()).collect();
    assert!((h12[0] - 0.0075).abs() < 1e-16);
    assert!((h12[2] / h12[0] - 243.0).abs() < 1e-10);
}

#[test]
fn stark_normalized_columns() {
    let o = run(&["stark", "--field", "1", "--normalized"]);
    let h = column(&o, "h12_normalized");
    assert_eq!(h.len(), 1);
    assert!((h[0] - 1.5).abs() < 1e-12, "{h:?}");
}

#[test]
fn coulomb_levels() {
    let o = run(&["coulomb"]);
    assert_eq!(o.status.code(), Some(0));
    let e = column(&o, "e_analytic");
    assert_eq!(e.len(), 3);
    for (got, want) in e.iter().zip([-0.5, -0.125, -0.0556]) {
        assert!((got - want).abs() < 1e-4);
    }
}

#[test]
fn delta_well_energy() {
    let o = run(&["delta-well", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(column(&o, "e_analytic"), vec![-1.0]);
}

#[test]
fn too_tight_tolerance_is_a_verification_failure() {
    let o = run(&["linear", "--tolerance", "1e-15"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("linear.oracle_energies"));
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--format", "json"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v = json(&o);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() > 30);
    for c in checks {
        assert!(c["check"].is_string() && c["measured"].is_number() && c["tolerance"].is_number());
        assert_eq!(c["passed"], true);
    }
}

#[test]
fn verify_airy_filter_selects_special_functions() {
    let o = run(&["verify", "--filter", "airy", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let checks = json(&o)["checks"].as_array().unwrap().clone();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["group"] == "specfun"));
}

#[test]
fn injected_sign_flip_fails_gauge_checks() {
    let o = run(&[
        "verify",
        "--inject-fault",
        "flip-lambda-sign",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let checks = json(&o)["checks"].as_array().unwrap().clone();
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"oracle.gauge.linear"), "{failed:?}");
    assert!(
        failed.iter().all(|n| n.starts_with("oracle.gauge")),
        "{failed:?}"
    );
    assert!(String::from_utf8_lossy(&o.stderr).contains("oracle.gauge"));
}

#[test]
fn json_envelope_is_shared() {
    for args in [
        &["linear", "--format", "json"][..],
        &["delta-well", "--format", "json"],
        &["barrier", "--format", "json"],
        &["coulomb", "--n-max", "1", "--format", "json"],
        &["stark", "--format", "json"],
        &["verify", "--filter", "stark", "--format", "json"],
    ] {
        let v = json(&run(args));
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["checks", "command", "params", "rows"], "{args:?}");
        assert_eq!(v["command"], args[0]);
    }
}

#[test]
fn csv_matches_json_bit_for_bit() {
    let args = [
        "barrier",
        "--lambda",
        "0.7",
        "--strength",
        "3",
        "--e-min",
        "1e-4",
        "--e-max",
        "2e6",
        "--e-steps",
        "7",
    ];
    let c = run(&args);
    let j = json(&run(&[&args[..], &["--format", "json"]].concat()));
    let (header, rows) = csv_rows(&c);
    for (row, obj) in rows.iter().zip(j["rows"].as_array().unwrap()) {
        for (name, text) in header.iter().zip(row) {
            let from_csv: f64 = text.parse().unwrap();
            assert_eq!(
                from_csv.to_bits(),
                obj[name].as_f64().unwrap().to_bits(),
                "{name}: {text}"
            );
            let a = from_csv.abs();
            assert_eq!(
                text.contains('e'),
                a != 0.0 && !(1e-3..=1e6).contains(&a),
                "{text}"
            );
        }
    }
}

#[test]
fn output_is_independent_of_worker_count() {
    for args in [
        &[
            "barrier",
            "--e-min",
            "0.1",
            "--e-max",
            "3",
            "--e-steps",
            "25",
            "--lambda",
            "0.4",
        ][..],
        &["coulomb", "--grid-points", "3000"],
        &["stark", "--n-max", "4", "--format", "json"],
        &["verify", "--filter", "scattering", "--format", "json"],
    ] {
        let one = run(&[args, &["--threads", "1"]].concat());
        let four = run(&[args, &["--threads", "4"]].concat());
        let again = run(&[args, &["--threads", "4"]].concat());
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(four.stdout, again.stdout, "{args:?}");
        assert!(!one.stdout.is_empty());
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("gup1d-out-{}.csv", std::process::id()));
    let o = run(&["linear", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, run(&["linear"]).stdout);
}

#[test]
fn linear_wavefunction_samples() {
    let o = run(&["linear", "--psi-points", "11", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let x = column(&o, "x");
    assert_eq!(x.len(), 22);
    let re = column(&o, "psi_re");
    assert!(re[0].abs() < 1e-10);
    assert!(stdout(&o).starts_with("n,x,psi_re,psi_im,psi_abs"));
}
