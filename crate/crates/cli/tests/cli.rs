use std::process::Command;

use screened_susy::run;

const HEADER: &str = "state,l,lambda,mu,method,convention,energy,units,v_star,residual,flag";

fn run_in_process(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("screened-susy").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    assert_eq!(csv.lines().next(), Some(HEADER));
    csv::Reader::from_reader(csv.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

fn energy(row: &[String]) -> f64 {
    row[6].parse().unwrap()
}

fn find<'a>(rows: &'a [Vec<String>], method: &str, convention: &str) -> &'a [String] {
    rows.iter()
        .find(|r| r[4] == method && r[5] == convention)
        .unwrap_or_else(|| panic!("no {method} {convention} row"))
}

#[test]
fn coulomb_point_by_every_method() {
    let (code, out, _) = run_in_process(&[
        "energy", "--lambda", "0", "--mu", "0", "--l", "0", "--method", "all", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let rows = rows(&out);
    assert_eq!(rows.len(), 6);
    assert_eq!(energy(find(&rows, "closed-form", "pair-sum")), -1.0);
    assert!((energy(find(&rows, "variational", "per-part")) + 0.5).abs() < 1e-5);
    assert!((energy(find(&rows, "oracle", "per-part")) + 0.5).abs() < 1e-6);
    assert_eq!(find(&rows, "variational", "per-part")[10], "boundary");
}

#[test]
fn screened_point_variational() {
    let (code, out, _) = run_in_process(&[
        "energy", "--lambda", "0.02", "--l", "0", "--method", "variational", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let rows = rows(&out);
    let e = energy(find(&rows, "variational", "per-part"));
    assert!((e + 0.480008).abs() < 1e-6, "{e}");
}

#[test]
fn rydberg_units_double_the_energies() {
    let (_, out, _) = run_in_process(&[
        "energy", "--lambda", "0.1", "--l", "0", "--method", "closed-form", "--units",
        "paper-rydberg", "--format", "csv",
    ]);
    let rows = rows(&out);
    assert_eq!(energy(find(&rows, "closed-form", "pair-sum")), -1.8);
    assert_eq!(rows[0][7], "paper-rydberg");
}

#[test]
fn closed_form_sweep_over_rates() {
    let (code, out, _) = run_in_process(&[
        "sweep", "--lambda", "0,0.05,0.1", "--l", "0", "--method", "closed-form", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let pair: Vec<f64> = rows(&out)
        .iter()
        .filter(|r| r[5] == "pair-sum")
        .map(|r| energy(r))
        .collect();
    assert_eq!(pair, [-1.0, -0.95, -0.9]);
}

#[test]
fn oracle_sweep_over_hydrogen_levels() {
    let (code, out, _) = run_in_process(&[
        "sweep", "--lambda", "0", "--mu", "0", "--l", "0..3", "--method", "oracle", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let per_part: Vec<f64> = rows(&out)
        .iter()
        .filter(|r| r[5] == "per-part")
        .map(|r| energy(r))
        .collect();
    let exact = [-0.5, -0.125, -1.0 / 18.0, -1.0 / 32.0];
    assert_eq!(per_part.len(), 4);
    for (e, x) in per_part.iter().zip(exact) {
        assert!((e - x).abs() < 1e-6, "{e} vs {x}");
    }
}

#[test]
fn empty_range_gives_header_only() {
    let (code, out, _) = run_in_process(&["sweep", "--lambda", "", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, format!("{HEADER}\n"));
}

#[test]
fn sweep_keeps_unbound_points_in_row() {
    let (code, out, _) = run_in_process(&[
        "sweep", "--lambda", "0.1,2.1", "--mu", "0", "--l", "0", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let rows = rows(&out);
    assert_eq!(rows.len(), 3);
    assert!(rows[2][6].is_empty());
    assert!(rows[2][10].starts_with("unbound"));
}

#[test]
fn json_records_carry_every_column() {
    let (code, out, _) = run_in_process(&[
        "sweep", "--lambda", "0.05", "--l", "0..1", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 4);
    for key in HEADER.split(',') {
        assert!(records[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn table1_marks_reference_rows() {
    let (code, out, _) = run_in_process(&["table1", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows = rows(&out);
    let anomalous = rows
        .iter()
        .find(|r| r[0] == "4f" && r[2] == "0.08" && r[4] == "published-susyqm")
        .unwrap();
    assert_eq!(anomalous[6], "-0.1845");
    assert_eq!(anomalous[10], "ANOMALOUS");
    let exact = rows
        .iter()
        .find(|r| r[0] == "3d" && r[2] == "0.05" && r[4] == "published-exact")
        .unwrap();
    assert_eq!(exact[6], "-0.03383");
    assert_eq!(exact[5], "pair-sum");
    let missing = rows
        .iter()
        .find(|r| r[0] == "1s" && r[2] == "0.08" && r[4] == "published-exact")
        .unwrap();
    assert_eq!(missing[10], "not-published");
    // unbound oracle cells print as empty energies
    let unbound = rows
        .iter()
        .find(|r| r[0] == "4f" && r[2] == "0.1" && r[4] == "oracle")
        .unwrap();
    assert!(unbound[6].is_empty());
}

#[test]
fn sweep_output_is_reproducible() {
    let args = [
        "sweep", "--lambda", "0:0.1:0.025", "--l", "0..2", "--method", "all", "--format", "json",
    ];
    let (_, first, _) = run_in_process(&args);
    let (_, second, _) = run_in_process(&args);
    let mut single = args.to_vec();
    single.extend(["--jobs", "1"]);
    let (_, serial, _) = run_in_process(&single);
    assert_eq!(first, second);
    assert_eq!(first, serial);
}

#[test]
fn config_file_values_yield_to_flags() {
    let dir = std::env::temp_dir().join(format!("screened-susy-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "# sweep settings\nlambda = 0.05\nl = 0\nformat = csv\nmethod = closed-form\n")
        .unwrap();
    let path = path.to_str().unwrap();
    let (_, out, _) = run_in_process(&["sweep", "--config", path]);
    assert_eq!(energy(&rows(&out)[1]), -0.95);
    let (_, out, _) = run_in_process(&["sweep", "--config", path, "--lambda", "0.1"]);
    assert_eq!(energy(&rows(&out)[1]), -0.9);
    std::fs::remove_dir_all(dir).unwrap();
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_screened-susy"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn unbound_point_exits_with_computation_error() {
    let out = binary(&["energy", "--lambda", "2.1", "--mu", "0", "--l", "0", "--method", "closed-form"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("no bound state"), "{stderr}");
}

#[test]
fn bad_arguments_exit_with_usage_error() {
    assert_eq!(binary(&["energy", "--method", "guess"]).status.code(), Some(1));
    assert_eq!(binary(&["sweep", "--lambda", "0:1:-0.1"]).status.code(), Some(1));
    assert_eq!(binary(&["energy", "--lambda", "0,0.1"]).status.code(), Some(1));
    assert_eq!(
        binary(&["energy", "--potential", "ecsc-pt", "--method", "oracle"]).status.code(),
        Some(1)
    );
}

#[test]
fn help_exits_cleanly() {
    let out = binary(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("table1"));
}
