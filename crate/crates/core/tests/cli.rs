use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abeliter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<(f64, f64)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let (x, y) = l.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

#[test]
fn gamma_half_iterate_at_five() {
    let out = stdout(&["halfiter", "--branch", "gamma_fp2", "--x", "5"]);
    assert_eq!(out.trim(), "11.16011241010994435014306622367299550481488867202202");
}

#[test]
fn output_is_deterministic() {
    let args = ["--digits", "25", "constants", "--filter", "radical"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn constants_filter_and_digits() {
    let out = stdout(&["--digits", "10", "constants", "--filter", "radical.offset"]);
    assert_eq!(out, "radical.offset = -0.6703418768\n");
}

#[test]
fn both_solutions_on_the_middle_interval() {
    let out = stdout(&["--digits", "30", "halfiter", "--branch", "sqrt2exp", "--x", "3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("sqrt2exp.I2a = 2.9"));
    assert!(lines[1].starts_with("sqrt2exp.I2b = 2.9"));
}

#[test]
fn abel_is_zero_at_anchor() {
    let out = stdout(&["--digits", "20", "eval", "--branch", "sqrt2exp.I1", "--x", "1"]);
    assert_eq!(out.trim(), "0.00000000000000000000");
}

#[test]
fn tetration_at_integer_heights() {
    let out = stdout(&["--digits", "20", "tetration", "--base", "sqrt(2)", "--t", "2"]);
    assert!(out.starts_with("1.6325269194381528"), "{out}");
}

#[test]
fn koenig_reports_iterations() {
    let out = stdout(&["--digits", "20", "koenig", "--map", "radical", "--x", "0"]);
    assert!(out.contains("limit = "));
    assert!(out.lines().any(|l| l.starts_with("iterations = ")));
}

#[test]
fn errors_exit_with_code_two() {
    for args in [
        &["invert", "--branch", "sqrt2exp.I1", "--t", "-2"][..],
        &["eval", "--branch", "nonesuch", "--x", "1"][..],
        &["eval", "--branch", "sqrt2exp.I1", "--x", "3"][..],
        &["eval", "--branch", "logistic_fp0", "--x", "0.3"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
}

#[test]
fn plot_csv_has_header_and_sixty_rows() {
    let out = stdout(&[
        "--digits", "15", "plot", "--branch", "sqrt2exp.I1", "--mode", "abel", "--from", "-4", "--to", "1.9",
        "--step", "0.1",
    ]);
    assert!(out.starts_with("x,y\n"));
    let pts = rows(&out);
    assert_eq!(pts.len(), 60);
    assert!(pts.windows(2).all(|w| w[0].1 < w[1].1));
    assert!(pts[0].1 > -2.0 && pts[0].1 < -1.8);
}

#[test]
fn inverse_plot_crosses_identity_twice() {
    let out = stdout(&[
        "--digits", "15", "plot", "--branch", "sqrt2exp.I1", "--mode", "inverse", "--from", "-1.9", "--to", "1.9",
        "--step", "0.02",
    ]);
    let pts = rows(&out);
    let crossings: Vec<f64> = pts
        .windows(2)
        .filter(|w| (w[0].1 - w[0].0).signum() != (w[1].1 - w[1].0).signum())
        .map(|w| w[0].0)
        .collect();
    assert_eq!(crossings.len(), 2, "{crossings:?}");
    assert!(crossings[0] > -1.62 && crossings[0] < -1.5);
    assert!(crossings[1] > 1.48 && crossings[1] < 1.6);
}

#[test]
fn difference_plot_is_json_array() {
    let out = stdout(&[
        "--digits", "12", "plot", "--mode", "difference", "--from", "-1", "--to", "1", "--step", "0.25", "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let samples = v.as_array().unwrap();
    assert_eq!(samples.len(), 9);
    let ys: Vec<f64> = samples.iter().map(|s| s["y"].as_str().unwrap().parse().unwrap()).collect();
    assert_eq!(ys[0], 0.0);
    assert_eq!(ys[4], 0.0);
    let peak = ys.iter().fold(0f64, |m, y| m.max(y.abs()));
    assert!((0.01..10.0).contains(&peak), "{peak}");
}

#[test]
fn several_branches_write_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("series");
    let out_str = out.to_str().unwrap();
    let args = [
        "--digits", "12", "plot", "--branch", "radical,gamma_fp1", "--from", "1.1", "--to", "1.5", "--step", "0.1",
        "--out",
    ];
    let mut full = args.to_vec();
    full.push(out_str);
    stdout(&full);
    for name in ["radical.abel.csv", "gamma_fp1.abel.csv"] {
        let text = std::fs::read_to_string(out.join(name)).unwrap();
        assert_eq!(rows(&text).len(), 5, "{name}");
    }
    let missing_dir = run(&args[..args.len() - 1]);
    assert_eq!(missing_dir.status.code(), Some(2));
}
