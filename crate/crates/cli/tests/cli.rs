use std::process::{Command, Output};

use fracop::report::VerificationReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracop")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_half_integral_of_identity() {
    let o = run(&["eval", "--op", "rl-left:a=0,alpha=0.5", "--fn", "pow:m=1", "--points", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,value,abs_err_estimate"));
    let row: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(row[0], 1.0);
    assert!((row[1] - 0.752252778063675).abs() < 1e-12);
    assert!(row[2] < 1e-10);
}

#[test]
fn eval_point_range() {
    let o = run(&["eval", "--op", "ek-left:alpha=0.5,y=0", "--fn", "pow:m=2", "--points", "1:2:3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1]["x"].as_f64(), Some(1.5));
}

#[test]
fn verify_norms_at_negative_half() {
    let o = run(&["verify", "be-norms", "--nu", "-0.5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<VerificationReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r.pass));
    assert!(reports.iter().any(|r| r.notes.iter().any(|n| n.contains("formula 1.414213562"))));
}

#[test]
fn verify_bessel_reduction_csv() {
    let o = run(&["verify", "bessel-reduction", "--alpha", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("check_name,max_rel_err,tolerance,pass\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn json_reports_round_trip_exactly() {
    let o = run(&["verify", "be-multipliers", "--nu", "0.3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let reports: Vec<VerificationReport> = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&reports).unwrap() + "\n";
    assert_eq!(again, text);
    let back: Vec<VerificationReport> = serde_json::from_str(&again).unwrap();
    assert_eq!(back, reports);
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(run(&["eval", "--op", "nope", "--fn", "pow:m=1", "--points", "1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--op", "rl-left:alpha=0.5", "--fn", "pow:m=1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["norms", "--rel-tol", "-1"]).status.code(), Some(2));
}

#[test]
fn config_file_fills_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("out.csv");
    std::fs::write(&cfg, format!("# defaults\nop = rl-left:a=0,alpha=0.5\nfn = pow:m=1\npoints = 1\nout = {}\n", out.display()))
        .unwrap();
    let o = run(&["eval", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("1.0,0.75225277806"));
    // command-line flags win over the file
    let o = run(&["eval", "--config", cfg.to_str().unwrap(), "--points", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&out).unwrap().contains("\n2.0,"));
    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(run(&["norms", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn failing_verification_exits_one() {
    let o = run(&["verify", "bessel-reduction", "--rel-tol", "0.3", "--abs-tol", "0.3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",false")));
}

#[test]
fn table_marks_strip_violations() {
    let o = run(&["table", "--nu", "0", "--s", "-1,0.2+0.4i"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("validity strip"));
    assert!(text.lines().filter(|l| l.ends_with(",ok")).count() >= 4);
}
