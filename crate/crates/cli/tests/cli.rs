use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambdabench")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("one JSON report per line")).collect()
}

#[test]
fn verify_list_prints_every_check() {
    let o = run(&["verify", "list"]);
    assert!(o.status.success());
    let ids: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(ids.len(), 20);
    for id in ["newton-cauchy", "orbit-stabilizer", "lattice-compatibility", "graded-layers", "bott-identities"] {
        assert!(ids.iter().any(|i| i == id), "{id} missing");
    }
}

#[test]
fn regular_fixed_reports_expected_failure_for_non_coprime_k() {
    let o = run(&["verify", "regular-fixed", "--group", "C4", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json_lines(&o)[0];
    assert_eq!(r["status"], "expected-failure");
    assert_eq!(r["parameters"]["gcd"], 2);

    let o = run(&["verify", "regular-fixed", "--group", "C4", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_lines(&o)[0]["status"], "pass");
}

#[test]
fn text_format_prints_one_line_per_report() {
    let o = run(&["--format", "text", "verify", "bott-identities", "--m", "7", "--k", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("PASS"), "{text}");
    assert!(text.contains("\"kprime\":5"), "{text}");
}

#[test]
fn unknown_check_and_bad_group_exit_with_two() {
    let o = run(&["verify", "no-such-check"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown check"));
    let o = run(&["chartable", "X9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn suite_runs_a_config_file() {
    let dir = std::env::temp_dir().join(format!("lambdabench-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.toml");
    std::fs::write(&empty, "").unwrap();
    let o = run(&["suite", "--config", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());

    let grid = dir.join("grid.toml");
    std::fs::write(&grid, "[bott-identities]\nmax_m = 6\nmax_k = 6\n\n[regular-fixed]\ngroups = [\"C4\"]\nk = [2, 3]\n").unwrap();
    let o = run(&["suite", "--config", grid.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let statuses: Vec<String> = json_lines(&o).iter().map(|r| r["status"].as_str().unwrap().to_string()).collect();
    assert!(statuses.contains(&"expected-failure".to_string()));
    assert!(statuses.iter().all(|s| s == "pass" || s == "expected-failure"));

    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "[bott-identities]\nmax_m = 3\nmax_k = 3\nextra = 1\n").unwrap();
    assert_eq!(run(&["suite", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn default_config_round_trips() {
    let o = run(&["suite", "--print-default"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("[lattice-compatibility]"));
    let table: toml::Table = text.parse().expect("default config is valid TOML");
    assert!(table.contains_key("character-table"));
}

#[test]
fn bott_element_and_quadratic_report() {
    let o = run(&["bott", "element", "--m", "3", "--k", "4"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["element"], "2 + x + x^2");

    let o = run(&["quad", "--D", "-5", "report"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["disc"], -20);
    assert_eq!(v["different"]["norm"], 20);
}
