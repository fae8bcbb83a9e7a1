use std::process::{Command, Output};

fn fockb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn qt_fixture() {
    let o = fockb(&["qt", "--n", "5", "--q", "0", "--t-symbolic", "--T", "identity"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "t^2 + 2*t + 3\n");
}

#[test]
fn partitions_of_three() {
    let o = fockb(&["partitions", "--n", "3", "--filter", "all"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("partition"));
    assert_eq!(lines.count(), 11);
    let pairs = stdout(&fockb(&["partitions", "--n", "4", "--filter", "pairs-only", "--stats"]));
    assert_eq!(pairs.lines().count(), 1 + 12);
    assert!(pairs.starts_with("partition,blocks,rc,nest,rnarc,narc,max_c,max_l,m_left,out_arc\n"));
}

#[test]
fn verify_wick_report() {
    let o = fockb(&["verify", "--suite", "wick", "--n", "4", "--seed", "7"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["version"], 1);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 4);
    for c in checks {
        assert_eq!(c["status"], "pass");
        assert!(c["elapsed_ms"].is_u64());
        assert_eq!(c["lhs"], c["rhs"]);
    }
}

#[test]
fn verify_is_reproducible_without_timings() {
    let args = ["verify", "--suite", "vector", "--n", "3", "--seed", "3", "--no-timing"];
    assert_eq!(fockb(&args).stdout, fockb(&args).stdout);
}

#[test]
fn moment_check_reports_both_sides() {
    let o = fockb(&["moment", "--n", "4", "--signature", "+-", "--random", "--seed", "5", "--check"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["equal"], true);
    assert_eq!(v["operator_side"], v["partition_side"]);
    let vec = fockb(&["moment", "--n", "3", "--signature", "+-", "--random", "--eps", "*1'", "--check"]);
    assert!(vec.status.success());
}

#[test]
fn moment_at_rational_point() {
    let o = fockb(&["moment", "--n", "2", "--alpha", "-2/5", "--q", "3/10", "--mode", "rational"]);
    assert!(o.status.success());
    // <x, x> + alpha <x, xbar> with x = e1 and J = I
    assert_eq!(stdout(&o), "3/5\n");
}

#[test]
fn fock_matrices() {
    let o = fockb(&["fock", "--n", "2", "--d", "1", "--signature", "-"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // (1 - a)(1 - a q)(1 + q)
    assert_eq!(v["matrix"][0][0], "a^2*q^2 + a^2*q - a*q^2 - 2*a*q - a + q + 1");
    let o = fockb(&["fock", "--n", "2", "--signature", "+-", "--alpha", "0.4", "--q", "0.3", "--mode", "float"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["min_eigenvalue"].as_f64().unwrap() > 0.0);
}

#[test]
fn orthopoly_tables() {
    let o = fockb(&["orthopoly", "--family", "qt", "--N", "3", "--q", "0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["moments"][2], "1");
    let csv = stdout(&fockb(&["orthopoly", "--family", "alpha-q", "--N", "2", "--output", "csv"]));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn group_stats_csv() {
    let text = stdout(&fockb(&["group", "--n", "3", "--stats"]));
    assert_eq!(text.lines().count(), 1 + 48);
}

#[test]
fn exit_codes() {
    assert_eq!(fockb(&["moment", "--n", "9"]).status.code(), Some(3));
    assert_eq!(fockb(&["group", "--n", "9"]).status.code(), Some(3));
    assert_eq!(fockb(&["moment", "--n", "2", "--alpha", "zz"]).status.code(), Some(2));
    assert_eq!(fockb(&["moment", "--n", "2", "--alpha", "2", "--q", "0", "--mode", "rational"]).status.code(), Some(2));
    assert!(!fockb(&["nope"]).status.success());
}
