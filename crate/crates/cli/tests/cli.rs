use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn nimgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nimgraph")).args(args).output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nimgraph"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn generated(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let o = nimgraph(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn solve_left_c4_is_a_mover_win() {
    let dir = tempfile::tempdir().unwrap();
    let file = generated(dir.path(), "left.nim", &["--family", "cycle", "--n", "4", "--weights", "list:3,2,4,4"]);
    let o = nimgraph(&["solve", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("winner: mover (p-position)"), "{text}");
    let grundy: u32 = text.lines().find_map(|l| l.strip_prefix("grundy: ")).unwrap().parse().unwrap();
    assert!(grundy > 0);
}

#[test]
fn analyze_reports_ssb_tag() {
    let dir = tempfile::tempdir().unwrap();
    let file = generated(dir.path(), "ssb4.nim", &["--family", "ssb", "--j", "4", "--weights", "uniform:1"]);
    let o = nimgraph(&["analyze", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("SSBHubStart(j=4"), "{text}");
    assert!(text.contains("prediction: P1Wins via ssb_strategy, move v2:0"), "{text}");
}

#[test]
fn generate_to_stdout_is_reproducible() {
    let args = ["generate", "--family", "cycle:7", "--weights", "random:5", "--seed", "11"];
    let a = nimgraph(&args);
    let b = nimgraph(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("nimgraph 1\nvertices 7\n"));
}

#[test]
fn verify_k2j_passes() {
    let o = nimgraph(&["verify", "--suite", "k2j", "--max-j", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS: 12 instances, 0 failures"));
}

#[test]
fn verify_csv_is_byte_identical_across_runs() {
    let args = ["verify", "--suite", "mutual", "--mutual-graphs", "20", "--format", "csv", "--seed", "5"];
    let a = nimgraph(&args);
    let b = nimgraph(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("family,params,start,prediction,oracle,verdict,states_visited\n"));
    assert_eq!(stdout(&a).lines().count(), 21);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["verify", "--suite", "nope"],
        &["solve", "/definitely/not/here.nim"],
        &["generate", "--family", "ssb"],
        &["generate", "--family", "cycle", "--n", "2"],
        &["solve", "x", "--max-states", "0"],
    ] {
        assert_eq!(nimgraph(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn malformed_instance_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.nim");
    std::fs::write(&file, "nimgraph 1\nvertices 2\nstart 0\nedge 0 0 1\n").unwrap();
    let o = nimgraph(&["solve", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

#[test]
fn budget_exhaustion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let file = generated(dir.path(), "k6.nim", &["--family", "complete", "--n", "6"]);
    let o = nimgraph(&["solve", file.to_str().unwrap(), "--max-states", "50"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn play_against_strategy_engine() {
    let dir = tempfile::tempdir().unwrap();
    let file = generated(dir.path(), "k4.nim", &["--family", "complete", "--n", "4"]);
    // the engine opens on the hub edge and wins whatever we do
    let o = with_stdin(
        &["play", file.to_str().unwrap(), "--engine-first"],
        "v1 0\nv3 0\nv4 0\nv1 0\nv3 0\nv4 0\nv1 0\nv3 0\nv4 0\n",
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("engine plays v2:0 (ssb_strategy)"), "{text}");
    assert!(text.contains("no moves left: you lose"), "{text}");
}

#[test]
fn play_rejects_illegal_input_and_stops_at_eof() {
    let dir = tempfile::tempdir().unwrap();
    let file = generated(dir.path(), "p3.nim", &["--family", "path", "--n", "3"]);
    let o = with_stdin(&["play", file.to_str().unwrap(), "--engine", "oracle"], "v3 0\nhello\n");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches("illegal:").count(), 2, "{text}");
    assert!(text.contains("game abandoned"));
}

/// Two odd reduced-graph options leave more winning moves than the two
/// minimum-weight reductions, so the exact uniqueness audit fails.
#[test]
fn verify_failure_exits_1() {
    let o = nimgraph(&["verify", "--suite", "even-cycles", "--c8-samples", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL cycle[cycle:4 w=1,1,2,3] at token=v4"), "{}", text.lines().last().unwrap());
}
