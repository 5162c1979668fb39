use std::io::Write;
use std::process::{Command, Output, Stdio};

const TWO_ROW: &str = "p=2 r=2 k=2 n=3\nrow: 1,1 | 1,1 | 2\nrow: 2,1 | 1 | 1,1\n";
const ONE_ROW: &str = "p=2 r=2 k=1 n=2\nrow: 1,1 | 3,1\n";
const NO_ANNIHILATOR: &str = "p=2 r=3 k=2 n=5\n\
row: 1,2,4,3,0,1,5 | 6,0,4,3,5 | 6,7,7,3,0,7 | 2,3,4,3 | 6,7,0,7\n\
row: 2,6,2,1,3,4,3,3 | 6,6,3,6,4,3 | 0,1,4,3,5,4,1 | 1,1,0,5,5 | 7,6,0,3,6\n";

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_residual"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn delta_and_classify() {
    let o = run(&["delta", "-i", "-", "--verify"], TWO_ROW);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("delta = 1,0,1\n"));
    let o = run(&["classify", "-i", "-"], ONE_ROW);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("CATASTROPHIC delta=1,1\ninput: 2 / 1,1\noutput: 2 | 2\n"), "{out}");
    assert!(out.ends_with("output_weight=2\n"), "{out}");
}

#[test]
fn duality_report() {
    let o = run(&["verify-duality", "-i", "-", "--verify"], TWO_ROW);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("delta(C)=1,0,1 delta(Cperp)=1,0,1 EQUAL\n"));
    let o = run(&["dual", "-i", "-", "--verify"], TWO_ROW);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("p=2 r=2 k=1 n=3\nrow: 3,2,1 | 3,0,3 | 3,2,3\n# orthogonal: true\n"));
}

#[test]
fn ridm_output_parses_back() {
    let o = run(&["ridm", "-i", "-", "--verify"], "p=3 r=2 k=1 n=2\nrow: 0,1 | 0,2\n");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("p=3 r=2 k=1 n=2\nrow: 1 | 2\n# Q=0,1 row=0 intdeg 1->0\n"), "{out}");
    assert!(out.ends_with("# verify: trace reconstructs the input\n"), "{out}");
    let o = run(&["delta", "-i", "-"], &out);
    assert_eq!(stdout(&o), "delta = 1\n");
}

#[test]
fn encode_window() {
    let o = run(&["encode", "-i", "-", "--vector", "2 / 1,1", "--window", "0:6", "--verify"], ONE_ROW);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        stdout(&o),
        "codeword: 2 | 2\nwindow [0, 6)\nu0: 2 | 2 | 2 | 2 | 2 | 2\nv0: 2 | 0 | 0 | 0 | 0 | 0\n\
         v1: 2 | 0 | 0 | 0 | 0 | 0\ninput_weight=6 output_weight=2\nverify: convolution agrees with the exact expansion\n"
    );
}

#[test]
fn random_is_deterministic() {
    let args = ["random", "--p", "3", "--r", "2", "--k", "2", "--n", "4", "--seed", "9"];
    let a = stdout(&run(&args, ""));
    assert_eq!(a, stdout(&run(&args, "")));
    assert!(a.starts_with("# seed=9 max_degree=3\np=3 r=2 k=2 n=4\n"));
    assert_eq!(run(&["delta", "-i", "-"], &a).status.code(), Some(0));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["delta"], "").status.code(), Some(1));
    assert_eq!(run(&["delta", "-i", "/nonexistent/code.txt"], "").status.code(), Some(1));
    let o = run(&["delta", "-i", "-"], "p=4 r=1 k=1 n=2\nrow: 1 | 1\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(run(&["delta", "-i", "-"], "p=2 r=2 k=1 n=2\nrow: 1 | 5\n").status.code(), Some(2));
    assert_eq!(run(&["delta", "-i", "-"], "p=2 r=2 k=1 n=2\nrow: 2 | 2,2\n").status.code(), Some(3));
    assert_eq!(run(&["ridm", "-i", "-"], NO_ANNIHILATOR).status.code(), Some(4));
    let big = "p=3 r=3 k=1 n=5\nrow: 1,1 | 2,1 | 0,1 | 1 | 1,0,1\n";
    assert_eq!(run(&["dual", "-i", "-", "--verify"], big).status.code(), Some(5));
}
