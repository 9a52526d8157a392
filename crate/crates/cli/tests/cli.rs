use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use braidmon::fixtures::FALK_A_PRINTED;
use braidmon::monodromy::Monodromy;
use braidmon::parse::parse_braid;
use braidmon::braids_equal;

/// Runs the binary with `stdin`, returning stdout and the exit code.
fn run(args: &[&str], stdin: &str) -> (String, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_braidmon"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn ok(args: &[&str], stdin: &str) -> String {
    let (out, code) = run(args, stdin);
    assert_eq!(code, 0, "{args:?}");
    out
}

fn fixture(id: &str) -> String {
    ok(&["fixture", id], "")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("braidmon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn pencil_gives_the_full_twist() {
    let m = Monodromy::parse(&ok(&["monodromy"], &fixture("pencil(3)"))).unwrap();
    assert_eq!(m.s(), 1);
    assert!(braids_equal(m.get(1), &parse_braid("A[1,2,3]", 3).unwrap()).unwrap());
}

#[test]
fn falk_closed_form_is_printed_verbatim() {
    let out = ok(&["monodromy", "--cf"], &fixture("falkA"));
    let words: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(words, FALK_A_PRINTED);
    // the closed form reads back as a monodromy file
    assert_eq!(Monodromy::parse(&out).unwrap().s(), 11);
}

#[test]
fn output_is_deterministic() {
    let d = ok(&["random", "--seed", "11", "--wires", "6", "--braid", "2"], "");
    assert_eq!(d, ok(&["random", "--seed", "11", "--wires", "6", "--braid", "2"], ""));
    assert_ne!(d, ok(&["random", "--seed", "12", "--wires", "6", "--braid", "2"], ""));
    for args in [&["monodromy"][..], &["present", "--algorithm", "arvola"], &["invariants"], &["lattice", "--profile"]] {
        assert_eq!(ok(args, &d), ok(args, &d), "{args:?}");
    }
    let a = fixture("maclane_arrangement");
    assert_eq!(ok(&["extract"], &a), ok(&["extract"], &a));
}

#[test]
fn pipes_match_staged_files() {
    let d = fixture("fs_plus");
    let m = ok(&["monodromy"], &d);
    let piped = ok(&["invariants"], &ok(&["present", "--algorithm", "monodromy"], &m));
    let staged_m = scratch("fs.mono", &m);
    let p = ok(&["present", "--algorithm", "monodromy", staged_m.to_str().unwrap()], "");
    let staged_p = scratch("fs.pres", &p);
    assert_eq!(piped, ok(&["invariants", staged_p.to_str().unwrap()], ""));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check-infinity"], &fixture("falkA")), ("true\n".into(), 0));
    assert_eq!(run(&["check-infinity"], &fixture("maclane_plus")), ("false\n".into(), 1));
    assert_eq!(run(&["monodromy"], "n=3\nv 3 2\n").1, 2);
    assert_eq!(run(&["monodromy"], "hello\n").1, 2);
    assert_eq!(run(&["nonsense"], "").1, 2);
    assert_eq!(run(&["fixture", "pencil(1)"], "").1, 2);
    assert_eq!(run(&["markov", "--move", "3d@1"], &fixture("falkA")).1, 2);
    let (a, b) = (scratch("a.diag", &fixture("falkA")), scratch("b.diag", &fixture("falkA2")));
    assert_eq!(run(&["compare-lattice", a.to_str().unwrap(), b.to_str().unwrap()], "").1, 1);
}

#[test]
fn markov_witness_verifies() {
    let d = ok(&["random", "--seed", "3", "--wires", "5", "--braid", "2"], "");
    let mv = "1:s1 s2^-1 s3";
    let moved = ok(&["markov", "--move", mv], &d);
    let w = ok(&["markov", "--move", mv, "--witness"], &d);
    let (before, after, w) = (scratch("before.diag", &d), scratch("after.diag", &moved), scratch("move.wit", &w));
    let args = ["verify-witness", before.to_str().unwrap(), after.to_str().unwrap(), w.to_str().unwrap()];
    assert_eq!(run(&args, ""), ("certified\n".into(), 0));
}

#[test]
fn extraction_of_a_central_triple() {
    let out = ok(&["extract"], &fixture("example73a"));
    let m = Monodromy::parse(&ok(&["monodromy"], &out)).unwrap();
    assert_eq!(m.sets(), &[vec![1, 2, 3]]);
    let flipped = ok(&["extract", "--flip-crossings", "--shear", "0"], &fixture("example73a"));
    assert!(flipped.starts_with("# shear 0\n"));
}

#[test]
fn conjugating_twice_is_the_identity() {
    let d = fixture("maclane_plus");
    let twice = ok(&["conjugate"], &ok(&["conjugate"], &d));
    assert_eq!(twice, d);
    let m = ok(&["monodromy"], &d);
    assert!(Monodromy::parse(&ok(&["conjugate"], &m)).is_ok());
}
