#[path = "common/golden.rs"]
mod golden;

use std::path::Path;

use golden::{golden_dir, mlmkit};

fn run(args: &[&str]) -> (Option<i32>, String, String) {
    let out = mlmkit(args, &golden_dir());
    (
        out.status.code(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scratch(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("mlmkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn golden_transcripts_reproduce() {
    let files = golden::transcripts();
    assert_eq!(files.len(), 15);
    for f in files {
        if let Err(e) = golden::check_transcript(&f) {
            panic!("{}: {e}", f.display());
        }
    }
}

#[test]
fn golden_inputs_round_trip() {
    assert!(golden::check_round_trips().unwrap() >= 7);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["estimate", "--graph", "inputs/sparse5.bigraph", "--backend", "mc", "--samples", "500", "--seed", "9"];
    let first = run(&args);
    assert_eq!(first.0, Some(0));
    assert_eq!(first, run(&args));
    let other = run(&["estimate", "--graph", "inputs/sparse5.bigraph", "--backend", "mc", "--samples", "500", "--seed", "10"]);
    assert_ne!(first.1, other.1);
}

#[test]
fn spec_style_examples() {
    assert_eq!(run(&["coeff", "inputs/square.poly", "--monomial", "x1*x2"]).1, "2\n");
    assert_eq!(run(&["perm", "--matrix", "inputs/identity3.csv"]).1, "1\n");
    assert_eq!(run(&["maxmlm", "inputs/greedy.poly", "--mode", "greedy"]).1, "x1,x2,x3,x4 4\n");
    assert_eq!(run(&["matchings", "--graph", "inputs/k33.bigraph"]).1, "6\n");
    assert_eq!(run(&["sum", "inputs/linear.poly"]).1, "5\n");
    assert_eq!(run(&["coeff", "inputs/square.poly", "--monomial", "1"]).1, "0\n");
}

#[test]
fn oracle_agrees_with_table() {
    for file in ["inputs/mixed.poly", "inputs/hybrid.poly", "inputs/exact.poly"] {
        let table = run(&["table", file]);
        assert_eq!(table.0, Some(0));
        assert_eq!(table.1, run(&["oracle", file]).1);
    }
}

#[test]
fn generators_print_parseable_output() {
    let xy = run(&["gen", "matching-xy", "--graph", "inputs/k33.bigraph"]);
    assert_eq!(xy.0, Some(0));
    let path = scratch("xy.poly", &xy.1);
    // full monomial over x1..x6 counts the perfect matchings of K_{3,3}
    assert_eq!(run(&["coeff", s(&path), "--monomial", "x1*x2*x3*x4*x5*x6"]).1, "6\n");

    let h = run(&["gen", "matching-h", "--graph", "inputs/k33.bigraph"]);
    let path = scratch("h.poly", &h.1);
    assert_eq!(run(&["coeff", s(&path), "--monomial", "x1*x2*x3"]).1, "6\n");

    let p = run(&["gen", "perm", "--matrix", "inputs/signed4.csv"]);
    let path = scratch("p.poly", &p.1);
    assert_eq!(run(&["coeff", s(&path), "--monomial", "x1*x2*x3*x4"]).1, "11\n");

    let k = run(&["gen", "kpath", "--graph", "inputs/triangle.graph", "--k", "3"]);
    let path = scratch("k.circ", &k.1);
    assert_eq!(run(&["coeff", s(&path), "--monomial", "x1*x2*x3"]).1, "6\n");

    let ind = run(&["gen", "indset", "--graph", "inputs/path3.graph"]);
    let path = scratch("ind.poly", &ind.1);
    // maximum independent set 2, times n - 1 = 2
    assert_eq!(run(&["maxmlm", s(&path), "--mode", "exact"]).1, "x1,x2,x3,x4 4\n");
}

#[test]
fn estimates_through_every_scheme() {
    assert_eq!(run(&["estimate", "inputs/linear.poly", "--monomial", "x1*x2*x4"]).1, "2\n");
    assert_eq!(run(&["estimate", "inputs/linear.poly", "--monomial", "x1*x2"]).1, "0\n");
    let mc = run(&["sum-pad", "inputs/linear.poly", "--backend", "mc", "--samples", "4000", "--seed", "3"]);
    assert_eq!(mc.0, Some(0));
    let mut lines = mc.1.lines();
    let value: f64 = lines.next().unwrap().parse().unwrap();
    let se: f64 = lines.next().unwrap().strip_prefix("std_error ").unwrap().parse().unwrap();
    assert!((value - 5.0).abs() <= 4.0 * se.max(1e-9), "{value} +- {se}");
    let no = run(&["hybrid", "inputs/hybrid.poly", "--split", "2", "--monomial", "x3"]);
    assert_eq!(no.1, "no\n");
}

#[test]
fn usage_errors_exit_one() {
    let (code, out, err) = run(&["table", "inputs/square.poly", "--frobnicate"]);
    assert_eq!(code, Some(1));
    assert!(out.is_empty());
    assert!(err.contains("Usage"));
    assert_eq!(run(&["nonsense"]).0, Some(1));
    assert_eq!(run(&["maxmlm", "inputs/greedy.poly", "--mode", "fast"]).0, Some(1));
    assert_eq!(run(&["estimate", "inputs/linear.poly", "--backend", "mc"]).0, Some(1));
    assert_eq!(run(&["--help"]).0, Some(0));
}

#[test]
fn input_errors_exit_one() {
    let cases = [
        ("syntax.poly", "(x1 + x2", vec!["table"]),
        ("zero-index.poly", "(x0 + x1)", vec!["table"]),
        ("zero-exp.poly", "(x1^0)", vec!["table"]),
        ("arity.circ", "a var x1\nb var x2\nc var x3\nm mul a b c\nout m\n", vec!["table"]),
        ("forward.circ", "s add a\na var x1\nout s\n", vec!["table"]),
        ("no-out.circ", "a var x1\nb add a\n", vec!["table"]),
        ("ragged.csv", "1,2\n3\n", vec!["perm", "--matrix"]),
        ("bad.graph", "graph 2\ne 1 3\n", vec!["gen", "indset", "--graph"]),
        ("unrestricted.cnf", "cnf 1\n1\n1\n-1 1\n", vec!["gen", "2sat", "--cnf"]),
        ("nonlinear.poly", "(x1*x2 + x3) * (x1 + x2)", vec!["sum-pad"]),
        ("circuit-for-maxmlm.circ", "a var x1\nout a\n", vec!["maxmlm"]),
    ];
    for (name, contents, cmd) in cases {
        let path = scratch(name, contents);
        let mut args = cmd.clone();
        args.push(s(&path));
        let (code, out, err) = run(&args);
        assert_eq!(code, Some(1), "{name}: {err}");
        assert!(out.is_empty(), "{name}");
        assert!(err.starts_with("error:"), "{name}: {err}");
    }
    assert_eq!(run(&["table", "inputs/does-not-exist.poly"]).0, Some(1));
    assert_eq!(run(&["coeff", "inputs/square.poly", "--monomial", "x1*x1"]).0, Some(1));
    assert_eq!(run(&["coeff", "inputs/square.poly", "--monomial", "x9"]).0, Some(1));
    assert_eq!(run(&["hybrid", "inputs/hybrid.poly", "--split", "9", "--monomial", "x1"]).0, Some(1));
    let (code, _, err) = run(&["table", s(&scratch("syntax2.poly", "(x1)\n* [x2]"))]);
    assert_eq!(code, Some(1));
    assert!(err.contains("line 2, column 3"), "{err}");
}

#[test]
fn resource_errors_exit_two() {
    let clauses: Vec<String> = (0..12).map(|i| format!("(x{} + x{})", 2 * i + 1, 2 * i + 2)).collect();
    let wide = scratch("wide.poly", &clauses.join(" * "));
    let out = mlmkit(&["table", s(&wide)], &golden_dir());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4096);

    let tight = std::process::Command::new(env!("CARGO_BIN_EXE_mlmkit"))
        .args(["oracle", s(&wide), "--limit", "100"])
        .output()
        .unwrap();
    assert_eq!(tight.status.code(), Some(2));

    let row = vec!["1"; 31].join(",");
    let csv = scratch("too-big.csv", &vec![row; 31].join("\n"));
    assert_eq!(run(&["perm", "--matrix", s(&csv), "--method", "ryser"]).0, Some(2));

    let deep: Vec<String> = (0..30).map(|_| "(x1 + x2 + x3 + x4 + x5 + x6 + x7 + x8)".to_string()).collect();
    let deep = scratch("deep.poly", &deep.join(" * "));
    let (code, _, err) = run(&["maxmlm", s(&deep), "--mode", "exact"]);
    assert_eq!(code, Some(2), "{err}");
}
