use std::process::{Command, Output};

fn metallic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metallic")).args(args).output().expect("the binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = metallic(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn encode_and_decode() {
    assert_eq!(stdout(&["encode", "--p", "5", "7"]), "21\n");
    assert_eq!(stdout(&["decode", "--p", "5", "0"]), "0\n");
    assert_eq!(stdout(&["decode", "--p", "5", "22"]), "8\n");
    assert_eq!(stdout(&["encode", "--p", "17", "14"]), "14\n");
}

#[test]
fn sequences() {
    assert_eq!(stdout(&["seq", "--p", "5", "--kind", "m", "--upto", "4"]), "1\n3\n8\n21\n55\n");
    assert_eq!(stdout(&["seq", "--p", "5", "--kind", "M", "--upto", "3"]), "1\n4\n12\n33\n");
    assert_eq!(stdout(&["seq", "--p", "5", "--kind", "b", "--upto", "3"]), "1\n2\n5\n13\n");
}

#[test]
fn arithmetic_commands() {
    assert_eq!(stdout(&["add", "--p", "5", "21", "1"]), "100\n");
    assert_eq!(stdout(&["sub", "--p", "5", "100", "21"]), "1\n");
    assert_eq!(stdout(&["cmp", "--p", "5", "12", "20"]), "less\n");
    assert_eq!(stdout(&["inc", "--p", "5", "2"]), "10\n");
    assert_eq!(stdout(&["dec", "--p", "5", "100"]), "21\n");
}

#[test]
fn node_description() {
    let out = stdout(&["node", "--p", "5", "--tree", "white", "10"]);
    assert!(out.contains("number: 3"), "{out}");
    assert!(out.contains("level: 1"), "{out}");
    assert!(out.contains("preferred son: 100 (8), son 2 of 3"), "{out}");
    let out = stdout(&["node", "--p", "5", "--tree", "black", "1"]);
    assert!(out.contains("father: none"), "{out}");
}

#[test]
fn neighbors_and_paths() {
    let out = stdout(&["neighbors", "--p", "5", "--tiling", "p4", "--tree", "white", "10"]);
    assert_eq!(out.lines().count(), 5);
    assert!(out.starts_with("1: 1\n"), "{out}");
    let out = stdout(&["path", "--p", "5", "--algo", "topdown", "102"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "0 root 1 1");
    assert_eq!(lines.len(), 4);
    assert!(lines[2].ends_with(" 102 10"), "{out}");
    assert!(lines[3].starts_with("digit visits: "));
}

#[test]
fn verify_exits_zero() {
    let out = metallic(&["verify", "--p", "7", "--levels", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("CHECK ") && l.ends_with(" PASS")), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(metallic(&["encode", "--p", "4", "7"]).status.code(), Some(2));
    assert_eq!(metallic(&["add", "--p", "5", "212", "1"]).status.code(), Some(2));
    assert_eq!(metallic(&["sub", "--p", "5", "1", "2"]).status.code(), Some(2));
    assert_eq!(metallic(&["node", "--p", "5", "--tree", "white", "0"]).status.code(), Some(2));
    assert_eq!(metallic(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(metallic(&["verify", "--p", "9", "--levels", "12"]).status.code(), Some(2));
}

#[test]
fn svg_is_well_formed() {
    let svg = stdout(&["render", "--p", "5", "--levels", "3", "--format", "svg"]);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    let nodes = doc.descendants().filter(|n| n.attribute("class").is_some_and(|c| c.starts_with("node"))).count();
    assert_eq!(nodes, 33);
}

#[test]
fn bench_is_deterministic() {
    let args = ["bench", "--p", "7", "--len", "200", "--samples", "16", "--seed", "5"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let mut sequential = args.to_vec();
    sequential.push("--sequential");
    assert_eq!(first, stdout(&sequential));
}
