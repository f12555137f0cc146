use std::process::{Command, Output};

fn qchrom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qchrom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ok(args: &[&str]) -> String {
    let o = qchrom(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn code(args: &[&str]) -> i32 {
    qchrom(args).status.code().expect("exited")
}

#[test]
fn spectrum_bounds() {
    assert!(ok(&["spectrum", "--p", "3", "--n", "6", "--gen", "2,2,2"]).contains("bound = 6"));
    assert!(ok(&["spectrum", "--p", "3", "--n", "12", "--gen", "4,4,4"]).contains("bound = 12"));
    let out = ok(&["spectrum", "--p", "2", "--n", "5", "--gen", "4,1"]);
    assert!(out.contains("bipartite"));
    assert!(out.contains("bound = 2"));
}

#[test]
fn spectrum_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("o63.json");
    ok(&["spectrum", "--p", "3", "--n", "6", "--gen", "2,2,2", "--out", path.to_str().unwrap()]);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["lambda_min"], "-18");
    assert_eq!(doc["bound"], "6");
}

#[test]
fn designs() {
    let out = ok(&["design", "paley", "7"]);
    assert!(out.contains("n=7 k=3 lambda=1 r=3 b=7 theta=4"), "{out}");
    assert!(out.contains("bound = 8"));
    assert!(ok(&["design", "twinprime", "3"]).contains("bound = 16"));
    assert!(ok(&["design", "menon", "2"]).contains("bound = 16"));
    assert_eq!(code(&["design", "paley", "5"]), 2);
}

#[test]
fn design_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("paley11.json");
    let p = path.to_str().unwrap();
    ok(&["design", "paley", "11", "--out", p]);
    assert!(ok(&["design", "--file", p]).contains("bound = 12"));

    // Drop a block: the file no longer describes a BIBD.
    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["blocks"].as_array_mut().unwrap().pop();
    doc["params"] = serde_json::Value::Null;
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = qchrom(&["design", "--file", p]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("not a BIBD"));
}

#[test]
fn representations() {
    assert!(ok(&["represent", "design", "paley", "7"]).contains("dimension=8"));
    assert_eq!(code(&["represent", "natural", "--p", "3", "--n", "3", "--gen", "1,1,1"]), 0);
    assert_eq!(code(&["represent", "natural", "--p", "2", "--n", "6", "--gen", "4,2"]), 4);
}

#[test]
fn certify_tables() {
    let md = ok(&["certify", "table2", "--format", "md"]);
    assert!(md.contains("| Paley(q=11) | (11, 5, 2) | 12 | 12 | 12 | certified-equal |"), "{md}");
    let json = ok(&["certify", "table3", "--n", "11"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["certificates"][0]["verdict"], "certified-equal");
    let json = ok(&["certify", "table3", "--n", "9"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["certificates"][0]["verdict"], "bounded");
    assert_eq!(doc["certificates"][0]["agrees_with_table"], true);
}

#[test]
fn certify_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let summary = ok(&["certify", "table2", "--out", path.to_str().unwrap()]);
        assert!(summary.contains("Menon(s=2): lower 16, upper 16: certified-equal"), "{summary}");
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn verifications() {
    for args in [
        &["verify", "goal", "--l-max", "6"][..],
        &["verify", "second-largest", "--l-max", "6"],
        &["verify", "g5-min", "--l-max", "4"],
        &["verify", "duality", "--n", "6"],
        &["verify", "appendix-claims", "--l-max", "6"],
        &["verify", "subgraph", "--l", "2", "--t", "1"],
    ] {
        let doc: serde_json::Value = serde_json::from_str(&ok(args)).unwrap();
        assert_eq!(doc["passed"], true, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["spectrum", "--p", "3", "--n", "3", "--gen", "1,2,0"]), 2);
    assert_eq!(code(&["spectrum", "--p", "3", "--n", "9", "--gen", "3,3,3", "--max-types", "5"]), 3);
    assert_eq!(code(&["oracle", "--p", "3", "--n", "9", "--gen", "3,3,3", "--budget", "100"]), 3);
    assert_eq!(code(&["certify", "table1", "--family", "nope"]), 2);
}

#[test]
fn oracle_agrees() {
    let exact = ok(&["oracle", "--p", "3", "--n", "6", "--gen", "2,2,2"]);
    assert!(exact.contains("-18"), "{exact}");
    assert_eq!(code(&["oracle", "--p", "4", "--n", "3", "--gen", "1,1,1,0", "--symmetrize", "--numeric"]), 0);
}
