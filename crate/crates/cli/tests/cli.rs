use std::process::{Command, Output};

use ssv_core::serialize::PolyDocument;

fn ssv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = ssv(args);
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn e_text() {
    assert_eq!(ok(&["e", "--r", "3", "--n", "1", "--mu", "0,1,0"]).trim(), "x2 + ((k-1)(k+1)/(k^4 q - 1)) x1");
}

#[test]
fn p_text() {
    let out = ok(&["p", "--r", "3", "--n", "1", "--mu", "0,0,0"]);
    assert_eq!(out.replace([' ', '\n'], ""), "k^6+2k^4+2k^2+1");
}

#[test]
fn e_json_single_term() {
    let out = ok(&["e", "--r", "3", "--n", "2", "--mu", "2,0,0", "--format", "json"]);
    let doc = PolyDocument::from_json(&out).unwrap();
    assert_eq!(doc.object, "E");
    assert_eq!(doc.terms.len(), 1);
    assert_eq!(doc.terms[0].exp, vec![2, 0, 0]);
    let p = doc.polynomial().unwrap();
    assert_eq!(PolyDocument::from_json(&doc.to_json()).unwrap().polynomial().unwrap().len(), p.len());
}

#[test]
fn json_terms_are_lex_ordered() {
    let out = ok(&["e", "--n", "2", "--mu", "-1,0,2", "--format", "json"]);
    let doc = PolyDocument::from_json(&out).unwrap();
    let exps: Vec<_> = doc.terms.iter().map(|t| t.exp.clone()).collect();
    let mut sorted = exps.clone();
    sorted.sort();
    assert_eq!(exps, sorted);
    assert!(exps.len() > 1);
}

#[test]
fn latex_is_one_line() {
    let out = ok(&["e", "--mu", "0,1,0", "--format", "latex"]);
    assert_eq!(out.trim_end().lines().count(), 1);
    assert!(out.starts_with("E_{(0,1,0)}^{(1)} = x_{2} + \\frac{(k-1)(k+1)}{k^{4} q - 1} x_{1}"));
}

fn walk_rows(mu: &str, n: &str) -> serde_json::Value {
    serde_json::from_str(&ok(&["walks", "--n", n, "--mu", mu, "--format", "json"])).unwrap()
}

#[test]
fn walk_tables() {
    assert_eq!(walk_rows("0,1,0", "1")["walks"].as_array().unwrap().len(), 2);
    let t = walk_rows("2,0,0", "1");
    assert_eq!(t["walks"].as_array().unwrap().len(), 4);
    assert_eq!(t["word"], serde_json::json!([0, 2]));
    let t = walk_rows("1,0,0", "3");
    assert_eq!(t["walks"].as_array().unwrap().len(), 1);
    assert_eq!(t["word"], serde_json::json!([]));
}

#[test]
fn tu_and_limits() {
    let id = ok(&["tu", "--mu", "0,1,0", "--u", "1,2,3"]);
    let raw = ok(&["e", "--mu", "0,1,0", "--normalization", "raw"]);
    assert_eq!(id, raw);
    assert_eq!(ok(&["limit", "--mu", "0,1,0", "--direction", "q0"]).trim(), "x2 - (k-1)(k+1) x1");
    assert_eq!(ok(&["limit", "--mu", "1,0,0", "--direction", "q0"]).trim(), "x1");
    let p = ok(&["limit", "--mu", "1,0,0", "--n", "2", "--direction", "qinf", "--of", "p", "--format", "json"]);
    let doc = PolyDocument::from_json(&p).unwrap();
    assert_eq!(doc.direction.as_deref(), Some("qinf"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["e", "--mu", "0,x,0"],
        vec!["e", "--mu", "0,1"],
        vec!["p", "--mu", "0,1,0"],
        vec!["e", "--mu", "0,0,0", "--bogus"],
        vec!["tu", "--mu", "0,0,0", "--u", "1,1,2"],
        vec!["verify", "--suite", "nope"],
        vec!["walks", "--mu", "0,1,0", "--format", "latex"],
    ] {
        let o = ssv(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_suites() {
    let out = ok(&["verify", "--suite", "golden"]);
    assert!(out.contains("70 checks, 0 failed"), "{out}");
    let out = ok(&["verify", "--suite", "relations", "--r", "3", "--n", "2"]);
    assert!(out.contains(", 0 failed"));
    assert!(out.contains("braid"));
    let out = ok(&["verify", "--suite", "oracle", "--r", "2", "--n", "3"]);
    assert!(out.contains("[PASS] oracle r=2 n=3"));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_ssv"))
            .args(["p", "--n", "3", "--mu", "2,1,0", "--format", "json"])
            .env("SSV_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        o.stdout
    };
    assert_eq!(run("1"), run("4"));
    let o = Command::new(env!("CARGO_BIN_EXE_ssv"))
        .args(["e", "--mu", "0,0,0"])
        .env("SSV_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}
