use std::process::Command;

use serde_json::Value;
use steenrod_hit::cli::eval_str;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let cache = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_steenrod-hit"))
        .args(args)
        .env("STEENROD_HIT_CACHE", cache.path())
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let r = run(args);
    (r.code, serde_json::from_str(&r.stdout).unwrap())
}

#[test]
fn q21_is_not_hit() {
    let r = run(&["hit", "Q(2,1)", "--vars", "2"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.trim(), "NotHit");
}

#[test]
fn certificate_refeeds_through_eval() {
    let (code, v) = json(&["hit", "Q(4,3)", "--vars", "4", "--certificate", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "hit");
    for key in ["command", "inputs", "status", "data", "timing"] {
        assert!(v.get(key).is_some(), "record lacks {key}");
    }
    assert!(v["timing"].is_null());
    // rebuild sum Sq^i(u_i) as an expression and evaluate it independently
    let terms = v["data"]["certificate"]["terms"].as_array().unwrap();
    assert!(!terms.is_empty());
    let sum: Vec<String> = terms
        .iter()
        .map(|t| format!("Sq({}){{{}}}", t["i"], t["u"].as_str().unwrap()))
        .collect();
    let text = sum.join(" + ");
    let r = run(&["eval", &text, "--vars", "4"]);
    assert_eq!(r.code, 0);
    let q43 = run(&["eval", "Q(4,3)", "--vars", "4"]);
    assert_eq!(r.stdout, q43.stdout);
    assert_eq!(eval_str(&text, 4).unwrap(), eval_str("Q(4,3)", 4).unwrap());
}

#[test]
fn text_certificate_lines_are_pairs() {
    let r = run(&["hit", "Q(2,0)", "--vars", "2", "--certificate"]);
    assert_eq!(r.code, 0);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next(), Some("Hit"));
    let mut sum = String::new();
    for line in lines {
        let inner = line.strip_prefix('(').unwrap().strip_suffix(')').unwrap();
        let (i, u) = inner.split_once(", ").unwrap();
        if !sum.is_empty() {
            sum.push_str(" + ");
        }
        sum.push_str(&format!("Sq({i}){{{u}}}"));
    }
    assert_eq!(eval_str(&sum, 2).unwrap(), eval_str("Q(2,0)", 2).unwrap());
}

#[test]
fn witness_for_non_hit() {
    let (code, v) = json(&["hit", "x1^3*x2^3", "--vars", "2", "--witness", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["answer"], "NotHit");
    assert_eq!(v["data"]["witness"]["degree"], 6);
}

#[test]
fn answers_ignore_flag_order_and_format() {
    let a = run(&["--vars", "3", "hit", "Q(3,2)*Q(3,1)"]);
    let b = run(&["hit", "--vars", "3", "Q(3,2)*Q(3,1)"]);
    let (_, c) = json(&["hit", "Q(3,2)*Q(3,1)", "--json", "--vars", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout.trim(), "Hit");
    assert_eq!(c["data"]["answer"], "Hit");
}

#[test]
fn restricted_test() {
    let r = run(&["hit", "x1^4*x2", "--vars", "2", "--max-sq", "1"]);
    assert_eq!(r.stdout.trim(), "NotHit");
    let r = run(&["hit", "x1^4*x2", "--vars", "2", "--max-sq", "2"]);
    assert_eq!(r.stdout.trim(), "Hit");
}

#[test]
fn sq_tables_all_exact() {
    let (code, v) = json(&["verify", "sq-tables", "--json"]);
    assert_eq!(code, 0);
    let reports = v["data"]["reports"].as_array().unwrap();
    assert!(reports.len() > 100);
    for r in reports {
        assert_eq!(r["status"], "exact-equal", "{r}");
    }
}

#[test]
fn v_identity_reports_the_one_variable_gap() {
    let (code, v) = json(&["verify", "v-identity", "--json"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "failed");
    let reports = v["data"]["reports"].as_array().unwrap();
    assert_eq!(reports[0]["status"], "failed");
    for r in &reports[1..] {
        assert_eq!(r["status"], "exact-equal");
    }
}

#[test]
fn seeded_suites_are_byte_identical() {
    let a = run(&["verify", "antipode", "--json", "--seed", "11"]);
    let b = run(&["verify", "antipode", "--json", "--seed", "11"]);
    let c = run(&["verify", "antipode", "--json", "--seed", "12"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["eval", "Q(2,", "--vars", "2"]).code, 2);
    assert_eq!(run(&["eval", "x3", "--vars", "2"]).code, 2);
    assert_eq!(run(&["hit", "x1"]).code, 2);
    assert_eq!(run(&["bogus"]).code, 2);
    assert_eq!(run(&["verify", "everything"]).code, 2);
    assert_eq!(run(&["scan", "--n", "2", "--dmax", "3"]).code, 1);
    assert_eq!(run(&["scan", "--n", "3", "--dmax", "8"]).code, 0);
    assert_eq!(
        run(&["scan", "--n", "3", "--dmax", "8", "--limit-columns", "10"]).code,
        3
    );
    assert_eq!(
        run(&["hit", "Q(4,0)", "--vars", "4", "--limit-degree", "8"]).code,
        3
    );
    assert_eq!(run(&["--version"]).code, 0);
}

#[test]
fn parse_errors_name_the_position() {
    let r = run(&["eval", "Q(2,", "--vars", "2"]);
    assert!(r.stderr.contains("column 5"), "{}", r.stderr);
    let (_, v) = json(&["eval", "Q(2,", "--vars", "2", "--json"]);
    assert_eq!(v["status"], "usage-error");
}

#[test]
fn dickson_listings() {
    let r = run(&["dickson", "--n", "2"]);
    assert_eq!(
        r.stdout,
        "Q(2,0) = x1^2*x2 + x1*x2^2\nQ(2,1) = x1^2 + x1*x2 + x2^2\n"
    );
    let r = run(&["dickson", "--n", "4", "--list"]);
    assert_eq!(r.stdout.lines().count(), 4);
    let (_, v) = json(&["dickson", "--n", "3", "--degree", "12", "--json"]);
    assert_eq!(v["data"]["monomials"].as_array().unwrap().len(), 2);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let r = run(&["hit", "Q(3,0)*Q(3,2)", "--vars", "3", "--cache-dir", d]);
    assert_eq!(r.stdout.trim(), "Hit");
    let (_, info) = json(&["cache", "info", "--cache-dir", d, "--json"]);
    let files = info["data"]["entries"].as_array().unwrap().len();
    assert!(files >= 1);
    // a second run reads the stored basis and answers the same
    let again = run(&[
        "hit",
        "Q(3,0)*Q(3,2)",
        "--vars",
        "3",
        "--cache-dir",
        d,
        "--certificate",
    ]);
    let fresh = run(&[
        "hit",
        "Q(3,0)*Q(3,2)",
        "--vars",
        "3",
        "--no-cache",
        "--certificate",
    ]);
    assert_eq!(again.stdout, fresh.stdout);
    let (_, cleared) = json(&["cache", "clear", "--cache-dir", d, "--json"]);
    assert_eq!(cleared["data"]["removed"], files);
    let (_, info) = json(&["cache", "info", "--cache-dir", d, "--json"]);
    assert!(info["data"]["entries"].as_array().unwrap().is_empty());
}
