use std::path::Path;
use std::process::{Command, Output};

use num_rational::BigRational;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidkl")).args(args).env_remove("KL_CACHE_DIR").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn kl_examples() {
    assert_eq!(strings(&json(&["kl", "--n", "6"])["outputs"]["coefficients"]), ["1", "16", "15"]);
    assert_eq!(strings(&json(&["kl", "--n", "2"])["outputs"]["coefficients"]), ["1"]);
    let dir = tempfile::tempdir().unwrap();
    let k1 = write(dir.path(), "k1.json", r#"{"n": 1, "edges": []}"#);
    let r = json(&["kl", "--graph", &k1, "--cone", "3"]);
    assert_eq!(strings(&r["outputs"]["coefficients"]), ["1", "1"]);
    let c4 = write(dir.path(), "c4.txt", "# four-cycle\n0 1\n1 2\n2 3\n3 0\n");
    // six connected two-block splits minus four edges
    assert_eq!(strings(&json(&["kl", "--graph", &c4])["outputs"]["coefficients"]), ["1", "2"]);
    let csv = run(&["kl", "--n", "7", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "i,coefficient\n0,1\n1,42\n2,175\n");
}

#[test]
fn invalid_input_exits_with_2() {
    for args in [
        vec!["kl", "--n", "0"],
        vec!["kl", "--graph", "/definitely/not/here.json"],
        vec!["kl"],
        vec!["verify", "--suite", "nonsense"],
        vec!["e1", "--i", "0", "--n", "4"],
        vec!["eqkl", "--n", "40"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let two = write(dir.path(), "two.txt", "0 1\n2 3\n");
    assert_eq!(run(&["kl", "--graph", &two]).status.code(), Some(2));
    let big = write(dir.path(), "big.txt", "n 6\n0 1\n");
    assert_eq!(run(&["e1", "--i", "1", "--n", "5", "--graph", &big]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_stable() {
    for args in [
        vec!["eqkl", "--n", "6"],
        vec!["e1", "--i", "2", "--n", "9"],
        vec!["genfun", "--i", "1", "--max-n", "24", "--fit", "--asymptotics"],
        vec!["verify", "--suite", "conjecture"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

fn rational(v: &Value) -> BigRational {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn verdicts_rederive_from_exact_values() {
    let r = json(&["verify", "--suite", "all"]);
    assert_eq!(r["verdicts"]["all_passed"], Value::Bool(true));
    let mut seen = 0;
    for suite in r["outputs"]["suites"].as_array().unwrap() {
        let mut suite_ok = true;
        for c in suite["checks"].as_array().unwrap() {
            let (a, e) = (&c["actual"], &c["expected"]);
            let ok = match c["relation"].as_str().unwrap() {
                "eq" => a == e,
                "lt" => rational(a) < rational(e),
                "le" => rational(a) <= rational(e),
                other => panic!("relation {other}"),
            };
            assert_eq!(Value::Bool(ok), c["passed"], "{c}");
            suite_ok &= ok || c["required"] == Value::Bool(false);
            seen += 1;
        }
        assert_eq!(Value::Bool(suite_ok), suite["passed"]);
    }
    assert!(seen > 200);

    let e1 = json(&["e1", "--i", "2", "--n", "8"]);
    let mut sum = num_bigint::BigInt::from(0);
    for cell in e1["outputs"]["cells"].as_array().unwrap() {
        let p: usize = cell["p"].as_str().unwrap().parse().unwrap();
        let q: usize = cell["q"].as_str().unwrap().parse().unwrap();
        let d: num_bigint::BigInt = cell["dim"].as_str().unwrap().parse().unwrap();
        sum += if (p + q).is_multiple_of(2) { d } else { -d };
    }
    assert_eq!(sum.to_string(), e1["outputs"]["alternating_sum"].as_str().unwrap());
    let equal = e1["outputs"]["alternating_sum"] == e1["outputs"]["kl_coefficient"];
    assert_eq!(Value::Bool(equal), e1["verdicts"]["euler_identity"]);
}

#[test]
fn genfun_fit_reports_constants() {
    let r = json(&["genfun", "--i", "1", "--max-n", "25", "--fit"]);
    let fit = &r["outputs"]["fit"];
    assert_eq!(fit["r"], "1/2");
    assert_eq!(fit["predicted_r"], "1/2");
    assert_eq!(strings(&fit["numerator"]), ["0", "0", "0", "0", "1"]);
    let egf: Vec<Vec<String>> = fit["egf_form"].as_array().unwrap().iter().map(strings).collect();
    assert_eq!(egf, vec![vec!["1/2"], vec!["-1", "0", "-1/2"], vec!["1/2"]]);
    let seq = strings(&r["outputs"]["sequence"]);
    assert_eq!(&seq[..7], ["0", "0", "0", "0", "1", "5", "16"]);
    let csv = String::from_utf8(run(&["genfun", "--i", "2", "--max-n", "7", "--format", "csv"]).stdout).unwrap();
    assert_eq!(csv.lines().last(), Some("7,175"));
}

#[test]
fn eqkl_and_e1_tables() {
    let r = json(&["eqkl", "--n", "5"]);
    let degrees = r["outputs"]["degrees"].as_array().unwrap();
    assert_eq!(degrees.len(), 2);
    let t1: Vec<(String, String)> = degrees[1]["specht"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["partition"].as_str().unwrap().into(), x["multiplicity"].as_str().unwrap().into()))
        .collect();
    // hook-length dimensions must add up to d_coeff(1, 5) = 2^4 - 1 - 10
    let hook_dim = |p: &str| match p {
        "(5)" => 1,
        "(4,1)" => 4,
        "(3,2)" => 5,
        "(3,1,1)" => 6,
        "(2,2,1)" => 5,
        "(2,1,1,1)" => 4,
        "(1,1,1,1,1)" => 1,
        _ => panic!("{p}"),
    };
    let total: i64 = t1.iter().map(|(p, m)| hook_dim(p) * m.parse::<i64>().unwrap()).sum();
    assert_eq!(total, 5);
    assert!(t1.iter().all(|(p, _)| p.matches(',').count() < 2));
    let csv = String::from_utf8(run(&["e1", "--i", "1", "--n", "4", "--format", "csv"]).stdout).unwrap();
    assert_eq!(csv, "p,q,dim\n0,1,6\n1,1,7\n");
    let dir = tempfile::tempdir().unwrap();
    let edge = write(dir.path(), "edge.json", r#"{"n": 2, "edges": [[0, 1]]}"#);
    let g = json(&["e1", "--i", "1", "--n", "3", "--graph", &edge]);
    let b = json(&["e1", "--i", "1", "--n", "5"]);
    assert_eq!(g["outputs"]["cells"], b["outputs"]["cells"]);
}

#[test]
fn cache_dir_persists_records() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "p4.txt", "0 1\n1 2\n2 3\n");
    let cache = dir.path().join("cache");
    std::fs::create_dir(&cache).unwrap();
    let go = || {
        Command::new(env!("CARGO_BIN_EXE_braidkl"))
            .args(["kl", "--graph", &graph, "--cone", "3"])
            .env("KL_CACHE_DIR", &cache)
            .output()
            .unwrap()
    };
    let first = go();
    assert!(first.status.success());
    let records = std::fs::read_dir(&cache).unwrap().count();
    assert!(records > 0);
    let second = go();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), records);
    let plain = run(&["kl", "--graph", &graph, "--cone", "3"]);
    assert_eq!(plain.stdout, first.stdout);
}
