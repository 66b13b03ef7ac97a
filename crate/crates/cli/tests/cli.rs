use std::process::{Command, Output};

use serde_json::Value;

fn addcomb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_addcomb")).args(args).env_remove("ADDCOMB_THREADS").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn verify_json_schema() {
    let out = addcomb(&[
        "verify",
        "--group",
        "2,6",
        "--A",
        "{0,1,6,7}",
        "--B",
        "{0,1}",
        "--t",
        "2",
        "--theorem",
        "main",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["group"], serde_json::json!({"orders": [2, 6]}));
    let verdict = &v["verdicts"][0];
    assert_eq!(verdict["theorem"], "main");
    assert_eq!(verdict["holds"], true);
    for key in ["branch", "lhs", "rhs", "witness", "elapsed_ns"] {
        assert!(verdict.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_witness_branch_prints_witness() {
    // A = B = H = {0,2,4,6} in Z_8 fails the weak bound at t = 2: 8 < 9.
    let out = addcomb(&[
        "verify",
        "--group",
        "8",
        "--A",
        "{0,2,4,6}",
        "--B",
        "{0,2,4,6}",
        "--t",
        "2",
        "--theorem",
        "main",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let w = &json(&out)["verdicts"][0]["witness"];
    assert_eq!(w["H"], serde_json::json!([0, 2, 4, 6]));
    for key in ["A_prime", "B_prime", "l", "rho"] {
        assert!(w.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_theorem_lists() {
    let out = addcomb(&[
        "verify",
        "--group",
        "5",
        "--A",
        "{0,1,2}",
        "--B",
        "{0,1,2}",
        "--t",
        "2",
        "--theorem",
        "t2,pollard",
        "--format",
        "tsv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("t2\ttrue\tWEAK_BOUND\t8\t8"));
    assert!(rows[2].starts_with("pollard\ttrue\tBOUND\t8\t8"));
}

#[test]
fn literal_errors_exit_with_usage_status() {
    for (lit, code) in [("{}", "EMPTY_SET"), ("{12}", "OUT_OF_RANGE"), ("{1,1}", "DUPLICATE"), ("{1;2}", "MALFORMED")] {
        let out = addcomb(&["verify", "--group", "12", "--A", lit, "--B", "{0}"]);
        assert_eq!(out.status.code(), Some(2), "{lit}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(code), "{lit}");
    }
    let out = addcomb(&["verify", "--group", "12", "--A", "{0}", "--B", "{0}", "--theorem", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precondition_errors_exit_3() {
    let out = addcomb(&["verify", "--group", "12", "--A", "{0,1}", "--B", "{0}", "--t", "3", "--theorem", "main"]);
    assert_eq!(out.status.code(), Some(3));
    let out = addcomb(&["verify", "--group", "2,2", "--A", "{0,1}", "--B", "{0}", "--theorem", "chowla"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn example_families() {
    let out = addcomb(&["example", "--family", "1", "--params", "h=2,q=6,d=1,s=3,r=2,x=1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["identity"]["pollard_sum"], 20);
    assert_eq!(v["identity"]["defect"], -1);
    assert_eq!(v["equal_sums_witness"], false);

    let out = addcomb(&[
        "example",
        "--family",
        "2",
        "--group",
        "2,8",
        "--H",
        "{0,4,8,12}",
        "--L",
        "{0,8}",
        "--params",
        "r=2,x=1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["t"], 5);
    assert_eq!(v["identity"]["defect"], -1);
    assert_eq!(v["stabilizer"], serde_json::json!([0, 8]));

    let out = addcomb(&["example", "--family", "1", "--params", "h=3,q=6,d=1,s=2,r=2,x=3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x ≤ |H|−1"));
}

#[test]
fn energy_report() {
    let out = addcomb(&[
        "energy", "--group", "5", "--A", "{0,1,2}", "--B", "{0,1,2}", "--k", "1", "--t", "2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["energy"], 5);
    assert_eq!(v["report"]["T"], serde_json::json!([0, 1, 4]));
    assert_eq!(v["verdicts"][0]["rhs"], 6);
}

#[test]
fn search_output_ignores_thread_count() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_addcomb"))
            .args([
                "search",
                "--max-order",
                "12",
                "--min-order",
                "9",
                "--t",
                "1..2",
                "--mode",
                "sample",
                "--samples",
                "40",
                "--seed",
                "7",
            ])
            .env("ADDCOMB_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    let lines: Vec<Value> =
        one.split(|&c| c == b'\n').filter(|l| !l.is_empty()).map(|l| serde_json::from_slice(l).unwrap()).collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|r| r["group"]["orders"].is_array() && r["tightness_gap"].is_i64()));
}

#[test]
fn search_rejects_oversized_exhaustive_runs() {
    let out = addcomb(&["search", "--max-order", "13", "--mode", "exhaustive"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_reports_timings() {
    let out = addcomb(&[
        "bench",
        "--order",
        "256",
        "--density",
        "0.4",
        "--reps",
        "2",
        "--kernel",
        "naive",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kernel"], "naive");
    assert!(v["min_ns"].as_u64().unwrap() > 0);
}
