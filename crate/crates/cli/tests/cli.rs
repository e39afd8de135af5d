use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = run(&all);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).unwrap())
}

#[test]
fn hilbert_text() {
    let o = run(&["hilbert", "x1^2", "x2^2", "x3^2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("# lefschetz "));
    assert_eq!(lines[1], "h = (1, 3, 3, 1)");
    assert_eq!(lines[2], "dim 8, socle degree 3, unimodal true, symmetric true");
}

#[test]
fn hilbert_over_a_prime_field_and_csv() {
    // small primes are refused
    let o = run(&["hilbert", "x1^2 + x2^2", "x1*x2", "--field", "fp:101"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not an admissible prime"));
    let o = run(&["hilbert", "x1^2 + x2^2", "x1*x2", "--field", "fp:1048583", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "degree,dim\n0,1\n1,2\n2,1\n");
}

#[test]
fn jordan_json() {
    let (code, v) = json(&["jordan", "x1^2", "x2^2", "x3^2", "-y", "x1+x2+x3"]);
    assert_eq!(code, 0);
    assert_eq!(v["jordan_type"], serde_json::json!([4, 2, 2]));
    assert_eq!(v["dual_of_hilbert"], serde_json::json!([4, 2, 2]));
    assert_eq!(v["bound_holds"], true);
    assert_eq!(v["header"]["command"], "jordan");
    assert!(v["header"]["prng"].as_str().unwrap().contains("ChaCha8"));
}

#[test]
fn slp_search_and_failing_element() {
    let (code, v) = json(&["slp", "x1^2", "x2^2", "x3^2", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["verdict"], "SLP_certified");
    assert_eq!(v["header"]["seed"], 7);

    let o = run(&["slp", "x1^2", "x2^2", "-z", "x1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("failing ×z^2: A_0→A_2 rank 0 (expected 1)"));
    let (_, v) = json(&["slp", "x1^2", "x2^2", "-z", "x1"]);
    let failing = v["report"]["failing_maps"].as_array().unwrap();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0]["power"], 2);
    assert_eq!(failing[0]["rank"], 0);
}

#[test]
fn slp_rejects_nonlinear_element() {
    let o = run(&["slp", "x1^2", "x2^2", "-z", "x1*x2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a linear form"));
}

#[test]
fn csm_and_colon() {
    let (code, v) = json(&["csm", "x1^2", "x2^3", "-z", "x1+x2"]);
    assert_eq!(code, 0);
    assert_eq!(v["s"], 2);
    assert_eq!(v["telescopes"], true);
    assert_eq!(v["last_csm_check"], true);
    let (code, v) = json(&["colon", "x1^2", "x2^3", "-f", "x1*x2"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([0, 1, 2, 1]));
}

#[test]
fn errors_and_usage() {
    let o = run(&["hilbert", "x1^2", "x1*x2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not Artinian"));
    assert_eq!(run(&["hilbert", "x1^"]).status.code(), Some(2));
    assert_eq!(run(&["hilbert", "x1^2", "--vars", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["hilbert", "x1", "--field", "fp:4"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn thm31_gate() {
    let (code, v) = json(&["verify-thm31", "--degrees", "1,1", "--matrix", "1,1;1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "rejected");
    assert_eq!(v["gate"], "all-principal");

    let (code, v) = json(&["verify-thm31", "--degrees", "1,1", "--matrix", "1,1;1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["hilbert_function"], serde_json::json!([1, 2, 1]));

    // passes the leading minors although x1(x1+x2) and x2*x1 share x1
    let (code, v) = json(&["verify-thm31", "--degrees", "1,1", "--matrix", "1,1;1,0", "--leading-minors-only"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "rejected");
    assert_eq!(v["gate_passed"], true);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn thm41_from_file_and_multiplicities() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.json");
    std::fs::write(
        &path,
        r#"{"n": 3, "field": "Q", "generators": [
            {"factors": [{"coeffs": [1,0,0], "power": 2}]},
            {"factors": [{"coeffs": [0,1,0], "power": 2}]},
            {"factors": [{"coeffs": [0,0,1], "power": 2}]}]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = json(&["verify-thm41", "-i", p]);
    assert_eq!(code, 0);
    assert_eq!(v["hilbert_function"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(v["jordan_type"], serde_json::json!([4, 2, 2]));

    let (code, v) = json(&["hilbert", "-i", p]);
    assert_eq!(code, 0);
    assert_eq!(v["instance"]["generators"].as_array().unwrap().len(), 3);

    let (code, v) = json(&["verify-thm41", "--multiplicities", "1,1;2"]);
    assert_eq!(code, 0);
    assert_eq!(v["hilbert_function"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["instance"]["multiplicities"], serde_json::json!([[1, 1], [2]]));
}

#[test]
fn suites_are_byte_stable() {
    let args = ["suite", "thm31", "--count", "6", "--seed", "11", "--coeff-range", "50"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains(" ms]"));
    let t = run(&[&args[..], &["--timing"]].concat());
    assert!(stdout(&t).contains(" ms]"));
}

#[test]
fn suite_csv_and_json() {
    let o = run(&["suite", "jordan-bound", "--count", "5", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let header = reader.headers().unwrap().clone();
    assert_eq!(&header[0], "index");
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.len() == header.len()));

    let (code, v) = json(&["suite", "csm", "--count", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["instances"].as_array().unwrap().len(), 4);
    assert_eq!(v["summary"]["pass"], 4);
}
