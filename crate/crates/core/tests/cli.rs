use std::process::{Command, Output};

fn plrs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plrs")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = plrs(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    plrs(args).status.code().unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).unwrap()
}

#[test]
fn seq_examples() {
    assert!(stdout(&["seq", "--coeffs", "1,1", "--n", "10"]).ends_with("\n10,89\n"));
    assert!(stdout(&["seq", "--coeffs", "2,3,1", "--n", "5"]).ends_with("\n5,93\n"));
    let out = plrs(&["seq", "--coeffs", "0,1", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NonPositiveLeading"));
}

#[test]
fn decompose_examples() {
    let out = stdout(&["decompose", "--coeffs", "1,1", "100"]);
    assert!(out.contains("decomposition: 89+8+3"));
    assert!(out.contains("summands: 3") && out.contains("gaps: 1,4"));
    assert!(stdout(&["decompose", "--coeffs", "2,3,1", "184"]).contains("G5+2·G4+3·G3+G1"));
    let zero = json(&["decompose", "--coeffs", "1,1", "0"]);
    assert_eq!(zero["result"]["summands"], 0);
    assert_eq!(zero["result"]["decomposition"]["entries"], serde_json::json!([]));
    let big = json(&["decompose", "--coeffs", "2,3,1", "123456789012345678901234567890"]);
    assert_eq!(big["result"]["legal"], true);
    assert_eq!(big["meta"]["config"]["method"], "general");
}

#[test]
fn dist_examples() {
    let out = stdout(&["dist", "--coeffs", "1,1", "--upto-index", "5", "--format", "csv"]);
    assert!(out.ends_with("count,freq\n0,1\n1,4\n2,3\n"), "{out}");
    let big = json(&["dist", "--coeffs", "1,1", "--upto-index", "200"]);
    assert!(big["result"]["summary"]["ks"].as_f64().unwrap() < 0.05);
    let ce = json(&["dist", "--coeffs", "1,1", "--counterexample-n", "16"]);
    assert_eq!(ce["result"]["summary"]["bimodal"], true);
    assert_eq!(exit_code(&["dist", "--coeffs", "1,1"]), 2);
    assert_eq!(
        exit_code(&["dist", "--coeffs", "1,1", "--lo", "5", "--len", "100", "--mode", "exhaustive", "--budget", "99"]),
        3
    );
}

#[test]
fn subinterval_examples() {
    let r = json(&[
        "subinterval",
        "--coeffs",
        "1,1",
        "--n",
        "45",
        "--alpha",
        "25",
        "--q",
        "8",
        "--samples",
        "200",
        "--seed",
        "7",
    ]);
    let agg = &r["result"]["aggregate"];
    assert!(agg["passing"].as_u64().unwrap() > 0);
    assert!(agg["median_ks"].as_f64().is_some());
    assert_eq!(agg["shift_bound_violations"], 0);
    for rep in r["result"]["reports"].as_array().unwrap() {
        if rep["zero_run_found"] == true {
            assert_eq!(rep["shift_error_ok"], true);
        }
    }
    let narrow = json(&["subinterval", "--coeffs", "1,1", "--n", "40", "--alpha", "20", "--q", "4", "--samples", "20"]);
    assert_eq!(narrow["result"]["aggregate"]["pass_fraction"], 0.0);
    assert!(narrow["result"]["aggregate"]["warning"].as_str().unwrap().starts_with("WindowTooSmall"));
    assert_eq!(exit_code(&["subinterval", "--coeffs", "1,1", "--n", "3"]), 2);
}

#[test]
fn census_examples() {
    let out = stdout(&["census", "--coeffs", "1,1", "--Z", "3", "--n", "60", "--format", "csv"]);
    let rows: Vec<f64> = out
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("n,"))
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(rows.len(), 60);
    assert!(rows[30..].windows(2).all(|w| w[1] < w[0]));
    assert!(!out.contains("e-"), "no scientific notation");
    let roots = json(&["census", "--coeffs", "1,1", "--Z", "3", "--n", "60"]);
    assert!(roots["result"]["roots"]["gap"].as_f64().unwrap() > 0.0);
    assert_eq!(exit_code(&["census", "--coeffs", "1,1", "--Z", "2"]), 2);
    let verified = stdout(&["census", "--coeffs", "3,2,1", "--Z", "4", "--n", "40", "--verify", "14"]);
    assert!(verified.contains("verified n ≤ 14 against brute force: OK"));
    assert_eq!(exit_code(&["census", "--coeffs", "3,2,1", "--Z", "4", "--n", "40", "--verify", "30"]), 3);
}

#[test]
fn output_file_and_metadata() {
    let dir = std::env::temp_dir().join(format!("plrs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("seq.json");
    let out = plrs(&[
        "seq",
        "--coeffs",
        "1,1",
        "--n",
        "5",
        "--format",
        "json",
        "--seed",
        "9",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success() && out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["meta"]["seed"], 9);
    assert_eq!(doc["meta"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["meta"]["config"]["coeffs"], "1,1");
    assert_eq!(doc["result"][4]["g"], "8");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "subinterval",
        "--coeffs",
        "2,2,1",
        "--n",
        "30",
        "--alpha",
        "15",
        "--q",
        "10",
        "--samples",
        "25",
        "--seed",
        "5",
    ];
    let one = plrs(&args).stdout;
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "4"]);
    assert_eq!(one, plrs(&args).stdout);
    assert_eq!(one, plrs(&threaded).stdout);
}
