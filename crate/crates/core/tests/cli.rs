use std::path::PathBuf;

use serde_json::Value;
use sha2::{Digest, Sha256};
use tashkinov::cli::{run, run_with_report, RunReport};
use tashkinov::format::{parse_colouring, parse_graph, read_colouring, read_graph};
use tashkinov::witness::{verify, WitnessSpec};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn call(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["tashkinov"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let code = run(&argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn report(args: &[&str]) -> (i32, RunReport) {
    let mut argv = vec!["tashkinov"];
    argv.extend_from_slice(args);
    let (code, r) = run_with_report(&argv, &mut Vec::new());
    (code, r.expect("a report"))
}

#[test]
fn rho_prints_exact_value_and_ceiling() {
    let (code, out) = call(&["rho", "--graph", &fixture("fig1.graph")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("rho = 127/7"), "{out}");
    assert!(out.contains("ceiling = 19"));
    let (code, out) = call(&[
        "rho",
        "--graph",
        &fixture("fig1.graph"),
        "--mode",
        "exact",
        "--all-witnesses",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("maximizers = 1"));
}

#[test]
fn json_report_is_versioned_and_records_digests() {
    let (code, out) = call(&["rho", "--graph", &fixture("fig3.graph"), "--report-json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "rho");
    assert_eq!(v["outcome"]["ceiling"], 29);
    let text = std::fs::read(fixture("fig3.graph")).unwrap();
    let digest: String = Sha256::digest(&text)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    assert_eq!(v["inputs"]["graph"], digest);
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn report_file_matches_stdout_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.display().to_string();
    let (code, _) = call(&["reproduce", "shannon", "--report", &p]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "reproduce shannon");
    assert_eq!(v["passed"], true);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "vertices 2\nedge 0 0\n").unwrap();
    assert_eq!(call(&["rho", "--graph", &bad.display().to_string()]).0, 2);
    assert_eq!(call(&["rho", "--graph", "/nonexistent/file"]).0, 2);
    assert_eq!(
        call(&["rho", "--graph", &fixture("fig1.graph"), "--frobnicate"]).0,
        2
    );
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&[]).0, 2);
    let (code, out) = call(&[
        "tashkinov",
        "--graph",
        &fixture("fig1.graph"),
        "--colouring",
        &fixture("fig1.col"),
        "--e0",
        "1",
        "--policy",
        "sideways",
    ]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn improper_colouring_names_the_vertex() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("p.graph");
    let col = dir.path().join("p.col");
    std::fs::write(&graph, "vertices 3\nlabel 1 hub\nedge 0 1\nedge 1 2\n").unwrap();
    std::fs::write(&col, "colours 2\nset 0 1\nset 1 1\n").unwrap();
    let (code, out) = call(&[
        "tashkinov",
        "--graph",
        &graph.display().to_string(),
        "--colouring",
        &col.display().to_string(),
        "--e0",
        "0",
    ]);
    assert_eq!(code, 2);
    assert!(out.contains("hub"), "{out}");
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(call(&["--help"]).0, 0);
    assert_eq!(call(&["--version"]).0, 0);
}

#[test]
fn tashkinov_reports_w() {
    let (code, out) = call(&[
        "tashkinov",
        "--graph",
        &fixture("fig1.graph"),
        "--colouring",
        &fixture("fig1.col"),
        "--e0",
        "0",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["w_size"], 13);
    assert_eq!(v["elementary"], true);
    assert_eq!(v["defect_parity_odd"], true);
    assert_eq!(v["defective"]["18"], 3);
}

#[test]
fn extend_all_pairs_on_the_large_example() {
    let (code, out) = call(&[
        "extend",
        "--graph",
        &fixture("fig3.graph"),
        "--colouring",
        &fixture("fig3.col"),
        "--e0",
        "0",
        "--all-pairs",
        "--json",
    ]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let pairs = v["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 18);
    for p in pairs {
        assert_eq!(p["w_plus_q_ceil"], 29);
        assert_eq!(p["w_plus_w1w2_size"], 23);
    }
    let (code, out) = call(&[
        "extend",
        "--graph",
        &fixture("fig1.graph"),
        "--colouring",
        &fixture("fig1.col"),
        "--e0",
        "0",
        "--beta",
        "9",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("beta=9"), "{out}");
}

#[test]
fn kempe_switch_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.col");
    let twice = dir.path().join("twice.col");
    let g = fixture("fig1.graph");
    let (code, out) = call(&[
        "kempe",
        "--graph",
        &g,
        "--colouring",
        &fixture("fig1.col"),
        "--pair",
        "6,7",
        "--switch",
        "0",
        "--out",
        &once.display().to_string(),
    ]);
    assert_eq!(code, 0, "{out}");
    let (code, _) = call(&[
        "kempe",
        "--graph",
        &g,
        "--colouring",
        &once.display().to_string(),
        "--pair",
        "6,7",
        "--switch",
        "0",
        "--out",
        &twice.display().to_string(),
    ]);
    assert_eq!(code, 0);
    let (graph, _) = read_graph(g.as_ref()).unwrap();
    let orig = read_colouring(fixture("fig1.col").as_ref(), &graph).unwrap();
    let switched = read_colouring(&once, &graph).unwrap();
    assert_ne!(orig, switched);
    assert_eq!(read_colouring(&twice, &graph).unwrap(), orig);
    assert_eq!(
        call(&[
            "kempe",
            "--graph",
            &g,
            "--colouring",
            &fixture("fig1.col"),
            "--pair",
            "6,6"
        ])
        .0,
        2
    );
    assert_eq!(
        call(&[
            "kempe",
            "--graph",
            &g,
            "--colouring",
            &fixture("fig1.col"),
            "--pair",
            "6,7",
            "--switch",
            "99"
        ])
        .0,
        2
    );
}

#[test]
fn explore_writes_its_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("explore.json");
    let (code, out) = call(&[
        "explore",
        "--graph",
        &fixture("fig1.graph"),
        "--colouring",
        &fixture("fig1.col"),
        "--e0",
        "0",
        "--allow-e0-shift",
        "--json",
        &path.display().to_string(),
    ]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["max_w_size"], 13);
    assert_eq!(v["extendable_found"], false);
    assert_eq!(
        v["per_state"].as_array().unwrap().len(),
        v["states_visited"].as_u64().unwrap() as usize
    );
}

#[test]
fn verify_witness_passes_and_fails() {
    let (code, out) = call(&[
        "verify-witness",
        "--graph",
        &fixture("fig1.graph"),
        "--colouring",
        &fixture("fig1.col"),
        "--spec",
        &fixture("fig1.wspec"),
    ]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = call(&[
        "verify-witness",
        "--graph",
        &fixture("fig1.graph"),
        "--colouring",
        &fixture("fig1.col"),
        "--spec",
        &fixture("fig3.wspec"),
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
}

#[test]
fn derive_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("derived");
    let (code, out) = call(&[
        "derive-fig3",
        "--graph",
        &fixture("fig1.graph"),
        "--colouring",
        &fixture("fig1.col"),
        "--out",
        &prefix.display().to_string(),
    ]);
    assert_eq!(code, 0, "{out}");
    let g = format!("{}.graph", prefix.display());
    let c = format!("{}.col", prefix.display());
    let (code, out) = call(&[
        "verify-witness",
        "--graph",
        &g,
        "--colouring",
        &c,
        "--spec",
        &fixture("fig3.wspec"),
    ]);
    assert_eq!(code, 0, "{out}");
    // The large example is not a valid input.
    let (code, _) = call(&[
        "derive-fig3",
        "--graph",
        &fixture("fig3.graph"),
        "--colouring",
        &fixture("fig3.col"),
        "--out",
        &prefix.display().to_string(),
    ]);
    assert_eq!(code, 1);
}

#[test]
fn synthesize_small_spec_and_inconclusive_budget() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("small.wspec");
    let text = "name small\ncolours 3\nvertices a b c\ndelta 2\nedges 3\n[MISSING]\na 1,3\nb 2,3\nc 3\n[E0]\nendpoints-in a,b\n";
    std::fs::write(&spec, text).unwrap();
    let prefix = dir.path().join("found");
    let (code, out) = call(&[
        "synthesize",
        "--spec",
        &spec.display().to_string(),
        "--out",
        &prefix.display().to_string(),
    ]);
    assert_eq!(code, 0, "{out}");
    let (g, labels) =
        parse_graph(&std::fs::read_to_string(format!("{}.graph", prefix.display())).unwrap())
            .unwrap();
    let c = parse_colouring(
        &std::fs::read_to_string(format!("{}.col", prefix.display())).unwrap(),
        &g,
    )
    .unwrap();
    assert!(verify(&g, &labels, &c, &WitnessSpec::parse(text).unwrap())
        .unwrap()
        .passed());

    let (code, r) = report(&[
        "synthesize",
        "--spec",
        &fixture("fig1.wspec"),
        "--budget",
        "500",
        "--out",
        &prefix.display().to_string(),
    ]);
    assert_eq!(code, 1);
    assert_eq!(r.outcome["found"], false);
    assert_eq!(r.outcome["exhausted"], false);
}

fn without_timing(mut r: RunReport) -> RunReport {
    r.timing_ms = 0;
    r
}

#[test]
fn reproduce_targets_pass_and_are_deterministic() {
    for target in ["thm2", "thm3", "thm4", "shannon"] {
        let (code, one) = report(&["reproduce", target]);
        assert_eq!(code, 0, "{target}: {:?}", one.outcome);
        let (_, again) = report(&["reproduce", target]);
        let (_, threaded) = report(&["reproduce", target, "--threads", "4"]);
        let one = without_timing(one);
        assert_eq!(one, without_timing(again), "{target}");
        assert_eq!(one, without_timing(threaded), "{target}");
    }
}
