use std::process::Command;

use cospec::cli::run;
use serde_json::Value;

fn cospec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("cospec").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text.trim()).unwrap()
}

#[test]
fn build_prints_graph6() {
    assert_eq!(cospec(&["build", "--family", "friendship", "--n", "1"]).1, "Bw\n");
    assert_eq!(cospec(&["build", "--family", "complete", "--n", "4"]).1, "C~\n");
    let (code, out, _) = cospec(&["build", "--family", "f16-mate"]);
    assert_eq!(code, 0);
    assert_eq!(cospec::from_graph6_str(out.trim()).unwrap(), cospec::f16_mate());
}

#[test]
fn build_rejects_bad_parameters() {
    assert_eq!(cospec(&["build", "--family", "friendship", "--n", "0"]).0, 2);
    assert_eq!(cospec(&["build", "--family", "friendship"]).0, 2);
    assert_eq!(cospec(&["build", "--family", "cycle", "--n", "2"]).0, 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cospec(&[]).0, 2);
    assert_eq!(cospec(&["frobnicate"]).0, 2);
    assert_eq!(cospec(&["spec"]).0, 2);
    let (code, out, _) = cospec(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-ds"));
}

#[test]
fn spec_json() {
    let (code, out, _) = cospec(&["spec", "--g6", "Bw"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["eigenvalues"], serde_json::json!([2.0, -1.0, -1.0]));
    assert_eq!(v["radius"], 2.0);
    assert_eq!(v["clusters"][1]["multiplicity"], 2);
}

#[test]
fn spec_reads_files_line_by_line() {
    let dir = std::env::temp_dir().join(format!("cospec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("in.g6");
    std::fs::write(&file, "Bw\n\nC~\n").unwrap();
    let (code, out, _) = cospec(&["spec", "--in", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    let radii: Vec<f64> = out.lines().map(|l| json(l)["radius"].as_f64().unwrap()).collect();
    assert_eq!(radii, [2.0, 3.0]);
    std::fs::write(&file, "Bw\nC~x\n").unwrap();
    let (code, _, err) = cospec(&["spec", "--in", file.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_graph6_reports_offset() {
    let (code, _, err) = cospec(&["charpoly", "--g6", "B\u{1}"]);
    assert_eq!(code, 2);
    assert!(err.contains("byte offset 1"), "{err}");
    let (code, _, err) = cospec(&["spec", "--g6", "C"]);
    assert_eq!(code, 2);
    assert!(err.contains("byte offset"), "{err}");
}

#[test]
fn charpoly_json_is_exact() {
    let (_, out, _) = cospec(&["charpoly", "--g6", "Bw"]);
    let v = json(&out);
    assert_eq!(v["coefficients"], serde_json::json!([-2, -3, 0, 1]));
    assert_eq!(v["polynomial"], "x^3 - 3x - 2");
    let (_, table, _) = cospec(&["charpoly", "--g6", "Bw", "--format", "table"]);
    assert_eq!(table, "Bw  x^3 - 3x - 2\n");
}

#[test]
fn cospectral_exit_codes() {
    let star = cospec::to_graph6_string(&cospec::Graph::star(4));
    let other = cospec::to_graph6_string(&cospec::Graph::cycle(4).disjoint_union(&cospec::Graph::empty(1)));
    assert_eq!(cospec(&["cospectral", "--a", &star, "--b", &other]).0, 0);
    assert_eq!(cospec(&["cospectral", "--a", &star, "--b", "DQo"]).0, 1);
    assert_eq!(cospec(&["cospectral", "--a", &star, "--b", "D"]).0, 2);
}

#[test]
fn hong_report() {
    let f4 = cospec(&["build", "--family", "friendship", "--n", "4"]).1;
    let (code, out, _) = cospec(&["hong", "--g6", f4.trim()]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["classification"], serde_json::json!({"kind": "BIDEGREED", "low": 2, "high": 8}));
    assert_eq!(v["delta"], 2);
    let mate = cospec(&["build", "--family", "f16-mate"]).1;
    let (code, _, err) = cospec(&["hong", "--g6", mate.trim()]);
    assert_eq!(code, 2);
    assert!(err.contains("connected"), "{err}");
}

#[test]
fn mates_of_the_smallest_pair() {
    let star = cospec::to_graph6_string(&cospec::Graph::star(4));
    let (code, out, _) = cospec(&["mates", "--target", &star, "--no-timing"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["mates_graph6"].as_array().unwrap().len(), 1);
    assert_eq!(v["search_space_size"], 6);
    assert!(v.get("elapsed_ms").is_none());
    let (_, out, _) = cospec(&["mates", "--target", &star, "--connected", "--no-timing"]);
    assert_eq!(json(&out)["mates_graph6"], serde_json::json!([]));
}

#[test]
fn verify_ds_is_reproducible_across_jobs() {
    let (code, one, _) = cospec(&["verify-ds", "--n", "3", "--no-timing"]);
    assert_eq!(code, 0);
    let (_, four, _) = cospec(&["verify-ds", "--n", "3", "--no-timing", "--jobs", "4"]);
    assert_eq!(one, four);
    let v = json(&one);
    assert_eq!(v["mates_graph6"], serde_json::json!([]));
    assert_eq!(v["search_space_size"], 131);
    let (_, lemma, _) = cospec(&["verify-ds", "--n", "3", "--assume-lemma", "--no-timing"]);
    let v = json(&lemma);
    assert_eq!(v["assume_lemma"], true);
    assert_eq!(v["task"]["connected_only"], true);
}

#[test]
fn verify_ds_respects_vertex_cap() {
    let (code, _, err) = cospec(&["verify-ds", "--n", "6"]);
    assert_eq!(code, 2);
    assert!(err.contains("13"), "{err}");
}

#[test]
fn prove_verdicts() {
    let f5 = cospec(&["build", "--family", "friendship", "--n", "5"]).1;
    let (code, out, _) = cospec(&["prove", "--n", "5", "--in", f5.trim()]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 12);
    let mate = cospec(&["build", "--family", "f16-mate"]).1;
    let (code, out, _) = cospec(&["prove", "--n", "16", "--g6", mate.trim(), "--format", "json"]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["final_verdict"], false);
    assert_eq!(v["steps"][1]["name"], "connected");
    assert_eq!(v["steps"][1]["verdict"], "FAIL");
    assert_eq!(v["steps"][2]["verdict"], "SKIP");
}

#[test]
fn gen_streams_classes() {
    let (code, out, _) = cospec(&["gen", "--vertices", "5", "--edges", "4", "--connected"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    let (_, out, _) = cospec(&["gen", "--vertices", "6", "--edges", "6", "--min-degree", "2"]);
    for line in out.lines() {
        assert_eq!(cospec::from_graph6_str(line).unwrap().min_degree(), 2);
    }
    // C_6 and two triangles
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cospec");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["build", "--family", "petersen"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim().len(), 9);
    assert_eq!(status(&["cospectral", "--a", "Bw", "--b", "BW"]).status.code(), Some(1));
    let bad = status(&["spec", "--g6", "\u{7f}"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("byte offset 0"));
}

#[test]
fn mates_stream_graph6_when_the_report_goes_to_a_file() {
    let dir = std::env::temp_dir().join(format!("cospec-mates-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let star = cospec::to_graph6_string(&cospec::Graph::star(4));
    let (code, out, _) = cospec(&["mates", "--target", &star, "--no-timing", "--out", report.to_str().unwrap()]);
    assert_eq!(code, 0);
    let mate = cospec::from_graph6_str(out.trim()).unwrap();
    assert!(cospec::are_cospectral(&mate, &cospec::Graph::star(4)));
    let v = json(&std::fs::read_to_string(&report).unwrap());
    assert_eq!(v["mates_graph6"][0], out.trim());
    std::fs::remove_dir_all(&dir).unwrap();
}
