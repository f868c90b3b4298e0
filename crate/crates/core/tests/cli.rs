use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_mirrortoric"));
    c.env_remove("MIRRORTORIC_SEED");
    c
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(c: &mut Command) -> (i32, Value, String) {
    let Output { status, stdout, stderr } = c.output().expect("binary runs");
    let text = String::from_utf8(stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or(Value::String(text));
    (status.code().unwrap(), json, String::from_utf8(stderr).unwrap())
}

#[test]
fn verify_weighted_suite_passes() {
    let (code, report, _) = run(bin().args(["verify", "--suite", "p11222", "--samples", "20"]));
    assert_eq!(code, 0);
    assert_eq!(report["suite"], "p11222");
    assert_eq!(report["failed"], 0);
    assert_eq!(report["passed"], 10);
}

#[test]
fn verify_quartic_suite_reports_the_literal_fan_failure() {
    let (code, report, _) = run(bin().args(["verify", "--suite", "p24", "--seed", "7", "--samples", "10"]));
    assert_eq!(code, 1);
    assert!(report["passed"].as_u64().unwrap() >= 12);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["nef-part-faces", "refined-fan-map"]);
    let complete = report["checks"].as_array().unwrap().iter().find(|c| c["id"] == "refined-fan-map-complete").unwrap();
    assert_eq!(complete["passed"], true);
}

#[test]
fn text_format_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let (code, _, _) = run(bin().args(["verify", "--suite", "p11222", "--samples", "5", "--format", "text", "--out"]).arg(&out));
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("suite p11222"));
    assert_eq!(text.matches("PASS").count(), 10);
}

#[test]
fn environment_seed_overrides_flag() {
    let (code, report, _) =
        run(bin().env("MIRRORTORIC_SEED", "11").args(["verify", "--suite", "p11222", "--seed", "3", "--samples", "5"]));
    assert_eq!(code, 0);
    assert_eq!(report["seed"], 11);
    let (code, _, err) = run(bin().env("MIRRORTORIC_SEED", "eleven").args(["verify", "--suite", "p11222"]));
    assert_eq!(code, 2);
    assert!(err.contains("MIRRORTORIC_SEED"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(bin().args(["verify", "--suite", "p25"])).0, 2);
    assert_eq!(run(bin().args(["verify", "--bogus"])).0, 2);
    assert_eq!(run(bin().args(["frobnicate"])).0, 2);
    assert_eq!(run(bin().args(["render", "--face", "nope", "--out", "/dev/null"])).0, 2);
    assert_eq!(run(bin().args(["polytope", "--op", "dual", "--input", "/nonexistent.json"])).0, 2);
}

#[test]
fn malformed_polytope_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dim\": 2, \"vertices\": [[1, 0], [0]]}").unwrap();
    let (code, _, err) = run(bin().args(["polytope", "--op", "points", "--input"]).arg(&bad));
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(run(bin().args(["polytope", "--op", "points", "--input"]).arg(&bad)).0, 2);
}

#[test]
fn polytope_queries_on_shipped_fixtures() {
    let (code, dual, _) = run(bin().args(["polytope", "--op", "dual", "--input"]).arg(fixture("degenerate_grassmann_p24.json")));
    assert_eq!(code, 0);
    let verts: Value = serde_json::from_str(
        "[[-1,-1,-1,-1],[-1,-1,3,-1],[-1,3,-1,-1],[-1,3,-1,3],[3,-1,-1,-1],[3,-1,-1,3]]",
    )
    .unwrap();
    assert_eq!(dual["vertices"], verts);

    let (_, faces, _) = run(bin().args(["polytope", "--op", "faces", "--dim", "2", "--input"]).arg(fixture("big_polytope_p24.json")));
    assert_eq!(faces.as_array().unwrap().len(), 50);

    let (_, pts, _) = run(bin().args(["polytope", "--op", "points", "--input"]).arg(fixture("segment_l.json")));
    assert_eq!(pts.as_array().unwrap().len(), 5);
}

#[test]
fn fan_over_faces_and_roundtrip() {
    let (code, fan, _) = run(bin().args(["fan", "--over-faces", "--input"]).arg(fixture("polytope_p11222.json")));
    assert_eq!(code, 0);
    assert_eq!(fan["cones"].as_array().unwrap().len(), 5);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fan.json");
    std::fs::write(&path, fan.to_string()).unwrap();
    let (code, again, _) = run(bin().args(["fan", "--input"]).arg(&path));
    assert_eq!(code, 0);
    assert_eq!(again, fan);
    let (_, rays, _) = run(bin().args(["fan", "--dim", "1", "--input"]).arg(&path));
    assert_eq!(rays["cones"].as_array().unwrap().len(), 5);
}

#[test]
fn overlapping_cones_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"dim": 2, "cones": [{"rays": [[1, 0], [0, 1]]}, {"rays": [[0, 1]], "lineality": [[1, 0]]}]}"#).unwrap();
    let (code, _, err) = run(bin().args(["fan", "--input"]).arg(&path));
    assert_eq!(code, 2);
    assert!(err.contains("common face"));
}

#[test]
fn render_face_a() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.svg");
    let (code, _, _) = run(bin().args(["render", "--suite", "p11222", "--face", "A", "--out"]).arg(&out));
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(out).unwrap();
    let cells = mirrortoric::render::cells_from_svg(&svg).unwrap();
    assert_eq!(cells.len(), 4);
    let mut sizes: Vec<usize> = cells.iter().map(Vec::len).collect();
    sizes.sort();
    assert_eq!(sizes, [3, 7, 7, 7]);
}
