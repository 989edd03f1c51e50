use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use phl_core::cube::PerverseHodgeCube;
use phl_core::report::CheckReport;

fn spec(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(format!("{name}.json"))
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn phl(args: &[&str], path: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phl")).args(args).arg("--spec").arg(path).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn k3_cube_matches_golden_outputs() {
    let k3 = spec("k3_b22");
    let json = stdout(&phl(&["cube"], &k3));
    assert!(json.contains(r#"{"i":0,"k":0,"d":1,"h":18}"#));
    assert_eq!(json, golden("k3_cube.json"));
    assert_eq!(stdout(&phl(&["cube", "--format", "ascii"], &k3)), golden("k3_cube.ascii"));
    assert_eq!(stdout(&phl(&["cube", "--format", "tex"], &k3)), golden("k3_cube.tex"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for name in ["k3_b22", "verbitsky_n2_b5"] {
        let a = phl(&["check"], &spec(name));
        let b = phl(&["check"], &spec(name));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        let a = phl(&["cube"], &spec(name));
        let b = phl(&["cube"], &spec(name));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn cube_json_round_trips_through_render() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["k3_b22", "verbitsky_n2_b7"] {
        let cube_path = dir.path().join(format!("{name}.cube.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_phl"))
            .args(["cube", "--spec"])
            .arg(spec(name))
            .arg("--out")
            .arg(&cube_path)
            .output()
            .unwrap();
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
        let written = std::fs::read_to_string(&cube_path).unwrap();
        let again = stdout(&phl(&["render", "--format", "json"], &cube_path));
        assert_eq!(again, written);
        let cube = PerverseHodgeCube::from_json(&written).unwrap();
        assert_eq!(cube.to_json(), written);
        // ascii from the file equals ascii straight from the model
        let ascii = stdout(&phl(&["render"], &cube_path));
        assert_eq!(ascii, stdout(&phl(&["cube", "--format", "ascii"], &spec(name))));
    }
}

#[test]
fn render_accepts_cube_alias() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "k3.json", &golden("k3_cube.json"));
    let out = Command::new(env!("CARGO_BIN_EXE_phl")).args(["render", "--cube"]).arg(&p).output().unwrap();
    assert_eq!(stdout(&out), golden("k3_cube.ascii"));
}

#[test]
fn verbitsky_n2_b5_cube() {
    let json = stdout(&phl(&["cube"], &spec("verbitsky_n2_b5")));
    let cube = PerverseHodgeCube::from_json(&json).unwrap();
    assert_eq!(cube.total(), 27);
    let ascii = stdout(&phl(&["cube", "--format", "ascii"], &spec("verbitsky_n2_b5")));
    let slices: Vec<&str> = ascii.split("\n\n").collect();
    assert_eq!(slices.len(), 5);
    for (d, (slice, width)) in slices.iter().zip([1, 3, 5, 3, 1]).enumerate() {
        let mut lines = slice.lines();
        assert_eq!(lines.next(), Some(format!("d = {d}").as_str()));
        assert_eq!(lines.count(), width, "slice {d}:\n{slice}");
    }
}

#[test]
fn empty_cube_renders_placeholder() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "empty.json", r#"{"n": 2, "entries": []}"#);
    assert_eq!(stdout(&phl(&["render"], &p)), "(empty)\n");
}

#[test]
fn malformed_input_exits_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "bad.json", "{\"kind\": \"k3\",\n \"n\": }\n");
    let out = phl(&["cube"], &p);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2 column"), "{err}");

    let out = phl(&["render"], &spec("k3_b22"));
    assert_eq!(out.status.code(), Some(2));

    let p =
        write_temp(&dir, "dup.json", r#"{"n": 1, "entries": [{"i":0,"k":0,"d":0,"h":1},{"i":0,"k":0,"d":0,"h":2}]}"#);
    assert_eq!(phl(&["render"], &p).status.code(), Some(2));

    let missing = dir.path().join("missing.json");
    assert_eq!(phl(&["model"], &missing).status.code(), Some(2));
}

#[test]
fn b2_four_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "b4.json", r#"{"kind": "verbitsky", "n": 2, "b2": 4}"#);
    for verb in ["model", "cube", "check"] {
        let out = phl(&[verb], &p);
        assert_eq!(out.status.code(), Some(3), "{verb}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("b2 = 4"));
    }
}

#[test]
fn check_passes_on_shipped_specs() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["k3_b22", "verbitsky_n2_b5", "verbitsky_n2_b7", "verbitsky_n3_b5"] {
        let report_path = dir.path().join(format!("{name}.report.json"));
        let out = Command::new(env!("CARGO_BIN_EXE_phl"))
            .args(["check", "--spec"])
            .arg(spec(name))
            .arg("--out")
            .arg(&report_path)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
        let summary = String::from_utf8(out.stdout).unwrap();
        assert!(summary.contains(", 0 failed"), "{summary}");
        let report: CheckReport = serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
        assert!(report.all_passed());
        for name in ["hodge_cross_check", "octahedral_rotations", "octahedron_support", "so6_dimension"] {
            assert!(report.get(name).is_some(), "missing {name}");
        }
    }
}

#[test]
fn check_refuses_text_formats() {
    let out = phl(&["check", "--format", "ascii"], &spec("k3_b22"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn model_summary_lists_hodge_numbers() {
    let text = stdout(&phl(&["model"], &spec("k3_b22")));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["kind"], "k3");
    assert_eq!(v["betti"], serde_json::json!([1, 0, 22, 0, 1]));
    assert!(v["hodge"].as_array().unwrap().contains(&serde_json::json!({"p": 1, "q": 1, "h": 20})));
    assert!(text.starts_with("{\n  \"kind\""));
}
