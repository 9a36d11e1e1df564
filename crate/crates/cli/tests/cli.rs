//! CLI integration tests, including the determinism acceptance criterion:
//! `verify all` run repeatedly from a clean cache must produce
//! byte-identical reports.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_greenberg")
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("greenberg-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p
}

#[test]
fn criterion_10_verify_all_is_deterministic() {
    let dir = tmp_dir("determinism");
    let started = Instant::now();
    let mut reports: Vec<Vec<u8>> = Vec::new();
    // Two runs against one initially clean cache (cold then warm), plus a
    // third against a second clean cache.
    let cache1 = dir.join("cache1");
    let cache2 = dir.join("cache2");
    let runs = [
        (cache1.clone(), dir.join("r1.json")),
        (cache1, dir.join("r2.json")),
        (cache2, dir.join("r3.json")),
    ];
    for (cache, out) in &runs {
        let status = Command::new(bin())
            .args(["verify", "all", "--seed", "1"])
            .arg("--cache")
            .arg(cache)
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success(), "verify all failed");
        reports.push(std::fs::read(out).unwrap());
    }
    assert_eq!(reports[0], reports[1], "warm-cache report differs");
    assert_eq!(reports[0], reports[2], "clean-cache report differs");
    let elapsed = started.elapsed();
    println!(
        "criterion 10 [PASS] byte-identical verify reports across 3 runs in {elapsed:.2?} (budget 20 min for the full suite)"
    );
    assert!(elapsed < Duration::from_secs(1200));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn structure_polys_golden_output() {
    let dir = tmp_dir("golden");
    let base = write(
        &dir,
        "base.json",
        r#"{"case":"equal","p":3,"residue":{"modulus":[1]}}"#,
    );
    let output = Command::new(bin())
        .args(["structure-polys", "--level", "1", "--base"])
        .arg(&base)
        .arg("--cache")
        .arg(dir.join("cache"))
        .output()
        .unwrap();
    assert!(output.status.success());
    let expected = "greenberg level=1\n[add 0]\nx0 + y0\n[add 1]\nx1 + y1\n[mul 0]\nx0*y0\n[mul 1]\nx0*y1 + x1*y0\n[neg 0]\n2*x0\n[neg 1]\n2*x1\n[one]\n1;0\n[pi]\n0;1\n";
    assert_eq!(String::from_utf8(output.stdout).unwrap(), expected);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn transform_and_count_pipeline() {
    let dir = tmp_dir("pipeline");
    let scheme = write(
        &dir,
        "gm.json",
        r#"{"ring":{"level":1,"base":{"case":"mixed","p":3,"residue":{"modulus":[1]}}},
            "vars":["x","u"],
            "gens":[[{"c":[["int",1]],"e":[1,1]},{"c":[["int",1]],"e":[0,0],"sign":-1}]]}"#,
    );
    let alg = write(
        &dir,
        "f3.json",
        r#"{"kind":"field","base":{"p":3,"modulus":[1]}}"#,
    );
    let transformed = dir.join("gm_t.json");
    let status = Command::new(bin())
        .args(["transform", "--scheme"])
        .arg(&scheme)
        .arg("--cache")
        .arg(dir.join("cache"))
        .arg("--out")
        .arg(&transformed)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&transformed).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["vars"].as_array().unwrap().len(), 4);
    assert_eq!(v["gens"].as_array().unwrap().len(), 2);

    let output = Command::new(bin())
        .args(["count", "--scheme"])
        .arg(&transformed)
        .arg("--algebra")
        .arg(&alg)
        .arg("--cache")
        .arg(dir.join("cache"))
        .output()
        .unwrap();
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["count"], "6");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn change_level_report() {
    let dir = tmp_dir("change-level");
    let scheme = write(
        &dir,
        "y2mpix.json",
        r#"{"ring":{"level":1,"base":{"case":"equal","p":3,"residue":{"modulus":[1]}}},
            "vars":["x","y"],
            "gens":[[{"c":[["int",1]],"e":[0,2]},{"c":[["pi",1]],"e":[1,0],"sign":-1}]]}"#,
    );
    let output = Command::new(bin())
        .args(["change-level", "--target", "0", "--scheme"])
        .arg(&scheme)
        .arg("--cache")
        .arg(dir.join("cache"))
        .output()
        .unwrap();
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    // Level-0 reduction of y^2 - pi x is y^2; the projection sends the
    // level-0 names to the matching level-1 coordinates.
    assert_eq!(report["images"]["x"], "x_0");
    assert_eq!(report["images"]["y"], "y_0");
    assert_eq!(
        report["reduced"]["gens"][0][0]["e"],
        serde_json::json!([0, 2])
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn parse_errors_exit_with_code_two() {
    let dir = tmp_dir("errors");
    let bad = write(&dir, "bad.json", r#"{"case":"equal","p":3,"oops":1}"#);
    let output = Command::new(bin())
        .args(["structure-polys", "--level", "1", "--base"])
        .arg(&bad)
        .arg("--cache")
        .arg(dir.join("cache"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("error[Parse]"), "stderr was: {stderr}");

    // Malformed JSON reports line and column.
    let syntactically_bad = write(&dir, "syntax.json", "{\n  \"case\": }");
    let output = Command::new(bin())
        .args(["structure-polys", "--level", "1", "--base"])
        .arg(&syntactically_bad)
        .arg("--cache")
        .arg(dir.join("cache"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("line 2"), "stderr was: {stderr}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn wr_gr_check_exit_codes() {
    let dir = tmp_dir("wrgr");
    let scheme = write(
        &dir,
        "z.json",
        r#"{"ring":{"level":1,"base":{"case":"mixed","p":2,"residue":{"modulus":[1]},"eisenstein":[0,-2]}},
            "vars":["x"],
            "gens":[[{"c":[["int",1]],"e":[2]},{"c":[["pi",1]],"e":[1],"sign":-1}]]}"#,
    );
    let ext = write(
        &dir,
        "ext.json",
        r#"{"type":"mixed","p":2,"residue_top":{"modulus":[1]},"eisenstein":[0,-2],"n":1}"#,
    );
    let alg = write(
        &dir,
        "f2.json",
        r#"{"kind":"field","base":{"p":2,"modulus":[1]}}"#,
    );
    let output = Command::new(bin())
        .args(["wr-gr-check", "--scheme"])
        .arg(&scheme)
        .arg("--extension")
        .arg(&ext)
        .arg("--algebra")
        .arg(&alg)
        .arg("--cache")
        .arg(dir.join("cache"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["cells"][0]["lhs"], "2");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn weil_restrict_and_check_commands() {
    let dir = tmp_dir("weil-check");
    let scheme = write(
        &dir,
        "xympi.json",
        r#"{"ring":{"level":1,"base":{"case":"mixed","p":2,"residue":{"modulus":[1]}}},
            "vars":["x","y"],
            "gens":[[{"c":[["int",1]],"e":[1,1]},{"c":[["pi",1]],"e":[0,0],"sign":-1}]]}"#,
    );
    let alg = write(
        &dir,
        "f2.json",
        r#"{"kind":"field","base":{"p":2,"modulus":[1]}}"#,
    );
    // The non-smooth witness at level step (0, 1): exit code 1 and the
    // reported point (0, 0).
    let output = Command::new(bin())
        .args(["check", "surjective", "--target", "0", "--scheme"])
        .arg(&scheme)
        .arg("--algebra")
        .arg(&alg)
        .arg("--cache")
        .arg(dir.join("cache"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["unlifted_witnesses"], serde_json::json!(["(0 | 0)"]));
    assert_eq!(report["images_well_defined"], true);

    let ext = write(
        &dir,
        "ext.json",
        r#"{"type":"equal","p":2,"residue":{"modulus":[1]},"base_level":0,"e":2}"#,
    );
    let eq_scheme = write(
        &dir,
        "gm_eq.json",
        r#"{"ring":{"level":1,"base":{"case":"equal","p":2,"residue":{"modulus":[1]}}},
            "vars":["x","u"],
            "gens":[[{"c":[["int",1]],"e":[1,1]},{"c":[["int",1]],"e":[0,0],"sign":-1}]]}"#,
    );
    let output = Command::new(bin())
        .args(["weil-restrict", "--scheme"])
        .arg(&eq_scheme)
        .arg("--extension")
        .arg(&ext)
        .arg("--cache")
        .arg(dir.join("cache"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(report["rank"], 2);
    assert_eq!(report["gamma"], 1);
    assert_eq!(
        report["restriction"]["vars"],
        serde_json::json!(["x_0", "x_1", "u_0", "u_1"])
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn cache_env_variable_is_honored() {
    let dir = tmp_dir("env-cache");
    let base = write(
        &dir,
        "base.json",
        r#"{"case":"mixed","p":2,"residue":{"modulus":[1]}}"#,
    );
    let cache_dir = dir.join("env-cache-dir");
    let status = Command::new(bin())
        .args(["structure-polys", "--level", "1", "--base"])
        .arg(&base)
        .env("GREENBERG_CACHE", &cache_dir)
        .stdout(std::process::Stdio::null())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(cache_dir.join("witt_p2_n2.txt").exists());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_single_suite_smoke() {
    let dir = tmp_dir("verify-witt");
    let out = dir.join("witt.json");
    let status = Command::new(bin())
        .args(["verify", "witt"])
        .arg("--cache")
        .arg(dir.join("cache"))
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
    let _ = std::fs::remove_dir_all(&dir);
}
