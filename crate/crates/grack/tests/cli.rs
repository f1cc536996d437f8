//! End-to-end tests of the `grack` binary: exit codes, golden outputs, and
//! JSON schema stability.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn grack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grack"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("grack-cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn check_valid_algebra_exits_zero() {
    let out = grack(&["check", "--algebra", "data/heap_z3.gr"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(stdout(&out).contains("valid groupoid-rack"));
}

#[test]
fn check_corrupted_algebra_exits_one_with_witness() {
    let text =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/heap_z2.gr"))
            .unwrap();
    // flip the last op entry (3 -> 0)
    let corrupted = {
        let mut t = text.trim_end().to_string();
        assert!(t.ends_with('3'));
        t.pop();
        t.push('0');
        t.push('\n');
        t
    };
    let path = scratch("corrupted.gr");
    std::fs::write(&path, corrupted).unwrap();
    let out = grack(&["check", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("INVALID"));
    assert!(text.contains("at ["), "violation witness missing: {text}");
}

#[test]
fn check_runs_seeded_mutations() {
    let out = grack(&[
        "check",
        "--algebra",
        "data/heap_z2.gr",
        "--mutations",
        "25",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(stdout(&out).contains("25 corruptions all detected"));
}

#[test]
fn color_count_prints_theta_heap_z3() {
    let out = grack(&[
        "color",
        "count",
        "--diagram",
        "data/theta.dg",
        "--algebra",
        "data/heap_z3.gr",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "27\n");
}

#[test]
fn color_count_oracle_cross_check_passes() {
    let out = grack(&[
        "color",
        "count",
        "--diagram",
        "data/theta.dg",
        "--algebra",
        "data/heap_z2.gr",
        "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "8\n");
}

#[test]
fn color_count_json_schema_is_stable() {
    let out = grack(&[
        "color",
        "count",
        "--diagram",
        "data/theta.dg",
        "--algebra",
        "data/heap_z3.gr",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    keys.sort_unstable();
    assert_eq!(keys, vec!["algebra", "count", "diagram", "elapsed_ms"]);
    assert_eq!(obj["count"], "27");
    assert!(obj["elapsed_ms"].is_u64());
}

#[test]
fn check_json_schema_is_stable() {
    let out = grack(&["check", "--algebra", "data/dihedral3.rack", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        vec![
            "algebra",
            "kind",
            "mutations_run",
            "mutations_undetected",
            "valid",
            "violations"
        ]
    );
    assert_eq!(obj["kind"], "rack");
    assert_eq!(obj["valid"], true);
}

#[test]
fn color_enum_respects_limit_and_order() {
    let out = grack(&[
        "color",
        "enum",
        "--diagram",
        "data/free_loop.dg",
        "--algebra",
        "data/heap_z2.gr",
        "--limit",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "a0=0\na0=1\na0=2\n");
}

#[test]
fn build_heap_round_trips_through_check() {
    let path = scratch("heap_z3_built.gr");
    let out = grack(&[
        "build",
        "heap",
        "--group",
        "data/z3.group",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let built = std::fs::read_to_string(&path).unwrap();
    let reference =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/heap_z3.gr"))
            .unwrap();
    assert_eq!(built, reference);
    let out = grack(&["check", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn build_mgr_augmented_universal_and_rack_square() {
    for (args, name) in [
        (vec!["build", "mgr", "--spec", "data/s3_conj.mgr"], "mgr"),
        (
            vec![
                "build",
                "augmented",
                "--spec",
                "data/s3_conj.aug",
                "--n",
                "1",
                "--delta",
                "0",
            ],
            "augmented",
        ),
        (
            vec!["build", "universal", "--spec", "data/heap_z2.univ"],
            "universal",
        ),
        (
            vec!["build", "rack-square", "--rack", "data/dihedral3.rack"],
            "rack-square",
        ),
    ] {
        let out = grack(&args);
        assert_eq!(out.status.code(), Some(0), "{name}: {out:?}");
        assert!(stdout(&out).starts_with("groupoid-rack v1\n"), "{name}");
    }
}

#[test]
fn universal_build_of_heap_data_reproduces_heap() {
    let out = grack(&["build", "universal", "--spec", "data/heap_z2.univ"]);
    assert_eq!(out.status.code(), Some(0));
    let reference =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/heap_z2.gr"))
            .unwrap();
    assert_eq!(stdout(&out), reference);
}

#[test]
fn move_apply_golden_output() {
    let out = grack(&[
        "move",
        "apply",
        "--diagram",
        "data/theta_loop.dg",
        "--site",
        "r2+ forward 3 0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "diagram v1\narcs 6\nloop 3\nx+ 3 0 4\nx- 3 4 5\nvm 5 1 2\nvs 2 0 1\n"
    );
}

#[test]
fn move_apply_pattern_mismatch_exits_one() {
    let out = grack(&[
        "move",
        "apply",
        "--diagram",
        "data/theta.dg",
        "--site",
        "inv forward 0",
    ]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
}

#[test]
fn invariance_suite_passes_on_bundled_corpus() {
    let out = grack(&["invariance", "--algebra", "data/heap_z2.gr"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    assert_eq!(text.matches("PASS").count(), 14);
    assert_eq!(text.matches("FAIL").count(), 0);
}

#[test]
fn invariance_respects_corpus_env_override() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let out = Command::new(env!("CARGO_BIN_EXE_grack"))
        .args(["invariance", "--algebra", "data/heap_z2.gr", "--json"])
        .env("GRACK_CORPUS", &corpus)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 14);
}

#[test]
fn missing_file_exits_two() {
    let out = grack(&["check", "--algebra", "no_such_file.gr"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn malformed_algebra_exits_two() {
    let path = scratch("malformed.gr");
    std::fs::write(&path, "rack v1\nsize 2\nop\n0 1\n").unwrap();
    let out = grack(&["check", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn usage_error_exits_two() {
    let out = grack(&["color", "count", "--diagram", "data/theta.dg"]);
    assert_eq!(out.status.code(), Some(2));
}
