//! docs/formats.schema.json accepts the shipped data, the fuzz seeds and
//! freshly written reports.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn validator(def: &str) -> jsonschema::Validator {
    let mut schema: Value = serde_json::from_str(&fs::read_to_string(root().join("docs/formats.schema.json")).unwrap()).unwrap();
    let obj = schema.as_object_mut().unwrap();
    obj.remove("$id");
    obj.insert("$ref".into(), json!(format!("#/$defs/{def}")));
    jsonschema::draft202012::new(&schema).unwrap()
}

fn check(def: &str, path: &Path) {
    let v: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let errors: Vec<String> = validator(def).iter_errors(&v).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{} as {def}: {errors:?}", path.display());
}

fn dir(rel: &str) -> Vec<PathBuf> {
    let mut out: Vec<_> = fs::read_dir(root().join(rel)).unwrap().map(|e| e.unwrap().path()).collect();
    out.sort();
    out
}

#[test]
fn data_files_match() {
    for name in ["rp2.json", "empty.json", "point_c2.json"] {
        check("complex", &root().join("data").join(name));
    }
    check("matrix", &root().join("data/shear_c2.json"));
    check("registry", &root().join("data/k0_z2cube.json"));
    check("config", &root().join("data/config.json"));
}

#[test]
fn fuzz_seeds_match() {
    for (target, def) in [
        ("read_complex", "complex"),
        ("read_matrix", "matrix"),
        ("read_class", "class"),
        ("read_subcomplex", "subcomplex"),
        ("read_registry", "registry"),
        ("read_config", "config"),
        ("read_report", "report"),
    ] {
        for p in dir(&format!("fuzz/corpus/{target}")) {
            check(def, &p);
        }
    }
    for p in dir("fuzz/corpus/read_group") {
        check("group", &p);
    }
}

#[test]
fn written_reports_match() {
    let tmp = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        let report = tmp.path().join("report.json");
        let out = Command::new(env!("CARGO_BIN_EXE_cellgap"))
            .args(args)
            .arg("--report")
            .arg(&report)
            .env_remove("CELLGAP_CONFIG")
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        check("report", &report);
    };
    let data = root().join("data");
    let rp2 = data.join("rp2.json");
    let rp2 = rp2.to_str().unwrap();
    run(&["homology", "--complex", rp2]);
    run(&["silence", "--complex", rp2, "--degree", "1", "--to", "2"]);
    run(&["cohomology", "--complex", rp2, "--degree", "2", "--coefficients", "augmentation"]);
    run(&["tate", "--group-data", data.join("k0_z2cube.json").to_str().unwrap(), "--parity", "odd"]);
    let x = tmp.path().join("x.json");
    run(&[
        "realize",
        "--base",
        data.join("point_c2.json").to_str().unwrap(),
        "--idempotent",
        data.join("shear_c2.json").to_str().unwrap(),
        "--k",
        "3",
        "--l",
        "5",
        "--output",
        x.to_str().unwrap(),
    ]);
    check("complex", &x);
    let x = x.to_str().unwrap();
    run(&["dualize", "--complex", x, "--dimension", "11", "--check-degree", "3"]);
    run(&["product", "--complex", x, "--factor", "S2", "--k", "3", "--l", "5"]);
    run(&["obstruction", "--complex", x, "--degree", "3"]);
    run(&["cancel", "--complex", x, "--k", "3", "--l", "5"]);
}
