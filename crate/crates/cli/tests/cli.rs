use std::path::Path;
use std::process::{Command, Output};

use augdes_cli::report::ReportDocument;
use serde_json::Value;

fn augdes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_augdes"))
        .args(args)
        .env_remove("AUGDES_ENUM_CAP")
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = augdes(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn write_bib(dir: &Path) -> String {
    let p = dir.join("bib.txt");
    ok(&["make", "--bib-all-subsets", "5", "3", "-o", path(&p)]);
    path(&p).to_owned()
}

#[test]
fn trimmed_triples_table_row() {
    let dir = tempfile::tempdir().unwrap();
    let bib = write_bib(dir.path());
    let e1 = dir.path().join("e1.txt");
    ok(&["modify", &bib, "--delete", "1,10", "-o", path(&e1)]);
    let table = ok(&["eval", path(&e1), "--s", "1", "--format", "table"]);
    let row = table.lines().find(|l| l.starts_with("A eff")).unwrap();
    assert_eq!(
        row.split_whitespace().skip(2).collect::<Vec<_>>(),
        ["0.986", "0.997", "0.994"]
    );
}

#[test]
fn bounds_without_design() {
    let doc = json(&[
        "bounds", "--b", "10", "--v", "5", "--k", "3", "--s", "1", "--format", "json",
    ]);
    assert!((doc["bounds"]["acc"].as_f64().unwrap() - 0.4).abs() < 1e-12);
    assert!((doc["bounds"]["att"].as_f64().unwrap() - 2.72).abs() < 1e-12);
    let table = ok(&["bounds", "--b", "10", "--v", "5", "--k", "3"]);
    assert!(table.contains("Acc bound = 0.400  Att bound = 2.720"));
}

#[test]
fn lattice_and_dual_reports() {
    let dir = tempfile::tempdir().unwrap();
    let lat = dir.path().join("lattice5.txt");
    let dual = dir.path().join("dual5.txt");
    ok(&["make", "--lattice", "5", "-o", path(&lat)]);
    ok(&["dual", path(&lat), "-o", path(&dual)]);
    let doc = json(&["eval", path(&lat), "--s", "1", "--format", "json"]);
    let eff = &doc["eff"];
    for (key, want) in [("cc", 1.0), ("tt_s", 0.999), ("ct", 0.996)] {
        assert!((eff[key].as_f64().unwrap() - want).abs() <= 0.0015, "{key}");
    }
    assert_eq!(doc["class"], "HIGH");
    let doc = json(&["eval", path(&dual), "--format", "json"]);
    assert!((doc["eff"]["tt_s"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(doc["params"]["b"], 25);
}

#[test]
fn json_schema_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let bib = write_bib(dir.path());
    let text = ok(&[
        "eval",
        &bib,
        "--s-list",
        "1,2,1,1,3,1,1,1,2,1",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys = |x: &Value| {
        let mut k: Vec<String> = x.as_object().unwrap().keys().cloned().collect();
        k.sort();
        k
    };
    assert_eq!(
        keys(&v["criteria"]),
        ["a_cc", "a_ct", "a_tt", "mv_cc", "mv_ct", "mv_tt"]
    );
    assert_eq!(
        keys(&v["bounds"]),
        ["H", "L", "Ltilde", "acc", "act", "att", "f", "h"]
    );
    assert_eq!(
        keys(&v["eff"]),
        [
            "cc",
            "ct",
            "mv_cc",
            "mv_ct",
            "mv_tt",
            "tt_conservative",
            "tt_s"
        ]
    );
    for key in ["params", "class", "provenance"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(
        v["params"]["s"],
        serde_json::json!([1, 2, 1, 1, 3, 1, 1, 1, 2, 1])
    );
    let doc: ReportDocument = serde_json::from_str(&text).unwrap();
    let again: ReportDocument =
        serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(doc, again);
}

#[test]
fn verify_passes_on_example_designs() {
    let dir = tempfile::tempdir().unwrap();
    let bib = write_bib(dir.path());
    let doc = json(&["verify", &bib, "--s", "2", "--format", "json"]);
    assert_eq!(doc["pass"], true);
    assert!(doc["max_deviation"].as_f64().unwrap() < 1e-9);
}

#[test]
fn search_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for p in [&a, &b] {
        ok(&[
            "search",
            "--b",
            "6",
            "--v",
            "4",
            "--k",
            "3",
            "--weights",
            "1,2,1",
            "--seed",
            "9",
            "--restarts",
            "4",
            "-o",
            path(p),
        ]);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn search_finds_class_minimum() {
    let search = json(&[
        "search",
        "--b",
        "4",
        "--v",
        "3",
        "--k",
        "2",
        "--weights",
        "1,0,0",
        "--format",
        "json",
        "-o",
        "/dev/null",
    ]);
    let class = json(&[
        "enumerate",
        "--b",
        "4",
        "--v",
        "3",
        "--k",
        "2",
        "--minima",
        "--format",
        "json",
    ]);
    let min = class["minima"]["a_cc"]["value"].as_f64().unwrap();
    assert!((search["objective"].as_f64().unwrap() - min).abs() < 1e-9);
    assert_eq!(class["designs"], 126);
    assert_eq!(class["connected"], 51);
}

#[test]
fn auto_modify_picks_low_overlap_blocks() {
    let dir = tempfile::tempdir().unwrap();
    let bib = write_bib(dir.path());
    let text = ok(&["modify", &bib, "--auto-delete", "2"]);
    assert_eq!(text.lines().filter(|l| l.starts_with("block")).count(), 8);
    assert!(!text.contains("block 1 2 3\n"));
    assert!(!text.contains("block 1 4 5\n"));
    let text = ok(&["modify", &bib, "--auto-repeat", "1"]);
    assert_eq!(text.matches("block 1 2 3\n").count(), 2);
}

#[test]
fn partial_replication_labels() {
    let dir = tempfile::tempdir().unwrap();
    let bib = write_bib(dir.path());
    let doc = json(&["eval", "--partial-rep", &bib, "--format", "json"]);
    assert!(doc["criteria"]["a_rr"].is_number());
    assert!(doc["criteria"]["mv_rt"].is_number());
    assert!(doc["criteria"].get("a_cc").is_none());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "v 3\nblock 1 4\n").unwrap();
    assert_eq!(augdes(&["eval", path(&bad)]).status.code(), Some(1));
    assert_eq!(
        augdes(&["eval", "/nonexistent/design"]).status.code(),
        Some(1)
    );
    assert_eq!(augdes(&["frobnicate"]).status.code(), Some(1));

    let split = dir.path().join("split.txt");
    std::fs::write(&split, "v 4\nblock 1 2\nblock 3 4\nblock 1 2\n").unwrap();
    let out = augdes(&["eval", path(&split)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("disconnected"));
    assert_eq!(
        augdes(&["bounds", "--b", "2", "--v", "5", "--k", "2"])
            .status
            .code(),
        Some(2)
    );

    let bib = write_bib(dir.path());
    assert_eq!(
        augdes(&["eval", &bib, "--s-list", "1,2"]).status.code(),
        Some(1)
    );
    assert_eq!(
        augdes(&["modify", &bib, "--delete", "11"]).status.code(),
        Some(1)
    );
    assert_eq!(
        augdes(&["modify", &bib, "--delete", "1,2,3,4,5,6,7,8,9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn enumeration_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_augdes"))
        .args(["enumerate", "--b", "4", "--v", "3", "--k", "2"])
        .env("AUGDES_ENUM_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_augdes"))
        .args(["enumerate", "--b", "4", "--v", "3", "--k", "2"])
        .env("AUGDES_ENUM_CAP", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn shipped_designs_evaluate() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../designs");
    let mut n = 0;
    for entry in std::fs::read_dir(&root).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().and_then(|e| e.to_str()) != Some("design") {
            continue;
        }
        let doc = json(&["eval", path(&p), "--format", "json"]);
        assert!(
            doc["eff"]["cc"].as_f64().unwrap() <= 1.0 + 1e-9,
            "{}",
            p.display()
        );
        n += 1;
    }
    assert!(n >= 9);
}
