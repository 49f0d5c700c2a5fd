// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

fn fiverank(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fiverank"))
        .args(args)
        .current_dir(dir)
        .env_remove("FIVERANK_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn construct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = fiverank(&["construct", "-t", "2/3", "-u", "-1/3", "-z", "25"], dir.path());
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("-1/5, 1/5"));
    let excluded = fiverank(&["construct", "-t", "1/2", "-u", "2", "-z", "1"], dir.path());
    assert_eq!(excluded.status.code(), Some(2));
    let unmatched = fiverank(&["construct", "-t", "2/3", "-u", "-1/3", "-z", "7"], dir.path());
    assert_eq!(unmatched.status.code(), Some(2));
    let garbage = fiverank(&["construct", "-t", "x/3", "-u", "-1/3", "-z", "7"], dir.path());
    assert_eq!(garbage.status.code(), Some(3));
    let missing = fiverank(&["construct", "-t", "2/3"], dir.path());
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn construct_json_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = fiverank(&["construct", "-t", "2/3", "-u", "-1/3", "-z", "25", "--json", "--out", "seed.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["seed", "sextic", "et", "eu", "flags", "roots", "igusa", "odd_model"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v["flags"].as_object().unwrap().values().all(|b| b == true));
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("seed.json.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["subcommand"], "construct");
    assert!(m["version"].is_string());
}

#[test]
fn classify_record_and_odd_model() {
    let dir = tempfile::tempdir().unwrap();
    fiverank(&["construct", "-t", "2/3", "-u", "-1/3", "-z", "25", "--out", "seed.json"], dir.path());
    let one = fiverank(&["classify", "seed.json"], dir.path());
    assert_eq!(one.status.code(), Some(0));
    assert!(stdout(&one).starts_with("1 curves, 1 geometric classes"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("seed.json")).unwrap()).unwrap();
    std::fs::write(dir.path().join("odd.jsonl"), format!("{}\n", v["odd_model"])).unwrap();
    std::fs::write(dir.path().join("c0.jsonl"), "[\"2576\",\"8392\",\"11729\",\"8878\",\"3641\",\"640\"]\n").unwrap();
    let two = fiverank(&["classify", "seed.json", "odd.jsonl", "c0.jsonl"], dir.path());
    assert!(stdout(&two).starts_with("3 curves, 1 geometric classes"), "{}", stdout(&two));
}

#[test]
fn classify_reports_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.jsonl"), "[\"1\",\"0\",\"0\",\"0\",\"0\",\"1\"]\n{not json\n").unwrap();
    let o = fiverank(&["classify", "bad.jsonl"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.jsonl:2"));
}

#[test]
fn search_is_deterministic_and_pipes_into_classify() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["search", "--height", "6", "--emit-curves", "--pair-order", "unordered", "--out"];
    let a = fiverank(&[&args[..], &["a.jsonl"]].concat(), dir.path());
    assert_eq!(a.status.code(), Some(0));
    let b = fiverank(&[&args[..], &["b.jsonl"]].concat(), dir.path());
    assert_eq!(b.status.code(), Some(0));
    let ra = std::fs::read(dir.path().join("a.jsonl")).unwrap();
    assert_eq!(ra, std::fs::read(dir.path().join("b.jsonl")).unwrap());
    assert!(dir.path().join("a.jsonl.manifest.json").exists());

    let text = String::from_utf8(ra).unwrap();
    let summary: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    let classes = summary["summary"]["n_geometric_classes"].as_u64().unwrap();
    let c = fiverank(&["classify", "a.jsonl"], dir.path());
    assert!(stdout(&c).contains(&format!("{classes} geometric classes")), "{}", stdout(&c));
}

#[test]
fn harvest_and_classgroup() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("c0.json"), "[\"2576\",\"8392\",\"11729\",\"8878\",\"3641\",\"640\"]\n").unwrap();
    let o = fiverank(&["harvest", "--curve", "c0.json", "--range", "-30..-1", "--cap", "10000000", "--out", "h.jsonl"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("h.jsonl")).unwrap();
    assert!(text.lines().any(|l| l.contains("\"d\":-113140") && l.contains("\"rank5\":2")));
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("h.jsonl.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["inputs"][0]["sha256"].as_str().unwrap().len(), 64);

    let g = fiverank(&["classgroup", "-D", "-23"], dir.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&g)).unwrap();
    assert_eq!(v["h"], 3);
    assert_eq!(v["rank5"], 0);
    assert_eq!(v["forms"].as_array().unwrap().len(), 3);
    assert_eq!(fiverank(&["classgroup", "-D", "-5"], dir.path()).status.code(), Some(2));
}

#[test]
fn config_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let d = fiverank(&["--dump-config"], dir.path());
    assert_eq!(d.status.code(), Some(0));
    assert!(stdout(&d).contains("height = 100"));
    std::fs::write(dir.path().join("run.toml"), "[search]\nheight = 30\n").unwrap();
    let f = fiverank(&["--config", "run.toml", "--dump-config", "search", "--height", "8"], dir.path());
    assert!(stdout(&f).contains("height = 8"));
    let f = fiverank(&["--config", "run.toml", "--dump-config"], dir.path());
    assert!(stdout(&f).contains("height = 30"));
    std::fs::write(dir.path().join("bad.toml"), "[search]\nhieght = 30\n").unwrap();
    let bad = fiverank(&["--config", "bad.toml", "--dump-config"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
    std::fs::write(dir.path().join("typed.toml"), "[harvest]\ncap = \"big\"\n").unwrap();
    let typed = fiverank(&["--config", "typed.toml", "--dump-config"], dir.path());
    assert_eq!(typed.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&typed.stderr).contains("harvest.cap"));
}
