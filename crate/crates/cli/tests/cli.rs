use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use gph_core::graph::GraphMorphism;
use gph_core::model::source_inclusion;

fn gph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gph"))
        .args(args)
        .env_remove("GPH_SEARCH_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_graph(dir: &Path, name: &str) -> PathBuf {
    let path = dir.join(format!("{}.json", name.replace(':', "_")));
    std::fs::write(&path, gph_core::named::by_name(name).unwrap().to_json_string()).unwrap();
    path
}

fn write_morphism(dir: &Path, name: &str, f: &GraphMorphism) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, f.to_json_value().to_string()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cross_and_uc4_files_are_equivalent() {
    let dir = tempfile::tempdir().unwrap();
    let cross = write_graph(dir.path(), "cross");
    let uc4 = write_graph(dir.path(), "uc4");
    let out = gph(&["homotopy-eq", s(&cross), s(&uc4)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches("1 - 4*u^2").count(), 2, "{text}");
}

#[test]
fn inequivalent_graphs_exit_one() {
    let out = gph(&["homotopy-eq", "cross", "figure-eight"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("not homotopy equivalent"));
}

#[test]
fn census_of_cross() {
    let dir = tempfile::tempdir().unwrap();
    let cross = write_graph(dir.path(), "cross");
    let out = gph(&["census", s(&cross), "--upto", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let counts: Vec<String> =
        stdout(&out).lines().skip(1).map(|l| l.split_whitespace().nth(1).unwrap().to_string()).collect();
    assert_eq!(counts, ["0", "8", "0", "32", "0", "128"]);
}

#[test]
fn charpoly_of_empty_graph_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_graph(dir.path(), "empty");
    let out = gph(&["charpoly", s(&empty)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("1"));
}

#[test]
fn json_output_parses() {
    let out = gph(&["--json", "witt", "figure-eight", "--upto", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["upto"], 5);
    assert_eq!(v["witt"].to_string(), "[2,1,2,3,6]");
}

#[test]
fn malformed_input_exits_two_without_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"nodes": ["a"], "arcs": [], "colour": 1}"#).unwrap();
    for args in [
        vec!["charpoly", s(&bad)],
        vec!["charpoly", "no/such/file.json"],
        vec!["zeta", "not-a-graph"],
        vec!["witt", "--ghost", "1,2,3"],
    ] {
        let out = gph(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
}

#[test]
fn exhausted_budget_exits_three() {
    let out = gph(&["--budget", "1", "explore", "--nodes", "3", "--arcs", "4", "--family", "all"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_gph"))
        .args(["explore", "--nodes", "3", "--arcs", "4", "--family", "all"])
        .env("GPH_SEARCH_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn lift_and_no_lift() {
    let dir = tempfile::tempdir().unwrap();
    let sf = source_inclusion();
    let (d, a) = (Arc::clone(sf.source()), Arc::clone(sf.target()));
    let s_path = write_morphism(dir.path(), "s", &sf);
    let id_a = write_morphism(dir.path(), "id_a", &GraphMorphism::identity(&a));
    let id_d = write_morphism(dir.path(), "id_d", &GraphMorphism::identity(&d));

    let out = gph(&["lift", s(&s_path), s(&id_a), s(&s_path), s(&id_a)]);
    assert_eq!(out.status.code(), Some(0));
    let lift = GraphMorphism::from_json_str(&stdout(&out)).unwrap();
    assert!(lift.is_isomorphism());

    // a retraction of the arrow onto its source would have to drop the arc
    let out = gph(&["lift", s(&s_path), s(&s_path), s(&id_d), s(&id_a)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "NO-LIFT\n");

    // a square that does not commute is an input error
    let out = gph(&["lift", s(&s_path), s(&id_a), s(&id_a), s(&id_a)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_generator() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_morphism(dir.path(), "s", &source_inclusion());
    let out = gph(&["--json", "classify", s(&path)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["whiskering"], true);
    assert_eq!(v["surjecting"], false);
}

#[test]
fn nset_and_zset_files() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("set.json");
    std::fs::write(&set, r#"{"elements": ["a", "b", "c"], "sigma": {"a": "b", "b": "c", "c": "b"}}"#).unwrap();
    let out = gph(&["--json", "nset", s(&set)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["periodic"].to_string(), r#"["b","c"]"#);
    assert_eq!(v["fibrant"], false);
    assert_eq!(v["cofibrant"], true);
    // not a bijection, so not a Z-set
    assert_eq!(gph(&["zset", s(&set)]).status.code(), Some(2));

    let map = dir.path().join("map.json");
    std::fs::write(
        &map,
        r#"{"source": {"elements": ["x"], "sigma": {"x": "x"}},
            "target": {"elements": ["y", "z"], "sigma": {"y": "z", "z": "y"}},
            "map": {"x": "y"}}"#,
    )
    .unwrap();
    assert_eq!(gph(&["zset", s(&map)]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let first = gph(&["explore", "--nodes", "3", "--arcs", "3", "--family", "all", "--out", s(&a)]);
    let second = gph(&["explore", "--nodes", "3", "--arcs", "3", "--family", "all", "--out", s(&b)]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    for args in [["cofibrant-replace", "figure-eight"], ["zeta", "cross"]] {
        assert_eq!(gph(&args).stdout, gph(&args).stdout);
    }
}
