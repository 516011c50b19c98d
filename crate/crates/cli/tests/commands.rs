use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use plabic_cli::{check_report, to_json_string, DEFAULT_CUT_LIMIT};
use plabic_core::samples::symmetric_3_9;
use plabic_core::{Collection, KSubset, Quiver, QuiverJson};
use serde_json::Value;

fn plabic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plabic")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_collection(dir: &Path, name: &str, c: &Collection) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, to_json_string(&c.to_json())).unwrap();
    path
}

fn fig(dir: &Path) -> String {
    write_collection(dir, "fig.json", &symmetric_3_9()).to_str().unwrap().to_string()
}

#[test]
fn check_symmetric_collection() {
    let dir = tempfile::tempdir().unwrap();
    let o = plabic(&["check", &fig(dir.path())]);
    assert!(o.status.success());
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["report"]["selfInjective"], true);
    assert_eq!(r["symmetric"], true);
    assert_eq!(r["nakayamaOrder"], 3);
    assert_eq!(r["cuts"]["enoughCuts"], true);
    assert!(r["cuts"]["homogeneous"].as_u64().unwrap() >= 1);
}

#[test]
fn check_output_matches_library_serialization() {
    let dir = tempfile::tempdir().unwrap();
    let o = plabic(&["check", &fig(dir.path())]);
    let expected = to_json_string(&check_report(&symmetric_3_9(), None, DEFAULT_CUT_LIMIT).unwrap());
    assert_eq!(stdout(&o), expected);
}

#[test]
fn check_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let o = plabic(&["check", &fig(dir.path()), "--format", "text"]);
    let text = stdout(&o);
    assert!(text.contains("self-injective: true"));
    assert!(text.contains("nakayama order: 3"));
}

#[test]
fn mutate_then_check_asymmetric() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = plabic(&["mutate", &fig(dir.path()), "134", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = plabic_cli::read_collection(&out).unwrap();
    assert!(m.contains(&KSubset::new(9, [2, 4, 5]).unwrap()));
    let o = plabic(&["check", out.to_str().unwrap()]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["report"]["selfInjective"], false);
    assert_eq!(r["symmetric"], false);
    assert_eq!(r["nakayamaOrder"], Value::Null);
}

#[test]
fn orbit_mutation_keeps_symmetry() {
    let dir = tempfile::tempdir().unwrap();
    let o = plabic(&["mutate", &fig(dir.path()), "134", "--orbit-only"]);
    assert!(o.status.success());
    let m = plabic_cli::parse_collection(&stdout(&o)).unwrap();
    assert!(m.is_symmetric() && m.is_maximal());
}

#[test]
fn precondition_failures_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = fig(dir.path());
    let o = plabic(&["mutate", &f, "147"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not mutable"));
    let m = write_collection(
        dir.path(),
        "m.json",
        &plabic_core::mutation::geometric_exchange(&symmetric_3_9(), &KSubset::parse(9, "134").unwrap()).unwrap(),
    );
    assert_eq!(plabic(&["mutate", m.to_str().unwrap(), "245", "--orbit-only"]).status.code(), Some(3));
}

#[test]
fn invalid_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"k\":3,").unwrap();
    let o = plabic(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());

    let crossing = dir.path().join("crossing.json");
    std::fs::write(&crossing, r#"{"k":2,"n":4,"labels":[[1,2],[2,3],[3,4],[1,4],[1,3],[2,4]]}"#).unwrap();
    let o = plabic(&["check", crossing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not weakly separated"));

    assert_eq!(plabic(&["check", dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn unsupported_family_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = plabic(&["family", "cobweb+", "4", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(plabic(&["family", "sporadic", "3-9", "--out", dir.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn family_cobweb_minus_5() {
    let dir = tempfile::tempdir().unwrap();
    let o = plabic(&["family", "cobweb-", "5", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let quiver: QuiverJson =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("cobweb-minus-5.quiver.json")).unwrap()).unwrap();
    assert_eq!(Quiver::from_json(&quiver).unwrap().vertex_count(), 15);
    let c = plabic_cli::read_collection(&dir.path().join("cobweb-minus-5.collection.json")).unwrap();
    assert_eq!((c.k(), c.n()), (6, 10));
    assert!(c.is_symmetric());
    let r: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("cobweb-minus-5.report.json")).unwrap()).unwrap();
    assert_eq!(r["selfInjective"], true);
    assert_eq!(r["collection"]["report"]["selfInjective"], true);
}

#[test]
fn family_grid_2_and_sporadic_6_21() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert!(plabic(&["family", "grid", "2", "--out", out]).status.success());
    let q: QuiverJson =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("grid-2.quiver.json")).unwrap()).unwrap();
    assert_eq!(q.vertices.len(), 1);
    assert!(plabic(&["family", "sporadic", "6-21", "--out", out]).status.success());
    let q: QuiverJson =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sporadic-6-21.quiver.json")).unwrap()).unwrap();
    assert_eq!(q.vertices.len(), 70);
}

#[test]
fn cuts_include_the_four_arrow_cut() {
    let dir = tempfile::tempdir().unwrap();
    let o = plabic(&["cuts", &fig(dir.path())]);
    assert!(o.status.success());
    let list: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut want: Vec<[&str; 2]> = vec![["457", "145"], ["457", "467"], ["147", "178"], ["147", "124"]];
    want.sort();
    let found = list["cuts"].as_array().unwrap().iter().find(|c| {
        let mut labels: Vec<[&str; 2]> =
            c["labels"].as_array().unwrap().iter().map(|p| [p[0].as_str().unwrap(), p[1].as_str().unwrap()]).collect();
        labels.sort();
        labels == want
    });
    assert_eq!(found.unwrap()["homogeneous"], false);
    assert_eq!(list["count"].as_u64().unwrap() as usize, list["cuts"].as_array().unwrap().len());
    let capped = plabic(&["cuts", &fig(dir.path()), "--max-solutions", "2"]);
    let capped: Value = serde_json::from_str(&stdout(&capped)).unwrap();
    assert_eq!(capped["count"], 2);
    assert_eq!(capped["truncated"], true);
}

#[test]
fn exports_agree_with_json() {
    let dir = tempfile::tempdir().unwrap();
    let f = fig(dir.path());
    let json: QuiverJson = serde_json::from_str(&stdout(&plabic(&["export", &f, "json"]))).unwrap();
    let tikz = stdout(&plabic(&["export", &f, "tikz"]));
    let dot = stdout(&plabic(&["export", &f, "dot"]));
    assert_eq!(tikz.matches("\\node").count(), json.vertices.len());
    assert_eq!(tikz.matches("\\draw").count(), json.arrows.len());
    assert_eq!(dot.matches("->").count(), json.arrows.len());
    let q = Quiver::from_json(&json).unwrap();
    assert_eq!((q.vertex_count(), q.arrows.len(), q.faces.len()), (19, 36, json.faces.unwrap().len()));
    let out = dir.path().join("q.tex");
    assert!(plabic(&["export", &f, "tikz", "--out", out.to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read_to_string(out).unwrap(), tikz);
}

#[test]
fn search_lists_symmetric_collections() {
    let o = plabic(&["search", "2", "6"]);
    assert!(o.status.success());
    let found: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!found.is_empty());
    for c in &found {
        let c = plabic_cli::parse_collection(&c.to_string()).unwrap();
        assert!(c.is_symmetric() && c.is_maximal());
    }
    let one: Vec<Value> =
        serde_json::from_str(&stdout(&plabic(&["search", "3", "9", "--max-solutions", "1"]))).unwrap();
    assert_eq!(one.len(), 1);
}

#[test]
fn busy_port_exits_4() {
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let port = listener.local_addr().unwrap().port().to_string();
    let o = plabic(&["serve", "--port", &port]);
    assert_eq!(o.status.code(), Some(4));
}
