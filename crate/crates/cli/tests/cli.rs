use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};
use tempfile::TempDir;

const SPLIT_PERMUTATION: &str = r#"{"kind":"regular","G":{"n":2,"labels":["v1","v2"],"vlabel":[0,1],"edges":[[0,1]]},
"C":[["v1","v1"]],"F":[["v1","v1"],["v2","v1"]]}"#;
const NO_CROSS_EDGES: &str = r#"{"kind":"regular","G":{"n":2,"labels":["v1","v2"],"vlabel":[0,1],"edges":[[0,1]]},
"C":[],"F":[]}"#;
const STAIRCASE_3: &str = r#"{"kind":"regular","G":{"n":3,"labels":["x1","x2","x3"],"vlabel":[0,1,2],"edges":[]},
"C":[],"F":[["x1","x2"],["x2","x3"]]}"#;

fn wqo(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wqo"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn json(path: impl AsRef<Path>) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn certify_accepts_split_permutation_and_rejects_a_comparable_sequence() {
    let d = TempDir::new().unwrap();
    write(d.path(), "sp.json", SPLIT_PERMUTATION);
    write(d.path(), "flat.json", NO_CROSS_EDGES);
    let ok = wqo(d.path(), &["seq", "certify", "sp.json", "--rmax", "6", "--out", "a"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert_eq!(json(d.path().join("a/seq-certify.json"))["antichain"], true);

    let bad = wqo(d.path(), &["seq", "certify", "flat.json", "--rmax", "4", "--out", "b"]);
    assert_eq!(bad.status.code(), Some(1), "{}", stderr(&bad));
    let cx = json(d.path().join("b/counterexample.json"));
    assert_eq!(cx["antichain"], false);
    let (small, large) = (cx["pair"]["smaller"].as_u64().unwrap(), cx["pair"]["larger"].as_u64().unwrap());
    assert!(small < large);
    assert_eq!(json(d.path().join("b/manifest.json"))["exit_code"], 1);
}

#[test]
fn missing_input_exits_two() {
    let d = TempDir::new().unwrap();
    let o = wqo(d.path(), &["seq", "certify", "absent.json", "--rmax", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("absent.json"));
}

#[test]
fn parse_errors_name_the_offending_place() {
    let d = TempDir::new().unwrap();
    write(d.path(), "m.json", r#"{"size":2,"identity":0,"table":[[0,1],[1,7]]}"#);
    let o = wqo(d.path(), &["monoid", "check", "m.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("table[1][1]"), "{}", stderr(&o));

    write(d.path(), "z2.json", r#"{"size":2,"identity":0,"table":[[0,1],[1,0]]}"#);
    write(d.path(), "t.json", r#"{"labels":"elements","tree":{"l":1,"left":{}}}"#);
    let o = wqo(d.path(), &["tree", "show", "t.json", "--monoid", "z2.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("full-binary violated"), "{}", stderr(&o));
}

#[test]
fn failing_axiom_is_a_refutation() {
    let d = TempDir::new().unwrap();
    write(d.path(), "m.json", r#"{"size":2,"identity":0,"table":[[0,1],[1,0]]}"#);
    assert_eq!(wqo(d.path(), &["monoid", "check", "m.json"]).status.code(), Some(0));
    write(d.path(), "bad.json", r#"{"size":2,"identity":0,"table":[[0,1],[0,0]]}"#);
    let o = wqo(d.path(), &["monoid", "check", "bad.json"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(d.path().join("counterexample.json").exists());
}

fn digests(dir: &Path) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "manifest.json")
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), hex::encode(Sha256::digest(fs::read(&p).unwrap()))))
        .collect();
    out.sort();
    out
}

#[test]
fn corpus_is_reproducible_per_seed() {
    let d = TempDir::new().unwrap();
    for kind in ["monoid", "tree", "marked-tree", "seq"] {
        for run in ["a", "b"] {
            let out = format!("{kind}-{run}");
            let o = wqo(d.path(), &["corpus", "gen", "--kind", kind, "--count", "5", "--seed", "11", "--out", &out]);
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        }
        let a = digests(&d.path().join(format!("{kind}-a")));
        assert_eq!(a, digests(&d.path().join(format!("{kind}-b"))));
        assert!(a.len() > 5);
        let manifest = json(d.path().join(format!("{kind}-a/manifest.json")));
        for art in manifest["artifacts"].as_array().unwrap() {
            let name = art["path"].as_str().unwrap();
            let found = a.iter().find(|(n, _)| n == name).expect("artifact on disk");
            assert_eq!(art["sha256"].as_str().unwrap(), found.1);
        }
    }
    let o = wqo(d.path(), &["corpus", "gen", "--kind", "seq", "--count", "5", "--seed", "12", "--out", "other"]);
    assert_eq!(o.status.code(), Some(0));
    assert_ne!(digests(&d.path().join("seq-a")), digests(&d.path().join("other")));

    let o = wqo(d.path(), &["corpus", "gen", "--kind", "tree", "--count", "0", "--out", "empty"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(d.path().join("empty/corpus-gen.json"))["files"], serde_json::json!([]));
}

fn assert_path(g: &Value, n: usize) {
    assert_eq!(g["n"].as_u64().unwrap() as usize, n);
    let edges = g["edges"].as_array().unwrap();
    assert_eq!(edges.len(), n - 1);
    let mut deg = vec![0; n];
    for e in edges {
        deg[e[0].as_u64().unwrap() as usize] += 1;
        deg[e[1].as_u64().unwrap() as usize] += 1;
    }
    assert!(deg.iter().all(|&k| k <= 2));
    assert_eq!(deg.iter().filter(|&&k| k == 1).count(), if n == 1 { 0 } else { 2 });
}

#[test]
fn transduced_graphs_are_paths() {
    let d = TempDir::new().unwrap();
    write(d.path(), "sp.json", SPLIT_PERMUTATION);
    write(d.path(), "st.json", STAIRCASE_3);
    for n in 1..=6 {
        let out = format!("sp{n}");
        let o = wqo(d.path(), &["transduce", "path", "--seq", "sp.json", "--target", &n.to_string(), "--out", &out]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert_path(&json(d.path().join(out).join("transduce-path.json"))["graph"], n);
    }
    let o = wqo(d.path(), &["transduce", "path", "--seq", "st.json", "--target", "3", "--out", "st"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let art = json(d.path().join("st/transduce-path.json"));
    assert_eq!(art["case"], "easy");
    assert_path(&art["graph"], 3);

    let o = wqo(d.path(), &["transduce", "path", "--seq", "st.json", "--target", "4", "--out", "st4"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn periodic_sequences_are_rejected_by_transductions() {
    let d = TempDir::new().unwrap();
    write(d.path(), "p.json", r#"{"kind":"periodic","w":["v1","v2"],"C":[["v1","v2"]],"F":[["v1","v1"],["v2","v1"]]}"#);
    let o = wqo(d.path(), &["transduce", "arrows", "--seq", "p.json", "--target", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("regular"));
    let o = wqo(d.path(), &["seq", "certify", "p.json", "--rmax", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn split_round_trip_through_files() {
    let d = TempDir::new().unwrap();
    let o = wqo(d.path(), &["corpus", "gen", "--kind", "tree", "--count", "3", "--size", "25", "--seed", "3", "--out", "c"]);
    assert_eq!(o.status.code(), Some(0));
    for i in 0..3 {
        let tree = format!("c/tree-{i:04}.json");
        let monoid = format!("c/tree-{i:04}.monoid.json");
        let split = format!("split-{i}.json");
        let o = wqo(d.path(), &["split", "build", &tree, "--monoid", &monoid, "-o", &split]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let o = wqo(d.path(), &["split", "check", &tree, "--monoid", &monoid, "--split", &split]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let o = wqo(d.path(), &["split", "query", &tree, "--monoid", &monoid, "--split", &split, "--x", "0", "--y", "0"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let shown = json(d.path().join("split-query.json"));
        assert_eq!(shown["product"], json(d.path().join(&monoid))["identity"]);
    }
    let mut s = json(d.path().join("split-0.json"));
    let h = s["height"].as_u64().unwrap();
    let values = s["value"].as_array_mut().unwrap();
    if values.len() > 1 {
        values[1] = Value::from(h + 5);
        write(d.path(), "broken.json", &s.to_string());
        let o = wqo(d.path(), &["split", "check", "c/tree-0000.json", "--monoid", "c/tree-0000.monoid.json", "--split", "broken.json"]);
        assert_ne!(o.status.code(), Some(0));
    }
}

#[test]
fn gap_search_finds_the_identity_on_a_marked_tree() {
    let d = TempDir::new().unwrap();
    let o = wqo(d.path(), &["corpus", "gen", "--kind", "marked-tree", "--count", "2", "--seed", "5", "--out", "c"]);
    assert_eq!(o.status.code(), Some(0));
    let t = "c/marked-tree-0000.json";
    let m = "c/marked-tree-0000.monoid.json";
    let o = wqo(d.path(), &["gap", "search", t, t, "--monoid", m]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let map = json(d.path().join("gap-search.json"))["map"].clone();
    write(d.path(), "map.json", &map.to_string());
    let o = wqo(d.path(), &["gap", "check", t, t, "--monoid", m, "--map", "map.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = wqo(d.path(), &["gap", "encode", t, "--monoid", m, "--bound", "64"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn bough_commands_chain_through_files() {
    let d = TempDir::new().unwrap();
    let o = wqo(d.path(), &["corpus", "gen", "--kind", "tree", "--count", "1", "--size", "41", "--seed", "9", "--out", "c"]);
    assert_eq!(o.status.code(), Some(0));
    let (t, m) = ("c/tree-0000.json", "c/tree-0000.monoid.json");
    assert_eq!(wqo(d.path(), &["split", "build", t, "--monoid", m, "-o", "s.json"]).status.code(), Some(0));
    let o = wqo(d.path(), &["bough", "list", t, "--monoid", m, "--split", "s.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let boughs = json(d.path().join("bough-list.json"))["boughs"].as_array().unwrap().clone();
    assert!(!boughs.is_empty());
    let b = &boughs[0];
    let level = b["level"].to_string();
    let backbone: Vec<String> = b["backbone"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
    let backbone = backbone.join(",");
    let args = ["--split", "s.json", "--level", level.as_str(), "--backbone", backbone.as_str()];

    let mut cmd = vec!["bough", "decompose", t, "--monoid", m];
    cmd.extend(args);
    let o = wqo(d.path(), &cmd);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dec = json(d.path().join("bough-decompose.json"));
    assert_eq!(dec["bough"]["dimension"], b["dimension"]);

    let monoid = json(d.path().join(m));
    let interp = serde_json::json!({ "monoid": monoid, "morphism": { "alphabet": ["a"], "image": [0] }, "P": [] });
    write(d.path(), "i.json", &interp.to_string());
    let mut cmd = vec!["bough", "perfect", t, "--interp", "i.json", "--deadline", "30"];
    cmd.extend(args);
    let o = wqo(d.path(), &cmd);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cert = json(d.path().join("bough-perfect.json"));
    assert_eq!(cert["perfect"], true);
    assert_eq!(cert["verified"], true);
}
