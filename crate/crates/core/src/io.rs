//! JSON file formats for every input kind.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::{LabelOrder, LabelledGraph};
use crate::interp::MonoidInterpretation;
use crate::monoid::{Element, FiniteMonoid, Morphism};
use crate::nested::{Mark, MarkedNestedTree};
use crate::sequence::{PairSet, PeriodicSequence, RegularSequence, Sequence};
use crate::split::Split;
use crate::tree::{LabelledTree, Shape};

/// The kinds of file the tools read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Monoid,
    Morphism,
    Tree,
    Split,
    Graph,
    LabelOrder,
    Interp,
    Sequence,
    MarkedTree,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Monoid => "monoid",
            Kind::Morphism => "morphism",
            Kind::Tree => "tree",
            Kind::Split => "split",
            Kind::Graph => "graph",
            Kind::LabelOrder => "label order",
            Kind::Interp => "interp",
            Kind::Sequence => "seq",
            Kind::MarkedTree => "marked-tree",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How edge labels are written in a tree file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelMode {
    #[default]
    Elements,
    Symbols,
}

impl FromStr for LabelMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "elements" => Ok(LabelMode::Elements),
            "symbols" => Ok(LabelMode::Symbols),
            _ => Err(parse_err("tree", format!("unknown label mode {s:?}"))),
        }
    }
}

fn parse_err(what: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { what: what.into(), message: message.into() }
}

fn from_json<T: DeserializeOwned>(kind: Kind, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| parse_err(kind.name(), e.to_string()))
}

fn from_value<T: DeserializeOwned>(what: &str, v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| parse_err(what, e.to_string()))
}

/// Reads a file as UTF-8 text.
pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| parse_err(path.display().to_string(), e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidFile {
    size: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

fn monoid_from_value(v: Value) -> Result<FiniteMonoid> {
    let f: MonoidFile = from_value("monoid", v)?;
    if f.table.len() != f.size {
        return Err(parse_err("monoid", format!("field `table` has {} rows, `size` is {}", f.table.len(), f.size)));
    }
    for (i, row) in f.table.iter().enumerate() {
        if row.len() != f.size {
            return Err(parse_err("monoid", format!("table[{i}] has {} cells, expected {}", row.len(), f.size)));
        }
        if let Some((j, &c)) = row.iter().enumerate().find(|(_, &c)| c >= f.size) {
            return Err(parse_err("monoid", format!("table[{i}][{j}] = {c} is not an element of 0..{}", f.size)));
        }
    }
    if f.identity >= f.size {
        return Err(parse_err("monoid", format!("field `identity` = {} is out of range", f.identity)));
    }
    let m = FiniteMonoid::new(f.identity, f.table)?;
    match f.names {
        Some(names) => m.with_names(names),
        None => Ok(m),
    }
}

pub fn parse_monoid(text: &str) -> Result<FiniteMonoid> {
    monoid_from_value(from_json(Kind::Monoid, text)?)
}

pub fn monoid_to_json(m: &FiniteMonoid) -> Value {
    serde_json::to_value(MonoidFile {
        size: m.size(),
        identity: m.identity().idx(),
        table: m.table_rows(),
        names: m.names().map(<[String]>::to_vec),
    })
    .expect("monoid serializes")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFile {
    alphabet: Vec<String>,
    image: Vec<usize>,
}

fn morphism_from_value(monoid: Arc<FiniteMonoid>, v: Value) -> Result<Morphism> {
    let f: MorphismFile = from_value("morphism", v)?;
    if let Some((i, &e)) = f.image.iter().enumerate().find(|(_, &e)| e >= monoid.size()) {
        return Err(parse_err("morphism", format!("image[{i}] = {e} is not a monoid element")));
    }
    Morphism::new(monoid, f.alphabet, f.image.into_iter().map(Element::from).collect())
}

pub fn parse_morphism(monoid: Arc<FiniteMonoid>, text: &str) -> Result<Morphism> {
    morphism_from_value(monoid, from_json(Kind::Morphism, text)?)
}

pub fn morphism_to_json(mu: &Morphism) -> Value {
    json!({
        "alphabet": mu.alphabet(),
        "image": mu.images().iter().map(|e| e.idx()).collect::<Vec<_>>(),
    })
}

fn shape_from_value(
    v: &Value,
    path: &str,
    monoid: &FiniteMonoid,
    mode: LabelMode,
    morphism: Option<&Morphism>,
) -> Result<Shape> {
    let obj = v.as_object().ok_or_else(|| parse_err("tree", format!("{path}: expected an object")))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "l" | "left" | "r" | "right") {
            return Err(parse_err("tree", format!("{path}: unknown field `{key}`")));
        }
    }
    let has_left = obj.contains_key("left");
    let has_right = obj.contains_key("right");
    match (has_left, has_right) {
        (false, false) => {
            if obj.contains_key("l") || obj.contains_key("r") {
                return Err(parse_err("tree", format!("{path}: leaf carries an edge label")));
            }
            Ok(Shape::Leaf)
        }
        (true, true) => {
            let label = |key: &str| -> Result<Element> {
                let raw = obj.get(key).ok_or_else(|| parse_err("tree", format!("{path}: missing field `{key}`")))?;
                label_from_value(raw, &format!("{path}.{key}"), monoid, mode, morphism)
            };
            let l = label("l")?;
            let r = label("r")?;
            let left = shape_from_value(&obj["left"], &format!("{path}.left"), monoid, mode, morphism)?;
            let right = shape_from_value(&obj["right"], &format!("{path}.right"), monoid, mode, morphism)?;
            Ok(Shape::node(l, left, r, right))
        }
        _ => Err(parse_err("tree", format!("{path}: full-binary violated (node has one child)"))),
    }
}

fn label_from_value(
    v: &Value,
    path: &str,
    monoid: &FiniteMonoid,
    mode: LabelMode,
    morphism: Option<&Morphism>,
) -> Result<Element> {
    match mode {
        LabelMode::Elements => {
            let e = v.as_u64().ok_or_else(|| parse_err("tree", format!("{path}: expected an element index")))? as usize;
            if e >= monoid.size() {
                return Err(parse_err("tree", format!("{path}: element {e} is out of range")));
            }
            Ok(Element::from(e))
        }
        LabelMode::Symbols => {
            let mu = morphism.ok_or_else(|| parse_err("tree", "symbol labels need a morphism"))?;
            let s = v.as_str().ok_or_else(|| parse_err("tree", format!("{path}: expected a symbol")))?;
            mu.symbol(s).map_err(|e| parse_err("tree", format!("{path}: {e}")))
        }
    }
}

fn shape_to_value(s: &Shape) -> Value {
    match s {
        Shape::Leaf => json!({}),
        Shape::Node { l, left, r, right } => json!({
            "l": l.idx(),
            "left": shape_to_value(left),
            "r": r.idx(),
            "right": shape_to_value(right),
        }),
    }
}

fn take_object(kind: Kind, text: &str) -> Result<Map<String, Value>> {
    match from_json::<Value>(kind, text)? {
        Value::Object(m) => Ok(m),
        _ => Err(parse_err(kind.name(), "expected a JSON object")),
    }
}

fn tree_from_object(
    obj: &Map<String, Value>,
    monoid: Arc<FiniteMonoid>,
    morphism: Option<&Morphism>,
) -> Result<LabelledTree> {
    let mode = match obj.get("labels") {
        None => LabelMode::Elements,
        Some(v) => v.as_str().ok_or_else(|| parse_err("tree", "field `labels` must be a string"))?.parse()?,
    };
    let root = obj.get("tree").ok_or_else(|| parse_err("tree", "missing field `tree`"))?;
    let shape = shape_from_value(root, "tree", &monoid, mode, morphism)?;
    LabelledTree::from_shape(monoid, &shape)
}

fn reject_unknown(kind: Kind, obj: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(parse_err(kind.name(), format!("unknown field `{k}`"))),
        None => Ok(()),
    }
}

/// Parses a tree file: `{"labels": "elements"|"symbols", "tree": {...}}`.
pub fn parse_tree(text: &str, monoid: Arc<FiniteMonoid>, morphism: Option<&Morphism>) -> Result<LabelledTree> {
    let obj = take_object(Kind::Tree, text)?;
    reject_unknown(Kind::Tree, &obj, &["labels", "tree"])?;
    tree_from_object(&obj, monoid, morphism)
}

pub fn tree_to_json(t: &LabelledTree) -> Value {
    json!({ "labels": "elements", "tree": shape_to_value(&t.to_shape()) })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SplitFile {
    height: u32,
    value: Vec<u32>,
}

/// Parses a split file against the tree it labels. The split is not yet validated.
pub fn parse_split(text: &str, t: &LabelledTree) -> Result<Split> {
    let f: SplitFile = from_json(Kind::Split, text)?;
    Split::new(t, f.height, f.value)
}

pub fn split_to_json(s: &Split) -> Value {
    json!({ "height": s.height(), "value": s.values() })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    #[serde(default)]
    labels: Vec<String>,
    #[serde(default)]
    vlabel: Vec<usize>,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vorder: Option<Vec<usize>>,
}

fn graph_from_value(v: Value) -> Result<LabelledGraph> {
    let f: GraphFile = from_value("graph", v)?;
    let mut g = if f.labels.is_empty() && f.vlabel.is_empty() {
        LabelledGraph::unlabelled(f.n)
    } else {
        if f.vlabel.len() != f.n {
            return Err(parse_err("graph", format!("field `vlabel` has {} entries, `n` is {}", f.vlabel.len(), f.n)));
        }
        if let Some((i, &l)) = f.vlabel.iter().enumerate().find(|(_, &l)| l >= f.labels.len()) {
            return Err(parse_err("graph", format!("vlabel[{i}] = {l} is not an index into `labels`")));
        }
        LabelledGraph::with_labels(f.labels, f.vlabel)?
    };
    for (i, &(u, v)) in f.edges.iter().enumerate() {
        g.add_edge(u, v).map_err(|e| parse_err("graph", format!("edges[{i}]: {e}")))?;
    }
    if let Some(order) = f.vorder {
        g.set_vorder(order).map_err(|e| parse_err("graph", format!("field `vorder`: {e}")))?;
    }
    Ok(g)
}

pub fn parse_graph(text: &str) -> Result<LabelledGraph> {
    graph_from_value(from_json(Kind::Graph, text)?)
}

pub fn graph_to_json(g: &LabelledGraph) -> Value {
    serde_json::to_value(GraphFile {
        n: g.n(),
        labels: g.labels().to_vec(),
        vlabel: g.vlabels().to_vec(),
        edges: g.edges(),
        vorder: g.vorder().map(<[usize]>::to_vec),
    })
    .expect("graph serializes")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderFile {
    labels: Vec<String>,
    #[serde(default)]
    le: Vec<(usize, usize)>,
}

pub fn parse_label_order(text: &str) -> Result<LabelOrder> {
    let f: OrderFile = from_json(Kind::LabelOrder, text)?;
    LabelOrder::new(f.labels, &f.le)
}

pub fn label_order_to_json(o: &LabelOrder) -> Value {
    serde_json::to_value(OrderFile { labels: o.labels().to_vec(), le: o.pairs() }).expect("order serializes")
}

/// Parses `{"monoid": {...}, "morphism": {...}, "P": [[a,b,c],...]}`.
pub fn parse_interp(text: &str) -> Result<MonoidInterpretation> {
    let obj = take_object(Kind::Interp, text)?;
    reject_unknown(Kind::Interp, &obj, &["monoid", "morphism", "P"])?;
    let field = |k: &str| obj.get(k).cloned().ok_or_else(|| parse_err("interp", format!("missing field `{k}`")));
    let monoid = Arc::new(monoid_from_value(field("monoid")?).map_err(|e| nest("interp.monoid", e))?);
    let morphism = morphism_from_value(monoid.clone(), field("morphism")?).map_err(|e| nest("interp.morphism", e))?;
    let triples: Vec<(usize, usize, usize)> = from_value("interp.P", field("P")?)?;
    if let Some((i, t)) = triples.iter().enumerate().find(|(_, t)| t.0.max(t.1).max(t.2) >= monoid.size()) {
        return Err(parse_err("interp", format!("P[{i}] = {t:?} holds an element out of range")));
    }
    let p = triples.into_iter().map(|(a, b, c)| (Element::from(a), Element::from(b), Element::from(c)));
    MonoidInterpretation::new(morphism, p)
}

fn nest(what: &str, e: Error) -> Error {
    match e {
        Error::Parse { message, .. } => parse_err(what, message),
        other => parse_err(what, other.to_string()),
    }
}

pub fn interp_to_json(i: &MonoidInterpretation) -> Value {
    json!({
        "monoid": monoid_to_json(i.monoid()),
        "morphism": morphism_to_json(i.morphism()),
        "P": i.accepting().iter().map(|&(a, b, c)| [a.idx(), b.idx(), c.idx()]).collect::<Vec<_>>(),
    })
}

/// Parses `{"kind": "regular", "G": {...}, ...}` or `{"kind": "periodic", "w": [...], ...}`.
pub fn parse_sequence(text: &str) -> Result<Sequence> {
    let obj = take_object(Kind::Sequence, text)?;
    reject_unknown(Kind::Sequence, &obj, &["kind", "G", "w", "C", "F"])?;
    let pairs = |k: &str| -> Result<PairSet> {
        match obj.get(k) {
            None => Ok(PairSet::default()),
            Some(v) => from_value(&format!("seq.{k}"), v.clone()),
        }
    };
    let close = pairs("C")?;
    let far = pairs("F")?;
    match obj.get("kind").and_then(Value::as_str) {
        Some("regular") => {
            if obj.contains_key("w") {
                return Err(parse_err("seq", "field `w` belongs to periodic sequences"));
            }
            let g = obj.get("G").cloned().ok_or_else(|| parse_err("seq", "missing field `G`"))?;
            let g = graph_from_value(g).map_err(|e| nest("seq.G", e))?;
            Ok(Sequence::Regular(RegularSequence::new(g, close, far)?))
        }
        Some("periodic") => {
            if obj.contains_key("G") {
                return Err(parse_err("seq", "field `G` belongs to regular sequences"));
            }
            let w = obj.get("w").cloned().ok_or_else(|| parse_err("seq", "missing field `w`"))?;
            let w: Vec<String> = from_value("seq.w", w)?;
            Ok(Sequence::Periodic(PeriodicSequence::new(w, close, far)?))
        }
        Some(other) => Err(parse_err("seq", format!("field `kind` = {other:?}, expected \"regular\" or \"periodic\""))),
        None => Err(parse_err("seq", "missing field `kind`")),
    }
}

pub fn sequence_to_json(s: &Sequence) -> Value {
    match s {
        Sequence::Regular(r) => json!({
            "kind": "regular",
            "G": graph_to_json(&r.graph),
            "C": r.close,
            "F": r.far,
        }),
        Sequence::Periodic(p) => json!({
            "kind": "periodic",
            "w": p.word,
            "C": p.close,
            "F": p.far,
        }),
    }
}

/// Parses a marked tree: a tree file with `height`, `split` and `marking` fields.
pub fn parse_marked_tree(
    text: &str,
    monoid: Arc<FiniteMonoid>,
    morphism: Option<&Morphism>,
) -> Result<MarkedNestedTree> {
    let obj = take_object(Kind::MarkedTree, text)?;
    reject_unknown(Kind::MarkedTree, &obj, &["labels", "tree", "height", "split", "marking"])?;
    let t = tree_from_object(&obj, monoid, morphism)?;
    let field = |k: &str| obj.get(k).cloned().ok_or_else(|| parse_err("marked-tree", format!("missing field `{k}`")));
    let value: Vec<u32> = from_value("marked-tree.split", field("split")?)?;
    let height = match obj.get("height") {
        Some(h) => from_value("marked-tree.height", h.clone())?,
        None => value.iter().copied().max().unwrap_or(1),
    };
    let marking: Vec<Mark> = from_value("marked-tree.marking", field("marking")?)?;
    let s = Split::new(&t, height, value)?;
    MarkedNestedTree::new(t, s, marking)
}

pub fn marked_tree_to_json(m: &MarkedNestedTree) -> Value {
    json!({
        "labels": "elements",
        "tree": shape_to_value(&m.tree().to_shape()),
        "height": m.split().height(),
        "split": m.split().values(),
        "marking": m.marking(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nested::Mark;

    fn z2() -> Arc<FiniteMonoid> {
        Arc::new(FiniteMonoid::cyclic(2))
    }

    #[test]
    fn monoid_round_trip_and_cell_errors() {
        let m = FiniteMonoid::cyclic(3).with_names(vec!["1".into(), "g".into(), "gg".into()]).unwrap();
        let back = parse_monoid(&to_pretty(&monoid_to_json(&m))).unwrap();
        assert_eq!(back, m);
        let err = parse_monoid(r#"{"size": 2, "identity": 0, "table": [[0, 1], [1, 7]]}"#).unwrap_err();
        assert!(err.to_string().contains("table[1][1]"), "{err}");
        let err = parse_monoid(r#"{"size": 2, "identity": 0}"#).unwrap_err();
        assert!(err.to_string().contains("table"), "{err}");
    }

    #[test]
    fn tree_formats() {
        let m = z2();
        let text = r#"{"labels": "elements", "tree": {"l": 1, "left": {}, "r": 0, "right": {"l": 1, "left": {}, "r": 1, "right": {}}}}"#;
        let t = parse_tree(text, m.clone(), None).unwrap();
        assert_eq!(t.n(), 5);
        assert_eq!(parse_tree(&tree_to_json(&t).to_string(), m.clone(), None).unwrap(), t);

        let mu = Morphism::new(m.clone(), vec!["x".into(), "e".into()], vec![Element(1), Element(0)]).unwrap();
        let sym = r#"{"labels": "symbols", "tree": {"l": "x", "left": {}, "r": "e", "right": {"l": "x", "left": {}, "r": "x", "right": {}}}}"#;
        assert_eq!(parse_tree(sym, m.clone(), Some(&mu)).unwrap(), t);
        assert!(parse_tree(sym, m.clone(), None).is_err());

        let one_child = r#"{"tree": {"l": 1, "left": {}}}"#;
        let err = parse_tree(one_child, m, None).unwrap_err();
        assert!(err.to_string().contains("full-binary violated"), "{err}");
    }

    #[test]
    fn graph_order_and_split_round_trip() {
        let mut g = LabelledGraph::with_labels(vec!["a".into(), "b".into()], vec![0, 1, 1]).unwrap();
        g.add_edge(0, 2).unwrap();
        g.set_vorder(vec![2, 0, 1]).unwrap();
        assert_eq!(parse_graph(&graph_to_json(&g).to_string()).unwrap(), g);
        let bare = parse_graph(r#"{"n": 3, "edges": [[0, 1]]}"#).unwrap();
        assert_eq!(bare.edge_count(), 1);
        assert!(parse_graph(r#"{"n": 2, "edges": [[0, 5]]}"#).unwrap_err().to_string().contains("edges[0]"));

        let o = LabelOrder::new(vec!["a".into(), "b".into()], &[(0, 1)]).unwrap();
        assert_eq!(parse_label_order(&label_order_to_json(&o).to_string()).unwrap(), o);

        let t = LabelledTree::build_linear(z2(), &[(Element(1), Element(1))]).unwrap();
        let s = Split::new(&t, 2, vec![1, 2, 1]).unwrap();
        assert_eq!(parse_split(&split_to_json(&s).to_string(), &t).unwrap().values(), s.values());
        assert!(parse_split(r#"{"height": 2, "value": [1, 3, 1]}"#, &t).is_err());
    }

    #[test]
    fn interp_and_sequence_round_trip() {
        for name in crate::interp::BUILTINS {
            let i = MonoidInterpretation::builtin(name).unwrap();
            assert_eq!(parse_interp(&interp_to_json(&i).to_string()).unwrap(), i, "{name}");
        }
        let r = Sequence::Regular(RegularSequence::split_permutation());
        assert_eq!(parse_sequence(&sequence_to_json(&r).to_string()).unwrap(), r);
        let p = Sequence::Periodic(PeriodicSequence::split_permutation());
        assert_eq!(parse_sequence(&sequence_to_json(&p).to_string()).unwrap(), p);
        assert!(parse_sequence(r#"{"kind": "cyclic", "w": []}"#).is_err());
        assert!(parse_sequence(r#"{"kind": "periodic", "w": ["a"], "C": [["a"]]}"#).is_err());
    }

    #[test]
    fn marked_tree_round_trip() {
        let m = z2();
        let t = LabelledTree::build_linear(m.clone(), &[(Element(1), Element(0))]).unwrap();
        let s = Split::new(&t, 2, vec![2, 1, 1]).unwrap();
        let mt = MarkedNestedTree::new(t, s, vec![Mark::M, Mark::S, Mark::D]).unwrap();
        let back = parse_marked_tree(&marked_tree_to_json(&mt).to_string(), m.clone(), None).unwrap();
        assert_eq!(back.tree(), mt.tree());
        assert_eq!(back.split().values(), mt.split().values());
        assert_eq!(back.marking(), mt.marking());
        let bad = r#"{"tree": {}, "split": [1], "marking": ["Q"]}"#;
        assert!(parse_marked_tree(bad, m, None).unwrap_err().to_string().contains("marking"));
    }
}
