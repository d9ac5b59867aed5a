//! Subcommand implementations.

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use wqo_core::bough::{decompose, enumerate_boughs, is_perfect_bough, verify_perfect_certificate, Bough};
use wqo_core::corpus::Corpus;
use wqo_core::io::{
    graph_to_json, marked_tree_to_json, monoid_to_json, parse_interp, parse_marked_tree, parse_monoid, parse_morphism,
    parse_sequence, parse_split, parse_tree, sequence_to_json, split_to_json, to_pretty, tree_to_json,
};
use wqo_core::nested::{
    check_marked_gap, encode_dershowitz_with, search_marked_gap, ChainPositions, MarkedNestedTree,
};
use wqo_core::sequence::{certify_antichain, with_endpoints, RegularSequence, Sequence};
use wqo_core::split::{construct_split, default_budget, fast_tlbl, validate_ramseyan};
use wqo_core::transduce::{check_arrow_claims, phi_arrow, transduce_paths};
use wqo_core::{Error, FiniteMonoid, LabelledTree, Morphism, MonoidInterpretation, Split};

use crate::session::{CliError, CliResult, Outcome, Session};
use crate::{
    default_name, Algebra, BoughArgs, BoughCmd, Command, CorpusCmd, CorpusKind, GapCmd, InterpCmd, MonoidCmd, Run,
    SeqCmd, SplitCmd, TransduceCmd, TreeCmd,
};

pub fn run(s: &mut Session, cmd: &Command) -> Run {
    let (group, name, result) = match cmd {
        Command::Monoid(MonoidCmd::Check { file, morphism }) => ("monoid", "check", monoid_check(s, file, morphism.as_deref())),
        Command::Tree(TreeCmd::Show { tree, algebra }) => ("tree", "show", tree_show(s, tree, algebra)),
        Command::Interp(InterpCmd::Run { tree, algebra, marked }) => ("interp", "run", interp_run(s, tree, algebra, *marked)),
        Command::Split(c) => split(s, c),
        Command::Gap(c) => gap(s, c),
        Command::Bough(c) => bough(s, c),
        Command::Seq(c) => seq(s, c),
        Command::Transduce(c) => transduce(s, c),
        Command::Corpus(CorpusCmd::Gen { kind, count, size }) => ("corpus", "gen", corpus_gen(s, *kind, *count, *size)),
    };
    (default_name(group, name), result)
}

/// Monoid, optional morphism and optional interpretation resolved from the flags.
struct Resolved {
    monoid: Arc<FiniteMonoid>,
    morphism: Option<Morphism>,
    interp: Option<MonoidInterpretation>,
}

impl Resolved {
    fn interp(&self) -> CliResult<&MonoidInterpretation> {
        self.interp.as_ref().ok_or_else(|| CliError::usage("an interpretation is required (--interp or --builtin)"))
    }
}

fn resolve(s: &mut Session, a: &Algebra) -> CliResult<Resolved> {
    let interp = match (&a.interp, &a.builtin) {
        (Some(_), Some(_)) => return Err(CliError::usage("--interp and --builtin are exclusive")),
        (Some(p), None) => Some(parse_interp(&s.read(p)?)?),
        (None, Some(name)) => Some(MonoidInterpretation::builtin(name)?),
        (None, None) => None,
    };
    if let Some(i) = interp {
        if a.monoid.is_some() || a.morphism.is_some() {
            return Err(CliError::usage("an interpretation already fixes the monoid and morphism"));
        }
        return Ok(Resolved { monoid: i.monoid().clone(), morphism: Some(i.morphism().clone()), interp: Some(i) });
    }
    let path = a.monoid.as_ref().ok_or_else(|| CliError::usage("one of --monoid, --interp or --builtin is required"))?;
    let monoid = Arc::new(parse_monoid(&s.read(path)?)?);
    let morphism = match &a.morphism {
        Some(p) => Some(parse_morphism(monoid.clone(), &s.read(p)?)?),
        None => None,
    };
    Ok(Resolved { monoid, morphism, interp: None })
}

fn load_tree(s: &mut Session, path: &Path, r: &Resolved) -> CliResult<LabelledTree> {
    Ok(parse_tree(&s.read(path)?, r.monoid.clone(), r.morphism.as_ref())?)
}

fn load_marked(s: &mut Session, path: &Path, r: &Resolved) -> CliResult<MarkedNestedTree> {
    Ok(parse_marked_tree(&s.read(path)?, r.monoid.clone(), r.morphism.as_ref())?)
}

fn load_split(s: &mut Session, path: &Path, t: &LabelledTree) -> CliResult<Split> {
    Ok(parse_split(&s.read(path)?, t)?)
}

fn monoid_check(s: &mut Session, file: &Path, morphism: Option<&Path>) -> CliResult<Outcome> {
    let text = s.read(file)?;
    let m = match parse_monoid(&text) {
        Ok(m) => Arc::new(m),
        Err(e @ (Error::Associativity { .. } | Error::IdentityLaw { .. })) => {
            return Ok(Outcome::Refuted(json!({ "axiom": e.to_string() })));
        }
        Err(e) => return Err(e.into()),
    };
    let mut out = json!({
        "size": m.size(),
        "identity": m.identity().idx(),
        "idempotents": m.elements().filter(|&e| m.mul(e, e) == e).map(|e| e.idx()).collect::<Vec<_>>(),
    });
    if let Some(p) = morphism {
        let mu = parse_morphism(m.clone(), &s.read(p)?)?;
        out["alphabet"] = json!(mu.alphabet());
    }
    Ok(Outcome::Done(out))
}

fn tree_show(s: &mut Session, path: &Path, a: &Algebra) -> CliResult<Outcome> {
    let r = resolve(s, a)?;
    let t = load_tree(s, path, &r)?;
    let nodes: Vec<Value> = t
        .nodes()
        .map(|x| {
            json!({
                "id": x,
                "parent": t.parent(x),
                "children": t.children(x).map(|(a, b)| [a, b]),
                "edge": (x != t.root()).then(|| t.edge_label(x).idx()),
                "depth": t.depth(x),
                "product_from_root": t.tlbl(t.root(), x).expect("root is an ancestor").idx(),
            })
        })
        .collect();
    Ok(Outcome::Done(json!({
        "n": t.n(),
        "height": t.height(),
        "leaves": t.leaves_in_order(),
        "nodes": nodes,
        "tree": tree_to_json(&t),
    })))
}

fn interp_run(s: &mut Session, path: &Path, a: &Algebra, marked: bool) -> CliResult<Outcome> {
    let r = resolve(s, a)?;
    let i = r.interp()?;
    let g = if marked {
        i.interpret_marked(&load_marked(s, path, &r)?)?
    } else {
        i.interpret(&load_tree(s, path, &r)?)?
    };
    Ok(Outcome::Done(graph_to_json(&g)))
}

fn split(s: &mut Session, c: &SplitCmd) -> (&'static str, &'static str, CliResult<Outcome>) {
    match c {
        SplitCmd::Build { tree, algebra, budget } => ("split", "build", split_build(s, tree, algebra, *budget)),
        SplitCmd::Check { tree, algebra, split } => ("split", "check", split_check(s, tree, algebra, split)),
        SplitCmd::Query { tree, algebra, split, x, y } => ("split", "query", split_query(s, tree, algebra, split, *x, *y)),
    }
}

fn split_build(s: &mut Session, path: &Path, a: &Algebra, budget: Option<u32>) -> CliResult<Outcome> {
    let r = resolve(s, a)?;
    let t = load_tree(s, path, &r)?;
    let sp = construct_split(&t, budget.unwrap_or_else(|| default_budget(&r.monoid)))?;
    Ok(Outcome::Done(split_to_json(&sp)))
}

fn split_check(s: &mut Session, path: &Path, a: &Algebra, split: &Path) -> CliResult<Outcome> {
    let r = resolve(s, a)?;
    let t = load_tree(s, path, &r)?;
    let sp = load_split(s, split, &t)?;
    Ok(match validate_ramseyan(&t, &sp) {
        None => Outcome::Done(json!({ "ramseyan": true, "height": sp.height() })),
        Some(v) => Outcome::Refuted(json!({ "ramseyan": false, "violation": v })),
    })
}

fn split_query(s: &mut Session, path: &Path, a: &Algebra, split: &Path, x: usize, y: usize) -> CliResult<Outcome> {
    let r = resolve(s, a)?;
    let t = load_tree(s, path, &r)?;
    let mut sp = load_split(s, split, &t)?;
    if let Some(v) = validate_ramseyan(&t, &sp) {
        return Ok(Outcome::Refuted(json!({ "ramseyan": false, "violation": v })));
    }
    sp.verify(&t)?;
    let fast = fast_tlbl(&t, &sp, x, y)?;
    Ok(Outcome::Done(json!({ "x": x, "y": y, "product": fast.idx(), "name": r.monoid.name(fast) })))
}

fn gap(s: &mut Session, c: &GapCmd) -> (&'static str, &'static str, CliResult<Outcome>) {
    match c {
        GapCmd::Check { small, big, algebra, map } => ("gap", "check", gap_check(s, small, big, algebra, map)),
        GapCmd::Search { small, big, algebra } => ("gap", "search", gap_search(s, small, big, algebra)),
        GapCmd::Encode { tree, algebra, bound, omit_chain_positions } => {
            ("gap", "encode", gap_encode(s, tree, algebra, *bound, *omit_chain_positions))
        }
    }
}

fn gap_check(s: &mut Session, small: &Path, big: &Path, a: &Algebra, map: &Path) -> CliResult<Outcome> {
    let r = resolve(s, a)?;
    let m1 = load_marked(s, small, &r)?;
    let m2 = load_marked(s, big, &r)?;
    let text = s.read(map)?;
    let h: Vec<usize> = serde_json::from_str(&text)
        .map_err(|e| Error::Parse { what: map.display().to_string(), message: e.to_string() })?;
    if h.len() != m1.tree().n() || h.iter().any(|&v| v >= m2.tree().n()) {
        return Err(CliError::usage(format!("the map needs {} node ids below {}", m1.tree().n(), m2.tree().n())));
    }
    Ok(match check_marked_gap(&m1, &m2, &h, None) {
        None => Outcome::Done(json!({ "embedding": true, "map": h })),
        Some(clause) => Outcome::Refuted(json!({ "embedding": false, "clause": clause.name(), "detail": clause, "map": h })),
    })
}

fn gap_search(s: &mut Session, small: &Path, big: &Path, a: &Algebra) -> CliResult<Outcome> {
    let r = resolve(s, a)?;
    let m1 = load_marked(s, small, &r)?;
    let m2 = load_marked(s, big, &r)?;
    Ok(match search_marked_gap(&m1, &m2, None, s.deadline)? {
        Some(w) => Outcome::Done(serde_json::to_value(&w).expect("witness serializes")),
        None => Outcome::Refuted(json!({ "embedding": false, "reason": "complete search found no marked gap-embedding" })),
    })
}

fn gap_encode(s: &mut Session, path: &Path, a: &Algebra, bound: usize, omit: bool) -> CliResult<Outcome> {
    let r = resolve(s, a)?;
    let m = load_marked(s, path, &r)?;
    let chain = if omit { ChainPositions::Omit } else { ChainPositions::Record };
    let e = encode_dershowitz_with(&m, bound, chain)?;
    Ok(Outcome::Done(json!({
        "tree": tree_to_json(&e.tree),
        "split": split_to_json(&e.split),
        "labels": e.labels,
    })))
}

fn bough(s: &mut Session, c: &BoughCmd) -> (&'static str, &'static str, CliResult<Outcome>) {
    match c {
        BoughCmd::List { tree, algebra, split, level, min_dim } => {
            ("bough", "list", bough_list(s, tree, algebra, split, *level, *min_dim))
        }
        BoughCmd::Decompose { tree, algebra, bough } => ("bough", "decompose", bough_decompose(s, tree, algebra, bough)),
        BoughCmd::Perfect { tree, algebra, bough } => ("bough", "perfect", bough_perfect(s, tree, algebra, bough)),
    }
}

fn split_tree(s: &mut Session, path: &Path, r: &Resolved, split: &Path) -> CliResult<(LabelledTree, Split)> {
    let t = load_tree(s, path, r)?;
    let mut sp = load_split(s, split, &t)?;
    sp.verify(&t)?;
    Ok((t, sp))
}

fn bough_list(s: &mut Session, path: &Path, a: &Algebra, split: &Path, level: Option<u32>, min_dim: usize) -> CliResult<Outcome> {
    let r = resolve(s, a)?;
    let (t, sp) = split_tree(s, path, &r, split)?;
    let levels: Vec<u32> = level.map_or_else(|| (1..=sp.height()).collect(), |k| vec![k]);
    let found: Vec<Value> = levels
        .into_iter()
        .flat_map(|k| enumerate_boughs(&t, &sp, k, min_dim))
        .map(|b| json!({ "level": b.level, "backbone": b.backbone, "dimension": b.dimension() }))
        .collect();
    Ok(Outcome::Done(json!({ "boughs": found })))
}

fn load_bough(s: &mut Session, path: &Path, r: &Resolved, b: &BoughArgs) -> CliResult<(LabelledTree, Split, Bough)> {
    let (t, sp) = split_tree(s, path, r, &b.split)?;
    let bough = Bough::new(&t, &sp, b.backbone.clone(), b.level)?;
    Ok((t, sp, bough))
}

fn bough_decompose(s: &mut Session, path: &Path, a: &Algebra, b: &BoughArgs) -> CliResult<Outcome> {
    let r = resolve(s, a)?;
    let (t, sp, bough) = load_bough(s, path, &r, b)?;
    let (c, bt, blocks) = decompose(&t, &sp, &bough)?;
    Ok(Outcome::Done(json!({
        "context": {
            "root": tree_to_json(&c.root),
            "root_split": split_to_json(&c.root_split),
            "hole": c.hole,
            "left": tree_to_json(&c.left),
            "left_split": split_to_json(&c.left_split),
            "right": tree_to_json(&c.right),
            "right_split": split_to_json(&c.right_split),
            "m_left": c.m_left.idx(),
            "m_right": c.m_right.idx(),
        },
        "bough": {
            "tree": tree_to_json(&bt.tree),
            "split": split_to_json(&bt.split),
            "backbone": bt.backbone,
            "level": bt.level,
            "dimension": bt.dimension(),
        },
        "blocks": blocks,
    })))
}

fn bough_perfect(s: &mut Session, path: &Path, a: &Algebra, b: &BoughArgs) -> CliResult<Outcome> {
    let r = resolve(s, a)?;
    let i = r.interp()?.clone();
    let (t, sp, bough) = load_bough(s, path, &r, b)?;
    let (c, bt, _) = decompose(&t, &sp, &bough)?;
    Ok(match is_perfect_bough(&i, &c, &bt, s.deadline)? {
        Some(cert) => {
            let verified = verify_perfect_certificate(&i, &c, &bt, &cert)?;
            Outcome::Done(json!({ "perfect": true, "verified": verified, "certificate": cert }))
        }
        None => Outcome::Refuted(json!({ "perfect": false, "reason": "no certificate into five copies" })),
    })
}

fn load_sequence(s: &mut Session, path: &Path) -> CliResult<Sequence> {
    Ok(parse_sequence(&s.read(path)?)?)
}

fn load_regular(s: &mut Session, path: &Path) -> CliResult<RegularSequence> {
    match load_sequence(s, path)? {
        Sequence::Regular(r) => Ok(r),
        Sequence::Periodic(_) => Err(CliError::usage("transductions need a regular sequence")),
    }
}

fn seq(s: &mut Session, c: &SeqCmd) -> (&'static str, &'static str, CliResult<Outcome>) {
    match c {
        SeqCmd::Expand { seq, r, endpoints } => ("seq", "expand", seq_expand(s, seq, *r, *endpoints)),
        SeqCmd::Certify { seq, rmin, rmax } => ("seq", "certify", seq_certify(s, seq, *rmin, *rmax)),
    }
}

fn seq_expand(s: &mut Session, path: &Path, r: usize, endpoints: bool) -> CliResult<Outcome> {
    let sq = load_sequence(s, path)?;
    let e = sq.expand(r)?;
    let g = if endpoints { with_endpoints(&e) } else { e.graph.clone() };
    let copy_of: Vec<usize> = (0..g.n()).map(|v| e.copy_of(v)).collect();
    Ok(Outcome::Done(json!({ "r": r, "graph": graph_to_json(&g), "copy": copy_of })))
}

fn seq_certify(s: &mut Session, path: &Path, rmin: usize, rmax: usize) -> CliResult<Outcome> {
    if rmin == 0 || rmin > rmax {
        return Err(CliError::usage("need 1 <= rmin <= rmax"));
    }
    let sq = load_sequence(s, path)?;
    Ok(match certify_antichain(&sq, rmin..=rmax, s.deadline)? {
        None => Outcome::Done(json!({ "antichain": true, "rmin": rmin, "rmax": rmax })),
        Some(pair) => Outcome::Refuted(json!({
            "antichain": false,
            "pair": pair,
            "smaller": graph_to_json(&with_endpoints(&sq.expand(pair.smaller)?)),
            "larger": graph_to_json(&with_endpoints(&sq.expand(pair.larger)?)),
        })),
    })
}

fn transduce(s: &mut Session, c: &TransduceCmd) -> (&'static str, &'static str, CliResult<Outcome>) {
    match c {
        TransduceCmd::Arrows { seq, target } => ("transduce", "arrows", transduce_arrows(s, seq, *target)),
        TransduceCmd::Claims { seq, target } => ("transduce", "claims", transduce_claims(s, seq, *target)),
        TransduceCmd::Path { seq, target } => ("transduce", "path", transduce_path(s, seq, *target)),
    }
}

fn transduce_arrows(s: &mut Session, path: &Path, target: usize) -> CliResult<Outcome> {
    let sq = load_regular(s, path)?;
    let a = phi_arrow(&sq, target)?;
    let arcs: Vec<Value> = a
        .arcs()
        .into_iter()
        .map(|(x, y)| json!({ "from": [a.base_of(x), a.copy_of(x)], "to": [a.base_of(y), a.copy_of(y)] }))
        .collect();
    Ok(Outcome::Done(json!({ "copies": a.copies, "vertices": a.n(), "arcs": arcs })))
}

fn transduce_claims(s: &mut Session, path: &Path, target: usize) -> CliResult<Outcome> {
    let sq = load_regular(s, path)?;
    let report = check_arrow_claims(&phi_arrow(&sq, target)?);
    let value = serde_json::to_value(&report).expect("report serializes");
    Ok(if report.no_long_forward() && report.backward_regular() {
        Outcome::Done(value)
    } else {
        Outcome::Refuted(value)
    })
}

fn transduce_path(s: &mut Session, path: &Path, target: usize) -> CliResult<Outcome> {
    let sq = load_regular(s, path)?;
    match transduce_paths(&sq, target, s.deadline) {
        Ok(x) => Ok(Outcome::Done(json!({
            "case": x.case,
            "copies": x.copies,
            "vertices": x.vertices,
            "period": x.period,
            "graph": graph_to_json(&x.graph),
        }))),
        Err(e @ (Error::NoSpanningPath | Error::NotAPath(_))) => {
            Ok(Outcome::Refuted(json!({ "path": false, "reason": e.to_string() })))
        }
        Err(e) => Err(e.into()),
    }
}

fn corpus_gen(s: &mut Session, kind: CorpusKind, count: usize, size: usize) -> CliResult<Outcome> {
    let mut c = Corpus::new(s.seed);
    let mut files = Vec::new();
    let mut emit = |s: &mut Session, name: String, v: Value| -> CliResult<()> {
        let bytes = to_pretty(&v);
        s.write_bytes(&name, bytes.as_bytes())?;
        files.push(json!({ "file": name, "sha256": crate::session::sha256_hex(bytes.as_bytes()) }));
        Ok(())
    };
    for idx in 0..count {
        match kind {
            CorpusKind::Monoid => {
                let (m, _) = c.monoid(size);
                emit(s, format!("monoid-{idx:04}.json"), monoid_to_json(&m))?;
            }
            CorpusKind::Tree => {
                let (m, gens) = c.monoid(6);
                let t = c.tree(&m, &gens, size);
                emit(s, format!("tree-{idx:04}.monoid.json"), monoid_to_json(&m))?;
                emit(s, format!("tree-{idx:04}.json"), tree_to_json(&t))?;
            }
            CorpusKind::MarkedTree => {
                let m = c.marked_tree(6, size)?;
                emit(s, format!("marked-tree-{idx:04}.monoid.json"), monoid_to_json(m.tree().monoid()))?;
                emit(s, format!("marked-tree-{idx:04}.json"), marked_tree_to_json(&m))?;
            }
            CorpusKind::Seq => {
                let sq = Sequence::Regular(c.regular_sequence(size));
                emit(s, format!("seq-{idx:04}.json"), sequence_to_json(&sq))?;
            }
        }
    }
    Ok(Outcome::Done(json!({ "seed": s.seed, "count": count, "files": files })))
}
