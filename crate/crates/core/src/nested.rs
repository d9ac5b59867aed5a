//! Marked nested trees, marked gap-embeddings and their label encoding.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::deadline::{Deadline, Ticker};
use crate::error::{Error, Result};
use crate::graph::{verify_embedding, LabelOrder};
use crate::interp::{marked_leaves, MonoidInterpretation};
use crate::monoid::Element;
use crate::split::{gap_unchecked, Split};
use crate::tree::{LabelledTree, NodeId};

/// Marked, separating or dummy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mark {
    M,
    S,
    D,
}

impl Mark {
    pub fn is_dummy(self) -> bool {
        self == Mark::D
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mark::M => "M",
            Mark::S => "S",
            Mark::D => "D",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedNestedTree {
    tree: LabelledTree,
    split: Split,
    marking: Vec<Mark>,
    node_label: Option<Vec<usize>>,
}

impl MarkedNestedTree {
    pub fn new(tree: LabelledTree, split: Split, marking: Vec<Mark>) -> Result<Self> {
        if split.values().len() != tree.n() {
            return Err(Error::SplitSize { expected: tree.n(), got: split.values().len() });
        }
        if marking.len() != tree.n() {
            return Err(Error::InvalidArgument(format!("{} marks for {} nodes", marking.len(), tree.n())));
        }
        Ok(MarkedNestedTree { tree, split, marking, node_label: None })
    }

    pub fn uniform(tree: LabelledTree, split: Split, mark: Mark) -> Result<Self> {
        let n = tree.n();
        MarkedNestedTree::new(tree, split, vec![mark; n])
    }

    pub fn with_node_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.tree.n() {
            return Err(Error::InvalidArgument(format!("{} node labels for {} nodes", labels.len(), self.tree.n())));
        }
        self.node_label = Some(labels);
        Ok(self)
    }

    pub fn tree(&self) -> &LabelledTree {
        &self.tree
    }

    pub fn split(&self) -> &Split {
        &self.split
    }

    pub fn marking(&self) -> &[Mark] {
        &self.marking
    }

    pub fn mark(&self, x: NodeId) -> Mark {
        self.marking[x]
    }

    pub fn node_labels(&self) -> Option<&[usize]> {
        self.node_label.as_deref()
    }

    pub fn height(&self) -> u32 {
        self.split.height()
    }

    fn gap_or_inf(&self, x: NodeId, y: NodeId) -> u32 {
        gap_or_inf(&self.tree, &self.split, x, y)
    }

    /// Length of the longest chain of consecutive non-dummy nodes.
    pub fn longest_live_chain(&self) -> usize {
        let mut run = vec![0usize; self.tree.n()];
        for x in self.tree.nodes() {
            if !self.marking[x].is_dummy() {
                run[x] = 1 + self.tree.parent(x).map_or(0, |p| run[p]);
            }
        }
        run.into_iter().max().unwrap_or(0)
    }

    pub fn is_l_bounded(&self, l: usize) -> bool {
        self.longest_live_chain() <= l
    }

    /// Closest strict ancestor of `x` with split value `k`.
    pub fn closest_k_ancestor(&self, x: NodeId, k: u32) -> Option<NodeId> {
        let mut cur = self.tree.parent(x);
        while let Some(z) = cur {
            if self.split.value(z) == k {
                return Some(z);
            }
            cur = self.tree.parent(z);
        }
        None
    }

    /// `tlbl(z, x)` for the closest strict `k`-ancestor `z` of `x`.
    pub fn neighbourhood_product(&self, x: NodeId, k: u32) -> Option<Element> {
        self.closest_k_ancestor(x, k).map(|z| self.tree.tlbl_unchecked(z, x))
    }
}

/// Gap between `x ⊲ y`, treating adjacent or equal nodes as unbounded.
fn gap_or_inf(t: &LabelledTree, s: &Split, x: NodeId, y: NodeId) -> u32 {
    if x == y || t.parent(y) == Some(x) {
        u32::MAX
    } else {
        gap_unchecked(t, s, x, y)
    }
}

/// Which side of `z3 = y` the well-marked pattern admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Z3Reading {
    /// `z3 ⊴ y` with `spt(z3 : y) ≥ k`.
    #[default]
    Inclusive,
    /// `z3 ⊲ y` with `spt(z3 : y) > k`.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WellMarkedViolation {
    RootNotMarked,
    NotLcaClosed { x: NodeId, y: NodeId, lca: NodeId },
    Pattern { x: NodeId, z1: NodeId, y: NodeId, k: u32 },
}

/// Returns the first failure of well-markedness, or `None`.
pub fn is_well_marked(m: &MarkedNestedTree, reading: Z3Reading) -> Option<WellMarkedViolation> {
    let t = &m.tree;
    if m.mark(t.root()) != Mark::M {
        return Some(WellMarkedViolation::RootNotMarked);
    }
    let marked: Vec<NodeId> = t.nodes().filter(|&x| m.mark(x) == Mark::M).collect();
    for (i, &x) in marked.iter().enumerate() {
        for &y in &marked[i + 1..] {
            let l = t.lca_unchecked(x, y);
            if m.mark(l) != Mark::M {
                return Some(WellMarkedViolation::NotLcaClosed { x, y, lca: l });
            }
        }
    }
    for &x in &marked {
        for &y in marked.iter().filter(|&&y| t.is_strict_ancestor(x, y)) {
            if let Some(v) = pattern_violation(m, x, y, reading) {
                return Some(v);
            }
        }
    }
    None
}

fn pattern_violation(m: &MarkedNestedTree, x: NodeId, y: NodeId, reading: Z3Reading) -> Option<WellMarkedViolation> {
    let t = &m.tree;
    let s = &m.split;
    let path = t.path(x, y).expect("x is an ancestor of y");
    let inner = &path[1..path.len() - 1];
    for (i, &z1) in inner.iter().enumerate() {
        let k = s.value(z1);
        if m.gap_or_inf(x, z1) <= k || m.gap_or_inf(z1, y) < k {
            continue;
        }
        let ok = m.mark(z1) == Mark::M
            && path[i + 2..].iter().any(|&z2| {
                s.value(z2) == k
                    && m.gap_or_inf(z1, z2) > k
                    && matches!(m.mark(z2), Mark::M | Mark::S)
                    && path.iter().filter(|&&z3| t.is_ancestor(z2, z3)).any(|&z3| {
                        s.value(z3) == k
                            && m.gap_or_inf(z2, z3) >= k
                            && match reading {
                                Z3Reading::Inclusive => m.gap_or_inf(z3, y) >= k,
                                Z3Reading::Strict => z3 != y && m.gap_or_inf(z3, y) > k,
                            }
                    })
            });
        if !ok {
            return Some(WellMarkedViolation::Pattern { x, z1, y, k });
        }
    }
    None
}

/// A condition of the (marked) gap-embedding definition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GapClause {
    /// Injectivity, ancestors, least common ancestors and sibling order.
    TreeEmbedding { x: NodeId, y: NodeId },
    RootGap,
    EdgeGap { x: NodeId, y: NodeId },
    NodeLabel { x: NodeId },
    Root,
    Leaves { x: NodeId },
    Marking { x: NodeId },
    LocalProducts { x: NodeId },
    NeighbourhoodProducts { x: NodeId, k: u32 },
    Gluing { y: NodeId },
}

impl GapClause {
    pub fn name(&self) -> &'static str {
        match self {
            GapClause::TreeEmbedding { .. } => "tree-embedding",
            GapClause::RootGap => "root-gap",
            GapClause::EdgeGap { .. } => "edge-gap",
            GapClause::NodeLabel { .. } => "node-label",
            GapClause::Root => "root",
            GapClause::Leaves { .. } => "leaves",
            GapClause::Marking { .. } => "marking",
            GapClause::LocalProducts { .. } => "local-products",
            GapClause::NeighbourhoodProducts { .. } => "neighbourhood-products",
            GapClause::Gluing { .. } => "gluing",
        }
    }
}

/// Node labels for the plain gap-embedding check, with their order.
#[derive(Clone, Copy, Debug)]
pub struct NodeLabels<'a> {
    pub left: &'a [usize],
    pub right: &'a [usize],
    pub order: &'a LabelOrder,
}

fn check_tree_embedding(t1: &LabelledTree, t2: &LabelledTree, h: &[NodeId]) -> Option<GapClause> {
    if h.len() != t1.n() {
        return Some(GapClause::TreeEmbedding { x: h.len(), y: t1.n() });
    }
    if let Some(x) = h.iter().position(|&v| v >= t2.n()) {
        return Some(GapClause::TreeEmbedding { x, y: x });
    }
    for x in t1.nodes() {
        for y in x + 1..t1.n() {
            let bad = h[x] == h[y]
                || t1.is_ancestor(x, y) != t2.is_ancestor(h[x], h[y])
                || t2.lca_unchecked(h[x], h[y]) != h[t1.lca_unchecked(x, y)]
                || t1.left_of(x, y) != t2.left_of(h[x], h[y]);
            if bad {
                return Some(GapClause::TreeEmbedding { x, y });
            }
        }
    }
    None
}

/// Checks the plain gap-embedding conditions; returns the first violated one.
pub fn check_gap(
    t1: &LabelledTree,
    s1: &Split,
    t2: &LabelledTree,
    s2: &Split,
    h: &[NodeId],
    labels: Option<NodeLabels<'_>>,
) -> Option<GapClause> {
    if let Some(c) = check_tree_embedding(t1, t2, h) {
        return Some(c);
    }
    let r1 = t1.root();
    if gap_or_inf(t2, s2, t2.root(), h[r1]) < s1.value(r1) {
        return Some(GapClause::RootGap);
    }
    for y in t1.nodes().skip(1) {
        let x = t1.parent(y).expect("non-root");
        if gap_or_inf(t2, s2, h[x], h[y]) < s1.value(y) {
            return Some(GapClause::EdgeGap { x, y });
        }
    }
    if let Some(l) = labels {
        for x in t1.nodes() {
            if !l.order.le(l.left[x], l.right[h[x]]) {
                return Some(GapClause::NodeLabel { x });
            }
        }
    }
    None
}

fn node_clause(m1: &MarkedNestedTree, m2: &MarkedNestedTree, x: NodeId, v: NodeId) -> Option<GapClause> {
    let (t1, t2) = (&m1.tree, &m2.tree);
    if t1.is_leaf(x) != t2.is_leaf(v) {
        return Some(GapClause::Leaves { x });
    }
    if m1.mark(x) != m2.mark(v) {
        return Some(GapClause::Marking { x });
    }
    if let (Some((a, b)), Some((c, d))) = (t1.children(x), t2.children(v)) {
        if t1.edge_label(a) != t2.edge_label(c) || t1.edge_label(b) != t2.edge_label(d) {
            return Some(GapClause::LocalProducts { x });
        }
    }
    for k in 1..=m1.height().max(m2.height()) {
        if m1.neighbourhood_product(x, k) != m2.neighbourhood_product(v, k) {
            return Some(GapClause::NeighbourhoodProducts { x, k });
        }
    }
    None
}

fn labels_of<'a>(m1: &'a MarkedNestedTree, m2: &'a MarkedNestedTree, order: Option<&'a LabelOrder>) -> Option<NodeLabels<'a>> {
    match (m1.node_labels(), m2.node_labels(), order) {
        (Some(left), Some(right), Some(order)) => Some(NodeLabels { left, right, order }),
        _ => None,
    }
}

/// Checks every clause of the marked gap-embedding definition.
pub fn check_marked_gap(
    m1: &MarkedNestedTree,
    m2: &MarkedNestedTree,
    h: &[NodeId],
    order: Option<&LabelOrder>,
) -> Option<GapClause> {
    let (t1, t2) = (&m1.tree, &m2.tree);
    if let Some(c) = check_gap(t1, &m1.split, t2, &m2.split, h, labels_of(m1, m2, order)) {
        return Some(c);
    }
    if h[t1.root()] != t2.root() {
        return Some(GapClause::Root);
    }
    for x in t1.nodes() {
        if let Some(c) = node_clause(m1, m2, x, h[x]) {
            return Some(c);
        }
    }
    check_gluing(m1, t2, h)
}

fn check_gluing(m1: &MarkedNestedTree, t2: &LabelledTree, h: &[NodeId]) -> Option<GapClause> {
    let t1 = &m1.tree;
    for y in t1.nodes().skip(1) {
        if !m1.mark(y).is_dummy() && t2.parent(h[y]) != Some(h[t1.parent(y).expect("non-root")]) {
            return Some(GapClause::Gluing { y });
        }
    }
    None
}

/// A marked gap-embedding together with the clauses it was checked against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapWitness {
    pub map: Vec<NodeId>,
    pub checked_items: Vec<String>,
}

const MARKED_ITEMS: [&str; 10] = [
    "tree-embedding",
    "root-gap",
    "edge-gap",
    "node-label",
    "root",
    "leaves",
    "marking",
    "local-products",
    "neighbourhood-products",
    "gluing",
];

/// Depth-first embedding search where children go into the matching side of the image.
struct Search<'a, N, E> {
    t1: &'a LabelledTree,
    t2: &'a LabelledTree,
    node_ok: N,
    edge_ok: E,
    glued: Vec<bool>,
    memo: HashMap<(NodeId, NodeId), bool>,
    ticker: Ticker,
}

impl<N, E> Search<'_, N, E>
where
    N: Fn(NodeId, NodeId) -> bool,
    E: Fn(NodeId, NodeId, NodeId, NodeId) -> bool,
{
    fn candidates(&self, child: NodeId, side_root: NodeId) -> Vec<NodeId> {
        if self.glued[child] {
            vec![side_root]
        } else {
            self.t2.subtree(side_root).collect()
        }
    }

    fn feasible(&mut self, x: NodeId, v: NodeId) -> Result<bool> {
        if let Some(&r) = self.memo.get(&(x, v)) {
            return Ok(r);
        }
        self.ticker.tick()?;
        let mut ok = (self.node_ok)(x, v);
        if ok {
            if let Some((a, b)) = self.t1.children(x) {
                ok = match self.t2.children(v) {
                    None => false,
                    Some((vl, vr)) => self.child_image(x, v, a, vl)?.is_some() && self.child_image(x, v, b, vr)?.is_some(),
                };
            }
        }
        self.memo.insert((x, v), ok);
        Ok(ok)
    }

    fn child_image(&mut self, x: NodeId, v: NodeId, a: NodeId, side: NodeId) -> Result<Option<NodeId>> {
        for w in self.candidates(a, side) {
            if (self.edge_ok)(x, v, a, w) && self.feasible(a, w)? {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    fn build(&mut self, x: NodeId, v: NodeId, map: &mut [NodeId]) -> Result<()> {
        map[x] = v;
        if let (Some((a, b)), Some((vl, vr))) = (self.t1.children(x), self.t2.children(v)) {
            let wa = self.child_image(x, v, a, vl)?.expect("feasible");
            let wb = self.child_image(x, v, b, vr)?.expect("feasible");
            self.build(a, wa, map)?;
            self.build(b, wb, map)?;
        }
        Ok(())
    }

    fn run(&mut self, roots: impl IntoIterator<Item = NodeId>) -> Result<Option<Vec<NodeId>>> {
        let r1 = self.t1.root();
        for v in roots {
            if self.feasible(r1, v)? {
                let mut map = vec![0; self.t1.n()];
                self.build(r1, v, &mut map)?;
                return Ok(Some(map));
            }
        }
        Ok(None)
    }
}

/// Searches for a marked gap-embedding, preferring images of smaller preorder index.
pub fn search_marked_gap(
    m1: &MarkedNestedTree,
    m2: &MarkedNestedTree,
    order: Option<&LabelOrder>,
    deadline: Deadline,
) -> Result<Option<GapWitness>> {
    let labels = labels_of(m1, m2, order);
    let (t1, t2) = (&m1.tree, &m2.tree);
    let node_ok = |x: NodeId, v: NodeId| {
        node_clause(m1, m2, x, v).is_none() && labels.is_none_or(|l| l.order.le(l.left[x], l.right[v]))
    };
    let edge_ok = |_x: NodeId, u: NodeId, a: NodeId, w: NodeId| gap_or_inf(t2, &m2.split, u, w) >= m1.split.value(a);
    let glued = t1.nodes().map(|y| y != t1.root() && !m1.mark(y).is_dummy()).collect();
    let mut search =
        Search { t1, t2, node_ok, edge_ok, glued, memo: HashMap::new(), ticker: Ticker::new(deadline) };
    deadline.check()?;
    let found = search.run([t2.root()])?;
    Ok(found.map(|map| {
        debug_assert_eq!(check_marked_gap(m1, m2, &map, order), None);
        GapWitness { map, checked_items: MARKED_ITEMS.iter().map(|s| s.to_string()).collect() }
    }))
}

/// Searches for a plain gap-embedding between split trees with node labels.
pub fn search_gap(
    t1: &LabelledTree,
    s1: &Split,
    t2: &LabelledTree,
    s2: &Split,
    labels: Option<NodeLabels<'_>>,
    deadline: Deadline,
) -> Result<Option<Vec<NodeId>>> {
    let node_ok = |x: NodeId, v: NodeId| labels.is_none_or(|l| l.order.le(l.left[x], l.right[v]));
    let edge_ok = |_x: NodeId, u: NodeId, a: NodeId, w: NodeId| gap_or_inf(t2, s2, u, w) >= s1.value(a);
    let mut search = Search {
        t1,
        t2,
        node_ok,
        edge_ok,
        glued: vec![false; t1.n()],
        memo: HashMap::new(),
        ticker: Ticker::new(deadline),
    };
    deadline.check()?;
    let r1 = t1.root();
    let roots: Vec<NodeId> = t2.nodes().filter(|&v| gap_or_inf(t2, s2, t2.root(), v) >= s1.value(r1)).collect();
    search.run(roots)
}

/// Checks that gaps above a node are not narrowed by the witness: for `u ⊲ v` with
/// `spt1(u : v) > spt1(v) = k`, the image satisfies `spt2(h(u) : h(v)) ≥ k`.
pub fn check_gap_consequence(m1: &MarkedNestedTree, m2: &MarkedNestedTree, w: &GapWitness) -> Option<(NodeId, NodeId)> {
    let t1 = &m1.tree;
    let h = &w.map;
    for u in t1.nodes() {
        for v in t1.subtree(u).skip(1) {
            let k = m1.split.value(v);
            if m1.gap_or_inf(u, v) > k && m2.gap_or_inf(h[u], h[v]) < k {
                return Some((u, v));
            }
        }
    }
    None
}

/// How a witness failed to transport products or the interpreted graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InterpConsequenceFailure {
    Product { x: NodeId, y: NodeId, left: Element, right: Element },
    Graph(String),
}

/// Checks that products between marked nodes are preserved and that the graph on marked
/// leaves embeds through the restriction of the witness.
pub fn check_interp_consequence(
    i: &MonoidInterpretation,
    m1: &MarkedNestedTree,
    m2: &MarkedNestedTree,
    w: &GapWitness,
) -> Result<Option<InterpConsequenceFailure>> {
    let (t1, t2) = (&m1.tree, &m2.tree);
    let h = &w.map;
    for x in t1.nodes().filter(|&x| m1.mark(x) == Mark::M) {
        for y in t1.subtree(x).skip(1).filter(|&y| m1.mark(y) == Mark::M) {
            let (left, right) = (t1.tlbl_unchecked(x, y), t2.tlbl_unchecked(h[x], h[y]));
            if left != right {
                return Ok(Some(InterpConsequenceFailure::Product { x, y, left, right }));
            }
        }
    }
    let g1 = i.interpret_marked(m1)?;
    let g2 = i.interpret_marked(m2)?;
    let l1 = marked_leaves(m1);
    let l2 = marked_leaves(m2);
    let pos2: HashMap<NodeId, usize> = l2.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut map = Vec::with_capacity(l1.len());
    for &x in &l1 {
        match pos2.get(&h[x]) {
            Some(&p) => map.push(p),
            None => return Ok(Some(InterpConsequenceFailure::Graph(format!("leaf {x} leaves the marked leaves")))),
        }
    }
    let ord = LabelOrder::equality_for(&[&g1, &g2]);
    Ok(verify_embedding(&g1, &g2, &ord, &map, true).err().map(|e| InterpConsequenceFailure::Graph(e.to_string())))
}

/// Composition of two witnesses, re-checked against the definition.
pub fn compose(
    m1: &MarkedNestedTree,
    m3: &MarkedNestedTree,
    first: &GapWitness,
    second: &GapWitness,
    order: Option<&LabelOrder>,
) -> std::result::Result<GapWitness, GapClause> {
    let map: Vec<NodeId> = first.map.iter().map(|&v| second.map[v]).collect();
    match check_marked_gap(m1, m3, &map, order) {
        None => Ok(GapWitness { map, checked_items: first.checked_items.clone() }),
        Some(c) => Err(c),
    }
}

/// Node label of the encoded tree. Two labels compare when every component is equal,
/// except `user`, which follows the caller's order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EncodedLabel {
    pub root: bool,
    pub leaf: bool,
    pub mark: Mark,
    pub left: Option<Element>,
    pub right: Option<Element>,
    pub neighbourhood: Vec<Option<Element>>,
    pub chain_position: Option<u32>,
    pub user: Option<usize>,
}

impl EncodedLabel {
    pub fn le(&self, other: &EncodedLabel, user_order: Option<&LabelOrder>) -> bool {
        let user = match (self.user, other.user, user_order) {
            (None, None, _) => true,
            (Some(a), Some(b), Some(o)) => o.le(a, b),
            (Some(a), Some(b), None) => a == b,
            _ => false,
        };
        user && self.root == other.root
            && self.leaf == other.leaf
            && self.mark == other.mark
            && self.left == other.left
            && self.right == other.right
            && self.neighbourhood == other.neighbourhood
            && self.chain_position == other.chain_position
    }
}

/// Whether encoded labels record each live node's position inside its chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ChainPositions {
    #[default]
    Record,
    Omit,
}

/// A node-labelled tree with the modified split, ready for plain gap-embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedTree {
    pub tree: LabelledTree,
    pub split: Split,
    pub labels: Vec<EncodedLabel>,
}

/// Encodes an `L`-bounded marked nested tree so that plain gap-embeddings between
/// encodings are glued on live nodes.
///
/// Dummy nodes keep their split value; the `i`-th node of a maximal chain of live nodes
/// gets `N + 1 + i`. The split height becomes `N + 1 + L`.
pub fn encode_dershowitz(m: &MarkedNestedTree, l: usize) -> Result<EncodedTree> {
    encode_dershowitz_with(m, l, ChainPositions::Record)
}

pub fn encode_dershowitz_with(m: &MarkedNestedTree, l: usize, chain: ChainPositions) -> Result<EncodedTree> {
    if !m.is_l_bounded(l) {
        return Err(Error::NotBounded(l));
    }
    let t = &m.tree;
    let n = m.height();
    let mut values = Vec::with_capacity(t.n());
    let mut position = vec![0u32; t.n()];
    for x in t.nodes() {
        if m.mark(x).is_dummy() {
            values.push(m.split.value(x));
        } else {
            position[x] = 1 + t.parent(x).map_or(0, |p| position[p]);
            values.push(n + 1 + position[x]);
        }
    }
    let split = Split::new(t, n + 1 + l as u32, values)?;
    let labels = t
        .nodes()
        .map(|x| EncodedLabel {
            root: x == t.root(),
            leaf: t.is_leaf(x),
            mark: m.mark(x),
            left: t.left(x).map(|c| t.edge_label(c)),
            right: t.right(x).map(|c| t.edge_label(c)),
            neighbourhood: (1..=n).map(|k| m.neighbourhood_product(x, k)).collect(),
            chain_position: match chain {
                ChainPositions::Record if position[x] > 0 => Some(position[x]),
                _ => None,
            },
            user: m.node_labels().map(|u| u[x]),
        })
        .collect();
    Ok(EncodedTree { tree: t.clone(), split, labels })
}

/// Plain gap-embedding search between two encodings.
pub fn search_encoded(
    e1: &EncodedTree,
    e2: &EncodedTree,
    user_order: Option<&LabelOrder>,
    deadline: Deadline,
) -> Result<Option<Vec<NodeId>>> {
    // encoded labels are interned so that the generic label check applies
    let mut distinct: Vec<&EncodedLabel> = Vec::new();
    let mut ids = Vec::with_capacity(e1.labels.len() + e2.labels.len());
    for l in e1.labels.iter().chain(&e2.labels) {
        let id = distinct.iter().position(|d| *d == l).unwrap_or_else(|| {
            distinct.push(l);
            distinct.len() - 1
        });
        ids.push(id);
    }
    let (left, right) = ids.split_at(e1.labels.len());
    let pairs: Vec<(usize, usize)> = (0..distinct.len())
        .flat_map(|a| (0..distinct.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && distinct[a].le(distinct[b], user_order))
        .collect();
    let order = LabelOrder::new((0..distinct.len()).map(|i| i.to_string()).collect(), &pairs)?;
    let labels = NodeLabels { left, right, order: &order };
    search_gap(&e1.tree, &e1.split, &e2.tree, &e2.split, Some(labels), deadline)
}

/// Reads a plain gap-embedding between encodings back as a map between the marked trees
/// and reports the first marked clause it breaks, ignoring the gap clauses of the original
/// splits; see [`pullback_original_gap`] for those.
pub fn pullback_clause(m1: &MarkedNestedTree, m2: &MarkedNestedTree, h: &[NodeId], order: Option<&LabelOrder>) -> Option<GapClause> {
    let (t1, t2) = (&m1.tree, &m2.tree);
    if let Some(c) = check_tree_embedding(t1, t2, h) {
        return Some(c);
    }
    if let Some(l) = labels_of(m1, m2, order) {
        if let Some(x) = t1.nodes().find(|&x| !l.order.le(l.left[x], l.right[h[x]])) {
            return Some(GapClause::NodeLabel { x });
        }
    }
    if h[t1.root()] != t2.root() {
        return Some(GapClause::Root);
    }
    for x in t1.nodes() {
        if let Some(c) = node_clause(m1, m2, x, h[x]) {
            return Some(c);
        }
    }
    check_gluing(m1, t2, h)
}

/// Root and edge gap conditions of a pulled-back map with respect to the original splits.
pub fn pullback_original_gap(m1: &MarkedNestedTree, m2: &MarkedNestedTree, h: &[NodeId]) -> Option<GapClause> {
    check_gap(&m1.tree, &m1.split, &m2.tree, &m2.split, h, None)
}
