//! Boughs of split trees: backbones, blocks, contexts, bough types and the
//! five-copy certificate for perfect boughs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::deadline::{Deadline, Ticker};
use crate::error::{Error, Result};
use crate::graph::{verify_embedding, LabelOrder, LabelledGraph};
use crate::interp::MonoidInterpretation;
use crate::monoid::Element;
use crate::split::{gap_unchecked, validate_ramseyan, Split};
use crate::tree::{LabelledTree, NodeId, Shape};

/// Backbone `b0 ⊴ … ⊴ bn` of a bough of level `k`, as node ids of its host tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bough {
    pub backbone: Vec<NodeId>,
    pub level: u32,
}

fn gap_or_inf(t: &LabelledTree, s: &Split, x: NodeId, y: NodeId) -> u32 {
    if t.parent(y) == Some(x) {
        u32::MAX
    } else {
        gap_unchecked(t, s, x, y)
    }
}

impl Bough {
    /// Checks the backbone against its host; the last node must be internal.
    pub fn new(t: &LabelledTree, s: &Split, backbone: Vec<NodeId>, level: u32) -> Result<Self> {
        let bad = |why: String| Err(Error::MalformedBough(why));
        if backbone.len() < 2 {
            return bad("a backbone needs at least two nodes".into());
        }
        for &b in &backbone {
            t.check(b)?;
        }
        for w in backbone.windows(2) {
            let (a, b) = (w[0], w[1]);
            if !t.is_strict_ancestor(a, b) {
                return bad(format!("{a} is not above {b}"));
            }
            if s.value(a) != level {
                return bad(format!("node {a} has value {} instead of {level}", s.value(a)));
            }
            if gap_or_inf(t, s, a, b) <= level {
                return bad(format!("gap between {a} and {b} is at most {level}"));
            }
        }
        let last = *backbone.last().expect("non-empty");
        if t.is_leaf(last) {
            return bad(format!("last backbone node {last} is a leaf"));
        }
        Ok(Bough { backbone, level })
    }

    pub fn dimension(&self) -> usize {
        self.backbone.len() - 1
    }

    pub fn first(&self) -> NodeId {
        self.backbone[0]
    }

    pub fn last(&self) -> NodeId {
        *self.backbone.last().expect("non-empty")
    }

    /// `tlbl(b0, b1)`.
    pub fn first_idempotent(&self, t: &LabelledTree) -> Element {
        t.tlbl_unchecked(self.backbone[0], self.backbone[1])
    }

    /// Nodes `x` with `bi ⊴ x` and not `bj ⊴ x`.
    pub fn block_between(&self, t: &LabelledTree, i: usize, j: usize) -> Vec<NodeId> {
        let (bi, bj) = (self.backbone[i], self.backbone[j]);
        t.subtree(bi).filter(|&x| !t.is_ancestor(bj, x)).collect()
    }

    /// The `dimension` blocks, in backbone order.
    pub fn blocks(&self, t: &LabelledTree) -> Vec<Vec<NodeId>> {
        (0..self.dimension()).map(|i| self.block_between(t, i, i + 1)).collect()
    }

    /// Block index of a node of the bough, `None` for `bn` and outside nodes.
    pub fn block_of(&self, t: &LabelledTree, x: NodeId) -> Option<usize> {
        if !t.is_ancestor(self.first(), x) || t.is_ancestor(self.last(), x) {
            return None;
        }
        Some(self.backbone.iter().rposition(|&b| t.is_ancestor(b, x)).expect("below b0"))
    }

    /// Leaves lying in some block, in sibling order.
    pub fn leaves(&self, t: &LabelledTree) -> Vec<NodeId> {
        let bn = self.last();
        t.subtree(self.first()).filter(|&x| t.is_leaf(x) && !t.is_ancestor(bn, x)).collect()
    }
}

/// All maximal backbones of internal `k`-valued nodes with dimension at least `min_dim`.
///
/// Consecutive backbone nodes are `k`-neighbours; the backbone ends at an internal node
/// with no further internal `k`-neighbour below it.
pub fn enumerate_boughs(t: &LabelledTree, s: &Split, k: u32, min_dim: usize) -> Vec<Bough> {
    let is_member = |x: NodeId| s.value(x) == k && !t.is_leaf(x);
    // predecessor: closest ancestor valued at most k, when it is a member
    let mut pred: Vec<Option<NodeId>> = vec![None; t.n()];
    let mut has_succ = vec![false; t.n()];
    for x in t.nodes().filter(|&x| is_member(x)) {
        let mut cur = t.parent(x);
        while let Some(z) = cur {
            if s.value(z) <= k {
                if s.value(z) == k {
                    pred[x] = Some(z);
                    has_succ[z] = true;
                }
                break;
            }
            cur = t.parent(z);
        }
    }
    let mut out = Vec::new();
    for x in t.nodes().filter(|&x| is_member(x) && !has_succ[x]) {
        let mut backbone = vec![x];
        while let Some(p) = pred[*backbone.last().expect("non-empty")] {
            backbone.push(p);
        }
        backbone.reverse();
        if backbone.len() > min_dim.max(1) {
            out.push(Bough { backbone, level: k });
        }
    }
    out.sort_by(|a, b| a.backbone.cmp(&b.backbone));
    out
}

/// A bough cut out of its host: a tree rooted at `b0` in which `bn` is a leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoughTree {
    pub tree: LabelledTree,
    pub split: Split,
    pub backbone: Vec<NodeId>,
    pub level: u32,
}

impl BoughTree {
    pub fn dimension(&self) -> usize {
        self.backbone.len() - 1
    }

    pub fn first_idempotent(&self) -> Element {
        self.tree.tlbl_unchecked(self.backbone[0], self.backbone[1])
    }

    /// Leaves other than `bn`, in sibling order.
    pub fn block_leaves(&self) -> Vec<NodeId> {
        let bn = *self.backbone.last().expect("non-empty");
        self.tree.leaves_in_order().into_iter().filter(|&x| x != bn).collect()
    }
}

/// `C[□]`: a tree with a hole leaf plus the two trees hanging below `bn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoughContext {
    pub root: LabelledTree,
    pub root_split: Split,
    pub hole: NodeId,
    pub left: LabelledTree,
    pub left_split: Split,
    pub right: LabelledTree,
    pub right_split: Split,
    pub m_left: Element,
    pub m_right: Element,
}

impl BoughContext {
    /// Leaves of the three context trees, the hole excluded.
    pub fn leaf_count(&self) -> usize {
        self.root.leaf_count() - 1 + self.left.leaf_count() + self.right.leaf_count()
    }
}

// Mutable node soup used to assemble trees before numbering them in preorder.
#[derive(Default)]
struct Soup {
    children: Vec<Option<(usize, usize)>>,
    edge: Vec<Element>,
    value: Vec<u32>,
}

impl Soup {
    fn push(&mut self, edge: Element, value: u32) -> usize {
        self.children.push(None);
        self.edge.push(edge);
        self.value.push(value);
        self.children.len() - 1
    }

    /// Copies the subtree of `x`, dropping the children of `cut`. With `into`, the root's
    /// children and value go to that existing slot, which keeps its edge label.
    fn copy(&mut self, t: &LabelledTree, s: &Split, x: NodeId, cut: Option<NodeId>, into: Option<usize>) -> HashMap<NodeId, usize> {
        let mut map = HashMap::new();
        let root = match into {
            Some(slot) => {
                self.value[slot] = s.value(x);
                slot
            }
            None => self.push(t.edge_label(x), s.value(x)),
        };
        map.insert(x, root);
        let mut stack = vec![x];
        while let Some(v) = stack.pop() {
            if Some(v) == cut {
                continue;
            }
            if let Some((a, b)) = t.children(v) {
                let na = self.push(t.edge_label(a), s.value(a));
                let nb = self.push(t.edge_label(b), s.value(b));
                self.children[map[&v]] = Some((na, nb));
                map.insert(a, na);
                map.insert(b, nb);
                stack.push(a);
                stack.push(b);
            }
        }
        map
    }

    fn finish(&self, t: &LabelledTree, root: usize, height: u32) -> Result<(LabelledTree, Split, Vec<NodeId>)> {
        let mut renum = vec![usize::MAX; self.children.len()];
        let mut values = Vec::new();
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            renum[v] = values.len();
            values.push(self.value[v]);
            if let Some((a, b)) = self.children[v] {
                stack.push(b);
                stack.push(a);
            }
        }
        fn shape(s: &Soup, v: usize) -> Shape {
            match s.children[v] {
                None => Shape::Leaf,
                Some((a, b)) => Shape::node(s.edge[a], shape(s, a), s.edge[b], shape(s, b)),
            }
        }
        let tree = LabelledTree::from_shape(t.monoid().clone(), &shape(self, root))?;
        let height = height.max(values.iter().copied().max().unwrap_or(1));
        let split = Split::new(&tree, height, values)?;
        Ok((tree, split, renum))
    }
}

fn extract(t: &LabelledTree, s: &Split, x: NodeId, cut: Option<NodeId>) -> Result<(LabelledTree, Split, HashMap<NodeId, NodeId>)> {
    let mut soup = Soup::default();
    let map = soup.copy(t, s, x, cut, None);
    let (tree, split, renum) = soup.finish(t, 0, s.height())?;
    Ok((tree, split, map.into_iter().map(|(k, v)| (k, renum[v])).collect()))
}

/// Splits `t` into a context and the bough, and lists the blocks as host node ids.
pub fn decompose(t: &LabelledTree, s: &Split, b: &Bough) -> Result<(BoughContext, BoughTree, Vec<Vec<NodeId>>)> {
    Bough::new(t, s, b.backbone.clone(), b.level)?;
    let (b0, bn) = (b.first(), b.last());
    let (root, root_split, rmap) = extract(t, s, t.root(), Some(b0))?;
    let (tree, split, bmap) = extract(t, s, b0, Some(bn))?;
    let (l, r) = t.children(bn).expect("internal");
    let (left, left_split, _) = extract(t, s, l, None)?;
    let (right, right_split, _) = extract(t, s, r, None)?;
    let ctx = BoughContext {
        root,
        root_split,
        hole: rmap[&b0],
        left,
        left_split,
        right,
        right_split,
        m_left: t.edge_label(l),
        m_right: t.edge_label(r),
    };
    let bt = BoughTree { tree, split, backbone: b.backbone.iter().map(|x| bmap[x]).collect(), level: b.level };
    Ok((ctx, bt, b.blocks(t)))
}

/// `C[B]` with the positions of every part inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substituted {
    pub tree: LabelledTree,
    pub split: Split,
    /// Image of each node of the context root tree; the hole goes to `b0`.
    pub root_map: Vec<NodeId>,
    pub bough_map: Vec<NodeId>,
    pub left_map: Vec<NodeId>,
    pub right_map: Vec<NodeId>,
}

impl Substituted {
    /// The bough inside the assembled tree.
    pub fn bough(&self, b: &BoughTree) -> Bough {
        Bough { backbone: b.backbone.iter().map(|&x| self.bough_map[x]).collect(), level: b.level }
    }

    /// Images of the context leaves, in the order root tree, left tree, right tree.
    pub fn context_leaves(&self, c: &BoughContext) -> Vec<NodeId> {
        let root = c.root.leaves_in_order().into_iter().filter(|&x| x != c.hole).map(|x| self.root_map[x]);
        let left = c.left.leaves_in_order().into_iter().map(|x| self.left_map[x]);
        let right = c.right.leaves_in_order().into_iter().map(|x| self.right_map[x]);
        root.chain(left).chain(right).collect()
    }
}

fn dense(map: &HashMap<NodeId, usize>, n: usize, renum: &[NodeId]) -> Vec<NodeId> {
    (0..n).map(|x| renum[map[&x]]).collect()
}

/// Plugs `b` into the hole and hangs the context's left and right trees below `bn`.
pub fn substitute(c: &BoughContext, b: &BoughTree) -> Result<Substituted> {
    let t = &c.root;
    if !c.root.is_leaf(c.hole) {
        return Err(Error::MalformedBough(format!("hole {} is not a leaf", c.hole)));
    }
    let mut soup = Soup::default();
    let rmap = soup.copy(t, &c.root_split, t.root(), None, None);
    let bmap = soup.copy(&b.tree, &b.split, b.tree.root(), None, Some(rmap[&c.hole]));
    let lmap = soup.copy(&c.left, &c.left_split, c.left.root(), None, None);
    let rrmap = soup.copy(&c.right, &c.right_split, c.right.root(), None, None);
    let bn = bmap[b.backbone.last().expect("non-empty")];
    let (lr, rr) = (lmap[&c.left.root()], rrmap[&c.right.root()]);
    soup.edge[lr] = c.m_left;
    soup.edge[rr] = c.m_right;
    soup.children[bn] = Some((lr, rr));
    let height = [&c.root_split, &b.split, &c.left_split, &c.right_split].iter().map(|s| s.height()).max().unwrap_or(1);
    let (tree, split, renum) = soup.finish(t, rmap[&t.root()], height)?;
    Ok(Substituted {
        root_map: dense(&rmap, t.n(), &renum),
        bough_map: dense(&bmap, b.tree.n(), &renum),
        left_map: dense(&lmap, c.left.n(), &renum),
        right_map: dense(&rrmap, c.right.n(), &renum),
        tree,
        split,
    })
}

/// `copies` copies of `b` chained by merging each copy's `bn` with the next copy's `b0`.
///
/// Returns the chained bough and, for each copy, the image of every node of `b`.
pub fn power_bough(b: &BoughTree, copies: usize) -> Result<(BoughTree, Vec<Vec<NodeId>>)> {
    if copies == 0 {
        return Err(Error::InvalidArgument("a power needs at least one copy".into()));
    }
    let t = &b.tree;
    let bn = *b.backbone.last().expect("non-empty");
    let mut soup = Soup::default();
    let mut maps = Vec::with_capacity(copies);
    let mut slot = None;
    for _ in 0..copies {
        let map = soup.copy(t, &b.split, t.root(), None, slot);
        slot = Some(map[&bn]);
        maps.push(map);
    }
    let (tree, split, renum) = soup.finish(t, 0, b.split.height())?;
    let maps: Vec<Vec<NodeId>> = maps.iter().map(|m| dense(m, t.n(), &renum)).collect();
    let mut backbone = vec![maps[0][b.backbone[0]]];
    for m in &maps {
        backbone.extend(b.backbone[1..].iter().map(|&x| m[x]));
    }
    Ok((BoughTree { tree, split, backbone, level: b.level }, maps))
}

/// `⟨BrootL, BlL, BtL, BrL⟩` of a leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoughType {
    pub root_part: Element,
    pub left_part: Element,
    pub top_part: Element,
    pub right_part: Element,
}

impl BoughType {
    /// The three parts that do not depend on the path from the root to `Bl`.
    pub fn local(&self) -> (Element, Element, Element) {
        (self.left_part, self.top_part, self.right_part)
    }
}

/// Reference points `(Bt, Bl, Br)` of a leaf: `Bt = lca(x, bn)` and the surrounding
/// backbone nodes.
pub fn reference_points(t: &LabelledTree, b: &Bough, x: NodeId) -> Result<(NodeId, NodeId, NodeId)> {
    t.check(x)?;
    if !t.is_leaf(x) || b.block_of(t, x).is_none() {
        return Err(Error::InvalidArgument(format!("node {x} is not a leaf of a block")));
    }
    let top = t.lca_unchecked(x, b.last());
    let left = *b.backbone.iter().rev().find(|&&z| t.is_ancestor(z, top)).expect("b0 is above");
    let right = *b.backbone.iter().find(|&&z| t.is_ancestor(top, z)).expect("bn is below");
    Ok((top, left, right))
}

pub fn bough_type(t: &LabelledTree, b: &Bough, x: NodeId) -> Result<BoughType> {
    let (top, left, right) = reference_points(t, b, x)?;
    Ok(BoughType {
        root_part: t.tlbl_unchecked(t.root(), left),
        left_part: t.tlbl_unchecked(left, top),
        top_part: t.tlbl_unchecked(top, x),
        right_part: t.tlbl_unchecked(top, right),
    })
}

/// Adjacency of two leaves from distinct blocks, computed from their bough types and the
/// backbone product between them.
pub fn adjacent_by_types(i: &MonoidInterpretation, t: &LabelledTree, b: &Bough, x: NodeId, y: NodeId) -> Result<bool> {
    let (bx, by) = (b.block_of(t, x), b.block_of(t, y));
    let (x, y) = match (bx, by) {
        (Some(p), Some(q)) if p < q => (x, y),
        (Some(p), Some(q)) if p > q => (y, x),
        _ => return Err(Error::InvalidArgument(format!("leaves {x} and {y} are not in distinct blocks"))),
    };
    let m = t.monoid();
    let (tx, ty) = (bough_type(t, b, x)?, bough_type(t, b, y)?);
    let (_, _, rx) = reference_points(t, b, x)?;
    let (_, ly, _) = reference_points(t, b, y)?;
    let between = t.tlbl_unchecked(rx, ly);
    let upper = m.mul(tx.root_part, tx.left_part);
    let lower = m.product([tx.right_part, between, ty.left_part, ty.top_part]);
    let triple = if x < y { (upper, tx.top_part, lower) } else { (upper, lower, tx.top_part) };
    Ok(i.accepts(triple))
}

/// Same first idempotent, and `C[H]` is forward Ramseyan.
pub fn compatible_in_context(c: &BoughContext, b: &BoughTree, h: &BoughTree) -> Result<bool> {
    if b.first_idempotent() != h.first_idempotent() {
        return Ok(false);
    }
    let ch = substitute(c, h)?;
    Ok(validate_ramseyan(&ch.tree, &ch.split).is_none())
}

fn graph_on(i: &MonoidInterpretation, t: &LabelledTree, leaves: &[NodeId]) -> Result<LabelledGraph> {
    i.interpret_on(t, leaves)
}

/// The graphs of `C[B]` and `C[H]` agree on the context leaves.
pub fn check_bough_replacement(i: &MonoidInterpretation, c: &BoughContext, b: &BoughTree, h: &BoughTree) -> Result<bool> {
    let cb = substitute(c, b)?;
    let ch = substitute(c, h)?;
    let gb = graph_on(i, &cb.tree, &cb.context_leaves(c))?;
    let gh = graph_on(i, &ch.tree, &ch.context_leaves(c))?;
    Ok(gb.edges() == gh.edges())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// Witness that a bough is perfect: bough leaves go to the first or the last of five
/// chained copies, everything else stays in place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectCertificate {
    /// Side of each block leaf of the bough, in sibling order.
    pub assignment: Vec<Side>,
    /// Vertex map from the graph of `C[B]` into the graph of `C[B⁵]`, both indexed by
    /// leaf position in sibling order.
    pub map: Vec<usize>,
    /// Blocks of `B⁵` holding no image.
    pub untouched_blocks: std::ops::Range<usize>,
}

const COPIES: usize = 5;

struct PerfectInstance {
    small: LabelledGraph,
    big: LabelledGraph,
    fixed: Vec<(usize, usize)>,
    // per block leaf: its vertex, and its candidate vertex on each side
    free: Vec<(usize, [usize; 2])>,
    untouched: std::ops::Range<usize>,
}

fn perfect_instance(i: &MonoidInterpretation, c: &BoughContext, b: &BoughTree) -> Result<Option<PerfectInstance>> {
    let one = substitute(c, b)?;
    let (pow, copy) = power_bough(b, COPIES)?;
    let five = substitute(c, &pow)?;
    let small = i.interpret(&one.tree)?;
    let big = i.interpret(&five.tree)?;
    let pos = |t: &LabelledTree| -> HashMap<NodeId, usize> { t.leaves_in_order().into_iter().enumerate().map(|(i, x)| (x, i)).collect() };
    let (p1, p5) = (pos(&one.tree), pos(&five.tree));
    let fixed = one.context_leaves(c).into_iter().zip(five.context_leaves(c)).map(|(a, z)| (p1[&a], p5[&z])).collect();
    let (b1, b5) = (one.bough(b), five.bough(&pow));
    let mut free = Vec::new();
    for x in b.block_leaves() {
        let v = one.bough_map[x];
        let l = five.bough_map[copy[0][x]];
        let r = five.bough_map[copy[COPIES - 1][x]];
        let ty = bough_type(&one.tree, &b1, v)?.local();
        let sides: Vec<bool> = [l, r].iter().map(|&w| bough_type(&five.tree, &b5, w).map(|t| t.local() == ty)).collect::<Result<_>>()?;
        let cand = [if sides[0] { p5[&l] } else { usize::MAX }, if sides[1] { p5[&r] } else { usize::MAX }];
        if cand == [usize::MAX; 2] {
            return Ok(None);
        }
        free.push((p1[&v], cand));
    }
    let d = b.dimension();
    Ok(Some(PerfectInstance { small, big, fixed, free, untouched: d..(COPIES - 1) * d }))
}

/// Searches the side assignments in sibling order, left first, for one inducing an
/// embedding of the graph of `C[B]` into that of `C[B⁵]` that fixes the context leaves and
/// preserves the local bough types.
pub fn is_perfect_bough(
    i: &MonoidInterpretation,
    c: &BoughContext,
    b: &BoughTree,
    deadline: Deadline,
) -> Result<Option<PerfectCertificate>> {
    deadline.check()?;
    let Some(inst) = perfect_instance(i, c, b)? else {
        return Ok(None);
    };
    let mut map = vec![usize::MAX; inst.small.n()];
    let mut placed: Vec<usize> = Vec::new();
    let consistent = |map: &[usize], placed: &[usize], v: usize| {
        placed.iter().all(|&u| inst.small.has_edge(u, v) == inst.big.has_edge(map[u], map[v]))
    };
    for &(v, w) in &inst.fixed {
        map[v] = w;
        if !consistent(&map, &placed, v) {
            return Ok(None);
        }
        placed.push(v);
    }
    let mut ticker = Ticker::new(deadline);
    let mut choice: Vec<usize> = Vec::with_capacity(inst.free.len());
    let mut next = 0usize;
    loop {
        ticker.tick()?;
        let depth = choice.len();
        if depth == inst.free.len() {
            break;
        }
        let (v, cand) = inst.free[depth];
        let mut advanced = false;
        for (side, &target) in cand.iter().enumerate().skip(next) {
            if target == usize::MAX {
                continue;
            }
            map[v] = target;
            if consistent(&map, &placed, v) {
                placed.push(v);
                choice.push(side);
                advanced = true;
                break;
            }
        }
        if advanced {
            next = 0;
            continue;
        }
        map[v] = usize::MAX;
        match choice.pop() {
            None => return Ok(None),
            Some(side) => {
                let u = placed.pop().expect("placed with its choice");
                map[u] = usize::MAX;
                next = side + 1;
            }
        }
    }
    let ord = LabelOrder::equality_for(&[&inst.small, &inst.big]);
    verify_embedding(&inst.small, &inst.big, &ord, &map, false)?;
    Ok(Some(PerfectCertificate {
        assignment: choice.into_iter().map(|s| if s == 0 { Side::Left } else { Side::Right }).collect(),
        map,
        untouched_blocks: inst.untouched,
    }))
}

/// Re-checks a certificate from scratch.
pub fn verify_perfect_certificate(
    i: &MonoidInterpretation,
    c: &BoughContext,
    b: &BoughTree,
    cert: &PerfectCertificate,
) -> Result<bool> {
    let Some(inst) = perfect_instance(i, c, b)? else {
        return Ok(false);
    };
    if cert.assignment.len() != inst.free.len() || cert.map.len() != inst.small.n() {
        return Ok(false);
    }
    if inst.fixed.iter().any(|&(v, w)| cert.map[v] != w) {
        return Ok(false);
    }
    for (&(v, cand), side) in inst.free.iter().zip(&cert.assignment) {
        let w = cand[if *side == Side::Left { 0 } else { 1 }];
        if w == usize::MAX || cert.map[v] != w {
            return Ok(false);
        }
    }
    let ord = LabelOrder::equality_for(&[&inst.small, &inst.big]);
    Ok(verify_embedding(&inst.small, &inst.big, &ord, &cert.map, false).is_ok())
}
