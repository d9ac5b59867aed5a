//! Full binary ordered trees with monoid-labelled edges.
//!
//! Nodes are numbered in preorder, so the root is `0`, every subtree occupies a
//! contiguous index range, and for incomparable nodes preorder coincides with the
//! sibling order.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monoid::{Element, FiniteMonoid};

pub type NodeId = usize;

/// Recursive description of a tree, used for construction and serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Leaf,
    Node { l: Element, left: Box<Shape>, r: Element, right: Box<Shape> },
}

impl Shape {
    pub fn node(l: Element, left: Shape, r: Element, right: Shape) -> Shape {
        Shape::Node { l, left: Box::new(left), r, right: Box::new(right) }
    }

    pub fn size(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Node { left, right, .. } => 1 + left.size() + right.size(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledTree {
    monoid: Arc<FiniteMonoid>,
    parent: Vec<Option<NodeId>>,
    children: Vec<Option<(NodeId, NodeId)>>,
    edge: Vec<Element>,
    depth: Vec<usize>,
    size: Vec<usize>,
}

impl LabelledTree {
    pub fn from_shape(monoid: Arc<FiniteMonoid>, shape: &Shape) -> Result<Self> {
        let mut t = LabelledTree {
            monoid,
            parent: Vec::new(),
            children: Vec::new(),
            edge: Vec::new(),
            depth: Vec::new(),
            size: Vec::new(),
        };
        let id = t.monoid.identity();
        // explicit stack keeps deep caterpillars off the call stack
        enum Job<'a> {
            Visit(&'a Shape, Option<NodeId>, Element, bool),
            Close(NodeId),
        }
        let mut stack = vec![Job::Visit(shape, None, id, false)];
        let mut pending_left: Vec<(NodeId, NodeId)> = Vec::new();
        while let Some(job) = stack.pop() {
            match job {
                Job::Visit(s, parent, label, is_right) => {
                    t.monoid.check(label)?;
                    let me = t.parent.len();
                    t.parent.push(parent);
                    t.children.push(None);
                    t.edge.push(label);
                    t.depth.push(parent.map_or(0, |p| t.depth[p] + 1));
                    t.size.push(1);
                    if let Some(p) = parent {
                        if is_right {
                            let l = pending_left.iter().rposition(|&(q, _)| q == p).expect("left child first");
                            let (_, left) = pending_left.remove(l);
                            t.children[p] = Some((left, me));
                        } else {
                            pending_left.push((p, me));
                        }
                    }
                    if let Shape::Node { l, left, r, right } = s {
                        stack.push(Job::Close(me));
                        stack.push(Job::Visit(right, Some(me), *r, true));
                        stack.push(Job::Visit(left, Some(me), *l, false));
                    }
                }
                Job::Close(me) => {
                    let (a, b) = t.children[me].expect("closed after both children");
                    t.size[me] = 1 + t.size[a] + t.size[b];
                }
            }
        }
        Ok(t)
    }

    /// Builds a tree from arbitrary node ids, renumbering into preorder.
    ///
    /// `children[v]` must have zero or two entries (left first); `edge[v]` is the label
    /// of the edge into `v` and is ignored for the root. Returns the tree and the map
    /// from input ids to preorder ids.
    pub fn from_parts(
        monoid: Arc<FiniteMonoid>,
        root: usize,
        children: &[Vec<usize>],
        edge: &[Element],
    ) -> Result<(Self, Vec<NodeId>)> {
        let n = children.len();
        if edge.len() != n {
            return Err(Error::MalformedTree(format!("{} edge labels for {} nodes", edge.len(), n)));
        }
        if root >= n {
            return Err(Error::InvalidNode(root));
        }
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            if v >= n {
                return Err(Error::InvalidNode(v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::MalformedTree(format!("node {v} is reachable twice")));
            }
            order.push(v);
            match children[v].as_slice() {
                [] => {}
                [a, b] => {
                    stack.push(*b);
                    stack.push(*a);
                }
                _ => return Err(Error::NotFullBinary(v)),
            }
        }
        if order.len() != n {
            return Err(Error::MalformedTree("some nodes are unreachable from the root".into()));
        }
        let mut renum = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            renum[v] = i;
        }
        fn shape_of(v: usize, children: &[Vec<usize>], edge: &[Element]) -> Shape {
            match children[v].as_slice() {
                [a, b] => Shape::node(edge[*a], shape_of(*a, children, edge), edge[*b], shape_of(*b, children, edge)),
                _ => Shape::Leaf,
            }
        }
        let t = LabelledTree::from_shape(monoid, &shape_of(root, children, edge))?;
        Ok((t, renum))
    }

    pub fn single(monoid: Arc<FiniteMonoid>) -> Self {
        LabelledTree::from_shape(monoid, &Shape::Leaf).expect("single node")
    }

    /// Caterpillar with one spine node per cell: the cell's first label goes to the
    /// spine node's left leaf, the second to the edge continuing the spine. The last
    /// spine node's right child is a leaf.
    pub fn build_linear(monoid: Arc<FiniteMonoid>, cells: &[(Element, Element)]) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Empty("linear tree cells"));
        }
        let mut shape = Shape::Leaf;
        for &(l, r) in cells.iter().rev() {
            shape = Shape::node(l, Shape::Leaf, r, shape);
        }
        LabelledTree::from_shape(monoid, &shape)
    }

    pub fn to_shape(&self) -> Shape {
        self.shape_at(self.root())
    }

    pub fn shape_at(&self, x: NodeId) -> Shape {
        match self.children[x] {
            None => Shape::Leaf,
            Some((a, b)) => Shape::node(self.edge[a], self.shape_at(a), self.edge[b], self.shape_at(b)),
        }
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.n()
    }

    pub fn check(&self, x: NodeId) -> Result<NodeId> {
        if x < self.n() {
            Ok(x)
        } else {
            Err(Error::InvalidNode(x))
        }
    }

    pub fn parent(&self, x: NodeId) -> Option<NodeId> {
        self.parent[x]
    }

    pub fn children(&self, x: NodeId) -> Option<(NodeId, NodeId)> {
        self.children[x]
    }

    pub fn left(&self, x: NodeId) -> Option<NodeId> {
        self.children[x].map(|c| c.0)
    }

    pub fn right(&self, x: NodeId) -> Option<NodeId> {
        self.children[x].map(|c| c.1)
    }

    pub fn is_leaf(&self, x: NodeId) -> bool {
        self.children[x].is_none()
    }

    /// Whether `x` is the left child of its parent.
    pub fn is_left_child(&self, x: NodeId) -> bool {
        self.parent[x].is_some_and(|p| self.left(p) == Some(x))
    }

    /// Label of the edge entering `x`; the identity at the root.
    pub fn edge_label(&self, x: NodeId) -> Element {
        self.edge[x]
    }

    pub fn depth(&self, x: NodeId) -> usize {
        self.depth[x]
    }

    pub fn subtree_size(&self, x: NodeId) -> usize {
        self.size[x]
    }

    /// Nodes of the subtree rooted at `x`, in preorder.
    pub fn subtree(&self, x: NodeId) -> std::ops::Range<NodeId> {
        x..x + self.size[x]
    }

    /// `x ⊴ y`: `x` is an ancestor of `y` or equal to it.
    #[inline]
    pub fn is_ancestor(&self, x: NodeId, y: NodeId) -> bool {
        x <= y && y < x + self.size[x]
    }

    #[inline]
    pub fn is_strict_ancestor(&self, x: NodeId, y: NodeId) -> bool {
        x != y && self.is_ancestor(x, y)
    }

    /// `x` lies strictly to the left of `y` in the sibling order (they are incomparable).
    pub fn left_of(&self, x: NodeId, y: NodeId) -> bool {
        x < y && !self.is_ancestor(x, y)
    }

    pub fn lca(&self, x: NodeId, y: NodeId) -> Result<NodeId> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.lca_unchecked(x, y))
    }

    pub(crate) fn lca_unchecked(&self, mut x: NodeId, mut y: NodeId) -> NodeId {
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].expect("deeper node has a parent");
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].expect("deeper node has a parent");
        }
        while x != y {
            x = self.parent[x].expect("non-root");
            y = self.parent[y].expect("non-root");
        }
        x
    }

    /// Nodes from `x` down to `y` inclusive, for `x ⊴ y`.
    pub fn path(&self, x: NodeId, y: NodeId) -> Result<Vec<NodeId>> {
        self.check(x)?;
        self.check(y)?;
        if !self.is_ancestor(x, y) {
            return Err(Error::NotAncestor { ancestor: x, node: y });
        }
        let mut p = vec![y];
        let mut cur = y;
        while cur != x {
            cur = self.parent[cur].expect("below x");
            p.push(cur);
        }
        p.reverse();
        Ok(p)
    }

    /// Product of the edge labels on the downward path from `x` to `y`.
    pub fn tlbl(&self, x: NodeId, y: NodeId) -> Result<Element> {
        let p = self.path(x, y)?;
        Ok(self.monoid.product(p[1..].iter().map(|&v| self.edge[v])))
    }

    pub(crate) fn tlbl_unchecked(&self, x: NodeId, y: NodeId) -> Element {
        let mut acc = self.monoid.identity();
        let mut cur = y;
        while cur != x {
            acc = self.monoid.mul(self.edge[cur], acc);
            cur = self.parent[cur].expect("x is an ancestor of y");
        }
        acc
    }

    /// Leaves from left to right.
    pub fn leaves_in_order(&self) -> Vec<NodeId> {
        self.nodes().filter(|&x| self.is_leaf(x)).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.children.iter().filter(|c| c.is_none()).count()
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Replaces the edge labels through `f`, keeping the shape.
    pub fn map_labels(&self, monoid: Arc<FiniteMonoid>, f: impl Fn(Element) -> Element) -> Result<Self> {
        let mut t = self.clone();
        t.monoid = monoid;
        for x in 1..t.n() {
            t.edge[x] = t.monoid.check(f(self.edge[x]))?;
        }
        t.edge[0] = t.monoid.identity();
        Ok(t)
    }

    /// Turns `leaf` into an internal node whose children are a fresh leaf (edge labelled
    /// by the identity) and the root of `other` (edge labelled `label`); `fresh_left`
    /// chooses the side of the fresh leaf.
    ///
    /// Returns the new tree and the image of every old node; `leaf` is sent to the fresh leaf.
    pub fn graft(&self, leaf: NodeId, other: &LabelledTree, label: Element, fresh_left: bool) -> Result<(Self, Vec<NodeId>)> {
        self.check(leaf)?;
        if !self.is_leaf(leaf) {
            return Err(Error::InvalidArgument(format!("node {leaf} is not a leaf")));
        }
        if self.monoid != other.monoid {
            return Err(Error::MonoidMismatch);
        }
        let id = self.monoid.identity();
        let off = self.n();
        let fresh = off + other.n();
        let total = fresh + 1;
        let mut children = vec![Vec::new(); total];
        let mut edge = vec![id; total];
        for x in self.nodes() {
            if let Some((a, b)) = self.children[x] {
                children[x] = vec![a, b];
            }
            edge[x] = self.edge[x];
        }
        for x in other.nodes() {
            if let Some((a, b)) = other.children[x] {
                children[off + x] = vec![off + a, off + b];
            }
            edge[off + x] = other.edge[x];
        }
        edge[off] = self.monoid.check(label)?;
        edge[fresh] = id;
        children[leaf] = if fresh_left { vec![fresh, off] } else { vec![off, fresh] };
        let (t, renum) = LabelledTree::from_parts(self.monoid.clone(), 0, &children, &edge)?;
        let mut map: Vec<NodeId> = self.nodes().map(|x| renum[x]).collect();
        map[leaf] = renum[fresh];
        Ok((t, map))
    }
}
