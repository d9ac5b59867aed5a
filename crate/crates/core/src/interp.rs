//! Monoid interpretations: graphs on the leaves of an edge-labelled tree.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::LabelledGraph;
use crate::monoid::{Element, FiniteMonoid, Morphism};
use crate::nested::{Mark, MarkedNestedTree};
use crate::tree::{LabelledTree, NodeId};

pub type Triple = (Element, Element, Element);

/// `(Σ, μ, M, P)`: leaves `x` left of `y` are adjacent iff
/// `(tlbl(root, lca), tlbl(lca, x), tlbl(lca, y))` lies in `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidInterpretation {
    morphism: Morphism,
    accepting: BTreeSet<Triple>,
}

/// Names accepted by [`MonoidInterpretation::builtin`].
pub const BUILTINS: [&str; 4] = ["cliques", "edgeless", "paths", "split-permutation"];

impl MonoidInterpretation {
    pub fn new(morphism: Morphism, accepting: impl IntoIterator<Item = Triple>) -> Result<Self> {
        let m = morphism.monoid().clone();
        let accepting: BTreeSet<Triple> = accepting.into_iter().collect();
        for &(a, b, c) in &accepting {
            m.check(a)?;
            m.check(b)?;
            m.check(c)?;
        }
        Ok(MonoidInterpretation { morphism, accepting })
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        self.morphism.monoid()
    }

    pub fn accepting(&self) -> &BTreeSet<Triple> {
        &self.accepting
    }

    pub fn accepts(&self, t: Triple) -> bool {
        self.accepting.contains(&t)
    }

    fn check_tree(&self, t: &LabelledTree) -> Result<()> {
        if **t.monoid() != **self.monoid() {
            return Err(Error::MonoidMismatch);
        }
        Ok(())
    }

    /// Whether leaves `x` (left) and `y` (right) are adjacent in the interpreted graph.
    pub fn adjacent(&self, t: &LabelledTree, x: NodeId, y: NodeId) -> bool {
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        let l = t.lca_unchecked(x, y);
        self.accepts((t.tlbl_unchecked(t.root(), l), t.tlbl_unchecked(l, x), t.tlbl_unchecked(l, y)))
    }

    /// Graph on `leaves`, vertex `i` being `leaves[i]`; the vertex order follows the sibling order.
    pub fn interpret_on(&self, t: &LabelledTree, leaves: &[NodeId]) -> Result<LabelledGraph> {
        self.check_tree(t)?;
        for &x in leaves {
            t.check(x)?;
            if !t.is_leaf(x) {
                return Err(Error::InvalidArgument(format!("node {x} is not a leaf")));
            }
        }
        let mut g = LabelledGraph::unlabelled(leaves.len());
        for i in 0..leaves.len() {
            for j in i + 1..leaves.len() {
                if self.adjacent(t, leaves[i], leaves[j]) {
                    g.add_edge(i, j)?;
                }
            }
        }
        let mut order: Vec<usize> = (0..leaves.len()).collect();
        order.sort_by_key(|&i| leaves[i]);
        g.set_vorder(order)?;
        Ok(g)
    }

    pub fn interpret(&self, t: &LabelledTree) -> Result<LabelledGraph> {
        self.interpret_on(t, &t.leaves_in_order())
    }

    /// Graph on the marked leaves only.
    pub fn interpret_marked(&self, m: &MarkedNestedTree) -> Result<LabelledGraph> {
        self.interpret_on(m.tree(), &marked_leaves(m))
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "cliques" => {
                let m = Arc::new(FiniteMonoid::trivial());
                let id = m.identity();
                let mu = Morphism::new(m, vec!["a".into()], vec![id])?;
                MonoidInterpretation::new(mu, [(id, id, id)])
            }
            "edgeless" => {
                let m = Arc::new(FiniteMonoid::trivial());
                let id = m.identity();
                let mu = Morphism::new(m, vec!["a".into()], vec![id])?;
                MonoidInterpretation::new(mu, [])
            }
            "paths" => paths_interpretation(),
            "split-permutation" => split_permutation_interpretation(),
            other => Err(Error::InvalidArgument(format!("unknown builtin interpretation {other:?}"))),
        }
    }

    /// Edge-labelled tree from a caterpillar described by alphabet symbols.
    pub fn linear_tree(&self, cells: &[(&str, &str)]) -> Result<LabelledTree> {
        let cells: Vec<(Element, Element)> = cells
            .iter()
            .map(|(l, r)| Ok((self.morphism.symbol(l)?, self.morphism.symbol(r)?)))
            .collect::<Result<_>>()?;
        LabelledTree::build_linear(self.monoid().clone(), &cells)
    }
}

/// Leaves marked `M`, in sibling order.
pub fn marked_leaves(m: &MarkedNestedTree) -> Vec<NodeId> {
    m.tree().leaves_in_order().into_iter().filter(|&x| m.mark(x) == Mark::M).collect()
}

/// Caterpillar whose `v`-leaves induce the path on `n` vertices under the `paths` builtin.
///
/// Spine edges read `s`, every spine node has a `v`-leaf on its left, and the spine ends
/// with an `o`-leaf.
pub fn paths_tree(i: &MonoidInterpretation, n: usize) -> Result<LabelledTree> {
    if n == 0 {
        return Err(Error::Empty("path length"));
    }
    let mut cells = vec![("v", "s"); n - 1];
    cells.push(("v", "o"));
    i.linear_tree(&cells)
}

/// Leaves entered by an edge labelled `symbol`, in sibling order.
pub fn leaves_labelled(i: &MonoidInterpretation, t: &LabelledTree, symbol: &str) -> Result<Vec<NodeId>> {
    let e = i.morphism().symbol(symbol)?;
    Ok(t.leaves_in_order().into_iter().filter(|&x| t.root() != x && t.edge_label(x) == e).collect())
}

// Elements: 1, s, v, sv, 0. Every word that is not a factor of `sv` collapses to 0.
fn paths_interpretation() -> Result<MonoidInterpretation> {
    const WORDS: [&str; 4] = ["", "s", "v", "sv"];
    let index = |w: &str| WORDS.iter().position(|&x| x == w).unwrap_or(4);
    let table = (0..5)
        .map(|a| {
            (0..5)
                .map(|b| if a == 4 || b == 4 { 4 } else { index(&format!("{}{}", WORDS[a], WORDS[b])) })
                .collect()
        })
        .collect();
    let names = ["1", "s", "v", "sv", "0"].iter().map(|s| s.to_string()).collect();
    let m = Arc::new(FiniteMonoid::new(0, table)?.with_names(names)?);
    let mu = Morphism::new(m.clone(), vec!["s".into(), "v".into(), "o".into()], vec![Element(1), Element(2), Element(4)])?;
    let p: Vec<Triple> = m.elements().map(|a| (a, Element(2), Element(3))).collect();
    MonoidInterpretation::new(mu, p)
}

// Transition monoid of an automaton counting spine steps (capped at three) before
// reading the leaf letter. `o` and `b` leaves alternate along a caterpillar; the
// right part of a pair tells the distance m between the two leaves and the letter.
fn split_permutation_interpretation() -> Result<MonoidInterpretation> {
    // states: 0..=3 counters, 4..=7 `o` after c steps, 8..=11 `b` after c steps, 12 sink
    let sink = 12;
    let s: Vec<usize> = (0..13).map(|q| if q < 4 { (q + 1).min(3) } else { sink }).collect();
    let o: Vec<usize> = (0..13).map(|q| if q < 4 { 4 + q } else { sink }).collect();
    let b: Vec<usize> = (0..13).map(|q| if q < 4 { 8 + q } else { sink }).collect();
    let e: Vec<usize> = vec![sink; 13];
    let (m, gens) = FiniteMonoid::from_transformations(13, &[s.clone(), o.clone(), b.clone(), e.clone()])?;
    let m = Arc::new(m);
    // recover each element's action on the start state by replaying generator words
    let mut image = vec![None; m.size()];
    image[m.identity().idx()] = Some(0usize);
    let step = |q: usize, g: usize| [&s, &o, &b, &e][g][q];
    let mut changed = true;
    while changed {
        changed = false;
        for x in m.elements() {
            if let Some(q) = image[x.idx()] {
                for (g, &ge) in gens.iter().enumerate() {
                    let y = m.mul(x, ge);
                    if image[y.idx()].is_none() {
                        image[y.idx()] = Some(step(q, g));
                        changed = true;
                    }
                }
            }
        }
    }
    let reading = |x: Element| -> Option<(char, usize)> {
        match image[x.idx()]? {
            q @ 4..=7 => Some(('o', q - 4)),
            q @ 8..=11 => Some(('b', q - 8)),
            _ => None,
        }
    };
    let mut p = Vec::new();
    for a in m.elements() {
        for l in m.elements() {
            for r in m.elements() {
                let (Some(('o' | 'b', 0)), Some((rc, dist))) = (reading(l), reading(r)) else {
                    continue;
                };
                let lc = reading(l).expect("checked").0;
                let edge = match (lc, rc) {
                    ('o', 'o') => dist >= 2,
                    ('o', 'b') => dist == 1,
                    ('b', 'o') => dist >= 3,
                    _ => false,
                };
                if edge {
                    p.push((a, l, r));
                }
            }
        }
    }
    let names = vec!["s".into(), "o".into(), "b".into(), "e".into()];
    let mu = Morphism::new(m, names, gens)?;
    MonoidInterpretation::new(mu, p)
}

/// Caterpillar whose `o`/`b` leaves induce the split-permutation graph of size `n`.
pub fn split_permutation_tree(i: &MonoidInterpretation, n: usize) -> Result<LabelledTree> {
    if n == 0 {
        return Err(Error::Empty("split-permutation size"));
    }
    let mut cells = Vec::with_capacity(2 * n);
    for _ in 0..n {
        cells.push(("o", "s"));
        cells.push(("b", "s"));
    }
    cells.last_mut().expect("n >= 1").1 = "e";
    i.linear_tree(&cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::isomorphic;
    use crate::tree::Shape;

    #[test]
    fn cliques_and_edgeless() {
        let c = MonoidInterpretation::builtin("cliques").unwrap();
        let e = MonoidInterpretation::builtin("edgeless").unwrap();
        let id = c.monoid().identity();
        let cherry = Shape::node(id, Shape::Leaf, id, Shape::Leaf);
        let shape = Shape::node(id, cherry.clone(), id, cherry);
        let t = LabelledTree::from_shape(c.monoid().clone(), &shape).unwrap();
        let k4 = c.interpret(&t).unwrap();
        assert_eq!((k4.n(), k4.edge_count()), (4, 6));
        assert_eq!(e.interpret(&t).unwrap().edge_count(), 0);
        assert!(MonoidInterpretation::builtin("nope").is_err());
    }

    #[test]
    fn paths_builtin_yields_paths() {
        let p = MonoidInterpretation::builtin("paths").unwrap();
        for n in 1..=10 {
            let t = paths_tree(&p, n).unwrap();
            let sel = leaves_labelled(&p, &t, "v").unwrap();
            let g = p.interpret_on(&t, &sel).unwrap();
            assert!(isomorphic(&g, &LabelledGraph::path(n)), "n = {n}");
        }
    }

    #[test]
    fn split_permutation_builtin_matches_the_definition() {
        let sp = MonoidInterpretation::builtin("split-permutation").unwrap();
        for n in 1..=5 {
            let t = split_permutation_tree(&sp, n).unwrap();
            let mut sel = leaves_labelled(&sp, &t, "o").unwrap();
            sel.extend(leaves_labelled(&sp, &t, "b").unwrap());
            sel.sort_unstable();
            let g = sp.interpret_on(&t, &sel).unwrap();
            // positions 2i and 2i+1 are the `o` and `b` vertices of copy i
            let mut want = LabelledGraph::unlabelled(2 * n);
            for i in 0..n {
                want.add_edge(2 * i, 2 * i + 1).unwrap();
                for j in i + 1..n {
                    want.add_edge(2 * i, 2 * j).unwrap();
                    if j >= i + 2 {
                        want.add_edge(2 * i + 1, 2 * j).unwrap();
                    }
                }
            }
            assert_eq!(g.edges(), want.edges(), "n = {n}");
        }
    }

    #[test]
    fn monoid_mismatch_is_reported() {
        let p = MonoidInterpretation::builtin("paths").unwrap();
        let t = LabelledTree::single(Arc::new(FiniteMonoid::cyclic(2)));
        assert_eq!(p.interpret(&t), Err(Error::MonoidMismatch));
    }
}
