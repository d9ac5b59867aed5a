//! Deterministic pseudo-random monoids, trees, marked trees and sequences.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::LabelledGraph;
use crate::interp::MonoidInterpretation;
use crate::monoid::{Element, FiniteMonoid, Morphism};
use crate::nested::{is_well_marked, Mark, MarkedNestedTree, Z3Reading};
use crate::sequence::{PairSet, RegularSequence};
use crate::split::{construct_split, default_budget, validate_ramseyan, Split};
use crate::tree::{LabelledTree, NodeId, Shape};

/// A seeded generator; equal seeds give equal streams.
#[derive(Clone, Debug)]
pub struct Corpus {
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Corpus { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A transition monoid of at most `max_size` elements and its generators.
    pub fn monoid(&mut self, max_size: usize) -> (Arc<FiniteMonoid>, Vec<Element>) {
        for _ in 0..64 {
            let states = self.rng.gen_range(2..=3);
            let ngens = self.rng.gen_range(1..=2);
            let gens: Vec<Vec<usize>> =
                (0..ngens).map(|_| (0..states).map(|_| self.rng.gen_range(0..states)).collect()).collect();
            if let Ok((m, g)) = FiniteMonoid::from_transformations_capped(states, &gens, max_size.max(1)) {
                return (Arc::new(m), g);
            }
        }
        (Arc::new(FiniteMonoid::trivial()), vec![Element(0)])
    }

    /// A full binary tree with at most `max_nodes` nodes and edge labels drawn from `labels`
    /// (all elements when `labels` is empty).
    pub fn tree(&mut self, m: &Arc<FiniteMonoid>, labels: &[Element], max_nodes: usize) -> LabelledTree {
        let pool: Vec<Element> = if labels.is_empty() { m.elements().collect() } else { labels.to_vec() };
        let leaves = self.rng.gen_range(1..=max_nodes.div_ceil(2).max(1));
        let shape = self.shape(leaves, &pool);
        LabelledTree::from_shape(m.clone(), &shape).expect("labels come from the monoid")
    }

    fn shape(&mut self, leaves: usize, pool: &[Element]) -> Shape {
        if leaves <= 1 {
            return Shape::Leaf;
        }
        let left = self.rng.gen_range(1..leaves);
        let l = *pool.choose(&mut self.rng).expect("non-empty pool");
        let r = *pool.choose(&mut self.rng).expect("non-empty pool");
        Shape::node(l, self.shape(left, pool), r, self.shape(leaves - left, pool))
    }

    /// A tree with a constructed split.
    pub fn split_tree(&mut self, max_size: usize, max_nodes: usize) -> Result<(LabelledTree, Split)> {
        let (m, gens) = self.monoid(max_size);
        let t = self.tree(&m, &gens, max_nodes);
        let s = construct_split(&t, default_budget(&m))?;
        Ok((t, s))
    }

    /// A well-marked marking of `t` under `s`. Falls back to marking only the root.
    pub fn marking(&mut self, t: &LabelledTree, s: &Split) -> Result<MarkedNestedTree> {
        for _ in 0..32 {
            let marks = self.random_marks(t);
            let m = MarkedNestedTree::new(t.clone(), s.clone(), marks)?;
            if is_well_marked(&m, Z3Reading::Inclusive).is_none() {
                return Ok(m);
            }
        }
        let mut marks = vec![Mark::D; t.n()];
        marks[t.root()] = Mark::M;
        MarkedNestedTree::new(t.clone(), s.clone(), marks)
    }

    fn random_marks(&mut self, t: &LabelledTree) -> Vec<Mark> {
        let mut marks: Vec<Mark> =
            t.nodes().map(|_| if self.rng.gen_bool(0.3) { Mark::S } else { Mark::D }).collect();
        let leaves = t.leaves_in_order();
        let k = self.rng.gen_range(0..=leaves.len().min(4));
        let chosen: Vec<NodeId> = leaves.choose_multiple(&mut self.rng, k).copied().collect();
        marks[t.root()] = Mark::M;
        for &x in &chosen {
            marks[x] = Mark::M;
        }
        for (i, &x) in chosen.iter().enumerate() {
            for &y in &chosen[i + 1..] {
                marks[t.lca(x, y).expect("nodes of t")] = Mark::M;
            }
        }
        marks
    }

    /// A well-marked tree with a constructed split.
    pub fn marked_tree(&mut self, max_size: usize, max_nodes: usize) -> Result<MarkedNestedTree> {
        let (t, s) = self.split_tree(max_size, max_nodes)?;
        self.marking(&t, &s)
    }

    /// Inserts a dummy node above a non-root dummy node of `m`, with a fresh dummy leaf
    /// beside it, keeping old split values. `None` when `m` has no such node or the result
    /// is not Ramseyan and well-marked.
    pub fn extend_marked(&mut self, m: &MarkedNestedTree) -> Option<MarkedNestedTree> {
        let t = m.tree();
        let candidates: Vec<NodeId> = t.nodes().filter(|&x| x != t.root() && m.mark(x) == Mark::D).collect();
        let &x = candidates.choose(&mut self.rng)?;
        let n = t.n();
        let (w, leaf) = (n, n + 1);
        let mut children: Vec<Vec<usize>> =
            t.nodes().map(|v| t.children(v).map_or(Vec::new(), |(a, b)| vec![a, b])).collect();
        let mut edge: Vec<Element> = t.nodes().map(|v| t.edge_label(v)).collect();
        let p = t.parent(x).expect("not the root");
        for ch in children[p].iter_mut().filter(|ch| **ch == x) {
            *ch = w;
        }
        children.push(if self.rng.gen_bool(0.5) { vec![x, leaf] } else { vec![leaf, x] });
        children.push(Vec::new());
        let elems: Vec<Element> = t.monoid().elements().collect();
        edge.push(edge[x]);
        edge.push(*elems.choose(&mut self.rng).expect("non-empty monoid"));
        edge[x] = t.monoid().identity();
        let (t2, renum) = LabelledTree::from_parts(t.monoid().clone(), t.root(), &children, &edge).ok()?;
        let h = m.height();
        let mut values = vec![0; n + 2];
        let mut marks = vec![Mark::D; n + 2];
        for v in t.nodes() {
            values[renum[v]] = m.split().value(v);
            marks[renum[v]] = m.mark(v);
        }
        values[renum[w]] = self.rng.gen_range(1..=h);
        values[renum[leaf]] = self.rng.gen_range(1..=h);
        let s2 = Split::new(&t2, h, values).ok()?;
        if validate_ramseyan(&t2, &s2).is_some() {
            return None;
        }
        let m2 = MarkedNestedTree::new(t2, s2, marks).ok()?;
        is_well_marked(&m2, Z3Reading::Inclusive).is_none().then_some(m2)
    }

    /// An interpretation over `m` with the alphabet `g0, g1, ...` for `gens` and a random `P`.
    pub fn interpretation(&mut self, m: &Arc<FiniteMonoid>, gens: &[Element]) -> Result<MonoidInterpretation> {
        let alphabet = (0..gens.len()).map(|i| format!("g{i}")).collect();
        let mu = Morphism::new(m.clone(), alphabet, gens.to_vec())?;
        let elems: Vec<Element> = m.elements().collect();
        let mut p = Vec::new();
        for &a in &elems {
            for &b in &elems {
                for &c in &elems {
                    if self.rng.gen_bool(0.5) {
                        p.push((a, b, c));
                    }
                }
            }
        }
        MonoidInterpretation::new(mu, p)
    }

    /// A regular sequence on 1..=`max_vertices` distinctly labelled vertices.
    pub fn regular_sequence(&mut self, max_vertices: usize) -> RegularSequence {
        let n = self.rng.gen_range(1..=max_vertices.max(1));
        let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let mut g = LabelledGraph::with_labels(labels.clone(), (0..n).collect()).expect("labels in range");
        for u in 0..n {
            for v in u + 1..n {
                if self.rng.gen_bool(0.5) {
                    g.add_edge(u, v).expect("distinct vertices");
                }
            }
        }
        let mut pairs = || {
            let mut out = Vec::new();
            for a in &labels {
                for b in &labels {
                    if self.rng.gen_bool(0.4) {
                        out.push((a.clone(), b.clone()));
                    }
                }
            }
            PairSet::new(out)
        };
        let close = pairs();
        let far = pairs();
        RegularSequence::new(g, close, far).expect("labels are distinct")
    }
}
