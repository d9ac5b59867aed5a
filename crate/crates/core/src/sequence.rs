//! Regular and periodic sequences of graphs and their endpoint-labelled antichains.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::deadline::Deadline;
use crate::error::{Error, Result};
use crate::graph::{is_antichain, Comparable, LabelOrder, LabelledGraph, BLANK};

/// Reserved label of the first vertex or copy.
pub const FIRST: &str = "first";
/// Reserved label of the last vertex or copy.
pub const LAST: &str = "last";

/// A set of ordered label pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PairSet(BTreeSet<(String, String)>);

impl PairSet {
    pub fn new<A: Into<String>, B: Into<String>>(pairs: impl IntoIterator<Item = (A, B)>) -> Self {
        PairSet(pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect())
    }

    pub fn contains(&self, a: &str, b: &str) -> bool {
        self.0.contains(&(a.to_string(), b.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(String, String)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `(G, lab, C, F)`; the vertex labels of `graph` are the colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSequence {
    pub graph: LabelledGraph,
    pub close: PairSet,
    pub far: PairSet,
}

/// `(w, C, F)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicSequence {
    pub word: Vec<String>,
    pub close: PairSet,
    pub far: PairSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    Regular,
    Periodic,
}

/// An expanded member of a sequence with its copy structure.
///
/// Vertex `(u, i)` of a regular expansion is `(i - 1) * block + u`; a periodic expansion
/// uses `block = |w|` and numbers positions from zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub graph: LabelledGraph,
    pub kind: SequenceKind,
    pub block: usize,
    pub copies: usize,
}

impl Expansion {
    /// Copy index, starting at 1.
    pub fn copy_of(&self, v: usize) -> usize {
        v / self.block + 1
    }

    pub fn base_of(&self, v: usize) -> usize {
        v % self.block
    }

    pub fn vertex(&self, u: usize, copy: usize) -> usize {
        (copy - 1) * self.block + u
    }
}

impl RegularSequence {
    pub fn new(graph: LabelledGraph, close: PairSet, far: PairSet) -> Result<Self> {
        if graph.n() == 0 {
            return Err(Error::Empty("base graph"));
        }
        Ok(RegularSequence { graph, close, far })
    }

    /// `G = ∘ – •`, `C = {(∘,∘)}`, `F = {(∘,∘), (•,∘)}` with `∘ = v1`, `• = v2`.
    pub fn split_permutation() -> Self {
        let mut g = LabelledGraph::with_labels(vec!["v1".into(), "v2".into()], vec![0, 1]).expect("two labels");
        g.add_edge(0, 1).expect("distinct vertices");
        RegularSequence::new(g, PairSet::new([("v1", "v1")]), PairSet::new([("v1", "v1"), ("v2", "v1")])).expect("non-empty")
    }

    pub fn lab(&self, u: usize) -> &str {
        self.graph.label_of(u)
    }

    /// Adjacency of `(u, i)` and `(v, j)` in `Gʳ`.
    pub fn adjacent(&self, u: usize, i: usize, v: usize, j: usize) -> bool {
        let ((u, i), (v, j)) = if i <= j { ((u, i), (v, j)) } else { ((v, j), (u, i)) };
        let (a, b) = (self.lab(u), self.lab(v));
        match j - i {
            0 => self.graph.has_edge(u, v),
            1 => self.close.contains(a, b),
            _ => self.far.contains(a, b),
        }
    }

    pub fn expand(&self, r: usize) -> Result<Expansion> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        let n = self.graph.n();
        let labels = self.graph.labels().to_vec();
        let vlabel = (0..r * n).map(|v| self.graph.vlabels()[v % n]).collect();
        let mut g = LabelledGraph::with_labels(labels, vlabel)?;
        for x in 0..r * n {
            for y in x + 1..r * n {
                if self.adjacent(x % n, x / n + 1, y % n, y / n + 1) {
                    g.add_edge(x, y)?;
                }
            }
        }
        g.set_vorder((0..r * n).collect())?;
        Ok(Expansion { graph: g, kind: SequenceKind::Regular, block: n, copies: r })
    }
}

impl PeriodicSequence {
    pub fn new(word: Vec<String>, close: PairSet, far: PairSet) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Empty("periodic word"));
        }
        Ok(PeriodicSequence { word, close, far })
    }

    /// `w = ∘•`, `C = {(∘,•)}`, `F = {(∘,∘), (•,∘)}` with `∘ = v1`, `• = v2`.
    pub fn split_permutation() -> Self {
        PeriodicSequence::new(
            vec!["v1".into(), "v2".into()],
            PairSet::new([("v1", "v2")]),
            PairSet::new([("v1", "v1"), ("v2", "v1")]),
        )
        .expect("non-empty")
    }

    pub fn alphabet(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        self.word.iter().filter(|a| seen.insert(a.as_str())).cloned().collect()
    }

    pub fn expand(&self, r: usize) -> Result<Expansion> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        let w = self.word.len();
        let n = r * w;
        let labels = self.alphabet();
        let vlabel = (0..n).map(|i| labels.iter().position(|l| *l == self.word[i % w]).expect("letter")).collect();
        let mut g = LabelledGraph::with_labels(labels, vlabel)?;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&self.word[i % w], &self.word[j % w]);
                let edge = if i + 1 == j { self.close.contains(a, b) } else { self.far.contains(a, b) };
                if edge {
                    g.add_edge(i, j)?;
                }
            }
        }
        g.set_vorder((0..n).collect())?;
        Ok(Expansion { graph: g, kind: SequenceKind::Periodic, block: w, copies: r })
    }

    /// Whether `C = Σ² ∖ F` over the letters of the word.
    pub fn is_complemented(&self) -> bool {
        let sigma = self.alphabet();
        let in_sigma = |(a, b): &(String, String)| sigma.contains(a) && sigma.contains(b);
        if !self.close.iter().all(in_sigma) || !self.far.iter().all(in_sigma) {
            return false;
        }
        sigma.iter().all(|a| sigma.iter().all(|b| self.close.contains(a, b) != self.far.contains(a, b)))
    }
}

fn flagged(base: &str, first: bool, last: bool) -> String {
    let mut s = base.to_string();
    if first {
        s.push('+');
        s.push_str(FIRST);
    }
    if last {
        s.push('+');
        s.push_str(LAST);
    }
    s
}

/// Endpoint labelling: a regular expansion flags every vertex of its first and last copies
/// on top of its colour; a periodic expansion blanks all labels except the first and last
/// vertices.
pub fn with_endpoints(e: &Expansion) -> LabelledGraph {
    let g = &e.graph;
    let mut out = g.clone();
    let n = g.n();
    for v in 0..n {
        let label = match e.kind {
            SequenceKind::Regular => {
                let c = e.copy_of(v);
                flagged(g.label_of(v), c == 1, c == e.copies)
            }
            SequenceKind::Periodic => {
                let s = flagged("", v == 0, v + 1 == n);
                match s.strip_prefix('+') {
                    Some(rest) => rest.to_string(),
                    None => BLANK.to_string(),
                }
            }
        };
        out.set_label(v, &label);
    }
    out
}

/// A sequence of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sequence {
    Regular(RegularSequence),
    Periodic(PeriodicSequence),
}

impl Sequence {
    pub fn expand(&self, r: usize) -> Result<Expansion> {
        match self {
            Sequence::Regular(s) => s.expand(r),
            Sequence::Periodic(s) => s.expand(r),
        }
    }
}

/// First comparable pair among the endpoint-labelled members `r ∈ range`, as values of `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparablePair {
    pub smaller: usize,
    pub larger: usize,
    pub map: Vec<usize>,
}

/// Complete pairwise search over `range`; `None` certifies an antichain.
pub fn certify_antichain(s: &Sequence, range: RangeInclusive<usize>, deadline: Deadline) -> Result<Option<ComparablePair>> {
    let rs: Vec<usize> = range.collect();
    let graphs = rs.iter().map(|&r| s.expand(r).map(|e| with_endpoints(&e))).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&LabelledGraph> = graphs.iter().collect();
    let ord = LabelOrder::equality_for(&refs);
    Ok(is_antichain(&graphs, &ord, deadline)?.map(|Comparable { smaller, larger, map }| ComparablePair {
        smaller: rs[smaller],
        larger: rs[larger],
        map,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::isomorphic;

    fn count_by_distance(e: &Expansion) -> [usize; 3] {
        let mut c = [0; 3];
        for (x, y) in e.graph.edges() {
            let d = e.copy_of(y) - e.copy_of(x);
            c[d.min(2)] += 1;
        }
        c
    }

    #[test]
    fn split_permutation_four() {
        let s = RegularSequence::split_permutation();
        let e = s.expand(4).unwrap();
        assert_eq!(e.graph.n(), 8);
        assert_eq!(e.graph.edge_count(), 13);
        assert_eq!(count_by_distance(&e), [4, 3, 6]);
    }

    #[test]
    fn split_permutation_two_is_p4() {
        let e = RegularSequence::split_permutation().expand(2).unwrap();
        assert!(e.graph.is_path());
        assert_eq!(e.graph.edges(), vec![(0, 1), (0, 2), (2, 3)]);
    }

    #[test]
    fn one_copy_is_the_base() {
        let s = RegularSequence::split_permutation();
        assert_eq!(s.expand(1).unwrap().graph.edges(), s.graph.edges());
    }

    #[test]
    fn prefix_closure() {
        let s = RegularSequence::split_permutation();
        for r in 2..=6 {
            let big = s.expand(r).unwrap().graph;
            let small = s.expand(r - 1).unwrap().graph;
            let prefix: Vec<usize> = (0..small.n()).collect();
            assert_eq!(big.induced(&prefix).edges(), small.edges());
        }
    }

    #[test]
    fn periodic_matches_regular() {
        let p = PeriodicSequence::split_permutation();
        let s = RegularSequence::split_permutation();
        for n in 1..=6 {
            let a = p.expand(n).unwrap().graph.erase_labels();
            let b = s.expand(n).unwrap().graph.erase_labels();
            assert!(isomorphic(&a, &b), "n = {n}");
        }
    }

    #[test]
    fn periodic_trivia() {
        let one = PeriodicSequence::new(vec!["a".into()], PairSet::new([("a", "a")]), PairSet::default()).unwrap();
        assert_eq!(one.expand(1).unwrap().graph.n(), 1);
        let empty = PeriodicSequence::new(vec!["a".into(), "b".into()], PairSet::default(), PairSet::default()).unwrap();
        assert_eq!(empty.expand(4).unwrap().graph.edge_count(), 0);
    }

    #[test]
    fn endpoint_labels() {
        let s = RegularSequence::split_permutation();
        let g = with_endpoints(&s.expand(3).unwrap());
        let flagged = (0..g.n()).filter(|&v| g.label_of(v).contains('+')).count();
        assert_eq!(flagged, 4);
        assert_eq!(g.label_of(0), "v1+first");
        assert_eq!(g.label_of(5), "v2+last");
        let single = with_endpoints(&s.expand(1).unwrap());
        assert_eq!(single.label_of(0), "v1+first+last");

        let p = with_endpoints(&PeriodicSequence::split_permutation().expand(3).unwrap());
        let labelled: Vec<&str> = (0..p.n()).map(|v| p.label_of(v)).filter(|l| !l.is_empty()).collect();
        assert_eq!(labelled, vec![FIRST, LAST]);
    }

    #[test]
    fn complement_check() {
        assert!(!PeriodicSequence::split_permutation().is_complemented());
        let all = PeriodicSequence::new(
            vec!["a".into(), "b".into()],
            PairSet::new([("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]),
            PairSet::default(),
        )
        .unwrap();
        assert!(all.is_complemented());
        let single = PeriodicSequence::new(vec!["a".into()], PairSet::default(), PairSet::new([("a", "a")])).unwrap();
        assert!(single.is_complemented());
    }

    #[test]
    fn certification() {
        let s = Sequence::Regular(RegularSequence::split_permutation());
        assert_eq!(certify_antichain(&s, 1..=5, Deadline::none()).unwrap(), None);
        assert_eq!(certify_antichain(&s, 3..=3, Deadline::none()).unwrap(), None);
        let g = LabelledGraph::with_labels(vec!["a".into()], vec![0]).unwrap();
        let flat = Sequence::Regular(RegularSequence::new(g, PairSet::default(), PairSet::default()).unwrap());
        let pair = certify_antichain(&flat, 2..=4, Deadline::none()).unwrap().expect("edgeless graphs nest");
        assert_eq!((pair.smaller, pair.larger), (2, 3));
    }
}
