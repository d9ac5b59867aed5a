//! Vertex-labelled graphs, label quasi-orders and the induced-subgraph embedding search.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::deadline::{Deadline, Ticker};
use crate::error::{Error, Result};

/// A reflexive and transitive relation on named labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelOrder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    le: Vec<Vec<bool>>,
}

impl LabelOrder {
    /// Closes `pairs` (`(i, j)` meaning `labels[i] <= labels[j]`) under reflexivity and transitivity.
    pub fn new(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(l.clone()));
            }
        }
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidArgument(format!("label pair ({i}, {j}) out of range")));
            }
            le[i][j] = true;
        }
        for k in 0..n {
            let via = le[k].clone();
            for row in le.iter_mut().filter(|row| row[k]) {
                for (cell, &kj) in row.iter_mut().zip(&via) {
                    *cell |= kj;
                }
            }
        }
        Ok(LabelOrder { labels, index, le })
    }

    /// The discrete order: every label is comparable only to itself.
    pub fn equality<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let mut seen = BTreeSet::new();
        let labels: Vec<String> = labels.into_iter().map(Into::into).filter(|l| seen.insert(l.clone())).collect();
        LabelOrder::new(labels, &[]).expect("distinct labels")
    }

    /// Equality order over the union of the labels used by `graphs`.
    pub fn equality_for(graphs: &[&LabelledGraph]) -> Self {
        LabelOrder::equality(graphs.iter().flat_map(|g| g.labels().iter().cloned()))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    /// Non-diagonal pairs of the relation.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.labels.len();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| i != j && self.le[i][j]).collect()
    }
}

/// A finite simple undirected graph with one label per vertex and an optional vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraph {
    labels: Vec<String>,
    vlabel: Vec<usize>,
    adj: Vec<Vec<bool>>,
    vorder: Option<Vec<usize>>,
}

/// Name of the single label carried by unlabelled graphs.
pub const BLANK: &str = "";

impl LabelledGraph {
    /// `n` isolated vertices, all carrying the blank label.
    pub fn unlabelled(n: usize) -> Self {
        LabelledGraph { labels: vec![BLANK.to_string()], vlabel: vec![0; n], adj: vec![vec![false; n]; n], vorder: None }
    }

    /// `n` isolated vertices with the given label indices into `labels`.
    pub fn with_labels(labels: Vec<String>, vlabel: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = vlabel.iter().find(|&&l| l >= labels.len()) {
            return Err(Error::Graph(format!("vertex label {bad} out of range")));
        }
        let n = vlabel.len();
        Ok(LabelledGraph { labels, vlabel, adj: vec![vec![false; n]; n], vorder: None })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = LabelledGraph::unlabelled(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = LabelledGraph::unlabelled(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).expect("in range");
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        LabelledGraph::from_edges(n, &edges).expect("in range")
    }

    pub fn n(&self) -> usize {
        self.vlabel.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vlabels(&self) -> &[usize] {
        &self.vlabel
    }

    pub fn label_of(&self, v: usize) -> &str {
        &self.labels[self.vlabel[v]]
    }

    pub fn vorder(&self) -> Option<&[usize]> {
        self.vorder.as_deref()
    }

    /// Attaches a total order on vertices, given as the vertices listed from first to last.
    pub fn set_vorder(&mut self, order: Vec<usize>) -> Result<()> {
        let mut seen = vec![false; self.n()];
        for &v in &order {
            if v >= self.n() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Graph("vertex order is not a permutation".into()));
            }
        }
        if order.len() != self.n() {
            return Err(Error::Graph("vertex order is not a permutation".into()));
        }
        self.vorder = Some(order);
        Ok(())
    }

    pub fn set_label(&mut self, v: usize, label: &str) {
        let idx = match self.labels.iter().position(|l| l == label) {
            Some(i) => i,
            None => {
                self.labels.push(label.to_string());
                self.labels.len() - 1
            }
        };
        self.vlabel[v] = idx;
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Graph(format!("edge ({u}, {v}) out of range")));
        }
        if u == v {
            return Err(Error::Graph(format!("self-loop at {u}")));
        }
        self.adj[u][v] = true;
        self.adj[v][u] = true;
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| self.adj[u][v]).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().enumerate().filter(|(_, &b)| b).map(|(u, _)| u)
    }

    /// The subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> LabelledGraph {
        let vlabel = vertices.iter().map(|&v| self.vlabel[v]).collect();
        let mut g = LabelledGraph::with_labels(self.labels.clone(), vlabel).expect("labels in range");
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adj[u][v] {
                    g.add_edge(i, j).expect("in range");
                }
            }
        }
        g
    }

    /// Same graph with every vertex relabelled blank.
    pub fn erase_labels(&self) -> LabelledGraph {
        LabelledGraph { labels: vec![BLANK.into()], vlabel: vec![0; self.n()], adj: self.adj.clone(), vorder: self.vorder.clone() }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbours(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Whether the graph is a path on its vertex set (K1 counts; the empty graph does not).
    pub fn is_path(&self) -> bool {
        let n = self.n();
        n >= 1 && self.edge_count() + 1 == n && self.is_connected() && (0..n).all(|v| self.degree(v) <= 2)
    }

    fn resolve(&self, ord: &LabelOrder) -> Result<Vec<usize>> {
        self.vlabel.iter().map(|&l| ord.index_of(&self.labels[l])).collect()
    }

    fn positions(&self) -> Option<Vec<usize>> {
        self.vorder.as_ref().map(|o| {
            let mut pos = vec![0; o.len()];
            for (i, &v) in o.iter().enumerate() {
                pos[v] = i;
            }
            pos
        })
    }
}

/// A finite directed graph without self-arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    label: Vec<usize>,
    adj: Vec<Vec<bool>>,
}

impl DirectedGraph {
    pub fn new(label: Vec<usize>) -> Self {
        let n = label.len();
        DirectedGraph { label, adj: vec![vec![false; n]; n] }
    }

    pub fn n(&self) -> usize {
        self.label.len()
    }

    pub fn label(&self, v: usize) -> usize {
        self.label[v]
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n() || v >= self.n() {
            return Err(Error::Graph(format!("arc ({u}, {v}) out of range")));
        }
        if u == v {
            return Err(Error::Graph(format!("self-arc at {u}")));
        }
        self.adj[u][v] = true;
        Ok(())
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| self.adj[u][v]).collect()
    }

    pub fn successors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v)
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices are reached");
            for v in self.successors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// Checks that `map` is an induced-subgraph embedding of `small` into `big`.
pub fn verify_embedding(
    small: &LabelledGraph,
    big: &LabelledGraph,
    ord: &LabelOrder,
    map: &[usize],
    respect_vertex_order: bool,
) -> Result<()> {
    if map.len() != small.n() {
        return Err(Error::Graph(format!("map has {} entries for {} vertices", map.len(), small.n())));
    }
    let ls = small.resolve(ord)?;
    let lb = big.resolve(ord)?;
    let mut used = vec![false; big.n()];
    for (u, &fu) in map.iter().enumerate() {
        if fu >= big.n() {
            return Err(Error::Graph(format!("vertex {u} mapped outside the target")));
        }
        if std::mem::replace(&mut used[fu], true) {
            return Err(Error::Graph(format!("map is not injective at target {fu}")));
        }
        if !ord.le(ls[u], lb[fu]) {
            return Err(Error::Graph(format!("label of {u} is not below the label of {fu}")));
        }
    }
    for u in 0..small.n() {
        for v in u + 1..small.n() {
            if small.has_edge(u, v) != big.has_edge(map[u], map[v]) {
                return Err(Error::Graph(format!("pair ({u}, {v}) changes adjacency")));
            }
        }
    }
    if respect_vertex_order {
        if let (Some(ps), Some(pb)) = (small.positions(), big.positions()) {
            for u in 0..small.n() {
                for v in 0..small.n() {
                    if ps[u] < ps[v] && pb[map[u]] >= pb[map[v]] {
                        return Err(Error::Graph(format!("order of ({u}, {v}) is not preserved")));
                    }
                }
            }
        }
    }
    Ok(())
}

struct EmbedSearch<'a> {
    small: &'a LabelledGraph,
    big: &'a LabelledGraph,
    order: Option<(Vec<usize>, Vec<usize>)>,
    domains: Vec<Vec<usize>>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    ticker: Ticker,
}

impl EmbedSearch<'_> {
    fn consistent(&self, u: usize, x: usize) -> bool {
        if self.used[x] {
            return false;
        }
        for (v, fv) in self.map.iter().enumerate() {
            if let Some(y) = *fv {
                if self.small.has_edge(u, v) != self.big.has_edge(x, y) {
                    return false;
                }
                if let Some((ps, pb)) = &self.order {
                    if (ps[u] < ps[v]) != (pb[x] < pb[y]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, assigned: usize) -> Result<bool> {
        self.ticker.tick()?;
        if assigned == self.small.n() {
            return Ok(true);
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for u in 0..self.small.n() {
            if self.map[u].is_some() {
                continue;
            }
            let cands: Vec<usize> = self.domains[u].iter().copied().filter(|&x| self.consistent(u, x)).collect();
            if cands.is_empty() {
                return Ok(false);
            }
            if best.as_ref().is_none_or(|(_, c)| cands.len() < c.len()) {
                best = Some((u, cands));
            }
        }
        let (u, cands) = best.expect("an unassigned vertex remains");
        for x in cands {
            self.map[u] = Some(x);
            self.used[x] = true;
            if self.run(assigned + 1)? {
                return Ok(true);
            }
            self.map[u] = None;
            self.used[x] = false;
        }
        Ok(false)
    }
}

/// Searches for an induced-subgraph embedding of `small` into `big`.
///
/// Returns `Ok(None)` when the search is exhaustive and finds nothing, and
/// `Err(Error::Deadline)` when it runs out of time.
pub fn embed(
    small: &LabelledGraph,
    big: &LabelledGraph,
    ord: &LabelOrder,
    respect_vertex_order: bool,
    deadline: Deadline,
) -> Result<Option<Vec<usize>>> {
    let ls = small.resolve(ord)?;
    let lb = big.resolve(ord)?;
    if small.n() > big.n() {
        return Ok(None);
    }
    let order = match (respect_vertex_order, small.positions(), big.positions()) {
        (true, Some(ps), Some(pb)) => Some((ps, pb)),
        _ => None,
    };
    let domains = (0..small.n())
        .map(|u| (0..big.n()).filter(|&x| ord.le(ls[u], lb[x]) && small.degree(u) <= big.degree(x)).collect())
        .collect();
    let mut search = EmbedSearch {
        small,
        big,
        order,
        domains,
        map: vec![None; small.n()],
        used: vec![false; big.n()],
        ticker: Ticker::new(deadline),
    };
    deadline.check()?;
    if search.run(0)? {
        Ok(Some(search.map.into_iter().map(|x| x.expect("complete map")).collect()))
    } else {
        Ok(None)
    }
}

/// A comparable pair found while certifying an antichain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparable {
    pub smaller: usize,
    pub larger: usize,
    pub map: Vec<usize>,
}

/// Returns the first comparable pair in index order, or `None` when the list is an antichain.
pub fn is_antichain(graphs: &[LabelledGraph], ord: &LabelOrder, deadline: Deadline) -> Result<Option<Comparable>> {
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            for (a, b) in [(i, j), (j, i)] {
                if let Some(map) = embed(&graphs[a], &graphs[b], ord, false, deadline)? {
                    return Ok(Some(Comparable { smaller: a, larger: b, map }));
                }
            }
        }
    }
    Ok(None)
}

/// Label-preserving isomorphism test.
pub fn isomorphic(a: &LabelledGraph, b: &LabelledGraph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let ord = LabelOrder::equality_for(&[a, b]);
    matches!(embed(a, b, &ord, false, Deadline::none()), Ok(Some(_)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn endpoint_path(n: usize) -> LabelledGraph {
        let mut g = LabelledGraph::path(n);
        g.set_label(0, "first");
        g.set_label(n - 1, "last");
        g
    }

    fn brute_force(small: &LabelledGraph, big: &LabelledGraph, ord: &LabelOrder) -> bool {
        fn go(s: &LabelledGraph, b: &LabelledGraph, o: &LabelOrder, map: &mut Vec<usize>) -> bool {
            if map.len() == s.n() {
                return verify_embedding(s, b, o, map, false).is_ok();
            }
            for x in 0..b.n() {
                if !map.contains(&x) {
                    map.push(x);
                    if go(s, b, o, map) {
                        return true;
                    }
                    map.pop();
                }
            }
            false
        }
        go(small, big, ord, &mut Vec::new())
    }

    #[test]
    fn cliques_and_paths() {
        let ord = LabelOrder::equality([BLANK]);
        let found = embed(&LabelledGraph::complete(2), &LabelledGraph::complete(3), &ord, false, Deadline::none()).unwrap();
        assert_eq!(found, Some(vec![0, 1]));
        assert_eq!(embed(&LabelledGraph::path(3), &LabelledGraph::complete(3), &ord, false, Deadline::none()).unwrap(), None);
    }

    #[test]
    fn endpoint_labelled_paths_do_not_nest() {
        let graphs: Vec<_> = (3..=5).map(endpoint_path).collect();
        let ord = LabelOrder::equality_for(&graphs.iter().collect::<Vec<_>>());
        assert_eq!(embed(&graphs[0], &graphs[1], &ord, false, Deadline::none()).unwrap(), None);
        assert_eq!(is_antichain(&graphs, &ord, Deadline::none()).unwrap(), None);
    }

    #[test]
    fn antichain_violations() {
        let ord = LabelOrder::equality([BLANK]);
        let gs = vec![LabelledGraph::unlabelled(1), LabelledGraph::complete(2)];
        let c = is_antichain(&gs, &ord, Deadline::none()).unwrap().unwrap();
        assert_eq!((c.smaller, c.larger), (0, 1));
        let same = vec![LabelledGraph::path(4), LabelledGraph::path(4)];
        assert!(is_antichain(&same, &ord, Deadline::none()).unwrap().is_some());
    }

    #[test]
    fn isomorphism() {
        assert!(!isomorphic(&LabelledGraph::complete(3), &LabelledGraph::path(3)));
        let p = LabelledGraph::path(5);
        assert!(isomorphic(&p, &p));
        // P4 relabelled 2-0-1-3
        let q = LabelledGraph::from_edges(4, &[(2, 0), (0, 1), (1, 3)]).unwrap();
        assert!(isomorphic(&LabelledGraph::path(4), &q));
    }

    #[test]
    fn label_order_is_respected() {
        let ord = LabelOrder::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)]).unwrap();
        assert!(ord.le(0, 2));
        assert!(!ord.le(2, 0));
        let mut small = LabelledGraph::unlabelled(1);
        small.set_label(0, "a");
        let mut big = LabelledGraph::unlabelled(1);
        big.set_label(0, "c");
        assert!(embed(&small, &big, &ord, false, Deadline::none()).unwrap().is_some());
        assert!(embed(&big, &small, &ord, false, Deadline::none()).unwrap().is_none());
    }

    #[test]
    fn vertex_order_restricts_witnesses() {
        let ord = LabelOrder::equality([BLANK, "x"]);
        // small: x-blank edge with x first; big: blank-x edge with x last
        let mut small = LabelledGraph::from_edges(2, &[(0, 1)]).unwrap();
        small.set_label(0, "x");
        small.set_vorder(vec![0, 1]).unwrap();
        let mut big = LabelledGraph::from_edges(2, &[(0, 1)]).unwrap();
        big.set_label(1, "x");
        big.set_vorder(vec![0, 1]).unwrap();
        assert!(embed(&small, &big, &ord, false, Deadline::none()).unwrap().is_some());
        assert!(embed(&small, &big, &ord, true, Deadline::none()).unwrap().is_none());
    }

    #[test]
    fn deadline_is_not_absence() {
        let big = LabelledGraph::complete(30);
        let small = LabelledGraph::path(3);
        let ord = LabelOrder::equality([BLANK]);
        let r = embed(&small, &big, &ord, false, Deadline::after(std::time::Duration::ZERO));
        assert_eq!(r, Err(Error::Deadline));
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let ord = LabelOrder::equality([BLANK, "x"]);
        for _ in 0..300 {
            let random = |rng: &mut rand_chacha::ChaCha8Rng, n: usize| {
                let mut g = LabelledGraph::unlabelled(n);
                for u in 0..n {
                    if rng.gen_bool(0.3) {
                        g.set_label(u, "x");
                    }
                    for v in u + 1..n {
                        if rng.gen_bool(0.4) {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                }
                g
            };
            let ns = rng.gen_range(1..=4);
            let nb = rng.gen_range(ns..=6);
            let s = random(&mut rng, ns);
            let b = random(&mut rng, nb);
            let fast = embed(&s, &b, &ord, false, Deadline::none()).unwrap();
            assert_eq!(fast.is_some(), brute_force(&s, &b, &ord));
            if let Some(m) = fast {
                verify_embedding(&s, &b, &ord, &m, false).unwrap();
            }
        }
    }

    #[test]
    fn directed_distances() {
        let mut d = DirectedGraph::new(vec![0; 4]);
        d.add_arc(0, 1).unwrap();
        d.add_arc(1, 2).unwrap();
        assert_eq!(d.distances_from(0), vec![Some(0), Some(1), Some(2), None]);
        assert!(d.add_arc(3, 3).is_err());
    }

    #[test]
    fn path_recognition() {
        assert!(LabelledGraph::path(1).is_path());
        assert!(LabelledGraph::path(5).is_path());
        assert!(!LabelledGraph::complete(3).is_path());
        assert!(!LabelledGraph::unlabelled(2).is_path());
    }
}
