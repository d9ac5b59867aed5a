//! Arrow graphs of regular sequences, spanning paths, periods and path extraction.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::deadline::Deadline;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, LabelledGraph};
use crate::sequence::{PairSet, PeriodicSequence, RegularSequence};

/// `H = φ→(Gʳ)` with the copy structure of `Gʳ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowGraph {
    pub inner: DirectedGraph,
    pub block: usize,
    pub copies: usize,
}

impl ArrowGraph {
    pub fn n(&self) -> usize {
        self.inner.n()
    }

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

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.inner.has_arc(u, v)
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.inner.arcs()
    }
}

fn check_injective(s: &RegularSequence) -> Result<()> {
    let mut seen = BTreeSet::new();
    for u in 0..s.graph.n() {
        if !seen.insert(s.lab(u)) {
            return Err(Error::NonInjectiveLabelling(s.lab(u).to_string()));
        }
    }
    Ok(())
}

/// Arc `(x, y)` iff adjacency in `Gʳ` differs from `(lab x, lab y) ∈ F`.
pub fn phi_arrow(s: &RegularSequence, r: usize) -> Result<ArrowGraph> {
    check_injective(s)?;
    let e = s.expand(r)?;
    let n = e.graph.n();
    let mut h = DirectedGraph::new((0..n).map(|v| e.base_of(v)).collect());
    for x in 0..n {
        for y in 0..n {
            if x != y && e.graph.has_edge(x, y) != s.far.contains(s.lab(e.base_of(x)), s.lab(e.base_of(y))) {
                h.add_arc(x, y)?;
            }
        }
    }
    Ok(ArrowGraph { inner: h, block: e.block, copies: r })
}

/// An arc `(from, to)` whose companion `(from, missing)` is absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingArc {
    pub from: usize,
    pub to: usize,
    pub missing: usize,
}

/// Outcome of the two arc claims.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    /// An arc skipping at least one copy forward.
    pub long_forward: Option<(usize, usize)>,
    /// A backward arc from copy `i` without the arc of the same vertices into some copy `j' < i`.
    pub backward: Option<MissingArc>,
    /// Same, for `j' = i`.
    pub same_copy: Option<MissingArc>,
}

impl ClaimReport {
    pub fn no_long_forward(&self) -> bool {
        self.long_forward.is_none()
    }

    pub fn backward_regular(&self) -> bool {
        self.backward.is_none()
    }
}

pub fn check_arrow_claims(a: &ArrowGraph) -> ClaimReport {
    let mut report = ClaimReport::default();
    for (x, y) in a.arcs() {
        let (i, j) = (a.copy_of(x), a.copy_of(y));
        if j > i + 1 && report.long_forward.is_none() {
            report.long_forward = Some((x, y));
        }
        if j < i {
            let v = a.base_of(y);
            if report.backward.is_none() {
                if let Some(missing) = (1..i).map(|c| a.vertex(v, c)).find(|&z| !a.has_arc(x, z)) {
                    report.backward = Some(MissingArc { from: x, to: y, missing });
                }
            }
            let z = a.vertex(v, i);
            if report.same_copy.is_none() && z != x && !a.has_arc(x, z) {
                report.same_copy = Some(MissingArc { from: x, to: y, missing: z });
            }
        }
    }
    report
}

fn bfs(n: usize, sources: impl IntoIterator<Item = usize>, next: impl Fn(usize) -> Vec<usize>) -> Vec<Option<usize>> {
    let mut dist = vec![None; n];
    let mut queue = VecDeque::new();
    for s in sources {
        dist[s] = Some(0);
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("reached");
        for v in next(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Lexicographically least shortest directed path from the first copy to the last one that
/// meets every copy.
pub fn spanning_path(a: &ArrowGraph) -> Option<Vec<usize>> {
    let n = a.n();
    let last: Vec<usize> = (0..a.block).map(|u| a.vertex(u, a.copies)).collect();
    let to_last = bfs(n, last, |v| (0..n).filter(|&u| a.has_arc(u, v)).collect());
    let start = (0..a.block).filter_map(|u| to_last[u].map(|d| (d, u))).min()?;
    let mut path = vec![start.1];
    let mut left = start.0;
    while left > 0 {
        let cur = *path.last().expect("non-empty");
        let next = a.inner.successors(cur).find(|&w| to_last[w] == Some(left - 1)).expect("distance decreases");
        path.push(next);
        left -= 1;
    }
    let seen: BTreeSet<usize> = path.iter().map(|&v| a.copy_of(v)).collect();
    (seen.len() == a.copies).then_some(path)
}

/// The period of a spanning path: the closest pair of copies of one base vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Period {
    /// Copies travelled between the two occurrences.
    pub t: usize,
    /// Path distance between the two occurrences.
    pub d: usize,
    /// The path segment from the first occurrence up to, not including, the second.
    pub q: Vec<usize>,
}

pub fn extract_period(a: &ArrowGraph, path: &[usize]) -> Result<Period> {
    if a.copies <= a.block {
        return Err(Error::TooFewCopies { r: a.copies, vertices: a.block });
    }
    let mut best: Option<(usize, usize)> = None;
    for i in 0..path.len() {
        if let Some(j) = (i + 1..path.len()).find(|&j| a.base_of(path[j]) == a.base_of(path[i])) {
            if best.is_none_or(|(bi, bj)| j - i < bj - bi) {
                best = Some((i, j));
            }
        }
    }
    let (i, j) = best.ok_or_else(|| Error::InvalidArgument("no base vertex repeats along the path".into()))?;
    let (ci, cj) = (a.copy_of(path[i]), a.copy_of(path[j]));
    if cj <= ci {
        return Err(Error::InvalidArgument(format!("period from copy {ci} to copy {cj} does not move forward")));
    }
    Ok(Period { t: cj - ci, d: j - i, q: path[i..j].to_vec() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathCase {
    /// A prefix of the spanning path carries no backward arc and is symmetrised.
    Easy,
    /// Every other copy of the period's anchor along repeated periods, joined when they are
    /// within twice the period length of each other in both directions.
    Difficult,
}

/// Result of the path extraction with the data needed to replay it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathExtraction {
    pub graph: LabelledGraph,
    pub case: PathCase,
    /// Copies of `G` used.
    pub copies: usize,
    /// Vertices of `Gʳ` forming the path, in path order.
    pub vertices: Vec<usize>,
    pub period: Option<Period>,
}

fn has_backward_arc(a: &ArrowGraph, vs: &[usize]) -> bool {
    vs.iter().any(|&x| vs.iter().any(|&y| a.copy_of(y) < a.copy_of(x) && a.has_arc(x, y)))
}

fn path_failure(stage: &str, g: &LabelledGraph, vertices: &[usize], copies: usize) -> Error {
    Error::NotAPath(format!("{stage}: {copies} copies, vertices {vertices:?}, edges {:?}", g.edges()))
}

fn symmetrised(a: &ArrowGraph, vs: &[usize]) -> Result<LabelledGraph> {
    let mut g = LabelledGraph::unlabelled(vs.len());
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if a.has_arc(vs[i], vs[j]) || a.has_arc(vs[j], vs[i]) {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Extracts a path on `target` vertices from a member of the sequence.
pub fn transduce_paths(s: &RegularSequence, target: usize, deadline: Deadline) -> Result<PathExtraction> {
    if target == 0 {
        return Err(Error::InvalidArgument("target length must be at least 1".into()));
    }
    deadline.check()?;
    let a = phi_arrow(s, target)?;
    let path = spanning_path(&a).ok_or(Error::NoSpanningPath)?;
    if path.len() >= target && !has_backward_arc(&a, &path[..target]) {
        let vertices = path[..target].to_vec();
        let graph = symmetrised(&a, &vertices)?;
        if !(graph.n() == target && graph.is_path()) {
            return Err(path_failure("easy case", &graph, &vertices, target));
        }
        return Ok(PathExtraction { graph, case: PathCase::Easy, copies: target, vertices, period: None });
    }
    difficult(s, target, deadline)
}

fn difficult(s: &RegularSequence, target: usize, deadline: Deadline) -> Result<PathExtraction> {
    let block = s.graph.n();
    let a0 = phi_arrow(s, block + 1)?;
    let p0 = spanning_path(&a0).ok_or(Error::NoSpanningPath)?;
    let period = extract_period(&a0, &p0)?;
    let anchor_copy = a0.copy_of(period.q[0]) as isize;
    let offsets: Vec<(usize, isize)> =
        period.q.iter().map(|&v| (a0.base_of(v), a0.copy_of(v) as isize - anchor_copy)).collect();
    let lowest = offsets.iter().map(|&(_, o)| o).min().unwrap_or(0).min(0);
    let highest = offsets.iter().map(|&(_, o)| o).max().unwrap_or(0);
    let base_copy = 1 - lowest;
    let rounds = 2 * (target - 1);
    let t = period.t as isize;
    let needed = (base_copy + rounds as isize * t + highest.max(0)) as usize;
    let copies = needed.max(2 * period.t * target + 1);
    deadline.check()?;
    let a = phi_arrow(s, copies)?;
    let mut walk = Vec::with_capacity(rounds * period.d + 1);
    for round in 0..rounds as isize {
        for &(u, o) in &offsets {
            walk.push(a.vertex(u, (base_copy + round * t + o) as usize));
        }
    }
    let anchor = offsets[0].0;
    walk.push(a.vertex(anchor, (base_copy + rounds as isize * t) as usize));
    if let Some(w) = walk.windows(2).find(|w| !a.has_arc(w[0], w[1])) {
        return Err(Error::NotAPath(format!("repeated period breaks at arc {:?} in {copies} copies", (w[0], w[1]))));
    }
    let kept: Vec<usize> = (0..=rounds).step_by(2).map(|i| walk[i * period.d]).collect();
    let limit = 2 * period.d;
    let mut dist = Vec::with_capacity(kept.len());
    for &x in &kept {
        deadline.check()?;
        dist.push(a.inner.distances_from(x));
    }
    let mut graph = LabelledGraph::unlabelled(kept.len());
    for i in 0..kept.len() {
        for j in i + 1..kept.len() {
            let close = |from: usize, to: usize| dist[from][kept[to]].is_some_and(|d| d <= limit);
            if close(i, j) && close(j, i) {
                graph.add_edge(i, j)?;
            }
        }
    }
    if !(graph.n() == target && graph.is_path()) {
        return Err(path_failure("difficult case", &graph, &kept, copies));
    }
    Ok(PathExtraction { graph, case: PathCase::Difficult, copies, vertices: kept, period: Some(period) })
}

/// The periodic sequence read along the period: letters of the period, `F` restricted to
/// them and `C` its complement.
pub fn derive_periodic(s: &RegularSequence) -> Result<PeriodicSequence> {
    let block = s.graph.n();
    let word: Vec<String> = if block == 1 {
        vec![s.lab(0).to_string()]
    } else {
        let a = phi_arrow(s, block + 1)?;
        let path = spanning_path(&a).ok_or(Error::NoSpanningPath)?;
        let period = extract_period(&a, &path)?;
        period.q.iter().map(|&v| s.lab(a.base_of(v)).to_string()).collect()
    };
    let sigma: BTreeSet<&String> = word.iter().collect();
    let far: Vec<(String, String)> = sigma
        .iter()
        .flat_map(|&a| sigma.iter().map(move |&b| (a.clone(), b.clone())))
        .filter(|(a, b)| s.far.contains(a, b))
        .collect();
    let close: Vec<(String, String)> = sigma
        .iter()
        .flat_map(|&a| sigma.iter().map(move |&b| (a.clone(), b.clone())))
        .filter(|(a, b)| !s.far.contains(a, b))
        .collect();
    PeriodicSequence::new(word, PairSet::new(close), PairSet::new(far))
}

/// Chain `x1 … xm` without base edges, `F = {(xa, xa+1)}` and no close pairs. Its spanning
/// paths climb one label per copy and carry no backward arc.
pub fn staircase(m: usize) -> Result<RegularSequence> {
    if m == 0 {
        return Err(Error::Empty("staircase"));
    }
    let labels: Vec<String> = (1..=m).map(|a| format!("x{a}")).collect();
    let g = LabelledGraph::with_labels(labels.clone(), (0..m).collect())?;
    let far = PairSet::new(labels.windows(2).map(|w| (w[0].clone(), w[1].clone())));
    RegularSequence::new(g, PairSet::default(), far)
}
