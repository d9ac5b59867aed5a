//! Forward Ramseyan splits: validation, construction, neighbourhoods and fast products.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::{Element, FiniteMonoid};
use crate::tree::{LabelledTree, NodeId};

/// A map from nodes to `1..=height`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    height: u32,
    value: Vec<u32>,
    #[serde(skip)]
    verified: bool,
}

/// Nodes `x ⊲ y` and `x2 ⊲ y2` of one neighbourhood class with
/// `tlbl(x, y) · tlbl(x2, y2) ≠ tlbl(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyViolation {
    pub x: NodeId,
    pub y: NodeId,
    pub x2: NodeId,
    pub y2: NodeId,
}

impl Split {
    pub fn new(t: &LabelledTree, height: u32, value: Vec<u32>) -> Result<Self> {
        if value.len() != t.n() {
            return Err(Error::SplitSize { expected: t.n(), got: value.len() });
        }
        if height == 0 {
            return Err(Error::InvalidArgument("split height must be positive".into()));
        }
        for (node, &v) in value.iter().enumerate() {
            if v == 0 || v > height {
                return Err(Error::SplitValue { node, value: v, height });
            }
        }
        Ok(Split { height, value, verified: false })
    }

    pub fn constant(t: &LabelledTree, height: u32, v: u32) -> Result<Self> {
        Split::new(t, height, vec![v; t.n()])
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    #[inline]
    pub fn value(&self, x: NodeId) -> u32 {
        self.value[x]
    }

    pub fn values(&self) -> &[u32] {
        &self.value
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Runs [`validate_ramseyan`] and records a passing result.
    pub fn verify(&mut self, t: &LabelledTree) -> Result<()> {
        if self.value.len() != t.n() {
            return Err(Error::SplitSize { expected: t.n(), got: self.value.len() });
        }
        match validate_ramseyan(t, self) {
            None => {
                self.verified = true;
                Ok(())
            }
            Some(v) => Err(Error::InvalidArgument(format!(
                "split is not forward Ramseyan: ({}, {}) against ({}, {})",
                v.x, v.y, v.x2, v.y2
            ))),
        }
    }

    /// Same values under a different height; the validation flag is kept only if it still makes sense.
    pub fn with_height(&self, height: u32) -> Result<Self> {
        let mut s = self.clone();
        if let Some(node) = s.value.iter().position(|&v| v > height) {
            return Err(Error::SplitValue { node, value: s.value[node], height });
        }
        s.height = height;
        Ok(s)
    }

    pub(crate) fn from_raw(height: u32, value: Vec<u32>, verified: bool) -> Self {
        Split { height, value, verified }
    }
}

/// `spt(x : y)`: the least value strictly between `x` and `y`, or `height + 1`.
pub fn gap(t: &LabelledTree, s: &Split, x: NodeId, y: NodeId) -> Result<u32> {
    t.check(x)?;
    t.check(y)?;
    if !t.is_strict_ancestor(x, y) {
        return Err(Error::NotAncestor { ancestor: x, node: y });
    }
    Ok(gap_unchecked(t, s, x, y))
}

pub(crate) fn gap_unchecked(t: &LabelledTree, s: &Split, x: NodeId, y: NodeId) -> u32 {
    let mut best = s.height + 1;
    let mut cur = t.parent(y);
    while let Some(z) = cur {
        if z == x {
            break;
        }
        best = best.min(s.value[z]);
        cur = t.parent(z);
    }
    best
}

/// Members of `w`'s neighbourhood class that are ancestors of `w` (including `w`), top first.
fn upward_class(t: &LabelledTree, s: &Split, w: NodeId) -> Vec<NodeId> {
    let k = s.value[w];
    let mut members = vec![w];
    let mut cur = t.parent(w);
    while let Some(z) = cur {
        let v = s.value[z];
        if v < k {
            break;
        }
        if v == k {
            members.push(z);
        }
        cur = t.parent(z);
    }
    members.reverse();
    members
}

/// Checks every instance of the absorption law whose lowest node is `w`.
fn check_at(t: &LabelledTree, s: &Split, w: NodeId) -> Option<RamseyViolation> {
    let m = t.monoid();
    let class = upward_class(t, s, w);
    let c = class.len();
    if c < 2 {
        return None;
    }
    let mut pairs = Vec::with_capacity(c * (c - 1) / 2);
    for i in 0..c {
        for j in i + 1..c {
            pairs.push((class[i], class[j], t.tlbl_unchecked(class[i], class[j])));
        }
    }
    for &(x, y, a) in pairs.iter().filter(|p| p.1 == w) {
        for &(x2, y2, b) in &pairs {
            if m.mul(a, b) != a {
                return Some(RamseyViolation { x, y, x2, y2 });
            }
            if m.mul(b, a) != b {
                return Some(RamseyViolation { x: x2, y: y2, x2: x, y2: y });
            }
        }
    }
    None
}

/// Returns `None` when the split is forward Ramseyan, or a violating quadruple.
pub fn validate_ramseyan(t: &LabelledTree, s: &Split) -> Option<RamseyViolation> {
    t.nodes().find_map(|w| check_at(t, s, w))
}

/// Default search budget: three times the monoid size.
pub fn default_budget(m: &FiniteMonoid) -> u32 {
    3 * m.size() as u32
}

// Per level: products tlbl(x, current) for the open class members x, and the
// products of all pairs inside the class. Bitsets over the monoid.
#[derive(Clone, PartialEq, Eq, Hash)]
struct LevelState(Vec<Option<(u64, u64)>>);

struct Builder<'a> {
    t: &'a LabelledTree,
    m: &'a FiniteMonoid,
    budget: u32,
    value: Vec<u32>,
    dead: HashSet<(NodeId, LevelState)>,
}

fn bits(set: u64) -> impl Iterator<Item = Element> {
    (0..64u32).filter(move |i| set >> i & 1 == 1).map(Element)
}

impl Builder<'_> {
    fn shift(&self, state: &LevelState, e: Element) -> LevelState {
        LevelState(
            state
                .0
                .iter()
                .map(|lvl| lvl.map(|(a, b)| (bits(a).fold(0u64, |acc, x| acc | 1 << self.m.mul(x, e).0), b)))
                .collect(),
        )
    }

    fn assign(&self, state: &LevelState, v: u32) -> Option<LevelState> {
        let mut next = state.clone();
        let k = (v - 1) as usize;
        for lvl in next.0.iter_mut().skip(k + 1) {
            *lvl = None;
        }
        let id = 1u64 << self.m.identity().0;
        next.0[k] = match state.0[k] {
            None => Some((id, 0)),
            Some((a, b)) => {
                let all = a | b;
                for x in bits(a) {
                    for y in bits(all) {
                        if self.m.mul(x, y) != x || self.m.mul(y, x) != y {
                            return None;
                        }
                    }
                }
                Some((a | id, all))
            }
        };
        Some(next)
    }

    fn solve(&mut self, w: NodeId, above: &LevelState) -> bool {
        let state = self.shift(above, self.t.edge_label(w));
        let key = (w, state);
        if self.dead.contains(&key) {
            return false;
        }
        for v in 1..=self.budget {
            let Some(next) = self.assign(&key.1, v) else { continue };
            self.value[w] = v;
            let ok = match self.t.children(w) {
                None => true,
                Some((a, b)) => self.solve(a, &next) && self.solve(b, &next),
            };
            if ok {
                return true;
            }
        }
        self.dead.insert(key);
        false
    }
}

/// Finds a forward Ramseyan split of height at most `budget`, trying small values first.
///
/// The search is exhaustive: [`Error::BudgetExhausted`] means no such split exists.
/// The returned split has height equal to its largest value.
pub fn construct_split(t: &LabelledTree, budget: u32) -> Result<Split> {
    if budget == 0 {
        return Err(Error::BudgetExhausted(0));
    }
    let m = t.monoid().as_ref();
    if m.size() > 64 {
        return Err(Error::MonoidTooLarge { size: m.size(), cap: 64 });
    }
    let mut b = Builder { t, m, budget, value: vec![0; t.n()], dead: HashSet::new() };
    let start = LevelState(vec![None; budget as usize]);
    if !b.solve(t.root(), &start) {
        return Err(Error::BudgetExhausted(budget));
    }
    let height = b.value.iter().copied().max().unwrap_or(1);
    let s = Split::from_raw(height, b.value, false);
    debug_assert!(validate_ramseyan(t, &s).is_none());
    Ok(Split { verified: true, ..s })
}

/// The `k`-neighbourhood classes on the branch from the root to `leaf`, top to bottom.
pub fn k_classes(t: &LabelledTree, s: &Split, leaf: NodeId, k: u32) -> Result<Vec<Vec<NodeId>>> {
    t.check(leaf)?;
    let branch = t.path(t.root(), leaf)?;
    let mut classes: Vec<Vec<NodeId>> = Vec::new();
    let mut open = false;
    for &z in &branch {
        let v = s.value[z];
        if v < k {
            open = false;
        } else if v == k {
            if open {
                classes.last_mut().expect("open class").push(z);
            } else {
                classes.push(vec![z]);
                open = true;
            }
        }
    }
    Ok(classes)
}

/// Witnesses `(z1, z2, z3)` for independence of `x` and `y` at level `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Independence {
    pub z1: NodeId,
    pub z2: NodeId,
    pub z3: NodeId,
}

/// Returns the lexicographically first witness triple along the path, if any.
pub fn independent_at(t: &LabelledTree, s: &Split, x: NodeId, y: NodeId, k: u32) -> Result<Option<Independence>> {
    if gap(t, s, x, y)? != k {
        return Ok(None);
    }
    let path = t.path(x, y)?;
    let gap_after = |a: NodeId, b: NodeId| if a == b { s.height + 1 } else { gap_unchecked(t, s, a, b) };
    let ks: Vec<NodeId> = path.iter().copied().filter(|&z| s.value[z] == k).collect();
    for (i, &z1) in ks.iter().enumerate() {
        if gap_after(x, z1) <= k {
            continue;
        }
        for &z2 in &ks[i + 1..] {
            if gap_after(z1, z2) <= k {
                continue;
            }
            for &z3 in ks.iter().filter(|&&z| t.is_ancestor(z2, z)) {
                if gap_after(z3, y) > k {
                    return Ok(Some(Independence { z1, z2, z3 }));
                }
            }
        }
    }
    Ok(None)
}

/// `tlbl(x, y)` computed through the split, skipping every section between the second
/// and last member of a separating neighbourhood class.
pub fn fast_tlbl(t: &LabelledTree, s: &Split, x: NodeId, y: NodeId) -> Result<Element> {
    if !s.verified {
        return Err(Error::SplitNotValidated);
    }
    t.check(x)?;
    t.check(y)?;
    if !t.is_ancestor(x, y) {
        return Err(Error::NotAncestor { ancestor: x, node: y });
    }
    Ok(fast_rec(t, s, x, y))
}

fn fast_rec(t: &LabelledTree, s: &Split, x: NodeId, y: NodeId) -> Element {
    let m = t.monoid();
    if x == y {
        return m.identity();
    }
    if t.parent(y) == Some(x) {
        return t.edge_label(y);
    }
    let k = gap_unchecked(t, s, x, y);
    // k-valued nodes strictly between, bottom first
    let mut between = Vec::new();
    let mut cur = t.parent(y).expect("below x");
    while cur != x {
        if s.value[cur] == k {
            between.push(cur);
        }
        cur = t.parent(cur).expect("below x");
    }
    between.reverse();
    match between.as_slice() {
        [z] => m.mul(fast_rec(t, s, x, *z), fast_rec(t, s, *z, y)),
        [z1, z2, .., z3] => {
            let head = m.mul(fast_rec(t, s, x, *z1), fast_rec(t, s, *z1, *z2));
            m.mul(head, fast_rec(t, s, *z3, y))
        }
        [z1, z3] => {
            let head = fast_rec(t, s, x, *z1);
            m.mul(m.mul(head, fast_rec(t, s, *z1, *z3)), fast_rec(t, s, *z3, y))
        }
        [] => unreachable!("gap below height + 1 has a witness"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::FiniteMonoid;
    use std::sync::Arc;

    fn chain(m: &Arc<FiniteMonoid>, labels: &[Element]) -> LabelledTree {
        let cells: Vec<_> = labels.iter().map(|&e| (m.identity(), e)).collect();
        LabelledTree::build_linear(m.clone(), &cells).unwrap()
    }

    fn caterpillar(m: &Arc<FiniteMonoid>, e: Element, len: usize) -> LabelledTree {
        LabelledTree::build_linear(m.clone(), &vec![(e, e); len]).unwrap()
    }

    fn spine(t: &LabelledTree) -> Vec<NodeId> {
        std::iter::successors(Some(t.root()), |&x| t.right(x)).collect()
    }

    #[test]
    fn gap_cases() {
        let m = Arc::new(FiniteMonoid::trivial());
        let t = chain(&m, &[m.identity(); 4]);
        let sp = spine(&t);
        let mut vals = vec![1; t.n()];
        vals[sp[1]] = 3;
        vals[sp[2]] = 1;
        vals[sp[3]] = 2;
        let s = Split::new(&t, 3, vals).unwrap();
        assert_eq!(gap(&t, &s, sp[0], sp[1]).unwrap(), 4);
        assert_eq!(gap(&t, &s, sp[2], sp[4]).unwrap(), 2);
        assert_eq!(gap(&t, &s, sp[0], sp[4]).unwrap(), 1);
        assert!(gap(&t, &s, sp[1], sp[0]).is_err());
    }

    #[test]
    fn validation_examples() {
        let u = Arc::new(FiniteMonoid::absorbing_pair());
        let t = caterpillar(&u, Element(1), 4);
        assert!(validate_ramseyan(&t, &Split::constant(&t, 1, 1).unwrap()).is_none());

        let z2 = Arc::new(FiniteMonoid::cyclic(2));
        let t = chain(&z2, &[Element(1); 2]);
        let s = Split::constant(&t, 1, 1).unwrap();
        let v = validate_ramseyan(&t, &s).unwrap();
        assert_eq!((v.x, v.y), (v.x2, v.y2));

        let single = LabelledTree::single(z2);
        assert!(validate_ramseyan(&single, &Split::constant(&single, 1, 1).unwrap()).is_none());
    }

    #[test]
    fn construction() {
        let u = Arc::new(FiniteMonoid::absorbing_pair());
        let t = caterpillar(&u, Element(1), 4);
        let s = construct_split(&t, 1).unwrap();
        assert!(s.values().iter().all(|&v| v == 1));

        let z2 = Arc::new(FiniteMonoid::cyclic(2));
        let t = chain(&z2, &[Element(1); 4]);
        let s = construct_split(&t, default_budget(&z2)).unwrap();
        assert!(s.height() <= 6);
        assert!(validate_ramseyan(&t, &s).is_none());
        assert_eq!(construct_split(&t, 0), Err(Error::BudgetExhausted(0)));
    }

    #[test]
    fn figure_branch_classes() {
        let m = Arc::new(FiniteMonoid::trivial());
        let t = chain(&m, &[m.identity(); 10]);
        let sp = spine(&t);
        assert_eq!(sp.len(), 11);
        let fig = [1, 2, 3, 2, 2, 3, 3, 1, 2, 3, 1];
        let mut vals = vec![1; t.n()];
        for (i, &v) in fig.iter().enumerate() {
            vals[sp[i]] = v;
        }
        let s = Split::new(&t, 3, vals).unwrap();
        let leaf = *sp.last().unwrap();
        let pos = |c: Vec<Vec<NodeId>>| -> Vec<Vec<usize>> {
            c.into_iter().map(|cl| cl.into_iter().map(|z| sp.iter().position(|&w| w == z).unwrap() + 1).collect()).collect()
        };
        assert_eq!(pos(k_classes(&t, &s, leaf, 1).unwrap()), vec![vec![1, 8, 11]]);
        assert_eq!(pos(k_classes(&t, &s, leaf, 2).unwrap()), vec![vec![2, 4, 5], vec![9]]);
        assert_eq!(pos(k_classes(&t, &s, leaf, 3).unwrap()), vec![vec![3], vec![6, 7], vec![10]]);
        assert!(k_classes(&t, &s, leaf, 4).unwrap().is_empty());
    }

    #[test]
    fn independence() {
        let m = Arc::new(FiniteMonoid::trivial());
        let t = chain(&m, &[m.identity(); 6]);
        let sp = spine(&t);
        // x=sp0 (2), z1=sp1 (1), sp2 (2), z2=sp3 (1), z3=sp4 (1), sp5 (2), y=sp6
        let mut vals = vec![2; t.n()];
        for i in [1, 3, 4] {
            vals[sp[i]] = 1;
        }
        let s = Split::new(&t, 2, vals).unwrap();
        let w = independent_at(&t, &s, sp[0], sp[6], 1).unwrap().unwrap();
        assert_eq!(w, Independence { z1: sp[1], z2: sp[3], z3: sp[4] });
        assert!(independent_at(&t, &s, sp[0], sp[1], 1).unwrap().is_none());

        let mut vals = vec![2; t.n()];
        vals[sp[3]] = 1;
        let s = Split::new(&t, 2, vals).unwrap();
        // one 1-valued node between: z1 and z2 cannot both exist
        assert!(independent_at(&t, &s, sp[0], sp[6], 1).unwrap().is_none());
    }

    #[test]
    fn fast_product_on_the_figure_pattern() {
        // a, b, c, d are edge labels into z1, z2, z3, y in the absorbing monoid {1, e}
        let u = Arc::new(FiniteMonoid::absorbing_pair());
        let t = chain(&u, &[Element(0), Element(1), Element(1), Element(1)]);
        let mut s = construct_split(&t, 3).unwrap();
        let sp = spine(&t);
        s.verify(&t).unwrap();
        for &x in &sp {
            for &y in &sp {
                if t.is_ancestor(x, y) {
                    assert_eq!(fast_tlbl(&t, &s, x, y).unwrap(), t.tlbl(x, y).unwrap());
                }
            }
        }
        let unverified = Split::constant(&t, 1, 1).unwrap();
        assert_eq!(fast_tlbl(&t, &unverified, 0, 0), Err(Error::SplitNotValidated));
    }
}
