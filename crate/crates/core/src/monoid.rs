//! Finite monoids given by Cayley tables and morphisms from finite alphabets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a [`FiniteMonoid`], as a dense index into its table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub u32);

impl Element {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Element {
    fn from(i: usize) -> Self {
        Element(i as u32)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Default cap on the size of monoids whose axioms are checked on construction.
pub const DEFAULT_SIZE_CAP: usize = 64;

/// A finite monoid with elements `0..size`. Row index is the left factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    identity: Element,
    table: Vec<Element>,
    names: Option<Vec<String>>,
}

impl FiniteMonoid {
    /// Builds and validates a monoid from a square table.
    pub fn new(identity: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_cap(identity, table, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(identity: usize, table: Vec<Vec<usize>>, cap: usize) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(Error::Empty("monoid table"));
        }
        if size > cap {
            return Err(Error::MonoidTooLarge { size, cap });
        }
        let mut flat = Vec::with_capacity(size * size);
        for (row, cells) in table.iter().enumerate() {
            if cells.len() != size {
                return Err(Error::TableShape { size, rows: size, cols: cells.len() });
            }
            for (col, &value) in cells.iter().enumerate() {
                if value >= size {
                    return Err(Error::TableEntry { row, col, value, size });
                }
                flat.push(Element::from(value));
            }
        }
        if identity >= size {
            return Err(Error::ElementOutOfRange(identity));
        }
        let m = FiniteMonoid { size, identity: Element::from(identity), table: flat, names: None };
        m.validate()?;
        Ok(m)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::InvalidArgument(format!(
                "{} names for a monoid of size {}",
                names.len(),
                self.size
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Checks the identity law and associativity, reporting the first failure.
    pub fn validate(&self) -> Result<()> {
        let e = self.identity;
        for x in self.elements() {
            if self.mul(e, x) != x || self.mul(x, e) != x {
                return Err(Error::IdentityLaw { identity: e.idx(), x: x.idx() });
            }
        }
        for x in self.elements() {
            for y in self.elements() {
                let xy = self.mul(x, y);
                for z in self.elements() {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Err(Error::Associativity { x: x.idx(), y: y.idx(), z: z.idx() });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, e: Element) -> String {
        match &self.names {
            Some(n) => n[e.idx()].clone(),
            None => e.to_string(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size).map(Element::from)
    }

    pub fn contains(&self, e: Element) -> bool {
        e.idx() < self.size
    }

    pub fn check(&self, e: Element) -> Result<Element> {
        if self.contains(e) {
            Ok(e)
        } else {
            Err(Error::ElementOutOfRange(e.idx()))
        }
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a.idx() * self.size + b.idx()]
    }

    /// Left fold of the table starting at the identity.
    pub fn product<I: IntoIterator<Item = Element>>(&self, xs: I) -> Element {
        xs.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    /// [`product`](Self::product) over raw indices, rejecting out-of-range ones.
    pub fn try_product(&self, xs: &[usize]) -> Result<Element> {
        let mut acc = self.identity;
        for &x in xs {
            if x >= self.size {
                return Err(Error::ElementOutOfRange(x));
            }
            acc = self.mul(acc, Element::from(x));
        }
        Ok(acc)
    }

    pub fn is_idempotent(&self, e: Element) -> Result<bool> {
        self.check(e)?;
        Ok(self.mul(e, e) == e)
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.iter().map(|e| e.idx()).collect()).collect()
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        FiniteMonoid::new(0, vec![vec![0]]).expect("trivial monoid")
    }

    /// `{1, a}` with `a·a = a`.
    pub fn absorbing_pair() -> Self {
        FiniteMonoid::new(0, vec![vec![0, 1], vec![1, 1]])
            .expect("U1")
            .with_names(vec!["1".into(), "a".into()])
            .expect("names")
    }

    /// The cyclic group of order `n`, element `i` being the `i`-th power of the generator.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteMonoid::new(0, table).expect("cyclic group")
    }

    /// Transition monoid generated by transformations of `0..states`.
    ///
    /// Element 0 is the identity and elements `1..=gens.len()` are the generators in
    /// order, unless a generator coincides with an earlier element. Composition reads
    /// left to right: `a·b` applies `a` first.
    pub fn from_transformations(states: usize, gens: &[Vec<usize>]) -> Result<(Self, Vec<Element>)> {
        Self::from_transformations_capped(states, gens, DEFAULT_SIZE_CAP)
    }

    pub fn from_transformations_capped(
        states: usize,
        gens: &[Vec<usize>],
        cap: usize,
    ) -> Result<(Self, Vec<Element>)> {
        for g in gens {
            if g.len() != states || g.iter().any(|&s| s >= states) {
                return Err(Error::InvalidArgument("transformation out of range".into()));
            }
        }
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut elems: Vec<Vec<usize>> = Vec::new();
        let id: Vec<usize> = (0..states).collect();
        index.insert(id.clone(), 0);
        elems.push(id);
        let mut gen_elems = Vec::with_capacity(gens.len());
        for g in gens {
            let i = *index.entry(g.clone()).or_insert_with(|| {
                elems.push(g.clone());
                elems.len() - 1
            });
            gen_elems.push(Element::from(i));
        }
        let mut frontier = 0;
        while frontier < elems.len() {
            if elems.len() > cap {
                return Err(Error::MonoidTooLarge { size: elems.len(), cap });
            }
            let a = elems[frontier].clone();
            for g in gens {
                let ag: Vec<usize> = a.iter().map(|&s| g[s]).collect();
                if !index.contains_key(&ag) {
                    index.insert(ag.clone(), elems.len());
                    elems.push(ag);
                }
            }
            frontier += 1;
        }
        if elems.len() > cap {
            return Err(Error::MonoidTooLarge { size: elems.len(), cap });
        }
        let table = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let ab: Vec<usize> = a.iter().map(|&s| b[s]).collect();
                        index[&ab]
                    })
                    .collect()
            })
            .collect();
        Ok((FiniteMonoid::with_cap(0, table, cap)?, gen_elems))
    }
}

/// A morphism from words over a finite alphabet into a [`FiniteMonoid`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    alphabet: Vec<String>,
    image: Vec<Element>,
    lookup: BTreeMap<String, usize>,
    monoid: Arc<FiniteMonoid>,
}

impl Morphism {
    pub fn new(monoid: Arc<FiniteMonoid>, alphabet: Vec<String>, image: Vec<Element>) -> Result<Self> {
        if alphabet.len() != image.len() {
            return Err(Error::MorphismArity { symbols: alphabet.len(), images: image.len() });
        }
        let mut lookup = BTreeMap::new();
        for (i, s) in alphabet.iter().enumerate() {
            if lookup.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        for &e in &image {
            monoid.check(e)?;
        }
        Ok(Morphism { alphabet, image, lookup, monoid })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn images(&self) -> &[Element] {
        &self.image
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn symbol(&self, s: &str) -> Result<Element> {
        self.lookup
            .get(s)
            .map(|&i| self.image[i])
            .ok_or_else(|| Error::UnknownSymbol(s.to_string()))
    }

    /// Image of a word; the empty word maps to the identity.
    pub fn apply<S: AsRef<str>>(&self, word: &[S]) -> Result<Element> {
        let mut acc = self.monoid.identity();
        for s in word {
            acc = self.monoid.mul(acc, self.symbol(s.as_ref())?);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteMonoid {
        FiniteMonoid::cyclic(2)
    }

    #[test]
    fn small_monoids_validate() {
        assert!(FiniteMonoid::trivial().validate().is_ok());
        assert!(FiniteMonoid::absorbing_pair().validate().is_ok());
        assert!(z2().validate().is_ok());
    }

    #[test]
    fn non_associative_table_names_a_triple() {
        // 0 identity; 1*1 = 2, 2*2 = 1, 1*2 = 1, 2*1 = 2: (1*1)*2 = 1 but 1*(1*2) = 2
        let err = FiniteMonoid::new(0, vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 1]]).unwrap_err();
        assert!(matches!(err, Error::Associativity { .. }), "{err:?}");
    }

    #[test]
    fn identity_law_is_checked() {
        let err = FiniteMonoid::new(0, vec![vec![0, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::IdentityLaw { identity: 0, x: 1 });
    }

    #[test]
    fn bad_cell_is_reported() {
        let err = FiniteMonoid::new(0, vec![vec![0, 1], vec![1, 5]]).unwrap_err();
        assert_eq!(err, Error::TableEntry { row: 1, col: 1, value: 5, size: 2 });
    }

    #[test]
    fn size_cap_applies() {
        let table = (0..5).map(|i| (0..5).map(|j| (i + j) % 5).collect()).collect();
        assert!(matches!(FiniteMonoid::with_cap(0, table, 4), Err(Error::MonoidTooLarge { .. })));
    }

    #[test]
    fn products() {
        let u = FiniteMonoid::absorbing_pair();
        assert_eq!(u.product([]), u.identity());
        assert_eq!(u.try_product(&[1, 1, 1]).unwrap(), Element(1));
        // g^3 = g in Z2
        assert_eq!(z2().try_product(&[1, 1, 1]).unwrap(), Element(1));
        assert_eq!(z2().try_product(&[1, 2]), Err(Error::ElementOutOfRange(2)));
    }

    #[test]
    fn idempotents() {
        let u = FiniteMonoid::absorbing_pair();
        assert!(u.is_idempotent(u.identity()).unwrap());
        assert!(u.is_idempotent(Element(1)).unwrap());
        assert!(!z2().is_idempotent(Element(1)).unwrap());
        assert!(z2().is_idempotent(Element(7)).is_err());
    }

    #[test]
    fn morphism_application() {
        let u = Arc::new(FiniteMonoid::absorbing_pair());
        let mu = Morphism::new(u, vec!["x".into()], vec![Element(1)]).unwrap();
        assert_eq!(mu.apply::<&str>(&[]).unwrap(), Element(0));
        assert_eq!(mu.apply(&["x", "x", "x"]).unwrap(), Element(1));
        assert_eq!(mu.apply(&["y"]), Err(Error::UnknownSymbol("y".into())));

        let g = Morphism::new(Arc::new(z2()), vec!["x".into()], vec![Element(1)]).unwrap();
        assert_eq!(g.apply(&["x", "x"]).unwrap(), Element(0));
    }

    #[test]
    fn transformation_monoid_of_flip() {
        let (m, gens) = FiniteMonoid::from_transformations(2, &[vec![1, 0]]).unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(gens, vec![Element(1)]);
        assert_eq!(m.mul(Element(1), Element(1)), Element(0));
    }
}
