//! Ternary relations and relational semigroups and monoids.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::psg::PartialMonoid;
use crate::{Error, LawReport, Result};

/// A ternary relation `R ⊆ X × Y × Z` indexed by its first component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryRel {
    sizes: [usize; 3],
    triples: Vec<(usize, usize, usize)>,
    index: Vec<Vec<(usize, usize)>>,
}

impl TernaryRel {
    pub fn new(nx: usize, ny: usize, nz: usize, triples: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Self> {
        let mut triples: Vec<_> = triples.into_iter().collect();
        if let Some(t) = triples.iter().find(|t| t.0 >= nx || t.1 >= ny || t.2 >= nz) {
            return Err(Error::invalid(format!("triple {t:?} out of range")));
        }
        triples.sort_unstable();
        triples.dedup();
        let mut index = vec![Vec::new(); nx];
        for &(x, y, z) in &triples {
            index[x].push((y, z));
        }
        Ok(TernaryRel {
            sizes: [nx, ny, nz],
            triples,
            index,
        })
    }

    /// A relation with `X = Y = Z` of size `n`.
    pub fn homogeneous(n: usize, triples: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Self> {
        Self::new(n, n, n, triples)
    }

    pub fn sizes(&self) -> [usize; 3] {
        self.sizes
    }

    pub fn is_homogeneous(&self) -> bool {
        self.sizes[0] == self.sizes[1] && self.sizes[1] == self.sizes[2]
    }

    /// Size of the carrier of a homogeneous relation.
    pub fn carrier_len(&self) -> usize {
        self.sizes[0]
    }

    pub fn triples(&self) -> &[(usize, usize, usize)] {
        &self.triples
    }

    /// All `(y, z)` with `R x y z`.
    pub fn row(&self, x: usize) -> &[(usize, usize)] {
        &self.index[x]
    }

    pub fn contains(&self, x: usize, y: usize, z: usize) -> bool {
        self.index[x].binary_search(&(y, z)).is_ok()
    }

    /// The relation `{(x, z, y) | R x y z}`.
    pub fn swap_args(&self) -> TernaryRel {
        let [nx, ny, nz] = self.sizes;
        TernaryRel::new(nx, nz, ny, self.triples.iter().map(|&(x, y, z)| (x, z, y))).unwrap()
    }

    /// Union with another relation of the same shape.
    pub fn union(&self, other: &TernaryRel) -> Result<TernaryRel> {
        if self.sizes != other.sizes {
            return Err(Error::invalid("relations of different shapes"));
        }
        let [nx, ny, nz] = self.sizes;
        TernaryRel::new(nx, ny, nz, self.triples.iter().chain(other.triples.iter()).copied())
    }
}

/// A violation of relational associativity at `(x, u, v, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssocWitness {
    pub x: usize,
    pub u: usize,
    pub v: usize,
    pub w: usize,
    /// Whether `∃y. R y u v ∧ R x y w` holds (the other side then fails).
    pub left_holds: bool,
}

/// Checks `(∃y. R y u v ∧ R x y w) ⇔ (∃z. R z v w ∧ R x u z)`.
///
/// Returns the lexicographically first violating quadruple.
pub fn check_rel_assoc(r: &TernaryRel) -> Option<AssocWitness> {
    assert!(r.is_homogeneous(), "relational associativity needs X = Y = Z");
    let n = r.carrier_len();
    let mut by_second = vec![Vec::new(); n];
    let mut by_third = vec![Vec::new(); n];
    for &(x, y, z) in r.triples() {
        by_second[y].push((x, z));
        by_third[z].push((x, y));
    }
    let mut left = BTreeSet::new();
    for &(y, u, v) in r.triples() {
        for &(x, w) in &by_second[y] {
            left.insert((x, u, v, w));
        }
    }
    let mut right = BTreeSet::new();
    for &(z, v, w) in r.triples() {
        for &(x, u) in &by_third[z] {
            right.insert((x, u, v, w));
        }
    }
    left.symmetric_difference(&right)
        .min()
        .map(|&(x, u, v, w)| AssocWitness {
            x,
            u,
            v,
            w,
            left_holds: left.contains(&(x, u, v, w)),
        })
}

/// Checks the relational unit axioms; returns a description of the first failure.
pub fn check_rel_units(r: &TernaryRel, xi: &[usize]) -> Option<String> {
    let n = r.carrier_len();
    for y in 0..n {
        if !xi.iter().any(|&e| r.contains(y, e, y)) {
            return Some(format!("no e ∈ ξ with R {y} e {y}"));
        }
        if !xi.iter().any(|&e| r.contains(y, y, e)) {
            return Some(format!("no e ∈ ξ with R {y} {y} e"));
        }
    }
    for &e in xi {
        for &(x, y, z) in r.triples() {
            if y == e && x != z {
                return Some(format!("R {x} {e} {z} with {x} ≠ {z}"));
            }
            if z == e && x != y {
                return Some(format!("R {x} {y} {e} with {x} ≠ {y}"));
            }
        }
    }
    None
}

/// Checks `R x y z ⇒ R x z y`; returns the first counterexample.
pub fn check_rel_commutative(r: &TernaryRel) -> Option<(usize, usize, usize)> {
    r.triples().iter().copied().find(|&(x, y, z)| !r.contains(x, z, y))
}

/// Finite relations are always locally finite; returns the largest row size.
pub fn check_locally_finite(r: &TernaryRel) -> (bool, usize) {
    (true, r.index.iter().map(Vec::len).max().unwrap_or(0))
}

/// A relational monoid; a relational semigroup when `units` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelMonoid {
    names: Vec<String>,
    rel: TernaryRel,
    units: Vec<usize>,
}

impl RelMonoid {
    /// Validates relational associativity and, when units are given, the unit axioms.
    pub fn new(names: Vec<String>, rel: TernaryRel, units: Vec<usize>) -> Result<Self> {
        let m = Self::new_unchecked(names, rel, units)?;
        if let Some(w) = check_rel_assoc(&m.rel) {
            return Err(Error::violation("relational associativity", m.show_assoc(&w)));
        }
        if !m.units.is_empty() {
            if let Some(w) = check_rel_units(&m.rel, &m.units) {
                return Err(Error::violation("relational unit axioms", w));
            }
        }
        Ok(m)
    }

    /// Builds without checking any axiom.
    pub fn new_unchecked(names: Vec<String>, rel: TernaryRel, mut units: Vec<usize>) -> Result<Self> {
        if !rel.is_homogeneous() || rel.carrier_len() != names.len() {
            return Err(Error::invalid("relation does not match the carrier"));
        }
        if units.iter().any(|&u| u >= names.len()) {
            return Err(Error::invalid("unit out of range"));
        }
        units.sort_unstable();
        units.dedup();
        Ok(RelMonoid { names, rel, units })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn rel(&self) -> &TernaryRel {
        &self.rel
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn show_assoc(&self, w: &AssocWitness) -> String {
        let side = if w.left_holds { "∃y side holds, ∃z side fails" } else { "∃z side holds, ∃y side fails" };
        format!(
            "x={}, u={}, v={}, w={} ({side})",
            self.name(w.x),
            self.name(w.u),
            self.name(w.v),
            self.name(w.w)
        )
    }

    /// Runs every structural check and collects the results.
    pub fn report(&self) -> LawReport {
        let n = self.len() as u64;
        let mut r = LawReport::new(format!("relational structure on {} elements", self.len()));
        r.record("relational-associativity", n.pow(4), check_rel_assoc(&self.rel).map(|w| self.show_assoc(&w)));
        if self.units.is_empty() {
            r.skip("relational-units", "no units claimed");
        } else {
            r.record("relational-units", n * self.units.len() as u64, check_rel_units(&self.rel, &self.units));
        }
        let comm = check_rel_commutative(&self.rel)
            .map(|(x, y, z)| format!("R {} {} {} but not R {} {} {}", self.name(x), self.name(y), self.name(z), self.name(x), self.name(z), self.name(y)));
        r.record_optional("relational-commutativity", self.rel.triples().len() as u64, comm);
        let (_, fan) = check_locally_finite(&self.rel);
        r.record("locally-finite", n, None).note = Some(format!("max fan-out {fan}"));
        r
    }

    pub fn from_json(doc: &RelJson) -> Result<Self> {
        let n = doc.carrier.len();
        let rel = TernaryRel::homogeneous(n, doc.triples.iter().map(|t| (t[0], t[1], t[2])))?;
        Self::new_unchecked(doc.carrier.clone(), rel, doc.units.clone())
    }

    pub fn to_json(&self) -> RelJson {
        RelJson {
            carrier: self.names.clone(),
            triples: self.rel.triples().iter().map(|&(x, y, z)| [x, y, z]).collect(),
            units: self.units.clone(),
        }
    }
}

/// JSON document for a relational monoid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelJson {
    pub carrier: Vec<String>,
    pub triples: Vec<[usize; 3]>,
    #[serde(default)]
    pub units: Vec<usize>,
}

/// `R x y z ⇔ D y z ∧ x = y·z`, with the units of `m`.
pub fn rel_of_psg(m: &PartialMonoid) -> Result<RelMonoid> {
    let n = m.len();
    let triples = (0..n)
        .flat_map(|y| (0..n).map(move |z| (y, z)))
        .filter_map(|(y, z)| m.compose(y, z).map(|x| (x, y, z)));
    let rel = TernaryRel::homogeneous(n, triples)?;
    RelMonoid::new(m.names().to_vec(), rel, m.units().to_vec())
}

/// The two-element relation `{(a,b,b), (b,b,a)}`, which is not associative.
pub fn assoc_counterexample() -> RelMonoid {
    let rel = TernaryRel::homogeneous(2, [(0, 1, 1), (1, 1, 0)]).unwrap();
    RelMonoid::new_unchecked(vec!["a".into(), "b".into()], rel, vec![]).unwrap()
}

/// Binary trees with at most three `a`-leaves; `R x y z` when `x` has left
/// subtree `y` and right subtree `z`.
pub fn tree_relation() -> RelMonoid {
    let names = ["a", "(a·a)", "(a·(a·a))", "((a·a)·a)"];
    let rel = TernaryRel::homogeneous(4, [(1, 0, 0), (2, 0, 1), (3, 1, 0)]).unwrap();
    RelMonoid::new_unchecked(names.iter().map(|s| s.to_string()).collect(), rel, vec![]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psg::{free_monoid, one_point, pairs_monoid, PartialMonoid};

    #[test]
    fn counterexample_is_not_associative() {
        let m = assoc_counterexample();
        let w = check_rel_assoc(m.rel()).unwrap();
        assert_eq!((w.x, w.u, w.v, w.w), (0, 1, 0, 1));
        assert!(w.left_holds);
        assert!(RelMonoid::new(m.names().to_vec(), m.rel().clone(), vec![]).is_err());
    }

    #[test]
    fn empty_relation_is_associative_and_commutative() {
        let r = TernaryRel::homogeneous(3, []).unwrap();
        assert!(check_rel_assoc(&r).is_none());
        assert!(check_rel_commutative(&r).is_none());
        assert_eq!(check_locally_finite(&r), (true, 0));
    }

    #[test]
    fn free_monoid_relation() {
        let m = free_monoid(&["a", "b"], 2);
        let r = rel_of_psg(&m).unwrap();
        let (ab, a, b) = (m.index_of("ab").unwrap(), m.index_of("a").unwrap(), m.index_of("b").unwrap());
        assert!(r.rel().contains(ab, a, b));
        let single = rel_of_psg(&free_monoid(&["a"], 3)).unwrap();
        assert!(check_rel_assoc(single.rel()).is_none());
    }

    #[test]
    fn pairs_relation() {
        let m = pairs_monoid(&["1", "2", "3"]);
        let r = rel_of_psg(&m).unwrap();
        let ix = |s: &str| m.index_of(s).unwrap();
        assert!(r.rel().contains(ix("(1,3)"), ix("(1,2)"), ix("(2,3)")));
        let (_, fan) = check_locally_finite(rel_of_psg(&pairs_monoid(&["1", "2"])).unwrap().rel());
        assert!(fan <= 2);
        assert!(check_rel_units(r.rel(), r.units()).is_none());
    }

    #[test]
    fn empty_composition_gives_empty_relation() {
        let m = PartialMonoid::from_fn(vec!["a".into(), "b".into()], |_, _| None, vec![]).unwrap();
        assert!(rel_of_psg(&m).unwrap().rel().triples().is_empty());
    }

    #[test]
    fn symmetric_closure_commutes() {
        let r = assoc_counterexample().rel().clone();
        let sym = r.union(&r.swap_args()).unwrap();
        assert!(check_rel_commutative(&sym).is_none());
    }

    #[test]
    fn one_point_monoid() {
        let r = rel_of_psg(&one_point()).unwrap();
        assert!(check_rel_units(r.rel(), r.units()).is_none());
        assert!(r.report().passed());
    }

    #[test]
    fn json_round_trip() {
        let m = rel_of_psg(&pairs_monoid(&["1", "2"])).unwrap();
        let doc: RelJson = serde_json::from_str(&serde_json::to_string(&m.to_json()).unwrap()).unwrap();
        assert_eq!(RelMonoid::from_json(&doc).unwrap(), m);
    }
}
