//! Finite posets, their segments and the interval relations built from
//! segment fusion.
//!
//! Segments are kept as bound pairs `[lo, hi]`; the set reading
//! `σ[i,j] = {k | i ≤ k ≤ j}` is only offered as a diagnostic.

mod relations;

pub use relations::{
    allen_relations, check_allen_definability, check_hs_modalities, hs_modality, venema_relations,
    AllenRelations, HsModality, VenemaRelations,
};

use serde::{Deserialize, Serialize};

use crate::psg::PartialMonoid;
use crate::relstruct::TernaryRel;
use crate::{Error, Result};

/// A finite partial order, stored as its full order matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    names: Vec<String>,
    leq: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub carrier: Vec<String>,
    pub leq: Vec<[usize; 2]>,
}

impl FinPoset {
    /// Builds the reflexive-transitive closure of `pairs` and checks antisymmetry.
    pub fn new(names: Vec<String>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::invalid(format!("order pair ({i},{j}) out of range")));
            }
            leq[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::violation(
                        "antisymmetry",
                        format!("{} ≤ {} ≤ {}", names[i], names[j], names[i]),
                    ));
                }
            }
        }
        Ok(FinPoset { names, leq })
    }

    /// The chain `0 < 1 < … < n`.
    pub fn chain(n: usize) -> Self {
        let names = (0..=n).map(|i| i.to_string()).collect();
        Self::new(names, (0..n).map(|i| (i, i + 1))).unwrap()
    }

    /// `⊥ < a, b < ⊤` with `a` and `b` incomparable.
    pub fn diamond() -> Self {
        let names = ["⊥", "a", "b", "⊤"].map(String::from).to_vec();
        Self::new(names, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Two disjoint two-element chains `a0 < a1` and `b0 < b1`.
    pub fn forest() -> Self {
        let names = ["a0", "a1", "b0", "b1"].map(String::from).to_vec();
        Self::new(names, [(0, 1), (2, 3)]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn from_json(doc: &PosetJson) -> Result<Self> {
        Self::new(doc.carrier.clone(), doc.leq.iter().map(|&[i, j]| (i, j)))
    }

    /// Serialises the strict covering-free order (all pairs `i < j`).
    pub fn to_json(&self) -> PosetJson {
        let n = self.len();
        let leq = (0..n * n)
            .map(|ij| (ij / n, ij % n))
            .filter(|&(i, j)| i != j && self.leq(i, j))
            .map(|(i, j)| [i, j])
            .collect();
        PosetJson { carrier: self.names.clone(), leq }
    }
}

/// Looks for `i ≤ k, l ≤ j` with `k` and `l` incomparable; `None` when the
/// poset has the linear interval property.
pub fn check_li(p: &FinPoset) -> Option<[usize; 4]> {
    let n = p.len();
    for i in 0..n {
        for j in (0..n).filter(|&j| p.leq(i, j)) {
            let between: Vec<_> = (0..n).filter(|&k| p.leq(i, k) && p.leq(k, j)).collect();
            for (a, &k) in between.iter().enumerate() {
                if let Some(&l) = between[a + 1..].iter().find(|&&l| !p.comparable(k, l)) {
                    return Some([i, j, k, l]);
                }
            }
        }
    }
    None
}

/// The segments of a poset under fusion `[i,j]·[j,k] = [i,k]`.
#[derive(Debug, Clone)]
pub struct Segments {
    poset: FinPoset,
    strict: bool,
    bounds: Vec<(usize, usize)>,
    monoid: PartialMonoid,
}

impl Segments {
    pub fn new(poset: &FinPoset, strict: bool) -> Self {
        let n = poset.len();
        let bounds: Vec<_> = (0..n * n)
            .map(|ij| (ij / n, ij % n))
            .filter(|&(i, j)| poset.leq(i, j) && !(strict && i == j))
            .collect();
        let names = bounds
            .iter()
            .map(|&(i, j)| format!("[{},{}]", poset.name(i), poset.name(j)))
            .collect();
        let find = |b: (usize, usize)| bounds.iter().position(|&c| c == b);
        let units = if strict {
            Vec::new()
        } else {
            (0..bounds.len()).filter(|&s| bounds[s].0 == bounds[s].1).collect()
        };
        let monoid = PartialMonoid::from_fn(
            names,
            |x, y| {
                let ((i, j), (k, l)) = (bounds[x], bounds[y]);
                if j == k { find((i, l)) } else { None }
            },
            units,
        )
        .expect("segment fusion stays in range");
        Segments { poset: poset.clone(), strict, bounds, monoid }
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn bounds(&self, s: usize) -> (usize, usize) {
        self.bounds[s]
    }

    /// The index of `[lo, hi]`, if it is a segment of this set.
    pub fn segment(&self, lo: usize, hi: usize) -> Option<usize> {
        self.bounds.iter().position(|&b| b == (lo, hi))
    }

    /// Looks a segment up by its "[lo,hi]" name.
    pub fn by_name(&self, name: &str) -> Option<usize> {
        self.monoid.index_of(name)
    }

    pub fn monoid(&self) -> &PartialMonoid {
        &self.monoid
    }

    pub fn names(&self) -> &[String] {
        self.monoid.names()
    }

    /// `C x y z ⇔ D y z ∧ x = y·z`.
    pub fn chop(&self) -> TernaryRel {
        let n = self.len();
        let triples = (0..n * n).filter_map(|yz| {
            let (y, z) = (yz / n, yz % n);
            self.monoid.compose(y, z).map(|x| (x, y, z))
        });
        TernaryRel::homogeneous(n, triples).unwrap()
    }

    /// `σ[i,j]` as a bit set over the poset.
    pub fn sigma(&self, s: usize) -> u64 {
        let (i, j) = self.bounds[s];
        (0..self.poset.len())
            .filter(|&k| self.poset.leq(i, k) && self.poset.leq(k, j))
            .fold(0, |acc, k| acc | 1 << k)
    }

    /// A composable pair with `σ(x·y) ≠ σx ∪ σy`, if any.
    pub fn sigma_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n * n).map(|xy| (xy / n, xy % n)).find(|&(x, y)| {
            self.monoid
                .compose(x, y)
                .is_some_and(|c| self.sigma(c) != self.sigma(x) | self.sigma(y))
        })
    }
}

/// The (strict) segment fusion monoid of `p`.
pub fn segment_monoid(p: &FinPoset, strict: bool) -> PartialMonoid {
    Segments::new(p, strict).monoid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psg::{check_psg_laws, unit_candidates};

    #[test]
    fn li_property_of_the_catalog() {
        assert_eq!(check_li(&FinPoset::chain(4)), None);
        assert_eq!(check_li(&FinPoset::diamond()), Some([0, 3, 1, 2]));
        assert_eq!(check_li(&FinPoset::forest()), None);
    }

    #[test]
    fn fusion() {
        let m = segment_monoid(&FinPoset::chain(5), false);
        assert_eq!(m.compose_named("[0,2]", "[2,5]"), Some("[0,5]"));
        assert_eq!(m.compose_named("[0,2]", "[3,5]"), None);
        assert!(check_psg_laws(&m).passed());
    }

    #[test]
    fn strict_segments_have_no_unit() {
        let m = segment_monoid(&FinPoset::chain(3), true);
        assert_eq!(m.len(), 6);
        assert!(m.units().is_empty());
        assert!(unit_candidates(&m).is_empty());
    }

    #[test]
    fn closure_and_antisymmetry() {
        let p = FinPoset::new(vec!["x".into(), "y".into(), "z".into()], [(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(FinPoset::from_json(&p.to_json()).unwrap(), p);
        assert!(FinPoset::new(vec!["x".into(), "y".into()], [(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn sigma_is_faithful_only_on_li_posets() {
        for n in 0..=5 {
            assert_eq!(Segments::new(&FinPoset::chain(n), false).sigma_witness(), None);
        }
        let d = Segments::new(&FinPoset::diamond(), false);
        let (x, y) = d.sigma_witness().unwrap();
        let c = d.monoid().compose(x, y).unwrap();
        let (sx, sy, sc) = (d.sigma(x), d.sigma(y), d.sigma(c));
        assert!(sc & (sx | sy) == sx | sy && sc != sx | sy);
    }
}
