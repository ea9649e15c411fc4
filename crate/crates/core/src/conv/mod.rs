//! Convolution algebras: function tables into a quantale, relational
//! convolution, unary modalities and their residuals.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{residual_left, residual_right, Enumerable, FiniteQuantale, Lattice, Quantale};
use crate::relstruct::{RelMonoid, TernaryRel};
use crate::{Error, Result};

mod laws;
mod lifting;

pub use laws::{
    bdia_as_convolution, check_binary_module, check_conjugation, check_galois, check_residual_galois, check_unary_module,
    convolution_as_fdia, fdia_as_convolution, pair_relation,
};
pub use lifting::{all_tables, check_embedding, check_lifting, random_tables, LiftMode, LiftOptions};

/// A total function from `0..len` into a lattice carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct FnTable<E> {
    values: Vec<E>,
}

impl<E: Copy> FnTable<E> {
    pub fn new(values: Vec<E>) -> Self {
        FnTable { values }
    }

    pub fn constant(len: usize, e: E) -> Self {
        FnTable { values: vec![e; len] }
    }

    /// `on` at the listed points, `off` elsewhere.
    pub fn indicator(len: usize, points: &[usize], on: E, off: E) -> Self {
        let mut values = vec![off; len];
        for &p in points {
            values[p] = on;
        }
        FnTable { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, x: usize) -> E {
        self.values[x]
    }

    pub fn values(&self) -> &[E] {
        &self.values
    }

    pub fn map<F: Copy>(&self, f: impl Fn(E) -> F) -> FnTable<F> {
        FnTable {
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// Pointwise join.
pub fn join<L: Lattice>(l: &L, f: &FnTable<L::Elem>, g: &FnTable<L::Elem>) -> FnTable<L::Elem> {
    FnTable::new(f.values.iter().zip(&g.values).map(|(&a, &b)| l.join(a, b)).collect())
}

/// Pointwise meet.
pub fn meet<L: Lattice>(l: &L, f: &FnTable<L::Elem>, g: &FnTable<L::Elem>) -> FnTable<L::Elem> {
    FnTable::new(f.values.iter().zip(&g.values).map(|(&a, &b)| l.meet(a, b)).collect())
}

/// Pointwise join of a family of tables of length `len`.
pub fn join_all<L: Lattice>(l: &L, len: usize, fs: &[FnTable<L::Elem>]) -> FnTable<L::Elem> {
    fs.iter().fold(FnTable::constant(len, l.bottom()), |acc, f| join(l, &acc, f))
}

/// Pointwise order.
pub fn leq<L: Lattice>(l: &L, f: &FnTable<L::Elem>, g: &FnTable<L::Elem>) -> bool {
    f.values.iter().zip(&g.values).all(|(&a, &b)| l.leq(a, b))
}

/// Pointwise equality up to the lattice's notion of sameness.
pub fn same<L: Lattice>(l: &L, f: &FnTable<L::Elem>, g: &FnTable<L::Elem>) -> bool {
    f.len() == g.len() && f.values.iter().zip(&g.values).all(|(&a, &b)| l.same(a, b))
}

/// First point where two tables differ.
pub fn first_difference<L: Lattice>(l: &L, f: &FnTable<L::Elem>, g: &FnTable<L::Elem>) -> Option<usize> {
    (0..f.len()).find(|&x| !l.same(f.get(x), g.get(x)))
}

/// Renders a table as `(x↦v, ...)` using point names.
pub fn show_table<L: Lattice>(l: &L, names: &[String], f: &FnTable<L::Elem>) -> String {
    let items: Vec<String> = (0..f.len())
        .map(|x| format!("{}↦{}", names.get(x).map_or_else(|| x.to_string(), Clone::clone), l.show(f.get(x))))
        .collect();
    format!("({})", items.join(", "))
}

/// `(f ∗_R g) x = ⊔{f y · g z | R x y z}`; an empty row gives bottom.
pub fn convolve<Q: Quantale>(
    q: &Q,
    r: &TernaryRel,
    f: &FnTable<Q::Elem>,
    g: &FnTable<Q::Elem>,
) -> Result<FnTable<Q::Elem>> {
    let [_, ny, nz] = r.sizes();
    if f.len() != ny || g.len() != nz {
        return Err(Error::invalid(format!(
            "convolution arguments have sizes {} and {}, relation expects {ny} and {nz}",
            f.len(),
            g.len()
        )));
    }
    Ok(conv_raw(q, r, f, g))
}

pub(crate) fn conv_raw<Q: Quantale>(
    q: &Q,
    r: &TernaryRel,
    f: &FnTable<Q::Elem>,
    g: &FnTable<Q::Elem>,
) -> FnTable<Q::Elem> {
    let nx = r.sizes()[0];
    FnTable::new(
        (0..nx)
            .map(|x| q.join_all(r.row(x).iter().map(|&(y, z)| q.compose(f.get(y), g.get(z)))))
            .collect(),
    )
}

/// The Kronecker unit `⊔_{e∈ξ} δe`.
pub fn delta_unit<Q: Quantale>(m: &RelMonoid, q: &Q) -> Result<FnTable<Q::Elem>> {
    let one = q
        .unit()
        .ok_or_else(|| Error::Unsupported(format!("{} is not unital", q.name())))?;
    if m.units().is_empty() {
        return Err(Error::invalid("relational structure has no units"));
    }
    Ok(FnTable::indicator(m.len(), m.units(), one, q.bottom()))
}

/// `δ x`: the unit at `x` and bottom elsewhere.
pub fn delta<Q: Quantale>(q: &Q, len: usize, x: usize) -> Result<FnTable<Q::Elem>> {
    let one = q
        .unit()
        .ok_or_else(|| Error::Unsupported(format!("{} is not unital", q.name())))?;
    Ok(FnTable::indicator(len, &[x], one, q.bottom()))
}

/// A binary relation `R ⊆ X × Y` with forward and backward indexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinRel {
    nx: usize,
    ny: usize,
    fwd: Vec<Vec<usize>>,
    bwd: Vec<Vec<usize>>,
}

impl BinRel {
    pub fn new(nx: usize, ny: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut fwd = vec![Vec::new(); nx];
        let mut bwd = vec![Vec::new(); ny];
        for (x, y) in pairs {
            if x >= nx || y >= ny {
                return Err(Error::invalid(format!("pair ({x},{y}) out of range")));
            }
            fwd[x].push(y);
            bwd[y].push(x);
        }
        for row in fwd.iter_mut().chain(bwd.iter_mut()) {
            row.sort_unstable();
            row.dedup();
        }
        Ok(BinRel { nx, ny, fwd, bwd })
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, n, (0..n).map(|x| (x, x))).unwrap()
    }

    pub fn empty(nx: usize, ny: usize) -> Self {
        Self::new(nx, ny, []).unwrap()
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.nx)
            .flat_map(|x| self.fwd[x].iter().map(move |&y| (x, y)))
            .collect()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.fwd[x].binary_search(&y).is_ok()
    }

    /// All `y` with `R x y`.
    pub fn image(&self, x: usize) -> &[usize] {
        &self.fwd[x]
    }

    /// All `x` with `R x y`.
    pub fn preimage(&self, y: usize) -> &[usize] {
        &self.bwd[y]
    }

    pub fn converse(&self) -> BinRel {
        BinRel {
            nx: self.ny,
            ny: self.nx,
            fwd: self.bwd.clone(),
            bwd: self.fwd.clone(),
        }
    }

    /// `R ; S`.
    pub fn compose(&self, s: &BinRel) -> Result<BinRel> {
        if self.ny != s.nx {
            return Err(Error::invalid("relations are not composable"));
        }
        let pairs = (0..self.nx).flat_map(|x| {
            self.fwd[x]
                .iter()
                .flat_map(move |&y| s.fwd[y].iter().map(move |&z| (x, z)))
        });
        BinRel::new(self.nx, s.ny, pairs.collect::<Vec<_>>())
    }

    pub fn union(&self, s: &BinRel) -> Result<BinRel> {
        if self.sizes() != s.sizes() {
            return Err(Error::invalid("relations of different shapes"));
        }
        BinRel::new(self.nx, self.ny, self.pairs().into_iter().chain(s.pairs()))
    }
}

/// `⟨R⟩g x = ⊔{g y | R x y}`.
pub fn fdia<L: Lattice>(l: &L, r: &BinRel, g: &FnTable<L::Elem>) -> FnTable<L::Elem> {
    FnTable::new((0..r.nx).map(|x| l.join_all(r.image(x).iter().map(|&y| g.get(y)))).collect())
}

/// `⟨R|f y = ⊔{f x | R x y}`.
pub fn bdia<L: Lattice>(l: &L, r: &BinRel, f: &FnTable<L::Elem>) -> FnTable<L::Elem> {
    FnTable::new((0..r.ny).map(|y| l.join_all(r.preimage(y).iter().map(|&x| f.get(x)))).collect())
}

/// `[R⟩g x = ⊓{g y | R x y}`.
pub fn fbox<L: Lattice>(l: &L, r: &BinRel, g: &FnTable<L::Elem>) -> FnTable<L::Elem> {
    FnTable::new((0..r.nx).map(|x| l.meet_all(r.image(x).iter().map(|&y| g.get(y)))).collect())
}

/// `[R|f y = ⊓{f x | R x y}`.
pub fn bbox<L: Lattice>(l: &L, r: &BinRel, f: &FnTable<L::Elem>) -> FnTable<L::Elem> {
    FnTable::new((0..r.ny).map(|y| l.meet_all(r.preimage(y).iter().map(|&x| f.get(x)))).collect())
}

/// `(f\g) x = ⊓{f y \ g z | R z y x}`.
pub fn residual_mod_left<Q: Quantale + Enumerable>(
    q: &Q,
    r: &TernaryRel,
    f: &FnTable<Q::Elem>,
    g: &FnTable<Q::Elem>,
) -> FnTable<Q::Elem> {
    let n = r.sizes()[2];
    let mut out = vec![q.top(); n];
    for &(z, y, x) in r.triples() {
        out[x] = q.meet(out[x], residual_left(q, f.get(y), g.get(z)));
    }
    FnTable::new(out)
}

/// `(h/g) x = ⊓{h y / g z | R y x z}`.
pub fn residual_mod_right<Q: Quantale + Enumerable>(
    q: &Q,
    r: &TernaryRel,
    h: &FnTable<Q::Elem>,
    g: &FnTable<Q::Elem>,
) -> FnTable<Q::Elem> {
    let n = r.sizes()[1];
    let mut out = vec![q.top(); n];
    for &(y, x, z) in r.triples() {
        out[x] = q.meet(out[x], residual_right(q, h.get(y), g.get(z)));
    }
    FnTable::new(out)
}

/// JSON document for a table over a finite quantale; values are element names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FnTableJson {
    pub domain: Vec<String>,
    pub values: BTreeMap<String, String>,
}

impl FnTableJson {
    pub fn from_table(q: &FiniteQuantale, domain: &[String], f: &FnTable<usize>) -> Self {
        FnTableJson {
            domain: domain.to_vec(),
            values: domain.iter().cloned().zip(f.values.iter().map(|&v| q.show(v))).collect(),
        }
    }

    pub fn to_table(&self, q: &FiniteQuantale) -> Result<FnTable<usize>> {
        let values = self
            .domain
            .iter()
            .map(|d| {
                let v = self
                    .values
                    .get(d)
                    .ok_or_else(|| Error::invalid(format!("no value for `{d}`")))?;
                q.element(v)
                    .ok_or_else(|| Error::invalid(format!("`{v}` is not an element of {}", q.name())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FnTable::new(values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite_quantale;
    use crate::psg::{free_monoid, one_point};
    use crate::relstruct::{assoc_counterexample, rel_of_psg};

    #[test]
    fn counterexample_relation() {
        let q = finite_quantale("bool").unwrap();
        let m = assoc_counterexample();
        let f = FnTable::new(vec![0, 1]);
        let ff = convolve(&q, m.rel(), &f, &f).unwrap();
        let left = convolve(&q, m.rel(), &ff, &f).unwrap();
        let right = convolve(&q, m.rel(), &f, &ff).unwrap();
        assert_eq!((left.get(1), right.get(1)), (0, 1));
    }

    #[test]
    fn empty_relation_gives_bottom() {
        let q = finite_quantale("bool").unwrap();
        let r = TernaryRel::homogeneous(3, []).unwrap();
        let top = FnTable::constant(3, 1);
        assert_eq!(convolve(&q, &r, &top, &top).unwrap(), FnTable::constant(3, 0));
    }

    #[test]
    fn word_product_against_brute_force() {
        let q = finite_quantale("bool").unwrap();
        let m = free_monoid(&["a", "b"], 2);
        let r = rel_of_psg(&m).unwrap();
        let ix = |s: &str| m.index_of(s).unwrap();
        let f = FnTable::indicator(m.len(), &[ix("a")], 1, 0);
        let g = FnTable::indicator(m.len(), &[ix("b")], 1, 0);
        let fg = convolve(&q, r.rel(), &f, &g).unwrap();
        // every split of every word, enumerated by concatenation of names
        for x in 0..m.len() {
            let w = m.name(x);
            let w = if w == "ε" { "" } else { w };
            let expect = (0..=w.len()).any(|k| {
                let (u, v) = w.split_at(k);
                let u = if u.is_empty() { "ε" } else { u };
                let v = if v.is_empty() { "ε" } else { v };
                f.get(ix(u)) == 1 && g.get(ix(v)) == 1
            });
            assert_eq!(fg.get(x) == 1, expect, "at {w}");
        }
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let q = finite_quantale("bool").unwrap();
        let r = TernaryRel::homogeneous(2, []).unwrap();
        assert!(convolve(&q, &r, &FnTable::constant(3, 0), &FnTable::constant(2, 0)).is_err());
    }

    #[test]
    fn delta_unit_needs_a_unital_codomain() {
        let m = rel_of_psg(&one_point()).unwrap();
        let q = finite_quantale("bool").unwrap();
        assert_eq!(delta_unit(&m, &q).unwrap(), FnTable::constant(1, 1));
        let nonunital = FiniteQuantale::new(
            "zero",
            crate::algebra::FiniteLattice::chain(&["0", "1"]),
            |_, _| 0,
            None,
            Default::default(),
        )
        .unwrap();
        assert!(matches!(delta_unit(&m, &nonunital), Err(Error::Unsupported(_))));
    }

    #[test]
    fn unary_modalities() {
        let q = finite_quantale("bool").unwrap();
        let r = BinRel::new(4, 4, [(1, 2), (1, 3)]).unwrap();
        let g = FnTable::indicator(4, &[2], 1, 0);
        assert_eq!(fdia(&q, &r, &g).get(1), 1);
        assert_eq!(fdia(&q, &BinRel::identity(4), &g), g);
        let top = FnTable::constant(4, 1);
        assert_eq!(fbox(&q, &r, &top), top);
        assert_eq!(bdia(&q, &r, &FnTable::indicator(4, &[1], 1, 0)), FnTable::indicator(4, &[2, 3], 1, 0));
    }

    #[test]
    fn json_table_round_trip() {
        let q = finite_quantale("chain4").unwrap();
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let f = FnTable::new(vec![2, 0]);
        let doc = FnTableJson::from_table(&q, &names, &f);
        assert_eq!(doc.to_table(&q).unwrap(), f);
    }
}
