//! Table-at-a-time evaluation of formulas over a stream model.

use std::collections::HashMap;

use super::{Formula, Interval, StreamModel};
use crate::algebra::{finite_quantale, FiniteQuantale, Lattice, Quantale};
use crate::conv::{bdia, conv_raw, fdia, join, same, BinRel, FnTable};
use crate::interval::{FinPoset, HsModality, Segments};
use crate::relstruct::TernaryRel;
use crate::{Error, Result};

pub const DEFAULT_FIXPOINT_BOUND: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixpointOptions {
    /// Largest number of Kleene rounds before giving up.
    pub bound: usize,
}

impl Default for FixpointOptions {
    fn default() -> Self {
        FixpointOptions { bound: DEFAULT_FIXPOINT_BOUND }
    }
}

/// Iterates `step` from `start` until two consecutive tables agree.
/// Returns the last table and whether it is a fixpoint.
fn iterate<L: Lattice>(
    l: &L,
    start: FnTable<L::Elem>,
    bound: usize,
    mut step: impl FnMut(&FnTable<L::Elem>) -> Result<FnTable<L::Elem>>,
) -> Result<(FnTable<L::Elem>, bool)> {
    let mut x = start;
    for _ in 0..bound {
        let next = step(&x)?;
        if same(l, &next, &x) {
            return Ok((next, true));
        }
        x = next;
    }
    Ok((x, false))
}

/// Least fixpoint of a monotone `step`, by Kleene iteration from bottom.
pub fn lfp<L: Lattice>(
    l: &L,
    len: usize,
    bound: usize,
    step: impl FnMut(&FnTable<L::Elem>) -> Result<FnTable<L::Elem>>,
) -> Result<FnTable<L::Elem>> {
    match iterate(l, FnTable::constant(len, l.bottom()), bound, step)? {
        (x, true) => Ok(x),
        _ => Err(Error::NoConvergence { rounds: bound }),
    }
}

/// `f* = μx. id ⊔ f∗x` over the relation `r` with convolution unit `id`.
pub fn star_table<Q: Quantale>(
    q: &Q,
    r: &TernaryRel,
    id: &FnTable<Q::Elem>,
    f: &FnTable<Q::Elem>,
    opts: FixpointOptions,
) -> Result<FnTable<Q::Elem>> {
    let n = r.carrier_len();
    if !r.is_homogeneous() || f.len() != n || id.len() != n {
        return Err(Error::invalid("star needs tables over the relation's carrier"));
    }
    lfp(q, n, opts.bound, |x| Ok(join(q, id, &conv_raw(q, r, f, x))))
}

/// `νx. f∗x` unfolded from top; the flag is false when the bound was hit
/// and the result is only an approximation.
pub fn omega_table<Q: Quantale>(
    q: &Q,
    r: &TernaryRel,
    f: &FnTable<Q::Elem>,
    opts: FixpointOptions,
) -> Result<(FnTable<Q::Elem>, bool)> {
    let n = r.carrier_len();
    if !r.is_homogeneous() || f.len() != n {
        return Err(Error::invalid("omega needs a table over the relation's carrier"));
    }
    iterate(q, FnTable::constant(n, q.top()), opts.bound, |x| Ok(conv_raw(q, r, f, x)))
}

/// The intervals of a horizon with their interval relations.
///
/// Finite intervals come first in the order of [`Segments`]; `[i,∞]` sits at
/// `finite_len() + i`. Splits of `[i,∞]` are `[i,k]·[k,∞]` with `k ≤ N`.
#[derive(Debug, Clone)]
pub struct Frame {
    horizon: usize,
    infinite: bool,
    segments: Segments,
    chop: TernaryRel,
    b: BinRel,
    e: BinRel,
    a: BinRel,
    dv: TernaryRel,
    tv: TernaryRel,
}

impl Frame {
    pub fn new(horizon: usize, infinite: bool) -> Self {
        let segments = Segments::new(&FinPoset::chain(horizon), false);
        let nf = segments.len();
        let n = nf + if infinite { horizon + 1 } else { 0 };
        let mut triples = segments.chop().triples().to_vec();
        if infinite {
            for i in 0..=horizon {
                for k in i..=horizon {
                    triples.push((nf + i, segments.segment(i, k).unwrap(), nf + k));
                }
            }
        }
        let chop = TernaryRel::homogeneous(n, triples).unwrap();
        let t = chop.triples();
        // an infinite interval is its own beginning: the chop that never ends
        let whole = (nf..n).map(|x| (x, x));
        let b = BinRel::new(n, n, t.iter().map(|&(x, y, _)| (x, y)).chain(whole)).unwrap();
        let e = BinRel::new(n, n, t.iter().map(|&(x, _, z)| (x, z))).unwrap();
        let a = BinRel::new(n, n, t.iter().map(|&(_, y, z)| (y, z))).unwrap();
        let dv = TernaryRel::homogeneous(n, t.iter().map(|&(z, y, x)| (x, y, z))).unwrap();
        let tv = TernaryRel::homogeneous(n, t.iter().map(|&(z, x, y)| (x, y, z))).unwrap();
        Frame { horizon, infinite, segments, chop, b, e, a, dv, tv }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn len(&self) -> usize {
        self.chop.carrier_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn finite_len(&self) -> usize {
        self.segments.len()
    }

    pub fn segments(&self) -> &Segments {
        &self.segments
    }

    /// The interval splitting relation (without the whole-interval case).
    pub fn chop_relation(&self) -> &TernaryRel {
        &self.chop
    }

    pub fn interval(&self, x: usize) -> Interval {
        if x < self.finite_len() {
            let (i, j) = self.segments.bounds(x);
            Interval::Fin(i, j)
        } else {
            Interval::Inf(x - self.finite_len())
        }
    }

    pub fn intervals(&self) -> Vec<Interval> {
        (0..self.len()).map(|x| self.interval(x)).collect()
    }

    pub fn index(&self, iv: Interval) -> Result<usize> {
        let out = || Error::invalid(format!("interval {iv} outside horizon {}", self.horizon));
        match iv {
            Interval::Fin(i, j) => self.segments.segment(i, j).ok_or_else(out),
            Interval::Inf(i) if self.infinite && i <= self.horizon => Ok(self.finite_len() + i),
            Interval::Inf(_) if !self.infinite => Err(Error::invalid("infinite intervals are not enabled")),
            Interval::Inf(_) => Err(out()),
        }
    }

    /// The point-interval predicate.
    pub fn unit_table<Q: Quantale>(&self, q: &Q) -> FnTable<Q::Elem> {
        let one = q.unit().expect("unital codomain");
        FnTable::new(
            (0..self.len())
                .map(|x| match self.interval(x) {
                    Interval::Fin(i, j) if i == j => one,
                    _ => q.bottom(),
                })
                .collect(),
        )
    }

    /// `f ; g`: convolution over the splits, joined with `f` itself on
    /// infinite intervals.
    pub fn chop<Q: Quantale>(&self, q: &Q, f: &FnTable<Q::Elem>, g: &FnTable<Q::Elem>) -> FnTable<Q::Elem> {
        let mut h = conv_raw(q, &self.chop, f, g);
        if self.infinite {
            let nf = self.finite_len();
            h = FnTable::new(
                (0..self.len())
                    .map(|x| if x >= nf { q.join(h.get(x), f.get(x)) } else { h.get(x) })
                    .collect(),
            );
        }
        h
    }

    pub fn hs<L: Lattice>(&self, l: &L, m: HsModality, f: &FnTable<L::Elem>) -> FnTable<L::Elem> {
        match m {
            HsModality::B => fdia(l, &self.b, f),
            HsModality::E => fdia(l, &self.e, f),
            HsModality::A => fdia(l, &self.a, f),
            HsModality::BConverse => bdia(l, &self.b, f),
            HsModality::EConverse => bdia(l, &self.e, f),
            HsModality::AConverse => bdia(l, &self.a, f),
        }
    }

    pub fn ven_d<Q: Quantale>(&self, q: &Q, f: &FnTable<Q::Elem>, g: &FnTable<Q::Elem>) -> FnTable<Q::Elem> {
        conv_raw(q, &self.dv, f, g)
    }

    pub fn ven_t<Q: Quantale>(&self, q: &Q, f: &FnTable<Q::Elem>, g: &FnTable<Q::Elem>) -> FnTable<Q::Elem> {
        conv_raw(q, &self.tv, f, g)
    }
}

/// Evaluates formulas over one model, memoizing each distinct subformula.
#[derive(Debug)]
pub struct Evaluator<'m> {
    model: &'m StreamModel,
    frame: Frame,
    q: FiniteQuantale,
    memo: HashMap<Formula, FnTable<usize>>,
    approximate: bool,
    bound: usize,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m StreamModel) -> Self {
        let frame = Frame::new(model.horizon(), model.infinite());
        // over bool every increasing chain stabilises within |intervals| + 1 rounds
        let bound = DEFAULT_FIXPOINT_BOUND.max(frame.len() + 2);
        Evaluator {
            model,
            frame,
            q: finite_quantale("bool").expect("bool is built in"),
            memo: HashMap::new(),
            approximate: false,
            bound,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// True if some omega unfolding hit the round bound.
    pub fn approximate(&self) -> bool {
        self.approximate
    }

    /// Truth value of `f` on `iv`.
    pub fn eval(&mut self, f: &Formula, iv: Interval) -> Result<bool> {
        let x = self.frame.index(iv)?;
        Ok(self.table(f)?.get(x) == 1)
    }

    /// The truth table of `f` over [`Frame::intervals`].
    pub fn table(&mut self, f: &Formula) -> Result<FnTable<usize>> {
        if let Some(a) = f.atoms().into_iter().find(|a| self.model.atom(a).is_none()) {
            return Err(Error::invalid(format!("unresolved atom `{a}`")));
        }
        self.node(f)
    }

    fn node(&mut self, f: &Formula) -> Result<FnTable<usize>> {
        if let Some(t) = self.memo.get(f) {
            return Ok(t.clone());
        }
        let n = self.frame.len();
        let t = match f {
            Formula::Atom(a) => {
                let mut v = Vec::with_capacity(n);
                for x in 0..n {
                    v.push(self.model.holds(a, self.frame.interval(x))? as usize);
                }
                FnTable::new(v)
            }
            Formula::Top => FnTable::constant(n, 1),
            Formula::Bot => FnTable::constant(n, 0),
            Formula::Unit => self.frame.unit_table(&self.q),
            Formula::Not(g) => self.node(g)?.map(|v| 1 - v),
            Formula::And(g, h) => {
                let (g, h) = (self.node(g)?, self.node(h)?);
                FnTable::new((0..n).map(|x| g.get(x) & h.get(x)).collect())
            }
            Formula::Or(g, h) => {
                let (g, h) = (self.node(g)?, self.node(h)?);
                FnTable::new((0..n).map(|x| g.get(x) | h.get(x)).collect())
            }
            Formula::Chop(g, h) => {
                let (g, h) = (self.node(g)?, self.node(h)?);
                self.frame.chop(&self.q, &g, &h)
            }
            Formula::Star(g) => {
                let g = self.node(g)?;
                let (q, frame) = (&self.q, &self.frame);
                let id = frame.unit_table(q);
                lfp(q, n, self.bound, |x| Ok(join(q, &id, &frame.chop(q, &g, x))))?
            }
            Formula::Omega(g) => {
                let g = self.node(g)?;
                let (q, frame) = (&self.q, &self.frame);
                let (t, converged) = iterate(q, FnTable::constant(n, 1), self.bound, |x| Ok(frame.chop(q, &g, x)))?;
                self.approximate |= !converged;
                t
            }
            Formula::Hs(m, g) => {
                let g = self.node(g)?;
                self.frame.hs(&self.q, *m, &g)
            }
            Formula::VenD(g, h) => {
                let (g, h) = (self.node(g)?, self.node(h)?);
                self.frame.ven_d(&self.q, &g, &h)
            }
            Formula::VenT(g, h) => {
                let (g, h) = (self.node(g)?, self.node(h)?);
                self.frame.ven_t(&self.q, &g, &h)
            }
        };
        self.memo.insert(f.clone(), t.clone());
        Ok(t)
    }
}

/// Evaluates `f` on one interval of `m`.
pub fn eval(f: &Formula, m: &StreamModel, iv: Interval) -> Result<bool> {
    Evaluator::new(m).eval(f, iv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{RealKind, RealQuantale};
    use crate::conv::{all_tables, leq};
    use crate::interval::hs_modality;
    use crate::itl::parse_formula;

    fn chop_model() -> StreamModel {
        StreamModel::constant(3, false)
            .with_intervals("p", &[(0, 1)])
            .unwrap()
            .with_intervals("q", &[(1, 3)])
            .unwrap()
    }

    #[test]
    fn chop_splits_at_the_shared_point() {
        let m = chop_model();
        let f = parse_formula("p ; q").unwrap();
        assert!(eval(&f, &m, Interval::Fin(0, 3)).unwrap());
        assert!(!eval(&f, &m, Interval::Fin(0, 2)).unwrap());
        assert!(eval(&parse_formula("p*").unwrap(), &m, Interval::Fin(2, 2)).unwrap());
        assert!(!eval(&Formula::Unit, &m, Interval::Fin(1, 2)).unwrap());
    }

    #[test]
    fn errors() {
        let m = chop_model();
        assert!(eval(&Formula::atom("r"), &m, Interval::Fin(0, 0)).is_err());
        assert!(eval(&Formula::Top, &m, Interval::Fin(0, 4)).is_err());
        assert!(eval(&Formula::Top, &m, Interval::Inf(0)).is_err());
    }

    #[test]
    fn infinite_chop() {
        let m = StreamModel::constant(3, true)
            .with_intervals("p", &[(0, 2)])
            .unwrap()
            .with_atom("q", crate::itl::AtomSpec::Intervals { finite: vec![], infinite: vec![2] })
            .unwrap()
            .with_atom("r", crate::itl::AtomSpec::Intervals { finite: vec![], infinite: vec![1] })
            .unwrap();
        let pq = parse_formula("p ; q").unwrap();
        assert!(eval(&pq, &m, Interval::Inf(0)).unwrap());
        assert!(!eval(&pq, &m, Interval::Inf(1)).unwrap());
        // the whole-interval case ignores the right operand
        assert!(eval(&parse_formula("r ; bot").unwrap(), &m, Interval::Inf(1)).unwrap());
    }

    #[test]
    fn hs_agrees_with_the_interval_module_on_finite_frames() {
        let q = finite_quantale("bool").unwrap();
        let frame = Frame::new(3, false);
        for f in all_tables(&q, frame.len()).iter().step_by(7) {
            for m in HsModality::ALL {
                assert_eq!(frame.hs(&q, m, f), hs_modality(frame.segments(), &q, m, f).unwrap());
            }
        }
    }

    #[test]
    fn star_of_unit_steps_covers_everything() {
        let q = finite_quantale("bool").unwrap();
        let frame = Frame::new(4, false);
        let id = frame.unit_table(&q);
        let steps: Vec<usize> = (0..frame.len())
            .filter(|&x| matches!(frame.interval(x), Interval::Fin(i, j) if j == i + 1))
            .collect();
        let f = FnTable::indicator(frame.len(), &steps, 1, 0);
        let s = star_table(&q, frame.chop_relation(), &id, &f, FixpointOptions::default()).unwrap();
        assert_eq!(s, FnTable::constant(frame.len(), 1));
        let s = star_table(&q, frame.chop_relation(), &id, &id, FixpointOptions::default()).unwrap();
        assert_eq!(s, id);
    }

    #[test]
    fn min_plus_star_of_the_length_function() {
        let q = RealQuantale::new(RealKind::MinPlus);
        let frame = Frame::new(4, false);
        let len = |x| match frame.interval(x) {
            Interval::Fin(i, j) => (j - i) as f64,
            Interval::Inf(_) => unreachable!(),
        };
        let f = FnTable::new((0..frame.len()).map(len).collect());
        let id = frame.unit_table(&q);
        let s = star_table(&q, frame.chop_relation(), &id, &f, FixpointOptions::default()).unwrap();
        // brute force: every decomposition of [i,j] sums to j - i, points also admit 0
        for x in 0..frame.len() {
            assert_eq!(s.get(x), len(x), "at {}", frame.interval(x));
        }
    }

    #[test]
    fn star_is_the_least_prefixpoint() {
        let q = finite_quantale("bool").unwrap();
        let frame = Frame::new(2, false);
        let id = frame.unit_table(&q);
        let r = frame.chop_relation();
        let tables = all_tables(&q, frame.len());
        for f in &tables {
            let s = star_table(&q, r, &id, f, FixpointOptions::default()).unwrap();
            assert_eq!(join(&q, &id, &conv_raw(&q, r, f, &s)), s);
            for x in &tables {
                if leq(&q, &join(&q, &id, &conv_raw(&q, r, f, x)), x) {
                    assert!(leq(&q, &s, x));
                }
            }
        }
    }

    #[test]
    fn non_convergence_is_reported() {
        let q = RealQuantale::new(RealKind::MinPlus);
        // x ↦ x - 1 never stabilises
        let r = lfp(&q, 1, 5, |x| Ok(x.map(|v| if v.is_infinite() { 0.0 } else { v - 1.0 })));
        assert!(matches!(r, Err(Error::NoConvergence { rounds: 5 })));
    }

    #[test]
    fn memo_shares_subformulas() {
        let m = chop_model();
        let mut ev = Evaluator::new(&m);
        let f = parse_formula("(p ; q) | !(p ; q)").unwrap();
        assert_eq!(ev.table(&f).unwrap(), FnTable::constant(ev.frame().len(), 1));
        assert!(ev.memo.contains_key(&parse_formula("p ; q").unwrap()));
        assert!(!ev.approximate());
    }
}
