//! Module, Galois and conjugation laws of modalities, and the translations
//! between unary modalities and convolution.

use super::{
    bbox, bdia, conv_raw, convolve, fbox, fdia, join, join_all, leq, meet, residual_mod_left,
    residual_mod_right, same, BinRel, FnTable,
};
use super::lifting::all_tables;
use crate::algebra::{Enumerable, Lattice, Quantale};
use crate::relstruct::TernaryRel;
use crate::{Error, LawReport, Result};

/// Checks the four module laws of forward diamonds.
///
/// Each relation of `rels` (all `X × Y`) is combined with every table of
/// `gs` (over `Y`); `s` (a relation `Y × Z`) and `h` (over `Z`) exercise
/// the composition law.
pub fn check_unary_module<L: Lattice>(
    l: &L,
    shape: (usize, usize),
    rels: &[BinRel],
    s: &BinRel,
    gs: &[FnTable<L::Elem>],
    h: &FnTable<L::Elem>,
) -> Result<LawReport> {
    let (nx, ny) = shape;
    if rels.iter().any(|r| r.sizes() != shape) || s.sizes().0 != ny || gs.iter().any(|g| g.len() != ny) {
        return Err(Error::invalid("relations and tables do not share the carriers"));
    }
    let mut report = LawReport::new(format!("unary module laws over {nx}×{ny}"));
    let union = rels.iter().try_fold(BinRel::empty(nx, ny), |acc, r| acc.union(r))?;

    let w = gs.iter().position(|g| {
        let parts: Vec<_> = rels.iter().map(|r| fdia(l, r, g)).collect();
        !same(l, &fdia(l, &union, g), &join_all(l, nx, &parts))
    });
    report.record("diamond-union", gs.len() as u64, w.map(|i| format!("table #{i}")));

    let sup = join_all(l, ny, gs);
    let w = rels.iter().position(|r| {
        let parts: Vec<_> = gs.iter().map(|g| fdia(l, r, g)).collect();
        !same(l, &fdia(l, r, &sup), &join_all(l, nx, &parts))
    });
    report.record("diamond-sup", rels.len() as u64, w.map(|i| format!("relation #{i}")));

    let w = rels
        .iter()
        .position(|r| !same(l, &fdia(l, &r.compose(s).unwrap(), h), &fdia(l, r, &fdia(l, s, h))));
    report.record("diamond-composition", rels.len() as u64, w.map(|i| format!("relation #{i}")));

    let id = BinRel::identity(ny);
    let w = gs.iter().position(|g| !same(l, &fdia(l, &id, g), g));
    report.record("diamond-identity", gs.len() as u64, w.map(|i| format!("table #{i}")));
    Ok(report)
}

/// Checks the three module laws of convolution on the given families.
///
/// `rels` share the shape `sizes`; `fs` are over `Y` and `gs` over `Z`.
pub fn check_binary_module<Q: Quantale>(
    q: &Q,
    sizes: [usize; 3],
    rels: &[TernaryRel],
    fs: &[FnTable<Q::Elem>],
    gs: &[FnTable<Q::Elem>],
) -> Result<LawReport> {
    let [nx, ny, nz] = sizes;
    if rels.iter().any(|r| r.sizes() != sizes) || fs.iter().any(|f| f.len() != ny) || gs.iter().any(|g| g.len() != nz) {
        return Err(Error::invalid("relations and tables do not share the carriers"));
    }
    let mut report = LawReport::new(format!("binary module laws over {nx}×{ny}×{nz}"));
    let union = rels
        .iter()
        .try_fold(TernaryRel::new(nx, ny, nz, [])?, |acc, r| acc.union(r))?;

    let mut w = None;
    'u: for (i, f) in fs.iter().enumerate() {
        for (j, g) in gs.iter().enumerate() {
            let parts: Vec<_> = rels.iter().map(|r| conv_raw(q, r, f, g)).collect();
            if !same(q, &conv_raw(q, &union, f, g), &join_all(q, nx, &parts)) {
                w = Some(format!("f #{i}, g #{j}"));
                break 'u;
            }
        }
    }
    report.record("convolution-union", (fs.len() * gs.len()) as u64, w);

    let fsup = join_all(q, ny, fs);
    let gsup = join_all(q, nz, gs);
    let mut left = None;
    let mut right = None;
    for (k, r) in rels.iter().enumerate() {
        for (j, g) in gs.iter().enumerate() {
            let parts: Vec<_> = fs.iter().map(|f| conv_raw(q, r, f, g)).collect();
            if left.is_none() && !same(q, &conv_raw(q, r, &fsup, g), &join_all(q, nx, &parts)) {
                left = Some(format!("relation #{k}, g #{j}"));
            }
        }
        for (i, f) in fs.iter().enumerate() {
            let parts: Vec<_> = gs.iter().map(|g| conv_raw(q, r, f, g)).collect();
            if right.is_none() && !same(q, &conv_raw(q, r, f, &gsup), &join_all(q, nx, &parts)) {
                right = Some(format!("relation #{k}, f #{i}"));
            }
        }
    }
    report.record("convolution-left-sup", (rels.len() * gs.len()) as u64, left);
    report.record("convolution-right-sup", (rels.len() * fs.len()) as u64, right);
    Ok(report)
}

/// Checks `⟨R⟩f ≤ g ⇔ f ≤ [R|g` and `⟨R|g ≤ f ⇔ g ≤ [R⟩f` over all tables.
pub fn check_galois<L: Lattice + Enumerable>(l: &L, r: &BinRel) -> LawReport {
    let (nx, ny) = r.sizes();
    let fs = all_tables(l, ny);
    let gs = all_tables(l, nx);
    let mut report = LawReport::new(format!("Galois connections over {nx}×{ny}"));
    let cases = (fs.len() * gs.len()) as u64;
    let pairs = || fs.iter().flat_map(|f| gs.iter().map(move |g| (f, g)));
    let w = pairs()
        .find(|(f, g)| leq(l, &fdia(l, r, f), g) != leq(l, f, &bbox(l, r, g)))
        .map(|(f, g)| format!("f={:?}, g={:?}", f.values(), g.values()));
    report.record("fdia-bbox", cases, w);
    let w = pairs()
        .find(|(f, g)| leq(l, &bdia(l, r, g), f) != leq(l, g, &fbox(l, r, f)))
        .map(|(f, g)| format!("f={:?}, g={:?}", f.values(), g.values()));
    report.record("bdia-fbox", cases, w);
    report
}

/// Checks `⟨R⟩f ⊓ g = 0 ⇔ f ⊓ ⟨R|g = 0` and `[R⟩f ⊔ g = ⊤ ⇔ f ⊔ [R|g = ⊤`
/// over all tables; meaningful for boolean lattices.
pub fn check_conjugation<L: Lattice + Enumerable>(l: &L, r: &BinRel) -> LawReport {
    let (nx, ny) = r.sizes();
    let fs = all_tables(l, ny);
    let gs = all_tables(l, nx);
    let bot_x = FnTable::constant(nx, l.bottom());
    let bot_y = FnTable::constant(ny, l.bottom());
    let top_x = FnTable::constant(nx, l.top());
    let top_y = FnTable::constant(ny, l.top());
    let mut report = LawReport::new(format!("conjugations over {nx}×{ny}"));
    let cases = (fs.len() * gs.len()) as u64;
    let pairs = || fs.iter().flat_map(|f| gs.iter().map(move |g| (f, g)));
    let w = pairs()
        .find(|(f, g)| {
            same(l, &meet(l, &fdia(l, r, f), g), &bot_x) != same(l, &meet(l, f, &bdia(l, r, g)), &bot_y)
        })
        .map(|(f, g)| format!("f={:?}, g={:?}", f.values(), g.values()));
    report.record("diamond-conjugation", cases, w);
    let w = pairs()
        .find(|(f, g)| {
            same(l, &join(l, &fbox(l, r, f), g), &top_x) != same(l, &join(l, f, &bbox(l, r, g)), &top_y)
        })
        .map(|(f, g)| format!("f={:?}, g={:?}", f.values(), g.values()));
    report.record("box-conjugation", cases, w);
    report
}

/// Checks `f∗g ≤ h ⇔ g ≤ f\h ⇔ f ≤ h/g` over all tables on a homogeneous relation.
pub fn check_residual_galois<Q: Quantale + Enumerable>(q: &Q, r: &TernaryRel) -> LawReport {
    let n = r.carrier_len();
    let ts = all_tables(q, n);
    let mut report = LawReport::new(format!("lifted residuation over {n} points"));
    let mut w = None;
    'outer: for f in &ts {
        for h in &ts {
            let fh = residual_mod_left(q, r, f, h);
            for g in &ts {
                let a = leq(q, &conv_raw(q, r, f, g), h);
                let b = leq(q, g, &fh);
                let c = leq(q, f, &residual_mod_right(q, r, h, g));
                if a != b || b != c {
                    w = Some(format!("f={:?}, g={:?}, h={:?}", f.values(), g.values(), h.values()));
                    break 'outer;
                }
            }
        }
    }
    report.record("residual-galois", (ts.len() as u64).pow(3), w);
    report
}

fn c_one<Q: Quantale>(q: &Q, len: usize) -> Result<FnTable<Q::Elem>> {
    let one = q
        .unit()
        .ok_or_else(|| Error::Unsupported(format!("{} is not unital", q.name())))?;
    Ok(FnTable::constant(len, one))
}

/// `⟨R⟩f` computed as `f ∗_S c₁` with `S x y z ⇔ R x y` over a one-point `Z`.
pub fn fdia_as_convolution<Q: Quantale>(q: &Q, r: &BinRel, f: &FnTable<Q::Elem>) -> Result<FnTable<Q::Elem>> {
    let (nx, ny) = r.sizes();
    let s = TernaryRel::new(nx, ny, 1, r.pairs().into_iter().map(|(x, y)| (x, y, 0)))?;
    convolve(q, &s, f, &c_one(q, 1)?)
}

/// `⟨R|f` computed as `f ∗_T c₁` with `T y x z ⇔ R x y` over a one-point `Z`.
pub fn bdia_as_convolution<Q: Quantale>(q: &Q, r: &BinRel, f: &FnTable<Q::Elem>) -> Result<FnTable<Q::Elem>> {
    let (nx, ny) = r.sizes();
    let t = TernaryRel::new(ny, nx, 1, r.pairs().into_iter().map(|(x, y)| (y, x, 0)))?;
    convolve(q, &t, f, &c_one(q, 1)?)
}

/// `S x (y,z) ⇔ R x y z`, with the pair `(y,z)` at index `y * |Z| + z`.
pub fn pair_relation(r: &TernaryRel) -> BinRel {
    let [nx, ny, nz] = r.sizes();
    BinRel::new(nx, ny * nz, r.triples().iter().map(|&(x, y, z)| (x, y * nz + z))).unwrap()
}

/// `f ∗_R g` computed as `⟨S⟩(λ(y,z). f y · g z)`.
pub fn convolution_as_fdia<Q: Quantale>(
    q: &Q,
    r: &TernaryRel,
    f: &FnTable<Q::Elem>,
    g: &FnTable<Q::Elem>,
) -> Result<FnTable<Q::Elem>> {
    let [_, ny, nz] = r.sizes();
    if f.len() != ny || g.len() != nz {
        return Err(Error::invalid("table sizes do not match the relation"));
    }
    let prod = FnTable::new(
        (0..ny * nz)
            .map(|p| q.compose(f.get(p / nz), g.get(p % nz)))
            .collect(),
    );
    Ok(fdia(q, &pair_relation(r), &prod))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{finite_quantale, FiniteLattice};

    #[test]
    fn galois_and_conjugation_on_a_small_relation() {
        let q = finite_quantale("bool").unwrap();
        let r = BinRel::new(2, 3, [(0, 1), (1, 1), (1, 2)]).unwrap();
        assert!(check_galois(&q, &r).passed());
        assert!(check_conjugation(&q, &r).passed());
        let p = FiniteLattice::powerset(2);
        assert!(check_conjugation(&p, &r).passed());
    }

    #[test]
    fn empty_union_gives_bottom_diamond() {
        let q = finite_quantale("bool").unwrap();
        let g = FnTable::constant(2, 1);
        let s = BinRel::identity(2);
        let r = check_unary_module(&q, (2, 2), &[], &s, &[g.clone()], &g).unwrap();
        assert!(r.passed());
        assert_eq!(fdia(&q, &BinRel::empty(2, 2), &g), FnTable::constant(2, 0));
    }

    #[test]
    fn empty_relation_translations() {
        let q = finite_quantale("bool").unwrap();
        let r = BinRel::empty(3, 2);
        let f = FnTable::constant(2, 1);
        assert_eq!(fdia_as_convolution(&q, &r, &f).unwrap(), FnTable::constant(3, 0));
        assert_eq!(fdia(&q, &r, &f), FnTable::constant(3, 0));
    }
}
