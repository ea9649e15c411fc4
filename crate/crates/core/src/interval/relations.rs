//! Allen's relations, Venema's ternary relations and Halpern–Shoham diamonds.

use std::fmt;
use std::str::FromStr;

use super::Segments;
use crate::algebra::Quantale;
use crate::conv::{bdia, convolve, fdia, first_difference, BinRel, FnTable};
use crate::relstruct::TernaryRel;
use crate::{Error, LawReport, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllenRelations {
    /// Beginning: `y` is a prefix of `x`.
    pub b: BinRel,
    /// End: `y` is a suffix of `x`.
    pub e: BinRel,
    /// After: `y` starts where `x` ends.
    pub a: BinRel,
    pub d: BinRel,
    pub o: BinRel,
    pub l: BinRel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VenemaRelations {
    pub c: TernaryRel,
    pub dv: TernaryRel,
    pub tv: TernaryRel,
}

fn project(n: usize, pairs: impl Iterator<Item = (usize, usize)>) -> BinRel {
    BinRel::new(n, n, pairs).unwrap()
}

/// Derives B, E and A from chop and D, O, L by relational composition.
///
/// Fails if the two readings of D (B;E and E;B) disagree.
pub fn allen_relations(seg: &Segments) -> Result<AllenRelations> {
    let n = seg.len();
    let c = seg.chop();
    let t = c.triples();
    let b = project(n, t.iter().map(|&(x, y, _)| (x, y)));
    let e = project(n, t.iter().map(|&(x, _, z)| (x, z)));
    let a = project(n, t.iter().map(|&(_, y, z)| (y, z)));
    let d = b.compose(&e)?;
    let d2 = e.compose(&b)?;
    if d != d2 {
        let (x, y) = (0..n * n)
            .map(|xy| (xy / n, xy % n))
            .find(|&(x, y)| d.contains(x, y) != d2.contains(x, y))
            .unwrap();
        return Err(Error::violation(
            "during",
            format!("B;E and E;B differ at ({}, {})", seg.names()[x], seg.names()[y]),
        ));
    }
    let o = b.compose(&e.converse())?;
    let l = a.compose(&a)?;
    Ok(AllenRelations { b, e, a, d, o, l })
}

/// `C`, `Dv x y z ⇔ C z y x` and `Tv x y z ⇔ C z x y`.
pub fn venema_relations(seg: &Segments) -> VenemaRelations {
    let c = seg.chop();
    let n = seg.len();
    let dv = TernaryRel::homogeneous(n, c.triples().iter().map(|&(z, y, x)| (x, y, z))).unwrap();
    let tv = TernaryRel::homogeneous(n, c.triples().iter().map(|&(z, x, y)| (x, y, z))).unwrap();
    VenemaRelations { c, dv, tv }
}

/// Checks the Allen readings of C, Dv and Tv, the direct bound-based
/// descriptions of B, E and A, and that B;E = E;B.
pub fn check_allen_definability(seg: &Segments) -> Result<LawReport> {
    let n = seg.len();
    let al = allen_relations(seg)?;
    let v = venema_relations(seg);
    let p = seg.poset();
    let names = seg.names();
    let mut report = LawReport::new(format!("Allen definability over {n} segments"));
    let triples = || (0..n * n * n).map(move |i| (i / (n * n), i / n % n, i % n));
    let show = |(x, y, z): (usize, usize, usize)| format!("x={}, y={}, z={}", names[x], names[y], names[z]);
    let cases = (n * n * n) as u64;

    let w = triples().find(|&(x, y, z)| v.c.contains(x, y, z) != (al.a.contains(y, z) && al.b.contains(x, y) && al.e.contains(x, z)));
    report.record("chop-by-allen", cases, w.map(show));
    let w = triples().find(|&(x, y, z)| v.dv.contains(x, y, z) != (al.a.contains(y, x) && al.e.contains(z, x) && al.b.contains(z, y)));
    report.record("dv-by-allen", cases, w.map(show));
    let w = triples().find(|&(x, y, z)| v.tv.contains(x, y, z) != (al.a.contains(x, y) && al.b.contains(z, x) && al.e.contains(z, y)));
    report.record("tv-by-allen", cases, w.map(show));

    let pairs = || (0..n * n).map(move |i| (i / n, i % n));
    let showp = |(x, y): (usize, usize)| format!("x={}, y={}", names[x], names[y]);
    // strict segments leave no room for a point remainder
    let proper = |a: usize, b: usize| p.leq(a, b) && !(seg.is_strict() && a == b);
    let w = pairs().find(|&(x, y)| {
        let ((i, j), (k, l)) = (seg.bounds(x), seg.bounds(y));
        al.b.contains(x, y) != (i == k && proper(l, j))
    });
    report.record("beginning-direct", (n * n) as u64, w.map(showp));
    let w = pairs().find(|&(x, y)| {
        let ((i, j), (k, l)) = (seg.bounds(x), seg.bounds(y));
        al.e.contains(x, y) != (j == l && proper(i, k))
    });
    report.record("ending-direct", (n * n) as u64, w.map(showp));
    let w = pairs().find(|&(x, y)| al.a.contains(x, y) != (seg.bounds(x).1 == seg.bounds(y).0));
    report.record("after-direct", (n * n) as u64, w.map(showp));
    Ok(report)
}

/// The six Halpern–Shoham diamonds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HsModality {
    B,
    E,
    A,
    BConverse,
    EConverse,
    AConverse,
}

impl HsModality {
    pub const ALL: [HsModality; 6] = [
        HsModality::B,
        HsModality::E,
        HsModality::A,
        HsModality::BConverse,
        HsModality::EConverse,
        HsModality::AConverse,
    ];
}

impl fmt::Display for HsModality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HsModality::B => "B",
            HsModality::E => "E",
            HsModality::A => "A",
            HsModality::BConverse => "B˘",
            HsModality::EConverse => "E˘",
            HsModality::AConverse => "A˘",
        })
    }
}

impl FromStr for HsModality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "B" => HsModality::B,
            "E" => HsModality::E,
            "A" => HsModality::A,
            "B˘" | "Bc" => HsModality::BConverse,
            "E˘" | "Ec" => HsModality::EConverse,
            "A˘" | "Ac" => HsModality::AConverse,
            _ => return Err(Error::invalid(format!("unknown modality {s:?} (expected B, E, A, Bc, Ec, Ac)"))),
        })
    }
}

fn c_one<Q: Quantale>(q: &Q, n: usize) -> Result<FnTable<Q::Elem>> {
    q.unit()
        .map(|one| FnTable::constant(n, one))
        .ok_or_else(|| Error::Unsupported(format!("{} is not unital", q.name())))
}

/// Evaluates a diamond over segment functions.
///
/// Forward diamonds are convolutions with `c₁` (`⟨B⟩f = f∗_C c₁`,
/// `⟨E⟩f = c₁∗_C f`, `⟨A⟩f = f∗_Tv c₁`); converses are backward diamonds
/// over the Allen relation.
pub fn hs_modality<Q: Quantale>(seg: &Segments, q: &Q, m: HsModality, f: &FnTable<Q::Elem>) -> Result<FnTable<Q::Elem>> {
    let one = c_one(q, seg.len())?;
    match m {
        HsModality::B => convolve(q, &seg.chop(), f, &one),
        HsModality::E => convolve(q, &seg.chop(), &one, f),
        HsModality::A => convolve(q, &venema_relations(seg).tv, f, &one),
        _ => {
            if f.len() != seg.len() {
                return Err(Error::invalid("table size does not match the segments"));
            }
            let al = allen_relations(seg)?;
            let r = match m {
                HsModality::BConverse => &al.b,
                HsModality::EConverse => &al.e,
                _ => &al.a,
            };
            Ok(bdia(q, r, f))
        }
    }
}

/// Cross-checks every diamond against the direct definition over `tables`,
/// and the converses also against their convolution forms
/// (`⟨B˘⟩f = c₁∗_Tv f`, `⟨E˘⟩f = c₁∗_Dv f`, `⟨A˘⟩f = f∗_Dv c₁`).
pub fn check_hs_modalities<Q: Quantale>(seg: &Segments, q: &Q, tables: &[FnTable<Q::Elem>]) -> Result<LawReport> {
    let al = allen_relations(seg)?;
    let v = venema_relations(seg);
    let one = c_one(q, seg.len())?;
    let mut report = LawReport::new(format!("HS diamonds over {} segments", seg.len()));
    for m in HsModality::ALL {
        let mut w = None;
        for (i, f) in tables.iter().enumerate() {
            let got = hs_modality(seg, q, m, f)?;
            let direct = match m {
                HsModality::B => fdia(q, &al.b, f),
                HsModality::E => fdia(q, &al.e, f),
                HsModality::A => fdia(q, &al.a, f),
                HsModality::BConverse => convolve(q, &v.tv, &one, f)?,
                HsModality::EConverse => convolve(q, &v.dv, &one, f)?,
                HsModality::AConverse => convolve(q, &v.dv, f, &one)?,
            };
            if let Some(x) = first_difference(q, &got, &direct) {
                w = Some(format!(
                    "table #{i} at {}: {} ≠ {}",
                    seg.names()[x],
                    q.show(got.get(x)),
                    q.show(direct.get(x))
                ));
                break;
            }
        }
        report.record(&format!("diamond-{m}"), tables.len() as u64, w);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite_quantale;
    use crate::conv::all_tables;
    use crate::interval::FinPoset;
    use crate::relstruct::check_rel_assoc;

    fn seg(n: usize) -> Segments {
        Segments::new(&FinPoset::chain(n), false)
    }

    #[test]
    fn allen_examples() {
        let s = seg(5);
        let al = allen_relations(&s).unwrap();
        let ix = |n: &str| s.by_name(n).unwrap();
        assert!(al.b.contains(ix("[0,5]"), ix("[0,2]")));
        assert!(al.a.contains(ix("[0,2]"), ix("[2,4]")));
        let s4 = seg(4);
        let al4 = allen_relations(&s4).unwrap();
        assert!(al4.l.contains(s4.by_name("[0,1]").unwrap(), s4.by_name("[3,4]").unwrap()));
        assert!(al.d.contains(ix("[0,5]"), ix("[1,3]")));
        assert!(!al.d.contains(ix("[1,3]"), ix("[0,5]")));
        // O = B;E˘: some prefix of x is a suffix of y
        assert!(al.o.contains(ix("[2,5]"), ix("[0,3]")));
        assert!(!al.o.contains(ix("[0,2]"), ix("[3,5]")));
    }

    #[test]
    fn venema_examples_and_associativity() {
        let s = seg(3);
        let v = venema_relations(&s);
        let ix = |n: &str| s.by_name(n).unwrap();
        assert!(v.c.contains(ix("[0,3]"), ix("[0,1]"), ix("[1,3]")));
        assert!(check_rel_assoc(&v.c).is_none());
        assert!(check_rel_assoc(&v.dv).is_some());
        assert!(check_rel_assoc(&v.tv).is_some());
    }

    #[test]
    fn definability_over_the_catalog() {
        let mut posets: Vec<_> = (0..=5).map(FinPoset::chain).collect();
        posets.push(FinPoset::diamond());
        posets.push(FinPoset::forest());
        for p in &posets {
            for strict in [false, true] {
                let r = check_allen_definability(&Segments::new(p, strict)).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn diamonds_agree_exhaustively_over_bool() {
        let q = finite_quantale("bool").unwrap();
        for n in 0..=3 {
            let s = seg(n);
            let tables = all_tables(&q, s.len());
            let r = check_hs_modalities(&s, &q, &tables).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn after_diamond_on_an_indicator() {
        let q = finite_quantale("bool").unwrap();
        let s = seg(4);
        let f = FnTable::indicator(s.len(), &[s.by_name("[2,4]").unwrap()], 1, 0);
        let g = hs_modality(&s, &q, HsModality::A, &f).unwrap();
        for x in 0..s.len() {
            assert_eq!(g.get(x) == 1, s.bounds(x).1 == 2, "at {}", s.names()[x]);
        }
        let zero = FnTable::constant(s.len(), 0);
        for m in HsModality::ALL {
            assert_eq!(hs_modality(&s, &q, m, &zero).unwrap(), zero);
        }
    }

    #[test]
    fn non_unital_codomain_is_rejected() {
        let zero = crate::algebra::FiniteQuantale::new(
            "zero",
            crate::algebra::FiniteLattice::chain(&["0", "1"]),
            |_, _| 0,
            None,
            Default::default(),
        )
        .unwrap();
        let s = seg(2);
        let f = FnTable::constant(s.len(), 0);
        assert!(matches!(hs_modality(&s, &zero, HsModality::B, &f), Err(Error::Unsupported(_))));
    }

    #[test]
    fn modality_names_parse() {
        for m in HsModality::ALL {
            assert_eq!(m.to_string().parse::<HsModality>().unwrap(), m);
        }
        assert_eq!("Ac".parse::<HsModality>().unwrap(), HsModality::AConverse);
        assert!("X".parse::<HsModality>().is_err());
    }
}
