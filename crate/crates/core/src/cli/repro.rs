//! Counterexamples recomputed from first principles.
//!
//! Each case rebuilds its structure, evaluates both sides of the law it
//! refutes and compares the result with the published inequality.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::algebra::{finite_quantale, sd_quantale, Lattice, Quantale, QuantaleModule};
use crate::conv::{all_tables, convolve, delta_unit, same, FnTable};
use crate::interval::{FinPoset, Segments};
use crate::itl::infinite_right_annihilation;
use crate::psg::PartialMonoid;
use crate::relstruct::{assoc_counterexample, rel_of_psg, tree_relation};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReproCase {
    AssocRel,
    NoUnitStrict,
    WeakAssoc,
    WeakRightUnit,
    SdLeftDistrib,
    InfRightAnnihilation,
    TreeAssoc,
}

impl ReproCase {
    pub const ALL: [ReproCase; 7] = [
        ReproCase::AssocRel,
        ReproCase::NoUnitStrict,
        ReproCase::WeakAssoc,
        ReproCase::WeakRightUnit,
        ReproCase::SdLeftDistrib,
        ReproCase::InfRightAnnihilation,
        ReproCase::TreeAssoc,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ReproCase::AssocRel => "assoc-rel",
            ReproCase::NoUnitStrict => "no-unit-strict",
            ReproCase::WeakAssoc => "weak-assoc",
            ReproCase::WeakRightUnit => "weak-right-unit",
            ReproCase::SdLeftDistrib => "sd-left-distrib",
            ReproCase::InfRightAnnihilation => "inf-right-annihilation",
            ReproCase::TreeAssoc => "tree-assoc",
        }
    }
}

impl fmt::Display for ReproCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ReproCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReproCase::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::invalid(format!("unknown repro case `{s}`")))
    }
}

/// What a reproduction computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Repro {
    pub case: ReproCase,
    /// The law that fails.
    pub law: String,
    /// The inequality expected to hold.
    pub expected: String,
    /// The inequality as computed.
    pub observed: String,
    pub reproduced: bool,
}

fn outcome(case: ReproCase, law: &str, expected: &str, observed: String) -> Repro {
    Repro {
        case,
        law: law.into(),
        reproduced: observed == expected,
        expected: expected.into(),
        observed,
    }
}

pub fn repro(case: ReproCase) -> Result<Repro> {
    match case {
        ReproCase::AssocRel => assoc_rel(),
        ReproCase::NoUnitStrict => no_unit_strict(),
        ReproCase::WeakAssoc => weak_assoc(),
        ReproCase::WeakRightUnit => weak_right_unit(),
        ReproCase::SdLeftDistrib => sd_left_distrib(),
        ReproCase::InfRightAnnihilation => inf_right_annihilation(),
        ReproCase::TreeAssoc => tree_assoc(),
    }
}

fn assoc_rel() -> Result<Repro> {
    let m = assoc_counterexample();
    let q = finite_quantale("bool")?;
    let r = m.rel();
    let f = FnTable::new(vec![0, 1]);
    let left = convolve(&q, r, &convolve(&q, r, &f, &f)?, &f)?;
    let right = convolve(&q, r, &f, &convolve(&q, r, &f, &f)?)?;
    let b = m.index_of("b").expect("carrier has b");
    let observed = format!(
        "((f∗f)∗f) b = {} ≠ {} = (f∗(f∗f)) b",
        q.show(left.get(b)),
        q.show(right.get(b))
    );
    Ok(outcome(ReproCase::AssocRel, "associativity", "((f∗f)∗f) b = 0 ≠ 1 = (f∗(f∗f)) b", observed))
}

fn no_unit_strict() -> Result<Repro> {
    let seg = Segments::new(&FinPoset::chain(3), true);
    let q = finite_quantale("bool")?;
    let r = seg.chop();
    let tables = all_tables(&q, seg.len());
    let is_unit = |g: &FnTable<usize>| {
        tables.iter().all(|f| {
            same(&q, &convolve(&q, &r, f, g).unwrap(), f) && same(&q, &convolve(&q, &r, g, f).unwrap(), f)
        })
    };
    let units = tables.iter().filter(|g| is_unit(g)).count();
    let observed = format!("{units} of {} candidate unit tables over {} strict segments", tables.len(), seg.len());
    Ok(outcome(
        ReproCase::NoUnitStrict,
        "unit",
        "0 of 64 candidate unit tables over 6 strict segments",
        observed,
    ))
}

/// `{a, b}` with `a·a = b` as the only defined product.
pub fn square_semigroup() -> PartialMonoid {
    PartialMonoid::new(vec!["a".into(), "b".into()], vec![Some(1), None, None, None], vec![]).unwrap()
}

/// `{1, a}` with unit `1` and `a·a = 1`.
pub fn two_element_group() -> PartialMonoid {
    PartialMonoid::new(vec!["1".into(), "a".into()], vec![Some(0), Some(1), Some(1), Some(0)], vec![0]).unwrap()
}

fn weak_assoc() -> Result<Repro> {
    let m = rel_of_psg(&square_semigroup())?;
    let q = finite_quantale("chain3-weak")?;
    let r = m.rel();
    let f = FnTable::constant(2, q.top());
    let ff = convolve(&q, r, &f, &f)?;
    let left = convolve(&q, r, &f, &ff)?;
    let right = convolve(&q, r, &ff, &f)?;
    let b = m.index_of("b").expect("carrier has b");
    let observed = format!("(f∗f²) b = {} ≠ {} = (f²∗f) b", q.show(left.get(b)), q.show(right.get(b)));
    Ok(outcome(ReproCase::WeakAssoc, "associativity", "(f∗f²) b = ⊤ ≠ 0 = (f²∗f) b", observed))
}

fn weak_right_unit() -> Result<Repro> {
    let m = rel_of_psg(&two_element_group())?;
    let q = finite_quantale("chain3-weak")?;
    let (one, a) = (m.index_of("1").unwrap(), m.index_of("a").unwrap());
    let mut vals = vec![q.bottom(); 2];
    vals[a] = q.top();
    vals[one] = q.unit().expect("chain3-weak is unital");
    let f = FnTable::new(vals);
    let id = delta_unit(&m, &q)?;
    let fid = convolve(&q, m.rel(), &f, &id)?;
    let observed = format!("(f∗id) 1 = {} ≠ {} = f 1", q.show(fid.get(one)), q.show(f.get(one)));
    Ok(outcome(ReproCase::WeakRightUnit, "right-unit", "(f∗id) 1 = ⊤ ≠ 1 = f 1", observed))
}

fn sd_left_distrib() -> Result<Repro> {
    let sd = sd_quantale(QuantaleModule::on_itself(finite_quantale("chain2-top-unit")?))?;
    let x = sd.pair("0", "⊤").expect("chain2-top-unit has 0 and ⊤");
    // ⊔∅ is the bottom pair
    let empty = sd.bottom();
    let lhs = sd.compose(x, empty);
    let rhs = sd.join_all(std::iter::empty::<(usize, usize)>());
    // elements print by index, so ⊤ (the unit) reads as 1
    let show = |p: (usize, usize)| format!("({},{})", p.0, p.1);
    let observed = format!("(0,⊤)⋉⊔∅ = {} ≠ {} = ⊔∅", show(lhs), show(rhs));
    Ok(outcome(ReproCase::SdLeftDistrib, "left-distributive", "(0,⊤)⋉⊔∅ = (0,1) ≠ (0,0) = ⊔∅", observed))
}

fn inf_right_annihilation() -> Result<Repro> {
    let w = infinite_right_annihilation(3)?;
    let show = |p: (usize, usize)| format!("({},{})", p.0, p.1);
    let zero = (0, 0);
    let observed = if w.product != zero && w.product == w.value {
        format!("(f∗0) {} = {} ≠ {}", w.segment, show(w.product), show(zero))
    } else {
        format!("(f∗0) {} = {}, f there is {}", w.segment, show(w.product), show(w.value))
    };
    Ok(outcome(
        ReproCase::InfRightAnnihilation,
        "right-annihilation",
        "(f∗0) (0,[0,∞]) = (0,1) ≠ (0,0)",
        observed,
    ))
}

fn tree_assoc() -> Result<Repro> {
    let m = tree_relation();
    let q = finite_quantale("bool")?;
    let r = m.rel();
    let a = m.index_of("a").unwrap();
    let f = FnTable::indicator(m.len(), &[a], 1, 0);
    let ff = convolve(&q, r, &f, &f)?;
    let right = convolve(&q, r, &f, &ff)?;
    let left = convolve(&q, r, &ff, &f)?;
    let holds = |t: &FnTable<usize>| {
        let pts: Vec<&str> = (0..m.len()).filter(|&x| t.get(x) == 1).map(|x| m.name(x)).collect();
        format!("{{{}}}", pts.join(", "))
    };
    let observed = format!("f∗(f∗f) holds of {}, (f∗f)∗f holds of {}", holds(&right), holds(&left));
    Ok(outcome(
        ReproCase::TreeAssoc,
        "associativity",
        "f∗(f∗f) holds of {(a·(a·a))}, (f∗f)∗f holds of {((a·a)·a)}",
        observed,
    ))
}
