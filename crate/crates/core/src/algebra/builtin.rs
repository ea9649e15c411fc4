//! The catalog of named instances.

use super::{FiniteLattice, FiniteQuantale, Flags, RealKind, RealQuantale};
use crate::{Error, Result};

pub const BUILTIN_NAMES: &[&str] = &[
    "bool",
    "minplus",
    "maxplus",
    "unit-interval-min",
    "unit-interval-max",
    "chain3-weak",
    "chain2-top-unit",
    "diamond",
    "chain4",
];

#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    Finite(FiniteQuantale),
    Real(RealQuantale),
}

pub fn builtin_quantale(name: &str) -> Result<Builtin> {
    let q = match name {
        "bool" => Builtin::Finite(FiniteQuantale::meet_quantale(
            "bool",
            FiniteLattice::chain(&["0", "1"]),
            true,
        )?),
        "minplus" => Builtin::Real(RealQuantale::new(RealKind::MinPlus)),
        "maxplus" => Builtin::Real(RealQuantale::new(RealKind::MaxPlus)),
        "unit-interval-min" => Builtin::Real(RealQuantale::new(RealKind::UnitMin)),
        "unit-interval-max" => Builtin::Real(RealQuantale::new(RealKind::UnitMax)),
        "chain3-weak" => {
            // 0·u = 0, 1·u = u, ⊤·u = ⊤
            let l = FiniteLattice::chain(&["0", "1", "⊤"]);
            Builtin::Finite(FiniteQuantale::new(
                "chain3-weak",
                l,
                |a, b| if a == 1 { b } else { a },
                Some(1),
                Flags {
                    distributive: true,
                    weak: true,
                    ..Flags::default()
                },
            )?)
        }
        "chain2-top-unit" => Builtin::Finite(FiniteQuantale::meet_quantale(
            "chain2-top-unit",
            FiniteLattice::chain(&["0", "⊤"]),
            true,
        )?),
        "diamond" => {
            let l = FiniteLattice::from_pairs(
                vec!["0".into(), "a".into(), "b".into(), "1".into()],
                &[(0, 1), (0, 2), (1, 3), (2, 3)],
            )?;
            Builtin::Finite(FiniteQuantale::meet_quantale("diamond", l, true)?)
        }
        "chain4" => Builtin::Finite(FiniteQuantale::meet_quantale(
            "chain4",
            FiniteLattice::chain(&["0", "a", "b", "⊤"]),
            false,
        )?),
        other => {
            return Err(Error::UnknownQuantale {
                name: other.to_string(),
                valid: BUILTIN_NAMES.join(", "),
            })
        }
    };
    Ok(q)
}

/// Looks up a builtin with a finite carrier.
pub fn finite_quantale(name: &str) -> Result<FiniteQuantale> {
    match builtin_quantale(name)? {
        Builtin::Finite(q) => Ok(q),
        Builtin::Real(_) => Err(Error::Unsupported(format!("`{name}` has no finite carrier"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Lattice, Quantale};

    #[test]
    fn bool_composition_is_meet() {
        let q = finite_quantale("bool").unwrap();
        assert_eq!(q.compose(1, 0), 0);
        assert_eq!(q.compose(1, 1), 1);
        assert_eq!(q.unit(), Some(1));
    }

    #[test]
    fn chain3_weak_top_absorbs_on_the_left() {
        let q = finite_quantale("chain3-weak").unwrap();
        let top = q.element("⊤").unwrap();
        let zero = q.element("0").unwrap();
        assert_eq!(q.compose(top, zero), top);
        assert_eq!(q.compose(zero, top), zero);
        assert!(q.flags().weak);
    }

    #[test]
    fn chain2_unit_is_top() {
        let q = finite_quantale("chain2-top-unit").unwrap();
        assert_eq!(q.unit(), Some(q.top()));
    }

    #[test]
    fn unknown_name_lists_valid_ones() {
        let err = builtin_quantale("nope").unwrap_err().to_string();
        assert!(err.contains("minplus") && err.contains("chain3-weak"));
    }

    #[test]
    fn real_has_no_finite_carrier() {
        assert!(matches!(finite_quantale("minplus"), Err(Error::Unsupported(_))));
    }
}
