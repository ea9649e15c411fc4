//! Real-valued quantales over `f64` with explicit infinity sentinels.

use super::{Flags, Lattice, Quantale, REAL_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealKind {
    /// `([0,∞], ≥, +, 0)`: join is `min`, bottom is `+∞`.
    MinPlus,
    /// `([0,∞) ∪ {−∞}, ≤, +, 0)`: join is `max`, bottom is `−∞`.
    MaxPlus,
    /// `([0,1], ≥, ·, 1)`: join is `min`.
    UnitMin,
    /// `([0,1], ≤, ·, 1)`: join is `max`.
    UnitMax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealQuantale {
    pub kind: RealKind,
}

impl RealQuantale {
    pub const fn new(kind: RealKind) -> Self {
        RealQuantale { kind }
    }

    /// True when the order is the reverse of the numeric order.
    pub fn reversed(&self) -> bool {
        matches!(self.kind, RealKind::MinPlus | RealKind::UnitMin)
    }

    pub fn contains(&self, x: f64) -> bool {
        match self.kind {
            RealKind::MinPlus => x >= 0.0,
            RealKind::MaxPlus => x >= 0.0 || x == f64::NEG_INFINITY,
            RealKind::UnitMin | RealKind::UnitMax => (0.0..=1.0).contains(&x),
        }
    }
}

impl Lattice for RealQuantale {
    type Elem = f64;

    fn leq(&self, a: f64, b: f64) -> bool {
        if self.same(a, b) {
            return true;
        }
        if self.reversed() {
            a >= b
        } else {
            a <= b
        }
    }

    fn join(&self, a: f64, b: f64) -> f64 {
        if self.reversed() {
            a.min(b)
        } else {
            a.max(b)
        }
    }

    fn meet(&self, a: f64, b: f64) -> f64 {
        if self.reversed() {
            a.max(b)
        } else {
            a.min(b)
        }
    }

    fn bottom(&self) -> f64 {
        match self.kind {
            RealKind::MinPlus => f64::INFINITY,
            RealKind::MaxPlus => f64::NEG_INFINITY,
            RealKind::UnitMin => 1.0,
            RealKind::UnitMax => 0.0,
        }
    }

    fn top(&self) -> f64 {
        match self.kind {
            RealKind::MinPlus => 0.0,
            RealKind::MaxPlus => f64::INFINITY,
            RealKind::UnitMin => 0.0,
            RealKind::UnitMax => 1.0,
        }
    }

    fn same(&self, a: f64, b: f64) -> bool {
        if a.is_infinite() || b.is_infinite() {
            return a == b;
        }
        (a - b).abs() <= REAL_TOLERANCE
    }

    fn show(&self, a: f64) -> String {
        if a == f64::INFINITY {
            "∞".into()
        } else if a == f64::NEG_INFINITY {
            "-∞".into()
        } else {
            format!("{a}")
        }
    }
}

impl Quantale for RealQuantale {
    fn name(&self) -> String {
        match self.kind {
            RealKind::MinPlus => "minplus",
            RealKind::MaxPlus => "maxplus",
            RealKind::UnitMin => "unit-interval-min",
            RealKind::UnitMax => "unit-interval-max",
        }
        .into()
    }

    fn compose(&self, a: f64, b: f64) -> f64 {
        match self.kind {
            // −∞ absorbs, including against the +∞ top sentinel
            RealKind::MaxPlus if a == f64::NEG_INFINITY || b == f64::NEG_INFINITY => f64::NEG_INFINITY,
            RealKind::MinPlus | RealKind::MaxPlus => a + b,
            RealKind::UnitMin | RealKind::UnitMax => a * b,
        }
    }

    fn unit(&self) -> Option<f64> {
        Some(match self.kind {
            RealKind::MinPlus | RealKind::MaxPlus => 0.0,
            RealKind::UnitMin | RealKind::UnitMax => 1.0,
        })
    }

    fn flags(&self) -> Flags {
        Flags {
            unital: true,
            distributive: true,
            abelian: true,
            ..Flags::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minplus_basics() {
        let q = RealQuantale::new(RealKind::MinPlus);
        assert_eq!(q.compose(2.0, 3.0), 5.0);
        assert_eq!(q.join(2.0, 3.0), 2.0);
        assert!(q.leq(3.0, 2.0));
        assert_eq!(q.compose(1.0, q.bottom()), f64::INFINITY);
    }

    #[test]
    fn maxplus_neg_infinity_absorbs_top() {
        let q = RealQuantale::new(RealKind::MaxPlus);
        assert_eq!(q.compose(q.top(), q.bottom()), f64::NEG_INFINITY);
        assert_eq!(q.join(2.0, 3.0), 3.0);
    }

    #[test]
    fn tolerance_equality() {
        let q = RealQuantale::new(RealKind::UnitMax);
        assert!(q.same(0.1 + 0.2, 0.3));
        assert!(!q.same(0.1, 0.1 + 1e-6));
    }
}
