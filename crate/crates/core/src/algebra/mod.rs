//! Ordered algebras: finite lattices, quantales and their variants.
//!
//! Finite carriers are indexed `0..n` and every operation is a table lookup.
//! Semantic carriers (min-plus, max-plus, unit interval) work on `f64` and
//! are law-checked on caller-supplied finite samples through [`Sampled`].

use std::fmt;

use serde::{Deserialize, Serialize};

mod builtin;
mod finite;
mod laws;
mod real;
mod semidirect;

pub use builtin::{builtin_quantale, finite_quantale, Builtin, BUILTIN_NAMES};
pub use finite::{FiniteLattice, FiniteQuantale, QuantaleJson};
pub use laws::{
    check_quantale_laws, check_residuals, residual_left, residual_right, LawMode, SubsetOptions,
};
pub use real::{RealKind, RealQuantale};
pub use semidirect::{check_module_laws, sd_quantale, QuantaleModule, SdQuantale};

/// Absolute tolerance for comparisons of real-valued elements.
pub const REAL_TOLERANCE: f64 = 1e-9;

/// A lattice with finite joins and meets.
pub trait Lattice: Sync + Send {
    type Elem: Copy + PartialEq + fmt::Debug + Send + Sync;

    fn leq(&self, a: Self::Elem, b: Self::Elem) -> bool;
    fn join(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn meet(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;

    /// Element equality; real carriers compare up to [`REAL_TOLERANCE`].
    fn same(&self, a: Self::Elem, b: Self::Elem) -> bool {
        a == b
    }

    fn show(&self, a: Self::Elem) -> String {
        format!("{a:?}")
    }

    fn join_all<I: IntoIterator<Item = Self::Elem>>(&self, items: I) -> Self::Elem {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    fn meet_all<I: IntoIterator<Item = Self::Elem>>(&self, items: I) -> Self::Elem {
        items.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }
}

/// A lattice with a composition distributing over joins.
pub trait Quantale: Lattice {
    fn name(&self) -> String;
    fn compose(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn unit(&self) -> Option<Self::Elem>;
    fn flags(&self) -> Flags;

    fn complement(&self, _a: Self::Elem) -> Option<Self::Elem> {
        None
    }
}

/// Carriers small enough to list.
pub trait Enumerable: Lattice {
    fn elements(&self) -> Vec<Self::Elem>;
}

/// Capability flags of a quantale instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Flags {
    pub unital: bool,
    pub distributive: bool,
    pub boolean: bool,
    pub abelian: bool,
    pub weak: bool,
    pub proto: bool,
}

impl Flags {
    pub fn parse<S: AsRef<str>>(names: &[S]) -> crate::Result<Flags> {
        let mut f = Flags::default();
        for n in names {
            match n.as_ref() {
                "unital" => f.unital = true,
                "distributive" => f.distributive = true,
                "boolean" => f.boolean = true,
                "abelian" => f.abelian = true,
                "weak" => f.weak = true,
                "proto" => f.proto = true,
                other => return Err(crate::Error::invalid(format!("unknown flag `{other}`"))),
            }
        }
        Ok(f)
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        for (on, name) in [
            (self.unital, "unital"),
            (self.distributive, "distributive"),
            (self.boolean, "boolean"),
            (self.abelian, "abelian"),
            (self.weak, "weak"),
            (self.proto, "proto"),
        ] {
            if on {
                v.push(name);
            }
        }
        v
    }
}

/// A semantic quantale restricted to a finite sample of its carrier.
///
/// Operations delegate to the base instance, so results need not lie in the
/// sample; law checks compare them with [`Lattice::same`].
pub struct Sampled<'a, Q: Quantale> {
    pub base: &'a Q,
    pub sample: Vec<Q::Elem>,
}

impl<'a, Q: Quantale> Sampled<'a, Q> {
    pub fn new(base: &'a Q, sample: Vec<Q::Elem>) -> Self {
        Sampled { base, sample }
    }
}

impl<Q: Quantale> Lattice for Sampled<'_, Q> {
    type Elem = Q::Elem;

    fn leq(&self, a: Q::Elem, b: Q::Elem) -> bool {
        self.base.leq(a, b)
    }
    fn join(&self, a: Q::Elem, b: Q::Elem) -> Q::Elem {
        self.base.join(a, b)
    }
    fn meet(&self, a: Q::Elem, b: Q::Elem) -> Q::Elem {
        self.base.meet(a, b)
    }
    fn bottom(&self) -> Q::Elem {
        self.base.bottom()
    }
    fn top(&self) -> Q::Elem {
        self.base.top()
    }
    fn same(&self, a: Q::Elem, b: Q::Elem) -> bool {
        self.base.same(a, b)
    }
    fn show(&self, a: Q::Elem) -> String {
        self.base.show(a)
    }
}

impl<Q: Quantale> Quantale for Sampled<'_, Q> {
    fn name(&self) -> String {
        format!("{} (sample of {})", self.base.name(), self.sample.len())
    }
    fn compose(&self, a: Q::Elem, b: Q::Elem) -> Q::Elem {
        self.base.compose(a, b)
    }
    fn unit(&self) -> Option<Q::Elem> {
        self.base.unit()
    }
    fn flags(&self) -> Flags {
        self.base.flags()
    }
    fn complement(&self, a: Q::Elem) -> Option<Q::Elem> {
        self.base.complement(a)
    }
}

impl<Q: Quantale> Enumerable for Sampled<'_, Q> {
    fn elements(&self) -> Vec<Q::Elem> {
        self.sample.clone()
    }
}
