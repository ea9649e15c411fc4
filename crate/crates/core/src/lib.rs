//! Relational convolution and the convolution algebras it generates.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: finite lattices, quantales (full, weak, proto), residuals,
//!   quantale modules and the quantale/lattice semidirect product.
//! * [`psg`]: partial semigroups and monoids with their constructions
//!   (ordered pairs, products, boundary monoids, actions, semidirect products).
//! * [`relstruct`]: ternary relations and relational semigroups/monoids.
//! * [`conv`]: function tables, relational convolution, unary modalities,
//!   residual modalities and the lifted law suites.
//! * [`interval`]: posets, segments, Allen and Venema relations,
//!   Halpern–Shoham modalities.
//! * [`itl`]: interval temporal logic with chop as convolution.
//! * [`quantcalc`]: durations and mean values of piecewise-constant signals.
//! * [`cli`]: the `relconv` command-line front end.

pub mod algebra;
pub mod cli;
pub mod conv;
mod error;
pub mod exec;
pub mod interval;
pub mod itl;
pub mod psg;
pub mod quantcalc;
pub mod relstruct;
pub mod report;

pub use error::{Error, Result};
pub use exec::Exec;
pub use report::{LawOutcome, LawReport, LawStatus};

/// Seed used for every sampled check unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;
