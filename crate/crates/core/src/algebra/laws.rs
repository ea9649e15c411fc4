//! Exhaustive axiom checks for finite (or finitely sampled) quantales.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Enumerable, Quantale};
use crate::{Error, LawReport, Result, DEFAULT_SEED};

/// Which family of axioms a check asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LawMode {
    #[default]
    Full,
    /// Left distributivity only over nonempty families; no right annihilation.
    Weak,
    /// No associativity.
    Proto,
}

impl std::str::FromStr for LawMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(LawMode::Full),
            "weak" => Ok(LawMode::Weak),
            "proto" => Ok(LawMode::Proto),
            other => Err(Error::invalid(format!("unknown law mode `{other}`"))),
        }
    }
}

/// Controls how join families are enumerated by [`check_quantale_laws`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetOptions {
    /// Largest carrier for which all subsets are enumerated.
    pub bound: usize,
    /// `(count, seed)`: draw this many random subsets when the carrier exceeds `bound`.
    pub sampling: Option<(usize, u64)>,
}

impl Default for SubsetOptions {
    fn default() -> Self {
        SubsetOptions {
            bound: 6,
            sampling: None,
        }
    }
}

impl SubsetOptions {
    pub fn sampled(count: usize) -> Self {
        SubsetOptions {
            bound: 6,
            sampling: Some((count, DEFAULT_SEED)),
        }
    }
}

fn families<T: Copy>(elems: &[T], opts: &SubsetOptions) -> Result<Vec<Vec<T>>> {
    let n = elems.len();
    if n <= opts.bound {
        return Ok((0u64..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| elems[i]).collect())
            .collect());
    }
    let (count, seed) = opts.sampling.ok_or(Error::TooLarge {
        size: n,
        bound: opts.bound,
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![Vec::new()];
    out.extend(elems.iter().map(|&e| vec![e]));
    while out.len() < count.max(n + 1) {
        out.push(elems.iter().copied().filter(|_| rng.gen_bool(0.5)).collect());
    }
    Ok(out)
}

fn show_family<Q: Quantale>(q: &Q, xs: &[Q::Elem]) -> String {
    let items: Vec<String> = xs.iter().map(|&x| q.show(x)).collect();
    format!("{{{}}}", items.join(","))
}

/// Checks the axioms of `q` in the given mode.
///
/// Fails with [`Error::TooLarge`] when the carrier has more than
/// `opts.bound` elements and no sampling is configured.
pub fn check_quantale_laws<Q: Quantale + Enumerable>(
    q: &Q,
    mode: LawMode,
    opts: &SubsetOptions,
) -> Result<LawReport> {
    let es = q.elements();
    let fams = families(&es, opts)?;
    let n = es.len() as u64;
    let s = |x| q.show(x);
    let mut r = LawReport::new(format!("{} ({mode:?} mode)", q.name()));

    let w = es.iter().find(|&&a| !q.leq(a, a)).map(|&a| format!("x={}", s(a)));
    r.record("leq-reflexive", n, w);

    let pairs = || es.iter().flat_map(|&a| es.iter().map(move |&b| (a, b)));
    let triples = || pairs().flat_map(|(a, b)| es.iter().map(move |&c| (a, b, c)));

    let w = pairs()
        .find(|&(a, b)| q.leq(a, b) && q.leq(b, a) && !q.same(a, b))
        .map(|(a, b)| format!("x={}, y={}", s(a), s(b)));
    r.record("leq-antisymmetric", n * n, w);

    let w = triples()
        .find(|&(a, b, c)| q.leq(a, b) && q.leq(b, c) && !q.leq(a, c))
        .map(|(a, b, c)| format!("x={}, y={}, z={}", s(a), s(b), s(c)));
    r.record("leq-transitive", n * n * n, w);

    let w = triples()
        .find(|&(a, b, c)| {
            let j = q.join(a, b);
            !q.leq(a, j) || !q.leq(b, j) || (q.leq(a, c) && q.leq(b, c) && !q.leq(j, c))
        })
        .map(|(a, b, c)| format!("x={}, y={}, z={}", s(a), s(b), s(c)));
    r.record("join-lub", n * n * n, w);

    let w = triples()
        .find(|&(a, b, c)| {
            let m = q.meet(a, b);
            !q.leq(m, a) || !q.leq(m, b) || (q.leq(c, a) && q.leq(c, b) && !q.leq(c, m))
        })
        .map(|(a, b, c)| format!("x={}, y={}, z={}", s(a), s(b), s(c)));
    r.record("meet-glb", n * n * n, w);

    let w = es
        .iter()
        .find(|&&a| !q.leq(q.bottom(), a) || !q.leq(a, q.top()))
        .map(|&a| format!("x={}", s(a)));
    r.record("bounds", n, w);

    if mode == LawMode::Proto {
        r.skip("compose-associative", "not required of proto-quantales");
    } else {
        let w = triples()
            .find(|&(a, b, c)| {
                !q.same(q.compose(q.compose(a, b), c), q.compose(a, q.compose(b, c)))
            })
            .map(|(a, b, c)| {
                format!(
                    "x={}, y={}, z={}: (x·y)·z = {} but x·(y·z) = {}",
                    s(a),
                    s(b),
                    s(c),
                    s(q.compose(q.compose(a, b), c)),
                    s(q.compose(a, q.compose(b, c)))
                )
            });
        r.record("compose-associative", n * n * n, w);
    }

    let cases = n * fams.len() as u64;
    let w = es
        .iter()
        .flat_map(|&u| fams.iter().map(move |f| (u, f)))
        .find(|(u, f)| {
            let lhs = q.compose(q.join_all(f.iter().copied()), *u);
            let rhs = q.join_all(f.iter().map(|&x| q.compose(x, *u)));
            !q.same(lhs, rhs)
        })
        .map(|(u, f)| format!("(⊔X)·u with u={}, X={}", s(u), show_family(q, f)));
    r.record("right-distributive", cases, w);

    let weak = mode == LawMode::Weak;
    let w = es
        .iter()
        .flat_map(|&u| fams.iter().map(move |f| (u, f)))
        .filter(|(_, f)| !weak || !f.is_empty())
        .find(|(u, f)| {
            let lhs = q.compose(*u, q.join_all(f.iter().copied()));
            let rhs = q.join_all(f.iter().map(|&x| q.compose(*u, x)));
            !q.same(lhs, rhs)
        })
        .map(|(u, f)| format!("u·(⊔X) with u={}, X={}", s(u), show_family(q, f)));
    r.record("left-distributive", cases, w);

    let bot = q.bottom();
    let w = es
        .iter()
        .find(|&&x| !q.same(q.compose(bot, x), bot))
        .map(|&x| format!("x={}: 0·x = {} ≠ {}", s(x), s(q.compose(bot, x)), s(bot)));
    r.record("left-annihilation", n, w);

    if weak {
        r.skip("right-annihilation", "not required of weak quantales");
    } else {
        let w = es
            .iter()
            .find(|&&x| !q.same(q.compose(x, bot), bot))
            .map(|&x| format!("x={}: x·0 = {} ≠ {}", s(x), s(q.compose(x, bot)), s(bot)));
        r.record("right-annihilation", n, w);
    }

    match q.unit() {
        Some(one) => {
            let w = es
                .iter()
                .find(|&&x| !q.same(q.compose(one, x), x) || !q.same(q.compose(x, one), x))
                .map(|&x| format!("x={}", s(x)));
            r.record("unit", n, w);
        }
        None => r.skip("unit", "no unit claimed"),
    }

    let flags = q.flags();
    if flags.abelian {
        let w = pairs()
            .find(|&(a, b)| !q.same(q.compose(a, b), q.compose(b, a)))
            .map(|(a, b)| format!("x={}, y={}", s(a), s(b)));
        r.record("commutative", n * n, w);
    }
    if flags.distributive {
        let w = triples()
            .find(|&(a, b, c)| {
                !q.same(q.meet(a, q.join(b, c)), q.join(q.meet(a, b), q.meet(a, c)))
            })
            .map(|(a, b, c)| format!("x={}, y={}, z={}", s(a), s(b), s(c)));
        r.record("lattice-distributive", n * n * n, w);
    }
    if flags.boolean {
        let w = es
            .iter()
            .find(|&&a| match q.complement(a) {
                Some(c) => !q.same(q.meet(a, c), bot) || !q.same(q.join(a, c), q.top()),
                None => true,
            })
            .map(|&a| format!("x={}", s(a)));
        r.record("complement", n, w);
    }
    Ok(r)
}

/// `u\w`, the join of all `v` with `u·v ≤ w`.
pub fn residual_left<Q: Quantale + Enumerable>(q: &Q, u: Q::Elem, w: Q::Elem) -> Q::Elem {
    q.join_all(q.elements().into_iter().filter(|&v| q.leq(q.compose(u, v), w)))
}

/// `w/v`, the join of all `u` with `u·v ≤ w`.
pub fn residual_right<Q: Quantale + Enumerable>(q: &Q, w: Q::Elem, v: Q::Elem) -> Q::Elem {
    q.join_all(q.elements().into_iter().filter(|&u| q.leq(q.compose(u, v), w)))
}

/// Checks `u·v ≤ w ⇔ v ≤ u\w ⇔ u ≤ w/v` for every triple.
pub fn check_residuals<Q: Quantale + Enumerable>(q: &Q) -> LawReport {
    let es = q.elements();
    let n = es.len() as u64;
    let mut r = LawReport::new(format!("residuals of {}", q.name()));
    let mut w = None;
    'outer: for &u in &es {
        for &w0 in &es {
            let lr = residual_left(q, u, w0);
            for &v in &es {
                let rr = residual_right(q, w0, v);
                let a = q.leq(q.compose(u, v), w0);
                let b = q.leq(v, lr);
                let c = q.leq(u, rr);
                if a != b || b != c {
                    w = Some(format!(
                        "u={}, v={}, w={}: u·v≤w is {a}, v≤u\\w is {b}, u≤w/v is {c}",
                        q.show(u),
                        q.show(v),
                        q.show(w0)
                    ));
                    break 'outer;
                }
            }
        }
    }
    r.record("galois", n * n * n, w);
    r
}
