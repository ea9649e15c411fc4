//! Law suites for lifted convolution algebras `Q^X`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{conv_raw, delta, delta_unit, first_difference, join, join_all, same, show_table, FnTable};
use crate::algebra::{Enumerable, Quantale};
use crate::relstruct::{check_locally_finite, check_rel_commutative, RelMonoid};
use crate::{Error, Exec, LawReport, Result, DEFAULT_SEED};

/// The algebra a lifting is claimed to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftMode {
    Quantale,
    Unital,
    /// Weak codomain: left distributivity over nonempty families only,
    /// right annihilation and the right unit law not required.
    Weak,
    /// No associativity.
    Proto,
    Abelian,
    /// Finite-sum laws, gated on local finiteness.
    Semiring,
}

impl std::str::FromStr for LiftMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "quantale" => LiftMode::Quantale,
            "unital" => LiftMode::Unital,
            "weak" => LiftMode::Weak,
            "proto" => LiftMode::Proto,
            "abelian" => LiftMode::Abelian,
            "semiring" => LiftMode::Semiring,
            other => return Err(Error::invalid(format!("unknown lifting mode `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftOptions {
    /// Enumerate every table when `|Q|^|X|` is at most this.
    pub table_cutoff: usize,
    /// Number of seeded random tables otherwise.
    pub samples: usize,
    /// Largest number of table pairs or triples checked per law.
    pub tuple_budget: usize,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions {
            table_cutoff: 4096,
            samples: 500,
            tuple_budget: 60_000,
            seed: DEFAULT_SEED,
            exec: Exec::default(),
        }
    }
}

/// Every table `0..n → Q`, in lexicographic order of values.
pub fn all_tables<Q: Enumerable>(q: &Q, n: usize) -> Vec<FnTable<Q::Elem>> {
    let es = q.elements();
    let k = es.len();
    let total = k.checked_pow(n as u32).expect("table space too large to enumerate");
    (0..total)
        .map(|mut m| {
            let mut vals = vec![es[0]; n];
            for slot in vals.iter_mut().rev() {
                *slot = es[m % k];
                m /= k;
            }
            FnTable::new(vals)
        })
        .collect()
}

/// `count` tables with values drawn uniformly from the carrier.
pub fn random_tables<Q: Enumerable>(q: &Q, n: usize, count: usize, seed: u64) -> Vec<FnTable<Q::Elem>> {
    let es = q.elements();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| FnTable::new((0..n).map(|_| es[rng.gen_range(0..es.len())]).collect()))
        .collect()
}

fn table_space<Q: Quantale + Enumerable>(
    q: &Q,
    m: &RelMonoid,
    opts: &LiftOptions,
) -> (Vec<FnTable<Q::Elem>>, String) {
    let n = m.len();
    let k = q.elements().len();
    let size = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size <= opts.table_cutoff as u128 {
        return (all_tables(q, n), format!("all {size} tables"));
    }
    let mut tables = vec![FnTable::constant(n, q.bottom()), FnTable::constant(n, q.top())];
    if let Ok(id) = delta_unit(m, q) {
        tables.push(id);
    }
    for x in 0..n {
        tables.push(delta(q, n, x).unwrap_or_else(|_| FnTable::indicator(n, &[x], q.top(), q.bottom())));
    }
    let extra = opts.samples.saturating_sub(tables.len());
    tables.extend(random_tables(q, n, extra, opts.seed));
    let note = format!("{} seeded tables of {size}", tables.len());
    (tables, note)
}

/// Index tuples for a law over `arity` tables out of `k`, within `budget`.
struct Tuples {
    k: usize,
    arity: u32,
    sampled: Option<Vec<[usize; 3]>>,
    diagonal_first: bool,
}

impl Tuples {
    fn new(k: usize, arity: u32, budget: usize, seed: u64, diagonal_first: bool) -> Self {
        let total = (k as u128).pow(arity);
        let sampled = (total > budget as u128).then(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v: Vec<[usize; 3]> = Vec::with_capacity(budget + k);
            if diagonal_first {
                v.extend((0..k).map(|i| [i; 3]));
            }
            v.extend((0..budget).map(|_| [rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k)]));
            v
        });
        Tuples {
            k,
            arity,
            sampled,
            diagonal_first,
        }
    }

    fn len(&self) -> usize {
        match &self.sampled {
            Some(v) => v.len(),
            None => {
                let total = self.k.pow(self.arity);
                if self.diagonal_first {
                    total + self.k
                } else {
                    total
                }
            }
        }
    }

    fn get(&self, i: usize) -> [usize; 3] {
        if let Some(v) = &self.sampled {
            return v[i];
        }
        let mut i = i;
        if self.diagonal_first {
            if i < self.k {
                return [i; 3];
            }
            i -= self.k;
        }
        let k = self.k;
        match self.arity {
            1 => [i, 0, 0],
            2 => [i / k, i % k, 0],
            _ => [i / (k * k), (i / k) % k, i % k],
        }
    }

    fn describe(&self) -> String {
        match &self.sampled {
            Some(v) => format!("{} seeded tuples", v.len()),
            None => "exhaustive".into(),
        }
    }
}

/// Checks the laws of `Q^X` claimed by `mode`.
pub fn check_lifting<Q: Quantale + Enumerable>(
    m: &RelMonoid,
    q: &Q,
    mode: LiftMode,
    opts: &LiftOptions,
) -> Result<LawReport> {
    let flags = q.flags();
    if flags.weak && !matches!(mode, LiftMode::Weak | LiftMode::Proto) {
        return Err(Error::invalid(format!(
            "{} is a weak quantale; use weak or proto mode",
            q.name()
        )));
    }
    if mode == LiftMode::Unital {
        if q.unit().is_none() {
            return Err(Error::Unsupported(format!("{} is not unital", q.name())));
        }
        if m.units().is_empty() {
            return Err(Error::invalid("unital mode needs a relational monoid with units"));
        }
    }
    if mode == LiftMode::Abelian && !flags.abelian {
        return Err(Error::invalid(format!("{} is not abelian", q.name())));
    }

    let r = m.rel();
    let n = m.len();
    let names = m.names();
    let (tables, space) = table_space(q, m, opts);
    let k = tables.len();
    let conv = |f: &FnTable<Q::Elem>, g: &FnTable<Q::Elem>| conv_raw(q, r, f, g);
    let show = |f: &FnTable<Q::Elem>| show_table(q, names, f);
    let differ = |a: &FnTable<Q::Elem>, b: &FnTable<Q::Elem>| first_difference(q, a, b);
    let mut report = LawReport::new(format!("{}^X over {} points ({mode:?} mode)", q.name(), n));
    let exec = opts.exec;

    if mode == LiftMode::Proto {
        report.skip("associativity", "not required of proto-quantales");
    } else {
        let t = Tuples::new(k, 3, opts.tuple_budget, opts.seed ^ 0xA550C, true);
        let w = exec.find_first(t.len(), |i| {
            let [a, b, c] = t.get(i);
            let (f, g, h) = (&tables[a], &tables[b], &tables[c]);
            let left = conv(&conv(f, g), h);
            let right = conv(f, &conv(g, h));
            differ(&left, &right).map(|x| {
                let args = if a == b && b == c {
                    format!("f=g=h={}", show(f))
                } else {
                    format!("f={}, g={}, h={}", show(f), show(g), show(h))
                };
                format!(
                    "{args}: at {}, (f∗g)∗h = {} but f∗(g∗h) = {}",
                    names[x],
                    q.show(left.get(x)),
                    q.show(right.get(x))
                )
            })
        });
        report.record("associativity", t.len() as u64, w).note = Some(format!("{space}; {}", t.describe()));
    }

    let t = Tuples::new(k, 3, opts.tuple_budget, opts.seed ^ 0xD157, false);
    let w = exec.find_first(t.len(), |i| {
        let [a, b, c] = t.get(i);
        let (f, g, h) = (&tables[a], &tables[b], &tables[c]);
        let left = conv(&join(q, f, g), h);
        let right = join(q, &conv(f, h), &conv(g, h));
        differ(&left, &right).map(|x| format!("f={}, g={}, h={}: at {}", show(f), show(g), show(h), names[x]))
    });
    report.record("right-distributive", t.len() as u64, w).note = Some(t.describe());

    let w = exec.find_first(t.len(), |i| {
        let [a, b, c] = t.get(i);
        let (f, g, h) = (&tables[a], &tables[b], &tables[c]);
        let left = conv(f, &join(q, g, h));
        let right = join(q, &conv(f, g), &conv(f, h));
        differ(&left, &right).map(|x| format!("f={}, g={}, h={}: at {}", show(f), show(g), show(h), names[x]))
    });
    report.record("left-distributive", t.len() as u64, w).note = Some(format!("{}, nonempty families", t.describe()));

    let zero = FnTable::constant(n, q.bottom());
    let w = exec.find_first(k, |a| {
        let f = &tables[a];
        differ(&conv(&zero, f), &zero).map(|x| format!("f={}: (0∗f) at {} is not 0", show(f), names[x]))
    });
    report.record("left-annihilation", k as u64, w);

    let w = exec.find_first(k, |a| {
        let f = &tables[a];
        let fz = conv(f, &zero);
        differ(&fz, &zero).map(|x| {
            format!("f={}: (f∗0) at {} is {}, not {}", show(f), names[x], q.show(fz.get(x)), q.show(q.bottom()))
        })
    });
    if mode == LiftMode::Weak {
        report.record_optional("right-annihilation", k as u64, w);
    } else {
        report.record("right-annihilation", k as u64, w);
    }

    let unit_laws = match mode {
        LiftMode::Unital => Some(true),
        LiftMode::Weak | LiftMode::Semiring if q.unit().is_some() && !m.units().is_empty() => {
            Some(mode == LiftMode::Semiring)
        }
        _ => None,
    };
    match unit_laws {
        Some(right_required) => {
            let id = delta_unit(m, q)?;
            let w = exec.find_first(k, |a| {
                let f = &tables[a];
                let l = conv(&id, f);
                differ(&l, f).map(|x| {
                    format!("f={}: (id∗f) at {} is {}, f is {}", show(f), names[x], q.show(l.get(x)), q.show(f.get(x)))
                })
            });
            report.record("left-unit", k as u64, w);
            let w = exec.find_first(k, |a| {
                let f = &tables[a];
                let rr = conv(f, &id);
                differ(&rr, f).map(|x| {
                    format!("f={}: (f∗id) at {} is {}, f is {}", show(f), names[x], q.show(rr.get(x)), q.show(f.get(x)))
                })
            });
            if right_required {
                report.record("right-unit", k as u64, w);
            } else {
                report.record_optional("right-unit", k as u64, w);
            }
        }
        None => report.skip("unit", "not claimed in this mode"),
    }

    if mode == LiftMode::Abelian {
        let rel_comm = check_rel_commutative(r);
        let t = Tuples::new(k, 2, opts.tuple_budget, opts.seed ^ 0xC0, false);
        let w = exec.find_first(t.len(), |i| {
            let [a, b, _] = t.get(i);
            let (f, g) = (&tables[a], &tables[b]);
            differ(&conv(f, g), &conv(g, f)).map(|x| format!("f={}, g={}: at {}", show(f), show(g), names[x]))
        });
        let note = match rel_comm {
            None => "relation is commutative".to_string(),
            Some((x, y, z)) => format!("relation is not commutative: R {} {} {}", names[x], names[y], names[z]),
        };
        report.record("commutative", t.len() as u64, w).note = Some(note);
    }

    if mode == LiftMode::Semiring {
        let (finite, fan) = check_locally_finite(r);
        let w = (!finite).then(|| "relation is not locally finite".to_string());
        report.record("locally-finite", n as u64, w).note = Some(format!("max fan-out {fan}"));
    }
    Ok(report)
}

/// Checks that `δ` embeds the relational monoid into `Q^X`.
pub fn check_embedding<Q: Quantale>(m: &RelMonoid, q: &Q) -> Result<LawReport> {
    let n = m.len();
    let r = m.rel();
    let deltas = (0..n).map(|x| delta(q, n, x)).collect::<Result<Vec<_>>>()?;
    let mut report = LawReport::new(format!("δ-embedding into {}^X", q.name()));

    let w = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| x < y && same(q, &deltas[x], &deltas[y]))
        .map(|(x, y)| format!("δ{} = δ{}", m.name(x), m.name(y)));
    report.record("delta-injective", (n * n) as u64, w);

    let id = delta_unit(m, q)?;
    let units: Vec<_> = m.units().iter().map(|&e| deltas[e].clone()).collect();
    let w = (!same(q, &join_all(q, n, &units), &id)).then(|| "⊔ δe over ξ differs from id".to_string());
    report.record("units-join-to-id", m.units().len() as u64, w);

    let mut w = None;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lifted = same(q, &conv_raw(q, r, &deltas[y], &deltas[z]), &deltas[x]);
                if lifted != r.contains(x, y, z) {
                    w = Some(format!(
                        "x={}, y={}, z={}: R x y z is {}, δy∗δz = δx is {lifted}",
                        m.name(x),
                        m.name(y),
                        m.name(z),
                        r.contains(x, y, z)
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.record("relation-recovered", (n * n * n) as u64, w);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::finite_quantale;
    use crate::psg::{pairs_monoid, PartialMonoid};
    use crate::relstruct::{assoc_counterexample, rel_of_psg};
    use crate::LawStatus;

    #[test]
    fn table_enumeration_is_complete() {
        let q = finite_quantale("chain3-weak").unwrap();
        let ts = all_tables(&q, 3);
        assert_eq!(ts.len(), 27);
        let mut uniq = ts.iter().map(|t| t.values().to_vec()).collect::<Vec<_>>();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), 27);
    }

    #[test]
    fn counterexample_fails_with_the_diagonal_witness() {
        let q = finite_quantale("bool").unwrap();
        let r = check_lifting(&assoc_counterexample(), &q, LiftMode::Quantale, &LiftOptions::default()).unwrap();
        let a = r.get("associativity").unwrap();
        assert_eq!(a.status, LawStatus::Fail);
        assert!(a.witness.as_deref().unwrap().starts_with("f=g=h=(a↦0, b↦1): at b"));
    }

    #[test]
    fn pairs_lifting_passes() {
        let q = finite_quantale("bool").unwrap();
        let m = rel_of_psg(&pairs_monoid(&["1", "2"])).unwrap();
        let r = check_lifting(&m, &q, LiftMode::Unital, &LiftOptions::default()).unwrap();
        assert!(r.passed(), "{r}");
        let e = check_embedding(&m, &q).unwrap();
        assert!(e.passed(), "{e}");
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let q = finite_quantale("chain4").unwrap();
        let m = rel_of_psg(&pairs_monoid(&["1", "2"])).unwrap();
        let seq = LiftOptions { exec: Exec::Sequential, ..LiftOptions::default() };
        let par = LiftOptions { exec: Exec::Parallel, ..LiftOptions::default() };
        assert_eq!(
            check_lifting(&m, &q, LiftMode::Unital, &seq).unwrap(),
            check_lifting(&m, &q, LiftMode::Unital, &par).unwrap()
        );
    }

    #[test]
    fn mode_consistency_is_enforced() {
        let weak = finite_quantale("chain3-weak").unwrap();
        let m = rel_of_psg(&pairs_monoid(&["1"])).unwrap();
        assert!(check_lifting(&m, &weak, LiftMode::Unital, &LiftOptions::default()).is_err());
        let semigroup = PartialMonoid::from_fn(vec!["a".into()], |_, _| None, vec![]).unwrap();
        let s = rel_of_psg(&semigroup).unwrap();
        let bool_q = finite_quantale("bool").unwrap();
        assert!(check_lifting(&s, &bool_q, LiftMode::Unital, &LiftOptions::default()).is_err());
    }
}
