//! The convolution algebras behind the logic: finite intervals with a
//! stream, and the weak algebra of finite and infinite segments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::StreamModel;
use crate::algebra::{finite_quantale, sd_quantale, Lattice, QuantaleModule, SdQuantale};
use crate::conv::{check_lifting, conv_raw, delta_unit, join, FnTable, LiftMode, LiftOptions};
use crate::interval::{segment_monoid, FinPoset};
use crate::psg::{fin_inf_segment_action, monoid_set_product, sd_monoid_unchecked, FinInfAction, SdMonoid};
use crate::relstruct::{rel_of_psg, TernaryRel};
use crate::{LawReport, Result};

/// Runs the unital lifting suite on intervals × streams over bool, checks
/// that the unit is the point predicate, and adds the weak checks of
/// [`check_infinite_lifting`] when the model has infinite intervals.
///
/// A model carries a single stream, so the stream factor has one element.
pub fn check_itl_algebra(m: &StreamModel, opts: &LiftOptions) -> Result<LawReport> {
    let n = m.horizon();
    let q = finite_quantale("bool")?;
    let segs = segment_monoid(&FinPoset::chain(n), false);
    let carrier = rel_of_psg(&monoid_set_product(&segs, &["σ"]))?;
    let mut report = LawReport::new(format!("interval algebra, horizon {n}"));
    report.merge("finite ", check_lifting(&carrier, &q, LiftMode::Unital, opts)?);

    let id = delta_unit(&carrier, &q)?;
    let w = (0..carrier.len()).find(|&x| {
        let seg = segs.name(x);
        let point = seg.trim_matches(['[', ']']).split_once(',').is_some_and(|(i, j)| i == j);
        (id.get(x) == 1) != point
    });
    report.record("unit-is-point", carrier.len() as u64, w.map(|x| carrier.name(x).to_string()));

    if m.infinite() {
        report.merge("infinite ", check_infinite_lifting(n, opts)?);
    }
    Ok(report)
}

/// Segment functions `f = (f_fin, f_inf)` over finite segments of `0..=n`
/// acting on infinite ones, valued in bool⋉bool.
struct InfAlgebra {
    fa: FinInfAction,
    sd: SdMonoid,
    rel: TernaryRel,
    q: SdQuantale,
    /// Pairs `(s,0)` and `(0,t)` with `s`, `t` nonzero.
    pure: Vec<usize>,
}

type Table = FnTable<(usize, usize)>;

impl InfAlgebra {
    fn new(n: usize) -> Result<Self> {
        let fa = fin_inf_segment_action(n)?;
        let sd = sd_monoid_unchecked(&fa.action);
        let len = sd.monoid.len();
        let triples = (0..len * len).filter_map(|xy| {
            let (x, y) = (xy / len, xy % len);
            sd.monoid.compose(x, y).map(|z| (z, x, y))
        });
        let rel = TernaryRel::homogeneous(len, triples)?;
        let q = sd_quantale(QuantaleModule::on_itself(finite_quantale("bool")?))?;
        let mut pure: Vec<usize> = fa.finite_segments().into_iter().map(|s| sd.pair(s, fa.zero_inf())).collect();
        pure.extend(fa.infinite_segments().into_iter().map(|t| sd.pair(fa.zero_fin(), t)));
        Ok(InfAlgebra { fa, sd, rel, q, pure })
    }

    /// `f (s,t) = (f_fin s, f_inf t)` with both components zero on `0`.
    fn table(&self, fin: &[usize], inf: &[usize]) -> Table {
        let (zs, zt) = (self.fa.zero_fin(), self.fa.zero_inf());
        FnTable::new(
            (0..self.sd.monoid.len())
                .map(|p| {
                    let (s, t) = self.sd.split(p);
                    (if s == zs { 0 } else { fin[s] }, if t == zt { 0 } else { inf[t] })
                })
                .collect(),
        )
    }

    fn unit(&self) -> Table {
        let fin: Vec<usize> = (0..=self.fa.zero_fin())
            .map(|s| (s != self.fa.zero_fin() && self.fa.action.acting.is_unit(s)) as usize)
            .collect();
        self.table(&fin, &vec![0; self.fa.zero_inf() + 1])
    }

    fn conv(&self, f: &Table, g: &Table) -> Table {
        conv_raw(&self.q, &self.rel, f, g)
    }

    /// First pure pair where the tables differ.
    fn differ(&self, f: &Table, g: &Table) -> Option<String> {
        self.pure.iter().find(|&&p| f.get(p) != g.get(p)).map(|&p| {
            format!(
                "at {}: {} ≠ {}",
                self.sd.monoid.name(p),
                self.q.show(f.get(p)),
                self.q.show(g.get(p))
            )
        })
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> Table {
        let fin: Vec<usize> = (0..=self.fa.zero_fin()).map(|_| rng.gen_range(0..2)).collect();
        let inf: Vec<usize> = (0..=self.fa.zero_inf()).map(|_| rng.gen_range(0..2)).collect();
        self.table(&fin, &inf)
    }
}

/// Weak unital laws of the finite/infinite segment algebra into bool⋉bool,
/// on product-form tables and compared on the pure pairs `(s,0)`, `(0,t)`.
///
/// Right annihilation is reported but not required. Also checks that
/// finite-only tables convolve exactly as over the finite segments.
pub fn check_infinite_lifting(n: usize, opts: &LiftOptions) -> Result<LawReport> {
    let alg = InfAlgebra::new(n)?;
    let len = alg.sd.monoid.len();
    let (nf, ni) = (alg.fa.zero_fin() + 1, alg.fa.zero_inf() + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let zero = FnTable::constant(len, (0, 0));
    let id = alg.unit();
    let mut tables = vec![zero.clone(), id.clone(), alg.table(&vec![1; nf], &vec![1; ni])];
    while tables.len() < opts.samples.max(3) {
        tables.push(alg.random(&mut rng));
    }
    let k = tables.len();
    let budget = opts.tuple_budget.max(1);
    let pick = |rng: &mut ChaCha8Rng, arity: usize| -> Vec<Vec<usize>> {
        let total = k.checked_pow(arity as u32).unwrap_or(usize::MAX);
        if total <= budget {
            (0..total)
                .map(|mut c| {
                    (0..arity)
                        .map(|_| {
                            let i = c % k;
                            c /= k;
                            i
                        })
                        .collect()
                })
                .collect()
        } else {
            (0..budget).map(|_| (0..arity).map(|_| rng.gen_range(0..k)).collect()).collect()
        }
    };
    let triples = pick(&mut rng, 3);
    let pairs = pick(&mut rng, 2);
    let mut report = LawReport::new(format!("finite/infinite segment algebra over 0..={n}"));
    let q = &alg.q;
    let exec = opts.exec;

    let w = exec.find_first(triples.len(), |i| {
        let (f, g, h) = (&tables[triples[i][0]], &tables[triples[i][1]], &tables[triples[i][2]]);
        alg.differ(&alg.conv(&alg.conv(f, g), h), &alg.conv(f, &alg.conv(g, h)))
            .map(|d| format!("tables #{:?}: {d}", triples[i]))
    });
    report.record("associativity", triples.len() as u64, w);

    let w = exec.find_first(k, |i| alg.differ(&alg.conv(&id, &tables[i]), &tables[i]).map(|d| format!("table #{i}: {d}")));
    report.record("left-unit", k as u64, w);
    let w = exec.find_first(k, |i| alg.differ(&alg.conv(&tables[i], &id), &tables[i]).map(|d| format!("table #{i}: {d}")));
    report.record("right-unit", k as u64, w);

    let w = exec.find_first(triples.len(), |i| {
        let (f, g, h) = (&tables[triples[i][0]], &tables[triples[i][1]], &tables[triples[i][2]]);
        alg.differ(&alg.conv(&join(q, f, g), h), &join(q, &alg.conv(f, h), &alg.conv(g, h)))
            .map(|d| format!("tables #{:?}: {d}", triples[i]))
    });
    report.record("right-distributive", triples.len() as u64, w);
    let w = exec.find_first(triples.len(), |i| {
        let (f, g, h) = (&tables[triples[i][0]], &tables[triples[i][1]], &tables[triples[i][2]]);
        alg.differ(&alg.conv(h, &join(q, f, g)), &join(q, &alg.conv(h, f), &alg.conv(h, g)))
            .map(|d| format!("tables #{:?}: {d}", triples[i]))
    });
    report.record("left-distributive (nonempty)", triples.len() as u64, w);

    let w = exec.find_first(k, |i| alg.differ(&alg.conv(&zero, &tables[i]), &zero).map(|d| format!("table #{i}: {d}")));
    report.record("left-annihilation", k as u64, w);
    let w = exec.find_first(k, |i| alg.differ(&alg.conv(&tables[i], &zero), &zero).map(|d| format!("table #{i}: {d}")));
    report.record_optional("right-annihilation", k as u64, w);

    // finite-only tables against convolution over the finite segments alone
    let fin_rel = crate::interval::Segments::new(&FinPoset::chain(n), false).chop();
    let bool_q = finite_quantale("bool")?;
    let embed = |f: &Table| FnTable::new((0..nf - 1).map(|s| f.get(alg.sd.pair(s, alg.fa.zero_inf())).0).collect());
    let w = exec.find_first(pairs.len(), |i| {
        let strip = |t: &Table| {
            let fin: Vec<usize> = (0..nf).map(|s| if s + 1 == nf { 0 } else { t.get(alg.sd.pair(s, alg.fa.zero_inf())).0 }).collect();
            alg.table(&fin, &vec![0; ni])
        };
        let (f, g) = (strip(&tables[pairs[i][0]]), strip(&tables[pairs[i][1]]));
        let lifted = alg.conv(&f, &g);
        let finite = conv_raw(&bool_q, &fin_rel, &embed(&f), &embed(&g));
        let expect = alg.table(&[finite.values(), &[0]].concat(), &vec![0; ni]);
        alg.differ(&lifted, &expect).map(|d| format!("tables #{:?}: {d}", pairs[i]))
    });
    report.record("finite-embedding", pairs.len() as u64, w);
    Ok(report)
}

/// The failure of right annihilation on an infinite segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilationFailure {
    pub segment: String,
    /// `(f∗0)(0,t)`.
    pub product: (usize, usize),
    /// `f(0,t)`.
    pub value: (usize, usize),
}

/// `(f∗0)(0,t)` for `f` true everywhere except the infinite segments other
/// than `[0,∞]`, at `t = [0,∞]` over the chain `0..=n`.
pub fn infinite_right_annihilation(n: usize) -> Result<AnnihilationFailure> {
    let alg = InfAlgebra::new(n)?;
    let (nf, ni) = (alg.fa.zero_fin() + 1, alg.fa.zero_inf() + 1);
    let mut inf = vec![0; ni];
    inf[alg.fa.infinite(0)] = 1;
    let f = alg.table(&vec![1; nf], &inf);
    let zero = FnTable::constant(alg.sd.monoid.len(), (0, 0));
    let p = alg.sd.pair(alg.fa.zero_fin(), alg.fa.infinite(0));
    Ok(AnnihilationFailure {
        segment: alg.sd.monoid.name(p).to_string(),
        product: alg.conv(&f, &zero).get(p),
        value: f.get(p),
    })
}
