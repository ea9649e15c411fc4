use proptest::prelude::*;

use relconv::algebra::{finite_quantale, Lattice};
use relconv::conv::{check_lifting, convolve, delta_unit, fdia, join, BinRel, FnTable, LiftMode, LiftOptions};
use relconv::interval::{segment_monoid, FinPoset, HsModality};
use relconv::itl::{parse_formula, Formula};
use relconv::quantcalc::{duration, PcSignal, RInterval};
use relconv::relstruct::{rel_of_psg, RelMonoid};
use relconv::Exec;

fn table(n: usize, k: usize) -> impl Strategy<Value = FnTable<usize>> {
    prop::collection::vec(0..k, n).prop_map(FnTable::new)
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Top),
        Just(Formula::Bot),
        Just(Formula::Unit),
        "[pq][0-9]?".prop_map(|s| Formula::atom(&s)),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::chop(a, b)),
            inner.clone().prop_map(Formula::star),
            inner.clone().prop_map(Formula::omega),
            (0..6usize, inner.clone()).prop_map(|(m, f)| Formula::hs(HsModality::ALL[m], f)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::VenD(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::VenT(Box::new(a), Box::new(b))),
        ]
    })
}

/// Signals on `[0, 10]` with integer breakpoints.
fn signal() -> impl Strategy<Value = PcSignal> {
    (prop::collection::btree_set(1..10u32, 0..6), prop::collection::vec(any::<bool>(), 10)).prop_map(|(cuts, vals)| {
        let bps: Vec<f64> =
            std::iter::once(0.0).chain(cuts.into_iter().map(f64::from)).chain(std::iter::once(10.0)).collect();
        let vals = vals[..bps.len() - 1].to_vec();
        PcSignal::new(bps, vals).unwrap()
    })
}

proptest! {
    #[test]
    fn segment_convolution_is_associative_with_delta_unit(
        f in table(10, 4), g in table(10, 4), h in table(10, 4)
    ) {
        let q = finite_quantale("chain4").unwrap();
        let m = rel_of_psg(&segment_monoid(&FinPoset::chain(3), false)).unwrap();
        let r = m.rel();
        let left = convolve(&q, r, &convolve(&q, r, &f, &g).unwrap(), &h).unwrap();
        let right = convolve(&q, r, &f, &convolve(&q, r, &g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let id = delta_unit(&m, &q).unwrap();
        prop_assert_eq!(convolve(&q, r, &id, &f).unwrap(), f.clone());
        prop_assert_eq!(convolve(&q, r, &f, &id).unwrap(), f);
    }

    #[test]
    fn diamonds_preserve_binary_joins(
        pairs in prop::collection::vec((0..4usize, 0..5usize), 0..12),
        f in table(5, 2), g in table(5, 2)
    ) {
        let q = finite_quantale("bool").unwrap();
        let r = BinRel::new(4, 5, pairs).unwrap();
        let lhs = fdia(&q, &r, &join(&q, &f, &g));
        let rhs = join(&q, &fdia(&q, &r, &f), &fdia(&q, &r, &g));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(fdia(&q, &r, &FnTable::constant(5, q.bottom())).values().iter().all(|&v| v == 0));
    }

    #[test]
    fn formulas_print_and_parse_back(f in formula()) {
        let text = f.to_string();
        prop_assert_eq!(parse_formula(&text).unwrap(), f);
    }

    #[test]
    fn duration_is_additive_and_bounded(s in signal(), a in 0..=100u32, b in 0..=100u32, k in 0..=100u32) {
        let (lo, hi) = (a.min(b) as f64 / 10.0, a.max(b) as f64 / 10.0);
        let k = lo + (hi - lo) * k as f64 / 100.0;
        let iv = |x, y| RInterval::new(x, y).unwrap();
        let whole = duration(&s, iv(lo, hi)).unwrap();
        let parts = duration(&s, iv(lo, k)).unwrap() + duration(&s, iv(k, hi)).unwrap();
        prop_assert!((whole - parts).abs() <= 1e-9);
        prop_assert!(whole >= 0.0 && whole <= hi - lo + 1e-12);
    }

    #[test]
    fn relation_json_round_trips(triples in prop::collection::vec((0..4usize, 0..4usize, 0..4usize), 0..10)) {
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let doc = relconv::relstruct::RelJson {
            carrier: names,
            triples: triples.iter().map(|&(x, y, z)| [x, y, z]).collect(),
            units: vec![],
        };
        let m = RelMonoid::from_json(&doc).unwrap();
        let back = RelMonoid::from_json(&m.to_json()).unwrap();
        prop_assert_eq!(back.rel(), m.rel());
    }
}

#[test]
fn sequential_and_parallel_sweeps_agree() {
    let q = finite_quantale("chain3-weak").unwrap();
    for n in 1..=3 {
        let m = rel_of_psg(&segment_monoid(&FinPoset::chain(n), false)).unwrap();
        let run = |exec| {
            let opts = LiftOptions { exec, tuple_budget: 5000, ..LiftOptions::default() };
            check_lifting(&m, &q, LiftMode::Weak, &opts).unwrap()
        };
        assert_eq!(run(Exec::Sequential), run(Exec::Parallel));
    }
}
