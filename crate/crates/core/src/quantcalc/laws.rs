//! Sampled law checks for the duration calculus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    duration, duration_conv3_left, duration_conv3_right, grid_points, raw_duration, split_candidates, Extremum,
    PcSignal, RInterval,
};
use crate::algebra::{check_quantale_laws, LawMode, RealKind, RealQuantale, Sampled, SubsetOptions};
use crate::{Error, LawReport, Result, DEFAULT_SEED};

const EXACT: f64 = 1e-9;
const ORACLE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DurationCheck {
    /// Random cases per law.
    pub samples: usize,
    pub seed: u64,
    /// Step of the dense-grid oracle.
    pub grid: f64,
}

impl Default for DurationCheck {
    fn default() -> Self {
        DurationCheck { samples: 100, seed: DEFAULT_SEED, grid: 1e-3 }
    }
}

/// A signal on `[lo, hi]` with `pieces` pieces whose breakpoints lie on the
/// millisecond grid; `lo` and `hi` are in milliseconds.
pub fn random_signal(rng: &mut impl Rng, lo_ms: i64, hi_ms: i64, pieces: usize) -> PcSignal {
    assert!(hi_ms - lo_ms >= pieces as i64 && pieces > 0, "domain too small for the pieces");
    let mut cuts = std::collections::BTreeSet::new();
    while cuts.len() < pieces - 1 {
        cuts.insert(rng.gen_range(lo_ms + 1..hi_ms));
    }
    let bps: Vec<f64> = std::iter::once(lo_ms)
        .chain(cuts)
        .chain(std::iter::once(hi_ms))
        .map(|m| m as f64 / 1000.0)
        .collect();
    let vals = (0..pieces).map(|_| rng.gen_bool(0.5)).collect();
    PcSignal::new(bps, vals).unwrap()
}

fn on_grid(s: &PcSignal, delta: f64) -> bool {
    s.breakpoints().iter().all(|&t| ((t - s.breakpoints()[0]) / delta - ((t - s.breakpoints()[0]) / delta).round()).abs() < 1e-6)
}

/// `((∫b∗∫c)∗∫d) x` by a running min (or max) over the Δ-grid.
fn grid_conv3(b: &PcSignal, c: &PcSignal, d: &PcSignal, x: RInterval, mode: Extremum, delta: f64) -> Result<f64> {
    let ks = grid_points(x, delta)?;
    // (∫b∗∫c)[lo,k] = ∫c[lo,k] + best over j ≤ k of (∫b[lo,j] − ∫c[lo,j])
    let mut best_j = mode.start();
    let mut best = mode.start();
    for &k in &ks {
        best_j = mode.pick(best_j, raw_duration(b, x.lo, k) - raw_duration(c, x.lo, k));
        let inner = best_j + raw_duration(c, x.lo, k);
        best = mode.pick(best, inner + raw_duration(d, k, x.hi));
    }
    Ok(best)
}

/// Checks the duration algebra on the given signals (which must share one
/// domain) with seeded random intervals and splits.
///
/// The grid cross-check is exact only for breakpoints on the grid; for
/// other signals its tolerance widens to `3Δ`.
pub fn check_duration_quantale(signals: &[PcSignal], opts: &DurationCheck) -> Result<LawReport> {
    let Some(first) = signals.first() else {
        return Err(Error::invalid("at least one signal is required"));
    };
    let dom = first.domain();
    if signals.iter().any(|s| s.domain() != dom) {
        return Err(Error::invalid("signals must share one domain"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = LawReport::new(format!("duration algebra on {} signals over {dom}", signals.len()));

    let mp = RealQuantale::new(RealKind::MinPlus);
    let sample = Sampled::new(&mp, vec![0.0, 0.25, 1.0, 2.5, 7.125, f64::INFINITY]);
    report.merge("min-plus ", check_quantale_laws(&sample, LawMode::Full, &SubsetOptions::default())?);

    let rand_iv = |rng: &mut ChaCha8Rng| {
        let a = rng.gen_range(dom.lo..=dom.hi);
        let b = rng.gen_range(dom.lo..=dom.hi);
        RInterval { lo: a.min(b), hi: a.max(b) }
    };
    let pick = |rng: &mut ChaCha8Rng| &signals[rng.gen_range(0..signals.len())];

    let mut w = None;
    for _ in 0..opts.samples {
        let (s, x) = (pick(&mut rng), rand_iv(&mut rng));
        let k = rng.gen_range(x.lo..=x.hi);
        let whole = duration(s, x)?;
        let parts = raw_duration(s, x.lo, k) + raw_duration(s, k, x.hi);
        if (whole - parts).abs() > EXACT && w.is_none() {
            w = Some(format!("{x} split at {k}: {whole} ≠ {parts}"));
        }
    }
    report.record("additivity", opts.samples as u64, w);

    let w = signals
        .iter()
        .flat_map(|s| s.breakpoints().iter().map(move |&t| (s, t)))
        .find(|&(s, t)| raw_duration(s, t, t) != 0.0)
        .map(|(_, t)| format!("∫ over [{t}, {t}] is nonzero"));
    report.record("point-duration", signals.iter().map(|s| s.breakpoints().len() as u64).sum(), w);

    // convolving with the point delta (0 on points, +∞ elsewhere) keeps ∫b
    let mut w = None;
    for _ in 0..opts.samples {
        let (s, x) = (pick(&mut rng), rand_iv(&mut rng));
        let right = split_candidates(&[s], x)
            .into_iter()
            .map(|k| raw_duration(s, x.lo, k) + if k == x.hi { 0.0 } else { f64::INFINITY })
            .fold(f64::INFINITY, f64::min);
        let left = split_candidates(&[s], x)
            .into_iter()
            .map(|k| if k == x.lo { 0.0 } else { f64::INFINITY } + raw_duration(s, k, x.hi))
            .fold(f64::INFINITY, f64::min);
        let d = raw_duration(s, x.lo, x.hi);
        if (right - d).abs() > EXACT || (left - d).abs() > EXACT {
            w = Some(format!("{x}: δ-convolutions {left}, {right} vs ∫ = {d}"));
            break;
        }
    }
    report.record("point-unit", opts.samples as u64, w);

    let cases = opts.samples.clamp(1, 20);
    for mode in [Extremum::Min, Extremum::Max] {
        let mut assoc = None;
        let mut grid = None;
        for _ in 0..cases {
            let (b, c, d) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let x = rand_iv(&mut rng);
            let l = duration_conv3_left(b, c, d, x, mode)?;
            let r = duration_conv3_right(b, c, d, x, mode)?;
            if assoc.is_none() && (l - r).abs() > EXACT {
                assoc = Some(format!("{x}: {l} ≠ {r}"));
            }
            let tol = if [b, c, d].iter().all(|s| on_grid(s, opts.grid)) { ORACLE } else { 3.0 * opts.grid };
            // grid points start at x.lo, so snap the interval to the grid
            let snap = |t: f64| dom.lo + ((t - dom.lo) / opts.grid).round() * opts.grid;
            let xs = RInterval { lo: snap(x.lo).max(dom.lo), hi: snap(x.hi).min(dom.hi).max(snap(x.lo).max(dom.lo)) };
            let exact = duration_conv3_left(b, c, d, xs, mode)?;
            let g = grid_conv3(b, c, d, xs, mode, opts.grid)?;
            if grid.is_none() && (exact - g).abs() > tol {
                grid = Some(format!("{xs}: candidates {exact}, grid {g}"));
            }
        }
        let tag = if mode == Extremum::Min { "min" } else { "max" };
        report.record(&format!("{tag}-conv-associativity"), cases as u64, assoc);
        report.record(&format!("{tag}-conv-grid-agreement"), cases as u64, grid);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_signals_are_on_the_millisecond_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let s = random_signal(&mut rng, 0, 3000, 5);
            assert_eq!(s.values().len(), 5);
            assert!(on_grid(&s, 1e-3));
        }
    }

    #[test]
    fn the_duration_algebra_on_random_signals() {
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        let signals: Vec<_> = (0..6).map(|_| random_signal(&mut rng, 0, 2000, 4)).collect();
        let r = check_duration_quantale(&signals, &DurationCheck { samples: 40, ..Default::default() }).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn mismatched_domains_are_rejected() {
        let a = PcSignal::constant(0.0, 1.0, true).unwrap();
        let b = PcSignal::constant(0.0, 2.0, true).unwrap();
        assert!(check_duration_quantale(&[a, b], &DurationCheck::default()).is_err());
        assert!(check_duration_quantale(&[], &DurationCheck::default()).is_err());
    }
}
