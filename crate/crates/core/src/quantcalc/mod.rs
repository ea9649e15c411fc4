//! Duration and mean-value calculi over piecewise-constant boolean signals.
//!
//! Durations are piecewise linear in a split point with kinks only at signal
//! breakpoints, so their min-plus and max-plus convolutions are extremised
//! exactly over the candidate set `{lo, hi} ∪ breakpoints`. Mean values are
//! ratios of integrals and are searched on a grid instead.

mod laws;

pub use laws::{check_duration_quantale, random_signal, DurationCheck};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A boolean signal, constant on each half-open piece `[t_k, t_{k+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct PcSignal {
    breakpoints: Vec<f64>,
    values: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalJson {
    pub breakpoints: Vec<f64>,
    pub values: Vec<bool>,
}

impl PcSignal {
    pub fn new(breakpoints: Vec<f64>, values: Vec<bool>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::invalid("a signal needs at least two breakpoints"));
        }
        if values.len() + 1 != breakpoints.len() {
            return Err(Error::invalid(format!(
                "{} breakpoints need {} piece values, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                values.len()
            )));
        }
        if breakpoints.iter().any(|t| !t.is_finite()) {
            return Err(Error::invalid("breakpoints must be finite"));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!("breakpoints not strictly increasing at {} ≥ {}", w[0], w[1])));
        }
        Ok(PcSignal { breakpoints, values })
    }

    /// The signal with value `v` on all of `[lo, hi]`.
    pub fn constant(lo: f64, hi: f64, v: bool) -> Result<Self> {
        Self::new(vec![lo, hi], vec![v])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn domain(&self) -> RInterval {
        RInterval { lo: self.breakpoints[0], hi: *self.breakpoints.last().unwrap() }
    }

    /// The value of the piece containing `t`; the last piece at the right edge.
    pub fn value_at(&self, t: f64) -> Result<bool> {
        self.check(RInterval { lo: t, hi: t })?;
        let k = self.breakpoints.partition_point(|&b| b <= t);
        Ok(self.values[k.saturating_sub(1).min(self.values.len() - 1)])
    }

    fn check(&self, x: RInterval) -> Result<()> {
        let d = self.domain();
        if x.lo < d.lo || x.hi > d.hi {
            return Err(Error::invalid(format!("interval {x} outside the signal domain {d}")));
        }
        Ok(())
    }

    pub fn from_json(doc: &SignalJson) -> Result<Self> {
        Self::new(doc.breakpoints.clone(), doc.values.clone())
    }

    pub fn to_json(&self) -> SignalJson {
        SignalJson { breakpoints: self.breakpoints.clone(), values: self.values.clone() }
    }
}

/// A closed real interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RInterval {
    pub lo: f64,
    pub hi: f64,
}

impl RInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::invalid(format!("[{lo}, {hi}] is not an interval")));
        }
        Ok(RInterval { lo, hi })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for RInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Which extremum a convolution takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
}

impl Extremum {
    fn pick(self, a: f64, b: f64) -> f64 {
        match self {
            Extremum::Min => a.min(b),
            Extremum::Max => a.max(b),
        }
    }

    fn start(self) -> f64 {
        match self {
            Extremum::Min => f64::INFINITY,
            Extremum::Max => f64::NEG_INFINITY,
        }
    }
}

impl fmt::Display for Extremum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extremum::Min => "min",
            Extremum::Max => "max",
        })
    }
}

impl FromStr for Extremum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min" => Ok(Extremum::Min),
            "max" => Ok(Extremum::Max),
            _ => Err(Error::invalid(format!("unknown mode `{s}` (expected min or max)"))),
        }
    }
}

/// `∫b x`: the total length of the true pieces inside `x`.
pub fn duration(b: &PcSignal, x: RInterval) -> Result<f64> {
    b.check(x)?;
    Ok(raw_duration(b, x.lo, x.hi))
}

fn raw_duration(b: &PcSignal, lo: f64, hi: f64) -> f64 {
    b.breakpoints
        .windows(2)
        .zip(&b.values)
        .filter(|(_, &v)| v)
        .map(|(w, _)| (w[1].min(hi) - w[0].max(lo)).max(0.0))
        .sum()
}

/// `{lo, hi}` with every breakpoint of the signals strictly inside, sorted.
pub fn split_candidates(signals: &[&PcSignal], x: RInterval) -> Vec<f64> {
    let mut ks = vec![x.lo, x.hi];
    for s in signals {
        ks.extend(s.breakpoints.iter().copied().filter(|&t| t > x.lo && t < x.hi));
    }
    ks.sort_by(f64::total_cmp);
    ks.dedup();
    ks
}

/// The Δ-grid `lo, lo+Δ, …` together with `hi`.
pub fn grid_points(x: RInterval, delta: f64) -> Result<Vec<f64>> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::invalid(format!("grid step must be positive, got {delta}")));
    }
    let steps = (x.len() / delta).floor() as usize;
    let mut ks: Vec<f64> = (0..=steps).map(|i| x.lo + i as f64 * delta).filter(|&k| k <= x.hi).collect();
    if ks.last() != Some(&x.hi) {
        ks.push(x.hi);
    }
    Ok(ks)
}

fn both(b: &PcSignal, c: &PcSignal, x: RInterval) -> Result<()> {
    b.check(x)?;
    c.check(x)
}

/// `(∫b ∗ ∫c) x` with the split point `k` attaining it.
pub fn duration_conv(b: &PcSignal, c: &PcSignal, x: RInterval, mode: Extremum) -> Result<(f64, f64)> {
    both(b, c, x)?;
    Ok(extremise(split_candidates(&[b, c], x), mode, |k| {
        raw_duration(b, x.lo, k) + raw_duration(c, k, x.hi)
    }))
}

fn extremise(ks: Vec<f64>, mode: Extremum, f: impl Fn(f64) -> f64) -> (f64, f64) {
    ks.into_iter().fold((mode.start(), f64::NAN), |(best, at), k| {
        let v = f(k);
        if mode.pick(v, best) == v && v != best { (v, k) } else { (best, at) }
    })
}

/// Min-plus convolution `min_k ∫b[lo,k] + ∫c[k,hi]`.
pub fn duration_conv_min(b: &PcSignal, c: &PcSignal, x: RInterval) -> Result<f64> {
    duration_conv(b, c, x, Extremum::Min).map(|r| r.0)
}

/// Max-plus convolution `max_k ∫b[lo,k] + ∫c[k,hi]`.
pub fn duration_conv_max(b: &PcSignal, c: &PcSignal, x: RInterval) -> Result<f64> {
    duration_conv(b, c, x, Extremum::Max).map(|r| r.0)
}

/// `((∫b ∗ ∫c) ∗ ∫d) x`, nesting the split search to the left.
///
/// The joint objective over `j ≤ k` is linear on the cells cut out by the
/// breakpoints and the diagonal, so candidate pairs suffice.
pub fn duration_conv3_left(b: &PcSignal, c: &PcSignal, d: &PcSignal, x: RInterval, mode: Extremum) -> Result<f64> {
    both(b, c, x)?;
    d.check(x)?;
    let ks = split_candidates(&[b, c, d], x);
    let inner = |k: f64| {
        extremise(ks.iter().copied().filter(|&j| j <= k).collect(), mode, |j| {
            raw_duration(b, x.lo, j) + raw_duration(c, j, k)
        })
        .0
    };
    Ok(extremise(ks.clone(), mode, |k| inner(k) + raw_duration(d, k, x.hi)).0)
}

/// `(∫b ∗ (∫c ∗ ∫d)) x`, nesting the split search to the right.
pub fn duration_conv3_right(b: &PcSignal, c: &PcSignal, d: &PcSignal, x: RInterval, mode: Extremum) -> Result<f64> {
    both(b, c, x)?;
    d.check(x)?;
    let ks = split_candidates(&[b, c, d], x);
    let inner = |j: f64| {
        extremise(ks.iter().copied().filter(|&k| k >= j).collect(), mode, |k| {
            raw_duration(c, j, k) + raw_duration(d, k, x.hi)
        })
        .0
    };
    Ok(extremise(ks.clone(), mode, |j| raw_duration(b, x.lo, j) + inner(j)).0)
}

/// Split-point search over the Δ-grid only.
pub fn duration_conv_grid(b: &PcSignal, c: &PcSignal, x: RInterval, mode: Extremum, delta: f64) -> Result<f64> {
    both(b, c, x)?;
    Ok(extremise(grid_points(x, delta)?, mode, |k| raw_duration(b, x.lo, k) + raw_duration(c, k, x.hi)).0)
}

/// The objective `k ↦ ∫b[lo,k] + ∫c[k,hi]` at the candidates and on the grid.
pub fn split_profile(b: &PcSignal, c: &PcSignal, x: RInterval, delta: f64) -> Result<Vec<(f64, f64)>> {
    both(b, c, x)?;
    let mut ks = grid_points(x, delta)?;
    ks.extend(split_candidates(&[b, c], x));
    ks.sort_by(f64::total_cmp);
    ks.dedup();
    Ok(ks.into_iter().map(|k| (k, raw_duration(b, x.lo, k) + raw_duration(c, k, x.hi))).collect())
}

/// Renders a profile as `k,value` CSV with a header line.
pub fn profile_csv(profile: &[(f64, f64)]) -> String {
    let mut out = String::from("k,value\n");
    for (k, v) in profile {
        out.push_str(&format!("{k},{v}\n"));
    }
    out
}

/// `θ b x`: duration over length, or the signal value on a point.
pub fn mean_value(b: &PcSignal, x: RInterval) -> Result<f64> {
    b.check(x)?;
    if x.is_point() {
        return Ok(if b.value_at(x.lo)? { 1.0 } else { 0.0 });
    }
    Ok((raw_duration(b, x.lo, x.hi) / x.len()).clamp(0.0, 1.0))
}

/// `(θb ∗ θc) x` in the unit-interval quantale: the extremum of
/// `θb[lo,k] · θc[k,hi]` over breakpoints, endpoints and the Δ-grid.
/// This is a grid approximation.
pub fn mean_conv(b: &PcSignal, c: &PcSignal, x: RInterval, mode: Extremum, delta: f64) -> Result<f64> {
    both(b, c, x)?;
    let mut ks = grid_points(x, delta)?;
    ks.extend(split_candidates(&[b, c], x));
    let theta = |s: &PcSignal, lo: f64, hi: f64| {
        if lo == hi {
            (s.value_at(lo).unwrap() as u8) as f64
        } else {
            (raw_duration(s, lo, hi) / (hi - lo)).clamp(0.0, 1.0)
        }
    };
    Ok(extremise(ks, mode, |k| theta(b, x.lo, k) * theta(c, k, x.hi)).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(bps: &[f64], vs: &[bool]) -> PcSignal {
        PcSignal::new(bps.to_vec(), vs.to_vec()).unwrap()
    }

    fn iv(lo: f64, hi: f64) -> RInterval {
        RInterval::new(lo, hi).unwrap()
    }

    #[test]
    fn durations() {
        let b = sig(&[0.0, 1.0, 2.0], &[true, false]);
        assert_eq!(duration(&b, iv(0.0, 2.0)).unwrap(), 1.0);
        assert_eq!(duration(&b, iv(1.0, 1.0)).unwrap(), 0.0);
        let t = PcSignal::constant(0.0, 3.0, true).unwrap();
        assert_eq!(duration(&t, iv(0.5, 2.5)).unwrap(), 2.0);
        assert!(duration(&b, iv(-1.0, 1.0)).is_err());
    }

    #[test]
    fn validation() {
        assert!(PcSignal::new(vec![0.0], vec![]).is_err());
        assert!(PcSignal::new(vec![0.0, 1.0], vec![true, false]).is_err());
        assert!(PcSignal::new(vec![0.0, 0.0], vec![true]).is_err());
        assert!(RInterval::new(2.0, 1.0).is_err());
        let b = sig(&[0.0, 1.0, 2.0], &[true, false]);
        assert_eq!(PcSignal::from_json(&b.to_json()).unwrap(), b);
    }

    #[test]
    fn convolutions_of_simple_signals() {
        let t = PcSignal::constant(0.0, 2.0, true).unwrap();
        assert_eq!(duration_conv_min(&t, &t, iv(0.0, 2.0)).unwrap(), 2.0);
        let b = sig(&[0.0, 1.0, 2.0], &[true, false]);
        let c = sig(&[0.0, 1.0, 2.0], &[false, true]);
        // k ↦ min(k,1) + (2 - max(k,1)) is 2 - |k - 1|
        assert_eq!(duration_conv(&b, &c, iv(0.0, 2.0), Extremum::Min).unwrap(), (1.0, 0.0));
        assert_eq!(duration_conv(&b, &c, iv(0.0, 2.0), Extremum::Max).unwrap(), (2.0, 1.0));
        assert_eq!(duration_conv_min(&c, &b, iv(0.0, 2.0)).unwrap(), 0.0);
    }

    #[test]
    fn means() {
        let b = sig(&[0.0, 1.0, 2.0], &[true, false]);
        assert_eq!(mean_value(&b, iv(0.0, 2.0)).unwrap(), 0.5);
        assert_eq!(mean_value(&b, iv(1.0, 1.0)).unwrap(), 0.0);
        assert_eq!(mean_value(&b, iv(0.0, 0.0)).unwrap(), 1.0);
        // right edge takes the last piece
        assert_eq!(mean_value(&b, iv(2.0, 2.0)).unwrap(), 0.0);
        let t = PcSignal::constant(0.0, 2.0, true).unwrap();
        let f = PcSignal::constant(0.0, 2.0, false).unwrap();
        assert_eq!(mean_value(&t, iv(0.3, 1.7)).unwrap(), 1.0);
        assert_eq!(mean_conv(&t, &t, iv(0.0, 2.0), Extremum::Min, 1e-2).unwrap(), 1.0);
        assert_eq!(mean_conv(&f, &t, iv(0.0, 2.0), Extremum::Max, 1e-2).unwrap(), 0.0);
        assert!(mean_conv(&t, &t, iv(0.0, 2.0), Extremum::Min, 0.0).is_err());
    }

    #[test]
    fn profile_contains_the_extremum() {
        let b = sig(&[0.0, 0.37, 2.0], &[true, false]);
        let c = sig(&[0.0, 1.0, 2.0], &[false, true]);
        let x = iv(0.0, 2.0);
        let p = split_profile(&b, &c, x, 0.25).unwrap();
        let best = p.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
        assert_eq!(best, duration_conv_min(&b, &c, x).unwrap());
        assert!(profile_csv(&p).starts_with("k,value\n0,"));
    }
}
