//! Partial actions and semidirect products of partial monoids.

use super::{adjoin_annihilator, check_psg_laws, PartialMonoid};
use crate::{Error, LawReport, Result};

/// A left action `∘ : S × T → T` of one partial monoid on another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAction {
    pub acting: PartialMonoid,
    pub acted: PartialMonoid,
    table: Vec<Option<usize>>,
}

impl PartialAction {
    pub fn new(
        acting: PartialMonoid,
        acted: PartialMonoid,
        act: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let (ns, nt) = (acting.len(), acted.len());
        let table: Vec<_> = (0..ns * nt).map(|p| act(p / nt, p % nt)).collect();
        if table.iter().flatten().any(|&t| t >= nt) {
            return Err(Error::invalid("action result out of range"));
        }
        Ok(PartialAction {
            acting,
            acted,
            table,
        })
    }

    pub fn act(&self, s: usize, t: usize) -> Option<usize> {
        self.table[s * self.acted.len() + t]
    }
}

/// Checks the action axioms exhaustively.
///
/// Compatibility with `⊙` is required for composable `s1, s2`: then
/// `(s1⊙s2)∘t` and `s1∘(s2∘t)` are defined together and agree. The
/// converse implication, that `s1∘(s2∘t)` forces `s1⊙s2` to exist, is
/// reported but not required. The left-unit axiom is read for generalised units: every `t` is fixed
/// by some unit of `S`, and a unit that acts on `t` fixes it.
pub fn check_action_laws(a: &PartialAction) -> LawReport {
    let (s, t) = (&a.acting, &a.acted);
    let (ns, nt) = (s.len(), t.len());
    let mut r = LawReport::new(format!("action of {ns} on {nt} elements"));
    let show = |v: Option<usize>| v.map_or("undefined".to_string(), |c| t.name(c).to_string());

    let mut w = None;
    let mut converse = None;
    'a: for s1 in 0..ns {
        for s2 in 0..ns {
            for x in 0..nt {
                let rhs = a.act(s2, x).and_then(|y| a.act(s1, y));
                let Some(p) = s.compose(s1, s2) else {
                    if converse.is_none() && rhs.is_some() {
                        converse = Some(format!(
                            "s1={}, s2={}, t={}: s1∘(s2∘t) defined but s1⊙s2 is not",
                            s.name(s1),
                            s.name(s2),
                            t.name(x)
                        ));
                    }
                    continue;
                };
                let lhs = a.act(p, x);
                if lhs != rhs {
                    w = Some(format!(
                        "s1={}, s2={}, t={}: (s1⊙s2)∘t is {}, s1∘(s2∘t) is {}",
                        s.name(s1),
                        s.name(s2),
                        t.name(x),
                        show(lhs),
                        show(rhs)
                    ));
                    break 'a;
                }
            }
        }
    }
    r.record("action-compose", (ns * ns * nt) as u64, w);
    r.record_optional("action-compose-converse", (ns * ns * nt) as u64, converse)
        .note = Some("contradicts right annihilation whenever S is genuinely partial".into());

    let mut w = None;
    'b: for s1 in 0..ns {
        for t1 in 0..nt {
            for t2 in 0..nt {
                let lhs = t.compose(t1, t2).and_then(|j| a.act(s1, j));
                let rhs = match (a.act(s1, t1), a.act(s1, t2)) {
                    (Some(u), Some(v)) => t.compose(u, v),
                    _ => None,
                };
                if lhs != rhs {
                    w = Some(format!(
                        "s={}, t1={}, t2={}: s∘(t1⊕t2) is {}, (s∘t1)⊕(s∘t2) is {}",
                        s.name(s1),
                        t.name(t1),
                        t.name(t2),
                        show(lhs),
                        show(rhs)
                    ));
                    break 'b;
                }
            }
        }
    }
    r.record("action-join", (ns * nt * nt) as u64, w);

    if s.units().is_empty() {
        r.skip("action-left-unit", "acting structure has no units");
    } else {
        let w = (0..nt)
            .find(|&x| {
                !s.units().iter().any(|&e| a.act(e, x) == Some(x))
                    || s.units().iter().any(|&e| a.act(e, x).is_some_and(|y| y != x))
            })
            .map(|x| format!("t={}", t.name(x)));
        r.record("action-left-unit", (nt * s.units().len()) as u64, w);
    }
    if t.units().is_empty() {
        r.skip("action-right-annihilation", "acted structure has no units");
    } else {
        let w = (0..ns)
            .flat_map(|x| t.units().iter().map(move |&e| (x, e)))
            .find(|&(x, e)| a.act(x, e) != Some(e))
            .map(|(x, e)| format!("s={}, e={}", s.name(x), t.name(e)));
        r.record("action-right-annihilation", (ns * t.units().len()) as u64, w);
    }
    r
}

/// A semidirect product; pair `(s, t)` sits at `s * t_len + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdMonoid {
    pub monoid: PartialMonoid,
    t_len: usize,
}

impl SdMonoid {
    pub fn pair(&self, s: usize, t: usize) -> usize {
        s * self.t_len + t
    }

    pub fn split(&self, p: usize) -> (usize, usize) {
        (p / self.t_len, p % self.t_len)
    }

    /// `(s1,t1)⋉(s2,t2)` on component indices.
    pub fn compose_pairs(&self, a: (usize, usize), b: (usize, usize)) -> Option<(usize, usize)> {
        self.monoid
            .compose(self.pair(a.0, a.1), self.pair(b.0, b.1))
            .map(|p| self.split(p))
    }
}

/// Builds `S⋉T` after checking the action axioms and the laws of both sides.
pub fn sd_monoid(a: &PartialAction) -> Result<SdMonoid> {
    let mut report = check_action_laws(a);
    report.merge("acting ", check_psg_laws(&a.acting));
    report.merge("acted ", check_psg_laws(&a.acted));
    if let Some(f) = report.failures().next() {
        return Err(Error::violation(f.law.clone(), f.witness.clone().unwrap_or_default()));
    }
    Ok(sd_monoid_unchecked(a))
}

/// Builds `S⋉T` without validation.
pub fn sd_monoid_unchecked(a: &PartialAction) -> SdMonoid {
    let (s, t) = (&a.acting, &a.acted);
    let nt = t.len();
    let names = (0..s.len() * nt)
        .map(|p| format!("({},{})", s.name(p / nt), t.name(p % nt)))
        .collect();
    let units = s
        .units()
        .iter()
        .flat_map(|&u| t.units().iter().map(move |&e| u * nt + e))
        .collect();
    let monoid = PartialMonoid::from_fn(
        names,
        |x, y| {
            let (s1, t1) = (x / nt, x % nt);
            let (s2, t2) = (y / nt, y % nt);
            let s12 = s.compose(s1, s2)?;
            let acted = a.act(s1, t2)?;
            Some(s12 * nt + t.compose(t1, acted)?)
        },
        units,
    )
    .expect("pair indices stay in range");
    SdMonoid { monoid, t_len: nt }
}

/// Finite segments of the chain `0..=n` (with an adjoined annihilator `0`)
/// acting on infinite segments `[i,∞]` (with unit `0`) by fusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinInfAction {
    pub action: PartialAction,
    pub n: usize,
}

impl FinInfAction {
    /// Index of the finite segment `[i,j]` in `S`.
    pub fn finite(&self, i: usize, j: usize) -> usize {
        self.action.acting.index_of(&format!("[{i},{j}]")).expect("segment within the chain")
    }

    /// Index of the empty finite segment `0` in `S`.
    pub fn zero_fin(&self) -> usize {
        self.action.acting.len() - 1
    }

    /// Index of `[i,∞]` in `T`.
    pub fn infinite(&self, i: usize) -> usize {
        i
    }

    /// Index of the empty infinite segment `0` in `T`.
    pub fn zero_inf(&self) -> usize {
        self.n + 1
    }

    /// Indices of the nonzero finite segments.
    pub fn finite_segments(&self) -> Vec<usize> {
        (0..self.zero_fin()).collect()
    }

    /// Indices of the nonzero infinite segments.
    pub fn infinite_segments(&self) -> Vec<usize> {
        (0..=self.n).collect()
    }

    /// Endpoints of a nonzero finite segment.
    pub fn bounds(&self, s: usize) -> (usize, usize) {
        segments(self.n)[s]
    }
}

fn segments(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect()
}

pub fn fin_inf_segment_action(n: usize) -> Result<FinInfAction> {
    if n == 0 {
        return Err(Error::invalid("chain length must be at least 1"));
    }
    let segs = segments(n);
    let fin = PartialMonoid::from_fn(
        segs.iter().map(|(i, j)| format!("[{i},{j}]")).collect(),
        |x, y| {
            let ((i, j), (k, l)) = (segs[x], segs[y]);
            (j == k).then(|| segs.iter().position(|&p| p == (i, l)).unwrap())
        },
        segs.iter().enumerate().filter(|(_, p)| p.0 == p.1).map(|(x, _)| x).collect(),
    )?;
    let fin = adjoin_annihilator(&fin);
    let zero_s = fin.len() - 1;
    let zero_t = n + 1;
    let mut inf_names: Vec<String> = (0..=n).map(|i| format!("[{i},∞]")).collect();
    inf_names.push("0".into());
    let inf = PartialMonoid::from_fn(
        inf_names,
        |x, y| {
            if x == zero_t {
                Some(y)
            } else if y == zero_t || x == y {
                Some(x)
            } else {
                None
            }
        },
        vec![zero_t],
    )?;
    let action = PartialAction::new(fin, inf, |s, t| {
        if s == zero_s || t == zero_t {
            Some(zero_t)
        } else {
            let (i, j) = segs[s];
            (j == t).then_some(i)
        }
    })?;
    Ok(FinInfAction { action, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psg::{free_monoid, one_point};
    use crate::LawStatus;

    #[test]
    fn fusion_with_infinite_segments() {
        let f = fin_inf_segment_action(4).unwrap();
        let a = &f.action;
        assert_eq!(a.act(f.finite(1, 3), f.infinite(3)), Some(f.infinite(1)));
        assert_eq!(a.act(f.finite(1, 3), f.infinite(4)), None);
        assert_eq!(a.act(f.finite(2, 2), f.infinite(2)), Some(f.infinite(2)));
        assert_eq!(a.act(f.zero_fin(), f.infinite(2)), Some(f.zero_inf()));
    }

    #[test]
    fn the_adjoined_annihilator_violates_the_action_axioms() {
        let f = fin_inf_segment_action(3).unwrap();
        let r = check_action_laws(&f.action);
        assert!(!r.passed());
        assert!(sd_monoid(&f.action).is_err());
    }

    #[test]
    fn without_the_annihilator_the_action_is_lawful() {
        let f = fin_inf_segment_action(3).unwrap();
        let z = f.zero_fin();
        let acting = f.action.acting.restrict(|s| s != z).unwrap();
        let a = PartialAction::new(acting, f.action.acted.clone(), |s, t| f.action.act(s, t)).unwrap();
        let r = check_action_laws(&a);
        assert!(r.passed(), "{r}");
        let sd = sd_monoid(&a).unwrap();
        let laws = check_psg_laws(&sd.monoid);
        assert_eq!(laws.get("associativity").unwrap().status, LawStatus::Pass);
        assert_eq!(laws.get("right-unit-exists").unwrap().status, LawStatus::Pass);
        // a finite part ending at i paired with an infinite part starting elsewhere
        // has no left unit: the only unit fixing s cannot act on t
        let x = sd.pair(f.finite(0, 0), f.infinite(1));
        assert_eq!(laws.get("left-unit-exists").unwrap().witness.as_deref(), Some(&*format!("x={}", sd.monoid.name(x))));
    }

    #[test]
    fn trivial_action_gives_the_product() {
        let m = free_monoid(&["a"], 2);
        let a = PartialAction::new(m.clone(), one_point(), |_, _| Some(0)).unwrap();
        let sd = sd_monoid(&a).unwrap();
        assert_eq!(sd.monoid.len(), m.len());
        assert_eq!(check_psg_laws(&sd.monoid).get("associativity").unwrap().status, LawStatus::Pass);
    }
}
