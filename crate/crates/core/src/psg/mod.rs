//! Partial semigroups and partial monoids.
//!
//! Composition is a table of `Option<usize>`: `None` marks an undefined
//! product, so definedness and composition can never disagree.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::{Error, LawReport, Result};

mod action;

pub use action::{
    check_action_laws, fin_inf_segment_action, sd_monoid, sd_monoid_unchecked, FinInfAction,
    PartialAction, SdMonoid,
};

/// A finite partial monoid; a partial semigroup when `units` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMonoid {
    names: Vec<String>,
    table: Vec<Option<usize>>,
    units: Vec<usize>,
}

impl PartialMonoid {
    pub fn new(names: Vec<String>, table: Vec<Option<usize>>, mut units: Vec<usize>) -> Result<Self> {
        let n = names.len();
        if table.len() != n * n {
            return Err(Error::invalid(format!(
                "composition table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some(c) = table.iter().flatten().find(|&&c| c >= n) {
            return Err(Error::invalid(format!("composition result {c} out of range")));
        }
        if let Some(u) = units.iter().find(|&&u| u >= n) {
            return Err(Error::invalid(format!("unit {u} out of range")));
        }
        units.sort_unstable();
        units.dedup();
        Ok(PartialMonoid { names, table, units })
    }

    /// Tabulates `compose` over the carrier.
    pub fn from_fn(
        names: Vec<String>,
        compose: impl Fn(usize, usize) -> Option<usize>,
        units: Vec<usize>,
    ) -> Result<Self> {
        let n = names.len();
        let table = (0..n * n).map(|ij| compose(ij / n, ij % n)).collect();
        Self::new(names, table, units)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn compose(&self, x: usize, y: usize) -> Option<usize> {
        self.table[x * self.len() + y]
    }

    pub fn defined(&self, x: usize, y: usize) -> bool {
        self.compose(x, y).is_some()
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.units.binary_search(&x).is_ok()
    }

    /// Composes by element names; `None` when undefined or unknown.
    pub fn compose_named(&self, x: &str, y: &str) -> Option<&str> {
        let c = self.compose(self.index_of(x)?, self.index_of(y)?)?;
        Some(self.name(c))
    }

    /// Restricts to the elements satisfying `keep`.
    ///
    /// Fails when a product of kept elements leaves the kept set.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Result<Self> {
        let kept: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        let mut index = vec![None; self.len()];
        for (new, &old) in kept.iter().enumerate() {
            index[old] = Some(new);
        }
        let mut table = Vec::with_capacity(kept.len() * kept.len());
        for &x in &kept {
            for &y in &kept {
                table.push(match self.compose(x, y) {
                    None => None,
                    Some(c) => Some(index[c].ok_or_else(|| {
                        Error::violation(
                            "submonoid closure",
                            format!("{}·{} = {}", self.name(x), self.name(y), self.name(c)),
                        )
                    })?),
                });
            }
        }
        let units = self.units.iter().filter_map(|&u| index[u]).collect();
        let names = kept.iter().map(|&i| self.names[i].clone()).collect();
        Self::new(names, table, units)
    }

    pub fn from_json(doc: &PsgJson) -> Result<Self> {
        let n = doc.carrier.len();
        let mut table = vec![None; n * n];
        for t in &doc.compose {
            let [a, b, c] = *t;
            if a >= n || b >= n || c >= n {
                return Err(Error::invalid(format!("composition entry {t:?} out of range")));
            }
            if table[a * n + b].replace(c).is_some_and(|old| old != c) {
                return Err(Error::invalid(format!("conflicting entries for {a}·{b}")));
            }
        }
        Self::new(doc.carrier.clone(), table, doc.units.clone())
    }

    pub fn to_json(&self) -> PsgJson {
        let n = self.len();
        let compose = (0..n * n)
            .filter_map(|ij| self.table[ij].map(|c| [ij / n, ij % n, c]))
            .collect();
        PsgJson {
            carrier: self.names.clone(),
            compose,
            units: self.units.clone(),
        }
    }
}

/// JSON document for a partial monoid; absent pairs are undefined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsgJson {
    pub carrier: Vec<String>,
    pub compose: Vec<[usize; 3]>,
    #[serde(default)]
    pub units: Vec<usize>,
}

/// The one-element monoid `{e}`.
pub fn one_point() -> PartialMonoid {
    PartialMonoid::new(vec!["e".into()], vec![Some(0)], vec![0]).unwrap()
}

/// Words of length at most `max_len` over `alphabet`; concatenation is
/// defined when the result fits. The empty word `ε` is the unit.
pub fn free_monoid(alphabet: &[&str], max_len: usize) -> PartialMonoid {
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..alphabet.len() {
                let mut v: Vec<usize> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let index: HashMap<Vec<usize>, usize> =
        words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let names = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "ε".to_string()
            } else {
                w.iter().map(|&a| alphabet[a]).collect()
            }
        })
        .collect();
    PartialMonoid::from_fn(
        names,
        |x, y| {
            let mut w = words[x].clone();
            w.extend_from_slice(&words[y]);
            index.get(&w).copied()
        },
        vec![0],
    )
    .unwrap()
}

/// Ordered pairs over `base` under cartesian fusion `(a,b)·(b,c) = (a,c)`.
pub fn pairs_monoid(base: &[&str]) -> PartialMonoid {
    let k = base.len();
    let names = (0..k * k)
        .map(|p| format!("({},{})", base[p / k], base[p % k]))
        .collect();
    PartialMonoid::from_fn(
        names,
        |x, y| (x % k == y / k).then(|| (x / k) * k + y % k),
        (0..k).map(|i| i * k + i).collect(),
    )
    .unwrap()
}

/// Componentwise product; element `(x, y)` sits at `x * b.len() + y`.
pub fn product_monoid(a: &PartialMonoid, b: &PartialMonoid) -> PartialMonoid {
    let nb = b.len();
    let names = (0..a.len() * nb)
        .map(|p| format!("({},{})", a.name(p / nb), b.name(p % nb)))
        .collect();
    let units = a
        .units()
        .iter()
        .flat_map(|&u| b.units().iter().map(move |&v| u * nb + v))
        .collect();
    PartialMonoid::from_fn(
        names,
        |x, y| Some(a.compose(x / nb, y / nb)? * nb + b.compose(x % nb, y % nb)?),
        units,
    )
    .unwrap()
}

/// `m × set` composing in the first component when the second ones agree.
pub fn monoid_set_product(m: &PartialMonoid, set: &[&str]) -> PartialMonoid {
    let k = set.len();
    let names = (0..m.len() * k)
        .map(|p| format!("({},{})", m.name(p / k), set[p % k]))
        .collect();
    let units = m
        .units()
        .iter()
        .flat_map(|&u| (0..k).map(move |s| u * k + s))
        .collect();
    PartialMonoid::from_fn(
        names,
        |x, y| {
            if x % k != y % k {
                return None;
            }
            Some(m.compose(x / k, y / k)? * k + x % k)
        },
        units,
    )
    .unwrap()
}

/// Boundary types `{o,c}²`; `x•y = (π1 x, π2 y)` when `π2 x ≠ π1 y`.
///
/// Elements are ordered `(o,o), (o,c), (c,o), (c,c)`; bit 1 is the left
/// boundary and bit 0 the right one, `1` meaning closed.
pub fn boundary_monoid() -> PartialMonoid {
    let names = ["(o,o)", "(o,c)", "(c,o)", "(c,c)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    PartialMonoid::from_fn(
        names,
        |x, y| ((x & 1) != (y >> 1)).then_some((x & 2) | (y & 1)),
        vec![1, 2],
    )
    .unwrap()
}

/// Segments with open or closed boundaries.
///
/// `segments` must be a fusion monoid whose units are the point segments.
/// Elements are named like `[1,3)` when segment names have the form `[i,j]`.
pub fn boundary_segment_monoid(segments: &PartialMonoid) -> Result<PartialMonoid> {
    let prod = product_monoid(segments, &boundary_monoid());
    let mut m = prod.restrict(|p| !(segments.is_unit(p / 4) && p % 4 == 0))?;
    for name in m.names.iter_mut() {
        if let Some(label) = boundary_label(name) {
            *name = label;
        }
    }
    Ok(m)
}

fn boundary_label(product_name: &str) -> Option<String> {
    let inner = product_name.strip_prefix("([")?.strip_suffix(')')?;
    let (seg, bounds) = inner.split_once("],(")?;
    let (l, r) = bounds.split_once(',')?;
    let open = |c: &str, closed: char, opened: char| match c {
        "c" => Some(closed),
        "o" => Some(opened),
        _ => None,
    };
    Some(format!("{}{}{}", open(l, '[', '(')?, seg, open(r, ']', ')')?))
}

/// Adjoins a total annihilator `0`, placed last; it is not a unit.
pub fn adjoin_annihilator(m: &PartialMonoid) -> PartialMonoid {
    let n = m.len();
    let mut names = m.names.clone();
    names.push("0".into());
    PartialMonoid::from_fn(
        names,
        |x, y| if x == n || y == n { Some(n) } else { m.compose(x, y) },
        m.units.clone(),
    )
    .unwrap()
}

/// Exhaustively checks partial associativity and, when units are present,
/// the three unit axioms.
pub fn check_psg_laws(m: &PartialMonoid) -> LawReport {
    let n = m.len();
    let mut r = LawReport::new(format!("partial monoid on {n} elements"));
    let mut w = None;
    'a: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let right = m.compose(y, z).and_then(|yz| m.compose(x, yz));
                let left = m.compose(x, y).and_then(|xy| m.compose(xy, z));
                if left != right {
                    let show = |v: Option<usize>| v.map_or("undefined".to_string(), |c| m.name(c).to_string());
                    w = Some(format!(
                        "x={}, y={}, z={}: (x·y)·z is {}, x·(y·z) is {}",
                        m.name(x),
                        m.name(y),
                        m.name(z),
                        show(left),
                        show(right)
                    ));
                    break 'a;
                }
            }
        }
    }
    r.record("associativity", (n * n * n) as u64, w);

    if m.units.is_empty() {
        let note = match unit_candidates(m).first() {
            Some(&e) => format!("no units claimed; {} acts as a two-sided unit", m.name(e)),
            None => "no units claimed; no element is a two-sided unit".to_string(),
        };
        r.skip("units", &note);
        return r;
    }
    let units = m.units();
    let w = (0..n)
        .find(|&x| !units.iter().any(|&e| m.compose(e, x) == Some(x)))
        .map(|x| format!("x={}", m.name(x)));
    r.record("left-unit-exists", (n * units.len()) as u64, w);
    let w = (0..n)
        .find(|&x| !units.iter().any(|&e| m.compose(x, e) == Some(x)))
        .map(|x| format!("x={}", m.name(x)));
    r.record("right-unit-exists", (n * units.len()) as u64, w);
    let w = units
        .iter()
        .flat_map(|&a| units.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| a != b && m.defined(a, b))
        .map(|(a, b)| format!("{}·{} defined", m.name(a), m.name(b)));
    r.record("units-compose-only-if-equal", (units.len() * units.len()) as u64, w);
    r
}

/// Elements `e` with `e·x = x = x·e` for every `x`.
pub fn unit_candidates(m: &PartialMonoid) -> Vec<usize> {
    (0..m.len())
        .filter(|&e| (0..m.len()).all(|x| m.compose(e, x) == Some(x) && m.compose(x, e) == Some(x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LawStatus;

    fn three() -> PartialMonoid {
        pairs_monoid(&["1", "2", "3"])
    }

    #[test]
    fn free_monoid_truncated() {
        let m = free_monoid(&["a", "b"], 2);
        assert_eq!(m.len(), 7);
        assert_eq!(m.compose_named("a", "b"), Some("ab"));
        assert_eq!(m.compose_named("ab", "a"), None);
        assert!(check_psg_laws(&m).passed());
    }

    #[test]
    fn pairs_fusion() {
        let m = three();
        assert_eq!(m.compose_named("(1,2)", "(2,3)"), Some("(1,3)"));
        assert_eq!(m.compose_named("(1,2)", "(3,1)"), None);
        assert_eq!(m.compose_named("(1,1)", "(1,2)"), Some("(1,2)"));
        let diag: Vec<&str> = m.units().iter().map(|&u| m.name(u)).collect();
        assert_eq!(diag, ["(1,1)", "(2,2)", "(3,3)"]);
        assert!(check_psg_laws(&m).passed());
    }

    #[test]
    fn square_semigroup() {
        let m = PartialMonoid::from_fn(
            vec!["a".into(), "b".into()],
            |x, y| (x == 0 && y == 0).then_some(1),
            vec![],
        )
        .unwrap();
        let r = check_psg_laws(&m);
        assert!(r.passed(), "{r}");
        assert_eq!(r.get("units").unwrap().status, LawStatus::Skipped);
    }

    #[test]
    fn products() {
        let p = product_monoid(&one_point(), &one_point());
        assert_eq!(p.len(), 1);
        assert!(check_psg_laws(&p).passed());

        let a = pairs_monoid(&["1", "2"]);
        let b = free_monoid(&["a"], 1);
        let ab = product_monoid(&a, &b);
        assert!(check_psg_laws(&ab).passed());
        for x in 0..ab.len() {
            for y in 0..ab.len() {
                let both = a.defined(x / b.len(), y / b.len()) && b.defined(x % b.len(), y % b.len());
                assert_eq!(ab.defined(x, y), both);
            }
        }
    }

    #[test]
    fn monoid_set() {
        let m = monoid_set_product(&pairs_monoid(&["1", "2"]), &["p", "q"]);
        assert_eq!(m.compose_named("((1,2),p)", "((2,1),p)"), Some("((1,1),p)"));
        assert_eq!(m.compose_named("((1,2),p)", "((2,1),q)"), None);
        assert!(check_psg_laws(&m).passed());
    }

    #[test]
    fn boundary_types() {
        let b = boundary_monoid();
        assert_eq!(b.compose_named("(c,o)", "(c,c)"), Some("(c,c)"));
        assert_eq!(b.compose_named("(c,c)", "(c,c)"), None);
        let units: Vec<&str> = b.units().iter().map(|&u| b.name(u)).collect();
        assert_eq!(units, ["(o,c)", "(c,o)"]);
        assert!(check_psg_laws(&b).passed());
    }

    #[test]
    fn annihilator_on_a_total_monoid() {
        let m = adjoin_annihilator(&free_monoid(&["a"], 0));
        let z = m.index_of("0").unwrap();
        for s in 0..m.len() {
            assert_eq!(m.compose(z, s), Some(z));
            assert_eq!(m.compose(s, z), Some(z));
        }
        assert!(!m.is_unit(z));
        assert!(check_psg_laws(&m).passed());
    }

    #[test]
    fn annihilator_breaks_partial_associativity() {
        let m = adjoin_annihilator(&three());
        let r = check_psg_laws(&m);
        assert_eq!(r.get("associativity").unwrap().status, LawStatus::Fail);
    }

    #[test]
    fn json_round_trip() {
        let m = three();
        let doc: PsgJson = serde_json::from_str(&serde_json::to_string(&m.to_json()).unwrap()).unwrap();
        assert_eq!(PartialMonoid::from_json(&doc).unwrap(), m);
    }

    #[test]
    fn restriction_reports_closure_violations() {
        let m = free_monoid(&["a"], 2);
        let err = m.restrict(|i| m.name(i) != "aa").unwrap_err();
        assert!(err.to_string().contains("a·a = aa"));
    }
}
