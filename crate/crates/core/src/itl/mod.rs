//! Interval temporal logic over the intervals of `0..=N`, optionally with
//! semi-infinite intervals `[i,∞]`.
//!
//! Formulas denote boolean interval functions. Chop is convolution over the
//! fusion relation, `point` is the convolution unit and star is a least
//! fixpoint.

mod algebra;
mod eval;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use algebra::{check_infinite_lifting, check_itl_algebra, infinite_right_annihilation};
pub use eval::{
    eval, lfp, omega_table, star_table, Evaluator, Frame, FixpointOptions, DEFAULT_FIXPOINT_BOUND,
};
pub use parse::parse_formula;

use crate::interval::HsModality;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Chop(Box<Formula>, Box<Formula>),
    /// Holds exactly on point intervals.
    Unit,
    Star(Box<Formula>),
    /// Greatest fixpoint of `x ↦ f ; x`, by bounded unfolding.
    Omega(Box<Formula>),
    Hs(HsModality, Box<Formula>),
    VenD(Box<Formula>, Box<Formula>),
    VenT(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_string())
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Self {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Self {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn chop(f: Formula, g: Formula) -> Self {
        Formula::Chop(Box::new(f), Box::new(g))
    }

    pub fn star(f: Formula) -> Self {
        Formula::Star(Box::new(f))
    }

    pub fn omega(f: Formula) -> Self {
        Formula::Omega(Box::new(f))
    }

    pub fn hs(m: HsModality, f: Formula) -> Self {
        Formula::Hs(m, Box::new(f))
    }

    pub fn depth(&self) -> usize {
        use Formula::*;
        match self {
            Atom(_) | Top | Bot | Unit => 0,
            Not(f) | Star(f) | Omega(f) | Hs(_, f) => 1 + f.depth(),
            And(f, g) | Or(f, g) | Chop(f, g) | VenD(f, g) | VenT(f, g) => 1 + f.depth().max(g.depth()),
        }
    }

    /// Atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<&str> {
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a str>) {
            use Formula::*;
            match f {
                Atom(a) => {
                    if !out.contains(&a.as_str()) {
                        out.push(a)
                    }
                }
                Top | Bot | Unit => {}
                Not(f) | Star(f) | Omega(f) | Hs(_, f) => walk(f, out),
                And(f, g) | Or(f, g) | Chop(f, g) | VenD(f, g) | VenT(f, g) => {
                    walk(f, out);
                    walk(g, out)
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

/// Fully parenthesised, re-parsable rendering.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        match self {
            Atom(a) => write!(f, "{a}"),
            Top => write!(f, "top"),
            Bot => write!(f, "bot"),
            Unit => write!(f, "point"),
            Not(g) => write!(f, "!({g})"),
            And(g, h) => write!(f, "({g} & {h})"),
            Or(g, h) => write!(f, "({g} | {h})"),
            Chop(g, h) => write!(f, "({g} ; {h})"),
            Star(g) => write!(f, "({g})*"),
            Omega(g) => write!(f, "omega({g})"),
            Hs(m, g) => {
                let m = match m {
                    HsModality::BConverse => "Bc".to_string(),
                    HsModality::EConverse => "Ec".to_string(),
                    HsModality::AConverse => "Ac".to_string(),
                    m => m.to_string(),
                };
                write!(f, "<{m}>({g})")
            }
            VenD(g, h) => write!(f, "vd({g}, {h})"),
            VenT(g, h) => write!(f, "vt({g}, {h})"),
        }
    }
}

/// A finite interval `[i,j]` or a semi-infinite one `[i,∞]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Interval {
    Fin(usize, usize),
    Inf(usize),
}

impl Interval {
    pub fn start(self) -> usize {
        match self {
            Interval::Fin(i, _) | Interval::Inf(i) => i,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Fin(i, j) => write!(f, "[{i},{j}]"),
            Interval::Inf(i) => write!(f, "[{i},∞]"),
        }
    }
}

impl std::str::FromStr for Interval {
    type Err = Error;

    /// Accepts `[i,j]`, `[i,inf]` and `[i,∞]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("malformed interval {s:?} (expected [i,j] or [i,inf])"));
        let body = s.trim().strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
        let (a, b) = body.split_once(',').ok_or_else(bad)?;
        let i = a.trim().parse().map_err(|_| bad())?;
        match b.trim() {
            "inf" | "∞" => Ok(Interval::Inf(i)),
            b => {
                let j = b.parse().map_err(|_| bad())?;
                if i > j {
                    return Err(bad());
                }
                Ok(Interval::Fin(i, j))
            }
        }
    }
}

/// How an atom's truth is given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomSpec {
    /// Listed finite intervals and the starting points of infinite ones.
    Intervals { finite: Vec<(usize, usize)>, infinite: Vec<usize> },
    /// Holds where the stream stays in this state throughout; on `[i,∞]`
    /// the check covers `i..=N`.
    StatePred(String),
}

/// A stream of states over `0..=N` with atom definitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamModel {
    horizon: usize,
    stream: Vec<String>,
    atoms: BTreeMap<String, AtomSpec>,
    infinite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intervals: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inf_intervals: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state_pred: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub horizon: usize,
    pub stream: Vec<String>,
    pub atoms: BTreeMap<String, AtomJson>,
    #[serde(default)]
    pub infinite: bool,
}

impl StreamModel {
    pub fn new(horizon: usize, stream: Vec<String>, infinite: bool) -> Result<Self> {
        if stream.len() != horizon + 1 {
            return Err(Error::invalid(format!(
                "stream has {} states, horizon {horizon} needs {}",
                stream.len(),
                horizon + 1
            )));
        }
        Ok(StreamModel { horizon, stream, atoms: BTreeMap::new(), infinite })
    }

    /// A model on a constant stream `s`.
    pub fn constant(horizon: usize, infinite: bool) -> Self {
        Self::new(horizon, vec!["s".into(); horizon + 1], infinite).unwrap()
    }

    pub fn with_atom(mut self, name: &str, spec: AtomSpec) -> Result<Self> {
        if let AtomSpec::Intervals { finite, infinite } = &spec {
            if let Some(&(i, j)) = finite.iter().find(|&&(i, j)| i > j || j > self.horizon) {
                return Err(Error::invalid(format!("atom {name}: interval [{i},{j}] outside the horizon")));
            }
            if let Some(i) = infinite.iter().find(|&&i| i > self.horizon) {
                return Err(Error::invalid(format!("atom {name}: interval [{i},∞] outside the horizon")));
            }
            if !self.infinite && !infinite.is_empty() {
                return Err(Error::invalid(format!("atom {name}: infinite intervals given but not enabled")));
            }
        }
        self.atoms.insert(name.to_string(), spec);
        Ok(self)
    }

    /// Shorthand for an atom true exactly on the listed finite intervals.
    pub fn with_intervals(self, name: &str, finite: &[(usize, usize)]) -> Result<Self> {
        self.with_atom(name, AtomSpec::Intervals { finite: finite.to_vec(), infinite: Vec::new() })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn stream(&self) -> &[String] {
        &self.stream
    }

    pub fn infinite(&self) -> bool {
        self.infinite
    }

    pub fn atom_names(&self) -> impl Iterator<Item = &str> {
        self.atoms.keys().map(String::as_str)
    }

    pub fn atom(&self, name: &str) -> Option<&AtomSpec> {
        self.atoms.get(name)
    }

    /// Truth of atom `name` on `iv`.
    pub fn holds(&self, name: &str, iv: Interval) -> Result<bool> {
        let spec = self
            .atoms
            .get(name)
            .ok_or_else(|| Error::invalid(format!("unresolved atom `{name}`")))?;
        Ok(match (spec, iv) {
            (AtomSpec::Intervals { finite, .. }, Interval::Fin(i, j)) => finite.contains(&(i, j)),
            (AtomSpec::Intervals { infinite, .. }, Interval::Inf(i)) => infinite.contains(&i),
            (AtomSpec::StatePred(s), Interval::Fin(i, j)) => self.stream[i..=j].iter().all(|x| x == s),
            (AtomSpec::StatePred(s), Interval::Inf(i)) => self.stream[i..].iter().all(|x| x == s),
        })
    }

    pub fn from_json(doc: &TraceJson) -> Result<Self> {
        let mut m = StreamModel::new(doc.horizon, doc.stream.clone(), doc.infinite)?;
        for (name, a) in &doc.atoms {
            let spec = match (a.state_pred.as_ref(), a.intervals.as_ref(), a.inf_intervals.as_ref()) {
                (Some(s), None, None) => {
                    if !m.stream.contains(s) {
                        return Err(Error::invalid(format!("atom {name}: state {s:?} never occurs")));
                    }
                    AtomSpec::StatePred(s.clone())
                }
                (None, fin, inf) if fin.is_some() || inf.is_some() => AtomSpec::Intervals {
                    finite: fin.into_iter().flatten().map(|&[i, j]| (i, j)).collect(),
                    infinite: inf.cloned().unwrap_or_default(),
                },
                _ => {
                    return Err(Error::invalid(format!(
                        "atom {name}: give either `state_pred` or `intervals`/`inf_intervals`"
                    )))
                }
            };
            m = m.with_atom(name, spec)?;
        }
        Ok(m)
    }

    pub fn to_json(&self) -> TraceJson {
        let atoms = self
            .atoms
            .iter()
            .map(|(name, spec)| {
                let a = match spec {
                    AtomSpec::StatePred(s) => AtomJson { intervals: None, inf_intervals: None, state_pred: Some(s.clone()) },
                    AtomSpec::Intervals { finite, infinite } => AtomJson {
                        intervals: Some(finite.iter().map(|&(i, j)| [i, j]).collect()),
                        inf_intervals: (!infinite.is_empty()).then(|| infinite.clone()),
                        state_pred: None,
                    },
                };
                (name.clone(), a)
            })
            .collect();
        TraceJson { horizon: self.horizon, stream: self.stream.clone(), atoms, infinite: self.infinite }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_parsing() {
        assert_eq!("[1,3]".parse::<Interval>().unwrap(), Interval::Fin(1, 3));
        assert_eq!("[2,inf]".parse::<Interval>().unwrap(), Interval::Inf(2));
        assert_eq!("[2,∞]".parse::<Interval>().unwrap(), Interval::Inf(2));
        assert!("[3,1]".parse::<Interval>().is_err());
        assert!("1,3".parse::<Interval>().is_err());
    }

    #[test]
    fn trace_json_round_trip() {
        let text = r#"{"horizon": 3, "stream": ["a","a","b","b"],
            "atoms": {"p": {"intervals": [[0,1]]}, "q": {"state_pred": "b"}}}"#;
        let doc: TraceJson = serde_json::from_str(text).unwrap();
        let m = StreamModel::from_json(&doc).unwrap();
        assert!(m.holds("p", Interval::Fin(0, 1)).unwrap());
        assert!(m.holds("q", Interval::Fin(2, 3)).unwrap());
        assert!(!m.holds("q", Interval::Fin(1, 3)).unwrap());
        assert!(m.holds("r", Interval::Fin(0, 0)).is_err());
        assert_eq!(StreamModel::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn model_validation() {
        assert!(StreamModel::new(3, vec!["s".into(); 3], false).is_err());
        let m = StreamModel::constant(2, false);
        assert!(m.clone().with_intervals("p", &[(1, 3)]).is_err());
        let inf = AtomSpec::Intervals { finite: vec![], infinite: vec![0] };
        assert!(m.with_atom("p", inf).is_err());
    }
}
