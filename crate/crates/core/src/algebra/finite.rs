//! Table-driven finite lattices and quantales.

use serde::{Deserialize, Serialize};

use super::{Enumerable, Flags, Lattice, Quantale};
use crate::{Error, Result};

/// A finite lattice given by its order; joins and meets are tabulated.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteLattice {
    /// Builds the lattice generated by `pairs` (reflexive-transitive closure).
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::invalid("lattice carrier is empty"));
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::invalid(format!("order pair ({i},{j}) out of range")));
            }
            leq[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(names, leq)
    }

    /// Builds a lattice from a complete order matrix (`leq[i*n+j]` ⇔ i ≤ j).
    pub fn from_matrix(names: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = names.len();
        if leq.len() != n * n {
            return Err(Error::invalid("order matrix has wrong size"));
        }
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(Error::invalid(format!("order not reflexive at {}", names[i])));
            }
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::invalid(format!(
                        "order not antisymmetric: {} and {}",
                        names[i], names[j]
                    )));
                }
                for k in 0..n {
                    if leq[i * n + j] && leq[j * n + k] && !leq[i * n + k] {
                        return Err(Error::invalid("order not transitive"));
                    }
                }
            }
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        let extremum = |cands: Vec<usize>, least: bool| -> Option<usize> {
            cands.iter().copied().find(|&c| {
                cands
                    .iter()
                    .all(|&d| if least { le(c, d) } else { le(d, c) })
            })
        };
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let ub: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                let lb: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                join[a * n + b] = extremum(ub, true).ok_or_else(|| {
                    Error::invalid(format!("no join of {} and {}", names[a], names[b]))
                })?;
                meet[a * n + b] = extremum(lb, false).ok_or_else(|| {
                    Error::invalid(format!("no meet of {} and {}", names[a], names[b]))
                })?;
            }
        }
        let all: Vec<usize> = (0..n).collect();
        let bottom = extremum(all.clone(), true).ok_or_else(|| Error::invalid("no least element"))?;
        let top = extremum(all, false).ok_or_else(|| Error::invalid("no greatest element"))?;
        Ok(FiniteLattice {
            names,
            leq,
            join,
            meet,
            bottom,
            top,
        })
    }

    /// The chain `names[0] < names[1] < ...`.
    pub fn chain(names: &[&str]) -> Self {
        let pairs: Vec<_> = (1..names.len()).map(|i| (i - 1, i)).collect();
        Self::from_pairs(names.iter().map(|s| s.to_string()).collect(), &pairs)
            .expect("a chain is a lattice")
    }

    /// The powerset lattice of an `k`-element set; element `m` is the bitmask `m`.
    pub fn powerset(k: usize) -> Self {
        let n = 1usize << k;
        let names = (0..n)
            .map(|m| {
                let items: Vec<String> = (0..k).filter(|b| m >> b & 1 == 1).map(|b| b.to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        let leq = (0..n * n).map(|ij| (ij / n) & !(ij % n) == 0).collect();
        Self::from_matrix(names, leq).expect("powerset is a lattice")
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
}

impl Lattice for FiniteLattice {
    type Elem = usize;

    fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }
    fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }
    fn bottom(&self) -> usize {
        self.bottom
    }
    fn top(&self) -> usize {
        self.top
    }
    fn show(&self, a: usize) -> String {
        self.names[a].clone()
    }
}

impl Enumerable for FiniteLattice {
    fn elements(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}

/// A finite quantale: a finite lattice plus a composition table.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteQuantale {
    name: String,
    lattice: FiniteLattice,
    compose: Vec<usize>,
    unit: Option<usize>,
    flags: Flags,
    complement: Option<Vec<usize>>,
}

impl FiniteQuantale {
    /// Builds a quantale from a total composition function.
    ///
    /// The `unital` flag is derived from `unit`. When the `boolean` flag is
    /// set every element must have a complement.
    pub fn new(
        name: impl Into<String>,
        lattice: FiniteLattice,
        compose: impl Fn(usize, usize) -> usize,
        unit: Option<usize>,
        mut flags: Flags,
    ) -> Result<Self> {
        let n = lattice.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let c = compose(a, b);
                if c >= n {
                    return Err(Error::invalid(format!("composition of {a},{b} out of range")));
                }
                table.push(c);
            }
        }
        if let Some(u) = unit {
            if u >= n {
                return Err(Error::invalid("unit out of range"));
            }
        }
        flags.unital = unit.is_some();
        let complement = if flags.boolean {
            let mut comp = Vec::with_capacity(n);
            for a in 0..n {
                let c = (0..n)
                    .find(|&c| lattice.meet(a, c) == lattice.bottom() && lattice.join(a, c) == lattice.top())
                    .ok_or_else(|| Error::invalid(format!("{} has no complement", lattice.name(a))))?;
                comp.push(c);
            }
            Some(comp)
        } else {
            None
        };
        Ok(FiniteQuantale {
            name: name.into(),
            lattice,
            compose: table,
            unit,
            flags,
            complement,
        })
    }

    /// The quantale whose composition is the lattice meet, with unit top.
    pub fn meet_quantale(name: &str, lattice: FiniteLattice, boolean: bool) -> Result<Self> {
        let l = lattice.clone();
        let top = lattice.top();
        FiniteQuantale::new(
            name,
            lattice,
            move |a, b| l.meet(a, b),
            Some(top),
            Flags {
                distributive: true,
                abelian: true,
                boolean,
                ..Flags::default()
            },
        )
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.lattice.index_of(name)
    }

    pub fn from_json(doc: &QuantaleJson) -> Result<Self> {
        let pairs: Vec<_> = doc.leq.iter().map(|p| (p[0], p[1])).collect();
        let lattice = FiniteLattice::from_pairs(doc.carrier.clone(), &pairs)?;
        let n = lattice.len();
        let mut table = vec![None; n * n];
        for t in &doc.compose {
            let [a, b, c] = *t;
            if a >= n || b >= n || c >= n {
                return Err(Error::invalid(format!("composition entry {t:?} out of range")));
            }
            table[a * n + b] = Some(c);
        }
        if let Some(pos) = table.iter().position(Option::is_none) {
            return Err(Error::invalid(format!(
                "composition table not total: missing {}·{}",
                doc.carrier[pos / n],
                doc.carrier[pos % n]
            )));
        }
        let flags = Flags::parse(&doc.flags)?;
        FiniteQuantale::new(
            doc.name.clone().unwrap_or_else(|| "custom".into()),
            lattice,
            |a, b| table[a * n + b].unwrap(),
            doc.unit,
            flags,
        )
    }

    pub fn to_json(&self) -> QuantaleJson {
        let n = self.len();
        let mut leq = Vec::new();
        let mut compose = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lattice.leq(a, b) {
                    leq.push([a, b]);
                }
                compose.push([a, b, self.compose[a * n + b]]);
            }
        }
        QuantaleJson {
            name: Some(self.name.clone()),
            carrier: self.lattice.names().to_vec(),
            leq,
            compose,
            unit: self.unit,
            flags: self.flags.names().into_iter().map(String::from).collect(),
        }
    }
}

/// JSON document for a finite quantale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantaleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub carrier: Vec<String>,
    pub leq: Vec<[usize; 2]>,
    pub compose: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    #[serde(default)]
    pub flags: Vec<String>,
}

impl Lattice for FiniteQuantale {
    type Elem = usize;

    fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }
    fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice.meet(a, b)
    }
    fn bottom(&self) -> usize {
        self.lattice.bottom()
    }
    fn top(&self) -> usize {
        self.lattice.top()
    }
    fn show(&self, a: usize) -> String {
        self.lattice.show(a)
    }
}

impl Quantale for FiniteQuantale {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn compose(&self, a: usize, b: usize) -> usize {
        self.compose[a * self.len() + b]
    }
    fn unit(&self) -> Option<usize> {
        self.unit
    }
    fn flags(&self) -> Flags {
        self.flags
    }
    fn complement(&self, a: usize) -> Option<usize> {
        self.complement.as_ref().map(|c| c[a])
    }
}

impl Enumerable for FiniteQuantale {
    fn elements(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }
}
