//! Quantale modules and the quantale⋉lattice semidirect product.

use super::{Enumerable, FiniteLattice, FiniteQuantale, Flags, Lattice, Quantale};
use crate::{Error, LawReport, Result};

/// A finite quantale acting on a finite lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantaleModule {
    pub quantale: FiniteQuantale,
    pub lattice: FiniteLattice,
    action: Vec<usize>,
}

impl QuantaleModule {
    pub fn new(
        quantale: FiniteQuantale,
        lattice: FiniteLattice,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let (m, n) = (quantale.len(), lattice.len());
        let mut action = Vec::with_capacity(m * n);
        for u in 0..m {
            for x in 0..n {
                let y = act(u, x);
                if y >= n {
                    return Err(Error::invalid(format!("action of {u} on {x} out of range")));
                }
                action.push(y);
            }
        }
        Ok(QuantaleModule {
            quantale,
            lattice,
            action,
        })
    }

    /// The quantale acting on its own lattice by composition.
    pub fn on_itself(q: FiniteQuantale) -> Self {
        let lattice = q.lattice().clone();
        let table = q.clone();
        Self::new(q, lattice, |u, x| table.compose(u, x)).expect("composition stays in range")
    }

    pub fn act(&self, u: usize, x: usize) -> usize {
        self.action[u * self.lattice.len() + x]
    }
}

/// Checks the module axioms exhaustively.
///
/// Preservation of finite joins is checked on the empty family and on binary
/// joins, which together cover every finite family.
pub fn check_module_laws(m: &QuantaleModule) -> LawReport {
    let q = &m.quantale;
    let l = &m.lattice;
    let qs = q.elements();
    let ls = l.elements();
    let (nq, nl) = (qs.len() as u64, ls.len() as u64);
    let mut r = LawReport::new(format!("{} acting on a {}-element lattice", q.name(), nl));

    let mut w = None;
    'a: for &u in &qs {
        for &v in &qs {
            for &x in &ls {
                if m.act(q.compose(u, v), x) != m.act(u, m.act(v, x)) {
                    w = Some(format!("u={}, v={}, x={}", q.show(u), q.show(v), l.show(x)));
                    break 'a;
                }
            }
        }
    }
    r.record("action-compose", nq * nq * nl, w);

    let mut w = ls
        .iter()
        .find(|&&x| m.act(q.bottom(), x) != l.bottom())
        .map(|&x| format!("empty family: 0∘{} ≠ {}", l.show(x), l.show(l.bottom())));
    if w.is_none() {
        'b: for &u in &qs {
            for &v in &qs {
                for &x in &ls {
                    if m.act(q.join(u, v), x) != l.join(m.act(u, x), m.act(v, x)) {
                        w = Some(format!("u={}, v={}, x={}", q.show(u), q.show(v), l.show(x)));
                        break 'b;
                    }
                }
            }
        }
    }
    r.record("action-left-join", nq * nq * nl + nl, w);

    let mut w = qs
        .iter()
        .find(|&&u| m.act(u, l.bottom()) != l.bottom())
        .map(|&u| format!("empty family: {}∘0 ≠ {}", q.show(u), l.show(l.bottom())));
    if w.is_none() {
        'c: for &u in &qs {
            for &x in &ls {
                for &y in &ls {
                    if m.act(u, l.join(x, y)) != l.join(m.act(u, x), m.act(u, y)) {
                        w = Some(format!("u={}, x={}, y={}", q.show(u), l.show(x), l.show(y)));
                        break 'c;
                    }
                }
            }
        }
    }
    r.record("action-right-join", nq * nl * nl + nq, w);

    match q.unit() {
        Some(one) => {
            let w = ls
                .iter()
                .find(|&&x| m.act(one, x) != x)
                .map(|&x| format!("x={}", l.show(x)));
            r.record("action-unit", nl, w);
        }
        None => r.skip("action-unit", "quantale is not unital"),
    }
    r
}

/// Pairs `(u, x)` under `(u,x)⋉(v,y) = (u·v, x ⊔ u∘y)`, ordered componentwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SdQuantale {
    module: QuantaleModule,
}

/// Builds the semidirect product after validating the module laws.
pub fn sd_quantale(m: QuantaleModule) -> Result<SdQuantale> {
    let report = check_module_laws(&m);
    if let Some(f) = report.failures().next() {
        return Err(Error::violation(
            f.law.clone(),
            f.witness.clone().unwrap_or_default(),
        ));
    }
    Ok(SdQuantale { module: m })
}

impl SdQuantale {
    pub fn module(&self) -> &QuantaleModule {
        &self.module
    }

    /// Looks up a pair by element names.
    pub fn pair(&self, u: &str, x: &str) -> Option<(usize, usize)> {
        Some((
            self.module.quantale.element(u)?,
            self.module.lattice.index_of(x)?,
        ))
    }
}

impl Lattice for SdQuantale {
    type Elem = (usize, usize);

    fn leq(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        self.module.quantale.leq(a.0, b.0) && self.module.lattice.leq(a.1, b.1)
    }
    fn join(&self, a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
        (
            self.module.quantale.join(a.0, b.0),
            self.module.lattice.join(a.1, b.1),
        )
    }
    fn meet(&self, a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
        (
            self.module.quantale.meet(a.0, b.0),
            self.module.lattice.meet(a.1, b.1),
        )
    }
    fn bottom(&self) -> (usize, usize) {
        (self.module.quantale.bottom(), self.module.lattice.bottom())
    }
    fn top(&self) -> (usize, usize) {
        (self.module.quantale.top(), self.module.lattice.top())
    }
    fn show(&self, a: (usize, usize)) -> String {
        format!(
            "({},{})",
            self.module.quantale.show(a.0),
            self.module.lattice.show(a.1)
        )
    }
}

impl Quantale for SdQuantale {
    fn name(&self) -> String {
        format!("{}⋉lattice", self.module.quantale.name())
    }
    fn compose(&self, a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
        let m = &self.module;
        (
            m.quantale.compose(a.0, b.0),
            m.lattice.join(a.1, m.act(a.0, b.1)),
        )
    }
    fn unit(&self) -> Option<(usize, usize)> {
        self.module
            .quantale
            .unit()
            .map(|u| (u, self.module.lattice.bottom()))
    }
    fn flags(&self) -> Flags {
        Flags {
            unital: self.module.quantale.unit().is_some(),
            weak: true,
            ..Flags::default()
        }
    }
}

impl Enumerable for SdQuantale {
    fn elements(&self) -> Vec<(usize, usize)> {
        let nl = self.module.lattice.len();
        (0..self.module.quantale.len())
            .flat_map(|u| (0..nl).map(move |x| (u, x)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_quantale_laws, finite_quantale, LawMode, SubsetOptions};
    use crate::LawStatus;

    fn chain2() -> SdQuantale {
        sd_quantale(QuantaleModule::on_itself(finite_quantale("chain2-top-unit").unwrap())).unwrap()
    }

    #[test]
    fn right_annihilation_fails_as_expected() {
        let sd = chain2();
        let a = sd.pair("0", "⊤").unwrap();
        let bot = sd.bottom();
        let prod = sd.compose(a, bot);
        assert_eq!(prod, a);
        assert_ne!(prod, bot);
    }

    #[test]
    fn unit_is_one_bottom() {
        let sd = chain2();
        let one = sd.unit().unwrap();
        for p in sd.elements() {
            assert_eq!(sd.compose(one, p), p);
        }
    }

    #[test]
    fn bool_on_bool_product() {
        let sd = sd_quantale(QuantaleModule::on_itself(finite_quantale("bool").unwrap())).unwrap();
        assert_eq!(sd.compose((1, 1), (1, 0)), (1, 1));
    }

    #[test]
    fn weak_laws_pass_full_left_distributivity_fails() {
        let sd = chain2();
        let weak = check_quantale_laws(&sd, LawMode::Weak, &SubsetOptions::default()).unwrap();
        assert!(weak.passed(), "{weak}");
        let full = check_quantale_laws(&sd, LawMode::Full, &SubsetOptions::default()).unwrap();
        assert_eq!(full.get("left-distributive").unwrap().status, LawStatus::Fail);
    }

    #[test]
    fn module_violation_is_an_error() {
        let q = finite_quantale("bool").unwrap();
        let l = q.lattice().clone();
        // constant-top action breaks 0∘x = 0
        let m = QuantaleModule::new(q, l, |_, _| 1).unwrap();
        assert!(matches!(sd_quantale(m), Err(Error::LawViolation { .. })));
    }
}
