//! Law reports shared by every checker.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawStatus {
    Pass,
    Fail,
    /// Not applicable in the requested mode.
    Skipped,
    /// Not part of the claimed structure; checked anyway and refuted.
    NotRequired,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawOutcome {
    pub law: String,
    pub status: LawStatus,
    /// Number of cases examined.
    pub cases: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub subject: String,
    pub laws: Vec<LawOutcome>,
}

impl LawReport {
    pub fn new(subject: impl Into<String>) -> Self {
        LawReport {
            subject: subject.into(),
            laws: Vec::new(),
        }
    }

    /// Records a checked law: pass when `witness` is `None`.
    pub fn record(&mut self, law: &str, cases: u64, witness: Option<String>) -> &mut LawOutcome {
        let status = if witness.is_some() {
            LawStatus::Fail
        } else {
            LawStatus::Pass
        };
        self.laws.push(LawOutcome {
            law: law.to_string(),
            status,
            cases,
            witness,
            note: None,
        });
        self.laws.last_mut().unwrap()
    }

    /// Records a law that is not required; a witness marks it refuted.
    pub fn record_optional(&mut self, law: &str, cases: u64, witness: Option<String>) -> &mut LawOutcome {
        let status = if witness.is_some() {
            LawStatus::NotRequired
        } else {
            LawStatus::Pass
        };
        self.laws.push(LawOutcome {
            law: law.to_string(),
            status,
            cases,
            witness,
            note: None,
        });
        self.laws.last_mut().unwrap()
    }

    pub fn skip(&mut self, law: &str, note: &str) {
        self.laws.push(LawOutcome {
            law: law.to_string(),
            status: LawStatus::Skipped,
            cases: 0,
            witness: None,
            note: Some(note.to_string()),
        });
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.status != LawStatus::Fail)
    }

    pub fn get(&self, law: &str) -> Option<&LawOutcome> {
        self.laws.iter().find(|l| l.law == law)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawOutcome> {
        self.laws.iter().filter(|l| l.status == LawStatus::Fail)
    }

    /// Appends every outcome of `other`, prefixing law names.
    pub fn merge(&mut self, prefix: &str, other: LawReport) {
        for mut l in other.laws {
            l.law = format!("{prefix}{}", l.law);
            self.laws.push(l);
        }
    }
}

impl fmt::Display for LawStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LawStatus::Pass => "pass",
            LawStatus::Fail => "FAIL",
            LawStatus::Skipped => "skip",
            LawStatus::NotRequired => "refuted (not required)",
        };
        f.write_str(s)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for l in &self.laws {
            write!(f, "  {:<32} {:<6} ({} cases)", l.law, l.status, l.cases)?;
            if let Some(w) = &l.witness {
                write!(f, "  witness: {w}")?;
            }
            if let Some(n) = &l.note {
                write!(f, "  [{n}]")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.passed() { "ALL PASS" } else { "FAILED" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn not_required_does_not_fail_report() {
        let mut r = LawReport::new("t");
        r.record("a", 3, None);
        r.record_optional("b", 1, Some("x".into()));
        assert!(r.passed());
        r.record("c", 1, Some("y".into()));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn json_round_trip() {
        let mut r = LawReport::new("subject");
        r.record("assoc", 10, Some("f=(0,1) at b".into()));
        r.skip("unit", "no units");
        let s = serde_json::to_string(&r).unwrap();
        let back: LawReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
