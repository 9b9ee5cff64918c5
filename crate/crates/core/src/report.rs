//! Structured results of the verification routines.

use alloc::string::String;
use alloc::vec::Vec;

use crate::ExactRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

/// A named value attached to a report.
#[derive(Clone, Debug, PartialEq)]
pub enum Stat {
    Int(i128),
    Float(f64),
    Rational(ExactRational),
    Bool(bool),
    Text(String),
    List(Vec<Stat>),
}

impl From<i128> for Stat {
    fn from(v: i128) -> Self {
        Stat::Int(v)
    }
}
impl From<u64> for Stat {
    fn from(v: u64) -> Self {
        Stat::Int(v as i128)
    }
}
impl From<u32> for Stat {
    fn from(v: u32) -> Self {
        Stat::Int(v as i128)
    }
}
impl From<usize> for Stat {
    fn from(v: usize) -> Self {
        Stat::Int(v as i128)
    }
}
impl From<f64> for Stat {
    fn from(v: f64) -> Self {
        Stat::Float(v)
    }
}
impl From<bool> for Stat {
    fn from(v: bool) -> Self {
        Stat::Bool(v)
    }
}
impl From<ExactRational> for Stat {
    fn from(v: ExactRational) -> Self {
        Stat::Rational(v)
    }
}
impl From<String> for Stat {
    fn from(v: String) -> Self {
        Stat::Text(v)
    }
}
impl From<&str> for Stat {
    fn from(v: &str) -> Self {
        Stat::Text(v.into())
    }
}
impl<T: Into<Stat>> From<Vec<T>> for Stat {
    fn from(v: Vec<T>) -> Self {
        Stat::List(v.into_iter().map(Into::into).collect())
    }
}

/// Pass/fail result of checking one claim over a parameter range.
///
/// A failing report always carries a witness whose values can be re-checked
/// independently.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub claim: String,
    pub range: String,
    pub outcome: Outcome,
    pub witness: Option<Vec<(String, Stat)>>,
    pub statistics: Vec<(String, Stat)>,
}

impl VerificationReport {
    pub fn pass(claim: impl Into<String>, range: impl Into<String>) -> Self {
        Self {
            claim: claim.into(),
            range: range.into(),
            outcome: Outcome::Pass,
            witness: None,
            statistics: Vec::new(),
        }
    }

    pub fn fail(claim: impl Into<String>, range: impl Into<String>, witness: Vec<(String, Stat)>) -> Self {
        Self {
            claim: claim.into(),
            range: range.into(),
            outcome: Outcome::Fail,
            witness: Some(witness),
            statistics: Vec::new(),
        }
    }

    pub fn with_stat(mut self, name: impl Into<String>, value: impl Into<Stat>) -> Self {
        self.statistics.push((name.into(), value.into()));
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn stat(&self, name: &str) -> Option<&Stat> {
        self.statistics.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

/// `witness![("n", 5u64), ("k", 3u32)]`
macro_rules! witness {
    ($(($name:expr, $value:expr)),* $(,)?) => {
        alloc::vec![$((alloc::string::String::from($name), $crate::Stat::from($value))),*]
    };
}
