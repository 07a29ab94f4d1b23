//! Verification report rows shared by every sweep and certificate.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    /// Pass when the whole margin interval is positive, fail when it is
    /// entirely negative.
    pub fn from_margin(lo: f64, hi: f64) -> Status {
        if lo > 0.0 {
            Status::Pass
        } else if hi < 0.0 {
            Status::Fail
        } else {
            Status::Inconclusive
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }

    /// Combines two statuses: any fail wins, then any inconclusive.
    pub fn combine(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    List(Vec<i64>),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(v) => write!(f, "{v}"),
            Param::Float(v) => write!(f, "{v}"),
            Param::Text(v) => f.write_str(v),
            Param::Bool(v) => write!(f, "{v}"),
            Param::List(v) => {
                f.write_str("[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl From<i64> for Param {
    fn from(v: i64) -> Self {
        Param::Int(v)
    }
}

impl From<u64> for Param {
    fn from(v: u64) -> Self {
        i64::try_from(v).map(Param::Int).unwrap_or_else(|_| Param::Text(v.to_string()))
    }
}

impl From<u32> for Param {
    fn from(v: u32) -> Self {
        Param::Int(i64::from(v))
    }
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::from(v as u64)
    }
}

impl From<f64> for Param {
    fn from(v: f64) -> Self {
        Param::Float(v)
    }
}

impl From<bool> for Param {
    fn from(v: bool) -> Self {
        Param::Bool(v)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_string())
    }
}

impl From<String> for Param {
    fn from(v: String) -> Self {
        Param::Text(v)
    }
}

/// One verified claim or sweep cell.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub claim_id: String,
    pub module: &'static str,
    /// Ordered parameter list; order is kept in every output format.
    pub params: Vec<(String, Param)>,
    pub status: Status,
    /// Lower end of the worst-case margin (claimed side minus checked side).
    pub margin_lo: f64,
    pub margin_hi: f64,
    pub method: String,
    /// `exact` or `surrogate` for bound evaluations, empty otherwise.
    pub mode: String,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(claim_id: impl Into<String>, module: &'static str, method: impl Into<String>) -> Self {
        VerificationReport {
            claim_id: claim_id.into(),
            module,
            params: Vec::new(),
            status: Status::Inconclusive,
            margin_lo: f64::NAN,
            margin_hi: f64::NAN,
            method: method.into(),
            mode: String::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Param>) -> Self {
        self.params.push((key.to_string(), value.into()));
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn mode(mut self, mode: &str) -> Self {
        self.mode = mode.to_string();
        self
    }

    /// Records the margin interval and derives the status from it.
    pub fn margin(mut self, lo: f64, hi: f64) -> Self {
        self.margin_lo = lo;
        self.margin_hi = hi;
        self.status = if lo.is_nan() || hi.is_nan() { Status::Inconclusive } else { Status::from_margin(lo, hi) };
        self
    }

    pub fn get_param(&self, key: &str) -> Option<&Param> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_from_margin() {
        assert_eq!(Status::from_margin(0.1, 0.2), Status::Pass);
        assert_eq!(Status::from_margin(0.0, 0.2), Status::Inconclusive);
        assert_eq!(Status::from_margin(-0.2, -0.1), Status::Fail);
        assert_eq!(Status::Pass.combine(Status::Inconclusive), Status::Inconclusive);
        assert_eq!(Status::Inconclusive.combine(Status::Fail), Status::Fail);
    }

    #[test]
    fn builder_keeps_order() {
        let r = VerificationReport::new("x", "weil", "grid").param("q", 5u64).param("r", 2u32).margin(1.0, 2.0);
        assert_eq!(r.params[0].0, "q");
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.get_param("r"), Some(&Param::Int(2)));
    }
}
