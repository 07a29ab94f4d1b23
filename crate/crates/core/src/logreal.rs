//! Signed numbers stored by the natural log of their magnitude.
//!
//! Thresholds such as `exp(exp(a(r)))` and bounds for `q` near `10^1145`
//! overflow every fixed-width float. A [`LogReal`] keeps `ln |x|` as a
//! 256-bit [`Real`], so products and powers are exact additions and
//! multiplications of logs, and sums go through a stable log-sum-exp.

use core::cmp::Ordering;
use core::fmt;

use crate::hp::{Consts, Real};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogSign {
    Negative,
    Zero,
    Positive,
}

#[derive(Clone, Debug)]
pub struct LogReal {
    sign: LogSign,
    /// `ln |x|`; meaningless when `sign` is `Zero`.
    log_magnitude: Real,
}

impl LogReal {
    pub fn zero() -> Self {
        LogReal { sign: LogSign::Zero, log_magnitude: Real::zero() }
    }

    pub fn one() -> Self {
        LogReal::from_ln(Real::zero())
    }

    /// The positive number `exp(ln_value)`.
    pub fn from_ln(ln_value: Real) -> Self {
        LogReal { sign: LogSign::Positive, log_magnitude: ln_value }
    }

    pub fn from_real(x: &Real, cc: &mut Consts) -> Self {
        if x.is_zero() {
            return LogReal::zero();
        }
        let sign = if x.is_negative() { LogSign::Negative } else { LogSign::Positive };
        let log_magnitude = x.abs().ln(cc).expect("non-zero magnitude");
        LogReal { sign, log_magnitude }
    }

    pub fn from_u64(v: u64, cc: &mut Consts) -> Self {
        LogReal::from_real(&Real::from_u64(v), cc)
    }

    pub fn from_f64(v: f64, cc: &mut Consts) -> Result<Self, Error> {
        if !v.is_finite() {
            return Err(Error::Domain("non-finite value"));
        }
        Ok(LogReal::from_real(&Real::from_f64(v), cc))
    }

    pub fn sign(&self) -> LogSign {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == LogSign::Zero
    }

    pub fn is_positive(&self) -> bool {
        self.sign == LogSign::Positive
    }

    /// `ln x` for positive `x`.
    pub fn ln(&self) -> Result<Real, Error> {
        match self.sign {
            LogSign::Positive => Ok(self.log_magnitude.clone()),
            _ => Err(Error::Domain("logarithm of a non-positive LogReal")),
        }
    }

    /// `ln |x|`, or `None` for zero.
    pub fn ln_abs(&self) -> Option<&Real> {
        (self.sign != LogSign::Zero).then_some(&self.log_magnitude)
    }

    pub fn log10(&self, cc: &mut Consts) -> Result<Real, Error> {
        Ok(self.ln()? / Real::ln10(cc))
    }

    pub fn neg(&self) -> LogReal {
        let sign = match self.sign {
            LogSign::Negative => LogSign::Positive,
            LogSign::Zero => LogSign::Zero,
            LogSign::Positive => LogSign::Negative,
        };
        LogReal { sign, log_magnitude: self.log_magnitude.clone() }
    }

    pub fn abs(&self) -> LogReal {
        match self.sign {
            LogSign::Negative => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn mul(&self, o: &LogReal) -> LogReal {
        let sign = match (self.sign, o.sign) {
            (LogSign::Zero, _) | (_, LogSign::Zero) => return LogReal::zero(),
            (a, b) if a == b => LogSign::Positive,
            _ => LogSign::Negative,
        };
        LogReal { sign, log_magnitude: &self.log_magnitude + &o.log_magnitude }
    }

    pub fn div(&self, o: &LogReal) -> Result<LogReal, Error> {
        if o.is_zero() {
            return Err(Error::Domain("division by zero"));
        }
        let inv = LogReal { sign: o.sign, log_magnitude: -&o.log_magnitude };
        Ok(self.mul(&inv))
    }

    /// `x^y` for positive `x` and real `y`.
    pub fn powf(&self, y: &Real) -> Result<LogReal, Error> {
        match self.sign {
            LogSign::Positive => Ok(LogReal::from_ln(&self.log_magnitude * y)),
            LogSign::Zero if y.is_positive() => Ok(LogReal::zero()),
            _ => Err(Error::Domain("real power of a non-positive LogReal")),
        }
    }

    pub fn recip(&self) -> Result<LogReal, Error> {
        LogReal::one().div(self)
    }

    pub fn add(&self, o: &LogReal, cc: &mut Consts) -> LogReal {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        // Order by magnitude so the correction term is at most ln 2 in size.
        let (big, small) = if self.log_magnitude >= o.log_magnitude { (self, o) } else { (o, self) };
        let diff = &small.log_magnitude - &big.log_magnitude;
        let ratio = diff.exp(cc).expect("exp of a non-positive number");
        let factor = if big.sign == small.sign { Real::one() + ratio } else { Real::one() - ratio };
        if factor.is_zero() {
            return LogReal::zero();
        }
        let correction = factor.ln(cc).expect("positive factor");
        LogReal { sign: big.sign, log_magnitude: &big.log_magnitude + &correction }
    }

    pub fn sub(&self, o: &LogReal, cc: &mut Consts) -> LogReal {
        self.add(&o.neg(), cc)
    }

    /// Linear value; fails when it would not be representable.
    pub fn to_real(&self, cc: &mut Consts) -> Result<Real, Error> {
        match self.sign {
            LogSign::Zero => Ok(Real::zero()),
            LogSign::Positive => self.log_magnitude.exp(cc),
            LogSign::Negative => Ok(-self.log_magnitude.exp(cc)?),
        }
    }

    /// Nearest `f64`, or `None` outside the finite `f64` range.
    pub fn to_f64(&self) -> Option<f64> {
        if self.is_zero() {
            return Some(0.0);
        }
        let l = self.log_magnitude.to_f64();
        if !(l < 709.78) {
            return None;
        }
        let m = libm::exp(l);
        Some(if self.sign == LogSign::Negative { -m } else { m })
    }
}

impl PartialEq for LogReal {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use LogSign::*;
        let rank = |s: LogSign| match s {
            Negative => 0,
            Zero => 1,
            Positive => 2,
        };
        match rank(self.sign).cmp(&rank(other.sign)) {
            Ordering::Equal => match self.sign {
                Zero => Some(Ordering::Equal),
                Positive => self.log_magnitude.partial_cmp(&other.log_magnitude),
                Negative => other.log_magnitude.partial_cmp(&self.log_magnitude),
            },
            ord => Some(ord),
        }
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            LogSign::Zero => write!(f, "0"),
            LogSign::Positive => write!(f, "exp({})", self.log_magnitude.to_f64()),
            LogSign::Negative => write!(f, "-exp({})", self.log_magnitude.to_f64()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::consts;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn products_and_quotients() {
        let mut cc = consts();
        let a = LogReal::from_f64(6.0, &mut cc).unwrap();
        let b = LogReal::from_f64(-4.0, &mut cc).unwrap();
        assert!(close(a.mul(&b).to_f64().unwrap(), -24.0));
        assert!(close(a.div(&b).unwrap().to_f64().unwrap(), -1.5));
        assert!(a.div(&LogReal::zero()).is_err());
        assert!(close(a.powf(&Real::ratio(1, 2)).unwrap().to_f64().unwrap(), 6f64.sqrt()));
    }

    #[test]
    fn sums_with_cancellation() {
        let mut cc = consts();
        let a = LogReal::from_f64(6.0, &mut cc).unwrap();
        let b = LogReal::from_f64(-4.0, &mut cc).unwrap();
        assert!(close(a.add(&b, &mut cc).to_f64().unwrap(), 2.0));
        assert!(close(b.add(&a.neg(), &mut cc).to_f64().unwrap(), -10.0));
        assert!(a.sub(&a, &mut cc).is_zero());
    }

    #[test]
    fn astronomical_values() {
        let mut cc = consts();
        let huge = LogReal::from_ln(Real::from_u64(32_430));
        assert!(huge.to_f64().is_none());
        let sq = huge.mul(&huge);
        assert!(close(sq.ln().unwrap().to_f64(), 64_860.0));
        let sum = huge.add(&huge, &mut cc);
        let expect = 32_430.0 + core::f64::consts::LN_2;
        assert!(close(sum.ln().unwrap().to_f64(), expect));
        assert!(huge > LogReal::one());
        assert!(huge.neg() < LogReal::zero());
    }
}
