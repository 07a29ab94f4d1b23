//! Round-to-nearest high-precision reals.
//!
//! [`Real`] is a thin wrapper over [`BigFloat`] at a fixed working precision
//! of [`PRECISION_BITS`] bits (about 77 significant decimal digits, above the
//! 60 digits every bound evaluation is specified at). Transcendental
//! functions need a constants cache, passed explicitly as [`Consts`] so the
//! crate stays `no_std`.

use alloc::string::String;
use core::cmp::Ordering;
use core::ops::{Add, Div, Mul, Neg, Sub};

pub use astro_float::Consts;
use astro_float::{BigFloat, Radix, RoundingMode, Sign};

use crate::Error;

/// Working precision in bits for all high-precision arithmetic.
pub const PRECISION_BITS: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

/// A fresh constants cache.
pub fn consts() -> Consts {
    Consts::new().expect("constants cache allocation")
}

#[derive(Clone, Debug)]
pub struct Real(pub(crate) BigFloat);

impl Real {
    pub fn zero() -> Self {
        Real(BigFloat::from_u8(0, PRECISION_BITS))
    }

    pub fn one() -> Self {
        Real(BigFloat::from_u8(1, PRECISION_BITS))
    }

    pub fn from_u64(v: u64) -> Self {
        Real(BigFloat::from_u64(v, PRECISION_BITS))
    }

    pub fn from_i64(v: i64) -> Self {
        Real(BigFloat::from_i64(v, PRECISION_BITS))
    }

    pub fn from_u128(v: u128) -> Self {
        Real(BigFloat::from_u128(v, PRECISION_BITS))
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64) -> Self {
        Real(BigFloat::from_f64(v, PRECISION_BITS))
    }

    /// `num / den`, rounded to nearest.
    pub fn ratio(num: i64, den: i64) -> Self {
        Real::from_i64(num) / Real::from_i64(den)
    }

    /// Parses a decimal literal such as `"1.38402"`.
    pub fn parse(s: &str, cc: &mut Consts) -> Self {
        Real(BigFloat::parse(s, Radix::Dec, PRECISION_BITS, RM, cc))
    }

    pub fn from_biguint(v: &num_bigint::BigUint) -> Self {
        v.to_u64_digits().iter().rev().fold(Real::zero(), |acc, &d| acc * Real::from_u128(1u128 << 64) + Real::from_u64(d))
    }

    pub fn from_ratio(v: &num_rational::Ratio<num_bigint::BigUint>) -> Self {
        Real::from_biguint(v.numer()) / Real::from_biguint(v.denom())
    }

    pub fn pi(cc: &mut Consts) -> Self {
        Real(cc.pi(PRECISION_BITS, RM))
    }

    pub fn e(cc: &mut Consts) -> Self {
        Real(cc.e(PRECISION_BITS, RM))
    }

    pub fn ln2(cc: &mut Consts) -> Self {
        Real(cc.ln_2(PRECISION_BITS, RM))
    }

    pub fn ln10(cc: &mut Consts) -> Self {
        Real(cc.ln_10(PRECISION_BITS, RM))
    }

    /// Euler's constant, from its decimal expansion.
    pub fn euler_gamma(cc: &mut Consts) -> Self {
        Real::parse(EULER_GAMMA_DIGITS, cc)
    }

    pub fn inner(&self) -> &BigFloat {
        &self.0
    }

    pub fn is_nan(&self) -> bool {
        self.0.is_nan()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.0.is_zero() && self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        !self.0.is_zero() && self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Real(self.0.reciprocal(PRECISION_BITS, RM))
    }

    pub fn sqrt(&self) -> Result<Self, Error> {
        if self.is_negative() {
            return Err(Error::Domain("square root of a negative number"));
        }
        checked(self.0.sqrt(PRECISION_BITS, RM))
    }

    pub fn ln(&self, cc: &mut Consts) -> Result<Self, Error> {
        if !self.is_positive() {
            return Err(Error::Domain("logarithm of a non-positive number"));
        }
        checked(self.0.ln(PRECISION_BITS, RM, cc))
    }

    pub fn exp(&self, cc: &mut Consts) -> Result<Self, Error> {
        checked(self.0.exp(PRECISION_BITS, RM, cc))
    }

    /// `self^y` for positive `self`.
    pub fn powf(&self, y: &Real, cc: &mut Consts) -> Result<Self, Error> {
        if self.is_zero() && y.is_positive() {
            return Ok(Real::zero());
        }
        (self.ln(cc)? * y.clone()).exp(cc)
    }

    pub fn powi(&self, n: u32) -> Self {
        Real(self.0.powi(n as usize, PRECISION_BITS, RM))
    }

    pub fn floor(&self) -> Self {
        Real(self.0.floor())
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Nearest `f64`; saturates to infinities and flushes tiny values to zero.
    pub fn to_f64(&self) -> f64 {
        big_to_f64(&self.0)
    }

    /// Largest integer not above `self`, when it fits in a `u128`.
    pub fn floor_u128(&self) -> Option<u128> {
        if self.is_negative() || !self.is_finite() {
            return None;
        }
        let f = self.0.floor();
        if f.is_zero() {
            return Some(0);
        }
        let (words, _, _, exp, _) = f.as_raw_parts()?;
        if exp <= 0 {
            return Some(0);
        }
        if exp > 128 {
            return None;
        }
        // Top 128 bits of the mantissa, shifted into place.
        let top = *words.last()? as u128;
        let next = if words.len() >= 2 { words[words.len() - 2] as u128 } else { 0 };
        let mant = (top << 64) | next;
        Some(mant >> (128 - exp as u32))
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize, cc: &mut Consts) -> String {
        let bits = ((digits as f64) * 3.33).ceil() as usize + 8;
        let mut v = self.0.clone();
        if v.set_precision(bits.max(64), RM).is_err() {
            return String::from("NaN");
        }
        v.format(Radix::Dec, RM, cc).unwrap_or_else(|_| String::from("NaN"))
    }
}

pub(crate) fn checked(v: BigFloat) -> Result<Real, Error> {
    if v.is_nan() {
        Err(Error::Domain("high-precision operation produced NaN"))
    } else if v.is_inf() {
        Err(Error::Domain("high-precision operation overflowed"))
    } else {
        Ok(Real(v))
    }
}

/// Nearest `f64` to a [`BigFloat`].
pub(crate) fn big_to_f64(v: &BigFloat) -> f64 {
    if v.is_nan() {
        return f64::NAN;
    }
    if v.is_inf_pos() {
        return f64::INFINITY;
    }
    if v.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if v.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, exp, _)) = v.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *words.last().unwrap_or(&0);
    // value = 0.m * 2^exp, top word holds the leading 64 bits of m
    let magnitude = if exp > 1100 {
        f64::INFINITY
    } else if exp < -1200 {
        0.0
    } else {
        libm::ldexp(top as f64, exp - 64)
    };
    if sign == Sign::Neg {
        -magnitude
    } else {
        magnitude
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $call:ident) => {
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                Real(self.0.$call(&rhs.0, PRECISION_BITS, RM))
            }
        }
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real(self.0.$call(&rhs.0, PRECISION_BITS, RM))
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real(self.0.$call(&rhs.0, PRECISION_BITS, RM))
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                Real(self.0.$call(&rhs.0, PRECISION_BITS, RM))
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.neg())
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.clone().neg())
    }
}

impl From<u32> for Real {
    fn from(v: u32) -> Self {
        Real::from_u64(u64::from(v))
    }
}

/// Euler's constant to 100 decimal places.
pub(crate) const EULER_GAMMA_DIGITS: &str =
    "0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495";
