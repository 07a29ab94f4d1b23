//! Outward-rounded interval arithmetic.
//!
//! Every operation rounds the lower end toward −∞ and the upper end toward
//! +∞, so the result contains the exact image of any points drawn from the
//! operands. Elementary operations in [`astro_float`] are correctly rounded;
//! transcendental results are additionally pushed out by a few units in the
//! last place so that containment does not hinge on that property alone.

use alloc::string::String;
use core::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::hp::{big_to_f64, Real, EULER_GAMMA_DIGITS, PRECISION_BITS};
use crate::Error;

const P: usize = PRECISION_BITS;
const DN: RoundingMode = RoundingMode::Down;
const UP: RoundingMode = RoundingMode::Up;

#[derive(Clone, Debug)]
pub struct Interval {
    lo: BigFloat,
    hi: BigFloat,
}

fn bf(v: u64) -> BigFloat {
    BigFloat::from_u64(v, P)
}

fn bmin(a: BigFloat, b: BigFloat) -> BigFloat {
    if b.cmp(&a).is_some_and(|c| c < 0) {
        b
    } else {
        a
    }
}

fn bmax(a: BigFloat, b: BigFloat) -> BigFloat {
    if b.cmp(&a).is_some_and(|c| c > 0) {
        b
    } else {
        a
    }
}

/// Relative slack applied to transcendental results: 2^-(P-8).
fn slack(x: &BigFloat) -> BigFloat {
    let mut s = x.abs();
    if let Some(e) = s.exponent() {
        s.set_exponent(e - (P as i32 - 8));
    }
    s
}

fn push_down(x: BigFloat) -> BigFloat {
    if x.is_zero() {
        return x;
    }
    x.sub(&slack(&x), P, DN)
}

fn push_up(x: BigFloat) -> BigFloat {
    if x.is_zero() {
        return x;
    }
    x.add(&slack(&x), P, UP)
}

fn valid(lo: BigFloat, hi: BigFloat) -> Result<Interval, Error> {
    if lo.is_nan() || hi.is_nan() {
        return Err(Error::Domain("interval operation produced NaN"));
    }
    if lo.is_inf() || hi.is_inf() {
        return Err(Error::Domain("interval operation overflowed"));
    }
    Ok(Interval { lo, hi })
}

impl Interval {
    pub fn point_u64(v: u64) -> Self {
        let x = bf(v);
        Interval { lo: x.clone(), hi: x }
    }

    pub fn point_i64(v: i64) -> Self {
        let x = BigFloat::from_i64(v, P);
        Interval { lo: x.clone(), hi: x }
    }

    /// Exact enclosure of a finite `f64`.
    pub fn point_f64(v: f64) -> Self {
        let x = BigFloat::from_f64(v, P);
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Interval::point_u64(0)
    }

    pub fn one() -> Self {
        Interval::point_u64(1)
    }

    /// `[lo, hi]` from two `f64` endpoints.
    pub fn from_f64_bounds(lo: f64, hi: f64) -> Result<Self, Error> {
        if !(lo <= hi) {
            return Err(Error::Domain("interval endpoints out of order"));
        }
        valid(BigFloat::from_f64(lo, P), BigFloat::from_f64(hi, P))
    }

    /// Hull of two intervals.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: bmin(self.lo.clone(), other.lo.clone()), hi: bmax(self.hi.clone(), other.hi.clone()) }
    }

    /// Enclosure of `num / den`.
    pub fn ratio(num: i64, den: i64) -> Result<Self, Error> {
        Interval::point_i64(num).div(&Interval::point_i64(den))
    }

    /// Enclosure of a decimal literal.
    pub fn decimal(s: &str, cc: &mut Consts) -> Result<Self, Error> {
        let lo = BigFloat::parse(s, Radix::Dec, P, DN, cc);
        let hi = BigFloat::parse(s, Radix::Dec, P, UP, cc);
        valid(push_down(lo), push_up(hi))
    }

    pub fn pi(cc: &mut Consts) -> Self {
        Interval { lo: push_down(cc.pi(P, DN)), hi: push_up(cc.pi(P, UP)) }
    }

    pub fn e(cc: &mut Consts) -> Self {
        Interval { lo: push_down(cc.e(P, DN)), hi: push_up(cc.e(P, UP)) }
    }

    pub fn ln2(cc: &mut Consts) -> Self {
        Interval { lo: push_down(cc.ln_2(P, DN)), hi: push_up(cc.ln_2(P, UP)) }
    }

    pub fn ln10(cc: &mut Consts) -> Self {
        Interval { lo: push_down(cc.ln_10(P, DN)), hi: push_up(cc.ln_10(P, UP)) }
    }

    /// Euler's constant. The decimal expansion is truncated after 100
    /// places, so the enclosure is widened by one unit in that place.
    pub fn euler_gamma(cc: &mut Consts) -> Self {
        let g = Interval::decimal(EULER_GAMMA_DIGITS, cc).expect("valid literal");
        let unit = Interval::decimal("1e-100", cc).expect("valid literal");
        Interval { lo: g.lo.sub(&unit.hi, P, DN), hi: g.hi.add(&unit.hi, P, UP) }
    }

    pub fn lo(&self) -> Real {
        Real(self.lo.clone())
    }

    pub fn hi(&self) -> Real {
        Real(self.hi.clone())
    }

    /// Largest `f64` not above the lower end.
    pub fn lo_f64(&self) -> f64 {
        let x = big_to_f64(&self.lo);
        if BigFloat::from_f64(x, P).cmp(&self.lo).is_some_and(|c| c > 0) {
            next_down(x)
        } else {
            x
        }
    }

    /// Smallest `f64` not below the upper end.
    pub fn hi_f64(&self) -> f64 {
        let x = big_to_f64(&self.hi);
        if BigFloat::from_f64(x, P).cmp(&self.hi).is_some_and(|c| c < 0) {
            next_up(x)
        } else {
            x
        }
    }

    pub fn mid_f64(&self) -> f64 {
        let m = self.lo.add(&self.hi, P, RoundingMode::ToEven);
        big_to_f64(&m) / 2.0
    }

    pub fn width(&self) -> Real {
        Real(self.hi.sub(&self.lo, P, UP))
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64()
    }

    pub fn contains_f64(&self, v: f64) -> bool {
        let x = BigFloat::from_f64(v, P);
        self.contains_big(&x)
    }

    pub fn contains(&self, v: &Real) -> bool {
        self.contains_big(&v.0)
    }

    fn contains_big(&self, x: &BigFloat) -> bool {
        self.lo.cmp(x).is_some_and(|c| c <= 0) && x.cmp(&self.hi).is_some_and(|c| c <= 0)
    }

    /// Whether `other` lies inside `self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.contains_big(&other.lo) && self.contains_big(&other.hi)
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive() && !self.lo.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative() && !self.hi.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.add(&o.lo, P, DN), hi: self.hi.add(&o.hi, P, UP) }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.sub(&o.hi, P, DN), hi: self.hi.sub(&o.lo, P, UP) }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let mut lo = pairs[0].0.mul(pairs[0].1, P, DN);
        let mut hi = pairs[0].0.mul(pairs[0].1, P, UP);
        for (a, b) in &pairs[1..] {
            lo = bmin(lo, a.mul(b, P, DN));
            hi = bmax(hi, a.mul(b, P, UP));
        }
        Interval { lo, hi }
    }

    pub fn div(&self, o: &Interval) -> Result<Interval, Error> {
        if o.contains_zero() {
            return Err(Error::Domain("interval division by an interval containing zero"));
        }
        let pairs = [(&self.lo, &o.lo), (&self.lo, &o.hi), (&self.hi, &o.lo), (&self.hi, &o.hi)];
        let mut lo = pairs[0].0.div(pairs[0].1, P, DN);
        let mut hi = pairs[0].0.div(pairs[0].1, P, UP);
        for (a, b) in &pairs[1..] {
            lo = bmin(lo, a.div(b, P, DN));
            hi = bmax(hi, a.div(b, P, UP));
        }
        valid(lo, hi)
    }

    pub fn recip(&self) -> Result<Interval, Error> {
        Interval::one().div(self)
    }

    pub fn scale_u64(&self, k: u64) -> Interval {
        self.mul(&Interval::point_u64(k))
    }

    pub fn div_u64(&self, k: u64) -> Result<Interval, Error> {
        self.div(&Interval::point_u64(k))
    }

    pub fn abs(&self) -> Interval {
        if self.is_positive() || self.lo.is_zero() {
            self.clone()
        } else if self.is_negative() {
            self.neg()
        } else {
            Interval { lo: bf(0), hi: bmax(self.lo.abs(), self.hi.abs()) }
        }
    }

    pub fn min(&self, o: &Interval) -> Interval {
        Interval { lo: bmin(self.lo.clone(), o.lo.clone()), hi: bmin(self.hi.clone(), o.hi.clone()) }
    }

    pub fn max(&self, o: &Interval) -> Interval {
        Interval { lo: bmax(self.lo.clone(), o.lo.clone()), hi: bmax(self.hi.clone(), o.hi.clone()) }
    }

    /// Integer power; even powers of intervals straddling zero start at 0.
    pub fn powi(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::one();
        }
        let a = self.lo.powi(n as usize, P, DN);
        let b = self.hi.powi(n as usize, P, UP);
        if n % 2 == 1 || self.is_positive() || self.lo.is_zero() {
            // Monotone increasing on the whole interval.
            return Interval { lo: a, hi: b };
        }
        let la = self.lo.powi(n as usize, P, UP);
        let lb = self.hi.powi(n as usize, P, DN);
        if self.is_negative() {
            Interval { lo: lb, hi: la }
        } else {
            Interval { lo: bf(0), hi: bmax(la, b) }
        }
    }

    pub fn sqrt(&self) -> Result<Interval, Error> {
        if self.lo.is_negative() && !self.lo.is_zero() {
            return Err(Error::Domain("square root of an interval with negative part"));
        }
        valid(self.lo.sqrt(P, DN), self.hi.sqrt(P, UP))
    }

    pub fn exp(&self, cc: &mut Consts) -> Result<Interval, Error> {
        let lo = push_down(self.lo.exp(P, DN, cc));
        let hi = push_up(self.hi.exp(P, UP, cc));
        // exp is positive; pushing a tiny value down must not cross zero.
        let lo = if lo.is_negative() { bf(0) } else { lo };
        valid(lo, hi)
    }

    pub fn ln(&self, cc: &mut Consts) -> Result<Interval, Error> {
        if !self.is_positive() {
            return Err(Error::Domain("logarithm of an interval that is not strictly positive"));
        }
        valid(push_down(self.lo.ln(P, DN, cc)), push_up(self.hi.ln(P, UP, cc)))
    }

    /// `self^y` for strictly positive `self`.
    pub fn pow(&self, y: &Interval, cc: &mut Consts) -> Result<Interval, Error> {
        self.ln(cc)?.mul(y).exp(cc)
    }

    /// Bisects at the midpoint.
    pub fn split(&self) -> (Interval, Interval) {
        let m = self.lo.add(&self.hi, P, RoundingMode::ToEven);
        let mut m = m;
        if let Some(e) = m.exponent() {
            m.set_exponent(e - 1);
        }
        (Interval { lo: self.lo.clone(), hi: m.clone() }, Interval { lo: m, hi: self.hi.clone() })
    }

    /// Degenerate interval at the lower end.
    pub fn lower_point(&self) -> Interval {
        Interval { lo: self.lo.clone(), hi: self.lo.clone() }
    }

    /// Degenerate interval at the upper end.
    pub fn upper_point(&self) -> Interval {
        Interval { lo: self.hi.clone(), hi: self.hi.clone() }
    }

    /// Decimal rendering of both ends, rounded outward.
    pub fn to_decimal(&self, cc: &mut Consts) -> (String, String) {
        let lo = self.lo.format(Radix::Dec, DN, cc).unwrap_or_default();
        let hi = self.hi.format(Radix::Dec, UP, cc).unwrap_or_default();
        (lo, hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo_f64(), self.hi_f64())
    }
}

impl From<&Real> for Interval {
    fn from(v: &Real) -> Self {
        Interval { lo: v.0.clone(), hi: v.0.clone() }
    }
}

fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    if x > 0.0 {
        f64::from_bits(bits + 1)
    } else {
        f64::from_bits(bits - 1)
    }
}

fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::consts;

    #[test]
    fn ordering_across_magnitudes() {
        let small = Interval::point_f64(1e-9);
        let big = Interval::point_f64(1e9);
        let h = small.hull(&big);
        assert_eq!((h.lo_f64(), h.hi_f64()), (1e-9, 1e9));
        assert_eq!(big.min(&small).hi_f64(), 1e-9);
        assert_eq!(small.max(&big).lo_f64(), 1e9);
        let neg = Interval::point_f64(-3e5);
        assert_eq!(neg.hull(&small).lo_f64(), -3e5);
    }

    #[test]
    fn exact_small_sum() {
        let s = Interval::point_u64(1).add(&Interval::point_u64(2));
        assert!(s.contains_f64(3.0));
        assert!(s.width_f64() == 0.0);
    }

    #[test]
    fn constants_are_tight_and_correct() {
        let mut cc = consts();
        let pi = Interval::pi(&mut cc);
        assert!(pi.width_f64() < 1e-50);
        let pi60 = Real::parse("3.14159265358979323846264338327950288419716939937510582097494", &mut cc);
        let tol = Interval::decimal("1e-59", &mut cc).unwrap();
        let widened = Interval::from(&pi60).add(&tol.neg().hull(&tol));
        assert!(widened.encloses(&pi));
        let e = Interval::one().exp(&mut cc).unwrap();
        assert!((e.mid_f64() - core::f64::consts::E).abs() < 1e-15);
        let e_ref = Real::parse("2.71828182845904523536028747135266249775724709369995957496697", &mut cc);
        let e_tol = Interval::from(&e_ref).add(&tol.neg().hull(&tol));
        assert!(e_tol.encloses(&e));
        let g = Interval::euler_gamma(&mut cc);
        assert!(g.width_f64() < 1e-70);
        assert!((g.mid_f64() - 0.577_215_664_901_532_9).abs() < 1e-16);
    }

    #[test]
    fn division_by_zero_interval_rejected() {
        let z = Interval::from_f64_bounds(-1.0, 1.0).unwrap();
        assert!(Interval::one().div(&z).is_err());
        let mut cc = consts();
        assert!(z.ln(&mut cc).is_err());
    }

    #[test]
    fn even_power_of_straddling_interval() {
        let x = Interval::from_f64_bounds(-2.0, 1.0).unwrap();
        let y = x.powi(2);
        assert_eq!(y.lo_f64(), 0.0);
        assert_eq!(y.hi_f64(), 4.0);
        let z = Interval::from_f64_bounds(-3.0, -2.0).unwrap().powi(2);
        assert_eq!((z.lo_f64(), z.hi_f64()), (4.0, 9.0));
    }

    #[test]
    fn split_covers() {
        let x = Interval::from_f64_bounds(2.0, 3.0).unwrap();
        let (a, b) = x.split();
        assert_eq!(a.lo_f64(), 2.0);
        assert_eq!(a.hi_f64(), 2.5);
        assert_eq!(b.lo_f64(), 2.5);
        assert_eq!(b.hi_f64(), 3.0);
    }
}
