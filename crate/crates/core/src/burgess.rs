//! Explicit Burgess bounds for composite moduli.
//!
//! Everything that can grow with `q` is carried as a natural log in a
//! 256-bit [`Real`] or as a [`LogReal`]. A [`BoundContext`] fixes `q` (exactly
//! factored, or only through `log q`), `r`, the variant and `C`, and caches
//! the quantities that do not depend on `N`.
//!
//! In surrogate mode the factorization-dependent quantities are replaced by
//! explicit upper bounds in terms of `L = log q` and `LL = log log q`:
//!
//! * `omega(q) <= 1.38402 L / LL`
//! * `tau(q) <= 2^(1.5379 L / LL)`, hence `m_r(q) <= (tau(q)/2)^(2r-1)`
//! * `q/phi(q) <= e^gamma LL + 2.50637 / LL`

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::arithmetic::FactoredInteger;
use crate::hp::{Consts, Real};
use crate::logreal::LogReal;
use crate::report::Param;
use crate::Error;

/// `delta = 6/pi^2 - 36 zeta'(2)/pi^4` to 60 digits. The certify module
/// encloses it independently.
pub const DELTA_DIGITS: &str = "0.954421836555828842009437596126074984975051912237520991724742";

/// `C(r)` and `D(r)` as printed, for `r = 2..=10`.
pub const TABLE1_PRINTED: [(u32, f64, f64); 9] = [
    (2, 15.219, 8.362),
    (3, 5.359, 4.581),
    (4, 3.671, 3.396),
    (5, 2.953, 2.811),
    (6, 2.549, 2.462),
    (7, 2.290, 2.229),
    (8, 2.108, 2.063),
    (9, 1.973, 1.938),
    (10, 1.869, 1.841),
];

const OMEGA_SURROGATE: &str = "1.38402";
const TAU_SURROGATE: &str = "1.5379";
const MERTENS_SURROGATE: &str = "2.50637";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Exponent `1/(2r) - 1/(2r^2)` on `(4r)^omega m_r`, threshold `exp(exp(a(r)))`.
    Theorem1,
    /// Exponent `1/(2r)`, threshold `2^(4r-2)`.
    Theorem2,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Theorem1 => "thm1",
            Variant::Theorem2 => "thm2",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "thm1" | "1" | "theorem1" => Some(Variant::Theorem1),
            "thm2" | "2" | "theorem2" => Some(Variant::Theorem2),
            _ => None,
        }
    }
}

/// `N` as an integer or as `q^theta`.
#[derive(Clone, Debug)]
pub enum LengthInput {
    Exact(u128),
    Theta(Real),
}

fn ln_u64(v: u64, cc: &mut Consts) -> Result<Real, Error> {
    Real::from_u64(v).ln(cc)
}

fn ln_factorial(r: u32, cc: &mut Consts) -> Result<Real, Error> {
    let f: BigUint = (1..=u64::from(r)).product();
    Real::from_biguint(&f).ln(cc)
}

fn rr(r: u32) -> Real {
    Real::from_u64(u64::from(r))
}

/// `a(r) = 2 log 2 (3.0758 r + 1.38402 log(4r) - 1.5379)`.
pub fn a_of_r(r: u32, cc: &mut Consts) -> Result<Real, Error> {
    check_r(r)?;
    let inner = Real::parse("3.0758", cc) * rr(r) + Real::parse(OMEGA_SURROGATE, cc) * ln_u64(4 * u64::from(r), cc)?
        - Real::parse(TAU_SURROGATE, cc);
    Ok(Real::from_u64(2) * Real::ln2(cc) * inner)
}

fn check_r(r: u32) -> Result<(), Error> {
    if r < 2 {
        Err(Error::InvalidParameter("r must be at least 2"))
    } else {
        Ok(())
    }
}

/// `1145 log 10`.
pub fn base_threshold_log_q(cc: &mut Consts) -> Real {
    Real::from_u64(1145) * Real::ln10(cc)
}

/// `log t_i(r)`: `exp(a(r))` for the first variant, `(4r-2) log 2` for the second.
pub fn variant_threshold_log_q(r: u32, variant: Variant, cc: &mut Consts) -> Result<Real, Error> {
    match variant {
        Variant::Theorem1 => a_of_r(r, cc)?.exp(cc),
        Variant::Theorem2 => Ok(Real::from_u64(4 * u64::from(r) - 2) * Real::ln2(cc)),
    }
}

/// The smallest admissible `q`, as a [`LogReal`] holding `log q`.
pub fn threshold_log_q(r: u32, variant: Variant, cc: &mut Consts) -> Result<LogReal, Error> {
    let t = variant_threshold_log_q(r, variant, cc)?.max(base_threshold_log_q(cc));
    Ok(LogReal::from_real(&t, cc))
}

/// `2^(2-2/r) r^2 ((1-1/r)/r!)^(1/r)`.
pub fn b_min(r: u32, cc: &mut Consts) -> Result<Real, Error> {
    check_r(r)?;
    let rf = rr(r);
    let ln = (Real::from_u64(2) - Real::from_u64(2) / rf.clone()) * Real::ln2(cc)
        + Real::from_u64(2) * rf.ln(cc)?
        + (ln_u64(u64::from(r) - 1, cc)? - rf.ln(cc)? - ln_factorial(r, cc)?) / rf;
    ln.exp(cc)
}

/// `kappa = ((B-1) B^(1-1/r) / (2r (B+1)^(2-1/r)))^(r/(r-1))`, evaluated as
/// `((1-1/B) (1+1/B)^(-(2-1/r)) / (2r))^(r/(r-1))` so huge `B` is harmless.
pub fn kappa(b: &LogReal, r: u32, cc: &mut Consts) -> Result<Real, Error> {
    check_r(r)?;
    let ln_b = b.ln()?;
    if !ln_b.is_positive() {
        return Err(Error::Domain("kappa needs B > 1"));
    }
    let inv_b = (-ln_b).exp(cc)?;
    let rf = rr(r);
    let two_minus = Real::from_u64(2) - Real::one() / rf.clone();
    let ln_inner = (Real::one() - inv_b.clone()).ln(cc)? - two_minus * (Real::one() + inv_b).ln(cc)? - ln_u64(2 * u64::from(r), cc)?;
    (ln_inner * rf.clone() / (rf - Real::one())).exp(cc)
}

/// `(1/(2r))^(r/(r-1))`, the limit of `kappa` as `B` grows.
pub fn kappa_limit(r: u32, cc: &mut Consts) -> Result<Real, Error> {
    check_r(r)?;
    let rf = rr(r);
    (-ln_u64(2 * u64::from(r), cc)? * rf.clone() / (rf - Real::one())).exp(cc)
}

/// `K(r)`: the `kappa`-free factor shared by `C(r)` and `D(r)`.
fn k_factor(r: u32, cc: &mut Consts) -> Result<Real, Error> {
    let rf = rr(r);
    let r2 = rf.clone() * rf.clone();
    let two = Real::from_u64(2);
    let ln = (Real::from_u64(5) / (two.clone() * rf.clone()) - Real::one() / (two.clone() * r2.clone())) * Real::ln2(cc)
        - ln_u64(3, cc)? / (two.clone() * rf.clone())
        - ln_factorial(r, cc)? / (two.clone() * r2.clone())
        + (Real::one() / (two.clone() * r2.clone()) - Real::one() / (two.clone() * rf.clone())) * ln_u64(u64::from(r) - 1, cc)?
        + (two.clone() / rf.clone() - Real::one() / (two * r2)) * rf.ln(cc)?;
    ln.exp(cc)
}

/// Lower bound on `C` for a given `B`, from the final inequality of the proof.
pub fn c_required(b: &Real, r: u32, cc: &mut Consts) -> Result<Real, Error> {
    let rf = rr(r);
    let kap = kappa(&LogReal::from_real(b, cc), r, cc)?;
    let num = k_factor(r, cc)? * kap.powf(&(-(Real::one() / (Real::from_u64(2) * rf.clone()))), cc)?;
    let two_minus = Real::from_u64(2) - Real::one() / rf.clone();
    let s_part = Real::from_u64(2) * kap.powf(&(Real::one() - Real::one() / rf), cc)? / two_minus.clone()
        * ((b.clone() + Real::one()) / b.clone()).powf(&two_minus, cc)?;
    let den = (b.clone() - Real::one()) / b.clone() - s_part;
    if !den.is_positive() {
        return Err(Error::Domain("C denominator is not positive"));
    }
    Ok(num / den)
}

/// Unrounded `C(r)`: [`c_required`] at `B = b_min(r)`.
pub fn c_of_r(r: u32, cc: &mut Consts) -> Result<Real, Error> {
    c_required(&b_min(r, cc)?, r, cc)
}

/// Unrounded `D(r) = K(r) (2r)^(1/(2r-2)) / (1 - 1/(2r-1))`.
pub fn d_of_r(r: u32, cc: &mut Consts) -> Result<Real, Error> {
    check_r(r)?;
    let two_r = 2 * u64::from(r);
    let grow = (ln_u64(two_r, cc)? / Real::from_u64(two_r - 2)).exp(cc)?;
    let den = Real::one() - Real::ratio(1, two_r as i64 - 1);
    Ok(k_factor(r, cc)? * grow / den)
}

/// Rounds up to three decimals.
pub fn ceil3(x: &Real) -> f64 {
    let scaled = x.clone() * Real::from_u64(1000);
    let up = -(-scaled).floor();
    (up / Real::from_u64(1000)).to_f64()
}

/// The table value of `C(r)`: `C(min(r, 10))` rounded up.
pub fn table_c(r: u32, cc: &mut Consts) -> Result<f64, Error> {
    Ok(ceil3(&c_of_r(r.min(10), cc)?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub r: u32,
    pub c_raw: f64,
    pub d_raw: f64,
    pub c: f64,
    pub d: f64,
    pub printed_c: f64,
    pub printed_d: f64,
}

impl Table1Row {
    pub fn max_abs_diff(&self) -> f64 {
        libm::fabs(self.c - self.printed_c).max(libm::fabs(self.d - self.printed_d))
    }
}

/// Recomputes `C(r)` and `D(r)` for `r = 2..=10`.
pub fn table1(cc: &mut Consts) -> Result<Vec<Table1Row>, Error> {
    TABLE1_PRINTED
        .iter()
        .map(|&(r, pc, pd)| {
            let c = c_of_r(r, cc)?;
            let d = d_of_r(r, cc)?;
            Ok(Table1Row { r, c_raw: c.to_f64(), d_raw: d.to_f64(), c: ceil3(&c), d: ceil3(&d), printed_c: pc, printed_d: pd })
        })
        .collect()
}

/// `s = 2C kappa^(1-1/r)/(2-1/r) ((B+1)/B)^(2-1/r)`.
pub fn s_factor(c: &Real, kappa: &Real, b: &LogReal, r: u32, cc: &mut Consts) -> Result<Real, Error> {
    let rf = rr(r);
    let two_minus = Real::from_u64(2) - Real::one() / rf.clone();
    let inv_b = (-b.ln()?).exp(cc)?;
    Ok(Real::from_u64(2) * c.clone() * kappa.powf(&(Real::one() - Real::one() / rf), cc)? / two_minus.clone()
        * (Real::one() + inv_b).powf(&two_minus, cc)?)
}

/// Quantities fixed by `q`, `r` and the variant.
#[derive(Clone, Debug)]
pub struct Derived {
    pub a_r: Real,
    pub threshold_log_q: Real,
    /// `log((4r)^omega m_r)`, or its surrogate upper bound.
    pub ln_x: Real,
    /// `log 2^omega`, or its surrogate upper bound.
    pub ln_two_pow_omega: Real,
    /// `log(q/phi(q))`, or its surrogate upper bound.
    pub ln_q_over_phi: Real,
    pub b: LogReal,
    /// `None` when `B <= 1`.
    pub kappa: Option<Real>,
    pub ln_beta: Real,
    pub ln_t: Real,
    pub f: LogReal,
}

#[derive(Clone, Debug)]
pub struct BoundContext {
    r: u32,
    q_exact: Option<FactoredInteger>,
    log_q: Real,
    variant: Variant,
    c: Real,
    derived: Derived,
}

impl BoundContext {
    /// Exact mode: `omega`, `m_r` and `phi` come from the factorization.
    pub fn exact(q: FactoredInteger, r: u32, variant: Variant, cc: &mut Consts) -> Result<Self, Error> {
        check_r(r)?;
        if q.value() < 2 {
            return Err(Error::InvalidParameter("q must be at least 2"));
        }
        let log_q = ln_u64(q.value(), cc)?;
        let ln_m = Real::from_ratio(&q.m_r(r)).ln(cc)?;
        let omega = Real::from_u64(u64::from(q.omega()));
        let ln_x = omega.clone() * ln_u64(4 * u64::from(r), cc)? + ln_m;
        let ln_two_pow_omega = omega * Real::ln2(cc);
        let ln_q_over_phi = (Real::from_u64(q.value()) / Real::from_u64(q.euler_phi())).ln(cc)?;
        Self::build(r, Some(q), log_q, variant, ln_x, ln_two_pow_omega, ln_q_over_phi, cc)
    }

    /// Surrogate mode from `log q` alone.
    pub fn surrogate(log_q: Real, r: u32, variant: Variant, cc: &mut Consts) -> Result<Self, Error> {
        check_r(r)?;
        if !(log_q > Real::one()) {
            return Err(Error::InvalidParameter("surrogate mode needs log q > 1"));
        }
        let ll = log_q.ln(cc)?;
        let ratio = log_q.clone() / ll.clone();
        let omega_bound = Real::parse(OMEGA_SURROGATE, cc) * ratio.clone();
        let ln_x = omega_bound.clone() * ln_u64(4 * u64::from(r), cc)?
            + Real::from_u64(2 * u64::from(r) - 1) * Real::ln2(cc) * (Real::parse(TAU_SURROGATE, cc) * ratio - Real::one());
        let ln_two_pow_omega = omega_bound * Real::ln2(cc);
        let mertens = Real::euler_gamma(cc).exp(cc)? * ll.clone() + Real::parse(MERTENS_SURROGATE, cc) / ll;
        let ln_q_over_phi = mertens.ln(cc)?.max(Real::zero());
        Self::build(r, None, log_q, variant, ln_x, ln_two_pow_omega, ln_q_over_phi, cc)
    }

    #[allow(clippy::too_many_arguments)]
    fn build(
        r: u32,
        q_exact: Option<FactoredInteger>,
        log_q: Real,
        variant: Variant,
        ln_x: Real,
        ln_two_pow_omega: Real,
        ln_q_over_phi: Real,
        cc: &mut Consts,
    ) -> Result<Self, Error> {
        let rf = rr(r);
        let two_r = Real::from_u64(2 * u64::from(r));
        let a_r = a_of_r(r, cc)?;
        let threshold = variant_threshold_log_q(r, variant, cc)?.max(base_threshold_log_q(cc));
        // log of ((r-1)/(r! 2r))^(1/r), shared by both B candidates
        let ln_base = (ln_u64(u64::from(r) - 1, cc)? - ln_factorial(r, cc)? - two_r.ln(cc)?) / rf.clone();
        let ln_beta = match variant {
            Variant::Theorem1 => ln_base - ln_x.clone() / rf.clone(),
            Variant::Theorem2 => ln_base,
        };
        let ln_b = Real::from_u64(2) * rf.ln(cc)? + log_q.clone() / two_r.clone() + ln_beta.clone();
        let b = LogReal::from_ln(ln_b.clone());
        let kappa = if ln_b.is_positive() { Some(kappa(&b, r, cc)?) } else { None };
        let t_exp = match variant {
            Variant::Theorem1 => Real::one() / two_r.clone() - Real::one() / (two_r.clone() * rf.clone()),
            Variant::Theorem2 => Real::one() / two_r.clone(),
        };
        let ln_t = t_exp * ln_x.clone() + ln_q_over_phi.clone() / rf.clone();
        let f = match variant {
            Variant::Theorem1 => LogReal::from_real(&rf, cc),
            Variant::Theorem2 => LogReal::from_ln(ln_x.clone() + ln_u64(u64::from(r) - 1, cc)?).add(&LogReal::one(), cc),
        };
        let derived = Derived { a_r, threshold_log_q: threshold, ln_x, ln_two_pow_omega, ln_q_over_phi, b, kappa, ln_beta, ln_t, f };
        let c = Real::from_f64(table_c(r, cc)?);
        Ok(BoundContext { r, q_exact, log_q, variant, c, derived })
    }

    /// Replaces `C`, which defaults to the rounded table value.
    pub fn with_c(mut self, c: Real) -> Self {
        self.c = c;
        self
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q_exact(&self) -> Option<&FactoredInteger> {
        self.q_exact.as_ref()
    }

    pub fn log_q(&self) -> &Real {
        &self.log_q
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn is_surrogate(&self) -> bool {
        self.q_exact.is_none()
    }

    pub fn mode(&self) -> &'static str {
        if self.is_surrogate() {
            "surrogate"
        } else {
            "exact"
        }
    }

    pub fn c(&self) -> &Real {
        &self.c
    }

    pub fn derived(&self) -> &Derived {
        &self.derived
    }

    /// `B_1` or `B_2`.
    pub fn b_candidate(&self) -> &LogReal {
        &self.derived.b
    }

    /// `T_1(q)` or `T_2(q)`.
    pub fn t_factor(&self) -> LogReal {
        LogReal::from_ln(self.derived.ln_t.clone())
    }

    /// `phi(q)/q`, or its surrogate lower bound.
    pub fn phi_star(&self, cc: &mut Consts) -> Result<Real, Error> {
        (-self.derived.ln_q_over_phi.clone()).exp(cc)
    }

    pub fn ln_n(&self, n: &LengthInput, cc: &mut Consts) -> Result<Real, Error> {
        match n {
            LengthInput::Exact(0) => Err(Error::InvalidParameter("N must be at least 1")),
            LengthInput::Exact(v) => Real::from_u128(*v).ln(cc),
            LengthInput::Theta(t) => Ok(t.clone() * self.log_q.clone()),
        }
    }

    /// `(B >= b_min(r))` when `q` is above `t_i(r)`, and `B <= e r q^(1/(2r))`.
    pub fn check_b_bounds(&self, cc: &mut Consts) -> Result<(Option<bool>, bool), Error> {
        let ln_b = self.derived.b.ln()?;
        let above = self.log_q >= variant_threshold_log_q(self.r, self.variant, cc)?;
        let lower = if above { Some(ln_b >= b_min(self.r, cc)?.ln(cc)?) } else { None };
        let ceiling = Real::one() + rr(self.r).ln(cc)? + self.log_q.clone() / Real::from_u64(2 * u64::from(self.r));
        Ok((lower, ln_b <= ceiling))
    }

    /// Parameters echoed into reports.
    pub fn describe(&self) -> Vec<(String, Param)> {
        let d = &self.derived;
        let mut out: Vec<(String, Param)> = vec![("r".to_string(), self.r.into()), ("variant".to_string(), self.variant.as_str().into())];
        if let Some(q) = &self.q_exact {
            out.push(("q".to_string(), q.value().into()));
        }
        out.extend([
            ("log_q".to_string(), self.log_q.to_f64().into()),
            ("C".to_string(), self.c.to_f64().into()),
            ("a_r".to_string(), d.a_r.to_f64().into()),
            ("threshold_log_q".to_string(), d.threshold_log_q.to_f64().into()),
            ("log_B".to_string(), d.b.ln_abs().map_or(f64::NAN, Real::to_f64).into()),
            ("kappa".to_string(), d.kappa.as_ref().map_or(f64::NAN, Real::to_f64).into()),
            ("log_beta".to_string(), d.ln_beta.to_f64().into()),
            ("log_T".to_string(), d.ln_t.to_f64().into()),
            ("log_f".to_string(), d.f.ln_abs().map_or(f64::NAN, Real::to_f64).into()),
            ("log_q_over_phi".to_string(), d.ln_q_over_phi.to_f64().into()),
        ]);
        out
    }
}

#[derive(Clone, Debug)]
pub struct BoundEvaluation {
    pub ln_n: Real,
    pub bound: LogReal,
    pub applicable: bool,
    pub reasons: Vec<String>,
    pub notes: Vec<String>,
}

impl BoundEvaluation {
    pub fn log10_bound(&self, cc: &mut Consts) -> f64 {
        self.bound.log10(cc).map_or(f64::NAN, |v| v.to_f64())
    }
}

/// `log` of the bound `C N^(1-1/r) q^((r+1)/(4r^2)) (log q)^(1/(2r)) T_i(q)`.
pub fn bound_ln(ctx: &BoundContext, ln_n: &Real, cc: &mut Consts) -> Result<Real, Error> {
    let rf = rr(ctx.r);
    let r2 = rf.clone() * rf.clone();
    Ok(ctx.c.ln(cc)?
        + (Real::one() - Real::one() / rf.clone()) * ln_n.clone()
        + (rf.clone() + Real::one()) / (Real::from_u64(4) * r2) * ctx.log_q.clone()
        + ctx.log_q.ln(cc)? / (Real::from_u64(2) * rf)
        + ctx.derived.ln_t.clone())
}

/// Evaluates the bound and records why it may not apply.
pub fn evaluate_bound(ctx: &BoundContext, n: &LengthInput, cc: &mut Consts) -> Result<BoundEvaluation, Error> {
    let ln_n = ctx.ln_n(n, cc)?;
    if ln_n.is_negative() {
        return Err(Error::InvalidParameter("N must be at least 1"));
    }
    let bound = LogReal::from_ln(bound_ln(ctx, &ln_n, cc)?);
    let mut reasons = Vec::new();
    let mut notes = Vec::new();
    if ctx.log_q < base_threshold_log_q(cc) {
        reasons.push("below 10^1145 threshold".to_string());
    }
    if ctx.log_q < variant_threshold_log_q(ctx.r, ctx.variant, cc)? {
        reasons.push(match ctx.variant {
            Variant::Theorem1 => "below exp(exp(a(r))) threshold".to_string(),
            Variant::Theorem2 => "below 2^(4r-2) threshold".to_string(),
        });
    }
    match &ctx.q_exact {
        Some(q) if ctx.r >= 3 && !q.is_cubefree() => reasons.push(format!("q = {} is not cubefree and r >= 3", q.value())),
        None if ctx.r >= 3 => notes.push("surrogate mode: q is assumed cubefree".to_string()),
        _ => {}
    }
    if ctx.derived.kappa.is_none() {
        notes.push("B <= 1, so kappa and the proof quantities are undefined".to_string());
    }
    let rf = rr(ctx.r);
    let base_exp = Real::ratio(1, 4) + Real::one() / (Real::from_u64(4) * rf);
    if ln_n <= base_exp * ctx.log_q.clone() {
        notes.push("N <= q^(1/4 + 1/(4r)): trivial-regime base case".to_string());
    }
    if ln_n > Real::ratio(2, 3) * ctx.log_q.clone() {
        notes.push("N > q^(2/3): the Polya-Vinogradov inequality is stated to be better here (not evaluated)".to_string());
    }
    Ok(BoundEvaluation { ln_n, bound, applicable: reasons.is_empty(), reasons, notes })
}

/// The earlier explicit bound `9.07 sqrt(N) q^(3/16) (log q)^(1/4) (2^omega tau)^(3/4) (q/phi)^(1/2)`,
/// valid for `q >= exp(exp(9.594))` and `N <= q^(5/8)`.
pub fn theorem_a_comparison(ctx: &BoundContext, ln_n: &Real, cc: &mut Consts) -> Result<(LogReal, bool), Error> {
    let ln_tau = match &ctx.q_exact {
        Some(q) => ln_u64(q.tau(), cc)?,
        None => Real::parse(TAU_SURROGATE, cc) * Real::ln2(cc) * ctx.log_q.clone() / ctx.log_q.ln(cc)?,
    };
    let ln = Real::parse("9.07", cc).ln(cc)?
        + ln_n.clone() / Real::from_u64(2)
        + Real::ratio(3, 16) * ctx.log_q.clone()
        + ctx.log_q.ln(cc)? / Real::from_u64(4)
        + Real::ratio(3, 4) * (ctx.derived.ln_two_pow_omega.clone() + ln_tau)
        + ctx.derived.ln_q_over_phi.clone() / Real::from_u64(2);
    let applicable = ctx.log_q >= Real::parse("9.594", cc).exp(cc)? && *ln_n <= Real::ratio(5, 8) * ctx.log_q.clone();
    Ok((LogReal::from_ln(ln), applicable))
}

/// The proof quantities for one `(N, A, B)`.
#[derive(Clone, Debug)]
pub struct BurgessIntermediates {
    pub u: LogReal,
    pub w: LogReal,
    pub s: Real,
    pub alpha: Real,
    pub p: LogReal,
    pub q: LogReal,
    pub beta: LogReal,
    /// `#{1 <= a <= A : gcd(a, q) = 1}`, or the lower bound `A phi* - 2^(omega-1)`.
    pub count_a: LogReal,
    pub count_a_exact: bool,
    /// The bound of the set-up lemma,
    /// `B/(B-1) N^(1-1/r) q^((r+1)/(4r^2)) (log q)^(1/(2r)) (u (alpha w)^(1/(2r)) + s T)`.
    pub setup_bound: LogReal,
    /// `alpha <= (4/3) kappa log q`, when `q >= max(10^1145, (10r)^18, t_i(r))`.
    pub alpha_bound_holds: Option<bool>,
}

/// `log A` for `A = kappa N / B`.
pub fn ln_a(ctx: &BoundContext, ln_n: &Real, cc: &mut Consts) -> Result<Real, Error> {
    let kap = ctx.derived.kappa.as_ref().ok_or(Error::Domain("kappa is undefined for B <= 1"))?;
    Ok(kap.ln(cc)? + ln_n.clone() - ctx.derived.b.ln()?)
}

/// Evaluates `u, w, s, alpha, P, Q` for the given `N`, `A` and `B`, after
/// checking `A B = kappa N` to relative accuracy `1e-6`.
pub fn intermediates(ctx: &BoundContext, ln_n: &Real, ln_a: &Real, ln_b: &Real, cc: &mut Consts) -> Result<BurgessIntermediates, Error> {
    let kap = ctx.derived.kappa.clone().ok_or(Error::Domain("kappa is undefined for B <= 1"))?;
    let deviation = (ln_a.clone() + ln_b.clone() - kap.ln(cc)? - ln_n.clone()).to_f64();
    if !(libm::fabs(deviation) <= 1e-6) {
        return Err(Error::Inconsistent { relative_deviation: deviation });
    }
    if !ln_a.is_positive() {
        return Err(Error::Domain("A must exceed 1"));
    }
    let r = ctx.r;
    let rf = rr(r);
    let two_r = Real::from_u64(2 * u64::from(r));
    let big_l = ctx.log_q.clone();
    let a = ln_a.exp(cc)?;
    let b = ln_b.exp(cc)?;
    let phi_star = ctx.phi_star(cc)?;

    let (count_a, count_a_exact) = match (&ctx.q_exact, a.floor_u128()) {
        (Some(q), Some(fa)) if fa <= u128::from(u64::MAX) => {
            let c = q.coprime_count_up_to(fa as u64);
            if c == 0 {
                return Err(Error::Domain("no residue up to A is coprime to q"));
            }
            (LogReal::from_u64(c, cc), true)
        }
        _ => {
            let half = (ctx.derived.ln_two_pow_omega.clone() - Real::ln2(cc)).exp(cc)?;
            let lower = a.clone() * phi_star.clone() - half;
            if !lower.is_positive() {
                return Err(Error::Domain("A phi* - 2^(omega-1) is not positive"));
            }
            (LogReal::from_real(&lower, cc), false)
        }
    };

    let ln_u = (ln_n.clone() - count_a.ln()?) / rf.clone() - big_l.clone() / (two_r.clone() * rf.clone());
    let ln_beta = ln_b.clone() - Real::from_u64(2) * rf.ln(cc)? - big_l.clone() / two_r.clone();
    let ln_w = ctx.derived.f.ln()?
        - Real::from_u64(2) * rf.ln(cc)?
        - (rf.clone() + Real::one()) * ln_beta.clone()
        - ln_factorial(r, cc)?
        - big_l.ln(cc)?;
    let s = s_factor(&ctx.c, &kap, &LogReal::from_ln(ln_b.clone()), r, cc)?;

    let half_two_omega = (ctx.derived.ln_two_pow_omega.clone() - Real::ln2(cc)).exp(cc)?;
    let b_over_n = (ln_b.clone() - ln_n.clone()).exp(cc)?;
    let first = kap.clone() * phi_star.clone() + b_over_n * half_two_omega;
    let six_over_pi2 = Real::from_u64(6) / (Real::pi(cc) * Real::pi(cc));
    let delta = Real::parse(DELTA_DIGITS, cc);
    let tail = (Real::from_u64(2) * ln_a.clone() + Real::from_u64(2)) / (a - Real::one());
    let alpha = first.clone() * first / b.clone() + Real::from_u64(2) * kap.clone() * (six_over_pi2 * ln_a.clone() + delta + tail);
    let ln_alpha = alpha.ln(cc)?;
    let p = LogReal::from_ln(Real::from_u64(2) * ln_n.clone() + ln_alpha.clone() - ln_b.clone());

    let q_first =
        LogReal::from_ln(two_r.ln(cc)? + ctx.derived.ln_x.clone() + two_r.clone() * ln_b.clone() + big_l.clone() / Real::from_u64(2));
    let q_second = LogReal::from_ln(two_r.clone() * rf.ln(cc)? - ln_factorial(r, cc)? + rf.clone() * ln_b.clone() + big_l.clone());
    let q_val = q_first.add(&q_second, cc);

    let inner = LogReal::from_ln(ln_u.clone() + (ln_alpha.clone() + ln_w.clone()) / two_r.clone())
        .add(&LogReal::from_ln(s.ln(cc)? + ctx.derived.ln_t.clone()), cc);
    let setup_ln = ln_b.clone() - (b - Real::one()).ln(cc)?
        + (Real::one() - Real::one() / rf.clone()) * ln_n.clone()
        + (rf.clone() + Real::one()) / (Real::from_u64(4) * rf.clone() * rf.clone()) * big_l.clone()
        + big_l.ln(cc)? / two_r
        + inner.ln()?;

    let lemma_threshold =
        base_threshold_log_q(cc).max(Real::from_u64(18) * ln_u64(10 * u64::from(r), cc)?).max(variant_threshold_log_q(r, ctx.variant, cc)?);
    let alpha_bound_holds = (big_l >= lemma_threshold).then(|| alpha <= Real::ratio(4, 3) * kap * big_l.clone());

    Ok(BurgessIntermediates {
        u: LogReal::from_ln(ln_u),
        w: LogReal::from_ln(ln_w),
        s,
        alpha,
        p,
        q: q_val,
        beta: LogReal::from_ln(ln_beta),
        count_a,
        count_a_exact,
        setup_bound: LogReal::from_ln(setup_ln),
        alpha_bound_holds,
    })
}

/// [`intermediates`] at the canonical `A = kappa N / B`.
pub fn intermediates_for(ctx: &BoundContext, n: &LengthInput, cc: &mut Consts) -> Result<BurgessIntermediates, Error> {
    let ln_n = ctx.ln_n(n, cc)?;
    let la = ln_a(ctx, &ln_n, cc)?;
    let lb = ctx.derived.b.ln()?;
    intermediates(ctx, &ln_n, &la, &lb, cc)
}
