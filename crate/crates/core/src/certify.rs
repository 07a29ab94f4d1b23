//! Rigorous checks of the numerical claims behind the bound.
//!
//! Every margin is an [`Interval`] computed with outward rounding; a report
//! passes only when the lower end of its worst margin is strictly positive.
//! Claims quantified over a half-line are checked at the boundary and then
//! extended by a certified derivative sign or an explicit monotonicity
//! argument recorded in the report notes.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hp::Consts;
use crate::interval::Interval;
use crate::report::VerificationReport;
use crate::Error;

/// Terms of the `zeta'(2)` series summed before the integral tail.
pub const ZETA_TERMS: u64 = 100_000;

fn pt(v: u64) -> Interval {
    Interval::point_u64(v)
}

fn dec(s: &str, cc: &mut Consts) -> Interval {
    Interval::decimal(s, cc).expect("valid decimal literal")
}

fn margin_report(id: &str, method: &str, m: &Interval) -> VerificationReport {
    VerificationReport::new(id, "certify", method).margin(m.lo_f64(), m.hi_f64())
}

/// Interval logarithms of `1..=n` built from the primes, plus smallest prime
/// factors, Moebius values and totients.
pub struct SieveTables {
    pub spf: Vec<u32>,
    pub mobius: Vec<i8>,
    pub phi: Vec<u32>,
    ln: Vec<Interval>,
}

impl SieveTables {
    pub fn new(n: u32, cc: &mut Consts) -> Result<Self, Error> {
        let len = n as usize + 1;
        let mut spf = vec![0u32; len];
        let mut primes: Vec<u32> = Vec::new();
        let mut mobius = vec![0i8; len];
        let mut phi = vec![0u32; len];
        if len > 1 {
            mobius[1] = 1;
            phi[1] = 1;
        }
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
                mobius[i] = -1;
                phi[i] = i as u32 - 1;
            }
            for &p in &primes {
                let j = i * p as usize;
                if p > spf[i] || j >= len {
                    break;
                }
                spf[j] = p;
                if p == spf[i] {
                    mobius[j] = 0;
                    phi[j] = phi[i] * p;
                } else {
                    mobius[j] = -mobius[i];
                    phi[j] = phi[i] * (p - 1);
                }
            }
        }
        let mut ln = vec![Interval::zero(); len];
        for i in 2..len {
            let p = spf[i] as usize;
            ln[i] = if p == i { pt(i as u64).ln(cc)? } else { ln[p].add(&ln[i / p]) };
        }
        Ok(SieveTables { spf, mobius, phi, ln })
    }

    pub fn limit(&self) -> u32 {
        (self.ln.len() - 1) as u32
    }

    /// Enclosure of `log n`.
    pub fn ln(&self, n: u32) -> &Interval {
        &self.ln[n as usize]
    }
}

/// Enclosures of `zeta'(2)`, `6/pi^2` and `delta = 6/pi^2 - 36 zeta'(2)/pi^4`.
#[derive(Clone, Debug)]
pub struct DeltaEnclosure {
    pub zeta_prime_2: Interval,
    pub six_over_pi2: Interval,
    pub delta: Interval,
}

impl DeltaEnclosure {
    /// `36 zeta'(2) / pi^4`.
    pub fn mobius_log_limit(&self) -> Interval {
        self.six_over_pi2.mul(&self.six_over_pi2).mul(&self.zeta_prime_2)
    }
}

/// Encloses `delta` from `sum_{n <= 10^5} log n / n^2` and a two-sided tail.
///
/// For `f(t) = log t / t^2` (decreasing and convex for `t >= 3`),
/// `int_N^inf f - f(N)/2 <= sum_{n > N} f(n) <= int_{N+1/2}^inf f`,
/// with `int_a^inf f = (log a + 1)/a`.
pub fn compute_delta(tables: &SieveTables, cc: &mut Consts) -> Result<DeltaEnclosure, Error> {
    let n = ZETA_TERMS.min(u64::from(tables.limit())) as u32;
    let mut s = Interval::zero();
    for k in 2..=n {
        s = s.add(&tables.ln(k).div_u64(u64::from(k) * u64::from(k))?);
    }
    let nn = u64::from(n);
    let ln_n = tables.ln(n);
    let tail_lo = ln_n.add(&Interval::one()).div_u64(nn)?.sub(&ln_n.div_u64(2 * nn * nn)?);
    let half_up = Interval::ratio(2 * nn as i64 + 1, 2)?;
    let tail_hi = half_up.ln(cc)?.add(&Interval::one()).div(&half_up)?;
    let full = s.add(&tail_lo.lower_point().hull(&tail_hi.upper_point()));
    let zeta_prime_2 = full.neg();
    let pi = Interval::pi(cc);
    let six_over_pi2 = pt(6).div(&pi.mul(&pi))?;
    let delta = six_over_pi2.sub(&six_over_pi2.mul(&six_over_pi2).mul(&zeta_prime_2));
    Ok(DeltaEnclosure { zeta_prime_2, six_over_pi2, delta })
}

/// Report for the `delta` enclosure: passes when the width is below `1e-8`
/// and the enclosure meets `0.954422 +- 5e-6`.
pub fn delta_report(d: &DeltaEnclosure) -> VerificationReport {
    let w = d.delta.width_f64();
    let target_gap = libm::fabs(d.delta.mid_f64() - 0.954422);
    let margin = (1e-8 - w).min(5e-6 - target_gap - w);
    VerificationReport::new("delta_enclosure", "certify", "series+integral tail")
        .param("terms", ZETA_TERMS)
        .param("delta_lo", d.delta.lo_f64())
        .param("delta_hi", d.delta.hi_f64())
        .param("width", w)
        .param("zeta_prime_2_lo", d.zeta_prime_2.lo_f64())
        .param("zeta_prime_2_hi", d.zeta_prime_2.hi_f64())
        .margin(margin, margin)
}

struct Worst {
    lo: f64,
    hi: f64,
    at: u64,
}

impl Worst {
    fn new() -> Self {
        Worst { lo: f64::INFINITY, hi: f64::INFINITY, at: 0 }
    }

    fn update(&mut self, m: &Interval, at: u64) {
        let lo = m.lo_f64();
        if lo < self.lo {
            self.lo = lo;
            self.at = at;
        }
        self.hi = self.hi.min(m.hi_f64());
    }
}

/// `|sum_{d<=N} mu(d)/d^2 - 6/pi^2| <= 1/(N-1)` and
/// `|sum_{d<=N} mu(d) log d/d^2 - 36 zeta'(2)/pi^4| <= (log(N-1)+1)/(N-1)`
/// for every `2 <= N <= n_max`.
pub fn verify_mobius_sums(n_max: u32, tables: &SieveTables, d: &DeltaEnclosure) -> Result<VerificationReport, Error> {
    check_sweep_range(n_max, tables)?;
    let limit_log = d.mobius_log_limit();
    let mut plain = Interval::one();
    let mut logged = Interval::zero();
    let (mut w1, mut w2) = (Worst::new(), Worst::new());
    for n in 2..=n_max {
        let mu = tables.mobius[n as usize];
        if mu != 0 {
            let n2 = u64::from(n) * u64::from(n);
            let t = Interval::one().div_u64(n2)?;
            let tl = tables.ln(n).div_u64(n2)?;
            if mu > 0 {
                plain = plain.add(&t);
                logged = logged.add(&tl);
            } else {
                plain = plain.sub(&t);
                logged = logged.sub(&tl);
            }
        }
        let m1 = u64::from(n - 1);
        let env1 = Interval::one().div_u64(m1)?;
        w1.update(&env1.sub(&plain.sub(&d.six_over_pi2).abs()), u64::from(n));
        let env2 = tables.ln(n - 1).add(&Interval::one()).div_u64(m1)?;
        w2.update(&env2.sub(&logged.sub(&limit_log).abs()), u64::from(n));
    }
    Ok(VerificationReport::new("mobius_sums", "certify", "exhaustive interval sweep")
        .param("N_max", n_max)
        .param("worst_N_plain", w1.at)
        .param("margin_plain", w1.lo)
        .param("worst_N_log", w2.at)
        .param("margin_log", w2.lo)
        .margin(w1.lo.min(w2.lo), w1.hi.min(w2.hi)))
}

fn check_sweep_range(n_max: u32, tables: &SieveTables) -> Result<(), Error> {
    if n_max < 2 {
        return Err(Error::InvalidParameter("N_max must be at least 2"));
    }
    if n_max > tables.limit() {
        return Err(Error::InvalidParameter("N_max exceeds the sieve"));
    }
    Ok(())
}

/// `sum_{n<=N} phi(n)/n^2 <= (6/pi^2) log N + delta + (2 log N + 2)/(N-1)`.
pub fn verify_phi_sums(n_max: u32, tables: &SieveTables, d: &DeltaEnclosure) -> Result<VerificationReport, Error> {
    check_sweep_range(n_max, tables)?;
    let mut sum = Interval::one();
    let mut w = Worst::new();
    let two = pt(2);
    for n in 2..=n_max {
        sum = sum.add(&pt(u64::from(tables.phi[n as usize])).div_u64(u64::from(n) * u64::from(n))?);
        let ln = tables.ln(n);
        let rhs = d.six_over_pi2.mul(ln).add(&d.delta).add(&two.mul(ln).add(&two).div_u64(u64::from(n - 1))?);
        w.update(&rhs.sub(&sum), u64::from(n));
    }
    Ok(VerificationReport::new("phi_sums", "certify", "exhaustive interval sweep")
        .param("N_max", n_max)
        .param("worst_N", w.at)
        .margin(w.lo, w.hi))
}

/// One `v_A` instance: `A = {1 <= a <= A : gcd(a, q) = 1}`,
/// `v_A(x) = #{(a, n) : a in A, M < n <= M + N, a^{-1} n = x mod q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VaInstance {
    pub q: u64,
    /// `A = a_thousandths / 1000`.
    pub a_thousandths: u64,
    pub m: u64,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VaSums {
    pub set_size: u64,
    pub sum: u64,
    pub sum_sq: u64,
    /// `sum_{a1, a2} (1 + N gcd(a1, a2)/max(a1, a2))` times `lcm(1..=floor(A))`.
    pub pair_bound_scaled: u128,
    pub scale: u128,
}

fn mod_inverse(a: u64, q: u64) -> u64 {
    if q == 1 {
        return 0;
    }
    let e = (a as i128).extended_gcd(&(q as i128));
    e.x.rem_euclid(q as i128) as u64
}

/// Direct enumeration of `v_A` for one instance.
pub fn va_sums(inst: &VaInstance) -> VaSums {
    let a_floor = inst.a_thousandths / 1000;
    let set: Vec<u64> = (1..=a_floor).filter(|a| a.gcd(&inst.q) == 1).collect();
    let mut v = vec![0u64; inst.q as usize];
    for &a in &set {
        let inv = mod_inverse(a % inst.q, inst.q);
        for n in inst.m + 1..=inst.m + inst.n {
            let x = (u128::from(inv) * u128::from(n % inst.q) % u128::from(inst.q)) as usize;
            v[x] += 1;
        }
    }
    let scale = (1..=a_floor.max(1)).fold(1u128, |l, k| l.lcm(&u128::from(k)));
    let mut pair = 0u128;
    for &a1 in &set {
        for &a2 in &set {
            pair += scale + u128::from(inst.n) * u128::from(a1.gcd(&a2)) * scale / u128::from(a1.max(a2));
        }
    }
    VaSums { set_size: set.len() as u64, sum: v.iter().sum(), sum_sq: v.iter().map(|x| x * x).sum(), pair_bound_scaled: pair, scale }
}

/// `#A^2 + 2AN((6/pi^2) log A + delta + (2 log A + 2)/(A - 1))`.
pub fn va_square_bound(inst: &VaInstance, set_size: u64, d: &DeltaEnclosure, cc: &mut Consts) -> Result<Interval, Error> {
    let a = Interval::ratio(inst.a_thousandths as i64, 1000)?;
    let ln_a = a.ln(cc)?;
    let two = pt(2);
    let inner = d.six_over_pi2.mul(&ln_a).add(&d.delta).add(&two.mul(&ln_a).add(&two).div(&a.sub(&Interval::one()))?);
    Ok(pt(set_size).powi(2).add(&two.mul(&a).scale_u64(inst.n).mul(&inner)))
}

/// Random instances for the counting identity: `q <= 10^4`, `N <= 10^3`, `A` in `[2, 50]`.
pub fn sample_identity_instance(rng: &mut ChaCha8Rng) -> VaInstance {
    VaInstance {
        q: rng.gen_range(1..=10_000),
        a_thousandths: rng.gen_range(2_000..=50_000),
        m: rng.gen_range(0..=1_000_000),
        n: rng.gen_range(1..=1_000),
    }
}

/// Random instances for the square-sum bounds, restricted to `AN < q`, `N >= 2`.
///
/// Without a size condition both bounds fail (e.g. `q = 5, A = 2, N = 5`).
pub fn sample_square_instance(rng: &mut ChaCha8Rng) -> VaInstance {
    loop {
        let q: u64 = rng.gen_range(5..=10_000);
        let a_thousandths: u64 = rng.gen_range(2_000..=50_000);
        // largest N with A N < q
        let n_cap = ((q * 1000 - 1) / a_thousandths).min(1_000);
        if n_cap < 2 {
            continue;
        }
        return VaInstance { q, a_thousandths, m: rng.gen_range(0..=1_000_000), n: rng.gen_range(2..=n_cap) };
    }
}

/// The counting identity, the pair-count bound and the refined square bound
/// on `trials` seeded random instances each.
pub fn verify_va_lemmas(trials: usize, seed: u64, d: &DeltaEnclosure, cc: &mut Consts) -> Result<Vec<VerificationReport>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut identity_failures = 0u64;
    for _ in 0..trials {
        let inst = sample_identity_instance(&mut rng);
        let s = va_sums(&inst);
        if s.sum != s.set_size * inst.n {
            identity_failures += 1;
        }
    }
    let mut pair_worst = f64::INFINITY;
    let mut prop_worst = Worst::new();
    let mut worst_instance = String::new();
    for i in 0..trials {
        let inst = sample_square_instance(&mut rng);
        let s = va_sums(&inst);
        let lhs = u128::from(s.sum_sq) * s.scale;
        let pair_margin = if s.pair_bound_scaled >= lhs {
            (s.pair_bound_scaled - lhs) as f64 / s.scale as f64
        } else {
            -((lhs - s.pair_bound_scaled) as f64 / s.scale as f64)
        };
        pair_worst = pair_worst.min(pair_margin);
        let m = va_square_bound(&inst, s.set_size, d, cc)?.sub(&pt(s.sum_sq));
        if m.lo_f64() < prop_worst.lo {
            worst_instance = format!("q={} A={} M={} N={}", inst.q, inst.a_thousandths as f64 / 1000.0, inst.m, inst.n);
        }
        prop_worst.update(&m, i as u64);
    }
    let identity = if identity_failures == 0 { 1.0 } else { -(identity_failures as f64) };
    Ok(vec![
        VerificationReport::new("va_count_identity", "certify", "direct enumeration")
            .param("trials", trials)
            .param("seed", seed)
            .param("failures", identity_failures)
            .margin(identity, identity),
        VerificationReport::new("va_pair_bound", "certify", "direct enumeration")
            .param("trials", trials)
            .param("seed", seed)
            .note("instances restricted to AN < q and N >= 2")
            .margin(pair_worst, pair_worst),
        VerificationReport::new("va_square_bound", "certify", "direct enumeration + interval right side")
            .param("trials", trials)
            .param("seed", seed)
            .param("worst_instance", worst_instance)
            .note("instances restricted to AN < q and N >= 2")
            .margin(prop_worst.lo, prop_worst.hi),
    ])
}

/// Result of covering a real interval with pieces on which an interval
/// evaluation of a margin is positive.
#[derive(Clone, Debug)]
pub struct Cover {
    /// Smallest lower margin over the pieces: a certified lower bound.
    pub lo: f64,
    /// Smallest margin at a piece end point: an upper bound on the minimum.
    pub hi: f64,
    pub pieces: usize,
    pub certified: bool,
}

/// Splits `[a, b]` into `initial` pieces and bisects any piece whose margin
/// is not certified positive, up to `max_depth` times.
pub fn cover(
    a: f64,
    b: f64,
    initial: usize,
    max_depth: u32,
    cc: &mut Consts,
    mut margin: impl FnMut(&Interval, &mut Consts) -> Result<Interval, Error>,
) -> Result<Cover, Error> {
    let mut stack: Vec<(Interval, u32)> = Vec::new();
    for i in (0..initial).rev() {
        let lo = a + (b - a) * i as f64 / initial as f64;
        let hi = if i + 1 == initial { b } else { a + (b - a) * (i + 1) as f64 / initial as f64 };
        stack.push((Interval::from_f64_bounds(lo, hi)?, 0));
    }
    let mut out = Cover { lo: f64::INFINITY, hi: f64::INFINITY, pieces: 0, certified: true };
    while let Some((x, depth)) = stack.pop() {
        let m = margin(&x, cc)?;
        if m.lo_f64() > 0.0 || depth >= max_depth {
            if m.lo_f64() <= 0.0 {
                out.certified = false;
            }
            out.lo = out.lo.min(m.lo_f64());
            out.hi = out.hi.min(margin(&x.lower_point(), cc)?.hi_f64()).min(margin(&x.upper_point(), cc)?.hi_f64());
            out.pieces += 1;
        } else {
            let (l, r) = x.split();
            stack.push((r, depth + 1));
            stack.push((l, depth + 1));
        }
    }
    Ok(out)
}

/// Shared interval constants for the claim checks.
struct Constants {
    ln2: Interval,
    ln10: Interval,
    e: Interval,
    omega_coeff: Interval,
    tau_coeff: Interval,
    /// `log(125 e / 36)`.
    ln_kappa_ratio: Interval,
}

impl Constants {
    fn new(cc: &mut Consts) -> Result<Self, Error> {
        let e = Interval::e(cc);
        let ln_kappa_ratio = pt(125).mul(&e).div_u64(36)?.ln(cc)?;
        Ok(Constants {
            ln2: Interval::ln2(cc),
            ln10: Interval::ln10(cc),
            e,
            omega_coeff: dec("1.38402", cc),
            tau_coeff: dec("1.5379", cc),
            ln_kappa_ratio,
        })
    }

    fn a_of_r(&self, r: u64, cc: &mut Consts) -> Result<Interval, Error> {
        let inner = dec("3.0758", cc).scale_u64(r).add(&self.omega_coeff.mul(&pt(4 * r).ln(cc)?)).sub(&self.tau_coeff);
        Ok(self.ln2.scale_u64(2).mul(&inner))
    }
}

fn ln_factorial(r: u64, cc: &mut Consts) -> Result<Interval, Error> {
    let mut s = Interval::zero();
    for k in 2..=r {
        s = s.add(&pt(k).ln(cc)?);
    }
    Ok(s)
}

/// Exponent of `q` in the lower bound for `B_1`, at `log log q = a(r)`:
/// `1/(2r) - 1.38402 log 2 log(4r)/(r LL) - 1.5379 (2r-1) log 2/(r LL)`.
fn check_l51(k: &Constants, cc: &mut Consts) -> Result<VerificationReport, Error> {
    let mut worst: Option<Interval> = None;
    let mut deriv_ok = true;
    for r in 2..=64u64 {
        let ll = k.a_of_r(r, cc)?;
        let c1 = k.omega_coeff.mul(&k.ln2).mul(&pt(4 * r).ln(cc)?);
        let c2 = k.tau_coeff.scale_u64(2 * r - 1).mul(&k.ln2);
        let rl = ll.scale_u64(r);
        let g = Interval::one().div_u64(2 * r)?.sub(&c1.add(&c2).div(&rl)?);
        // d/dLL = (c1 + c2) / (r LL^2), positive
        let dg = c1.add(&c2).div(&rl.mul(&ll))?;
        deriv_ok &= dg.is_positive();
        worst = Some(match worst {
            None => g,
            Some(w) => w.min(&g),
        });
    }
    let m = worst.expect("non-empty grid");
    let mut rep =
        margin_report("L51", "grid r=2..64 + derivative sign in LL", &m).param("r_range", "2..64").param("derivative_positive", deriv_ok);
    if m.contains_zero() {
        rep = rep.note("at LL = a(r) the exponent is exactly 0 (3.0758 = 2 * 1.5379), so no strictly positive margin exists");
    }
    Ok(rep)
}

/// `B_2(r, 2^{4r-2}) >= 2^{2-2/r} r^2 ((1-1/r)/r!)^{1/r}`, in logs.
fn check_l52(k: &Constants, cc: &mut Consts) -> Result<VerificationReport, Error> {
    let mut worst: Option<Interval> = None;
    for r in 2..=64u64 {
        let rf = pt(r);
        let ln_r = rf.ln(cc)?;
        let ln_fact = ln_factorial(r, cc)?;
        let ln_q = k.ln2.scale_u64(4 * r - 2);
        let ln_b2 = ln_r.scale_u64(2).add(&ln_q.div_u64(2 * r)?).add(&pt(r - 1).ln(cc)?.sub(&ln_fact).sub(&pt(2 * r).ln(cc)?).div_u64(r)?);
        let ln_min = Interval::point_u64(2)
            .sub(&Interval::ratio(2, r as i64)?)
            .mul(&k.ln2)
            .add(&ln_r.scale_u64(2))
            .add(&pt(r - 1).ln(cc)?.sub(&ln_r).sub(&ln_fact).div_u64(r)?);
        let m = ln_b2.sub(&ln_min);
        worst = Some(match worst {
            None => m,
            Some(w) => w.min(&m),
        });
    }
    let m = worst.expect("non-empty grid");
    let mut rep = margin_report("L52", "grid r=2..64 (B_2 increasing in q)", &m).param("r_range", "2..64");
    if m.contains_zero() {
        rep = rep.note("B_2(r, 2^{4r-2}) equals the lower bound identically, so the margin is exactly 0");
    }
    Ok(rep)
}

/// `((r-1)/(r! 2r X))^{1/r} <= e/r` at the worst case `X = 1`, in logs.
fn check_l53(cc: &mut Consts) -> Result<VerificationReport, Error> {
    let mut worst: Option<Interval> = None;
    let mut at = 0;
    for r in 2..=64u64 {
        let ln_r = pt(r).ln(cc)?;
        let lhs = pt(r - 1).ln(cc)?.sub(&ln_factorial(r, cc)?).sub(&pt(2 * r).ln(cc)?).div_u64(r)?;
        let m = Interval::one().sub(&ln_r).sub(&lhs);
        if worst.as_ref().map_or(true, |w: &Interval| m.lo_f64() < w.lo_f64()) {
            at = r;
        }
        worst = Some(match worst {
            None => m,
            Some(w) => w.min(&m),
        });
    }
    let m = worst.expect("non-empty grid");
    Ok(margin_report("L53", "grid r=2..64 + analytic tail", &m)
        .param("r_range", "2..64")
        .param("worst_r", at)
        .note("for every r, r! >= (r/e)^r gives a log margin >= log(2r/(r-1))/r >= log(2)/r > 0; X >= 1 only lowers the left side"))
}

/// `(31 (125e/36) r (2r)^{r/(r-1)})^{4r/(r-1)} <= max(10^32, (25r)^8)` for real `r >= 2`.
fn check_l54a(k: &Constants, cc: &mut Consts) -> Result<VerificationReport, Error> {
    let c0 = pt(31).ln(cc)?.add(&k.ln_kappa_ratio);
    let ln_32 = k.ln10.scale_u64(32);
    let ln25 = pt(25).ln(cc)?;
    let margin = |r: &Interval, cc: &mut Consts| -> Result<Interval, Error> {
        let t = Interval::one().div(&r.sub(&Interval::one()))?;
        let one_t = Interval::one().add(&t);
        let ln_r = r.ln(cc)?;
        let inner = c0.add(&ln_r).add(&one_t.mul(&k.ln2.add(&ln_r)));
        let lhs = one_t.scale_u64(4).mul(&inner);
        let rhs = ln_32.max(&ln25.add(&ln_r).scale_u64(8));
        Ok(rhs.sub(&lhs))
    };
    let body = cover(2.0, 1000.0, 998, 12, cc, margin)?;
    // For r >= 1000 the right side is (25r)^8 and, with t = 1/(r-1),
    // margin = 8 log 25 - 4(1+t)(c0 + (1+t) log 2) - 4(3t + t^2) log r,
    // which increases with r because t and t log r both decrease.
    let r0 = pt(1000);
    let t = Interval::one().div_u64(999)?;
    let one_t = Interval::one().add(&t);
    let tail = ln25
        .scale_u64(8)
        .sub(&one_t.scale_u64(4).mul(&c0.add(&one_t.mul(&k.ln2))))
        .sub(&t.scale_u64(3).add(&t.mul(&t)).scale_u64(4).mul(&r0.ln(cc)?));
    let lo = body.lo.min(tail.lo_f64());
    let hi = body.hi.min(tail.hi_f64());
    let mut rep = VerificationReport::new("L54a", "certify", "dyadic subdivision on [2, 1000] + monotone closed-form tail")
        .param("pieces", body.pieces)
        .param("tail_margin_at_1000", tail.lo_f64())
        .margin(lo, hi);
    if !body.certified {
        rep = rep.note("subdivision depth exhausted before certifying every piece");
        rep.status = crate::report::Status::Inconclusive.combine(rep.status);
    }
    Ok(rep)
}

/// Monotonicity certificate for a margin `m(L)` on `[l0, inf)`: `m'(L) > 0`
/// on `[l0, 10 l0]` by subdivision and on `[10 l0, inf)` by `tail_ok`.
fn certify_increasing(
    l0: &Interval,
    cc: &mut Consts,
    derivative: impl FnMut(&Interval, &mut Consts) -> Result<Interval, Error>,
) -> Result<(Cover, f64), Error> {
    let a = l0.lo_f64();
    let b = l0.scale_u64(10).hi_f64();
    let c = cover(a, b, 64, 14, cc, derivative)?;
    Ok((c, b))
}

/// `L - E [log r + (r/(r-1)) log 2r + 1.38402 log 2 L/LL + log 2 + log LL + log(125e/36)] >= 0`
/// for `L >= 1145 log 10`, `E = 4r/(r-1)`, `r = 2..9`.
fn check_l54b(k: &Constants, cc: &mut Consts) -> Result<VerificationReport, Error> {
    let l0 = k.ln10.scale_u64(1145);
    let w = k.omega_coeff.mul(&k.ln2);
    let mut lo = f64::INFINITY;
    let mut hi = f64::INFINITY;
    let mut certified = true;
    let mut notes = Vec::new();
    for r in 2..=9u64 {
        let e = Interval::ratio(4 * r as i64, r as i64 - 1)?;
        let fixed = pt(r).ln(cc)?.add(&Interval::ratio(r as i64, r as i64 - 1)?.mul(&pt(2 * r).ln(cc)?)).add(&k.ln2).add(&k.ln_kappa_ratio);
        let margin = |l: &Interval, cc: &mut Consts| -> Result<Interval, Error> {
            let ll = l.ln(cc)?;
            let inner = fixed.add(&w.mul(l).div(&ll)?).add(&ll.ln(cc)?);
            Ok(l.sub(&e.mul(&inner)))
        };
        let m0 = margin(&l0, cc)?;
        // m'(L) = 1 - E [1.38402 log 2 (1/LL - 1/LL^2) + 1/(L LL)]
        let deriv = |l: &Interval, cc: &mut Consts| -> Result<Interval, Error> {
            let ll = l.ln(cc)?;
            let inv = Interval::one().div(&ll)?;
            let term = w.mul(&inv.sub(&inv.mul(&inv))).add(&Interval::one().div(&l.mul(&ll))?);
            Ok(Interval::one().sub(&e.mul(&term)))
        };
        let (body, l1) = certify_increasing(&l0, cc, deriv)?;
        // beyond l1: 1/LL - 1/LL^2 <= 1/LL(l1) and 1/(L LL) <= 1/(l1 LL(l1))
        let l1i = Interval::point_f64(l1);
        let ll1 = l1i.ln(cc)?;
        let tail = Interval::one().sub(&e.mul(&w.div(&ll1)?.add(&Interval::one().div(&l1i.mul(&ll1))?)));
        let ok = body.certified && tail.is_positive();
        certified &= ok;
        if !ok {
            notes.push(format!("r={r}: derivative sign not certified"));
        }
        lo = lo.min(m0.lo_f64());
        hi = hi.min(m0.hi_f64());
    }
    let mut rep = VerificationReport::new("L54b", "certify", "boundary interval + derivative subdivision on [L0, 10 L0] + dominance tail")
        .param("r_range", "2..9")
        .param("log10_q0", 1145u64)
        .margin(lo, hi);
    for n in notes {
        rep = rep.note(n);
    }
    if !certified {
        rep.status = crate::report::Status::Inconclusive.combine(rep.status);
    }
    Ok(rep)
}

/// `(r (2r)^{r/(r-1)})^{4r/(r-1)} <= 741 r^8` for `r >= 10`, in logs:
/// `log 741 - 4(1+t)^2 log 2 - (12t + 4t^2) log r` with `t = 1/(r-1)`.
fn check_l54c(k: &Constants, cc: &mut Consts) -> Result<VerificationReport, Error> {
    let t = Interval::ratio(1, 9)?;
    let one_t = Interval::one().add(&t);
    let m = pt(741)
        .ln(cc)?
        .sub(&one_t.mul(&one_t).scale_u64(4).mul(&k.ln2))
        .sub(&t.scale_u64(12).add(&t.mul(&t).scale_u64(4)).mul(&pt(10).ln(cc)?));
    Ok(margin_report("L54c", "closed form at r=10 + monotonicity", &m)
        .note("t = 1/(r-1) and log(r)/(r-1) decrease for r >= 10, so the margin increases with r"))
}

/// `1.38402 log 2 L/LL + log 2 + log LL <= L/8` for `L >= 1008 log 10`.
fn check_l54d(k: &Constants, cc: &mut Consts) -> Result<VerificationReport, Error> {
    let l0 = k.ln10.scale_u64(1008);
    let w = k.omega_coeff.mul(&k.ln2);
    let margin = |l: &Interval, cc: &mut Consts| -> Result<Interval, Error> {
        let ll = l.ln(cc)?;
        Ok(l.div_u64(8)?.sub(&w.mul(l).div(&ll)?).sub(&k.ln2).sub(&ll.ln(cc)?))
    };
    let m0 = margin(&l0, cc)?;
    let deriv = |l: &Interval, cc: &mut Consts| -> Result<Interval, Error> {
        let ll = l.ln(cc)?;
        let inv = Interval::one().div(&ll)?;
        Ok(Interval::ratio(1, 8)?.sub(&w.mul(&inv.sub(&inv.mul(&inv)))).sub(&Interval::one().div(&l.mul(&ll))?))
    };
    let (body, l1) = certify_increasing(&l0, cc, deriv)?;
    let l1i = Interval::point_f64(l1);
    let ll1 = l1i.ln(cc)?;
    let tail = Interval::ratio(1, 8)?.sub(&w.div(&ll1)?).sub(&Interval::one().div(&l1i.mul(&ll1))?);
    let mut rep = VerificationReport::new("L54d", "certify", "boundary interval + derivative subdivision on [L0, 10 L0] + dominance tail")
        .param("log10_q0", 1008u64)
        .param("derivative_lower_bound", body.lo)
        .margin(m0.lo_f64(), m0.hi_f64());
    if !(body.certified && tail.is_positive()) {
        rep = rep.note("derivative sign not certified");
        rep.status = crate::report::Status::Inconclusive.combine(rep.status);
    }
    Ok(rep)
}

/// `(10r)^18 >= (741 r^8)^{9/4} (125e/36)^10`; the powers of `r` cancel.
fn check_l54e(k: &Constants, cc: &mut Consts) -> Result<VerificationReport, Error> {
    let m = k.ln10.scale_u64(18).sub(&pt(741).ln(cc)?.mul(&Interval::ratio(9, 4)?)).sub(&k.ln_kappa_ratio.scale_u64(10));
    Ok(margin_report("L54e", "closed form (independent of r)", &m))
}

/// `27/(16 L) + 3/8 + 6/pi^2 < 1` for `L >= 58 log 10`; the left side decreases in `L`.
fn check_l55(k: &Constants, cc: &mut Consts) -> Result<VerificationReport, Error> {
    let l0 = k.ln10.scale_u64(58);
    let pi = Interval::pi(cc);
    let six_over_pi2 = pt(6).div(&pi.mul(&pi))?;
    let m = Interval::one().sub(&pt(27).div(&l0.scale_u64(16))?).sub(&Interval::ratio(3, 8)?).sub(&six_over_pi2);
    Ok(margin_report("L55", "closed form at the boundary + monotonicity", &m).param("log10_q0", 58u64))
}

/// The numerical claims behind the lower bounds on `B` and `A` and the bound on `alpha`.
pub fn verify_claims(cc: &mut Consts) -> Result<Vec<VerificationReport>, Error> {
    let k = Constants::new(cc)?;
    let _ = &k.e;
    Ok(vec![
        check_l51(&k, cc)?,
        check_l52(&k, cc)?,
        check_l53(cc)?,
        check_l54a(&k, cc)?,
        check_l54b(&k, cc)?,
        check_l54c(&k, cc)?,
        check_l54d(&k, cc)?,
        check_l54e(&k, cc)?,
        check_l55(&k, cc)?,
    ])
}

/// Claim ids in report order.
pub const CLAIM_IDS: [&str; 9] = ["L51", "L52", "L53", "L54a", "L54b", "L54c", "L54d", "L54e", "L55"];

/// One-line statements of the claims, for report headers.
pub fn claim_statement(id: &str) -> Option<&'static str> {
    Some(match id {
        "L51" => "1/(2r) - 1.38402 log2 log(4r)/(r LL) - 1.5379 (2r-1) log2/(r LL) >= 0 for LL >= a(r)",
        "L52" => "B_2(r, q) >= 2^{2-2/r} r^2 ((1-1/r)/r!)^{1/r} for q >= 2^{4r-2}",
        "L53" => "((r-1)/(r! 2r X))^{1/r} <= e/r for X >= 1",
        "L54a" => "(31 (125e/36) r (2r)^{r/(r-1)})^{4r/(r-1)} <= max(10^32, (25r)^8) for real r >= 2",
        "L54b" => "q >= (r(2r)^{r/(r-1)} 2^{1.38402 L/LL} 2LL (125e/36))^{4r/(r-1)} for q >= 10^1145, r = 2..9",
        "L54c" => "(r (2r)^{r/(r-1)})^{4r/(r-1)} <= 741 r^8 for r >= 10",
        "L54d" => "2^{1.38402 L/LL} 2 LL <= q^{1/8} for q >= 10^1008",
        "L54e" => "(10r)^18 >= (741 r^8)^{9/4} (125e/36)^10 for r >= 10",
        "L55" => "27/(16 L) + 3/8 + 6/pi^2 < 1 for q >= 10^58",
        _ => return None,
    })
}

/// Attaches statements to claim reports.
pub fn with_statements(mut reports: Vec<VerificationReport>) -> Vec<VerificationReport> {
    for r in &mut reports {
        if let Some(s) = claim_statement(&r.claim_id) {
            r.notes.insert(0, s.to_string());
        }
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::consts;
    use crate::report::Status;

    fn tables(n: u32) -> (SieveTables, DeltaEnclosure, Consts) {
        let mut cc = consts();
        let t = SieveTables::new(n, &mut cc).unwrap();
        let d = compute_delta(&t, &mut cc).unwrap();
        (t, d, cc)
    }

    #[test]
    fn sieve_values() {
        let mut cc = consts();
        let t = SieveTables::new(100, &mut cc).unwrap();
        assert_eq!(t.mobius[..11], [0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
        assert_eq!(t.phi[12], 4);
        assert_eq!(t.spf[91], 7);
        assert!((t.ln(96).mid_f64() - 96f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn mobius_examples() {
        let (t, d, _) = tables(1000);
        assert!((d.six_over_pi2.mid_f64() - 0.607_927_101_854_026_6).abs() < 1e-15);
        assert!(d.zeta_prime_2.lo_f64() < -0.937_548_254_3 && d.zeta_prime_2.hi_f64() > -0.937_548_254_4);
        let rep = verify_mobius_sums(2, &t, &d).unwrap();
        assert!((rep.margin_lo - (1.0 - (0.75 - 0.607_927_101_854_026_6))).abs() < 1e-12 || rep.margin_lo > 0.0);
        let rep10 = verify_mobius_sums(10, &t, &d).unwrap();
        assert_eq!(rep10.status, Status::Pass);
        assert_eq!(verify_mobius_sums(1000, &t, &d).unwrap().status, Status::Pass);
    }

    #[test]
    fn phi_examples() {
        let (t, d, _) = tables(1000);
        let sum10: f64 = (1..=10u32).map(|n| f64::from(t.phi[n as usize]) / f64::from(n * n)).sum();
        assert!((sum10 - 2.1118).abs() < 1e-4);
        assert_eq!(verify_phi_sums(10, &t, &d).unwrap().status, Status::Pass);
        assert_eq!(verify_phi_sums(1000, &t, &d).unwrap().status, Status::Pass);
    }

    #[test]
    fn va_examples() {
        let s = va_sums(&VaInstance { q: 12, a_thousandths: 5000, m: 0, n: 12 });
        assert_eq!((s.set_size, s.sum), (2, 24));
        let s = va_sums(&VaInstance { q: 10, a_thousandths: 2100, m: 7, n: 9 });
        assert_eq!((s.set_size, s.sum), (1, 9));
        let (_, d, mut cc) = tables(1000);
        let inst = VaInstance { q: 5, a_thousandths: 2000, m: 0, n: 5 };
        let s = va_sums(&inst);
        assert_eq!(s.sum_sq, 20);
        assert!(va_square_bound(&inst, s.set_size, &d, &mut cc).unwrap().lo_f64() > 20.0);
        // the pair-count bound is 19 here: it needs N < q
        assert_eq!(s.pair_bound_scaled, 19 * s.scale);
    }

    #[test]
    fn cover_certifies_simple_margin() {
        let mut cc = consts();
        let c = cover(1.0, 2.0, 4, 8, &mut cc, |x, _| Ok(x.mul(x).sub(&Interval::ratio(1, 2).unwrap()))).unwrap();
        assert!(c.certified && c.lo > 0.0 && c.hi <= 0.5 + 1e-12);
    }
}
