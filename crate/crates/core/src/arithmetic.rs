//! Integer factorization and the multiplicative functions built on it.
//!
//! Moduli handled here are desk scale (at most `u64::MAX`, in practice well
//! below 10^12). Factorization is trial division up to 10^6 followed by
//! Brent's variant of Pollard rho with fixed retry seeds, so results are
//! deterministic.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::Error;

/// Trial division bound before switching to rho.
const TRIAL_LIMIT: u64 = 1_000_000;

/// A positive integer together with its prime factorization.
///
/// Primes are strictly increasing and every exponent is at least one; the
/// factorization of 1 is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    /// The integer 1.
    pub fn one() -> Self {
        Self { value: 1, factors: Vec::new() }
    }

    /// Builds a factored integer from `(prime, exponent)` pairs.
    ///
    /// Pairs may come in any order but primes must be distinct, actually
    /// prime, and carry positive exponents; the product must fit in a `u64`.
    pub fn from_factors(mut factors: Vec<(u64, u32)>) -> Result<Self, Error> {
        factors.sort_unstable_by_key(|&(p, _)| p);
        let mut value: u64 = 1;
        for (i, &(p, e)) in factors.iter().enumerate() {
            if e == 0 || !is_prime(p) {
                return Err(Error::InvalidParameter("factor list must hold primes with positive exponents"));
            }
            if i > 0 && factors[i - 1].0 == p {
                return Err(Error::InvalidParameter("factor list repeats a prime"));
            }
            let pe = p.checked_pow(e).ok_or(Error::Overflow)?;
            value = value.checked_mul(pe).ok_or(Error::Overflow)?;
        }
        Ok(Self { value, factors })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Prime powers `p^e` exactly dividing the value, in increasing prime order.
    pub fn prime_powers(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, e)| p.pow(e))
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|&(_, e)| e >= 2) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// True when no prime cube divides the value.
    pub fn is_cubefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e <= 2)
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e - 1) * (p - 1)).product()
    }

    /// Ordinary divisor count `tau_2`.
    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    /// Number of ordered factorizations into `k` positive factors.
    ///
    /// Multiplicative, with `tau_k(p^e) = binomial(e + k - 1, k - 1)`.
    pub fn tau_k(&self, k: u32) -> BigUint {
        assert!(k >= 1, "tau_k needs k >= 1");
        self.factors
            .iter()
            .map(|&(_, e)| binomial(u64::from(e) + u64::from(k) - 1, u64::from(k) - 1))
            .fold(BigUint::one(), |acc, b| acc * b)
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = alloc::vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Squarefree divisors paired with their Möbius value.
    pub fn squarefree_divisors(&self) -> Vec<(u64, i8)> {
        let mut out = alloc::vec![(1u64, 1i8)];
        for &(p, _) in &self.factors {
            let len = out.len();
            for i in 0..len {
                let (d, mu) = out[i];
                out.push((d * p, -mu));
            }
        }
        out
    }

    /// `min{ tau_{2r}(q), (tau(q)/2)^(2r-1), q/(2r) }` as an exact rational.
    ///
    /// The middle term is a half-integer power when `q` is a square.
    pub fn m_r(&self, r: u32) -> Ratio<BigUint> {
        assert!(r >= 2, "m_r needs r >= 2");
        let two_r = BigUint::from(2 * r);
        let tau_2r = Ratio::from_integer(self.tau_k(2 * r));
        let half_tau = Ratio::new(BigUint::from(self.tau()), BigUint::from(2u8));
        let pow_term = num_traits::pow(half_tau, (2 * r - 1) as usize);
        let linear = Ratio::new(BigUint::from(self.value), two_r);
        let mut best = tau_2r;
        for cand in [pow_term, linear] {
            if cand < best {
                best = cand;
            }
        }
        best
    }

    /// Fraction of residues coprime to the value, `phi(q)/q`, exactly.
    pub fn phi_ratio(&self) -> Ratio<u64> {
        Ratio::new(self.euler_phi(), self.value)
    }

    /// Number of integers in `1..=x` coprime to the value.
    pub fn coprime_count_up_to(&self, x: u64) -> u64 {
        let total: i128 = self.squarefree_divisors().into_iter().map(|(d, mu)| i128::from(mu) * i128::from(x / d)).sum();
        total as u64
    }
}

impl core::fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors `n >= 1`.
pub fn factorize(n: u64) -> Result<FactoredInteger, Error> {
    if n == 0 {
        return Err(Error::NotPositive);
    }
    let mut factors = Vec::new();
    let mut m = n;
    for p in [2u64, 3, 5] {
        strip(&mut m, p, &mut factors);
    }
    // 2·3·5 wheel
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p <= TRIAL_LIMIT && p * p <= m {
        strip(&mut m, p, &mut factors);
        p += STEPS[i];
        i = (i + 1) % STEPS.len();
    }
    if m > 1 {
        let mut large = Vec::new();
        split_large(m, &mut large);
        large.sort_unstable();
        for q in large {
            match factors.last_mut() {
                Some((last, e)) if *last == q => *e += 1,
                _ => factors.push((q, 1)),
            }
        }
    }
    Ok(FactoredInteger { value: n, factors })
}

fn strip(m: &mut u64, p: u64, factors: &mut Vec<(u64, u32)>) {
    if *m % p == 0 {
        let mut e = 0;
        while *m % p == 0 {
            *m /= p;
            e += 1;
        }
        factors.push((p, e));
    }
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho_divisor(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// A nontrivial divisor of the composite `n` via Brent's cycle detection.
fn rho_divisor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    if let Some(r) = exact_sqrt(n) {
        return r;
    }
    for seed in 1u64.. {
        let c = seed;
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = seed + 1;
        let mut g = 1;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut x = y;
        let mut ys = y;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho retries are unbounded")
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = libm::sqrt(n as f64) as u64;
    while r.checked_mul(r).map_or(true, |s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Converts a positive rational to `f64`.
pub fn ratio_to_f64(x: &Ratio<BigUint>) -> f64 {
    let (n, d) = (x.numer(), x.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    let n = (n >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (d >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}
