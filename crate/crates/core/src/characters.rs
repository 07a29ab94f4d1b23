//! Dirichlet characters modulo `q`.
//!
//! The unit group `(Z/qZ)^*` is split into prime-power components. An odd
//! prime power `p^e` is cyclic and generated by its smallest primitive root;
//! `4` is generated by `-1`; `2^e` with `e >= 3` is `<-1> x <5>`. Discrete
//! logarithms are tabulated per component, so evaluation costs one table
//! lookup per component.
//!
//! A character is its vector of exponents, one per generator, and sends the
//! `j`-th generator to `exp(2 pi i e_j / ord_j)`. Characters are enumerated
//! lexicographically in that vector (first generator most significant); the
//! position in that order is the character's index.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;

use crate::arithmetic::{factorize, pow_mod, FactoredInteger};
use crate::Error;

const NOT_A_UNIT: u32 = u32::MAX;

/// One prime-power factor of the unit group.
#[derive(Clone, Debug)]
pub struct UnitComponent {
    pub prime: u64,
    pub exponent: u32,
    pub prime_power: u64,
    pub generators: Vec<u64>,
    pub orders: Vec<u64>,
    /// `logs[j][x]` is the exponent of generator `j` in `x mod prime_power`.
    logs: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct UnitGroupStructure {
    modulus: FactoredInteger,
    components: Vec<UnitComponent>,
    /// Least common multiple of all generator orders.
    exponent: u64,
}

impl UnitGroupStructure {
    pub fn new(q: &FactoredInteger) -> Self {
        let components: Vec<UnitComponent> = q.factors().iter().map(|&(p, e)| UnitComponent::new(p, e)).collect();
        let exponent = components.iter().flat_map(|c| c.orders.iter()).fold(1u64, |acc, &o| acc.lcm(&o));
        UnitGroupStructure { modulus: q.clone(), components, exponent }
    }

    pub fn modulus(&self) -> &FactoredInteger {
        &self.modulus
    }

    pub fn q(&self) -> u64 {
        self.modulus.value()
    }

    pub fn components(&self) -> &[UnitComponent] {
        &self.components
    }

    /// Exponent of the group: every character value is an `exponent`-th root of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Generator orders in enumeration order.
    pub fn orders(&self) -> Vec<u64> {
        self.components.iter().flat_map(|c| c.orders.iter().copied()).collect()
    }

    pub fn order(&self) -> u64 {
        self.components.iter().flat_map(|c| c.orders.iter()).product()
    }

    /// Discrete logs of `n` on every generator, or `None` if `gcd(n, q) > 1`.
    pub fn logs(&self, n: i64) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(self.components.len() * 2);
        for c in &self.components {
            let x = n.rem_euclid(c.prime_power as i64) as usize;
            if c.generators.is_empty() {
                if x % 2 == 0 {
                    return None;
                }
                continue;
            }
            for table in &c.logs {
                let l = table[x];
                if l == NOT_A_UNIT {
                    return None;
                }
                out.push(u64::from(l));
            }
        }
        Some(out)
    }
}

impl UnitComponent {
    fn new(p: u64, e: u32) -> Self {
        let pp = p.pow(e);
        let size = pp as usize;
        if p == 2 {
            return match e {
                1 => UnitComponent { prime: 2, exponent: 1, prime_power: 2, generators: vec![], orders: vec![], logs: vec![] },
                2 => {
                    let mut t = vec![NOT_A_UNIT; 4];
                    t[1] = 0;
                    t[3] = 1;
                    UnitComponent { prime: 2, exponent: 2, prime_power: 4, generators: vec![3], orders: vec![2], logs: vec![t] }
                }
                _ => {
                    let half = pp / 4;
                    let mut sign = vec![NOT_A_UNIT; size];
                    let mut five = vec![NOT_A_UNIT; size];
                    let mut x = 1u64;
                    for b in 0..half {
                        sign[x as usize] = 0;
                        five[x as usize] = b as u32;
                        let y = (pp - x) as usize;
                        sign[y] = 1;
                        five[y] = b as u32;
                        x = x * 5 % pp;
                    }
                    UnitComponent {
                        prime: 2,
                        exponent: e,
                        prime_power: pp,
                        generators: vec![pp - 1, 5],
                        orders: vec![2, half],
                        logs: vec![sign, five],
                    }
                }
            };
        }
        let g = smallest_primitive_root(p, e);
        let order = pp / p * (p - 1);
        let mut t = vec![NOT_A_UNIT; size];
        let mut x = 1u64;
        for k in 0..order {
            t[x as usize] = k as u32;
            x = x * g % pp;
        }
        UnitComponent { prime: p, exponent: e, prime_power: pp, generators: vec![g], orders: vec![order], logs: vec![t] }
    }

    /// Conductor of the restriction of a character with the given exponents.
    fn conductor(&self, exps: &[u64]) -> u64 {
        if self.prime == 2 {
            return match self.exponent {
                1 => 1,
                2 => {
                    if exps[0] == 0 {
                        1
                    } else {
                        4
                    }
                }
                _ => {
                    let (a, b) = (exps[0], exps[1]);
                    if b == 0 {
                        if a == 0 {
                            1
                        } else {
                            4
                        }
                    } else {
                        let ord_b = self.orders[1] / b.gcd(&self.orders[1]);
                        4 * ord_b
                    }
                }
            };
        }
        let a = exps[0];
        if a == 0 {
            return 1;
        }
        let ord = self.orders[0] / a.gcd(&self.orders[0]);
        let mut v = 0;
        let mut m = ord;
        while m % self.prime == 0 {
            m /= self.prime;
            v += 1;
        }
        self.prime.pow(v + 1)
    }
}

fn smallest_primitive_root(p: u64, e: u32) -> u64 {
    let phi = p - 1;
    let ells: Vec<u64> = factorize(phi).expect("p - 1 >= 2").factors().iter().map(|&(l, _)| l).collect();
    (2..p).find(|&g| ells.iter().all(|&l| pow_mod(g, phi / l, p) != 1) && (e == 1 || pow_mod(g, phi, p * p) != 1)).unwrap_or(1)
}

/// Builds the unit group of `q`.
pub fn unit_group(q: &FactoredInteger) -> UnitGroupStructure {
    UnitGroupStructure::new(q)
}

/// Exact value of a character: zero or `exp(2 pi i numerator / denominator)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharacterValue {
    Zero,
    Root { numerator: u64, denominator: u64 },
}

impl CharacterValue {
    pub fn one() -> Self {
        CharacterValue::Root { numerator: 0, denominator: 1 }
    }

    /// Reduced root of unity `exp(2 pi i k / n)`.
    pub fn root(k: u64, n: u64) -> Self {
        let k = k % n;
        let g = k.gcd(&n);
        if k == 0 {
            CharacterValue::one()
        } else {
            CharacterValue::Root { numerator: k / g, denominator: n / g }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CharacterValue::Zero)
    }

    pub fn mul(&self, other: &CharacterValue) -> CharacterValue {
        match (self, other) {
            (CharacterValue::Root { numerator: a, denominator: m }, CharacterValue::Root { numerator: b, denominator: n }) => {
                let l = m.lcm(n);
                CharacterValue::root(a * (l / m) + b * (l / n), l)
            }
            _ => CharacterValue::Zero,
        }
    }

    pub fn conj(&self) -> CharacterValue {
        match *self {
            CharacterValue::Root { numerator, denominator } => CharacterValue::root(denominator - numerator, denominator),
            CharacterValue::Zero => CharacterValue::Zero,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match *self {
            CharacterValue::Zero => Complex64::new(0.0, 0.0),
            CharacterValue::Root { numerator, denominator } => root_complex(numerator, denominator),
        }
    }
}

/// `exp(2 pi i k / n)`, exact at multiples of a quarter turn.
fn root_complex(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    if (4 * k) % n == 0 {
        return match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let t = TAU * (k as f64) / (n as f64);
    Complex64::new(libm::cos(t), libm::sin(t))
}

#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    group: Arc<UnitGroupStructure>,
    exponents: Vec<u64>,
    conductor: u64,
    index: u64,
}

impl DirichletCharacter {
    /// The character with the given exponent vector.
    pub fn new(group: Arc<UnitGroupStructure>, exponents: Vec<u64>) -> Result<Self, Error> {
        let orders = group.orders();
        if exponents.len() != orders.len() {
            return Err(Error::InvalidParameter("exponent vector length differs from generator count"));
        }
        if exponents.iter().zip(&orders).any(|(e, o)| e >= o) {
            return Err(Error::InvalidParameter("exponent not below generator order"));
        }
        let index = exponents.iter().zip(&orders).fold(0u64, |acc, (e, o)| acc * o + e);
        let mut conductor = 1;
        let mut at = 0;
        for c in group.components() {
            let k = c.generators.len();
            conductor *= c.conductor(&exponents[at..at + k]);
            at += k;
        }
        Ok(DirichletCharacter { group, exponents, conductor, index })
    }

    /// The character at `index` in lexicographic order.
    pub fn from_index(group: Arc<UnitGroupStructure>, index: u64) -> Result<Self, Error> {
        let orders = group.orders();
        if index >= group.order() {
            return Err(Error::InvalidParameter("character index out of range"));
        }
        let mut exps = vec![0; orders.len()];
        let mut rest = index;
        for (slot, o) in exps.iter_mut().zip(&orders).rev() {
            *slot = rest % o;
            rest /= o;
        }
        DirichletCharacter::new(group, exps)
    }

    pub fn group(&self) -> &Arc<UnitGroupStructure> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.group.q()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.exponents.iter().zip(self.group.orders()).fold(1u64, |acc, (&e, o)| acc.lcm(&(o / e.gcd(&o))))
    }

    pub fn conjugate(&self) -> DirichletCharacter {
        let exps = self.exponents.iter().zip(self.group.orders()).map(|(&e, o)| (o - e) % o).collect();
        DirichletCharacter::new(self.group.clone(), exps).expect("valid exponents")
    }

    /// Value numerator over the group exponent, or `None` off the units.
    fn numerator(&self, n: i64) -> Option<u64> {
        let big_l = self.group.exponent();
        let logs = self.group.logs(n)?;
        let orders = self.group.orders();
        let mut acc = 0u128;
        for ((&e, &l), &o) in self.exponents.iter().zip(&logs).zip(&orders) {
            acc += u128::from(e) * u128::from(l) * u128::from(big_l / o);
        }
        Some((acc % u128::from(big_l)) as u64)
    }

    pub fn eval(&self, n: i64) -> CharacterValue {
        match self.numerator(n) {
            None => CharacterValue::Zero,
            Some(k) => CharacterValue::root(k, self.group.exponent()),
        }
    }

    /// Numerators over [`UnitGroupStructure::exponent`] for residues `0..q`.
    pub fn numerator_table(&self) -> Vec<Option<u64>> {
        (0..self.modulus() as i64).map(|n| self.numerator(n)).collect()
    }

    /// Complex values for residues `0..q`.
    pub fn value_table(&self) -> Vec<Complex64> {
        let big_l = self.group.exponent();
        let roots: Vec<Complex64> = (0..big_l).map(|k| root_complex(k, big_l)).collect();
        self.numerator_table().into_iter().map(|v| v.map_or(Complex64::new(0.0, 0.0), |k| roots[k as usize])).collect()
    }

    /// `sum_{M < n <= M + N} chi(n)` in double precision.
    pub fn char_sum(&self, m: i64, n: u64) -> Complex64 {
        let table = self.value_table();
        let q = self.modulus();
        let full = n / q;
        let mut total = Complex64::new(0.0, 0.0);
        if full > 0 {
            let period: Complex64 = table.iter().sum();
            total += period * full as f64;
        }
        let start = (m + 1).rem_euclid(q as i64) as u64;
        for k in 0..n % q {
            total += table[((start + k) % q) as usize];
        }
        total
    }

    /// The same sum as counts of each power of the primitive root of unity.
    pub fn char_sum_exact(&self, m: i64, n: u64) -> RootCounts {
        let mut counts = RootCounts::new(self.group.exponent());
        for k in 1..=n {
            if let Some(v) = self.numerator(m + k as i64) {
                counts.add(v, 1);
            }
        }
        counts
    }

    /// `sum_{x mod q} chi(f1(x) * f2(x)^(phi(q) - 1))` with
    /// `f1 = prod_{i <= r} (x - b_i)` and `f2 = prod_{i > r} (x - b_i)`.
    pub fn complete_poly_sum(&self, b: &[i64], r: usize) -> Result<Complex64, Error> {
        Ok(self.complete_poly_sum_exact(b, r)?.to_complex())
    }

    pub fn complete_poly_sum_exact(&self, b: &[i64], r: usize) -> Result<RootCounts, Error> {
        if b.len() != 2 * r {
            return Err(Error::TupleLength { expected: 2 * r, found: b.len() });
        }
        let q = self.modulus();
        let phi = self.group.modulus().euler_phi();
        let mut counts = RootCounts::new(self.group.exponent());
        for x in 0..q {
            let f = |bs: &[i64]| {
                bs.iter().fold(1 % q, |acc, &bi| {
                    let d = (x as i64 - bi).rem_euclid(q as i64) as u64;
                    ((u128::from(acc) * u128::from(d)) % u128::from(q)) as u64
                })
            };
            let f1 = f(&b[..r]);
            let f2 = f(&b[r..]);
            let arg = ((u128::from(f1) * u128::from(pow_mod(f2, phi - 1, q))) % u128::from(q)) as i64;
            if let Some(v) = self.numerator(arg) {
                counts.add(v, 1);
            }
        }
        Ok(counts)
    }
}

/// Every character modulo `q` in lexicographic order, optionally only the primitive ones.
pub fn enumerate_characters(q: &FactoredInteger, primitive_only: bool) -> Vec<DirichletCharacter> {
    let group = Arc::new(UnitGroupStructure::new(q));
    characters_of(&group, primitive_only)
}

pub fn characters_of(group: &Arc<UnitGroupStructure>, primitive_only: bool) -> Vec<DirichletCharacter> {
    (0..group.order())
        .map(|i| DirichletCharacter::from_index(group.clone(), i).expect("index in range"))
        .filter(|c| !primitive_only || c.is_primitive())
        .collect()
}

/// A sum `sum_k counts[k] * zeta^k` with `zeta = exp(2 pi i / order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCounts {
    order: u64,
    counts: Vec<u64>,
}

impl RootCounts {
    pub fn new(order: u64) -> Self {
        RootCounts { order, counts: vec![0; order as usize] }
    }

    pub fn add(&mut self, k: u64, times: u64) {
        self.counts[(k % self.order) as usize] += times;
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total_terms(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn to_complex(&self) -> Complex64 {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(k, &c)| root_complex(k as u64, self.order) * c as f64).sum()
    }

    /// Exact zero test: the sum vanishes iff the cyclotomic polynomial of
    /// `order` divides `sum_k counts[k] x^k`.
    pub fn is_zero(&self) -> bool {
        let phi = cyclotomic(self.order);
        let mut rem: Vec<i128> = self.counts.iter().map(|&c| i128::from(c)).collect();
        let d = phi.len() - 1;
        for top in (d..rem.len()).rev() {
            let c = rem[top];
            if c != 0 {
                for (i, &pc) in phi.iter().enumerate() {
                    rem[top - d + i] -= c * pc;
                }
            }
        }
        rem.iter().take(d).all(|&c| c == 0)
    }
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic(n: u64) -> Vec<i128> {
    let f = factorize(n).expect("n >= 1");
    let divisors = f.divisors();
    let mut poly: Vec<i128> = vec![1];
    let mu = |m: u64| factorize(m).expect("m >= 1").mobius();
    // Multiply by (x^d - 1) for mu(n/d) = 1, then divide by the rest.
    for &d in &divisors {
        if mu(n / d) == 1 {
            let mut next = vec![0i128; poly.len() + d as usize];
            for (i, &c) in poly.iter().enumerate() {
                next[i + d as usize] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if mu(n / d) == -1 {
            let d = d as usize;
            let len = poly.len() - d;
            let mut quot = vec![0i128; len];
            // poly = quot * (x^d - 1): p_k = quot_{k-d} - quot_k.
            for k in 0..len {
                let prev = if k >= d { quot[k - d] } else { 0 };
                quot[k] = prev - poly[k];
            }
            poly = quot;
        }
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::factorize;

    fn chars(q: u64, primitive: bool) -> Vec<DirichletCharacter> {
        enumerate_characters(&factorize(q).unwrap(), primitive)
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn unit_group_examples() {
        let g5 = unit_group(&factorize(5).unwrap());
        assert_eq!(g5.components().len(), 1);
        assert_eq!(g5.components()[0].generators, vec![2]);
        assert_eq!(g5.order(), 4);
        let g8 = unit_group(&factorize(8).unwrap());
        assert_eq!(g8.components()[0].generators, vec![7, 5]);
        assert_eq!(g8.components()[0].orders, vec![2, 2]);
        let g12 = unit_group(&factorize(12).unwrap());
        assert_eq!(g12.components().len(), 2);
        assert_eq!(g12.components()[0].prime_power, 4);
        assert_eq!(g12.components()[1].prime_power, 3);
        assert_eq!(g12.order(), 4);
    }

    #[test]
    fn generators_have_stated_orders() {
        for q in 2..=600u64 {
            let g = unit_group(&factorize(q).unwrap());
            assert_eq!(g.order(), factorize(q).unwrap().euler_phi(), "q={q}");
            for c in g.components() {
                for (&gen, &ord) in c.generators.iter().zip(&c.orders) {
                    let mut x = 1u64;
                    let mut k = 0u64;
                    loop {
                        x = x * gen % c.prime_power;
                        k += 1;
                        if x == 1 {
                            break;
                        }
                    }
                    assert_eq!(k, ord, "q={q} generator {gen}");
                }
            }
        }
    }

    #[test]
    fn primitive_root_of_prime_square() {
        // 10 is a primitive root mod 487 but not mod 487^2.
        let g = smallest_primitive_root(487, 2);
        assert_ne!(pow_mod(g, 486, 487 * 487), 1);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(chars(5, false).len(), 4);
        assert_eq!(chars(12, true).len(), 1);
        let one = chars(1, false);
        assert_eq!(one.len(), 1);
        assert!(one[0].is_primitive());
        assert_eq!(one[0].eval(0), CharacterValue::one());
    }

    #[test]
    fn conductor_examples() {
        let c12 = chars(12, false);
        assert_eq!(c12[0].conductor(), 1);
        // Exponent vector (0, 1): trivial mod 4, nonprincipal mod 3.
        let induced = c12.iter().find(|c| c.exponents() == [0, 1]).unwrap();
        assert_eq!(induced.conductor(), 3);
        let quad5 = &chars(5, false)[2];
        assert_eq!(quad5.conductor(), 5);
    }

    #[test]
    fn eval_examples() {
        let quad5 = &chars(5, false)[2];
        assert_eq!(quad5.eval(2), CharacterValue::Root { numerator: 1, denominator: 2 });
        for c in chars(12, false) {
            assert!(c.eval(6).is_zero());
            assert_eq!(c.eval(1), CharacterValue::one());
        }
    }

    /// Smallest d | q such that chi is trivial on units n = 1 mod d.
    fn conductor_oracle(c: &DirichletCharacter) -> u64 {
        let q = c.modulus();
        let f = factorize(q).unwrap();
        f.divisors()
            .into_iter()
            .find(|&d| (1..=q).filter(|&n| gcd(n, q) == 1 && n % d == 1 % d).all(|n| c.eval(n as i64) == CharacterValue::one()))
            .unwrap()
    }

    #[test]
    fn conductor_matches_oracle() {
        for q in 1..=150u64 {
            for c in chars(q, false) {
                assert_eq!(c.conductor(), conductor_oracle(&c), "q={q} index={}", c.index());
            }
        }
    }

    #[test]
    fn primitive_count_matches_mobius_formula() {
        let phi_naive = |n: u64| (1..=n).filter(|&a| gcd(a, n) == 1).count() as i64;
        for q in 1..=500u64 {
            let f = factorize(q).unwrap();
            let expected: i64 = f.divisors().iter().map(|&d| i64::from(factorize(q / d).unwrap().mobius()) * phi_naive(d)).sum();
            assert_eq!(chars(q, true).len() as i64, expected, "q={q}");
        }
    }

    #[test]
    fn multiplicative_and_periodic() {
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut checked = 0;
        while checked < 1000 {
            let q = next() % 400 + 1;
            let all = chars(q, false);
            let c = &all[(next() % all.len() as u64) as usize];
            let m = (next() % 10_000) as i64 - 5000;
            let n = (next() % 10_000) as i64 - 5000;
            assert_eq!(c.eval(m), c.eval(m + q as i64));
            if gcd((m * n).unsigned_abs(), q) != 1 {
                continue;
            }
            assert_eq!(c.eval(m * n), c.eval(m).mul(&c.eval(n)));
            checked += 1;
        }
    }

    #[test]
    fn orthogonality_is_exact() {
        for q in 1..=120u64 {
            for c in chars(q, false) {
                let s = c.char_sum_exact(7, q);
                assert_eq!(s.is_zero(), !c.is_principal(), "q={q} index={}", c.index());
            }
        }
    }

    #[test]
    fn char_sum_examples() {
        let all5 = chars(5, false);
        for c in &all5[1..] {
            assert!(c.char_sum(0, 5).norm() < 1e-12);
        }
        assert!(all5[2].char_sum(0, 2).norm() < 1e-12);
        for c in &all5 {
            assert_eq!(c.char_sum(0, 1), Complex64::new(1.0, 0.0));
        }
        // Full periods plus a remainder, negative start.
        let c = &chars(11, false)[3];
        let direct: Complex64 = (-30..=-30 + 57).skip(1).map(|n| c.eval(n).to_complex()).sum();
        assert!((c.char_sum(-30, 57) - direct).norm() < 1e-9);
    }

    #[test]
    fn complete_sum_examples() {
        let all5 = chars(5, false);
        for c in &all5 {
            let s = c.complete_poly_sum(&[1, 1, 1, 1], 2).unwrap();
            assert!((s - Complex64::new(4.0, 0.0)).norm() < 1e-12);
        }
        let quad = &all5[2];
        let s = quad.complete_poly_sum(&[1, 1, 2, 2], 2).unwrap();
        assert!((s - Complex64::new(3.0, 0.0)).norm() < 1e-12);
        // Legendre symbol oracle for b = (1, 2, 3, 4).
        let legendre = |a: i64| match a.rem_euclid(5) {
            0 => 0,
            1 | 4 => 1,
            _ => -1,
        };
        let direct: i64 = (0..5i64)
            .map(|x| {
                let f1 = ((x - 1) * (x - 2)).rem_euclid(5);
                let f2 = ((x - 3) * (x - 4)).rem_euclid(5);
                let f2_pow3 = f2 * f2 % 5 * f2 % 5;
                legendre(f1 * f2_pow3)
            })
            .sum();
        let s = quad.complete_poly_sum(&[1, 2, 3, 4], 2).unwrap();
        assert!((s - Complex64::new(direct as f64, 0.0)).norm() < 1e-12);
        assert!(quad.complete_poly_sum(&[1, 2, 3], 2).is_err());
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic(105).len(), 49);
    }
}
