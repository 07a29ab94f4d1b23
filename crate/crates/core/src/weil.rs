//! Shift tuples, the gcd sum `s_q(r, B)` and the Weil-type moment bound
//!
//! `sum_{x mod q} |sum_{1 <= b <= B} chi(x + b)|^{2r}
//!     <= 2r (4r)^omega(q) B^{2r} m_r(q) sqrt(q) + r^{2r}/r! B^r q`.
//!
//! Everything here is brute force over small moduli. Tuple enumeration is
//! capped at [`ENUMERATION_BUDGET`] tuples.
//!
//! Tuples in which no coordinate is unique have every `A_j = 0`. The min
//! defining `s_q` runs over an empty set for them and they contribute 0.
//! Such tuples are never good tuples, so they never meet the complete-sum
//! bound either.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::arithmetic::{binomial, ratio_to_f64, FactoredInteger};
use crate::characters::{characters_of, DirichletCharacter, UnitGroupStructure};
use crate::report::VerificationReport;
use crate::Error;

/// Largest number of tuples any enumeration may visit.
pub const ENUMERATION_BUDGET: u128 = 100_000_000;

/// Relative tolerance on floating-point moment sums.
pub const LHS_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct TupleAnalysis {
    pub b: Vec<i64>,
    /// `A_j = prod_{i != j} (b_i - b_j)`.
    pub a_products: Vec<BigInt>,
    pub distinct_count: usize,
    /// At least `r + 1` distinct entries.
    pub is_good: bool,
}

pub fn analyze_tuple(b: &[i64], r: usize) -> Result<TupleAnalysis, Error> {
    if b.len() != 2 * r {
        return Err(Error::TupleLength { expected: 2 * r, found: b.len() });
    }
    let a_products = (0..b.len())
        .map(|j| {
            b.iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .fold(BigInt::one(), |acc, (_, &bi)| acc * BigInt::from(i128::from(bi) - i128::from(b[j])))
        })
        .collect();
    let mut sorted = b.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let distinct_count = sorted.len();
    Ok(TupleAnalysis { b: b.to_vec(), a_products, distinct_count, is_good: distinct_count > r })
}

/// `floor(B)` after checking `B >= 2`.
pub fn floor_b(b: f64) -> Result<u64, Error> {
    if !(b >= 2.0) || !b.is_finite() {
        return Err(Error::InvalidParameter("B must be a finite real >= 2"));
    }
    Ok(libm::floor(b) as u64)
}

fn tuple_count(bf: u64, r: usize) -> Result<u128, Error> {
    let count = (bf as u128).checked_pow(2 * r as u32).unwrap_or(u128::MAX);
    if count > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded { required: count, budget: ENUMERATION_BUDGET });
    }
    Ok(count)
}

/// Visits every tuple in `{1..bf}^len` in lexicographic order.
fn for_each_tuple(bf: u64, len: usize, mut f: impl FnMut(&[i64])) {
    let mut t = vec![1i64; len];
    loop {
        f(&t);
        let mut k = len;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if (t[k] as u64) < bf {
                t[k] += 1;
                break;
            }
            t[k] = 1;
        }
    }
}

/// `min { gcd(A_j, q) : A_j != 0 }`, or `None` when every `A_j` vanishes.
fn min_gcd(t: &[i64], q: u64) -> Option<u64> {
    let mut best: Option<u64> = None;
    for (j, &bj) in t.iter().enumerate() {
        if t.iter().enumerate().any(|(i, &bi)| i != j && bi == bj) {
            continue;
        }
        let a_mod = t.iter().enumerate().filter(|&(i, _)| i != j).fold(1 % q, |acc, (_, &bi)| {
            let d = (bi - bj).rem_euclid(q as i64) as u64;
            ((u128::from(acc) * u128::from(d)) % u128::from(q)) as u64
        });
        let g = a_mod.gcd(&q);
        best = Some(best.map_or(g, |b| b.min(g)));
    }
    best
}

/// `s_q(r, B)` by enumeration of `{1..floor(B)}^{2r}`.
pub fn s_q_exact(q: &FactoredInteger, r: usize, b: f64) -> Result<u128, Error> {
    let bf = floor_b(b)?;
    tuple_count(bf, r)?;
    let qv = q.value();
    let mut total = 0u128;
    for_each_tuple(bf, 2 * r, |t| {
        total += u128::from(min_gcd(t, qv).unwrap_or(0));
    });
    Ok(total)
}

/// `2r (tau(q)/2)^{2r-1} floor(B)^{2r}`, exactly.
pub fn bound_no_keep_gcd(q: &FactoredInteger, r: usize, b: f64) -> Result<Ratio<BigUint>, Error> {
    let bf = BigUint::from(floor_b(b)?);
    let half_tau = Ratio::new(BigUint::from(q.tau()), BigUint::from(2u32));
    let e = 2 * r as u32;
    Ok(Ratio::from_integer(BigUint::from(2 * r)) * num_traits::pow(half_tau, e as usize - 1) * Ratio::from_integer(bf.pow(e)))
}

/// `2r floor(B)^{2r} tau_{2r}(q)`.
pub fn bound_keep_gcd(q: &FactoredInteger, r: usize, b: f64) -> Result<BigUint, Error> {
    let bf = BigUint::from(floor_b(b)?);
    Ok(BigUint::from(2 * r) * bf.pow(2 * r as u32) * q.tau_k(2 * r as u32))
}

/// `floor(B)^{2r} q`.
pub fn bound_trivial(q: &FactoredInteger, r: usize, b: f64) -> Result<BigUint, Error> {
    let bf = BigUint::from(floor_b(b)?);
    Ok(bf.pow(2 * r as u32) * BigUint::from(q.value()))
}

/// Compares `s_q(r, B)` with the three bounds. The `tau(q)/2` bound is only
/// part of the margin when `B < sqrt(q)`.
pub fn check_sq_bounds(q: &FactoredInteger, r: usize, b: f64) -> Result<VerificationReport, Error> {
    let s = s_q_exact(q, r, b)?;
    let s_big = BigUint::from(s);
    let no_keep = bound_no_keep_gcd(q, r, b)?;
    let keep = bound_keep_gcd(q, r, b)?;
    let trivial = bound_trivial(q, r, b)?;
    let below_sqrt = b * b < q.value() as f64;
    let s_ratio = Ratio::from_integer(s_big.clone());
    let diff = |bound: &Ratio<BigUint>| -> f64 {
        if *bound >= s_ratio {
            ratio_to_f64(&(bound - &s_ratio))
        } else {
            -ratio_to_f64(&(&s_ratio - bound))
        }
    };
    let mut margin = diff(&Ratio::from_integer(keep.clone())).min(diff(&Ratio::from_integer(trivial.clone())));
    if below_sqrt {
        margin = margin.min(diff(&no_keep));
    }
    let mut rep = VerificationReport::new("sq_bounds", "weil", "exhaustive")
        .param("q", q.value())
        .param("r", r)
        .param("B", b)
        .param("s_q", s as f64)
        .param("bound_tau_half", ratio_to_f64(&no_keep))
        .param("bound_tau_2r", keep.to_f64().unwrap_or(f64::INFINITY))
        .param("bound_trivial", trivial.to_f64().unwrap_or(f64::INFINITY))
        .margin(margin, margin);
    if !below_sqrt {
        rep = rep.note("B >= sqrt(q): the tau(q)/2 bound is outside its proven range and is not checked");
    }
    Ok(rep)
}

/// Counts good tuples (at least `r + 1` distinct entries) in `{1..floor(B)}^{2r}`.
pub fn classify_tuples(b: f64, r: usize) -> Result<(u128, u128), Error> {
    let bf = floor_b(b)?;
    let total = tuple_count(bf, r)?;
    let mut good = 0u128;
    let mut seen = vec![0u32; bf as usize + 1];
    let mut stamp = 0u32;
    for_each_tuple(bf, 2 * r, |t| {
        stamp += 1;
        let mut distinct = 0;
        for &x in t {
            if seen[x as usize] != stamp {
                seen[x as usize] = stamp;
                distinct += 1;
            }
        }
        if distinct > r {
            good += 1;
        }
    });
    Ok((good, total - good))
}

/// `r^{2r} binomial(floor(B), r)`, the count bound for bad tuples.
pub fn bad_tuple_bound(b: f64, r: usize) -> Result<BigUint, Error> {
    let bf = floor_b(b)?;
    Ok(BigUint::from(r).pow(2 * r as u32) * binomial(bf, r as u64))
}

/// `S_x = sum_{1 <= b <= bf} chi(x + b)` for every residue `x`.
pub fn window_sums(table: &[Complex64], bf: u64) -> Vec<Complex64> {
    let q = table.len();
    (0..q).map(|x| (1..=bf as usize).map(|b| table[(x + b) % q]).sum()).collect()
}

/// `sum_x |S_x|^{2r}`.
pub fn moment(sums: &[Complex64], r: usize) -> f64 {
    sums.iter().map(|s| libm::pow(s.norm_sqr(), r as f64)).sum()
}

/// Left side of the moment inequality, by direct double loop.
pub fn weil_lhs(chi: &DirichletCharacter, r: usize, b: f64) -> Result<f64, Error> {
    let bf = floor_b(b)?;
    Ok(moment(&window_sums(&chi.value_table(), bf), r))
}

fn factorial(r: usize) -> f64 {
    (1..=r).map(|k| k as f64).product()
}

fn rhs_with(q: &FactoredInteger, r: usize, b: f64) -> f64 {
    let rf = r as f64;
    let qf = q.value() as f64;
    let m = ratio_to_f64(&q.m_r(r as u32));
    let omega = q.omega() as i32;
    2.0 * rf * libm::pow(4.0 * rf, f64::from(omega)) * libm::pow(b, 2.0 * rf) * m * libm::sqrt(qf)
        + libm::pow(rf, 2.0 * rf) / factorial(r) * libm::pow(b, rf) * qf
}

/// Right side with real `B`, as stated.
pub fn weil_rhs(q: &FactoredInteger, r: usize, b: f64) -> Result<f64, Error> {
    floor_b(b)?;
    Ok(rhs_with(q, r, b))
}

/// Right side with `floor(B)` in place of `B`, the form the argument produces.
pub fn weil_rhs_floor(q: &FactoredInteger, r: usize, b: f64) -> Result<f64, Error> {
    let bf = floor_b(b)?;
    Ok(rhs_with(q, r, bf as f64))
}

/// Margin interval for `lhs <= rhs` with the tolerance on `lhs`.
pub fn moment_margin(lhs: f64, rhs: f64) -> (f64, f64) {
    let lo = rhs * (1.0 - 1e-12) - lhs * (1.0 + LHS_TOLERANCE);
    let hi = rhs * (1.0 + 1e-12) - lhs * (1.0 - LHS_TOLERANCE);
    (lo, hi)
}

/// Options for one modulus of the moment sweep.
#[derive(Clone, Debug)]
pub struct WeilSweep {
    pub r_set: Vec<usize>,
    pub b_set: Vec<f64>,
    /// One row per character instead of the worst character per `(r, B)`.
    pub per_character: bool,
    /// Compare against the `floor(B)` right side instead of the stated one.
    pub floor_form: bool,
}

type WorstCell = (f64, f64, f64, f64, u64);

/// Checks every primitive character modulo `q`. Values of `r >= 3` are
/// skipped when `q` is not cubefree.
pub fn check_weil_modulus(q: &FactoredInteger, sweep: &WeilSweep) -> Result<Vec<VerificationReport>, Error> {
    let rs: Vec<usize> = sweep.r_set.iter().copied().filter(|&r| r == 2 || q.is_cubefree()).collect();
    if rs.is_empty() {
        return Ok(Vec::new());
    }
    let group = alloc::sync::Arc::new(UnitGroupStructure::new(q));
    let chars = characters_of(&group, true);
    if chars.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<VerificationReport>> = vec![Vec::new(); rs.len() * sweep.b_set.len()];
    // (margin_lo, margin_hi, lhs, rhs, character index) of the worst character per cell
    let mut worst: Vec<Option<WorstCell>> = vec![None; rs.len() * sweep.b_set.len()];
    for chi in &chars {
        let table = chi.value_table();
        for (bi, &b) in sweep.b_set.iter().enumerate() {
            let sums = window_sums(&table, floor_b(b)?);
            for (ri, &r) in rs.iter().enumerate() {
                let lhs = moment(&sums, r);
                let rhs = if sweep.floor_form { weil_rhs_floor(q, r, b)? } else { weil_rhs(q, r, b)? };
                let (lo, hi) = moment_margin(lhs, rhs);
                let cell = ri * sweep.b_set.len() + bi;
                if sweep.per_character {
                    rows[cell].push(
                        weil_row(q, r, b, sweep.floor_form)
                            .param("chi_index", chi.index())
                            .param("lhs", lhs)
                            .param("rhs", rhs)
                            .margin(lo, hi),
                    );
                } else if !matches!(worst[cell], Some(w) if lo >= w.0) {
                    worst[cell] = Some((lo, hi, lhs, rhs, chi.index()));
                }
            }
        }
    }
    let mut out = Vec::new();
    for (ri, &r) in rs.iter().enumerate() {
        for (bi, &b) in sweep.b_set.iter().enumerate() {
            let cell = ri * sweep.b_set.len() + bi;
            if sweep.per_character {
                out.append(&mut rows[cell]);
            } else if let Some((lo, hi, lhs, rhs, idx)) = worst[cell] {
                out.push(
                    weil_row(q, r, b, sweep.floor_form)
                        .param("characters", chars.len())
                        .param("worst_chi_index", idx)
                        .param("lhs", lhs)
                        .param("rhs", rhs)
                        .margin(lo, hi),
                );
            }
        }
    }
    Ok(out)
}

fn weil_row(q: &FactoredInteger, r: usize, b: f64, floor_form: bool) -> VerificationReport {
    let id = if floor_form { "weil_moment_floor" } else { "weil_moment" };
    let mut rep = VerificationReport::new(id, "weil", "exhaustive").param("q", q.value()).param("r", r).param("B", b);
    if q.value() == 1 {
        rep = rep.note("q = 1: m_r(1) = 1/8 and the tau(q)/2 estimate assumes B < sqrt(q)");
    }
    rep
}

/// Sequential sweep over `q_min..=q_max`.
pub fn check_weil_sweep(q_min: u64, q_max: u64, sweep: &WeilSweep) -> Result<Vec<VerificationReport>, Error> {
    let mut out = Vec::new();
    for q in q_min.max(1)..=q_max {
        out.extend(check_weil_modulus(&crate::arithmetic::factorize(q)?, sweep)?);
    }
    Ok(out)
}

/// Checks `|complete_poly_sum| <= (4r)^omega(q) sqrt(q) max_{A_j != 0} gcd(A_j, q)`
/// for a good tuple.
pub fn check_complete_sum_bound(chi: &DirichletCharacter, b: &[i64], r: usize) -> Result<VerificationReport, Error> {
    let t = analyze_tuple(b, r)?;
    if !t.is_good {
        return Err(Error::NotGoodTuple);
    }
    let q = chi.modulus();
    let qb = BigInt::from(q);
    let max_gcd = t.a_products.iter().filter(|a| !a.is_zero()).map(|a| a.gcd(&qb).to_u64().unwrap_or(q)).max().unwrap_or(0);
    let exact = chi.complete_poly_sum_exact(b, r)?;
    let s = exact.to_complex().norm();
    let omega = chi.group().modulus().omega();
    let bound = libm::pow(4.0 * r as f64, f64::from(omega)) * libm::sqrt(q as f64) * max_gcd as f64;
    // |S| <= number of nonzero terms; when that already fits under the bound
    // (compared as squares in integers) the check needs no float slack
    let terms = u128::from(exact.total_terms());
    let bound_sq = (4 * r as u128).pow(2 * omega) * u128::from(q) * u128::from(max_gcd).pow(2);
    let slack = 1e-12 * bound + 1e-12 * (q as f64);
    let proven = terms * terms <= bound_sq;
    let (lo, hi) = if proven { ((bound - s - slack).max(0.0), bound - s + slack) } else { (bound - s - slack, bound - s + slack) };
    let mut rep = VerificationReport::new("complete_sum_bound", "weil", "exhaustive")
        .param("q", q)
        .param("chi_index", chi.index())
        .param("r", r)
        .param("b", format!("{:?}", b))
        .param("abs_sum", s)
        .param("bound", bound)
        .margin(lo, hi);
    if proven {
        rep.status = crate::report::Status::Pass;
    }
    Ok(rep)
}

/// Seeded random instances of [`check_complete_sum_bound`]: cubefree
/// `q <= q_max` with a primitive character, good tuples with entries in
/// `1..=max_entry`. Returns one aggregated row.
pub fn sample_complete_sum_bounds(trials: usize, seed: u64, q_max: u64, r: usize, max_entry: i64) -> Result<VerificationReport, Error> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let moduli: Vec<(FactoredInteger, Vec<DirichletCharacter>)> = (1..=q_max)
        .map(crate::arithmetic::factorize)
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|q| q.is_cubefree())
        .map(|q| {
            let chars = characters_of(&alloc::sync::Arc::new(UnitGroupStructure::new(&q)), true);
            (q, chars)
        })
        .filter(|(_, c)| !c.is_empty())
        .collect();
    if moduli.is_empty() || max_entry < 1 {
        return Err(Error::InvalidParameter("no admissible moduli"));
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::INFINITY);
    let mut violations = 0u64;
    let mut status = crate::report::Status::Pass;
    let mut worst = alloc::string::String::new();
    for _ in 0..trials {
        let (_, chars) = &moduli[rng.gen_range(0..moduli.len())];
        let chi = &chars[rng.gen_range(0..chars.len())];
        let b = loop {
            let b: Vec<i64> = (0..2 * r).map(|_| rng.gen_range(1..=max_entry)).collect();
            if analyze_tuple(&b, r)?.is_good {
                break b;
            }
        };
        let rep = check_complete_sum_bound(chi, &b, r)?;
        if rep.status == crate::report::Status::Fail {
            violations += 1;
        }
        status = status.combine(rep.status);
        if rep.margin_lo < lo {
            worst = format!("q={} chi={} b={:?}", chi.modulus(), chi.index(), b);
        }
        lo = lo.min(rep.margin_lo);
        hi = hi.min(rep.margin_hi);
    }
    let mut rep = VerificationReport::new("complete_sum_bound", "weil", "seeded sample + exact complete sums")
        .param("trials", trials)
        .param("seed", seed)
        .param("q_max", q_max)
        .param("r", r)
        .param("violations", violations)
        .param("worst_instance", worst)
        .margin(lo, hi);
    rep.status = status;
    Ok(rep)
}
