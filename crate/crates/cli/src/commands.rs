use std::sync::Arc;
use std::time::Instant;

use burgess_core::arithmetic::factorize;
use burgess_core::burgess::{self, BoundContext, LengthInput, Variant};
use burgess_core::certify::{self, SieveTables};
use burgess_core::characters::{characters_of, DirichletCharacter, UnitGroupStructure};
use burgess_core::hp::{consts, Consts, Real};
use burgess_core::report::Status;
use burgess_core::weil::{self, WeilSweep};
use burgess_core::{Error, VerificationReport};
use rayon::prelude::*;

use crate::args::{BoundArgs, CharsumArgs, ExploreArgs, LemmaArgs, WeilArgs};
use crate::output::Row;
use crate::CliError;

/// Shared run settings.
pub struct Run {
    pub pool: rayon::ThreadPool,
    pub seed: u64,
    pub timings: bool,
}

impl Run {
    /// Wraps reports produced by one timed computation.
    fn rows(&self, reports: Vec<VerificationReport>, started: Instant) -> Vec<Row> {
        let ms = self.timings.then(|| started.elapsed().as_millis() as u64);
        reports.into_iter().map(|report| Row { report, runtime_ms: ms }).collect()
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_decimal(s: &str, what: &str, cc: &mut Consts) -> Result<Real, CliError> {
    let trimmed = s.trim();
    let ok = !trimmed.is_empty()
        && trimmed.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
        && trimmed.parse::<f64>().is_ok();
    if !ok {
        return Err(usage(format!("{what}: `{s}` is not a decimal number")));
    }
    Ok(Real::parse(trimmed, cc))
}

pub fn bound(run: &Run, a: &BoundArgs) -> Result<Vec<Row>, CliError> {
    let started = Instant::now();
    let mut cc = consts();
    let variant = Variant::parse(&a.variant).ok_or_else(|| usage("unknown variant"))?;
    let mut notes = Vec::new();
    let ctx = match (a.q, &a.log10_q, &a.log_q) {
        (Some(q), None, None) if !a.surrogate => BoundContext::exact(factorize(q)?, a.r, variant, &mut cc)?,
        (Some(q), None, None) => BoundContext::surrogate(Real::from_u64(q).ln(&mut cc)?, a.r, variant, &mut cc)?,
        (None, Some(l10), None) => {
            let l = parse_decimal(l10, "--log10-q", &mut cc)? * Real::ln10(&mut cc);
            if !a.surrogate {
                notes.push("no factorization for --log10-q: surrogate mode".to_string());
            }
            BoundContext::surrogate(l, a.r, variant, &mut cc)?
        }
        (None, None, Some(l)) => {
            if !a.surrogate {
                notes.push("no factorization for --log-q: surrogate mode".to_string());
            }
            BoundContext::surrogate(parse_decimal(l, "--log-q", &mut cc)?, a.r, variant, &mut cc)?
        }
        _ => return Err(usage("give exactly one of --q, --log10-q, --log-q")),
    };
    let ctx = match &a.c {
        Some(c) => {
            let c = parse_decimal(c, "--C", &mut cc)?;
            if !matches!(c.partial_cmp(&Real::one()), Some(o) if o.is_ge()) {
                return Err(usage("--C must be at least 1"));
            }
            ctx.with_c(c)
        }
        None => ctx,
    };
    let (length, length_param) = match (a.n, &a.theta) {
        (Some(n), None) => (LengthInput::Exact(n), ("N", n.to_string())),
        (None, Some(t)) => (LengthInput::Theta(parse_decimal(t, "--theta", &mut cc)?), ("theta", t.clone())),
        (None, None) => {
            notes.push("no --N or --theta given: theta = 0.5".to_string());
            (LengthInput::Theta(Real::ratio(1, 2)), ("theta", "0.5".to_string()))
        }
        _ => return Err(usage("give at most one of --N, --theta")),
    };
    let eval = burgess::evaluate_bound(&ctx, &length, &mut cc)?;
    let (lower, upper) = ctx.check_b_bounds(&mut cc)?;
    let (theorem_a, theorem_a_applicable) = burgess::theorem_a_comparison(&ctx, &eval.ln_n, &mut cc)?;
    let ln10 = Real::ln10(&mut cc);

    let mut rep = VerificationReport::new("bound", "burgess", "log-domain evaluation").mode(ctx.mode());
    for (k, v) in ctx.describe() {
        rep = rep.param(&k, v);
    }
    let log_bound = eval.bound.ln()?;
    rep = rep
        .param(length_param.0, length_param.1)
        .param("log_N", eval.ln_n.to_f64())
        .param("log_bound", log_bound.to_f64())
        .param("log10_bound", eval.log10_bound(&mut cc))
        .param("bound", eval.bound.to_f64().unwrap_or(f64::NAN))
        .param("applicable", eval.applicable)
        .param("reasons", eval.reasons.join("; "))
        .param("B_ge_B_min", lower.map_or("unchecked (below threshold)".to_string(), |b| b.to_string()))
        .param("B_le_erq", upper)
        .param("theorem_a_log10", (theorem_a.ln()? / ln10).to_f64())
        .param("theorem_a_applicable", theorem_a_applicable);
    match burgess::intermediates_for(&ctx, &length, &mut cc) {
        Ok(im) => {
            let lr = |x: &burgess_core::LogReal| x.ln().map_or(f64::NAN, |v| v.to_f64());
            rep = rep
                .param("log_u", lr(&im.u))
                .param("log_w", lr(&im.w))
                .param("s", im.s.to_f64())
                .param("alpha", im.alpha.to_f64())
                .param("log_P", lr(&im.p))
                .param("log_Q", lr(&im.q))
                .param("log_count_A", lr(&im.count_a))
                .param("log_setup_bound", lr(&im.setup_bound));
            if let Some(h) = im.alpha_bound_holds {
                rep = rep.param("alpha_bound_holds", h);
            }
        }
        Err(e) => notes.push(format!("intermediates unavailable: {e}")),
    }
    for n in eval.notes.iter().chain(&notes) {
        rep = rep.note(n.clone());
    }
    rep = rep.note("applicability is advisory: the value is reported below threshold too");
    rep.status = if lower == Some(false) || !upper {
        Status::Fail
    } else if eval.applicable {
        Status::Pass
    } else {
        Status::Inconclusive
    };
    Ok(run.rows(vec![rep], started))
}

pub fn verify_weil(run: &Run, a: &WeilArgs) -> Result<Vec<Row>, CliError> {
    if a.q_min > a.q_max || a.r.is_empty() || a.b.is_empty() {
        return Err(usage("empty q range, r set or B set"));
    }
    if a.r.iter().any(|&r| r < 1) {
        return Err(usage("r must be positive"));
    }
    let sweep = WeilSweep { r_set: a.r.clone(), b_set: a.b.clone(), per_character: a.per_character, floor_form: a.floor_form };
    let qs: Vec<u64> = (a.q_min.max(1)..=a.q_max).collect();
    let parts: Vec<Result<Vec<Row>, Error>> = run.pool.install(|| {
        qs.par_iter()
            .map(|&q| {
                let t = Instant::now();
                let reps = weil::check_weil_modulus(&factorize(q)?, &sweep)?;
                Ok(run.rows(reps, t))
            })
            .collect()
    });
    flatten(parts)
}

fn flatten(parts: Vec<Result<Vec<Row>, Error>>) -> Result<Vec<Row>, CliError> {
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

pub fn verify_lemmas(run: &Run, a: &LemmaArgs) -> Result<Vec<Row>, CliError> {
    if a.n_max < 2 {
        return Err(usage("--n-max must be at least 2"));
    }
    let mut jobs: Vec<(u64, usize, f64)> = Vec::new();
    for q in 1..=a.sq_q_max.max(a.sq_q_max_r3) {
        for &b in &a.sq_b {
            if b * b >= q as f64 {
                continue;
            }
            if q <= a.sq_q_max {
                jobs.push((q, 2, b));
            }
            if q <= a.sq_q_max_r3 && factorize(q)?.is_cubefree() {
                jobs.push((q, 3, b));
            }
        }
    }
    let parts: Vec<Result<Vec<Row>, Error>> = run.pool.install(|| {
        jobs.par_iter()
            .map(|&(q, r, b)| {
                let t = Instant::now();
                let rep = weil::check_sq_bounds(&factorize(q)?, r, b)?;
                Ok(run.rows(vec![rep], t))
            })
            .collect()
    });
    let mut rows = flatten(parts)?;

    let t = Instant::now();
    let complete = weil::sample_complete_sum_bounds(a.complete_trials, run.seed, a.complete_q_max, 2, 8)?;
    rows.extend(run.rows(vec![complete], t));

    let t = Instant::now();
    let mut cc = consts();
    let tables = SieveTables::new(a.n_max.max(certify::ZETA_TERMS as u32), &mut cc)?;
    let delta = certify::compute_delta(&tables, &mut cc)?;
    let sums = vec![certify::verify_mobius_sums(a.n_max, &tables, &delta)?, certify::verify_phi_sums(a.n_max, &tables, &delta)?];
    rows.extend(run.rows(sums, t));
    let t = Instant::now();
    rows.extend(run.rows(certify::verify_va_lemmas(a.va_trials, run.seed, &delta, &mut cc)?, t));
    Ok(rows)
}

pub fn table1(run: &Run) -> Result<Vec<Row>, CliError> {
    let t = Instant::now();
    let mut cc = consts();
    let reps = burgess::table1(&mut cc)?
        .into_iter()
        .map(|row| {
            let diff = row.max_abs_diff();
            VerificationReport::new("table1", "burgess", "closed form, rounded up to 3 decimals")
                .param("r", row.r)
                .param("C", row.c)
                .param("C_printed", row.printed_c)
                .param("C_diff", (row.c - row.printed_c).abs())
                .param("D", row.d)
                .param("D_printed", row.printed_d)
                .param("D_diff", (row.d - row.printed_d).abs())
                .param("C_raw", row.c_raw)
                .param("D_raw", row.d_raw)
                .margin(0.001 - diff, 0.001 - diff)
        })
        .collect();
    Ok(run.rows(reps, t))
}

pub fn certify_all(run: &Run) -> Result<Vec<Row>, CliError> {
    let t = Instant::now();
    let mut cc = consts();
    let tables = SieveTables::new(certify::ZETA_TERMS as u32, &mut cc)?;
    let delta = certify::compute_delta(&tables, &mut cc)?;
    let reference = Real::parse(burgess::DELTA_DIGITS, &mut cc);
    let rep = certify::delta_report(&delta).param("contains_60_digit_value", delta.delta.contains(&reference));
    let mut rows = run.rows(vec![rep], t);
    let t = Instant::now();
    let mut claims = certify::with_statements(certify::verify_claims(&mut cc)?);
    claims.sort_by(|x, y| x.claim_id.cmp(&y.claim_id));
    rows.extend(run.rows(claims, t));
    Ok(rows)
}

fn character(q: u64, index: u64) -> Result<DirichletCharacter, CliError> {
    if q == 0 {
        return Err(usage("q must be positive"));
    }
    let group = Arc::new(UnitGroupStructure::new(&factorize(q)?));
    DirichletCharacter::from_index(group, index).map_err(|e| usage(format!("--char-index: {e}")))
}

pub fn charsum(run: &Run, a: &CharsumArgs) -> Result<Vec<Row>, CliError> {
    let t = Instant::now();
    let chi = character(a.q, a.char_index)?;
    let s = chi.char_sum(a.m, a.n);
    let exact = chi.char_sum_exact(a.m, a.n);
    let gap = (s - exact.to_complex()).norm();
    let tol = 1e-9 * (a.n.max(1) as f64);
    let rep = VerificationReport::new("charsum", "characters", "direct summation, float vs exact root counts")
        .param("q", a.q)
        .param("char_index", a.char_index)
        .param("M", a.m)
        .param("N", a.n)
        .param("order", chi.order())
        .param("conductor", chi.conductor())
        .param("primitive", chi.is_primitive())
        .param("re", s.re)
        .param("im", s.im)
        .param("abs", s.norm())
        .param("exact_zero", exact.is_zero())
        .margin(tol - gap, tol - gap);
    Ok(run.rows(vec![rep], t))
}

pub fn explore(run: &Run, a: &ExploreArgs) -> Result<Vec<Row>, CliError> {
    if a.q_min < 2 || a.q_min > a.q_max {
        return Err(usage("explore needs 2 <= q-min <= q-max"));
    }
    if !(a.theta > 0.0 && a.theta <= 1.0) {
        return Err(usage("--theta must lie in (0, 1]"));
    }
    let variant = Variant::parse(&a.variant).ok_or_else(|| usage("unknown variant"))?;
    let qs: Vec<u64> = (a.q_min..=a.q_max).collect();
    let parts: Vec<Result<Vec<Row>, Error>> = run.pool.install(|| {
        qs.par_iter()
            .map(|&q| {
                let t = Instant::now();
                let mut cc = consts();
                let f = factorize(q)?;
                let chars = characters_of(&Arc::new(UnitGroupStructure::new(&f)), true);
                if chars.is_empty() {
                    return Ok(Vec::new());
                }
                let n = ((q as f64).powf(a.theta).round() as u64).max(1);
                let mut worst = (0.0f64, 0u64, 0u64);
                for chi in &chars {
                    for (m, s) in weil::window_sums(&chi.value_table(), n).iter().enumerate() {
                        if s.norm() > worst.0 {
                            worst = (s.norm(), chi.index(), m as u64);
                        }
                    }
                }
                let ctx = BoundContext::exact(f, a.r, variant, &mut cc)?;
                let eval = burgess::evaluate_bound(&ctx, &LengthInput::Exact(u128::from(n)), &mut cc)?;
                let log_bound = eval.bound.ln()?.to_f64();
                let mut rep = VerificationReport::new("explore", "burgess", "max over primitive chi and M of |S_chi(M, N)|")
                    .mode(ctx.mode())
                    .param("q", q)
                    .param("r", a.r)
                    .param("variant", variant.as_str())
                    .param("N", n)
                    .param("max_abs_sum", worst.0)
                    .param("worst_chi_index", worst.1)
                    .param("worst_M", worst.2)
                    .param("log_bound", log_bound)
                    .param("ratio", worst.0 / log_bound.exp())
                    .param("applicable", eval.applicable)
                    .note("exploratory: no pass/fail semantics");
                rep.status = Status::Inconclusive;
                Ok(run.rows(vec![rep], t))
            })
            .collect()
    });
    flatten(parts)
}
