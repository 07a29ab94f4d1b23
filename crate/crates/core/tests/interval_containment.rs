//! Randomized containment checks: every interval result must contain the
//! exact value, approximated here at 512 bits (about 154 digits).

use astro_float::{BigFloat, Consts, RoundingMode};
use burgess_core::interval::Interval;
use proptest::prelude::*;

const ORACLE_BITS: usize = 512;
const RM: RoundingMode = RoundingMode::ToEven;

fn big(x: f64) -> BigFloat {
    BigFloat::from_f64(x, ORACLE_BITS)
}

fn encloses(iv: &Interval, v: &BigFloat) -> bool {
    let lo = iv.lo();
    let hi = iv.hi();
    lo.inner().cmp(v).is_some_and(|c| c <= 0) && v.cmp(hi.inner()).is_some_and(|c| c <= 0)
}

fn finite_nonzero() -> impl Strategy<Value = f64> {
    prop_oneof![-1e6..1e6f64, -1.0..1.0f64, 1e-8..1e-3f64].prop_filter("nonzero", |x| *x != 0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    // five operations per case: 10^4 checks in total
    #[test]
    fn arithmetic_and_transcendentals_contain_the_exact_value(
        x in finite_nonzero(),
        y in finite_nonzero(),
        p in 1e-6..50.0f64,
        e in -30.0..30.0f64,
    ) {
        let mut cc = Consts::new().unwrap();
        let (ix, iy) = (Interval::point_f64(x), Interval::point_f64(y));
        let (bx, by) = (big(x), big(y));

        prop_assert!(encloses(&ix.add(&iy), &bx.add(&by, ORACLE_BITS, RM)));
        prop_assert!(encloses(&ix.mul(&iy).sub(&iy), &bx.mul(&by, ORACLE_BITS, RM).sub(&by, ORACLE_BITS, RM)));
        prop_assert!(encloses(&ix.div(&iy).unwrap(), &bx.div(&by, ORACLE_BITS, RM)));

        let ip = Interval::point_f64(p);
        let bp = big(p);
        let ln_oracle = bp.ln(ORACLE_BITS, RM, &mut cc);
        prop_assert!(encloses(&ip.ln(&mut cc).unwrap(), &ln_oracle));

        let ie = Interval::point_f64(e);
        let pow_oracle = bp.pow(&big(e), ORACLE_BITS, RM, &mut cc);
        prop_assert!(encloses(&ip.pow(&ie, &mut cc).unwrap(), &pow_oracle));
    }

    #[test]
    fn wide_inputs_contain_every_sampled_point(
        a in 0.1..10.0f64,
        w in 0.0..1.0f64,
        t in 0.0..1.0f64,
    ) {
        let mut cc = Consts::new().unwrap();
        let iv = Interval::from_f64_bounds(a, a + w).unwrap();
        let x = a + w * t;
        let f = iv.exp(&mut cc).unwrap().mul(&iv.sqrt().unwrap());
        let bx = big(x);
        let oracle = bx.exp(ORACLE_BITS, RM, &mut cc).mul(&bx.sqrt(ORACLE_BITS, RM), ORACLE_BITS, RM);
        prop_assert!(encloses(&f, &oracle));
    }
}

#[test]
fn constants_are_tight_and_correct() {
    let mut cc = Consts::new().unwrap();
    let pi = Interval::pi(&mut cc);
    assert!(pi.width_f64() < 1e-50);
    let pi_oracle = BigFloat::parse(
        "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899",
        astro_float::Radix::Dec,
        ORACLE_BITS,
        RM,
        &mut cc,
    );
    assert!(encloses(&pi, &pi_oracle));
    let e = Interval::one().exp(&mut cc).unwrap();
    assert!(encloses(&e, &big(1.0).exp(ORACLE_BITS, RM, &mut cc)));
    assert!(encloses(&Interval::e(&mut cc), &big(1.0).exp(ORACLE_BITS, RM, &mut cc)));
    let three = Interval::one().add(&Interval::point_u64(2));
    assert!(three.width_f64() == 0.0 && three.contains_f64(3.0));
}
