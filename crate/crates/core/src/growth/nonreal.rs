//! Non-real case `A² < 4B`, where `|α| = √B` and `B ≥ 2` for
//! non-degenerate sequences.
//!
//! The threshold from which `|u_n| ≥ |α|^{2n/3}` is guaranteed carries an
//! unknown absolute constant, so it is only ever reported. Pass/fail
//! statements rely on the empirical threshold found by scanning.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::{Certificate, GrowthCheck, GrowthReport, GrowthResult, SurdMargin};
use crate::error::{BrigError, Result};
use crate::exactnum::log::{log_loglog_sq, refine, Interval};
use crate::params::{classify, SequenceClass, SequenceParams};
use crate::terms::{term, TermWindow};

/// Default constant in the reported threshold `c·ln X·(ln ln X)²`.
pub const DEFAULT_C5: u64 = 50;

fn require_nonreal(params: &SequenceParams) -> Result<()> {
    if classify(params) != SequenceClass::NonRealCase {
        return Err(BrigError::domain(format!(
            "{params} is not a non-degenerate non-real-case sequence"
        )));
    }
    Ok(())
}

fn certificates(u_abs: &BigInt, b_pow: &BigInt, n: u64) -> [Certificate; 2] {
    let exp = u32::try_from(n).expect("index fits in u32");
    [
        Certificate {
            label: "|u_n|^3 >= B^n",
            margin: SurdMargin::integer(u_abs.pow(3) - b_pow),
        },
        Certificate {
            label: "|u_n| >= 1.25^n",
            margin: SurdMargin::integer((u_abs << (2 * n)) - BigInt::from(5).pow(exp)),
        },
    ]
}

/// `|u_n|³ ≥ B^n` at index `n`, together with the weaker `|u_n| ≥ 1.25^n`.
/// The verdict is that of the first inequality.
pub fn check_nonreal_growth(params: &SequenceParams, n: u64) -> GrowthResult {
    require_nonreal(params)?;
    let u_abs = term(params, n).abs();
    let b_pow = params.b.pow(u32::try_from(n).expect("index fits in u32"));
    let certs = certificates(&u_abs, &b_pow, n);
    let holds = certs[0].holds();
    let mut report = GrowthReport::evaluated(n, GrowthCheck::NonReal, certs.to_vec());
    report.bound_holds = Some(holds);
    Ok(report)
}

fn threshold_argument(params: &SequenceParams) -> BigUint {
    (&params.b * params.p.abs() + params.q.abs())
        .to_biguint()
        .expect("B > 0 in the non-real case")
}

/// Enclosure of `c5·ln X·(ln ln X)²` with `X = B|P| + |Q|`, or the point
/// `1` when `X ≤ 2` (where `ln ln X` is not positive).
pub fn nonreal_threshold_interval(
    params: &SequenceParams,
    c5: &BigRational,
    prec: u32,
) -> Result<Interval> {
    require_nonreal(params)?;
    let x = threshold_argument(params);
    if x <= BigUint::from(2u32) {
        return Ok(Interval::point(BigRational::one()));
    }
    Ok(log_loglog_sq(c5, &x, prec))
}

/// `⌈c5·ln X·(ln ln X)²⌉` with `X = B|P| + |Q|`, rounded up from a
/// certified enclosure; `1` when `X ≤ 2`.
pub fn nonreal_threshold(params: &SequenceParams, c5: &BigRational) -> Result<u64> {
    require_nonreal(params)?;
    let x = threshold_argument(params);
    if x <= BigUint::from(2u32) {
        return Ok(1);
    }
    let ceil = |iv: &Interval| {
        let lo = iv.lo.ceil().to_integer();
        let hi = iv.hi.ceil().to_integer();
        (lo == hi).then_some(hi)
    };
    let value = refine(|prec| log_loglog_sq(c5, &x, prec), ceil)
        .unwrap_or_else(|| log_loglog_sq(c5, &x, 1 << 14).hi.ceil().to_integer());
    Ok(value.to_u64().unwrap_or(u64::MAX).max(1))
}

/// Indices `n ≤ horizon` with `|u_n|³ < B^n`, in increasing order.
pub fn nonreal_violations(params: &SequenceParams, horizon: u64) -> Result<Vec<u64>> {
    require_nonreal(params)?;
    let mut w = TermWindow::start(params);
    let mut b_pow = BigInt::one();
    let mut out = Vec::new();
    for n in 0..=horizon {
        if w.current.abs().pow(3) < b_pow {
            out.push(n);
        }
        w.advance(&params.a, &params.b);
        b_pow *= &params.b;
    }
    Ok(out)
}

/// Smallest `n*` such that `|u_n|³ ≥ B^n` for every `n ∈ [n*, horizon]`.
/// `None` if the bound fails at `horizon` itself.
pub fn empirical_threshold(params: &SequenceParams, horizon: u64) -> Result<Option<u64>> {
    let violations = nonreal_violations(params, horizon)?;
    Ok(match violations.last() {
        None => Some(0),
        Some(&last) if last == horizon => None,
        Some(&last) => Some(last + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(a: i64, b: i64, p: i64, q: i64) -> SequenceParams {
        SequenceParams::new(a, b, p, q)
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn examples() {
        let params = sp(1, 2, 1, 1);
        let r7 = check_nonreal_growth(&params, 7).unwrap();
        assert_eq!(r7.bound_holds, Some(false));
        assert_eq!(r7.certificates[0].margin.rational, BigInt::from(27 - 128));
        let r5 = check_nonreal_growth(&params, 5).unwrap();
        assert_eq!(r5.bound_holds, Some(true));
        assert_eq!(r5.certificates[0].margin.rational, BigInt::from(125 - 32));
        assert_eq!(check_nonreal_growth(&params, 0).unwrap().bound_holds, Some(true));
        assert!(check_nonreal_growth(&sp(3, 2, 1, 1), 4).is_err());
    }

    #[test]
    fn empirical_threshold_is_a_true_suffix() {
        for params in [sp(1, 2, 1, 1), sp(3, 6, 5, 6), sp(-2, 7, 3, -8)] {
            let n_star = empirical_threshold(&params, 300).unwrap().unwrap();
            for n in n_star..=300 {
                assert_eq!(check_nonreal_growth(&params, n).unwrap().bound_holds, Some(true));
            }
            if n_star > 0 {
                let before = check_nonreal_growth(&params, n_star - 1).unwrap();
                assert_eq!(before.bound_holds, Some(false));
            }
        }
    }

    #[test]
    fn threshold_scales_with_constant() {
        let params = sp(3, 6, 5, 6);
        let one = nonreal_threshold_interval(&params, &rat(50), 128).unwrap();
        let two = nonreal_threshold_interval(&params, &rat(100), 128).unwrap();
        assert_eq!(two.lo, &one.lo * rat(2));
        assert_eq!(two.hi, &one.hi * rat(2));
        // X = 36, 50·ln 36·(ln ln 36)² ≈ 291.9
        assert_eq!(nonreal_threshold(&params, &rat(50)).unwrap(), 292);
    }

    #[test]
    fn small_argument_guard() {
        // X = B|P| + |Q| with P = 0, Q = 1 is 1.
        assert_eq!(nonreal_threshold(&sp(1, 2, 0, 1), &rat(50)).unwrap(), 1);
        assert!(nonreal_threshold(&sp(3, 2, 1, 1), &rat(50)).is_err());
    }
}
