//! Lower bounds for the Lucas sequence `U_n` of a non-degenerate `(A, B)`:
//! `|U_n| ≥ ½|α|^{n-2}` if `B < 0`, `|U_n| ≥ |α|^{n-1}` if `0 < 4B < A²`,
//! and, in the non-real case, `|U_n| ≥ |α|^{n - c1·(ln n)²}` with an
//! unspecified constant `c1` (reporting only).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Certificate, GrowthCheck, GrowthReport, GrowthResult, SurdMargin};
use crate::error::{BrigError, Result};
use crate::exactnum::log::{ln_int, refine};
use crate::params::{classify, SequenceClass, SequenceParams};
use crate::terms::{lucas_pair, TermWindow};

/// Default `c1` for the reporting-only non-real clause.
pub const DEFAULT_C1: u64 = 100;

fn lucas_class(a: &BigInt, b: &BigInt) -> Result<SequenceClass> {
    let class = classify(&SequenceParams::new(a.clone(), b.clone(), 0, 1));
    if class.is_degenerate() {
        return Err(BrigError::domain(format!("(A, B) = ({a}, {b}) is {class}")));
    }
    Ok(class)
}

fn real_certificate(
    b: &BigInt,
    delta: &BigInt,
    u_n: &BigInt,
    v_lag: &BigInt,
    u_lag: &BigInt,
) -> Certificate {
    let (label, lhs) = if b.is_negative() {
        ("2|U_n| >= alpha^(n-2)", u_n.abs() * 4u32)
    } else {
        ("|U_n| >= alpha^(n-1)", u_n.abs() * 2u32)
    };
    Certificate {
        label,
        margin: SurdMargin {
            rational: lhs - v_lag,
            surd: -u_lag.clone(),
            radicand: delta.clone(),
        },
    }
}

/// Verifies the Lucas-sequence lower bound at index `n ≥ 2`.
///
/// In the non-real case the bound is only evaluated when `c1` is given,
/// and the verdict comes from certified logarithms.
pub fn check_lucas_bounds(
    a: &BigInt,
    b: &BigInt,
    n: u64,
    c1: Option<&BigRational>,
) -> GrowthResult {
    if n < 2 {
        return Err(BrigError::domain("Lucas bounds start at n = 2"));
    }
    let class = lucas_class(a, b)?;
    // |U_n| does not change when A is replaced by -A.
    let a_abs = a.abs();
    let delta = &a_abs * &a_abs - b * 4;
    match class {
        SequenceClass::RealCase => {
            let lag = if b.is_negative() { n - 2 } else { n - 1 };
            let at_n = lucas_pair(&a_abs, b, n);
            let at_lag = lucas_pair(&a_abs, b, lag);
            let cert = real_certificate(b, &delta, &at_n.u, &at_lag.v, &at_lag.u);
            Ok(GrowthReport::evaluated(n, GrowthCheck::Lucas, vec![cert]))
        }
        SequenceClass::NonRealCase => {
            let c1 = c1.ok_or_else(|| {
                BrigError::domain("the non-real Lucas bound needs an explicit c1")
            })?;
            let u_n = lucas_pair(&a_abs, b, n).u.abs();
            let b_nat = b.magnitude().clone();
            let n_nat = num_bigint::BigUint::from(n);
            let n_rat = BigRational::from_integer(n.into());
            // 2·ln|U_n| - (n - c1·(ln n)²)·ln B
            let decided = refine(
                |prec| {
                    let ln_n = ln_int(&n_nat, prec);
                    let exponent = ln_n.square().scale(&-c1.clone()).add_rational(&n_rat);
                    let rhs = exponent.mul(&ln_int(&b_nat, prec));
                    let lhs = ln_int(u_n.magnitude(), prec).scale(&BigRational::from_integer(2.into()));
                    lhs.sub(&rhs)
                },
                |iv| match iv.cmp_point(&BigRational::zero()) {
                    Some(Ordering::Less) => Some(true),
                    Some(Ordering::Greater) => Some(false),
                    _ => None,
                },
            );
            let mut report = GrowthReport::evaluated(n, GrowthCheck::Lucas, Vec::new());
            report.bound_holds = decided;
            report.note = Some(format!("reporting only, c1 = {c1}"));
            Ok(report)
        }
        SequenceClass::Degenerate(_) => unreachable!("rejected above"),
    }
}

/// Indices `n ∈ [2, horizon]` at which the real-case Lucas bound fails.
pub fn lucas_bound_failures(a: &BigInt, b: &BigInt, horizon: u64) -> Result<Vec<u64>> {
    if lucas_class(a, b)? != SequenceClass::RealCase {
        return Err(BrigError::domain("exact Lucas bounds cover the real case only"));
    }
    let a_abs = a.abs();
    let delta = &a_abs * &a_abs - b * 4;
    let lag = if b.is_negative() { 2 } else { 1 };
    let mut at_n = TermWindow::start(&SequenceParams::new(a_abs.clone(), b.clone(), 0, 1));
    let mut lag_u = at_n.clone();
    let mut lag_v = TermWindow::start(&SequenceParams::new(a_abs.clone(), b.clone(), 2, a_abs.clone()));
    let mut out = Vec::new();
    for n in 0..=horizon {
        if n >= 2 {
            let cert = real_certificate(b, &delta, &at_n.current, &lag_v.current, &lag_u.current);
            if !cert.holds() {
                out.push(n);
            }
        }
        at_n.advance(&a_abs, b);
        if n >= lag {
            lag_u.advance(&a_abs, b);
            lag_v.advance(&a_abs, b);
        }
    }
    Ok(out)
}
