#![allow(dead_code)]

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use brig_core::SequenceParams;

pub fn sp(a: i64, b: i64, p: i64, q: i64) -> SequenceParams {
    SequenceParams::new(a, b, p, q)
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Plain iteration of the recurrence, independent of the library.
pub fn iterate(a: i64, b: i64, p: i64, q: i64, n: usize) -> Vec<BigInt> {
    let (a, b) = (big(a), big(b));
    let mut out = vec![big(p), big(q)];
    while out.len() <= n {
        let k = out.len();
        let next = &a * &out[k - 1] - &b * &out[k - 2];
        out.push(next);
    }
    out.truncate(n + 1);
    out
}

const BITS: u32 = 256;

/// Sign of `r + s·√delta` from a 256-bit enclosure of `√delta`; `None`
/// when the enclosure straddles zero.
pub fn interval_sign(r: &BigRational, s: &BigRational, delta: &BigInt) -> Option<Sign> {
    let scaled = delta << (2 * BITS);
    let root = scaled.sqrt();
    let den = BigInt::from(1) << BITS;
    let lo = BigRational::new(root.clone(), den.clone());
    let hi = BigRational::new(root + 1, den);
    let (a, b) = if s.is_negative() {
        (r + s * &hi, r + s * &lo)
    } else {
        (r + s * &lo, r + s * &hi)
    };
    if s.is_zero() {
        return Some(r.numer().sign());
    }
    if a.is_positive() {
        Some(Sign::Plus)
    } else if b.is_negative() {
        Some(Sign::Minus)
    } else {
        None
    }
}

pub fn interval_sign_int(r: &BigInt, s: &BigInt, delta: &BigInt) -> Option<Sign> {
    interval_sign(
        &BigRational::from_integer(r.clone()),
        &BigRational::from_integer(s.clone()),
        delta,
    )
}
