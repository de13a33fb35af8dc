//! Certified enclosures of natural logarithms.
//!
//! Every threshold that involves `ln` (zero-search bounds, applicability
//! thresholds for the growth checks) is evaluated through a rational
//! interval guaranteed to contain the true value. Decisions refine the
//! precision until the interval no longer straddles the decision point.
//!
//! `ln x` is computed as `e·ln 2 + ln y` with `x = 2^e·y`, `1 ≤ y < 2`,
//! and `ln y = 2·atanh((y-1)/(y+1))`, summed in fixed point with directed
//! rounding. The atanh argument never exceeds `1/3`, so each term gains
//! more than three bits.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const START_PREC: u32 = 64;
const MAX_PREC: u32 = 1 << 14;

/// Closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn add_rational(&self, c: &BigRational) -> Interval {
        Interval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().expect("non-empty");
        let hi = products.iter().max().cloned().expect("non-empty");
        Interval { lo, hi }
    }

    pub fn square(&self) -> Interval {
        if !self.lo.is_negative() {
            Interval { lo: &self.lo * &self.lo, hi: &self.hi * &self.hi }
        } else if !self.hi.is_positive() {
            Interval { lo: &self.hi * &self.hi, hi: &self.lo * &self.lo }
        } else {
            let m = (&self.lo * &self.lo).max(&self.hi * &self.hi);
            Interval { lo: BigRational::zero(), hi: m }
        }
    }

    /// Where `x` sits relative to the interval, if that is already decided.
    pub fn cmp_point(&self, x: &BigRational) -> Option<Ordering> {
        if x < &self.lo {
            Some(Ordering::Less)
        } else if x > &self.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

fn ceil_div(n: &BigInt, d: &BigInt) -> BigInt {
    n.div_ceil(d)
}

/// `2·atanh(p/q)·2^w`, enclosed; requires `0 ≤ p/q ≤ 1/3`.
fn two_atanh_fixed(p: &BigInt, q: &BigInt, w: u32) -> (BigInt, BigInt) {
    debug_assert!(!p.is_negative() && p * 3 <= *q);
    if p.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let p2 = p * p;
    let q2 = q * q;
    let scaled = p << w;
    let mut pw_lo = scaled.div_floor(q);
    let mut pw_hi = ceil_div(&scaled, q);
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut k = BigInt::one();
    loop {
        sum_lo += pw_lo.div_floor(&k);
        sum_hi += ceil_div(&pw_hi, &k);
        k += 2;
        pw_lo = (&pw_lo * &p2).div_floor(&q2);
        pw_hi = ceil_div(&(&pw_hi * &p2), &q2);
        if pw_hi <= BigInt::one() {
            // Remaining tail: Σ z^j/j over odd j ≥ k is at most
            // z^k / (k(1 - z²)) ≤ (9/8)·z^k / k for z ≤ 1/3.
            sum_hi += ceil_div(&(&pw_hi * 9), &(&k * 8));
            break;
        }
    }
    (sum_lo * 2, sum_hi * 2)
}

/// `ln x · 2^w` enclosed, for an integer `x ≥ 1`.
fn ln_fixed(x: &BigUint, w: u32) -> (BigInt, BigInt) {
    if x.is_one() {
        return (BigInt::zero(), BigInt::zero());
    }
    let bits = x.bits();
    let e = bits - 1;
    let x = BigInt::from(x.clone());
    // Truncate x to a window of w + 4 significant bits: y ∈ [t, t+1]·2^(s-e).
    let (t_lo, t_hi, den) = if bits <= u64::from(w) + 4 {
        let den = BigInt::one() << e;
        (x.clone(), x, den)
    } else {
        let s = bits - (u64::from(w) + 4);
        let t = &x >> s;
        let den = BigInt::one() << (e - s);
        (t.clone(), t + 1, den)
    };
    let (ln2_lo, ln2_hi) = two_atanh_fixed(&BigInt::one(), &BigInt::from(3), w);
    let (y_lo, _) = two_atanh_fixed(&(&t_lo - &den), &(&t_lo + &den), w);
    let (_, y_hi) = two_atanh_fixed(&(&t_hi - &den), &(&t_hi + &den), w);
    let e = BigInt::from(e);
    (&e * ln2_lo + y_lo, &e * ln2_hi + y_hi)
}

fn fixed_to_interval((lo, hi): (BigInt, BigInt), w: u32) -> Interval {
    let den = BigInt::one() << w;
    Interval {
        lo: BigRational::new(lo, den.clone()),
        hi: BigRational::new(hi, den),
    }
}

fn working_bits(prec: u32, magnitude_bits: u64) -> u32 {
    let guard = 64 - magnitude_bits.max(1).leading_zeros();
    prec + guard + 8
}

/// Enclosure of `ln x` for an integer `x ≥ 1`, of width about `2^-prec`.
pub fn ln_int(x: &BigUint, prec: u32) -> Interval {
    assert!(!x.is_zero(), "ln of zero");
    let w = working_bits(prec, x.bits());
    fixed_to_interval(ln_fixed(x, w), w)
}

/// Enclosure of `ln x` for a positive rational `x`.
pub fn ln_rational(x: &BigRational, prec: u32) -> Interval {
    assert!(x.is_positive(), "ln of a non-positive rational");
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    ln_int(num, prec).sub(&ln_int(den, prec))
}

pub fn ln2(prec: u32) -> Interval {
    ln_int(&BigUint::from(2u32), prec)
}

/// Repeatedly evaluates `enclose` at doubling precision until `decide`
/// accepts the enclosure. Gives up (returning `None`) past `MAX_PREC` bits.
pub fn refine<T>(
    mut enclose: impl FnMut(u32) -> Interval,
    decide: impl Fn(&Interval) -> Option<T>,
) -> Option<T> {
    let mut prec = START_PREC;
    while prec <= MAX_PREC {
        if let Some(t) = decide(&enclose(prec)) {
            return Some(t);
        }
        prec *= 2;
    }
    None
}

fn ceil_rational(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// Enclosure of `offset + coef·ln x`.
pub fn affine_ln(offset: &BigRational, coef: &BigRational, x: &BigUint, prec: u32) -> Interval {
    ln_int(x, prec).scale(coef).add_rational(offset)
}

/// `⌈offset + coef·ln x⌉`, exact. For `x ≥ 2` and `coef ≠ 0` the value is
/// transcendental, so refinement always settles; if the precision cap is
/// ever hit the upper end of the enclosure is used, which rounds up.
pub fn ceil_affine_ln(offset: &BigRational, coef: &BigRational, x: &BigUint) -> BigInt {
    if x.is_one() || coef.is_zero() {
        return ceil_rational(offset);
    }
    let decided = refine(
        |prec| affine_ln(offset, coef, x, prec),
        |iv| {
            let (a, b) = (ceil_rational(&iv.lo), ceil_rational(&iv.hi));
            (a == b).then_some(a)
        },
    );
    decided.unwrap_or_else(|| ceil_rational(&affine_ln(offset, coef, x, MAX_PREC).hi))
}

/// Compares `v` with `offset + coef·ln x`. `None` only if the cap is hit,
/// which cannot happen unless the two are equal.
pub fn cmp_affine_ln(
    v: &BigRational,
    offset: &BigRational,
    coef: &BigRational,
    x: &BigUint,
) -> Option<Ordering> {
    if x.is_one() || coef.is_zero() {
        return Some(v.cmp(offset));
    }
    refine(|prec| affine_ln(offset, coef, x, prec), |iv| {
        iv.cmp_point(v).filter(|o| *o != Ordering::Equal)
    })
}

/// Enclosure of `c·ln X·(ln ln X)²` for an integer `X ≥ 3`.
pub fn log_loglog_sq(c: &BigRational, x: &BigUint, prec: u32) -> Interval {
    let l = ln_int(x, prec);
    // ln X > 1 for X ≥ 3, so both endpoints of l are positive once prec ≥ 8.
    let ll = Interval {
        lo: ln_rational(&l.lo, prec).lo,
        hi: ln_rational(&l.hi, prec).hi,
    };
    l.mul(&ll.square()).scale(c)
}
