//! Exact arithmetic in real quadratic fields `Q(√Δ)` and certified
//! logarithm enclosures.
//!
//! Rationals are `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator.

pub mod log;

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{BrigError, Result};
use crate::params::exact_sqrt;
use crate::terms::lucas_pair;

/// `r + s·√delta` with rational `r`, `s` and an integer radicand
/// `delta ≥ 0`.
///
/// When `delta` is a perfect square the element is folded into `s = 0` at
/// construction, so equal values compare equal. The radicand is otherwise
/// kept as given (it is never reduced to its square-free part); arithmetic
/// only combines elements with the same radicand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    r: BigRational,
    s: BigRational,
    delta: BigInt,
}

impl QuadElem {
    pub fn new(r: BigRational, s: BigRational, delta: BigInt) -> Result<Self> {
        if delta.is_negative() {
            return Err(BrigError::domain(format!("negative radicand {delta}")));
        }
        Ok(Self::new_unchecked(r, s, delta))
    }

    fn new_unchecked(r: BigRational, s: BigRational, delta: BigInt) -> Self {
        match exact_sqrt(&delta) {
            Some(root) if !s.is_zero() => {
                let r = r + s * BigRational::from_integer(root);
                QuadElem { r, s: BigRational::zero(), delta }
            }
            _ => QuadElem { r, s, delta },
        }
    }

    /// `r + s·√delta` from integers.
    pub fn from_ints(r: impl Into<BigInt>, s: impl Into<BigInt>, delta: impl Into<BigInt>) -> Result<Self> {
        Self::new(
            BigRational::from_integer(r.into()),
            BigRational::from_integer(s.into()),
            delta.into(),
        )
    }

    /// The rational `r` viewed in `Q(√delta)`.
    pub fn rational(r: BigRational, delta: &BigInt) -> Result<Self> {
        Self::new(r, BigRational::zero(), delta.clone())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.r
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.s
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    fn check_radicand(&self, other: &QuadElem) -> Result<()> {
        if self.delta != other.delta {
            return Err(BrigError::MismatchedRadicand {
                left: self.delta.to_string(),
                right: other.delta.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &QuadElem) -> Result<QuadElem> {
        self.check_radicand(other)?;
        Ok(QuadElem::new_unchecked(
            &self.r + &other.r,
            &self.s + &other.s,
            self.delta.clone(),
        ))
    }

    pub fn sub(&self, other: &QuadElem) -> Result<QuadElem> {
        self.add(&other.neg())
    }

    /// `(r₁ + s₁√Δ)(r₂ + s₂√Δ) = (r₁r₂ + s₁s₂Δ) + (r₁s₂ + s₁r₂)√Δ`.
    pub fn mul(&self, other: &QuadElem) -> Result<QuadElem> {
        self.check_radicand(other)?;
        let delta = BigRational::from_integer(self.delta.clone());
        let r = &self.r * &other.r + &self.s * &other.s * delta;
        let s = &self.r * &other.s + &self.s * &other.r;
        Ok(QuadElem::new_unchecked(r, s, self.delta.clone()))
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem {
            r: -&self.r,
            s: -&self.s,
            delta: self.delta.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> QuadElem {
        QuadElem {
            r: &self.r * c,
            s: &self.s * c,
            delta: self.delta.clone(),
        }
    }

    /// Galois conjugate `r - s√Δ`. For a square radicand the element is
    /// already rational and this is the identity.
    pub fn conj(&self) -> QuadElem {
        QuadElem {
            r: self.r.clone(),
            s: -&self.s,
            delta: self.delta.clone(),
        }
    }

    /// Field norm `r² - s²Δ`.
    pub fn norm(&self) -> BigRational {
        &self.r * &self.r - &self.s * &self.s * BigRational::from_integer(self.delta.clone())
    }

    pub fn pow(&self, mut e: u64) -> QuadElem {
        let mut base = self.clone();
        let mut acc = QuadElem::new_unchecked(BigRational::one(), BigRational::zero(), self.delta.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same radicand");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same radicand");
            }
        }
        acc
    }

    /// Exact sign of the real number `r + s√Δ`.
    pub fn sign(&self) -> Sign {
        // Clear denominators: multiply by the positive lcm of both.
        let l = self.r.denom().lcm(self.s.denom());
        let r = self.r.numer() * (&l / self.r.denom());
        let s = self.s.numer() * (&l / self.s.denom());
        surd_sign(&r, &s, &self.delta)
    }

    pub fn abs(&self) -> QuadElem {
        if self.sign() == Sign::Minus {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_zero() {
            write!(f, "{}", self.r)
        } else {
            write!(f, "{} + {}·√{}", self.r, self.s, self.delta)
        }
    }
}

/// Exact sign of `r + s·√delta` for integers `r`, `s` and `delta ≥ 0`.
///
/// When `r` and `s` agree in sign (or one vanishes) the answer is
/// immediate; otherwise it is `sign(r) · sign(r² - s²·delta)`.
pub fn surd_sign(r: &BigInt, s: &BigInt, delta: &BigInt) -> Sign {
    debug_assert!(!delta.is_negative());
    let sr = r.sign();
    let ss = if delta.is_zero() { Sign::NoSign } else { s.sign() };
    match (sr, ss) {
        (Sign::NoSign, x) | (x, Sign::NoSign) => x,
        (x, y) if x == y => x,
        (x, _) => {
            let diff = r * r - s * s * delta;
            match diff.sign() {
                Sign::NoSign => Sign::NoSign,
                Sign::Plus => x,
                Sign::Minus => -x,
            }
        }
    }
}

/// Free-function form of [`QuadElem::sign`].
pub fn quad_sign(x: &QuadElem) -> Sign {
    x.sign()
}

fn half_pair(v: BigInt, u: BigInt, delta: BigInt) -> QuadElem {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    QuadElem::new_unchecked(
        BigRational::from_integer(v) * &half,
        BigRational::from_integer(u) * half,
        delta,
    )
}

/// `α^m` for the dominant root `α` of `x² - Ax + B` (real case),
/// as `(V_m ± U_m√Δ)/2` from the Lucas pair at `(A, B)`.
///
/// The sign in front of `U_m` is `+` for `A ≥ 0` and `-` for `A < 0`, the
/// latter because then `α = (A - √Δ)/2` is the root of larger modulus.
pub fn alpha_power(a: &BigInt, b: &BigInt, m: u64) -> Result<QuadElem> {
    let delta = a * a - b * 4u32;
    if delta.is_negative() {
        return Err(BrigError::domain("alpha_power needs A² - 4B ≥ 0"));
    }
    let pair = lucas_pair(a, b, m);
    let u = if a.is_negative() { -pair.u } else { pair.u };
    Ok(half_pair(pair.v, u, delta))
}

/// `β^m` for the smaller-modulus root `β`. Computed directly rather than
/// by conjugation, which is the identity once a square radicand is folded.
pub fn beta_power(a: &BigInt, b: &BigInt, m: u64) -> Result<QuadElem> {
    let delta = a * a - b * 4u32;
    if delta.is_negative() {
        return Err(BrigError::domain("beta_power needs A² - 4B ≥ 0"));
    }
    let pair = lucas_pair(a, b, m);
    let u = if a.is_negative() { pair.u } else { -pair.u };
    Ok(half_pair(pair.v, u, delta))
}

/// `φ^n = (L_n + F_n√5)/2` with `φ = (1 + √5)/2`.
pub fn golden_power(n: u64) -> QuadElem {
    alpha_power(&BigInt::one(), &-BigInt::one(), n).expect("Δ = 5")
}
