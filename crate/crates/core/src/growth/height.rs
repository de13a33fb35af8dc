//! Height of the ratio `γ = b/a` of the coefficients in
//! `u_n = a·α^n - b·β^n`, where `a = (Q - Pβ)/D`, `b = (Q - Pα)/D`.
//!
//! With `A ≥ 0` (after sign normalization), `γ = (2Q - PA - PD)/(2Q - PA + PD)`.
//! For integer `D` it is rational, a root of
//! `(PA - PD - 2Q)x - (PA + PD - 2Q)`. Otherwise it is a root of the
//! self-reciprocal `c·x² + m·x + c` with `c = Q² - PQA + BP²` and
//! `m = -(2Q² - 2PQA + P²(A² - 2B))`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::SurdMargin;
use crate::error::{BrigError, Result};
use crate::params::{classify, SequenceClass, SequenceParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioHeight {
    /// Primitive minimal polynomial of `b/a`, highest degree first, with a
    /// positive leading coefficient.
    pub coeffs: Vec<BigInt>,
    /// Maximum absolute value of the coefficients.
    pub height: BigInt,
    /// `b/a` is rational.
    pub linear: bool,
    /// Twice `2(|Q| + |P|(|A| + √|Δ|)/2)² - 1 - H`, which is non-negative
    /// exactly when the height bound holds.
    pub bound_margin: SurdMargin,
}

impl RatioHeight {
    /// The quadratic's leading and constant coefficients agree.
    pub fn is_self_reciprocal(&self) -> bool {
        self.coeffs.first() == self.coeffs.last()
    }
}

/// `Q² - PQA + BP²`, the product `(Q - Pα)(Q - Pβ)`; zero exactly when
/// `a·b = 0`.
fn ratio_norm(p: &SequenceParams) -> BigInt {
    &p.q * &p.q - &p.p * &p.q * &p.a + &p.b * &p.p * &p.p
}

fn primitive(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    let content = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !content.is_zero() {
        for c in coeffs.iter_mut() {
            *c /= &content;
        }
    }
    if coeffs.first().is_some_and(|c| c.is_negative()) {
        for c in coeffs.iter_mut() {
            *c = -&*c;
        }
    }
    coeffs
}

fn bound_margin(params: &SequenceParams, height: &BigInt) -> SurdMargin {
    let abs_delta = (&params.a * &params.a - &params.b * 4u32).abs();
    let p = params.p.abs();
    let x2 = params.q.abs() * 2 + &p * params.a.abs();
    SurdMargin {
        rational: &x2 * &x2 + &p * &p * &abs_delta - 2 - height * 2,
        surd: x2 * p * 2,
        radicand: abs_delta,
    }
}

/// Minimal polynomial and naive height of `b/a`. Requires `a·b ≠ 0` and
/// distinct roots.
pub fn ratio_height(params: &SequenceParams) -> Result<RatioHeight> {
    if params.p.is_zero() && params.q.is_zero() {
        return Err(BrigError::DegenerateConstruction("P = Q = 0".into()));
    }
    let params = params.sign_normalized();
    let disc = params.discriminant();
    if disc.delta.is_zero() {
        return Err(BrigError::DegenerateConstruction(
            "equal roots: a and b are undefined".into(),
        ));
    }
    let c = ratio_norm(&params);
    if c.is_zero() {
        return Err(BrigError::DegenerateConstruction("a·b = 0".into()));
    }
    let (p, q, a, b) = (&params.p, &params.q, &params.a, &params.b);
    let (coeffs, linear) = match disc.sqrt_if_square() {
        Some(d) => {
            let lead = p * a - p * d - q * 2;
            let constant = -(p * a + p * d - q * 2u32);
            (primitive(vec![lead, constant]), true)
        }
        None => {
            let m = -(q * q * 2u32 - p * q * a * 2u32 + p * p * (a * a - b * 2u32));
            if &m * &m == &c * &c * 4 {
                // Double root ±1: b/a = 1 (P = 0) or b/a = -1 (2Q = PA).
                let root_sign = if m.sign() == c.sign() { -1 } else { 1 };
                (vec![BigInt::from(1), BigInt::from(-root_sign)], true)
            } else {
                (primitive(vec![c.clone(), m, c]), false)
            }
        }
    };
    let height = coeffs.iter().map(|c| c.abs()).max().expect("non-empty");
    let bound_margin = bound_margin(&params, &height);
    Ok(RatioHeight {
        coeffs,
        height,
        linear,
        bound_margin,
    })
}

/// `H(b/a) ≤ 2(|Q| + |P|(|A| + √|Δ|)/2)² - 1`, decided exactly.
pub fn height_bound_holds(h: &RatioHeight) -> bool {
    h.bound_margin.is_nonnegative()
}

/// `1/(H + 1) < |b/a| < H + 1` in the real case, decided exactly.
///
/// `b/a = (Q - Pα)²/N` with `N = Q² - PQA + BP²` and
/// `4(Q - Pα)² = w² + P²Δ - 2wP·√Δ`, `w = 2Q - PA`.
pub fn height_sandwich_check(params: &SequenceParams) -> Result<bool> {
    match classify(params) {
        SequenceClass::RealCase => {}
        SequenceClass::NonRealCase => {
            return Err(BrigError::domain(
                "non-real case: |b/a| = 1 since b and a are complex conjugates up to sign",
            ))
        }
        SequenceClass::Degenerate(r) => {
            return Err(BrigError::domain(format!("degenerate sequence: {r}")))
        }
    }
    let h = ratio_height(params)?;
    let params = params.sign_normalized();
    let (p, q, a) = (&params.p, &params.q, &params.a);
    let delta = params.discriminant().delta;
    let w = q * 2u32 - p * a;
    let n4 = ratio_norm(&params).abs() * 4;
    let mut x_rat = &w * &w + p * p * &delta;
    let mut x_surd = -(&w * p * 2u32);
    if crate::exactnum::surd_sign(&x_rat, &x_surd, &delta) == Sign::Minus {
        x_rat = -x_rat;
        x_surd = -x_surd;
    }
    let h1 = &h.height + 1;
    // 4|N|(H + 1) - |X| > 0
    let upper = SurdMargin {
        rational: &n4 * &h1 - &x_rat,
        surd: -x_surd.clone(),
        radicand: delta.clone(),
    };
    // (H + 1)|X| - 4|N| > 0
    let lower = SurdMargin {
        rational: &h1 * &x_rat - &n4,
        surd: &h1 * &x_surd,
        radicand: delta,
    };
    Ok(upper.sign() == Sign::Plus && lower.sign() == Sign::Plus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(a: i64, b: i64, p: i64, q: i64) -> SequenceParams {
        SequenceParams::new(a, b, p, q)
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn fibonacci_example() {
        let h = ratio_height(&sp(1, -1, 1, 1)).unwrap();
        assert_eq!(h.coeffs, ints(&[1, 3, 1]));
        assert_eq!(h.height, BigInt::from(3));
        assert!(!h.linear && h.is_self_reciprocal());
        assert!(height_bound_holds(&h));
        assert!(height_sandwich_check(&sp(1, -1, 1, 1)).unwrap());
    }

    #[test]
    fn p_zero_gives_ratio_one() {
        let h = ratio_height(&sp(1, -1, 0, 1)).unwrap();
        assert_eq!((h.coeffs, h.height, h.linear), (ints(&[1, -1]), BigInt::from(1), true));
        let h = ratio_height(&sp(3, 2, 0, 5)).unwrap();
        assert_eq!(h.coeffs, ints(&[1, -1]));
        assert!(height_sandwich_check(&sp(3, 2, 0, 5)).unwrap());
    }

    #[test]
    fn ratio_minus_one() {
        // 2Q = PA with irrational D: b/a = -1.
        let h = ratio_height(&sp(2, -1, 2, 2)).unwrap();
        assert_eq!(h.coeffs, ints(&[1, 1]));
    }

    #[test]
    fn linear_case_matches_direct_ratio() {
        // (3, 2): α = 2, β = 1, D = 1. b/a = (Q - 2P)/(Q - P).
        let h = ratio_height(&sp(3, 2, 1, 5)).unwrap();
        assert!(h.linear);
        // b/a = 3/4, so 4x - 3.
        assert_eq!(h.coeffs, ints(&[4, -3]));
        assert!(height_sandwich_check(&sp(3, 2, 1, 5)).unwrap());
    }

    #[test]
    fn nonreal_is_self_reciprocal() {
        let h = ratio_height(&sp(3, 6, 5, 6)).unwrap();
        assert!(h.is_self_reciprocal());
        assert!(height_bound_holds(&h));
        assert!(height_sandwich_check(&sp(3, 6, 5, 6)).is_err());
    }

    #[test]
    fn vanishing_coefficient_is_rejected() {
        // Q = Pα with α = 2 for (3, 2).
        assert!(matches!(
            ratio_height(&sp(3, 2, 1, 2)),
            Err(BrigError::DegenerateConstruction(_))
        ));
        assert!(ratio_height(&sp(2, 1, 1, 1)).is_err());
    }
}
