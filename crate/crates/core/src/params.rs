//! Sequence parameters, classification and the two normalizations
//! (`d`-reduction and gcd normalization) used by the zero procedure.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{BrigError, Result};
use crate::factor;

/// The integer quadruple `(A, B, P, Q)` defining `u_0 = P`, `u_1 = Q` and
/// `u_n = A·u_{n-1} - B·u_{n-2}`.
///
/// No invariant is enforced at construction so that degenerate inputs can
/// be represented and classified.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SequenceParams {
    pub a: BigInt,
    pub b: BigInt,
    pub p: BigInt,
    pub q: BigInt,
}

impl SequenceParams {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
    ) -> Self {
        SequenceParams {
            a: a.into(),
            b: b.into(),
            p: p.into(),
            q: q.into(),
        }
    }

    pub fn discriminant(&self) -> Discriminant {
        Discriminant::new(&self.a, &self.b)
    }

    /// Parameters of `(-1)^n u_n`, which satisfies the recurrence with `A`
    /// replaced by `-A`. Used to bring `A` to a non-negative value without
    /// changing `|u_n|`.
    pub fn flip_a(&self) -> SequenceParams {
        SequenceParams {
            a: -&self.a,
            b: self.b.clone(),
            p: self.p.clone(),
            q: -&self.q,
        }
    }

    /// Same `|u_n|` for every `n`, with `A ≥ 0` and `P ≥ 0` (and `Q > 0`
    /// whenever `P = 0`).
    pub fn sign_normalized(&self) -> SequenceParams {
        let mut out = if self.a.is_negative() {
            self.flip_a()
        } else {
            self.clone()
        };
        if out.p.is_negative() || (out.p.is_zero() && out.q.is_negative()) {
            out.p = -out.p;
            out.q = -out.q;
        }
        out
    }
}

impl fmt::Display for SequenceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(A={}, B={}, P={}, Q={})", self.a, self.b, self.p, self.q)
    }
}

/// `Δ = A² - 4B` together with its integer square root when it has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discriminant {
    pub delta: BigInt,
    sqrt: Option<BigInt>,
}

impl Discriminant {
    pub fn new(a: &BigInt, b: &BigInt) -> Self {
        let delta = a * a - b * 4;
        let sqrt = exact_sqrt(&delta);
        Discriminant { delta, sqrt }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt.is_some()
    }

    /// `√Δ` when `Δ` is a perfect square (including `Δ = 0`).
    pub fn sqrt_if_square(&self) -> Option<&BigInt> {
        self.sqrt.as_ref()
    }

    pub fn sign(&self) -> Sign {
        self.delta.sign()
    }
}

pub(crate) fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DegenerateReason {
    BothInitialZero,
    BZero,
    /// `A = 0`: `α/β = -1`.
    AZero,
    /// `A² = 4B`: a double root.
    EqualRoots,
    /// `α/β` is a primitive `m`-th root of unity, `m ∈ {3, 4, 6}`.
    /// (`m = 1` and `m = 2` are reported as `EqualRoots` and `AZero`.)
    RootOfUnityRatio(u32),
    /// `a = 0`: the dominant root does not contribute.
    CoefficientAZero,
    /// `b = 0`: the smaller root does not contribute.
    CoefficientBZero,
}

impl fmt::Display for DegenerateReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerateReason::BothInitialZero => write!(f, "both initial values zero"),
            DegenerateReason::BZero => write!(f, "B = 0"),
            DegenerateReason::AZero => write!(f, "A = 0 (root ratio -1)"),
            DegenerateReason::EqualRoots => write!(f, "equal roots"),
            DegenerateReason::RootOfUnityRatio(m) => write!(f, "root-of-unity ratio, order {m}"),
            DegenerateReason::CoefficientAZero => write!(f, "coefficient a = 0"),
            DegenerateReason::CoefficientBZero => write!(f, "coefficient b = 0"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceClass {
    Degenerate(DegenerateReason),
    RealCase,
    NonRealCase,
}

impl SequenceClass {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, SequenceClass::Degenerate(_))
    }
}

impl fmt::Display for SequenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceClass::Degenerate(r) => write!(f, "degenerate: {r}"),
            SequenceClass::RealCase => write!(f, "real"),
            SequenceClass::NonRealCase => write!(f, "non-real"),
        }
    }
}

/// Integer roots `(α, β)` with `|α| ≥ |β|`, available when `Δ` is a square.
pub(crate) fn integer_roots(a: &BigInt, sqrt_delta: &BigInt) -> (BigInt, BigInt) {
    // A ≡ √Δ (mod 2) because A² - Δ = 4B.
    let plus = (a + sqrt_delta) / 2;
    let minus = (a - sqrt_delta) / 2;
    if a.is_negative() {
        (minus, plus)
    } else {
        (plus, minus)
    }
}

/// Order of `α/β` as a root of unity, read off the trace
/// `α/β + β/α = (A² - 2B)/B = 2cos(2π/m)`.
fn root_of_unity_order(a: &BigInt, b: &BigInt) -> Option<u32> {
    if b.is_zero() {
        return None;
    }
    let trace_num = a * a - b * 2;
    [(-2, 2u32), (-1, 3), (0, 4), (1, 6), (2, 1)]
        .into_iter()
        .find(|&(k, _)| trace_num == b * k)
        .map(|(_, m)| m)
}

/// Classifies the sequence. Degenerate reasons are checked in the fixed
/// priority order `BothInitialZero > BZero > AZero > EqualRoots >
/// RootOfUnityRatio > CoefficientAZero/CoefficientBZero`.
pub fn classify(params: &SequenceParams) -> SequenceClass {
    use DegenerateReason::*;
    let SequenceParams { a, b, p, q } = params;
    if p.is_zero() && q.is_zero() {
        return SequenceClass::Degenerate(BothInitialZero);
    }
    if b.is_zero() {
        return SequenceClass::Degenerate(BZero);
    }
    if a.is_zero() {
        return SequenceClass::Degenerate(AZero);
    }
    let disc = params.discriminant();
    if disc.delta.is_zero() {
        return SequenceClass::Degenerate(EqualRoots);
    }
    if let Some(m) = root_of_unity_order(a, b) {
        return SequenceClass::Degenerate(RootOfUnityRatio(m));
    }
    // With Δ not a square, Q - Pα = 0 would force α to be rational.
    if let Some(s) = disc.sqrt_if_square() {
        let (alpha, beta) = integer_roots(a, s);
        if *q == p * &beta {
            return SequenceClass::Degenerate(CoefficientAZero);
        }
        if *q == p * &alpha {
            return SequenceClass::Degenerate(CoefficientBZero);
        }
    }
    if disc.delta.is_positive() {
        SequenceClass::RealCase
    } else {
        SequenceClass::NonRealCase
    }
}

/// Largest `d` with `d | A` and `d² | B`, together with the reduced
/// parameters `(A/d, B/d², d·P, Q)` whose terms are `u_n / d^{n-1}`.
///
/// Only the prime support of `gcd(A, B)` is factored.
pub fn reduce_d(params: &SequenceParams) -> Result<(SequenceParams, BigInt)> {
    let SequenceParams { a, b, p, q } = params;
    if a.is_zero() && b.is_zero() {
        return Err(BrigError::domain("d-reduction needs A and B not both zero"));
    }
    if b.is_zero() {
        // d² | 0 for every d, so d = |A|.
        let d = a.abs();
        let reduced = SequenceParams::new(a / &d, BigInt::zero(), p * &d, q.clone());
        return Ok((reduced, d));
    }
    let g = a.gcd(b);
    let a_mag = a.magnitude();
    let b_mag = b.magnitude();
    let mut d = BigInt::one();
    for prime in factor::prime_support(g.magnitude()) {
        let vb = factor::valuation(b_mag, &prime) / 2;
        let e = if a.is_zero() {
            vb
        } else {
            factor::valuation(a_mag, &prime).min(vb)
        };
        if e > 0 {
            d *= BigInt::from(prime).pow(e as u32);
        }
    }
    let d2 = &d * &d;
    let reduced = SequenceParams::new(a / &d, b / &d2, p * &d, q.clone());
    Ok((reduced, d))
}

/// Divides `P` and `Q` by `s = gcd(P, Q) > 0`.
pub fn normalize_gcd(params: &SequenceParams) -> Result<(SequenceParams, BigInt)> {
    if params.p.is_zero() && params.q.is_zero() {
        return Err(BrigError::domain("gcd normalization needs P and Q not both zero"));
    }
    let s = params.p.gcd(&params.q);
    let out = SequenceParams::new(
        params.a.clone(),
        params.b.clone(),
        &params.p / &s,
        &params.q / &s,
    );
    Ok((out, s))
}

/// `g = gcd(|A|, |B|)`.
pub fn g_of(params: &SequenceParams) -> Result<BigInt> {
    if params.a.is_zero() && params.b.is_zero() {
        return Err(BrigError::domain("g is undefined for A = B = 0"));
    }
    Ok(params.a.gcd(&params.b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use DegenerateReason::*;

    fn sp(a: i64, b: i64, p: i64, q: i64) -> SequenceParams {
        SequenceParams::new(a, b, p, q)
    }

    #[test]
    fn classify_examples() {
        // A² = B: α/β is a primitive cube root of unity.
        assert_eq!(
            classify(&sp(1, 1, 1, 1)),
            SequenceClass::Degenerate(RootOfUnityRatio(3))
        );
        assert_eq!(classify(&sp(3, 6, 5, 6)), SequenceClass::NonRealCase);
        assert_eq!(classify(&sp(3, 2, 7, 6)), SequenceClass::RealCase);
    }

    #[test]
    fn classify_priority_and_reasons() {
        assert_eq!(classify(&sp(0, 0, 0, 0)), SequenceClass::Degenerate(BothInitialZero));
        assert_eq!(classify(&sp(0, 0, 1, 0)), SequenceClass::Degenerate(BZero));
        assert_eq!(classify(&sp(0, 5, 1, 1)), SequenceClass::Degenerate(AZero));
        assert_eq!(classify(&sp(4, 4, 1, 1)), SequenceClass::Degenerate(EqualRoots));
        assert_eq!(classify(&sp(2, 2, 1, 1)), SequenceClass::Degenerate(RootOfUnityRatio(4)));
        assert_eq!(classify(&sp(3, 3, 1, 1)), SequenceClass::Degenerate(RootOfUnityRatio(6)));
        assert_eq!(classify(&sp(-2, 4, 1, 1)), SequenceClass::Degenerate(RootOfUnityRatio(3)));
        // (3, 2): α = 2, β = 1.
        assert_eq!(classify(&sp(3, 2, 1, 1)), SequenceClass::Degenerate(CoefficientAZero));
        assert_eq!(classify(&sp(3, 2, 1, 2)), SequenceClass::Degenerate(CoefficientBZero));
        // A < 0 swaps which integer root dominates: α = -2, β = -1.
        assert_eq!(classify(&sp(-3, 2, 1, -1)), SequenceClass::Degenerate(CoefficientAZero));
        assert_eq!(classify(&sp(-3, 2, 1, -2)), SequenceClass::Degenerate(CoefficientBZero));
    }

    #[test]
    fn discriminant_square_detection() {
        let d = Discriminant::new(&BigInt::from(3), &BigInt::from(2));
        assert_eq!(d.delta, BigInt::from(1));
        assert_eq!(d.sqrt_if_square(), Some(&BigInt::from(1)));
        let d = Discriminant::new(&BigInt::from(1), &BigInt::from(-1));
        assert!(!d.is_square());
        let d = Discriminant::new(&BigInt::from(1), &BigInt::from(1));
        assert!(!d.is_square());
        assert_eq!(d.sign(), Sign::Minus);
    }

    #[test]
    fn reduce_d_examples() {
        assert_eq!(reduce_d(&sp(4, 8, 1, 1)).unwrap(), (sp(2, 2, 2, 1), BigInt::from(2)));
        assert_eq!(reduce_d(&sp(3, 6, 5, 6)).unwrap(), (sp(3, 6, 5, 6), BigInt::one()));
        assert_eq!(reduce_d(&sp(15, 10, 1, 1)).unwrap(), (sp(15, 10, 1, 1), BigInt::one()));
        assert_eq!(reduce_d(&sp(12, 72, 1, 1)).unwrap(), (sp(2, 2, 6, 1), BigInt::from(6)));
        assert_eq!(reduce_d(&sp(0, 50, 1, 1)).unwrap(), (sp(0, 2, 5, 1), BigInt::from(5)));
        assert_eq!(reduce_d(&sp(-6, 0, 1, 1)).unwrap(), (sp(-1, 0, 6, 1), BigInt::from(6)));
        assert!(reduce_d(&sp(0, 0, 1, 1)).is_err());
    }

    #[test]
    fn normalize_gcd_examples() {
        assert_eq!(normalize_gcd(&sp(3, 6, -45, -54)).unwrap(), (sp(3, 6, -5, -6), BigInt::from(9)));
        assert_eq!(normalize_gcd(&sp(1, 1, 1, 1)).unwrap(), (sp(1, 1, 1, 1), BigInt::one()));
        assert_eq!(normalize_gcd(&sp(1, 1, 0, 7)).unwrap(), (sp(1, 1, 0, 1), BigInt::from(7)));
        assert!(normalize_gcd(&sp(1, 1, 0, 0)).is_err());
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_of(&sp(15, 10, 0, 0)).unwrap(), BigInt::from(5));
        assert_eq!(g_of(&sp(1, -1, 0, 0)).unwrap(), BigInt::one());
        assert_eq!(g_of(&sp(3, 6, 0, 0)).unwrap(), BigInt::from(3));
        assert!(g_of(&sp(0, 0, 1, 1)).is_err());
    }

    #[test]
    fn sign_normalization_keeps_magnitudes() {
        let params = sp(-3, 2, -5, 4);
        let n = params.sign_normalized();
        assert_eq!(n, sp(3, 2, 5, 4));
        let mut x = (params.p.clone(), params.q.clone());
        let mut y = (n.p.clone(), n.q.clone());
        for _ in 0..30 {
            assert_eq!(x.0.abs(), y.0.abs());
            x = (x.1.clone(), &params.a * &x.1 - &params.b * &x.0);
            y = (y.1.clone(), &n.a * &y.1 - &n.b * &y.0);
        }
    }
}
