//! Zero terms: a bounded decision procedure for non-degenerate sequences,
//! an exact analysis of every degenerate class, and constructors for
//! sequences vanishing at a prescribed index.
//!
//! For non-degenerate sequences there is at most one zero, and its index is
//! bounded explicitly in terms of the normalized `Q`:
//!
//! * real case (`A² > 4B`): `k < 9·ln|Q| + 12`;
//! * non-real case (`A² < 4B`): `k < 10·ln max(|Q|, 2)` once `k` exceeds an
//!   absolute constant `c₄` that is not known explicitly. The procedure
//!   takes a configured value for it and reports its verdicts as
//!   conditional on that value.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{BrigError, Result};
use crate::exactnum::log::ceil_affine_ln;
use crate::params::{classify, normalize_gcd, reduce_d, DegenerateReason, SequenceClass, SequenceParams};
use crate::terms::{lucas_u_window, term_iter, TermWindow};

/// Default stand-in for the non-explicit constant `c₄`.
pub const DEFAULT_C4: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroResult {
    /// No zero among `u_0..=u_{searched_up_to}`. `conclusive` says whether
    /// that settles the question for all indices: always for the real and
    /// degenerate cases, only under the configured `c₄` in the non-real case.
    NoZero { searched_up_to: u64, conclusive: bool },
    ZeroAt(u64),
    /// `u_n = 0` exactly when `n mod modulus` lies in `residues`.
    PeriodicZeros { modulus: u64, residues: Vec<u64> },
    /// `u_n = 0` for every `n` in `isolated` and every `n ≥ from`.
    /// Only arises for `B = 0`.
    ZeroTail { isolated: Vec<u64>, from: u64 },
    AllZero,
}

impl ZeroResult {
    /// Whether `u_n = 0` according to this verdict (for `NoZero`, only
    /// meaningful within the searched range).
    pub fn predicts_zero_at(&self, n: u64) -> bool {
        match self {
            ZeroResult::NoZero { .. } => false,
            ZeroResult::ZeroAt(k) => *k == n,
            ZeroResult::PeriodicZeros { modulus, residues } => residues.contains(&(n % modulus)),
            ZeroResult::ZeroTail { isolated, from } => n >= *from || isolated.contains(&n),
            ZeroResult::AllZero => true,
        }
    }
}

impl fmt::Display for ZeroResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroResult::NoZero { searched_up_to, conclusive } => {
                write!(f, "no zero up to {searched_up_to}")?;
                if *conclusive {
                    write!(f, ", conclusive")
                } else {
                    write!(f, ", conclusive under c4")
                }
            }
            ZeroResult::ZeroAt(k) => write!(f, "zero at k={k}"),
            ZeroResult::PeriodicZeros { modulus, residues } => {
                let rs: Vec<String> = residues.iter().map(u64::to_string).collect();
                write!(f, "periodic zeros: n mod {modulus} in {{{}}}", rs.join(","))
            }
            ZeroResult::ZeroTail { isolated, from } => {
                let rs: Vec<String> = isolated.iter().map(u64::to_string).collect();
                write!(f, "zero for all n >= {from}")?;
                if !rs.is_empty() {
                    write!(f, " and n in {{{}}}", rs.join(","))?;
                }
                Ok(())
            }
            ZeroResult::AllZero => write!(f, "all terms zero"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundBasis {
    /// `⌈9·ln|Q| + 12⌉`; unconditional.
    Real,
    /// `max(⌈10·ln max(|Q|, 2)⌉, c₄)`; complete only if the true constant
    /// does not exceed the configured `c4`.
    NonReal { c4: u64 },
    UserOverride,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBound {
    pub n_max: u64,
    pub basis: BoundBasis,
    /// The `d`-reduced, gcd-normalized parameters the bound was evaluated on.
    pub normalized: SequenceParams,
}

impl SearchBound {
    pub fn conclusive(&self) -> bool {
        !matches!(self.basis, BoundBasis::NonReal { .. })
    }
}

fn to_index(x: &BigInt) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| BrigError::domain(format!("search bound {x} does not fit an index")))
}

/// `d`-reduction followed by gcd normalization. Neither changes which
/// indices carry zeros.
pub fn normalize_for_zeros(params: &SequenceParams) -> Result<SequenceParams> {
    let (reduced, _) = reduce_d(params)?;
    let (normalized, _) = normalize_gcd(&reduced)?;
    Ok(normalized)
}

/// Scan bound for the zero search of a non-degenerate sequence, evaluated
/// on the normalized `Q` with certified upward rounding of the logarithm.
pub fn zero_search_bound(params: &SequenceParams, c4: u64) -> Result<SearchBound> {
    let class = classify(params);
    if class.is_degenerate() {
        return Err(BrigError::domain(format!("zero search bound for {class}")));
    }
    let normalized = normalize_for_zeros(params)?;
    // Q = 0 means the (unique) zero sits at index 1; ln is taken of max(|Q|, 1).
    let q_abs = normalized.q.magnitude().clone().max(One::one());
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    let (n_max, basis) = match class {
        SequenceClass::RealCase => (
            to_index(&ceil_affine_ln(&int(12), &int(9), &q_abs))?,
            BoundBasis::Real,
        ),
        _ => {
            let arg = q_abs.max(2u32.into());
            let formula = to_index(&ceil_affine_ln(&int(0), &int(10), &arg))?;
            (formula.max(c4), BoundBasis::NonReal { c4 })
        }
    };
    Ok(SearchBound { n_max, basis, normalized })
}

/// Decides whether the sequence has a zero term. Degenerate inputs go to
/// [`degenerate_zeros`]; otherwise the normalized sequence is scanned up
/// to the search bound. The reported index refers to the given sequence
/// (normalization does not move zeros).
pub fn find_zero(params: &SequenceParams, c4: u64) -> Result<ZeroResult> {
    find_zero_with_bound(params, c4).map(|(r, _)| r)
}

/// As [`find_zero`], also returning the search bound used (if any).
pub fn find_zero_with_bound(
    params: &SequenceParams,
    c4: u64,
) -> Result<(ZeroResult, Option<SearchBound>)> {
    if classify(params).is_degenerate() {
        return Ok((degenerate_zeros(params)?, None));
    }
    let bound = zero_search_bound(params, c4)?;
    let result = scan_for_zero(&bound.normalized, bound.n_max, bound.conclusive())?;
    Ok((result, Some(bound)))
}

/// Scans `u_0..=u_{n_max}`. A second zero is reported as an invariant
/// violation: for a non-degenerate sequence it cannot exist.
pub fn scan_for_zero(params: &SequenceParams, n_max: u64, conclusive: bool) -> Result<ZeroResult> {
    let mut w = TermWindow::start(params);
    let mut found: Option<u64> = None;
    loop {
        if w.current.is_zero() {
            if let Some(first) = found {
                return Err(BrigError::InvariantViolation(format!(
                    "second zero at {} after {first} for {params}",
                    w.n
                )));
            }
            found = Some(w.n);
        }
        if w.n >= n_max {
            break;
        }
        w.advance(&params.a, &params.b);
    }
    Ok(match found {
        Some(k) => ZeroResult::ZeroAt(k),
        None => ZeroResult::NoZero { searched_up_to: n_max, conclusive },
    })
}

/// Exact zero set for each degenerate class.
pub fn degenerate_zeros(params: &SequenceParams) -> Result<ZeroResult> {
    use DegenerateReason::*;
    let reason = match classify(params) {
        SequenceClass::Degenerate(r) => r,
        other => return Err(BrigError::domain(format!("degenerate_zeros on {other} input"))),
    };
    let SequenceParams { a, p, q, .. } = params;
    Ok(match reason {
        BothInitialZero => ZeroResult::AllZero,
        // u_n = A^{n-1}·Q for n ≥ 1.
        BZero => {
            let head: Vec<u64> = if p.is_zero() { vec![0] } else { vec![] };
            if q.is_zero() {
                ZeroResult::ZeroTail { isolated: head, from: 1 }
            } else if a.is_zero() {
                ZeroResult::ZeroTail { isolated: head, from: 2 }
            } else if p.is_zero() {
                ZeroResult::ZeroAt(0)
            } else {
                ZeroResult::NoZero { searched_up_to: 0, conclusive: true }
            }
        }
        EqualRoots => {
            // u_k = 0  ⟺  2kQ = (k-1)·P·A  ⟺  k·(P·A - 2Q) = P·A.
            let pa = p * a;
            let slope = &pa - q * 2u32;
            let k = if slope.is_zero() {
                None
            } else if (&pa % &slope).is_zero() {
                let k = &pa / &slope;
                (!k.is_negative()).then_some(k)
            } else {
                None
            };
            match k {
                Some(k) => ZeroResult::ZeroAt(to_index(&k)?),
                None => ZeroResult::NoZero { searched_up_to: 0, conclusive: true },
            }
        }
        // u_{n+m} = α^m·u_n with α^m a nonzero integer, so one period decides.
        AZero => periodic_zeros(params, 2),
        RootOfUnityRatio(m) => periodic_zeros(params, u64::from(m)),
        // u_n is a nonzero multiple of a power of a nonzero root.
        CoefficientAZero | CoefficientBZero => ZeroResult::NoZero { searched_up_to: 0, conclusive: true },
    })
}

fn periodic_zeros(params: &SequenceParams, m: u64) -> ZeroResult {
    let residues: Vec<u64> = params
        .terms()
        .take(m as usize)
        .enumerate()
        .filter(|(_, u)| u.is_zero())
        .map(|(r, _)| r as u64)
        .collect();
    if residues.is_empty() {
        ZeroResult::NoZero { searched_up_to: m - 1, conclusive: true }
    } else {
        ZeroResult::PeriodicZeros { modulus: m, residues }
    }
}

/// Initial values `(P, Q)`, gcd-normalized, of the sequence with
/// characteristic polynomial `x² - Ax + B` that vanishes at index `k`:
/// `(P, Q) ∝ (U_k, B·U_{k-1})`, the first two terms of
/// `B^n·U_{k-n}`.
pub fn construct_zero_at(a: &BigInt, b: &BigInt, k: u64) -> Result<(BigInt, BigInt)> {
    if a.is_zero() || b.is_zero() {
        return Err(BrigError::domain("zero construction needs A·B ≠ 0"));
    }
    if k < 2 {
        return Err(BrigError::domain("zero construction needs k ≥ 2"));
    }
    let (u_prev, u_k) = lucas_u_window(a, b, k);
    if u_prev.is_zero() || u_k.is_zero() {
        return Err(BrigError::DegenerateConstruction(format!(
            "U_{} · U_{} = 0 for (A, B) = ({a}, {b})",
            k - 1,
            k
        )));
    }
    let params = SequenceParams::new(a.clone(), b.clone(), u_k, b * u_prev);
    let (normalized, _) = normalize_gcd(&params)?;
    debug_assert!(term_iter(&normalized, k).is_zero());
    Ok((normalized.p, normalized.q))
}

/// `(k, P_k, Q_k)` for `k = 2..=k_max` from `(P_2, Q_2) = (A, B)` and
/// `P_{k+1} = A·P_k - Q_k`, `Q_{k+1} = B·P_k`. The sequence started at
/// `(P_{k+1}, Q_{k+1})` is `u^{(k)}` shifted by one and multiplied by `B`.
pub fn zero_family(a: &BigInt, b: &BigInt, k_max: u64) -> Result<Vec<(u64, BigInt, BigInt)>> {
    if a.is_zero() || b.is_zero() {
        return Err(BrigError::domain("zero family needs A·B ≠ 0"));
    }
    if k_max < 2 {
        return Err(BrigError::domain("zero family needs k_max ≥ 2"));
    }
    let mut out = Vec::with_capacity((k_max - 1) as usize);
    let (mut p, mut q) = (a.clone(), b.clone());
    for k in 2..=k_max {
        out.push((k, p.clone(), q.clone()));
        let next_p = a * &p - &q;
        q = b * &p;
        p = next_p;
    }
    Ok(out)
}
