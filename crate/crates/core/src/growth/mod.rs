//! Exact verification of explicit lower bounds for `|u_n|`.
//!
//! Every inequality is rearranged into the form `r + s·√Δ ≥ 0` with integer
//! `r`, `s` (denominators and powers of 2 cleared by cross-multiplication)
//! and decided by [`surd_sign`]. The rearranged left-hand side is kept in
//! the report as a [`SurdMargin`] so a verdict can be re-checked
//! independently.

mod height;
mod lucas;
mod nonreal;
mod real;

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Result;
use crate::exactnum::{surd_sign, QuadElem};

pub use height::{height_bound_holds, height_sandwich_check, ratio_height, RatioHeight};
pub use lucas::{check_lucas_bounds, lucas_bound_failures, DEFAULT_C1};
pub use nonreal::{
    check_nonreal_growth, empirical_threshold, nonreal_threshold, nonreal_threshold_interval,
    nonreal_violations, DEFAULT_C5,
};
pub use real::{
    check_real_growth, check_sharp_case, check_sharp_subcase, real_case_branch, Branch, RealCaseBranch, RealGrowthScan,
    RealSubCase, ScanOutcome,
};

/// Exact element `rational + surd·√radicand` of `Z[√radicand]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdMargin {
    pub rational: BigInt,
    pub surd: BigInt,
    pub radicand: BigInt,
}

impl SurdMargin {
    pub fn integer(x: BigInt) -> Self {
        SurdMargin {
            rational: x,
            surd: BigInt::zero(),
            radicand: BigInt::zero(),
        }
    }

    pub fn sign(&self) -> Sign {
        surd_sign(&self.rational, &self.surd, &self.radicand)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.sign() != Sign::Minus
    }

    pub fn to_quad(&self) -> QuadElem {
        QuadElem::new(
            BigRational::from_integer(self.rational.clone()),
            BigRational::from_integer(self.surd.clone()),
            self.radicand.clone(),
        )
        .expect("radicands of margins are non-negative")
    }
}

impl fmt::Display for SurdMargin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() || self.radicand.is_zero() {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{} + {}·√{}", self.rational, self.surd, self.radicand)
        }
    }
}

/// One rearranged inequality `margin ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub label: &'static str,
    pub margin: SurdMargin,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.margin.is_nonnegative()
    }
}

/// Which bound a report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrowthCheck {
    /// The two-branch real-case bound (far branch `|A-D| ≥ 6|Q/P|`, near
    /// branch otherwise).
    RealBranch,
    /// `|u_n|³ ≥ B^n` in the non-real case.
    NonReal,
    /// Lower bounds for the Lucas sequence `U_n`.
    Lucas,
    /// The sharper bound proved inside one sub-case of the real case.
    Sharp(SharpCase),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SharpCase {
    A,
    B1,
    B2,
    C,
    D,
}

impl fmt::Display for GrowthCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthCheck::RealBranch => write!(f, "real-branch"),
            GrowthCheck::NonReal => write!(f, "non-real"),
            GrowthCheck::Lucas => write!(f, "lucas"),
            GrowthCheck::Sharp(c) => write!(f, "sharp-{}", format!("{c:?}").to_lowercase()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    pub n: u64,
    pub check: GrowthCheck,
    pub applicable: bool,
    /// `None` exactly when the check is not applicable (or, for the
    /// reporting-only non-real Lucas clause, undecided).
    pub bound_holds: Option<bool>,
    /// Smallest index from which the check applies, when it is explicit.
    pub threshold: Option<u64>,
    pub case: Option<RealSubCase>,
    pub certificates: Vec<Certificate>,
    pub note: Option<String>,
}

impl GrowthReport {
    pub(crate) fn not_applicable(n: u64, check: GrowthCheck, note: impl Into<String>) -> Self {
        GrowthReport {
            n,
            check,
            applicable: false,
            bound_holds: None,
            threshold: None,
            case: None,
            certificates: Vec::new(),
            note: Some(note.into()),
        }
    }

    pub(crate) fn evaluated(n: u64, check: GrowthCheck, certificates: Vec<Certificate>) -> Self {
        let holds = certificates.iter().all(Certificate::holds);
        GrowthReport {
            n,
            check,
            applicable: true,
            bound_holds: Some(holds),
            threshold: None,
            case: None,
            certificates,
            note: None,
        }
    }

    pub fn failed_certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.certificates.iter().filter(|c| !c.holds())
    }
}

impl fmt::Display for GrowthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.check, self.n)?;
        if let Some(case) = self.case {
            write!(f, " case={case}")?;
        }
        if let Some(t) = self.threshold {
            write!(f, " threshold={t}")?;
        }
        match (self.applicable, self.bound_holds) {
            (false, _) => write!(f, ": not applicable")?,
            (true, Some(h)) => write!(f, ": holds={h}")?,
            (true, None) => write!(f, ": undecided")?,
        }
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

pub(crate) type GrowthResult = Result<GrowthReport>;
