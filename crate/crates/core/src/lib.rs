//! Exact arithmetic for integer binary recurrence sequences
//! `u_n = A·u_{n-1} - B·u_{n-2}` with `u_0 = P`, `u_1 = Q`.
//!
//! The crate covers:
//!
//! * classification of a parameter quadruple (degenerate / real / non-real),
//!   together with the `d`-reduction and gcd normalizations ([`params`]);
//! * exact term computation, Lucas sequences and the `P`/`Q` coefficient
//!   decomposition ([`terms`]);
//! * a bounded decision procedure for zero terms and constructors for
//!   sequences vanishing at a prescribed index ([`zeros`]);
//! * exact verification of explicit growth lower bounds and of the naive
//!   height of the ratio `b/a` ([`growth`]).
//!
//! No floating point is used anywhere on a decision path: comparisons
//! against powers of quadratic irrationals go through [`exactnum::QuadElem`],
//! and logarithmic thresholds are evaluated with certified rational
//! enclosures ([`exactnum::log`]).

pub mod error;
pub mod exactnum;
mod factor;
pub mod growth;
pub mod params;
pub mod terms;
pub mod zeros;

pub use error::{BrigError, Result};
pub use exactnum::QuadElem;
pub use params::{
    classify, g_of, normalize_gcd, reduce_d, DegenerateReason, Discriminant, SequenceClass,
    SequenceParams,
};
pub use terms::{coeffs, lucas_pair, lucas_u, lucas_v, term, term_fast, term_iter, LucasPair, TermWindow};
pub use zeros::{
    construct_zero_at, degenerate_zeros, find_zero, zero_family, zero_search_bound, BoundBasis,
    SearchBound, ZeroResult, DEFAULT_C4,
};
pub use growth::{
    check_lucas_bounds, check_nonreal_growth, check_real_growth, check_sharp_case,
    empirical_threshold, height_sandwich_check, nonreal_threshold, ratio_height, real_case_branch,
    GrowthCheck, GrowthReport, RatioHeight, RealCaseBranch,
};
