//! Real case `A² > 4B`.
//!
//! All checks run on sign-normalized parameters (`A > 0`, `P ≥ 0`), which
//! leaves `|u_n|` unchanged. Then `α = (A + D)/2` with `D = √Δ`, and
//! `α^m = (V_m + U_m·D)/2`, `φ^m = (L_m + F_m·√5)/2`.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Certificate, GrowthCheck, GrowthReport, GrowthResult, SharpCase, SurdMargin};
use crate::error::{BrigError, Result};
use crate::exactnum::log::ceil_affine_ln;
use crate::exactnum::QuadElem;
use crate::params::{classify, SequenceClass, SequenceParams};
use crate::terms::{lucas_pair, term, TermWindow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `|A - D| ≥ 6|Q/P|`.
    Far,
    /// `|A - D| < 6|Q/P|`.
    Near,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RealSubCase {
    /// `A - D ≥ 6|Q/P|`.
    A,
    /// `D - A ≥ 6|Q/P|`; split further by the parity of `n`.
    B,
    /// `|A - D| < 6|Q/P|` and `A + D ≥ 9|Q/P|`.
    C,
    /// `|A - D| < 6|Q/P|` and `A + D < 9|Q/P|`.
    D,
}

impl fmt::Display for RealSubCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RealSubCase::A => "a",
            RealSubCase::B => "b",
            RealSubCase::C => "c",
            RealSubCase::D => "d",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealCaseBranch {
    pub branch: Branch,
    pub sub_case: RealSubCase,
    /// First index covered by the branch bound.
    pub n_min: u64,
}

/// Everything about one real-case instance that does not depend on `n`.
#[derive(Debug, Clone)]
struct RealSetup {
    params: SequenceParams,
    flipped: bool,
    delta: BigInt,
    q_abs: BigInt,
    branch: RealCaseBranch,
    /// `max(5|P|, 22|Q|)` and `max(14|P|, 36|Q|)`.
    near_alpha: BigInt,
    near_golden: BigInt,
    /// First odd index allowed in sub-case (b2): `n ≥ 6|Q/P| + 3`.
    b2_min: u64,
    /// First index with `n > 12 + 5·ln|Q|`.
    c_min: u64,
}

fn to_index(x: BigInt) -> u64 {
    x.to_u64().unwrap_or(u64::MAX)
}

fn ceil_index(x: &BigRational) -> u64 {
    to_index(x.ceil().to_integer())
}

impl RealSetup {
    fn new(params: &SequenceParams) -> Result<Self> {
        if classify(params) != SequenceClass::RealCase {
            return Err(BrigError::domain(format!(
                "{params} is not a non-degenerate real-case sequence"
            )));
        }
        if params.p.is_zero() || params.q.is_zero() {
            return Err(BrigError::domain("real-case growth bounds need PQ ≠ 0"));
        }
        let flipped = params.a.is_negative();
        let params = params.sign_normalized();
        let delta = &params.a * &params.a - &params.b * 4u32;
        let q_abs = params.q.abs();
        let p_abs = params.p.abs();
        let ratio = BigRational::new(q_abs.clone(), p_abs.clone());
        let a = BigRational::from_integer(params.a.clone());
        let six_r = &ratio * BigRational::from_integer(6.into());
        let nine_r = &ratio * BigRational::from_integer(9.into());
        let quad = |r: BigRational, s: i64| {
            QuadElem::new(r, BigRational::from_integer(s.into()), delta.clone())
                .expect("Δ > 0 in the real case")
        };

        let sub_case = if quad(&a - &six_r, -1).sign() != Sign::Minus {
            RealSubCase::A
        } else if quad(-(&a + &six_r), 1).sign() != Sign::Minus {
            RealSubCase::B
        } else if quad(&a - &nine_r, 1).sign() != Sign::Minus {
            RealSubCase::C
        } else {
            RealSubCase::D
        };

        let q_nat = q_abs.magnitude().clone();
        let one = BigRational::one();
        let m = if ratio > one { ratio.clone() } else { one };
        let near_min = to_index(ceil_affine_ln(
            &(&m * BigRational::from_integer(18.into())),
            &(&m * BigRational::from_integer(7.into())),
            &q_nat,
        ));
        let (branch, n_min) = match sub_case {
            RealSubCase::A | RealSubCase::B => {
                (Branch::Far, ceil_index(&(&six_r + BigRational::from_integer(6.into()))))
            }
            RealSubCase::C | RealSubCase::D => (Branch::Near, near_min),
        };
        let b2_min = ceil_index(&(&six_r + BigRational::from_integer(3.into())));
        let c_min = if q_abs.is_one() {
            13
        } else {
            to_index(ceil_affine_ln(
                &BigRational::from_integer(12.into()),
                &BigRational::from_integer(5.into()),
                &q_nat,
            ))
        };
        let near_alpha = (&p_abs * 5u32).max(&q_abs * 22u32);
        let near_golden = (&p_abs * 14u32).max(&q_abs * 36u32);
        Ok(RealSetup {
            params,
            flipped,
            delta,
            q_abs,
            branch: RealCaseBranch {
                branch,
                sub_case,
                n_min,
            },
            near_alpha,
            near_golden,
            b2_min,
            c_min,
        })
    }

    /// The sharp sub-case that applies at `n`, if its hypotheses hold.
    fn sharp_at(&self, n: u64) -> std::result::Result<SharpCase, String> {
        match self.branch.sub_case {
            RealSubCase::A if n >= 7 => Ok(SharpCase::A),
            RealSubCase::A => Err("case (a) needs n ≥ 7".into()),
            RealSubCase::B if n.is_multiple_of(2) && n >= 2 => Ok(SharpCase::B1),
            RealSubCase::B if n.is_multiple_of(2) => Err("case (b1) needs n ≥ 2".into()),
            RealSubCase::B if n >= self.b2_min => Ok(SharpCase::B2),
            RealSubCase::B => Err(format!("case (b2) needs n ≥ {}", self.b2_min)),
            RealSubCase::C if n >= self.c_min => Ok(SharpCase::C),
            RealSubCase::C => Err(format!("case (c) needs n ≥ {}", self.c_min)),
            RealSubCase::D if n >= self.branch.n_min => Ok(SharpCase::D),
            RealSubCase::D => Err(format!("case (d) needs n ≥ {}", self.branch.n_min)),
        }
    }

    fn owns(&self, sharp: SharpCase) -> bool {
        matches!(
            (self.branch.sub_case, sharp),
            (RealSubCase::A, SharpCase::A)
                | (RealSubCase::B, SharpCase::B1 | SharpCase::B2)
                | (RealSubCase::C, SharpCase::C)
                | (RealSubCase::D, SharpCase::D)
        )
    }

    fn flip_note(&self) -> Option<String> {
        self.flipped
            .then(|| "evaluated with A replaced by -A, which preserves |u_n|".to_string())
    }

    fn finish(&self, mut report: GrowthReport) -> GrowthReport {
        report.case = Some(self.branch.sub_case);
        if report.note.is_none() {
            report.note = self.flip_note();
        }
        report
    }
}

/// Quantities at one index `n ≥ 2`, all for sign-normalized parameters.
struct Point<'a> {
    n: u64,
    u_abs: &'a BigInt,
    /// `(V_{n-2}, U_{n-2})` and `(V_{n-1}, U_{n-1})` at `(A, B)`.
    v_nm2: &'a BigInt,
    u_nm2: &'a BigInt,
    v_nm1: &'a BigInt,
    u_nm1: &'a BigInt,
    /// `(L_n, F_n)`.
    lucas_n: &'a BigInt,
    fib_n: &'a BigInt,
    five_n: &'a BigInt,
    three_n: &'a BigInt,
    /// `A^{n-1}`.
    a_nm1: &'a BigInt,
    /// `Δ^{(n-3)/2}` for odd `n ≥ 3`.
    delta_odd: Option<&'a BigInt>,
}

struct OwnedPoint {
    n: u64,
    u_abs: BigInt,
    v_nm2: BigInt,
    u_nm2: BigInt,
    v_nm1: BigInt,
    u_nm1: BigInt,
    lucas_n: BigInt,
    fib_n: BigInt,
    five_n: BigInt,
    three_n: BigInt,
    a_nm1: BigInt,
    delta_odd: Option<BigInt>,
}

impl OwnedPoint {
    fn compute(setup: &RealSetup, n: u64) -> Self {
        assert!(n >= 2);
        let (a, b) = (&setup.params.a, &setup.params.b);
        let pair2 = lucas_pair(a, b, n - 2);
        let pair1 = lucas_pair(a, b, n - 1);
        let golden = lucas_pair(&BigInt::one(), &-BigInt::one(), n);
        let exp = u32::try_from(n).expect("index fits in u32");
        OwnedPoint {
            n,
            u_abs: term(&setup.params, n).abs(),
            v_nm2: pair2.v,
            u_nm2: pair2.u,
            v_nm1: pair1.v,
            u_nm1: pair1.u,
            lucas_n: golden.v,
            fib_n: golden.u,
            five_n: BigInt::from(5).pow(exp),
            three_n: BigInt::from(3).pow(exp),
            a_nm1: a.pow(exp - 1),
            delta_odd: (n % 2 == 1 && n >= 3).then(|| setup.delta.pow((exp - 3) / 2)),
        }
    }

    fn view(&self) -> Point<'_> {
        Point {
            n: self.n,
            u_abs: &self.u_abs,
            v_nm2: &self.v_nm2,
            u_nm2: &self.u_nm2,
            v_nm1: &self.v_nm1,
            u_nm1: &self.u_nm1,
            lucas_n: &self.lucas_n,
            fib_n: &self.fib_n,
            five_n: &self.five_n,
            three_n: &self.three_n,
            a_nm1: &self.a_nm1,
            delta_odd: self.delta_odd.as_ref(),
        }
    }
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `lhs - k·(v + u·√radicand) ≥ 0`.
fn versus_power(
    label: &'static str,
    lhs: BigInt,
    k: &BigInt,
    v: &BigInt,
    u: &BigInt,
    radicand: &BigInt,
) -> Certificate {
    Certificate {
        label,
        margin: SurdMargin {
            rational: lhs - k * v,
            surd: -(k * u),
            radicand: radicand.clone(),
        },
    }
}

fn integer_cert(label: &'static str, diff: BigInt) -> Certificate {
    Certificate {
        label,
        margin: SurdMargin::integer(diff),
    }
}

fn branch_certificates(setup: &RealSetup, pt: &Point<'_>) -> Vec<Certificate> {
    let n = pt.n;
    let five = BigInt::from(5);
    let one = BigInt::one();
    match setup.branch.branch {
        Branch::Far => {
            let q = &setup.q_abs;
            vec![
                // |u_n| ≥ |Q|(α/2)^{n-2}
                versus_power(
                    "|u_n| >= |Q|(alpha/2)^(n-2)",
                    pow2(n - 1) * pt.u_abs,
                    q,
                    pt.v_nm2,
                    pt.u_nm2,
                    &setup.delta,
                ),
                // |u_n| ≥ |Q|(√5/2)^n, squared
                integer_cert(
                    "|u_n| >= |Q|(sqrt5/2)^n",
                    pow2(2 * n) * pt.u_abs * pt.u_abs - pt.five_n * q * q,
                ),
            ]
        }
        Branch::Near => vec![
            versus_power(
                "|u_n| >= min(1/(5|P|), 1/(22|Q|)) alpha^(n-2)",
                &setup.near_alpha * pt.u_abs * 2u32,
                &one,
                pt.v_nm2,
                pt.u_nm2,
                &setup.delta,
            ),
            versus_power(
                "|u_n| >= min(1/(14|P|), 1/(36|Q|)) phi^n",
                &setup.near_golden * pt.u_abs * 2u32,
                &one,
                pt.lucas_n,
                pt.fib_n,
                &five,
            ),
        ],
    }
}

fn sharp_certificates(setup: &RealSetup, case: SharpCase, pt: &Point<'_>) -> Vec<Certificate> {
    let n = pt.n;
    let q = &setup.q_abs;
    let p = setup.params.p.abs();
    let a = &setup.params.a;
    let delta = &setup.delta;
    let five = BigInt::from(5);
    let one = BigInt::one();
    match case {
        SharpCase::A => vec![
            integer_cert(
                "|u_n| >= 11|Q|(A/2)^(n-1)",
                pow2(n - 1) * pt.u_abs - q * pt.a_nm1 * 11u32,
            ),
            versus_power(
                "|u_n| >= 11|Q|(alpha/2)^(n-1)",
                pow2(n) * pt.u_abs,
                &(q * 11u32),
                pt.v_nm1,
                pt.u_nm1,
                delta,
            ),
            integer_cert(
                "|u_n| >= 7|Q|(3/2)^n",
                pow2(n) * pt.u_abs - q * pt.three_n * 7u32,
            ),
        ],
        SharpCase::B1 => vec![
            versus_power(
                "|u_n| >= |Q| alpha^(n-1)",
                pt.u_abs * 2u32,
                q,
                pt.v_nm1,
                pt.u_nm1,
                delta,
            ),
            versus_power(
                "|u_n| >= 0.6|Q| phi^n",
                pt.u_abs * 10u32,
                &(q * 3u32),
                pt.lucas_n,
                pt.fib_n,
                &five,
            ),
        ],
        SharpCase::B2 => {
            let d_pow = pt.delta_odd.expect("odd n ≥ 3 in case (b2)");
            vec![
                Certificate {
                    label: "|u_n| >= (1/2) n A |Q| (D/2)^(n-2)",
                    margin: SurdMargin {
                        rational: pow2(n - 1) * pt.u_abs,
                        surd: -(BigInt::from(n) * a * q * d_pow),
                        radicand: delta.clone(),
                    },
                },
                versus_power(
                    "|u_n| >= (7/2) A |Q| (alpha/2)^(n-2)",
                    pow2(n) * pt.u_abs,
                    &(a * q * 7u32),
                    pt.v_nm2,
                    pt.u_nm2,
                    delta,
                ),
                integer_cert(
                    "|u_n| >= 2.8|Q|(sqrt5/2)^n",
                    pow2(2 * n) * pt.u_abs * pt.u_abs * 25u32 - q * q * pt.five_n * 196u32,
                ),
            ]
        }
        SharpCase::C => vec![
            versus_power(
                "|u_n| >= alpha^(n-2)/(5|P|)",
                &p * pt.u_abs * 10u32,
                &one,
                pt.v_nm2,
                pt.u_nm2,
                delta,
            ),
            versus_power(
                "|u_n| >= phi^n/(14|P|)",
                &p * pt.u_abs * 28u32,
                &one,
                pt.lucas_n,
                pt.fib_n,
                &five,
            ),
        ],
        SharpCase::D => vec![
            versus_power(
                "|u_n| >= alpha^(n-1)/(22|Q|)",
                q * pt.u_abs * 44u32,
                &one,
                pt.v_nm1,
                pt.u_nm1,
                delta,
            ),
            versus_power(
                "|u_n| >= phi^n/(36|Q|)",
                q * pt.u_abs * 72u32,
                &one,
                pt.lucas_n,
                pt.fib_n,
                &five,
            ),
        ],
    }
}

/// Branch, sub-case and threshold of a real-case instance. Every case
/// boundary is decided exactly in `Q(√Δ)`.
pub fn real_case_branch(params: &SequenceParams) -> Result<RealCaseBranch> {
    Ok(RealSetup::new(params)?.branch)
}

/// Both inequalities of the applicable branch at index `n`.
pub fn check_real_growth(params: &SequenceParams, n: u64) -> GrowthResult {
    let setup = RealSetup::new(params)?;
    let n_min = setup.branch.n_min;
    let mut report = if n < n_min {
        GrowthReport::not_applicable(n, GrowthCheck::RealBranch, format!("below threshold {n_min}"))
    } else {
        let pt = OwnedPoint::compute(&setup, n);
        GrowthReport::evaluated(n, GrowthCheck::RealBranch, branch_certificates(&setup, &pt.view()))
    };
    report.threshold = Some(n_min);
    Ok(setup.finish(report))
}

/// The sharper bound of the instance's own sub-case at index `n`; case (b)
/// is split into (b1) and (b2) by the parity of `n`.
pub fn check_sharp_case(params: &SequenceParams, n: u64) -> GrowthResult {
    let setup = RealSetup::new(params)?;
    let report = match setup.sharp_at(n) {
        Ok(case) => sharp_report(&setup, case, n),
        Err(why) => {
            let check = match setup.branch.sub_case {
                RealSubCase::A => SharpCase::A,
                RealSubCase::B if n.is_multiple_of(2) => SharpCase::B1,
                RealSubCase::B => SharpCase::B2,
                RealSubCase::C => SharpCase::C,
                RealSubCase::D => SharpCase::D,
            };
            GrowthReport::not_applicable(n, GrowthCheck::Sharp(check), why)
        }
    };
    Ok(setup.finish(report))
}

/// Like [`check_sharp_case`] but for a requested sub-case; reports
/// "not applicable" when the instance or `n` falls outside it.
pub fn check_sharp_subcase(params: &SequenceParams, case: SharpCase, n: u64) -> GrowthResult {
    let setup = RealSetup::new(params)?;
    let check = GrowthCheck::Sharp(case);
    let report = if !setup.owns(case) {
        GrowthReport::not_applicable(
            n,
            check,
            format!("instance is in case ({})", setup.branch.sub_case),
        )
    } else {
        match setup.sharp_at(n) {
            Ok(found) if found == case => sharp_report(&setup, case, n),
            Ok(_) => GrowthReport::not_applicable(n, check, "wrong parity of n for this sub-case"),
            Err(why) => GrowthReport::not_applicable(n, check, why),
        }
    };
    Ok(setup.finish(report))
}

fn sharp_report(setup: &RealSetup, case: SharpCase, n: u64) -> GrowthReport {
    let pt = OwnedPoint::compute(setup, n);
    GrowthReport::evaluated(n, GrowthCheck::Sharp(case), sharp_certificates(setup, case, &pt.view()))
}

/// Failures found by [`RealGrowthScan::run`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome {
    pub branch: RealCaseBranch,
    /// Number of indices at which the branch bound was evaluated.
    pub branch_checked: u64,
    /// Number of indices at which a sharp sub-case bound was evaluated.
    pub sharp_checked: u64,
    pub failures: Vec<(u64, GrowthCheck, &'static str)>,
}

/// Evaluates the real-case bounds at every index up to a horizon in one
/// pass of the recurrences, sharing work between indices.
#[derive(Debug, Clone)]
pub struct RealGrowthScan {
    setup: RealSetup,
}

impl RealGrowthScan {
    pub fn new(params: &SequenceParams) -> Result<Self> {
        Ok(RealGrowthScan {
            setup: RealSetup::new(params)?,
        })
    }

    pub fn branch(&self) -> &RealCaseBranch {
        &self.setup.branch
    }

    pub fn run(&self, horizon: u64, include_sharp: bool) -> ScanOutcome {
        let s = &self.setup;
        let (a, b) = (&s.params.a, &s.params.b);
        let minus_one = -BigInt::one();
        let one = BigInt::one();
        let mut u = TermWindow::start(&s.params);
        let mut lu = TermWindow::start(&SequenceParams::new(a.clone(), b.clone(), 0, 1));
        let mut lv = TermWindow::start(&SequenceParams::new(a.clone(), b.clone(), 2, a.clone()));
        let mut gl = TermWindow::start(&SequenceParams::new(1, -1, 2, 1));
        let mut gf = TermWindow::start(&SequenceParams::new(1, -1, 0, 1));
        let mut five_n = BigInt::one();
        let mut three_n = BigInt::one();
        let mut a_nm1 = BigInt::one();
        let mut delta_odd = BigInt::one();

        let mut out = ScanOutcome {
            branch: s.branch.clone(),
            branch_checked: 0,
            sharp_checked: 0,
            failures: Vec::new(),
        };
        for n in 0..=horizon {
            if n >= 2 {
                let u_abs = u.current.abs();
                let pt = Point {
                    n,
                    u_abs: &u_abs,
                    v_nm2: &lv.current,
                    u_nm2: &lu.current,
                    v_nm1: &lv.next,
                    u_nm1: &lu.next,
                    lucas_n: &gl.current,
                    fib_n: &gf.current,
                    five_n: &five_n,
                    three_n: &three_n,
                    a_nm1: &a_nm1,
                    delta_odd: (n % 2 == 1 && n >= 3).then_some(&delta_odd),
                };
                if n >= s.branch.n_min {
                    out.branch_checked += 1;
                    for c in branch_certificates(s, &pt) {
                        if !c.holds() {
                            out.failures.push((n, GrowthCheck::RealBranch, c.label));
                        }
                    }
                }
                if include_sharp {
                    if let Ok(case) = s.sharp_at(n) {
                        out.sharp_checked += 1;
                        for c in sharp_certificates(s, case, &pt) {
                            if !c.holds() {
                                out.failures.push((n, GrowthCheck::Sharp(case), c.label));
                            }
                        }
                    }
                }
                lu.advance(a, b);
                lv.advance(a, b);
                if n % 2 == 1 {
                    delta_odd *= &s.delta;
                }
            }
            if n >= 1 {
                a_nm1 *= a;
            }
            u.advance(a, b);
            gl.advance(&one, &minus_one);
            gf.advance(&one, &minus_one);
            five_n *= 5u32;
            three_n *= 3u32;
        }
        out
    }
}
