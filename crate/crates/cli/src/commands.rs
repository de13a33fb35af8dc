//! Subcommand bodies. Each returns the text to print on success.

use brig_core::growth::{height_bound_holds, DEFAULT_C1};
use brig_core::zeros::find_zero_with_bound;
use brig_core::{
    check_lucas_bounds, check_nonreal_growth, check_real_growth, check_sharp_case, classify,
    construct_zero_at, empirical_threshold, height_sandwich_check, nonreal_threshold, ratio_height,
    term, term_fast, term_iter, zero_family, GrowthReport, SequenceClass, SequenceParams,
    ZeroResult,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::sweep::NONREAL_SCAN_HORIZON;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermMode {
    /// Iteration for small indices, binary powering above the cutoff.
    Auto,
    Fast,
    Iter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Real,
    NonReal,
    Sharp,
    Lucas,
    Height,
}

impl std::str::FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "real" | "thm23" => CheckKind::Real,
            "nonreal" | "thm24" => CheckKind::NonReal,
            "sharp" => CheckKind::Sharp,
            "lucas" => CheckKind::Lucas,
            "height" => CheckKind::Height,
            other => return Err(format!("unknown check {other:?}")),
        })
    }
}

fn params_json(p: &SequenceParams) -> Value {
    json!({"a": p.a.to_string(), "b": p.b.to_string(), "p": p.p.to_string(), "q": p.q.to_string()})
}

fn render(json: bool, text: String, value: Value) -> String {
    if json {
        serde_json::to_string(&value).expect("JSON value")
    } else {
        text
    }
}

pub fn classify_cmd(params: &SequenceParams, json: bool) -> String {
    let class = classify(params);
    render(json, class.to_string(), json!({"params": params_json(params), "class": class.to_string()}))
}

pub fn term_cmd(params: &SequenceParams, n: u64, mode: TermMode, json: bool) -> String {
    let value = match mode {
        TermMode::Auto => term(params, n),
        TermMode::Fast => term_fast(params, n),
        TermMode::Iter => term_iter(params, n),
    };
    let text = value.to_string();
    render(json, text.clone(), json!({"params": params_json(params), "n": n, "value": text}))
}

pub fn zeros_cmd(params: &SequenceParams, c4: u64, json: bool) -> Result<String, CliError> {
    let (verdict, bound) = find_zero_with_bound(params, c4)?;
    let text = match (&verdict, &bound) {
        (ZeroResult::ZeroAt(k), Some(b)) => {
            let how = if b.conclusive() { "conclusive" } else { "conclusive under c4" };
            format!("zero at k={k} (bound {}, {how})", b.n_max)
        }
        _ => verdict.to_string(),
    };
    let value = json!({
        "params": params_json(params),
        "class": classify(params).to_string(),
        "verdict": verdict.to_string(),
        "bound": bound.as_ref().map(|b| b.n_max),
        "conclusive": bound.as_ref().is_none_or(|b| b.conclusive()),
        "c4": c4,
    });
    Ok(render(json, text, value))
}

pub fn make_zero_cmd(a: &BigInt, b: &BigInt, k: u64, json: bool) -> Result<String, CliError> {
    let (p, q) = construct_zero_at(a, b, k)?;
    let text = format!("P={p} Q={q}");
    Ok(render(json, text, json!({"a": a.to_string(), "b": b.to_string(), "k": k, "p": p.to_string(), "q": q.to_string()})))
}

/// The recursive family `(P_k, Q_k)` for `k = 2..=k_max`, each row checked
/// against the direct construction (the two must be proportional).
pub fn make_zero_family_cmd(a: &BigInt, b: &BigInt, k_max: u64, json: bool) -> Result<String, CliError> {
    let family = zero_family(a, b, k_max)?;
    let mut lines = vec!["k P Q normalized_P normalized_Q".to_string()];
    let mut rows = Vec::new();
    for (k, p, q) in family {
        let (np, nq) = construct_zero_at(a, b, k)?;
        if &p * &nq != &q * &np {
            return Err(CliError::invariant(format!(
                "family row k={k} ({p}, {q}) is not proportional to ({np}, {nq})"
            )));
        }
        lines.push(format!("{k} {p} {q} {np} {nq}"));
        rows.push(json!({"k": k, "p": p.to_string(), "q": q.to_string(),
                         "normalized_p": np.to_string(), "normalized_q": nq.to_string()}));
    }
    Ok(render(json, lines.join("\n"), json!({"a": a.to_string(), "b": b.to_string(), "family": rows})))
}

fn report_json(r: &GrowthReport) -> Value {
    json!({
        "check": r.check.to_string(),
        "n": r.n,
        "applicable": r.applicable,
        "holds": r.bound_holds,
        "threshold": r.threshold,
        "case": r.case.map(|c| c.to_string()),
        "note": r.note,
        "certificates": r.certificates.iter().map(|c| json!({
            "label": c.label,
            "margin": c.margin.to_string(),
            "holds": c.holds(),
        })).collect::<Vec<_>>(),
    })
}

pub struct GrowthOptions {
    pub c1: BigRational,
    pub c5: BigRational,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        GrowthOptions {
            c1: BigRational::from_integer(DEFAULT_C1.into()),
            c5: BigRational::from_integer(brig_core::growth::DEFAULT_C5.into()),
        }
    }
}

pub fn growth_cmd(
    params: &SequenceParams,
    n: u64,
    check: CheckKind,
    opts: &GrowthOptions,
    json: bool,
) -> Result<String, CliError> {
    match check {
        CheckKind::Real => {
            let r = check_real_growth(params, n)?;
            Ok(render(json, r.to_string(), report_json(&r)))
        }
        CheckKind::Sharp => {
            let r = check_sharp_case(params, n)?;
            Ok(render(json, r.to_string(), report_json(&r)))
        }
        CheckKind::Lucas => {
            let c1 = (classify(params) == SequenceClass::NonRealCase).then_some(&opts.c1);
            let r = check_lucas_bounds(&params.a, &params.b, n, c1)?;
            Ok(render(json, r.to_string(), report_json(&r)))
        }
        CheckKind::NonReal => {
            let mut r = check_nonreal_growth(params, n)?;
            let horizon = NONREAL_SCAN_HORIZON.max(n + 1);
            let n_star = empirical_threshold(params, horizon)?;
            let formula = nonreal_threshold(params, &opts.c5)?;
            r.note = Some(match n_star {
                Some(s) if n < s => "below threshold".into(),
                Some(_) => "at or above threshold".into(),
                None => format!("no threshold found up to {horizon}"),
            });
            let n_star_text = n_star.map_or("none".to_string(), |s| s.to_string());
            let text = format!(
                "{r}\nempirical n*={n_star_text} (scanned to {horizon}); formula threshold {formula} with c5={} (informational)",
                opts.c5
            );
            let mut value = report_json(&r);
            value["empirical_n_star"] = json!(n_star);
            value["formula_threshold"] = json!(formula);
            value["c5"] = json!(opts.c5.to_string());
            Ok(render(json, text, value))
        }
        CheckKind::Height => {
            let h = ratio_height(params)?;
            let sandwich = match classify(params) {
                SequenceClass::RealCase => Some(height_sandwich_check(params)?),
                _ => None,
            };
            let poly = polynomial(&h.coeffs);
            let bound = if height_bound_holds(&h) { "holds" } else { "fails" };
            let sandwich_text = match sandwich {
                Some(true) => "sandwich holds",
                Some(false) => "sandwich fails",
                None => "sandwich not applicable (non-real)",
            };
            let text = format!("H={}, {sandwich_text}; polynomial {poly}; height bound {bound}", h.height);
            let value = json!({
                "params": params_json(params),
                "coeffs": h.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "height": h.height.to_string(),
                "linear": h.linear,
                "self_reciprocal": h.linear || h.is_self_reciprocal(),
                "bound_holds": height_bound_holds(&h),
                "sandwich": sandwich,
            });
            Ok(render(json, text, value))
        }
    }
}

/// `c_d x^d + ... + c_0`, skipping zero terms.
fn polynomial(coeffs: &[BigInt]) -> String {
    let deg = coeffs.len().saturating_sub(1);
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = deg - i;
        let mag = c.magnitude().to_string();
        let sign = if c.sign() == num_bigint::Sign::Minus { "-" } else { "+" };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let var = match power {
            0 => String::new(),
            1 => "x".into(),
            p => format!("x^{p}"),
        };
        if power == 0 || mag != "1" {
            out.push_str(&mag);
        }
        out.push_str(&var);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(a: i64, b: i64, p: i64, q: i64) -> SequenceParams {
        SequenceParams::new(a, b, p, q)
    }

    #[test]
    fn classify_lines() {
        assert_eq!(classify_cmd(&sp(3, 6, 5, 6), false), "non-real");
        assert_eq!(classify_cmd(&sp(0, 0, 0, 0), false), "degenerate: both initial values zero");
        assert_eq!(classify_cmd(&sp(1, 1, 1, 1), false), "degenerate: root-of-unity ratio, order 3");
        let v: Value = serde_json::from_str(&classify_cmd(&sp(3, 6, 5, 6), true)).unwrap();
        assert_eq!(v["class"], "non-real");
    }

    #[test]
    fn term_values() {
        assert_eq!(term_cmd(&sp(3, 2, 31, 30), 5, TermMode::Auto, false), "0");
        assert_eq!(term_cmd(&sp(0, 0, 17, 0), 0, TermMode::Iter, false), "17");
        assert_eq!(
            term_cmd(&sp(1, -1, 0, 1), 100, TermMode::Fast, false),
            "354224848179261915075"
        );
    }

    #[test]
    fn zero_lines() {
        assert_eq!(
            zeros_cmd(&sp(3, 6, 5, 6), 1000, false).unwrap(),
            "zero at k=5 (bound 1000, conclusive under c4)"
        );
        assert_eq!(zeros_cmd(&sp(1, -1, 1, 2), 1000, false).unwrap(), "no zero up to 19, conclusive");
        assert_eq!(
            zeros_cmd(&sp(0, 1, 0, 1), 1000, false).unwrap(),
            "periodic zeros: n mod 2 in {0}"
        );
    }

    #[test]
    fn make_zero_lines() {
        let (a, b) = (BigInt::from(3), BigInt::from(6));
        assert_eq!(make_zero_cmd(&a, &b, 5, false).unwrap(), "P=-5 Q=-6");
        assert_eq!(make_zero_cmd(&a, &b, 2, false).unwrap(), "P=1 Q=2");
        let table = make_zero_family_cmd(&a, &b, 6, false).unwrap();
        assert_eq!(table.lines().nth(1).unwrap(), "2 3 6 1 2");
        assert_eq!(table.lines().count(), 6);
        assert!(make_zero_cmd(&BigInt::from(0), &b, 5, false).is_err());
    }

    #[test]
    fn growth_lines() {
        let opts = GrowthOptions::default();
        let t = growth_cmd(&sp(1, 2, 1, 1), 7, CheckKind::NonReal, &opts, false).unwrap();
        assert!(t.contains("holds=false (below threshold)"), "{t}");
        let t = growth_cmd(&sp(10, 1, 1, 1), 5, CheckKind::Real, &opts, false).unwrap();
        assert!(t.contains("not applicable"), "{t}");
        let t = growth_cmd(&sp(1, -1, 1, 1), 0, CheckKind::Height, &opts, false).unwrap();
        assert!(t.starts_with("H=3, sandwich holds"), "{t}");
        assert!(t.contains("x^2 + 3x + 1"));
        let t = growth_cmd(&sp(1, -1, 1, 1), 10, CheckKind::Lucas, &opts, false).unwrap();
        assert!(t.contains("holds=true"));
        let t = growth_cmd(&sp(1, 2, 1, 1), 50, CheckKind::Lucas, &opts, false).unwrap();
        assert!(t.contains("reporting only"));
        assert!(growth_cmd(&sp(1, 2, 1, 1), 7, CheckKind::Real, &opts, false).is_err());
    }

    #[test]
    fn polynomial_rendering() {
        let c = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(polynomial(&c(&[4, -3])), "4x - 3");
        assert_eq!(polynomial(&c(&[1, 0, 1])), "x^2 + 1");
        assert_eq!(polynomial(&c(&[2, -1, 2])), "2x^2 - x + 2");
    }
}
