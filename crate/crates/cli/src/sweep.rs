//! Parallel grid sweep. Each grid point is evaluated independently and
//! single-threaded; results are collected in grid order, which is the sorted
//! parameter order, so the report does not depend on the worker count.

use std::fs::File;
use std::io::{BufWriter, Write};

use brig_core::growth::{
    height_bound_holds, lucas_bound_failures, nonreal_threshold, GrowthCheck, RealGrowthScan,
};
use brig_core::zeros::find_zero_with_bound;
use brig_core::{
    classify, empirical_threshold, height_sandwich_check, ratio_height, BrigError, SequenceClass,
    SequenceParams, ZeroResult,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::config::{Format, GridSpec, SweepConfig};
use crate::error::CliError;
use crate::oracle::brute_force_zero_oracle;
use crate::report::{
    write_csv, Discrepancy, GrowthRecord, HeightRecord, Meta, NonRealGrowthRecord, ParamsRecord,
    RealGrowthRecord, Record, Report, Summary, ZeroRecord,
};

/// Horizon of the non-real empirical threshold scan.
pub const NONREAL_SCAN_HORIZON: u64 = 300;

struct Evaluated {
    record: Record,
    discrepancies: Vec<Discrepancy>,
    invariant_error: bool,
}

fn params_record(p: &SequenceParams) -> ParamsRecord {
    ParamsRecord {
        a: p.a.to_string(),
        b: p.b.to_string(),
        p: p.p.to_string(),
        q: p.q.to_string(),
    }
}

fn zero_record(
    params: &SequenceParams,
    grid: &GridSpec,
    violations: &mut Vec<String>,
    invariant_error: &mut bool,
) -> ZeroRecord {
    let (verdict, bound) = match find_zero_with_bound(params, grid.c4) {
        Ok(v) => v,
        Err(e) => {
            if matches!(e, BrigError::InvariantViolation(_)) {
                *invariant_error = true;
            }
            violations.push(format!("zero search failed: {e}"));
            return ZeroRecord {
                verdict: format!("error: {e}"),
                index: None,
                bound: None,
                conclusive: false,
                oracle_zeros: Vec::new(),
                oracle_horizon: 0,
                oracle_agrees: false,
            };
        }
    };
    let n_max = bound.as_ref().map(|b| b.n_max);
    let horizon = n_max.unwrap_or(0).max(grid.oracle_horizon);
    let oracle_zeros = brute_force_zero_oracle(params, horizon);
    let predicted = (0..=horizon).filter(|&n| verdict.predicts_zero_at(n));
    let oracle_agrees = predicted.eq(oracle_zeros.iter().copied());
    if !oracle_agrees {
        violations.push(format!("zero oracle disagrees with verdict {verdict}"));
    }
    let conclusive = match &verdict {
        ZeroResult::NoZero { conclusive, .. } => *conclusive,
        _ => bound.as_ref().is_none_or(|b| b.conclusive()),
    };
    ZeroRecord {
        index: match verdict {
            ZeroResult::ZeroAt(k) => Some(k),
            _ => None,
        },
        verdict: verdict.to_string(),
        bound: n_max,
        conclusive,
        oracle_zeros,
        oracle_horizon: horizon,
        oracle_agrees,
    }
}

fn real_record(params: &SequenceParams, grid: &GridSpec, violations: &mut Vec<String>) -> Option<RealGrowthRecord> {
    let scan = RealGrowthScan::new(params).ok()?;
    let outcome = scan.run(grid.n_horizon, grid.sharp);
    let sharp_failures = outcome
        .failures
        .iter()
        .filter(|(_, c, _)| matches!(c, GrowthCheck::Sharp(_)))
        .count() as u64;
    let failures = outcome.failures.len() as u64 - sharp_failures;
    let first_failure = outcome
        .failures
        .first()
        .map(|(n, check, label)| format!("n={n} {check}: {label}"));
    if let Some(f) = &first_failure {
        violations.push(format!("real growth bound failed at {f}"));
    }
    Some(RealGrowthRecord {
        branch: format!("{:?}", outcome.branch.branch).to_lowercase(),
        sub_case: outcome.branch.sub_case.to_string(),
        n_min: outcome.branch.n_min,
        checked: outcome.branch_checked,
        failures,
        sharp_checked: outcome.sharp_checked,
        sharp_failures,
        first_failure,
    })
}

fn nonreal_record(
    params: &SequenceParams,
    c5: &BigRational,
    violations: &mut Vec<String>,
    discrepancies: &mut Vec<Discrepancy>,
) -> Option<NonRealGrowthRecord> {
    let n_star = empirical_threshold(params, NONREAL_SCAN_HORIZON).ok()?;
    let formula = nonreal_threshold(params, c5).ok()?;
    match n_star {
        None => violations.push(format!(
            "|u_n|^3 >= B^n fails at n = {NONREAL_SCAN_HORIZON}"
        )),
        Some(n) if n > formula => discrepancies.push(Discrepancy {
            kind: "nonreal-threshold".into(),
            detail: format!("{params}: empirical n* = {n} exceeds the formula threshold {formula} for c5 = {c5}"),
        }),
        _ => {}
    }
    Some(NonRealGrowthRecord { empirical_n_star: n_star, formula_threshold: formula })
}

fn height_record(params: &SequenceParams, class: SequenceClass, violations: &mut Vec<String>) -> Option<HeightRecord> {
    let h = ratio_height(params).ok()?;
    let bound_holds = height_bound_holds(&h);
    let self_reciprocal = h.linear || h.is_self_reciprocal();
    let sandwich = (class == SequenceClass::RealCase)
        .then(|| height_sandwich_check(params).unwrap_or(false));
    if !bound_holds {
        violations.push(format!("height bound fails: H = {}", h.height));
    }
    if !self_reciprocal {
        violations.push("ratio polynomial is not self-reciprocal".into());
    }
    if sandwich == Some(false) {
        violations.push(format!("height sandwich fails: H = {}", h.height));
    }
    Some(HeightRecord {
        height: h.height.to_string(),
        linear: h.linear,
        self_reciprocal,
        bound_holds,
        sandwich,
    })
}

fn evaluate(params: &SequenceParams, grid: &GridSpec, c5: &BigRational) -> Evaluated {
    let class = classify(params);
    let mut violations = Vec::new();
    let mut discrepancies = Vec::new();
    let mut invariant_error = false;
    let zero = zero_record(params, grid, &mut violations, &mut invariant_error);
    let mut growth = GrowthRecord::default();
    match class {
        SequenceClass::RealCase => {
            growth.real = real_record(params, grid, &mut violations);
            if growth.real.is_none() {
                growth.skipped = Some("real growth bounds need PQ != 0".into());
            }
        }
        SequenceClass::NonRealCase => {
            growth.nonreal = nonreal_record(params, c5, &mut violations, &mut discrepancies);
        }
        SequenceClass::Degenerate(_) => growth.skipped = Some("degenerate".into()),
    }
    growth.height = height_record(params, class, &mut violations);
    Evaluated {
        record: Record {
            params: params_record(params),
            class: class.to_string(),
            zero,
            growth,
            violations,
        },
        discrepancies,
        invariant_error,
    }
}

fn grid_points(grid: &GridSpec) -> Vec<SequenceParams> {
    let mut out = Vec::new();
    for a in grid.a.iter() {
        for b in grid.b.iter() {
            for p in grid.p.iter() {
                for q in grid.q.iter() {
                    out.push(SequenceParams::new(a, b, p, q));
                }
            }
        }
    }
    out
}

/// Lucas lower bounds for every real-case `(A, B)` of the grid. Failures
/// with `B < 0` are violations; failures with `B > 0` are informational.
fn lucas_sweep(grid: &GridSpec) -> (u64, Vec<String>, Vec<Discrepancy>) {
    let mut pairs = 0;
    let mut violations = Vec::new();
    let mut discrepancies = Vec::new();
    for a in grid.a.iter() {
        for b in grid.b.iter() {
            let (a_big, b_big) = (BigInt::from(a), BigInt::from(b));
            let Ok(fails) = lucas_bound_failures(&a_big, &b_big, grid.n_horizon) else {
                continue;
            };
            pairs += 1;
            if fails.is_empty() {
                continue;
            }
            let detail = format!("(A, B) = ({a}, {b}) fails at n in {fails:?}");
            if b < 0 {
                violations.push(detail);
            } else {
                discrepancies.push(Discrepancy { kind: "lucas-positive-b".into(), detail });
            }
        }
    }
    (pairs, violations, discrepancies)
}

fn summarize(config: &SweepConfig, evaluated: &[Evaluated], lucas_pairs: u64, lucas_failures: u64) -> Summary {
    let mut s = Summary {
        grid_points: config.grid_points(),
        records: evaluated.len() as u64,
        lucas_pairs,
        lucas_failures,
        ..Summary::default()
    };
    for e in evaluated {
        let r = &e.record;
        match r.class.as_str() {
            "real" => s.real += 1,
            "non-real" => s.nonreal += 1,
            _ => s.degenerate += 1,
        }
        if !r.zero.oracle_zeros.is_empty() {
            s.with_zero += 1;
        }
        if !r.zero.oracle_agrees {
            s.oracle_disagreements += 1;
        }
        if let Some(g) = &r.growth.real {
            s.real_checked_instances += 1;
            s.real_checks += g.checked;
            s.real_failures += g.failures;
            s.sharp_checks += g.sharp_checked;
            s.sharp_failures += g.sharp_failures;
        }
        if let Some(g) = &r.growth.nonreal {
            s.nonreal_checked_instances += 1;
            match g.empirical_n_star {
                Some(n) => s.max_empirical_n_star = s.max_empirical_n_star.max(n),
                None => s.nonreal_without_threshold += 1,
            }
        }
        if let Some(h) = &r.growth.height {
            s.height_checked += 1;
            if !h.bound_holds || !h.self_reciprocal {
                s.height_failures += 1;
            }
            if let Some(sw) = h.sandwich {
                s.sandwich_checked += 1;
                if !sw {
                    s.sandwich_failures += 1;
                }
            }
        }
        if e.invariant_error {
            s.invariant_errors += 1;
        }
        if !r.violations.is_empty() {
            s.violations += 1;
        }
    }
    s.violations += lucas_failures;
    s
}

/// Runs the sweep described by `config` (which must be valid).
pub fn run_sweep(config: &SweepConfig) -> Result<Report, CliError> {
    config.validate()?;
    let threads = config.effective_parallelism()?;
    let grid = &config.grid;
    let c5 = config.c5();
    let points = grid_points(grid);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start worker pool: {e}")))?;
    let evaluated: Vec<Evaluated> =
        pool.install(|| points.par_iter().map(|p| evaluate(p, grid, &c5)).collect());
    let (lucas_pairs, lucas_violations, lucas_discrepancies) = lucas_sweep(grid);
    let summary = summarize(config, &evaluated, lucas_pairs, lucas_violations.len() as u64);
    let mut discrepancies: Vec<Discrepancy> =
        evaluated.iter().flat_map(|e| e.discrepancies.iter().cloned()).collect();
    discrepancies.extend(lucas_discrepancies);
    discrepancies.extend(lucas_violations.into_iter().map(|detail| Discrepancy {
        kind: "lucas-negative-b-violation".into(),
        detail,
    }));
    Ok(Report {
        meta: Meta {
            config: grid.clone(),
            version: env!("CARGO_PKG_VERSION").into(),
        },
        records: evaluated.into_iter().map(|e| e.record).collect(),
        summary,
        discrepancies,
    })
}

fn write_to(report: &Report, format: Format, file: File) -> std::io::Result<()> {
    let mut out = BufWriter::new(file);
    match format {
        Format::Json => out.write_all(report.to_json().as_bytes())?,
        Format::Csv => write_csv(&report.records, &mut out)
            .map_err(|e| std::io::Error::other(e.message))?,
    }
    out.flush()
}

/// Writes the report in the configured format. A partially written file is
/// removed on failure.
pub fn write_report(report: &Report, config: &SweepConfig) -> Result<(), CliError> {
    let path = &config.output_path;
    let fail = |e: std::io::Error| CliError::usage(format!("cannot write {}: {e}", path.display()));
    let file = File::create(path).map_err(fail)?;
    write_to(report, config.format, file).map_err(|e| {
        let _ = std::fs::remove_file(path);
        fail(e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::IntRange;

    fn small() -> SweepConfig {
        let mut cfg = SweepConfig::default();
        cfg.grid.a = IntRange(-3, 3);
        cfg.grid.b = IntRange(-3, 3);
        cfg.grid.p = IntRange(-2, 2);
        cfg.grid.q = IntRange(-2, 2);
        cfg.grid.n_horizon = 60;
        cfg.grid.oracle_horizon = 200;
        cfg.grid.c4 = 200;
        cfg
    }

    #[test]
    fn small_grid_is_clean_and_consistent() {
        let cfg = small();
        let report = run_sweep(&cfg).unwrap();
        let s = &report.summary;
        assert_eq!(s.records, cfg.grid_points());
        assert_eq!(s.real + s.nonreal + s.degenerate, s.records);
        assert_eq!(s.violations, 0, "{:?}", report.records.iter().find(|r| !r.violations.is_empty()));
        report.check_consistency().unwrap();
        assert!(s.real_checks > 0 && s.nonreal_checked_instances > 0 && s.sandwich_checked > 0);
        let r = report
            .records
            .iter()
            .find(|r| r.params == params_record(&SequenceParams::new(1, 1, 1, 1)))
            .unwrap();
        assert!(r.class.starts_with("degenerate"));
        assert_eq!(r.growth.skipped.as_deref(), Some("degenerate"));
    }

    #[test]
    fn parallelism_does_not_change_output() {
        let mut cfg = small();
        cfg.grid.p = IntRange(-1, 1);
        let one = run_sweep(&cfg).unwrap();
        cfg.parallelism = 4;
        let four = run_sweep(&cfg).unwrap();
        assert_eq!(one.to_json(), four.to_json());
    }

    #[test]
    fn invalid_config_is_rejected() {
        let mut cfg = small();
        cfg.grid.a = IntRange(2, 1);
        assert_eq!(run_sweep(&cfg).unwrap_err().exit, crate::error::Exit::Usage);
    }
}
