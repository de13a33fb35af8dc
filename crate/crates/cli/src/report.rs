//! Sweep report: one record per grid point, summary counts and the list of
//! informational discrepancies. Big integers are carried as decimal strings.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::config::GridSpec;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub a: String,
    pub b: String,
    pub p: String,
    pub q: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroRecord {
    /// Rendered verdict.
    pub verdict: String,
    /// Index of the zero for a single-zero verdict.
    pub index: Option<u64>,
    /// Search bound for non-degenerate sequences.
    pub bound: Option<u64>,
    pub conclusive: bool,
    /// Zeros found by plain iteration over `0..=oracle_horizon`.
    pub oracle_zeros: Vec<u64>,
    pub oracle_horizon: u64,
    pub oracle_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealGrowthRecord {
    pub branch: String,
    pub sub_case: String,
    pub n_min: u64,
    pub checked: u64,
    pub failures: u64,
    pub sharp_checked: u64,
    pub sharp_failures: u64,
    /// First failing index and check, if any.
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonRealGrowthRecord {
    /// Start of the suffix of `[0, horizon]` on which `|u_n|³ ≥ B^n`.
    pub empirical_n_star: Option<u64>,
    /// Reported formula threshold for the configured `c5`.
    pub formula_threshold: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightRecord {
    pub height: String,
    pub linear: bool,
    pub self_reciprocal: bool,
    pub bound_holds: bool,
    /// Real case only.
    pub sandwich: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct GrowthRecord {
    pub real: Option<RealGrowthRecord>,
    pub nonreal: Option<NonRealGrowthRecord>,
    pub height: Option<HeightRecord>,
    /// Why a check was skipped.
    pub skipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub params: ParamsRecord,
    pub class: String,
    pub zero: ZeroRecord,
    pub growth: GrowthRecord,
    /// Assertion-grade failures at this grid point.
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Summary {
    pub grid_points: u64,
    pub records: u64,
    pub degenerate: u64,
    pub real: u64,
    pub nonreal: u64,
    pub with_zero: u64,
    pub oracle_disagreements: u64,
    pub real_checked_instances: u64,
    pub real_checks: u64,
    pub real_failures: u64,
    pub sharp_checks: u64,
    pub sharp_failures: u64,
    pub nonreal_checked_instances: u64,
    pub nonreal_without_threshold: u64,
    pub max_empirical_n_star: u64,
    pub height_checked: u64,
    pub height_failures: u64,
    pub sandwich_checked: u64,
    pub sandwich_failures: u64,
    pub lucas_pairs: u64,
    pub lucas_failures: u64,
    pub invariant_errors: u64,
    /// Number of records with at least one violation plus assertion-grade
    /// failures not tied to a record.
    pub violations: u64,
}

/// Informational finding that does not affect the exit code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub config: GridSpec,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub meta: Meta,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub discrepancies: Vec<Discrepancy>,
}

impl Report {
    pub fn has_violations(&self) -> bool {
        self.summary.violations > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Record count matches the summary and the summary counts add up.
    pub fn check_consistency(&self) -> Result<(), String> {
        let s = &self.summary;
        if s.records != self.records.len() as u64 {
            return Err(format!("{} records, summary says {}", self.records.len(), s.records));
        }
        if s.real + s.nonreal + s.degenerate != s.records {
            return Err("class counts do not sum to the record count".into());
        }
        let count = |f: &dyn Fn(&Record) -> bool| self.records.iter().filter(|r| f(r)).count() as u64;
        let checks = [
            ("real", s.real, count(&|r| r.class == "real")),
            ("non-real", s.nonreal, count(&|r| r.class == "non-real")),
            ("with_zero", s.with_zero, count(&|r| !r.zero.oracle_zeros.is_empty())),
            ("oracle_disagreements", s.oracle_disagreements, count(&|r| !r.zero.oracle_agrees)),
            ("real_checked_instances", s.real_checked_instances, count(&|r| r.growth.real.is_some())),
            ("nonreal_checked_instances", s.nonreal_checked_instances, count(&|r| r.growth.nonreal.is_some())),
            ("height_checked", s.height_checked, count(&|r| r.growth.height.is_some())),
            ("violations", s.violations - s.lucas_failures, count(&|r| !r.violations.is_empty())),
        ];
        for (name, summary, recount) in checks {
            if summary != recount {
                return Err(format!("summary {name} = {summary}, records give {recount}"));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::usage(format!("invalid report: {e}")))
    }
}

/// Fixed CSV header, in schema order.
pub const CSV_HEADER: [&str; 29] = [
    "a",
    "b",
    "p",
    "q",
    "class",
    "zero_verdict",
    "zero_index",
    "zero_bound",
    "zero_conclusive",
    "oracle_zeros",
    "oracle_horizon",
    "oracle_agrees",
    "real_branch",
    "real_sub_case",
    "real_n_min",
    "real_checked",
    "real_failures",
    "sharp_checked",
    "sharp_failures",
    "real_first_failure",
    "nonreal_n_star",
    "nonreal_formula_threshold",
    "height",
    "height_linear",
    "height_self_reciprocal",
    "height_bound_holds",
    "height_sandwich",
    "skipped",
    "violations",
];

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

impl Record {
    fn csv_row(&self) -> Vec<String> {
        let z = &self.zero;
        let g = &self.growth;
        let r = g.real.as_ref();
        let nr = g.nonreal.as_ref();
        let h = g.height.as_ref();
        vec![
            self.params.a.clone(),
            self.params.b.clone(),
            self.params.p.clone(),
            self.params.q.clone(),
            self.class.clone(),
            z.verdict.clone(),
            opt(&z.index),
            opt(&z.bound),
            z.conclusive.to_string(),
            join(&z.oracle_zeros),
            z.oracle_horizon.to_string(),
            z.oracle_agrees.to_string(),
            opt(&r.map(|r| r.branch.clone())),
            opt(&r.map(|r| r.sub_case.clone())),
            opt(&r.map(|r| r.n_min)),
            opt(&r.map(|r| r.checked)),
            opt(&r.map(|r| r.failures)),
            opt(&r.map(|r| r.sharp_checked)),
            opt(&r.map(|r| r.sharp_failures)),
            opt(&r.and_then(|r| r.first_failure.clone())),
            opt(&nr.and_then(|n| n.empirical_n_star)),
            opt(&nr.map(|n| n.formula_threshold)),
            opt(&h.map(|h| h.height.clone())),
            opt(&h.map(|h| h.linear)),
            opt(&h.map(|h| h.self_reciprocal)),
            opt(&h.map(|h| h.bound_holds)),
            opt(&h.and_then(|h| h.sandwich)),
            opt(&g.skipped),
            self.violations.join(";"),
        ]
    }

    fn from_csv_row(row: &csv::StringRecord) -> Result<Self, String> {
        if row.len() != CSV_HEADER.len() {
            return Err(format!("expected {} fields, got {}", CSV_HEADER.len(), row.len()));
        }
        let f = |i: usize| row[i].to_string();
        fn parse<T: std::str::FromStr>(s: &str) -> Result<T, String> {
            s.parse().map_err(|_| format!("invalid field {s:?}"))
        }
        fn parse_opt<T: std::str::FromStr>(s: &str) -> Result<Option<T>, String> {
            if s.is_empty() {
                Ok(None)
            } else {
                parse(s).map(Some)
            }
        }
        let split = |s: &str| -> Vec<String> {
            if s.is_empty() {
                Vec::new()
            } else {
                s.split(';').map(str::to_string).collect()
            }
        };
        let oracle_zeros = split(&row[9])
            .iter()
            .map(|s| parse::<u64>(s))
            .collect::<Result<Vec<_>, _>>()?;
        let real = if row[12].is_empty() {
            None
        } else {
            Some(RealGrowthRecord {
                branch: f(12),
                sub_case: f(13),
                n_min: parse(&row[14])?,
                checked: parse(&row[15])?,
                failures: parse(&row[16])?,
                sharp_checked: parse(&row[17])?,
                sharp_failures: parse(&row[18])?,
                first_failure: parse_opt(&row[19])?,
            })
        };
        let nonreal = if row[21].is_empty() {
            None
        } else {
            Some(NonRealGrowthRecord {
                empirical_n_star: parse_opt(&row[20])?,
                formula_threshold: parse(&row[21])?,
            })
        };
        let height = if row[22].is_empty() {
            None
        } else {
            Some(HeightRecord {
                height: f(22),
                linear: parse(&row[23])?,
                self_reciprocal: parse(&row[24])?,
                bound_holds: parse(&row[25])?,
                sandwich: parse_opt(&row[26])?,
            })
        };
        Ok(Record {
            params: ParamsRecord { a: f(0), b: f(1), p: f(2), q: f(3) },
            class: f(4),
            zero: ZeroRecord {
                verdict: f(5),
                index: parse_opt(&row[6])?,
                bound: parse_opt(&row[7])?,
                conclusive: parse(&row[8])?,
                oracle_zeros,
                oracle_horizon: parse(&row[10])?,
                oracle_agrees: parse(&row[11])?,
            },
            growth: GrowthRecord { real, nonreal, height, skipped: parse_opt(&row[27])? },
            violations: split(&row[28]),
        })
    }
}

/// Writes the records as CSV, one row per record under [`CSV_HEADER`].
pub fn write_csv<W: Write>(records: &[Record], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| CliError::usage(format!("cannot write CSV: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in records {
        w.write_record(r.csv_row()).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::usage(format!("cannot write CSV: {e}")))?;
    Ok(())
}

pub fn records_to_csv(records: &[Record]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is UTF-8")
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<Record>, CliError> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr
        .headers()
        .map_err(|e| CliError::usage(format!("invalid CSV: {e}")))?
        .clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(CliError::usage("unexpected CSV header"));
    }
    rdr.records()
        .enumerate()
        .map(|(i, row)| {
            let row = row.map_err(|e| CliError::usage(format!("invalid CSV: {e}")))?;
            Record::from_csv_row(&row).map_err(|e| CliError::usage(format!("CSV row {}: {e}", i + 1)))
        })
        .collect()
}
