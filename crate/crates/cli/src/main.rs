use std::path::PathBuf;
use std::process::ExitCode;

use brigkit::commands::{
    classify_cmd, growth_cmd, make_zero_cmd, make_zero_family_cmd, term_cmd, zeros_cmd, CheckKind,
    GrowthOptions, TermMode,
};
use brigkit::config::parse_rational;
use brigkit::{run_sweep, write_report, CliError, Exit, Format, IntRange, SweepConfig};
use brig_core::{SequenceParams, DEFAULT_C4};
use clap::{error::ErrorKind, Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Parser)]
#[command(name = "brigkit", version, about = "Exact tools for binary recurrence sequences u_n = A*u_{n-1} - B*u_{n-2}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Coefficient A.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a: BigInt,
    /// Coefficient B.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    b: BigInt,
    /// Initial value u_0.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    p: BigInt,
    /// Initial value u_1.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    q: BigInt,
}

impl ParamArgs {
    fn params(&self) -> SequenceParams {
        SequenceParams::new(self.a.clone(), self.b.clone(), self.p.clone(), self.q.clone())
    }
}

fn rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s)
}

#[derive(Subcommand)]
enum Command {
    /// Print the classification of the sequence.
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print u_n in decimal.
    Term {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: u64,
        /// Binary powering.
        #[arg(long, conflicts_with = "iter")]
        fast: bool,
        /// Plain iteration.
        #[arg(long)]
        iter: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the sequence has a zero term.
    Zeros {
        #[command(flatten)]
        params: ParamArgs,
        /// Stand-in for the non-explicit constant of the non-real bound.
        #[arg(long, default_value_t = DEFAULT_C4)]
        c4: u64,
        #[arg(long)]
        json: bool,
    },
    /// Initial values of a sequence vanishing at index k.
    MakeZero {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        b: BigInt,
        #[arg(long, required_unless_present = "family")]
        k: Option<u64>,
        /// Print the recursive family for k = 2..=kmax.
        #[arg(long, requires = "kmax")]
        family: bool,
        #[arg(long)]
        kmax: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a growth bound at index n.
    Growth {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        n: u64,
        /// real, nonreal, sharp, lucas or height.
        #[arg(long)]
        check: CheckKind,
        /// Constant of the reporting-only non-real Lucas clause.
        #[arg(long, value_parser = rational_arg)]
        c1: Option<BigRational>,
        /// Constant of the reported non-real threshold.
        #[arg(long, value_parser = rational_arg)]
        c5: Option<BigRational>,
        #[arg(long)]
        json: bool,
    },
    /// Run a parameter-grid sweep and write a report.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// JSON configuration file; flags below override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, value_name = "LO:HI")]
    a_range: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true, value_name = "LO:HI")]
    b_range: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true, value_name = "LO:HI")]
    p_range: Option<IntRange>,
    #[arg(long, allow_hyphen_values = true, value_name = "LO:HI")]
    q_range: Option<IntRange>,
    #[arg(long)]
    horizon: Option<u64>,
    #[arg(long)]
    oracle_horizon: Option<u64>,
    #[arg(long)]
    c4: Option<u64>,
    #[arg(long)]
    c5: Option<String>,
    /// Worker threads (BRIGKIT_THREADS takes precedence).
    #[arg(long)]
    threads: Option<usize>,
    /// Skip the per-sub-case real bounds.
    #[arg(long)]
    no_sharp: bool,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
}

impl SweepArgs {
    fn config(&self) -> Result<SweepConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => SweepConfig::from_json_file(path)?,
            None => SweepConfig::default(),
        };
        let g = &mut cfg.grid;
        for (dst, src) in [
            (&mut g.a, self.a_range),
            (&mut g.b, self.b_range),
            (&mut g.p, self.p_range),
            (&mut g.q, self.q_range),
        ] {
            if let Some(r) = src {
                *dst = r;
            }
        }
        if let Some(h) = self.horizon {
            g.n_horizon = h;
        }
        if let Some(h) = self.oracle_horizon {
            g.oracle_horizon = h;
        }
        if let Some(c4) = self.c4 {
            g.c4 = c4;
        }
        if let Some(c5) = &self.c5 {
            g.c5 = c5.clone();
        }
        if self.no_sharp {
            g.sharp = false;
        }
        if let Some(t) = self.threads {
            cfg.parallelism = t;
        }
        if let Some(o) = &self.output {
            cfg.output_path = o.clone();
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        Ok(cfg)
    }
}

fn sweep(args: &SweepArgs) -> Result<(String, Exit), CliError> {
    let cfg = args.config()?;
    let report = run_sweep(&cfg)?;
    write_report(&report, &cfg)?;
    let s = &report.summary;
    let text = format!(
        "{} records ({} real, {} non-real, {} degenerate); {} violations, {} discrepancies; report written to {}",
        s.records,
        s.real,
        s.nonreal,
        s.degenerate,
        s.violations,
        report.discrepancies.len(),
        cfg.output_path.display()
    );
    if s.invariant_errors > 0 {
        return Ok((text, Exit::Invariant));
    }
    Ok((text, if report.has_violations() { Exit::Violations } else { Exit::Ok }))
}

fn run(cli: Cli) -> Result<(String, Exit), CliError> {
    let ok = |s: String| Ok((s, Exit::Ok));
    match cli.command {
        Command::Classify { params, json } => ok(classify_cmd(&params.params(), json)),
        Command::Term { params, n, fast, iter, json } => {
            let mode = match (fast, iter) {
                (true, _) => TermMode::Fast,
                (_, true) => TermMode::Iter,
                _ => TermMode::Auto,
            };
            ok(term_cmd(&params.params(), n, mode, json))
        }
        Command::Zeros { params, c4, json } => ok(zeros_cmd(&params.params(), c4, json)?),
        Command::MakeZero { a, b, k, family, kmax, json } => {
            if family {
                ok(make_zero_family_cmd(&a, &b, kmax.expect("required by clap"), json)?)
            } else {
                ok(make_zero_cmd(&a, &b, k.expect("required by clap"), json)?)
            }
        }
        Command::Growth { params, n, check, c1, c5, json } => {
            let mut opts = GrowthOptions::default();
            if let Some(c1) = c1 {
                opts.c1 = c1;
            }
            if let Some(c5) = c5 {
                opts.c5 = c5;
            }
            ok(growth_cmd(&params.params(), n, check, &opts, json)?)
        }
        Command::Sweep(args) => sweep(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Exit::Usage.code() as u8),
            };
        }
    };
    match run(cli) {
        Ok((text, exit)) => {
            println!("{text}");
            ExitCode::from(exit.code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit.code() as u8)
        }
    }
}
