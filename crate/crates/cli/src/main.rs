//! `odsq`: prime counting, composite counting and prime generation over the
//! odd numbers.

mod bench;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use odsq_core::report::{self, closed_form, ClassSpec, Variant};
use odsq_core::{first_n_primes, index_at, pi_of_with, primegen, Error, SieveTable, Strategy, WheelSpec};

use output::{Format, Out};

#[derive(Parser)]
#[command(name = "odsq", version, about = "Prime counting over the main sequence of odd numbers")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// pi(x) with its M_n / W_n breakdown.
    Pi {
        x: f64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Oracle)]
        strategy: StrategyArg,
    },
    /// Evaluate one composite counter.
    Count {
        /// One of 3, p:<prime>, kl, kkl, kpow:<j>, kpowl:<j>.
        class: String,
        #[command(flatten)]
        at: Position,
        /// Evaluate the formula as printed.
        #[arg(long)]
        paper: bool,
        /// Evaluate the oracle-matching form (default).
        #[arg(long)]
        corrected: bool,
    },
    /// First N primes from the partition generator.
    Gen {
        count: usize,
        /// Start the list at 2 (default).
        #[arg(long, overrides_with = "no_include_two")]
        include_two: bool,
        /// Start the list at 3.
        #[arg(long)]
        no_include_two: bool,
        /// Print the generator's raw output: starts at 3 and is not
        /// truncated to N.
        #[arg(long)]
        strict_paper: bool,
    },
    /// Elements of the T-series for a divisor set.
    Tseries {
        /// Comma-separated odd primes, e.g. 3,5.
        divisors: String,
        #[arg(long)]
        limit: u64,
    },
    /// Compare the closed forms against the oracle.
    Verify {
        #[arg(long, default_value_t = 10_000)]
        max_n: u64,
        #[arg(long, default_value = report::DEFAULT_CLASSES)]
        classes: String,
        #[arg(long, value_enum, default_value_t = VariantArg::Both)]
        variant: VariantArg,
    },
    /// Median timings per strategy.
    Bench {
        #[arg(long, default_value_t = 1e6)]
        x_max: f64,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Position {
    /// Raw index n.
    #[arg(long)]
    at_n: Option<u64>,
    /// Position of the last odd number <= x.
    #[arg(long)]
    at_x: Option<f64>,
}

impl Position {
    fn index(&self) -> odsq_core::Result<u64> {
        match (self.at_n, self.at_x) {
            (Some(n), _) => Ok(n),
            (None, Some(x)) => index_at(x),
            (None, None) => Err(Error::Usage("give --at-n or --at-x".into())),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Paper,
    Oracle,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Paper => Strategy::PaperEq6,
            StrategyArg::Oracle => Strategy::OracleExact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Paper,
    Corrected,
    Both,
}

/// Loads the sieve from `ODSQ_SIEVE_CACHE` when it covers `limit`, otherwise
/// builds it and refreshes the cache.
pub(crate) fn sieve_covering(limit: u64) -> odsq_core::Result<SieveTable> {
    let limit = limit.max(2);
    let cache = std::env::var_os("ODSQ_SIEVE_CACHE").map(PathBuf::from);
    if let Some(path) = &cache {
        if let Ok(table) = SieveTable::load(path) {
            if table.limit() >= limit {
                return Ok(table);
            }
        }
    }
    let table = SieveTable::build(limit)?;
    if let Some(path) = &cache {
        if let Err(e) = table.save(path) {
            eprintln!("warning: could not write sieve cache {}: {e}", path.display());
        }
    }
    Ok(table)
}

#[derive(Serialize)]
struct CountOut {
    class: String,
    n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    paper: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    corrected: Option<u64>,
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let mut out = Out::stdout(cli.format);
    match cli.command {
        Command::Pi { x, strategy } => {
            let strategy = Strategy::from(strategy);
            if !(x >= 2.0) {
                return Err(Error::Domain(format!("pi needs x >= 2, got {x}")).into());
            }
            let breakdown = match strategy {
                Strategy::OracleExact => pi_of_with(x, strategy, &sieve_covering(x as u64)?)?,
                Strategy::PaperEq6 => odsq_core::pi_of(x, strategy)?,
            };
            out.pi(&breakdown)?;
        }
        Command::Count {
            class,
            at,
            paper,
            corrected,
        } => {
            let spec: ClassSpec = class.parse()?;
            if spec == ClassSpec::W {
                bail!(Error::Usage("class w has no closed form; use `pi --strategy paper`".into()));
            }
            let n = at.index()?;
            let eval = |variant| -> anyhow::Result<u64> {
                closed_form(spec, variant, n)?
                    .ok_or_else(|| anyhow!(Error::Usage(format!("no {variant} formula for class {spec}"))))
            };
            let row = CountOut {
                class: spec.to_string(),
                n,
                paper: if paper { Some(eval(Variant::Paper)?) } else { None },
                corrected: if corrected || !paper {
                    Some(eval(Variant::Corrected)?)
                } else {
                    None
                },
            };
            match (cli.format, row.paper, row.corrected) {
                (Format::Text, Some(p), Some(c)) => out.line(&format!("paper={p} corrected={c}"))?,
                (Format::Text, v, None) | (Format::Text, None, v) => {
                    out.line(&v.expect("one variant").to_string())?
                }
                (Format::Json, ..) => out.json(&row)?,
                (Format::Csv, ..) => out.csv_rows(&[row])?,
            }
        }
        Command::Gen {
            count,
            include_two: _,
            no_include_two,
            strict_paper,
        } => {
            if count == 0 {
                bail!(Error::Domain("count must be at least 1".into()));
            }
            let primes = if strict_paper {
                primegen::raw_sequence(count)?
            } else {
                first_n_primes(count, !no_include_two)?
            };
            out.sequence("prime", &primes)?;
        }
        Command::Tseries { divisors, limit } => {
            let divisors = divisors
                .split(',')
                .map(|d| d.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Error::Usage(format!("bad divisor list: {e}")))?;
            let spec = WheelSpec::build(&divisors)?;
            let stream = spec.stream(limit);
            if cli.format == Format::Json {
                out.json(&serde_json::json!({
                    "divisors": spec.divisors(),
                    "period": spec.period(),
                    "seeds": spec.seeds(),
                    "elements": stream,
                }))?;
            } else {
                out.sequence("value", &stream)?;
            }
        }
        Command::Verify {
            max_n,
            classes,
            variant,
        } => {
            let classes = report::parse_classes(&classes)?;
            let variants: &[Variant] = match variant {
                VariantArg::Paper => &[Variant::Paper],
                VariantArg::Corrected => &[Variant::Corrected],
                VariantArg::Both => &[Variant::Corrected, Variant::Paper],
            };
            let report = report::verify(max_n, &classes, variants)?;
            for row in &report.rows {
                if row.variant == Variant::Paper && row.mismatches > 0 {
                    eprintln!(
                        "WARN: printed formula for {} deviates from the oracle at {} of {} indices (first at n={}: {} vs {})",
                        row.quantity, row.mismatches, row.checked, row.location, row.paper, row.oracle
                    );
                }
            }
            out.report(&report)?;
            if !report.corrected_ok() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Bench { x_max, repeats } => {
            let rows = bench::run(x_max, repeats)?;
            out.bench(&rows)?;
        }
    }
    out.finish().context("writing output")?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
