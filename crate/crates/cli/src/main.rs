//! Command-line front end: compute single values, stream verified tables,
//! and run the verification suites with machine-readable output.
//!
//! Exit codes: 0 success (and verification passed), 1 verification found
//! mismatches, 2 usage error.

mod render;
mod sweeps;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polybernoulli::{compositions, compute_record, IndexTuple, Method, WeightTuple};

use render::{
    rational_str, record_csv_row, record_json, record_plain, OutputFormat, RECORD_CSV_HEADER,
};

#[derive(Parser)]
#[command(
    name = "polybernoulli",
    version,
    about = "Exact multi-indexed poly-Bernoulli numbers: compute, tabulate, verify"
)]
struct Cli {
    /// Largest index total a single evaluation may carry (desk-scale guard).
    #[arg(long, global = true, default_value_t = 8)]
    max_total_degree: u32,

    /// Output format for results on standard output.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one poly-Bernoulli number exactly.
    Compute(ComputeArgs),
    /// Stream a table of values over index and weight ranges.
    Table(TableArgs),
    /// Run a verification suite; exits 1 when any mismatch is found.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args)]
struct ComputeArgs {
    /// Index tuple, comma separated (e.g. `--m 1,2,0`).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    m: Vec<i64>,

    /// Weight tuple, comma separated (e.g. `--k -1,2`).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    k: Vec<i64>,

    /// Evaluation method: explicit, double, triple-a, triple-b, oracle-ell, oracle-li.
    #[arg(long, default_value = "explicit")]
    method: String,
}

#[derive(Args)]
struct TableArgs {
    /// Rank (number of index entries).
    #[arg(long, required = true)]
    r: usize,

    /// Upper bound for every index entry; rows cover all tuples up to it.
    #[arg(long, required = true)]
    max_m: u32,

    /// Fixed weight tuple, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    k: Option<Vec<i64>>,

    /// Inclusive weight range `a..b` applied to every weight entry.
    #[arg(long, allow_hyphen_values = true)]
    k_range: Option<String>,

    /// Weight choice set, comma separated, applied to every weight entry.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    k_set: Option<Vec<i64>>,

    /// Evaluation method for every row.
    #[arg(long, default_value = "explicit")]
    method: String,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Duality: B_m^(-k) equals B_k^(-m) for all entries up to --max.
    Duality {
        /// Rank (tuple length).
        #[arg(long, required = true)]
        r: usize,
        /// Upper bound for every entry of m and k.
        #[arg(long, required = true)]
        max: u32,
    },
    /// Explicit formula against both series oracles, for sum(m) <= --max-m.
    Oracle {
        #[arg(long, required = true)]
        r: usize,
        /// Bound on the index total.
        #[arg(long, required = true)]
        max_m: u32,
        /// Inclusive weight range `a..b` applied to every weight entry.
        #[arg(long, allow_hyphen_values = true)]
        k_range: Option<String>,
        /// Weight choice set applied to every weight entry.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        k_set: Option<Vec<i64>>,
    },
    /// Closed-form generating function against the explicit formula.
    Genfunc {
        #[arg(long, required = true)]
        r: usize,
        /// Total-degree bound for the coefficient comparison.
        #[arg(long, required = true)]
        degree: u32,
    },
    /// Specialized formulas and the single-index family against the general formula.
    Formulas {
        #[arg(long, required = true)]
        r: usize,
        /// Upper bound for every index entry (and the single-index order).
        #[arg(long, required = true)]
        max_m: u32,
        /// Inclusive weight range `a..b` applied to every weight entry.
        #[arg(long, allow_hyphen_values = true)]
        k_range: Option<String>,
        /// Weight choice set applied to every weight entry.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        k_set: Option<Vec<i64>>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Compute(args) => run_compute(args, cli.max_total_degree, cli.format),
        Command::Table(args) => run_table(args, cli.max_total_degree, cli.format),
        Command::Verify(cmd) => run_verify(cmd, cli.max_total_degree, cli.format),
    }
}

fn to_index_tuple(raw: &[i64]) -> Result<IndexTuple, String> {
    if raw.is_empty() {
        return Err("index tuple must have at least one entry".into());
    }
    let entries = raw
        .iter()
        .map(|&v| {
            u32::try_from(v).map_err(|_| format!("index entries must be non-negative, got {v}"))
        })
        .collect::<Result<Vec<u32>, String>>()?;
    Ok(IndexTuple::new(entries))
}

fn parse_method(raw: &str) -> Result<Method, String> {
    raw.parse::<Method>()
}

/// Inclusive range `a..b` as an ascending choice list.
fn parse_range(raw: &str) -> Result<Vec<i64>, String> {
    let (lo, hi) = raw
        .split_once("..")
        .ok_or_else(|| format!("expected an inclusive range `a..b`, got `{raw}`"))?;
    let lo: i64 = lo
        .parse()
        .map_err(|_| format!("invalid range bound `{lo}`"))?;
    let hi: i64 = hi
        .parse()
        .map_err(|_| format!("invalid range bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty range `{raw}`"));
    }
    Ok((lo..=hi).collect())
}

/// Resolve exactly one of `--k-range` / `--k-set` into an ascending,
/// deduplicated choice list.
fn weight_choices(k_range: Option<String>, k_set: Option<Vec<i64>>) -> Result<Vec<i64>, String> {
    match (k_range, k_set) {
        (Some(range), None) => parse_range(&range),
        (None, Some(mut set)) => {
            if set.is_empty() {
                return Err("weight choice set must not be empty".into());
            }
            set.sort_unstable();
            set.dedup();
            Ok(set)
        }
        (None, None) => Err("one of --k-range or --k-set is required".into()),
        (Some(_), Some(_)) => Err("--k-range and --k-set are mutually exclusive".into()),
    }
}

fn run_compute(
    args: ComputeArgs,
    max_total_degree: u32,
    format: OutputFormat,
) -> Result<ExitCode, String> {
    let m = to_index_tuple(&args.m)?;
    if args.k.is_empty() {
        return Err("weight tuple must have at least one entry".into());
    }
    if m.len() != args.k.len() {
        return Err(format!(
            "index tuple has {} entries but weight tuple has {}",
            m.len(),
            args.k.len()
        ));
    }
    if m.total() > max_total_degree {
        return Err(format!(
            "index total {} exceeds --max-total-degree {max_total_degree}",
            m.total()
        ));
    }
    let method = parse_method(&args.method)?;
    let k = WeightTuple::new(args.k);
    let record = compute_record(&m, &k, method).map_err(|e| e.to_string())?;
    match format {
        OutputFormat::Plain => println!("{}", rational_str(&record.value)),
        OutputFormat::Csv => {
            println!("{RECORD_CSV_HEADER}");
            println!("{}", record_csv_row(&record));
        }
        OutputFormat::Json => println!("{}", record_json(&record)),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_table(
    args: TableArgs,
    max_total_degree: u32,
    format: OutputFormat,
) -> Result<ExitCode, String> {
    if args.r == 0 {
        return Err("rank must be at least 1".into());
    }
    let worst_total = args.r as u32 * args.max_m;
    if worst_total > max_total_degree {
        return Err(format!(
            "index totals up to {worst_total} exceed --max-total-degree {max_total_degree}"
        ));
    }
    let method = parse_method(&args.method)?;
    if let Some(required) = method.required_rank() {
        if args.r != required {
            return Err(format!(
                "method `{method}` requires r = {required}, got r = {}",
                args.r
            ));
        }
    }
    let k_tuples: Vec<Vec<i64>> = match (&args.k, &args.k_range, &args.k_set) {
        (Some(fixed), None, None) => {
            if fixed.len() != args.r {
                return Err(format!("--k has {} entries but r = {}", fixed.len(), args.r));
            }
            vec![fixed.clone()]
        }
        (None, range, set) => {
            let choices = weight_choices(range.clone(), set.clone())?;
            cartesian_power(&choices, args.r)
        }
        _ => return Err("--k is mutually exclusive with --k-range/--k-set".into()),
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if format == OutputFormat::Csv {
        writeln!(out, "{RECORD_CSV_HEADER}").map_err(|e| e.to_string())?;
    }
    // graded-lexicographic over m, then lexicographic over k
    for total in 0..=worst_total {
        for m in compositions(total, args.r) {
            if m.parts().iter().any(|&e| e > args.max_m) {
                continue;
            }
            let mt = IndexTuple::new(m.parts().to_vec());
            for k in &k_tuples {
                let kt = WeightTuple::new(k.clone());
                let record = compute_record(&mt, &kt, method).map_err(|e| e.to_string())?;
                let line = match format {
                    OutputFormat::Plain => record_plain(&record),
                    OutputFormat::Csv => record_csv_row(&record),
                    OutputFormat::Json => record_json(&record).to_string(),
                };
                writeln!(out, "{line}").map_err(|e| e.to_string())?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cartesian_power(choices: &[i64], len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for &v in choices {
                let mut t = prefix.clone();
                t.push(v);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

fn run_verify(
    cmd: VerifyCmd,
    max_total_degree: u32,
    format: OutputFormat,
) -> Result<ExitCode, String> {
    let report = match cmd {
        VerifyCmd::Duality { r, max } => {
            if r == 0 {
                return Err("rank must be at least 1".into());
            }
            let worst = r as u32 * max;
            if worst > max_total_degree {
                return Err(format!(
                    "index totals up to {worst} exceed --max-total-degree {max_total_degree}"
                ));
            }
            sweeps::duality_sweep(r, max)
        }
        VerifyCmd::Oracle {
            r,
            max_m,
            k_range,
            k_set,
        } => {
            if r == 0 {
                return Err("rank must be at least 1".into());
            }
            if max_m > max_total_degree {
                return Err(format!(
                    "--max-m {max_m} exceeds --max-total-degree {max_total_degree}"
                ));
            }
            let choices = weight_choices(k_range, k_set)?;
            sweeps::oracle_sweep(r, max_m, &choices)
        }
        VerifyCmd::Genfunc { r, degree } => {
            if r == 0 {
                return Err("rank must be at least 1".into());
            }
            if degree > max_total_degree {
                return Err(format!(
                    "--degree {degree} exceeds --max-total-degree {max_total_degree}"
                ));
            }
            sweeps::genfunc_sweep(r, degree)
        }
        VerifyCmd::Formulas {
            r,
            max_m,
            k_range,
            k_set,
        } => {
            if r == 0 {
                return Err("rank must be at least 1".into());
            }
            let worst = r as u32 * max_m;
            if worst > max_total_degree {
                return Err(format!(
                    "index totals up to {worst} exceed --max-total-degree {max_total_degree}"
                ));
            }
            let choices = weight_choices(k_range, k_set)?;
            sweeps::formulas_sweep(r, max_m, &choices)
        }
    };
    print!("{}", report.render(format));
    Ok(ExitCode::from(report.exit_code()))
}
