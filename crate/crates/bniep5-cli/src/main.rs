//! `bniep5` command line: feasibility checks, matrix construction and
//! verification, region sampling, and the built-in worked example.

mod report;

use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use bniep5::intersect::{solve, IntersectionProblem};
use bniep5::{
    construct, decide, CaseTag, ConstructionResult, FeasibilityReport, Spectrum, Verdict,
    BISYM_TOL, CLAMP_TOL, REL_EIG_TOL,
};
use bniep5_cli::sampler::{
    evaluate_sample, SampleRecord, SpectrumSampler, TraceMode, EXAMPLE_SPECTRUM,
};

// sysexits-style contract: the verdict maps onto the low codes, argument
// problems onto 64/65, internal verification failures onto 70.
const EXIT_INFEASIBLE: u8 = 1;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "bniep5",
    version,
    about = "Decide and construct 5x5 nonnegative bisymmetric matrices with a prescribed spectrum"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether five reals are realizable; exit 0/1/2 for
    /// feasible/infeasible/unknown.
    Check {
        #[arg(num_args = 5, required = true, allow_negative_numbers = true,
              value_parser = finite_f64, value_name = "LAMBDA")]
        values: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Construct and verify a realizing matrix for a feasible spectrum.
    Construct {
        #[arg(num_args = 5, required = true, allow_negative_numbers = true,
              value_parser = finite_f64, value_name = "LAMBDA")]
        values: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Check a matrix (stdin or --matrix FILE) against a target spectrum.
    Verify {
        #[arg(num_args = 5, required = true, allow_negative_numbers = true,
              value_parser = finite_f64, value_name = "LAMBDA")]
        values: Vec<f64>,
        /// Matrix source file; stdin when omitted.
        #[arg(long, value_name = "FILE")]
        matrix: Option<PathBuf>,
        /// Absolute eigenvalue-error threshold, overriding the default
        /// relative rule 1e-7 * (1 + lambda1).
        #[arg(long, value_parser = positive_f64)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Stream seeded random spectra as CSV with a per-run summary on stderr.
    Sample {
        #[arg(long, default_value_t = 1000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = TraceArg::Zero)]
        trace: TraceArg,
        /// Inject the built-in example spectrum as sample 0.
        #[arg(long)]
        include_example: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Reproduce the built-in worked example end to end.
    Example {
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TraceArg {
    Zero,
    Positive,
}

fn finite_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err("value must be finite".into())
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v = finite_f64(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err("tolerance must be positive".into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Check { values, format } => cmd_check(&values, format),
        Command::Construct { values, format } => cmd_construct(&values, format),
        Command::Verify {
            values,
            matrix,
            tol,
            format,
        } => cmd_verify(&values, matrix.as_deref(), tol, format),
        Command::Sample {
            n,
            seed,
            trace,
            include_example,
            format,
        } => cmd_sample(n, seed, trace, include_example, format),
        Command::Example { format } => cmd_example(format),
    };
    ExitCode::from(code)
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Feasible => 0,
        Verdict::Infeasible => EXIT_INFEASIBLE,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn spectrum_from(values: &[f64]) -> Spectrum {
    Spectrum::from_slice(values).expect("clap enforces five finite values")
}

fn check_record(
    s: &Spectrum,
    r: &FeasibilityReport,
    built: Option<&ConstructionResult>,
) -> SampleRecord {
    SampleRecord {
        seed_index: 0,
        spectrum: s.values(),
        verdict: r.verdict,
        case: r.case,
        cube_sum: r.cube_sum,
        max_eig_error: built.map(|b| b.max_eig_error),
        min_entry: built.map(|b| b.min_entry),
    }
}

fn cmd_check(values: &[f64], format: Format) -> u8 {
    let s = spectrum_from(values);
    let r = decide(&s);
    match format {
        Format::Plain => print!("{}", report::check_plain(&s, &r)),
        Format::Json => println!("{}", report::check_json(&s, &r)),
        Format::Csv => {
            println!("{}", SampleRecord::csv_header());
            println!("{}", check_record(&s, &r, None).csv_line());
        }
    }
    verdict_code(r.verdict)
}

fn cmd_construct(values: &[f64], format: Format) -> u8 {
    let s = spectrum_from(values);
    let r = decide(&s);
    if r.verdict != Verdict::Feasible {
        match format {
            Format::Plain => print!("{}", report::check_plain(&s, &r)),
            Format::Json => println!("{}", report::check_json(&s, &r)),
            Format::Csv => {
                println!("{}", SampleRecord::csv_header());
                println!("{}", check_record(&s, &r, None).csv_line());
            }
        }
        return verdict_code(r.verdict);
    }
    let built = match construct(&s) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("internal verification failure: {e}");
            return EXIT_INTERNAL;
        }
    };
    match format {
        Format::Plain => print!("{}", report::construction_plain(&s, &built)),
        Format::Json => println!("{}", report::construction_json(&s, &r, &built)),
        Format::Csv => {
            println!("{}", SampleRecord::csv_header());
            println!("{}", check_record(&s, &r, Some(&built)).csv_line());
        }
    }
    0
}

fn cmd_verify(
    values: &[f64],
    matrix: Option<&std::path::Path>,
    tol: Option<f64>,
    format: Format,
) -> u8 {
    let s = spectrum_from(values);
    let text = match matrix {
        Some(path) => match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return EXIT_PARSE;
            }
        },
        None => match io::read_to_string(io::stdin()) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read stdin: {e}");
                return EXIT_PARSE;
            }
        },
    };
    let m = match report::parse_matrix(&text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    let symmetric = m.is_symmetric(BISYM_TOL);
    let persymmetric = m.is_persymmetric(BISYM_TOL);
    let centrosymmetric = m.is_centrosymmetric(BISYM_TOL);
    let bisymmetric = m.is_bisymmetric(BISYM_TOL);
    let nonnegative = m.is_nonnegative(CLAMP_TOL);
    let min_entry = m.min_entry();
    // Eigensolve the symmetric part; asymmetric inputs already fail the
    // structural booleans above.
    let sym_part = (m + m.transpose()).scale(0.5);
    let achieved = match sym_part.sym_eigenvalues() {
        Ok(vals) => vals,
        Err(e) => {
            eprintln!("internal eigensolver failure: {e}");
            return EXIT_INTERNAL;
        }
    };
    let target = s.values();
    let max_eig_error = achieved
        .iter()
        .zip(target.iter())
        .map(|(a, t)| (a - t).abs())
        .fold(0.0f64, f64::max);
    let threshold = tol.unwrap_or(REL_EIG_TOL * (1.0 + target[0]));
    let ok = bisymmetric && nonnegative && max_eig_error <= threshold;
    match format {
        Format::Plain => {
            println!("symmetric: {symmetric}");
            println!("persymmetric: {persymmetric}");
            println!("centrosymmetric: {centrosymmetric}");
            println!("bisymmetric: {bisymmetric}");
            println!("nonnegative: {nonnegative}");
            println!("min_entry: {min_entry}");
            println!("target: {}", report::join_floats(&target));
            println!("achieved: {}", report::join_floats(&achieved));
            println!("max_eig_error: {max_eig_error}");
            println!("threshold: {threshold}");
            println!("ok: {ok}");
        }
        Format::Json => println!(
            "{}",
            json!({
                "symmetric": symmetric,
                "persymmetric": persymmetric,
                "centrosymmetric": centrosymmetric,
                "bisymmetric": bisymmetric,
                "nonnegative": nonnegative,
                "min_entry": min_entry,
                "spectrum_target": target.to_vec(),
                "spectrum_achieved": achieved.to_vec(),
                "max_eig_error": max_eig_error,
                "threshold": threshold,
                "ok": ok,
            })
        ),
        Format::Csv => return usage_error("verify does not support CSV output"),
    }
    if ok {
        0
    } else {
        EXIT_CHECK_FAILED
    }
}

fn case_index(case: CaseTag) -> usize {
    match case {
        CaseTag::AllZero => 0,
        CaseTag::L1 => 1,
        CaseTag::L2 => 2,
        CaseTag::L3 => 3,
        CaseTag::L4 => 4,
        CaseTag::Bordered => 5,
        CaseTag::BorderedPos => 6,
        CaseTag::None => 7,
    }
}

const CASE_NAMES: [&str; 8] = [
    "all_zero",
    "l1",
    "l2",
    "l3",
    "l4",
    "bordered",
    "bordered_pos",
    "none",
];

fn cmd_sample(n: u64, seed: u64, trace: TraceArg, include_example: bool, format: Format) -> u8 {
    if format != Format::Csv {
        return usage_error("sample streams CSV; use --format csv");
    }
    if n < 1 {
        return usage_error("--n must be at least 1");
    }
    let mode = match trace {
        TraceArg::Zero => TraceMode::Zero,
        TraceArg::Positive => TraceMode::Positive,
    };
    let mut sampler = SpectrumSampler::new(seed, mode);
    let mut verdicts = [0u64; 3];
    let mut cases = [0u64; 8];
    let mut worst_eig = 0.0f64;
    let mut worst_min = f64::INFINITY;
    println!("{}", SampleRecord::csv_header());
    for index in 0..n {
        let s = if include_example && index == 0 {
            Spectrum::new(EXAMPLE_SPECTRUM).expect("example spectrum is finite")
        } else {
            sampler.next_spectrum()
        };
        let rec = match evaluate_sample(index, &s) {
            Ok(rec) => rec,
            Err(e) => {
                eprintln!(
                    "internal verification failure at sample {index} ({:?}): {e}",
                    s.values()
                );
                return EXIT_INTERNAL;
            }
        };
        verdicts[match rec.verdict {
            Verdict::Feasible => 0,
            Verdict::Infeasible => 1,
            Verdict::Unknown => 2,
        }] += 1;
        cases[case_index(rec.case)] += 1;
        if let Some(err) = rec.max_eig_error {
            worst_eig = worst_eig.max(err);
        }
        if let Some(me) = rec.min_entry {
            worst_min = worst_min.min(me);
        }
        println!("{}", rec.csv_line());
    }
    eprintln!("samples: {n}");
    eprintln!(
        "verdicts: feasible={} infeasible={} unknown={}",
        verdicts[0], verdicts[1], verdicts[2]
    );
    let case_summary: Vec<String> = CASE_NAMES
        .iter()
        .zip(cases.iter())
        .map(|(name, count)| format!("{name}={count}"))
        .collect();
    eprintln!("cases: {}", case_summary.join(" "));
    eprintln!("max_eig_error: {worst_eig}");
    if worst_min.is_finite() {
        eprintln!("min_entry: {worst_min}");
    }
    0
}

fn cmd_example(format: Format) -> u8 {
    let s = Spectrum::new(EXAMPLE_SPECTRUM).expect("example spectrum is finite");
    let [_, l2, l3, l4, l5] = s.values();
    // Coefficients of the worked intersection system.
    let problem = IntersectionProblem {
        r_sq: l2 * l4 - l3 * l5 - l3 - l5,
        beta: -(l2 + l4),
        gamma: (-l2 * l4).sqrt(),
        t: -l3 * l5,
    };
    let sol = match solve(&problem) {
        Ok(sol) => sol,
        Err(e) => {
            eprintln!("internal solver failure: {e}");
            return EXIT_INTERNAL;
        }
    };
    let s273 = 273.0f64.sqrt();
    let a0_closed = ((51.0 - 3.0 * s273) / 200.0).sqrt();
    let b0_closed = ((59.0 + 3.0 * s273) / 200.0).sqrt();
    let a_diff = (sol.a - a0_closed).abs();
    let b_diff = (sol.b - b0_closed).abs();
    let circle_sum = sol.a * sol.a + sol.b * sol.b;
    let built = match construct(&s) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("internal verification failure: {e}");
            return EXIT_INTERNAL;
        }
    };
    let ok = a_diff <= 1e-9 && b_diff <= 1e-9 && built.max_eig_error <= 1e-8;
    match format {
        Format::Plain => {
            println!("a0_closed_form: {a0_closed}");
            println!("a0_solver: {}", sol.a);
            println!("a0_abs_diff: {a_diff}");
            println!("b0_closed_form: {b0_closed}");
            println!("b0_solver: {}", sol.b);
            println!("b0_abs_diff: {b_diff}");
            println!("circle_sum: {circle_sum}");
            println!("case: {}", built.case);
            println!("target: {}", report::join_floats(&s.values()));
            println!(
                "achieved: {}",
                report::join_floats(&built.achieved_spectrum)
            );
            println!("max_eig_error: {}", built.max_eig_error);
            println!("matrix:");
            for row in report::matrix_rows(&built.matrix) {
                println!("  {row}");
            }
            println!("ok: {ok}");
        }
        Format::Json => println!(
            "{}",
            json!({
                "a0_closed_form": a0_closed,
                "a0_solver": sol.a,
                "b0_closed_form": b0_closed,
                "b0_solver": sol.b,
                "circle_sum": circle_sum,
                "case": built.case.to_string(),
                "matrix": built.matrix.rows().to_vec(),
                "spectrum_target": s.values().to_vec(),
                "spectrum_achieved": built.achieved_spectrum.to_vec(),
                "max_eig_error": built.max_eig_error,
                "ok": ok,
            })
        ),
        Format::Csv => return usage_error("example does not support CSV output"),
    }
    if ok {
        0
    } else {
        EXIT_INTERNAL
    }
}
