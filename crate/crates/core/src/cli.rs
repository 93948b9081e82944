//! Command-line dispatch for the `mlmkit` binary.
//!
//! Results go to stdout one per line. Exit status is 0 on success, 1 for
//! usage, syntax, validation and shape errors, 2 when a resource cap is hit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::approx::{
    approx_coefficient, estimate_matchings, hybrid_coefficient, sum_via_padding, ApproxResult,
    CountBackend,
};
use crate::counting::{count_perfect_matchings, permanent, permanent_ryser};
use crate::error::Error;
use crate::eval::{eval_circuit, eval_pisigmapi, oracle_expand, EvalBudget, ORACLE_LIMIT};
use crate::generators::{
    independent_set_polynomial, k_path_polynomial, matching_polynomial_h, matching_polynomial_xy,
    permanent_polynomial, twosat_polynomial,
};
use crate::maxmlm::{exact_max_mlm, greedy_max_mlm, EXACT_SEARCH_LIMIT};
use crate::poly::PiSigmaPi;
use crate::table::MultilinearTable;
use crate::text::{self, PolyInput};

#[derive(Debug, Parser)]
#[command(name = "mlmkit", version, about = "Multilinear monomial coefficients, permanents and matchings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print every multilinear monomial with its coefficient.
    Table { file: PathBuf },
    /// Print the coefficient of one multilinear monomial.
    Coeff {
        file: PathBuf,
        /// e.g. `x1*x3`; `1` for the constant term
        #[arg(long)]
        monomial: String,
    },
    /// Print the sum of all multilinear coefficients.
    Sum { file: PathBuf },
    /// Permanent of a CSV matrix.
    Perm {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = PermMethod::Fold)]
        method: PermMethod,
    },
    /// Number of perfect matchings of a bipartite graph.
    Matchings {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Coefficient of a monomial in a product of linear clauses, or the
    /// perfect matchings of `--graph`, through a matching counter.
    Estimate {
        file: Option<PathBuf>,
        #[arg(long, required_unless_present = "graph")]
        monomial: Option<String>,
        #[arg(long, conflicts_with_all = ["file", "monomial"])]
        graph: Option<PathBuf>,
        #[command(flatten)]
        backend: BackendArgs,
    },
    /// Sum of multilinear coefficients of a product of linear clauses, by
    /// padding to a full-monomial coefficient.
    SumPad {
        file: PathBuf,
        #[command(flatten)]
        backend: BackendArgs,
    },
    /// Coefficient in F1 * F2 where F1 is the first K clauses and F2, the
    /// rest, is a product of linear clauses. Prints `no` when no monomial of
    /// F1 divides the target.
    Hybrid {
        file: PathBuf,
        #[arg(long)]
        split: usize,
        #[arg(long)]
        monomial: String,
        #[command(flatten)]
        backend: BackendArgs,
    },
    /// Longest multilinear monomial from disjoint terms of distinct clauses.
    Maxmlm {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MaxMode::Greedy)]
        mode: MaxMode,
    },
    /// Print a generated polynomial or circuit.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Multilinear table by full expansion (clause lists only).
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = ORACLE_LIMIT)]
        limit: u64,
    },
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// Circuit whose multilinear monomials of length k are the simple k-paths.
    Kpath {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// exponent on each vertex variable inside the recursion
        #[arg(long, default_value_t = 1)]
        c: u32,
    },
    /// One clause per edge incidence: `prod_i sum_{(i,j)} x_i y_j`.
    MatchingXy {
        #[arg(long)]
        graph: PathBuf,
    },
    /// `prod_i sum_{(i,j)} x_j`.
    MatchingH {
        #[arg(long)]
        graph: PathBuf,
    },
    /// `prod_i sum_j a_ij x_j`.
    Perm {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Clause power whose longest monomial encodes the maximum independent set.
    Indset {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Length-2 gadget polynomial of a restricted 2SAT formula.
    #[command(name = "2sat")]
    TwoSat {
        #[arg(long)]
        cnf: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PermMethod {
    Fold,
    Ryser,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MaxMode {
    Greedy,
    Exact,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendKind {
    Exact,
    Mc,
}

#[derive(Debug, Args)]
struct BackendArgs {
    #[arg(long, value_enum, default_value_t = BackendKind::Exact)]
    backend: BackendKind,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl BackendArgs {
    fn backend(&self) -> Result<CountBackend, Failure> {
        Ok(match self.backend {
            BackendKind::Exact => CountBackend::Exact(EvalBudget::from_env()),
            BackendKind::Mc => CountBackend::monte_carlo(self.samples, self.seed)?,
        })
    }
}

enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                1
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            if stdout.write_all(out.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(Failure::Io(path, e)) => {
            let _ = writeln!(stderr, "error: {}: {e}", path.display());
            1
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_resource() {
                2
            } else {
                1
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Failure::Io(path.to_path_buf(), e))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn read_poly(path: &Path) -> Result<PiSigmaPi, Failure> {
    match text::parse_input(&read(path)?)? {
        PolyInput::Poly(f) => Ok(f),
        PolyInput::Circuit(_) => Err(Error::Shape(format!(
            "{}: this command needs a clause list, not a circuit",
            path.display()
        ))
        .into()),
    }
}

fn evaluate(path: &Path) -> Result<MultilinearTable, Failure> {
    let budget = EvalBudget::from_env();
    Ok(match text::parse_input(&read(path)?)? {
        PolyInput::Poly(f) => eval_pisigmapi(&f, &budget)?,
        PolyInput::Circuit(c) => eval_circuit(&c, &budget)?,
    })
}

fn execute(command: Command) -> Result<String, Failure> {
    let budget = EvalBudget::from_env();
    Ok(match command {
        Command::Table { file } => text::format_table(&evaluate(&file)?),
        Command::Coeff { file, monomial } => {
            let pi = text::parse_monomial(&monomial)?;
            let t = evaluate(&file)?;
            if pi.max_var().is_some_and(|v| v >= t.num_vars()) {
                return Err(Error::Shape(format!(
                    "monomial {monomial} uses variables beyond the {} declared",
                    t.num_vars()
                ))
                .into());
            }
            line(t.coefficient(&pi))
        }
        Command::Sum { file } => line(evaluate(&file)?.sum()),
        Command::Perm { matrix, method } => {
            let a = text::parse_matrix(&read(&matrix)?)?;
            line(match method {
                PermMethod::Fold => permanent(&a, &budget)?,
                PermMethod::Ryser => permanent_ryser(&a)?,
            })
        }
        Command::Matchings { graph } => {
            let g = text::parse_bigraph(&read(&graph)?)?;
            line(count_perfect_matchings(&g, &budget)?)
        }
        Command::Estimate {
            file,
            monomial,
            graph,
            backend,
        } => {
            let backend = backend.backend()?;
            let result = match (graph, file, monomial) {
                (Some(graph), _, _) => {
                    estimate_matchings(&text::parse_bigraph(&read(&graph)?)?, &backend)?
                }
                (None, Some(file), Some(monomial)) => {
                    let pi = text::parse_monomial(&monomial)?;
                    approx_coefficient(&read_poly(&file)?, &pi, &backend)?
                }
                _ => {
                    return Err(Error::Validation(
                        "estimate needs a polynomial file and --monomial, or --graph".into(),
                    )
                    .into())
                }
            };
            format_estimate(&result)
        }
        Command::SumPad { file, backend } => {
            format_estimate(&sum_via_padding(&read_poly(&file)?, &backend.backend()?)?)
        }
        Command::Hybrid {
            file,
            split,
            monomial,
            backend,
        } => {
            let f = read_poly(&file)?;
            if split > f.clauses().len() {
                return Err(Error::Validation(format!(
                    "--split {split} exceeds the {} clauses",
                    f.clauses().len()
                ))
                .into());
            }
            let (a, b) = f.clauses().split_at(split);
            let f1 = PiSigmaPi::new(f.num_vars(), a.to_vec())?;
            let f2 = PiSigmaPi::new(f.num_vars(), b.to_vec())?;
            let pi = text::parse_monomial(&monomial)?;
            match hybrid_coefficient(&f1, &f2, &pi, &backend.backend()?)? {
                Some(r) => format_estimate(&r),
                None => "no\n".to_string(),
            }
        }
        Command::Maxmlm { file, mode } => {
            let f = read_poly(&file)?;
            let sel = match mode {
                MaxMode::Greedy => greedy_max_mlm(&f),
                MaxMode::Exact => exact_max_mlm(&f, EXACT_SEARCH_LIMIT)?,
            };
            format!("{} {}\n", sel.varset, sel.length())
        }
        Command::Gen { kind } => match kind {
            GenKind::Kpath { graph, k, c } => {
                let g = text::parse_graph(&read(&graph)?)?;
                text::format_circuit(&k_path_polynomial(&g, k, c)?)
            }
            GenKind::MatchingXy { graph } => {
                text::format_poly(&matching_polynomial_xy(&text::parse_bigraph(&read(&graph)?)?))
            }
            GenKind::MatchingH { graph } => {
                text::format_poly(&matching_polynomial_h(&text::parse_bigraph(&read(&graph)?)?))
            }
            GenKind::Perm { matrix } => {
                text::format_poly(&permanent_polynomial(&text::parse_matrix(&read(&matrix)?)?))
            }
            GenKind::Indset { graph } => {
                text::format_poly(&independent_set_polynomial(&text::parse_graph(&read(&graph)?)?))
            }
            GenKind::TwoSat { cnf } => {
                text::format_poly(&twosat_polynomial(&text::parse_cnf(&read(&cnf)?)?)?)
            }
        },
        Command::Oracle { file, limit } => text::format_table(&oracle_expand(&read_poly(&file)?, limit)?),
    })
}

fn line(value: impl std::fmt::Display) -> String {
    format!("{value}\n")
}

/// Digits after the decimal point for non-integer estimates.
const DECIMALS: u32 = 6;

/// Exact integers print as integers; other values print rounded half away
/// from zero to [`DECIMALS`] places, followed by a `std_error` line when a
/// standard error is known.
fn format_estimate(r: &ApproxResult) -> String {
    let mut out = match r.to_integer() {
        Some(v) => line(v),
        None => line(decimal(&r.value, DECIMALS)),
    };
    if let Some(se) = r.std_error {
        out.push_str(&format!("std_error {se:.prec$}\n", prec = DECIMALS as usize));
    }
    out
}

fn decimal(v: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = v.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let (int, frac) = rounded.div_rem(&scale);
    let sign = if v.is_negative() && !rounded.is_zero() { "-" } else { "" };
    format!("{sign}{int}.{frac:0>width$}", width = places as usize)
}
