//! Command-line front end.
//!
//! Exit codes: 0 solved or feasible, 1 usage or input error, 2 proven
//! infeasible, 3 undetermined (capped search). With `--json` every run prints
//! one JSON document; integers are encoded as decimal strings.

pub mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::dioph::{solve_sparse_lattice_certified, SolutionReport};
use crate::error::Error;
use crate::index_set::IndexSet;
use crate::linalg::{IntMatrix, IntVector};
use crate::number_theory::factorize;
use crate::oracle::{icr_scan, min_support_exact, DEFAULT_COORD_CAP};
use crate::semigroup::{
    solve_knapsack_mixed, solve_knapsack_positive, solve_semigroup_posspan,
    sparsity_bounds_with_ray, BoundsReport, DEFAULT_B_CAP,
};
use crate::sparsify::{first_nonsingular_basis, sparsify, worst_case_instance, SparsifyCertificate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_UNDETERMINED: i32 = 3;

pub const B_CAP_ENV: &str = "DIOPH_SPARSE_B_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "dioph-sparse",
    version,
    about = "Sparse solutions of linear Diophantine systems and integer programs"
)]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct MatrixArg {
    /// Inline matrix: rows separated by `;`, entries by spaces.
    #[arg(id = "a_inline", long = "a", value_name = "ROWS", conflicts_with = "matrix", allow_hyphen_values = true)]
    inline: Option<String>,
    /// Matrix file: `rows cols` header, then one line per row.
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct RhsArg {
    /// Inline right-hand side vector.
    #[arg(id = "b_inline", long = "b", value_name = "VALUES", conflicts_with = "b_file", allow_hyphen_values = true)]
    inline: Option<String>,
    /// Right-hand side file (one line of integers).
    #[arg(long, value_name = "FILE")]
    b_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct TauArg {
    /// 1-based basis columns; defaults to the first nonsingular choice.
    #[arg(long, value_name = "INDICES")]
    tau: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Columns γ ⊇ τ generating the same lattice as A.
    Sparsify {
        #[command(flatten)]
        a: MatrixArg,
        #[command(flatten)]
        tau: TauArg,
    },
    /// Sparse integer solution of A x = b.
    SolveDioph {
        #[command(flatten)]
        a: MatrixArg,
        #[command(flatten)]
        b: RhsArg,
        #[command(flatten)]
        tau: TauArg,
    },
    /// Sparse nonnegative solution of A x = b for positively spanning A.
    SolveSemigroup {
        #[command(flatten)]
        a: MatrixArg,
        #[command(flatten)]
        b: RhsArg,
        #[command(flatten)]
        tau: TauArg,
    },
    /// Sparse nonnegative solution of a·x = b.
    Knapsack {
        /// Coefficient vector.
        #[arg(long = "a", value_name = "VALUES", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "b", value_name = "INT", allow_hyphen_values = true)]
        b: String,
        /// All coefficients positive.
        #[arg(long, conflicts_with = "mixed")]
        positive: bool,
        /// Coefficients of both signs.
        #[arg(long)]
        mixed: bool,
        /// Largest b / gcd(a) the feasibility table may reach.
        #[arg(long, env = B_CAP_ENV, default_value_t = DEFAULT_B_CAP)]
        b_cap: u64,
    },
    /// Every closed-form sparsity bound for A.
    Bounds {
        #[command(flatten)]
        a: MatrixArg,
        #[command(flatten)]
        tau: TauArg,
        /// 1-based column to treat as the extreme ray.
        #[arg(long)]
        ray: Option<usize>,
    },
    /// Instance attaining the sparsification bound.
    WorstCase {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        delta: String,
    },
    /// Minimum support of a nonnegative solution by brute force.
    Oracle {
        #[command(flatten)]
        a: MatrixArg,
        #[command(flatten)]
        b: RhsArg,
        /// Largest support size to try (default: number of columns).
        #[arg(long)]
        k_max: Option<usize>,
        /// Range of free coordinates when more than one row.
        #[arg(long, default_value_t = DEFAULT_COORD_CAP)]
        coord_cap: u64,
    },
    /// Lower bound on the integer Carathéodory rank of a positive vector.
    IcrScan {
        #[arg(long = "a", value_name = "VALUES")]
        a: String,
        #[arg(long)]
        b_max: u64,
    },
    /// Prime factorization.
    Factor {
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Solver(Error),
}

impl From<input::ParseError> for Failure {
    fn from(e: input::ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

/// A finished run: exit code plus text and JSON renderings.
struct Outcome {
    code: i32,
    text: String,
    doc: Value,
}

fn s(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

fn sv(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(s).collect())
}

fn matrix_json(a: &IntMatrix) -> Value {
    Value::Array((0..a.rows()).map(|i| sv(a.row(i))).collect())
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn load_matrix(arg: &MatrixArg) -> Result<IntMatrix, Failure> {
    match (&arg.inline, &arg.matrix) {
        (Some(t), _) => Ok(input::parse_inline_matrix("--a", t)?),
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Ok(input::parse_matrix(&p.display().to_string(), &text)?)
        }
        (None, None) => Err(Failure::Usage("a matrix is required (--a or --matrix)".into())),
    }
}

fn load_rhs(arg: &RhsArg) -> Result<IntVector, Failure> {
    match (&arg.inline, &arg.b_file) {
        (Some(t), _) => Ok(input::parse_inline_vector("--b", t)?),
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Ok(input::parse_vector(&p.display().to_string(), &text)?)
        }
        (None, None) => Err(Failure::Usage("a right-hand side is required (--b or --b-file)".into())),
    }
}

fn load_tau(arg: &TauArg, a: &IntMatrix) -> Result<IndexSet, Failure> {
    match &arg.tau {
        None => Ok(first_nonsingular_basis(a)?),
        Some(t) => {
            let v = input::parse_inline_vector("--tau", t)?;
            let idx: Option<Vec<usize>> = v.iter().map(|x| usize::try_from(x).ok()).collect();
            let idx = idx.ok_or_else(|| Failure::Usage("--tau entries must be positive".into()))?;
            Ok(IndexSet::from_unsorted(idx)?)
        }
    }
}

fn parse_int(source: &str, t: &str) -> Result<BigInt, Failure> {
    let v = input::parse_inline_vector(source, t)?;
    match v.as_slice() {
        [x] => Ok(x.clone()),
        _ => Err(Failure::Usage(format!("{source} expects a single integer"))),
    }
}

fn index_json(t: &IndexSet) -> Value {
    json!(t.indices())
}

fn certificate_json(c: &SparsifyCertificate) -> Value {
    json!({
        "tau": index_json(&c.tau),
        "gamma": index_json(&c.gamma),
        "gamma_size": c.gamma.len(),
        "delta": s(&c.delta),
        "gcd": s(&c.gcd),
        "bound": c.bound,
        "lattice_fingerprint_match": c.lattice_fingerprint_match,
        "diophantine_solves": c.diophantine_solves,
    })
}

/// Re-checks `A x = b` (and `x >= 0` when asked) before anything is printed.
fn verified_solution(
    a: &IntMatrix,
    b: &[BigInt],
    r: &SolutionReport,
    nonnegative: bool,
) -> Result<(String, Value), Failure> {
    let ok = a.mul_vec(&r.x)? == b && (!nonnegative || r.x.iter().all(|v| !v.is_negative()));
    if !ok || !r.within_bound() {
        return Err(Failure::Solver(Error::Internal(
            "solution failed verification".into(),
        )));
    }
    let text = format!(
        "x = {}\nsupport = {}\nbound = {} ({})\nverified = true\n",
        join(&r.x),
        r.support_size,
        r.bound,
        r.bound_name
    );
    let doc = json!({
        "x": sv(&r.x),
        "support_size": r.support_size,
        "bound": r.bound,
        "bound_name": r.bound_name,
        "verified": true,
    });
    Ok((text, doc))
}

fn infeasible(reason: &str) -> Outcome {
    Outcome {
        code: EXIT_INFEASIBLE,
        text: format!("infeasible: {reason}\n"),
        doc: json!({ "status": "infeasible", "reason": reason }),
    }
}

fn with_instance(mut doc: Value, command: &str, instance: Value) -> Value {
    if let Value::Object(map) = &mut doc {
        map.insert("command".into(), json!(command));
        map.insert("instance".into(), instance);
        map.entry("status").or_insert(json!("ok"));
    }
    doc
}

fn bounds_json(r: &BoundsReport) -> Value {
    let pointed = r.pointed_cone.as_ref().map(|p| {
        json!({
            "extreme_ray": p.extreme_ray,
            "q_squared": s(&p.q_squared),
            "bound": p.bound,
            "note": "bound only, non-constructive",
        })
    });
    json!({
        "gcd": s(&r.gcd),
        "tau": index_json(&r.tau),
        "delta": s(&r.delta),
        "gram_determinant": s(&r.gram_determinant),
        "gram_bound": r.gram_bound,
        "lattice_bound": r.lattice_bound,
        "spanning_bound": r.spanning_bound,
        "pointed_cone": pointed,
        "knapsack_bound": r.knapsack_bound,
    })
}

fn bounds_text(r: &BoundsReport) -> String {
    let mut t = format!(
        "gcd = {}\ntau = {}\ndelta = {}\ngram_bound = {}\nlattice_bound = {}\nspanning_bound = {}\n",
        r.gcd, r.tau, r.delta, r.gram_bound, r.lattice_bound, r.spanning_bound
    );
    match &r.pointed_cone {
        Some(p) => t.push_str(&format!(
            "pointed_cone_bound = {} (extreme ray {}, bound only, non-constructive)\n",
            p.bound, p.extreme_ray
        )),
        None => t.push_str("pointed_cone_bound = n/a\n"),
    }
    match r.knapsack_bound {
        Some(k) => t.push_str(&format!("knapsack_bound = {k}\n")),
        None => t.push_str("knapsack_bound = n/a\n"),
    }
    t
}

fn execute(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Sparsify { a, tau } => {
            let a = load_matrix(a)?;
            let tau = load_tau(tau, &a)?;
            let c = sparsify(&a, &tau)?;
            let text = format!(
                "tau = {}\ngamma = {}\n|gamma| = {}\nbound = {}\ndelta = {}\ngcd = {}\nlattice_fingerprint_match = {}\n",
                c.tau, c.gamma, c.gamma.len(), c.bound, c.delta, c.gcd, c.lattice_fingerprint_match
            );
            let code = if c.is_valid() { EXIT_OK } else { EXIT_ERROR };
            let doc = json!({ "certificate": certificate_json(&c) });
            Ok(Outcome {
                code,
                text,
                doc: with_instance(doc, "sparsify", json!({ "a": matrix_json(&a) })),
            })
        }
        Command::SolveDioph { a, b, tau } => {
            let a = load_matrix(a)?;
            let b = load_rhs(b)?;
            let tau = load_tau(tau, &a)?;
            let instance = json!({ "a": matrix_json(&a), "b": sv(&b), "tau": index_json(&tau) });
            let (cert, report) = solve_sparse_lattice_certified(&a, &b, &tau)?;
            let out = match report {
                None => infeasible("b is not in the lattice generated by the columns"),
                Some(r) => {
                    let (text, mut doc) = verified_solution(&a, &b, &r, false)?;
                    doc["certificate"] = certificate_json(&cert);
                    Outcome {
                        code: EXIT_OK,
                        text: format!("gamma = {}\n{text}", cert.gamma),
                        doc,
                    }
                }
            };
            Ok(Outcome {
                doc: with_instance(out.doc, "solve-dioph", instance),
                ..out
            })
        }
        Command::SolveSemigroup { a, b, tau } => {
            let a = load_matrix(a)?;
            let b = load_rhs(b)?;
            let tau = load_tau(tau, &a)?;
            let instance = json!({ "a": matrix_json(&a), "b": sv(&b), "tau": index_json(&tau) });
            let out = match solve_semigroup_posspan(&a, &b, &tau)? {
                None => infeasible("b is not in the lattice generated by the columns"),
                Some(r) => {
                    let (text, doc) = verified_solution(&a, &b, &r, true)?;
                    Outcome { code: EXIT_OK, text, doc }
                }
            };
            Ok(Outcome {
                doc: with_instance(out.doc, "solve-semigroup", instance),
                ..out
            })
        }
        Command::Knapsack {
            a,
            b,
            positive,
            mixed,
            b_cap,
        } => {
            let a = input::parse_inline_vector("--a", a)?;
            let b = parse_int("--b", b)?;
            let use_positive = if *positive {
                true
            } else if *mixed {
                false
            } else {
                a.iter().all(|v| v.is_positive())
            };
            let report = if use_positive {
                solve_knapsack_positive(&a, &b, *b_cap)?
            } else {
                solve_knapsack_mixed(&a, &b)?
            };
            let mode = if use_positive { "positive" } else { "mixed" };
            let row = IntMatrix::row_vector(&a);
            let instance = json!({ "a": sv(&a), "b": s(&b), "mode": mode, "b_cap": b_cap });
            let out = match report {
                None => infeasible("b is not in the semigroup generated by a"),
                Some(r) => {
                    let (text, doc) = verified_solution(&row, std::slice::from_ref(&b), &r, true)?;
                    Outcome { code: EXIT_OK, text, doc }
                }
            };
            Ok(Outcome {
                doc: with_instance(out.doc, "knapsack", instance),
                ..out
            })
        }
        Command::Bounds { a, tau, ray } => {
            let a = load_matrix(a)?;
            let tau = match &tau.tau {
                Some(_) => Some(load_tau(tau, &a)?),
                None => None,
            };
            let r = sparsity_bounds_with_ray(&a, tau.as_ref(), *ray)?;
            let doc = json!({ "bounds": bounds_json(&r) });
            Ok(Outcome {
                code: EXIT_OK,
                text: bounds_text(&r),
                doc: with_instance(doc, "bounds", json!({ "a": matrix_json(&a) })),
            })
        }
        Command::WorstCase { m, delta } => {
            let delta = parse_int("--delta", delta)?;
            let a = worst_case_instance(*m, &delta)?;
            let doc = json!({ "matrix": matrix_json(&a), "rows": a.rows(), "cols": a.cols() });
            Ok(Outcome {
                code: EXIT_OK,
                text: a.to_text(),
                doc: with_instance(doc, "worst-case", json!({ "m": m, "delta": s(&delta) })),
            })
        }
        Command::Oracle {
            a,
            b,
            k_max,
            coord_cap,
        } => {
            let a = load_matrix(a)?;
            let b = load_rhs(b)?;
            let k_max = k_max.unwrap_or(a.cols());
            let r = min_support_exact(&a, &b, k_max, *coord_cap)?;
            let instance = json!({
                "a": matrix_json(&a),
                "b": sv(&b),
                "k_max": k_max,
                "coord_cap": coord_cap,
            });
            let (code, status, text) = match (r.min_support, r.complete) {
                (Some(k), true) => (EXIT_OK, "exact", format!("min_support = {k} (exact)\n")),
                (Some(k), false) => (
                    EXIT_OK,
                    "upper_bound",
                    format!("min_support <= {k} (search capped below this size)\n"),
                ),
                (None, true) => (EXIT_INFEASIBLE, "infeasible", "infeasible\n".to_string()),
                (None, false) => (
                    EXIT_UNDETERMINED,
                    "undetermined",
                    "no solution within the search caps\n".to_string(),
                ),
            };
            let doc = json!({
                "status": status,
                "min_support": r.min_support,
                "complete": r.complete,
            });
            Ok(Outcome {
                code,
                text,
                doc: with_instance(doc, "oracle", instance),
            })
        }
        Command::IcrScan { a, b_max } => {
            let a = input::parse_inline_vector("--a", a)?;
            let r = icr_scan(&a, *b_max)?;
            let doc = json!({
                "lower_bound": r.lower_bound,
                "attained_at": r.attained_at,
                "label": "lower bound",
            });
            Ok(Outcome {
                code: EXIT_OK,
                text: format!(
                    "icr >= {} (lower bound, attained at b = {})\n",
                    r.lower_bound, r.attained_at
                ),
                doc: with_instance(doc, "icr-scan", json!({ "a": sv(&a), "b_max": b_max })),
            })
        }
        Command::Factor { z } => {
            let z = parse_int("z", z)?;
            let f = factorize(&z)?;
            let factors: Vec<Value> = f
                .factors()
                .iter()
                .map(|(p, e)| json!({ "prime": s(p), "multiplicity": e }))
                .collect();
            let doc = json!({ "factors": factors, "display": f.to_string() });
            Ok(Outcome {
                code: EXIT_OK,
                text: format!("{f}\n"),
                doc: with_instance(doc, "factor", json!({ "z": s(&z) })),
            })
        }
    }
}

fn failure_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::FactorizationTimeout(_) => EXIT_UNDETERMINED,
        _ => EXIT_ERROR,
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let (code, text, doc) = match execute(&cli.command) {
        Ok(o) => (o.code, o.text, o.doc),
        Err(f) => {
            let (code, msg) = match &f {
                Failure::Usage(m) => (EXIT_ERROR, m.clone()),
                Failure::Solver(e) => (failure_code(e), e.to_string()),
            };
            let _ = writeln!(err, "error: {msg}");
            let doc = json!({ "status": "error", "error": msg });
            (code, String::new(), doc)
        }
    };
    if cli.json {
        let rendered = serde_json::to_string_pretty(&doc).expect("JSON serialization");
        let _ = writeln!(out, "{rendered}");
    } else {
        let _ = out.write_all(text.as_bytes());
    }
    code
}
