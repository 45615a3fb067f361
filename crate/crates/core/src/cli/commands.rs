use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use super::parse::{parse_expr, parse_expr_numeric, parse_scalar};
use super::suites::{run_suite, SUITES};
use crate::cyclicity::{classify, invariant_line_matrix, mat_pow, orbit_rank, ClassifyOptions};
use crate::duality::{duhamel, pair_exp};
use crate::error::{Error, Result};
use crate::funcspace::{ConvexRegion, TruncatedTaylor};
use crate::leontiev::omega;
use crate::operators::{
    mult_M, orbit_exact, orbit_taylor, pommiez, pommiez_at, pommiez_exact_on_line, shift_T, shift_Ttilde,
    OperatorContext,
};
use crate::scalar::{float_to_hex, BigComplex, GaussRational, Scalar};

#[derive(Parser, Debug)]
#[command(name = "pommiez", version, about = "Pommiez operators on exponential-polynomials")]
struct Cli {
    /// Working precision in bits for numeric fallbacks.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Zero tolerance as an exponent k, meaning 2^-k (default precision/2).
    #[arg(long, global = true)]
    tol: Option<u32>,
    /// Radius of the zero search, a rational literal.
    #[arg(long, global = true, default_value = "20")]
    search_radius: String,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Op {
    Pommiez,
    #[value(name = "T")]
    T,
    #[value(name = "Ttilde")]
    Ttilde,
    #[value(name = "D")]
    D,
    #[value(name = "M")]
    M,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Taylor,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Apply one operator to f; jets are Maclaurin jets in t.
    Apply {
        #[arg(long, default_value = "1")]
        g0: String,
        #[arg(long)]
        f: String,
        #[arg(long, value_enum)]
        op: Op,
        /// Shift point, required by T, Ttilde and D.
        #[arg(long)]
        z: Option<String>,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// The orbit f, Df, ..., D^len f.
    Orbit {
        #[arg(long, default_value = "1")]
        g0: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        len: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Jet order in taylor mode (default len + 8).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Cyclicity verdict for f.
    Classify {
        #[arg(long, default_value = "1")]
        g0: String,
        #[arg(long)]
        f: String,
        /// Use the exhaustion Q_n = [-n, n]^2 with this many squares.
        #[arg(long)]
        squares: Option<usize>,
    },
    /// Duhamel product v * w in closed form.
    Duhamel {
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Leontiev interpolating function omega_f(z, x).
    Omega {
        #[arg(long)]
        f: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        z: String,
    },
    /// Pairing <x, h> of a polynomial germ with an exponential-polynomial.
    Pair {
        #[arg(long)]
        x: String,
        #[arg(long)]
        h: String,
    },
    /// Randomized identity suites with a fixed seed.
    Identities {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Matrix of the operator on the invariant line P_n(e_λ).
    Invariance {
        #[arg(long)]
        g0: String,
        #[arg(long)]
        n: usize,
        /// Also report the orbit rank of f.
        #[arg(long)]
        f: Option<String>,
    },
}

/// Run the command line `args` (program name first). Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let (doc, code) = match execute(&cli) {
        Ok(v) => (v, 0),
        Err(e) => {
            let code = match e {
                Error::Syntax { .. } | Error::NonlinearExponent(_) => 2,
                _ => 1,
            };
            (json!({"error": {"kind": e.kind(), "message": e.to_string()}}), code)
        }
    };
    let _ = writeln!(out, "{doc}");
    code
}

fn exact_json(q: &GaussRational) -> Value {
    Value::String(q.to_string())
}

fn big_json(v: &BigComplex) -> Value {
    json!({
        "re": float_to_hex(v.re()),
        "im": float_to_hex(v.im()),
        "prec": v.precision(),
        "decimal": v.to_decimal(20),
    })
}

fn jet_json<S: Scalar>(jet: &TruncatedTaylor<S>, render: fn(&S) -> Value) -> Value {
    Value::Array(jet.coeffs().iter().map(render).collect())
}

fn need_z(z: &Option<String>, op: Op) -> Result<GaussRational> {
    match z {
        Some(z) => parse_scalar(z),
        None => Err(Error::PreconditionViolated(format!("--op {op:?} needs --z"))),
    }
}

/// Runs `exact`; on `NotExact` reruns `numeric` at the working precision.
fn exact_or_numeric(
    exact: impl FnOnce() -> Result<Value>,
    numeric: impl FnOnce() -> Result<Value>,
) -> Result<(Value, bool)> {
    match exact() {
        Ok(v) => Ok((v, true)),
        Err(Error::NotExact(_)) => Ok((numeric()?, false)),
        Err(e) => Err(e),
    }
}

fn execute(cli: &Cli) -> Result<Value> {
    let prec = cli.precision;
    match &cli.verb {
        Verb::Apply { g0, f, op, z, order } => {
            let ctx = OperatorContext::new(parse_expr(g0)?)?;
            let f = parse_expr(f)?;
            let k = *order;
            if matches!(op, Op::Pommiez | Op::M) && z.is_some() {
                return Err(Error::PreconditionViolated(format!("--op {op:?} takes no --z")));
            }
            let (jet, exact, closed) = match op {
                Op::Pommiez => {
                    let jet = pommiez(&ctx, &f.taylor(k + 1))?;
                    let closed = pommiez_exact_on_line(&ctx, &f).ok().map(|e| e.to_string());
                    (jet_json(&jet, exact_json), true, closed)
                }
                Op::M => {
                    let m = mult_M(&f);
                    (jet_json(&m.taylor(k), exact_json), true, Some(m.to_string()))
                }
                Op::T | Op::Ttilde | Op::D => {
                    let zq = need_z(z, *op)?;
                    let zb = BigComplex::from_gauss(&zq, prec);
                    let (jet, exact) = exact_or_numeric(
                        || {
                            let j = match op {
                                Op::T => shift_T(&ctx, &f, &zq, k)?,
                                Op::Ttilde => shift_Ttilde(&ctx, &f, &zq, k)?,
                                _ => pommiez_at(&f, &zq, k)?,
                            };
                            Ok(jet_json(&j, exact_json))
                        },
                        || {
                            let j = match op {
                                Op::T => shift_T(&ctx, &f, &zb, k)?,
                                Op::Ttilde => shift_Ttilde(&ctx, &f, &zb, k)?,
                                _ => pommiez_at(&f, &zb, k)?,
                            };
                            Ok(jet_json(&j, big_json))
                        },
                    )?;
                    (jet, exact, None)
                }
            };
            Ok(json!({
                "op": format!("{op:?}").to_lowercase(),
                "order": k,
                "exact": exact,
                "jet": jet,
                "closed_form": closed,
            }))
        }
        Verb::Orbit { g0, f, len, mode, order } => {
            let ctx = OperatorContext::new(parse_expr(g0)?)?;
            let f = parse_expr(f)?;
            match mode {
                Mode::Exact => {
                    if order.is_some() {
                        return Err(Error::PreconditionViolated("--order applies to --mode taylor".into()));
                    }
                    let orbit = orbit_exact(&ctx, &f, *len)?;
                    Ok(json!({
                        "mode": "exact",
                        "orbit": orbit.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    }))
                }
                Mode::Taylor => {
                    let k = order.unwrap_or(len + 8);
                    let orbit = orbit_taylor(&ctx, &f.taylor(k), *len)?;
                    Ok(json!({
                        "mode": "taylor",
                        "orbit": orbit.iter().map(|j| jet_json(j, exact_json)).collect::<Vec<_>>(),
                    }))
                }
            }
        }
        Verb::Classify { g0, f, squares } => {
            let g0 = parse_expr(g0)?;
            let f = parse_expr_numeric(f, prec)?;
            let radius = parse_scalar(&cli.search_radius)?;
            let (r, ri) = radius.to_f64();
            if ri != 0.0 || !(r > 0.0) {
                return Err(Error::PreconditionViolated("--search-radius must be a positive rational".into()));
            }
            let opts = ClassifyOptions {
                search_radius: r,
                precision_bits: prec,
                tolerance: cli.tol.map(|k| 2f64.powi(-(k as i32))),
                region: squares.map(ConvexRegion::squares),
            };
            Ok(classify(&f, &g0, &opts)?.to_json())
        }
        Verb::Duhamel { v, w } => {
            let r = duhamel(&parse_expr(v)?, &parse_expr(w)?);
            Ok(json!({"result": r.to_string()}))
        }
        Verb::Omega { f, x, z } => {
            let (f, x, zq) = (parse_expr(f)?, parse_expr(x)?, parse_scalar(z)?);
            let zb = BigComplex::from_gauss(&zq, prec);
            let (value, exact) = exact_or_numeric(
                || Ok(exact_json(&omega(&f, &x, &zq)?)),
                || Ok(big_json(&omega(&f, &x, &zb)?)),
            )?;
            Ok(json!({"value": value, "exact": exact}))
        }
        Verb::Pair { x, h } => {
            let x = parse_expr(x)?
                .as_poly()
                .ok_or_else(|| Error::PreconditionViolated("--x must be a polynomial".into()))?;
            Ok(json!({"value": exact_json(&pair_exp(&x, &parse_expr(h)?))}))
        }
        Verb::Identities { suite, trials, seed } => {
            let report = run_suite(suite, *trials, *seed)?;
            Ok(serde_json::to_value(report).expect("report serializes"))
        }
        Verb::Invariance { g0, n, f } => {
            let g0 = parse_expr(g0)?;
            let m = invariant_line_matrix(&g0, *n)?;
            let nilpotent_index = (1..=n + 2).find(|&e| mat_pow(&m, e).iter().flatten().all(|c| c.is_zero()));
            let rank = match f {
                Some(f) => Some(orbit_rank(&g0, &parse_expr(f)?)?),
                None => None,
            };
            Ok(json!({
                "n": n,
                "matrix": m.iter().map(|r| r.iter().map(exact_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "nilpotent_index": nilpotent_index,
                "orbit_rank": rank,
            }))
        }
    }
}
