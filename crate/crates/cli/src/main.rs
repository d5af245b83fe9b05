//! `numradius`: compute generalized numerical radii and related quantities,
//! sample ensembles, and run the verification suite.
//!
//! Exit codes: 0 success, 1 a non-scrutiny check failed, 2 usage error,
//! 3 malformed matrix file.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use numradius::complexmat::{sample, ComplexMatrix, EnsembleSpec, C64};
use numradius::geometry::{
    bj_orthogonal, parallel_witness, trace_condition_sides, w1_parallel_conditions, wn_orthogonal, Condition,
    OrthoWitness,
};
use numradius::norms::NormSpec;
use numradius::radius::{scalar_distance, w2_closed, wn_bounds, wn_max, MaximizerResult};
use numradius::verify::{render_table, reports_to_json, run_suite, SuiteOptions};
use numradius::Error;

#[derive(Parser, Debug)]
#[command(
    name = "numradius",
    version,
    about = "Generalized numerical radii of complex matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one quantity for a matrix file and print it as JSON.
    Compute {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        /// `op` or `p:<float>`.
        #[arg(long, default_value = "op")]
        norm: NormSpec,
        #[arg(long)]
        quantity: Quantity,
        /// Second operand for the binary predicates.
        #[arg(long, value_name = "FILE")]
        other: Option<PathBuf>,
        /// Schatten exponent for `trace-cond` (defaults to the norm's).
        #[arg(long)]
        p: Option<f64>,
    },
    /// Draw a sample from a seeded ensemble and write its matrix JSON.
    Sample {
        /// `kind:dim:seed`, e.g. `ginibre:4:7`.
        #[arg(long)]
        ensemble: EnsembleSpec,
        /// Output file; standard output when absent. Pair ensembles write
        /// `FILE` and `FILE.second`.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run verification checks, write the report JSON and print a table.
    Verify {
        /// Comma-separated check ids, or `all`.
        #[arg(long, default_value = "all", value_delimiter = ',')]
        suite: Vec<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Trials per dimension (expensive checks divide this).
        #[arg(long)]
        trials: Option<usize>,
        /// Comma-separated dimensions.
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        /// Comma-separated norm grid: `op`, `p:<float>` or a bare exponent.
        #[arg(long, value_delimiter = ',', value_parser = parse_grid_norm)]
        p: Option<Vec<NormSpec>>,
        #[arg(long)]
        threads: Option<usize>,
        /// Report file; the JSON goes to standard output (and the table to
        /// standard error) when absent.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Quantity {
    /// Classical numerical radius.
    W,
    /// `w_N` for `--norm`.
    Wn,
    /// Closed-form `w₂`.
    W2,
    Bounds,
    /// Distance to the scalars.
    Dist,
    Parallel,
    BjOrth,
    WnOrth,
    TraceCond,
    W1Conds,
}

fn parse_grid_norm(s: &str) -> Result<NormSpec, String> {
    let s = s.trim();
    if let Ok(p) = s.parse::<f64>() {
        return NormSpec::schatten(p).map_err(|e| e.to_string());
    }
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Matrix(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedMatrix(_) | Error::NonFinite => Failure::Matrix(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn c(z: C64) -> Value {
    json!([z.re, z.im])
}

fn radius_json(r: &MaximizerResult) -> Value {
    json!({ "value": r.value, "argmax_theta": r.argmax_theta, "bracket": r.bracket })
}

fn ortho_json(o: &OrthoWitness) -> Value {
    json!({
        "holds": o.is_orthogonal,
        "gamma": c(o.gamma_min),
        "min_value": o.min_value,
        "base": o.base,
        "gap": o.drop(),
        "threshold": o.threshold,
    })
}

fn cond_json(c: &Condition) -> Value {
    json!({ "holds": c.holds, "defect": c.defect })
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    ComplexMatrix::from_json_str(&text).map_err(|e| Failure::Matrix(format!("{}: {e}", path.display())))
}

fn compute(
    matrix: &Path,
    norm: NormSpec,
    quantity: Quantity,
    other: Option<&Path>,
    p: Option<f64>,
) -> Result<Value, Failure> {
    let binary = matches!(
        quantity,
        Quantity::Parallel | Quantity::BjOrth | Quantity::WnOrth | Quantity::TraceCond
    );
    if binary && other.is_none() {
        return Err(Failure::Usage(
            format!("--quantity {quantity:?} needs --other FILE").to_lowercase(),
        ));
    }
    if !matrix.is_file() {
        return Err(Failure::Usage(format!("no such file: {}", matrix.display())));
    }
    if let Some(o) = other {
        if !o.is_file() {
            return Err(Failure::Usage(format!("no such file: {}", o.display())));
        }
    }
    let a = read_matrix(matrix)?;
    let b = match other {
        Some(o) if binary => Some(read_matrix(o)?),
        _ => None,
    };
    let b = || b.as_ref().expect("checked above");
    let label = norm.label();
    let out = match quantity {
        Quantity::W => {
            let r = wn_max(&a, &NormSpec::operator());
            let mut v = radius_json(&r);
            v["norm"] = json!("op");
            v
        }
        Quantity::Wn => {
            let mut v = radius_json(&wn_max(&a, &norm));
            v["norm"] = json!(label);
            v
        }
        Quantity::W2 => json!({ "value": w2_closed(&a), "norm": "p:2" }),
        Quantity::Bounds => {
            let bd = wn_bounds(&a, &norm);
            json!({ "lower": bd.lower, "upper": bd.upper, "norm": label })
        }
        Quantity::Dist => {
            let d = scalar_distance(&a, &norm);
            json!({ "value": d.distance, "center": c(d.center), "norm": label })
        }
        Quantity::Parallel => {
            let w = parallel_witness(&a, b(), &norm)?;
            json!({
                "holds": w.is_parallel,
                "lambda": c(w.lambda),
                "gap": w.gap,
                "threshold": w.threshold,
                "norm": label,
            })
        }
        Quantity::BjOrth => {
            let mut v = ortho_json(&bj_orthogonal(&a, b(), &norm)?);
            v["norm"] = json!(label);
            v
        }
        Quantity::WnOrth => {
            let mut v = ortho_json(&wn_orthogonal(&a, b(), &norm)?);
            v["norm"] = json!(label);
            v
        }
        Quantity::TraceCond => {
            let p = p.unwrap_or(norm.p());
            let t = trace_condition_sides(&a, b(), p)?;
            json!({ "holds": t.holds(), "lhs": t.lhs, "rhs": t.rhs, "defect": t.defect(), "p": p })
        }
        Quantity::W1Conds => {
            let conds = w1_parallel_conditions(&a)?;
            let mut m = serde_json::Map::new();
            for (name, cond) in conds.all() {
                m.insert(name.to_string(), cond_json(&cond));
            }
            let all = conds.all();
            let agree = all.iter().all(|(_, x)| x.holds == all[0].1.holds);
            m.insert("agree".into(), json!(agree));
            Value::Object(m)
        }
    };
    Ok(out)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON serializes");
    s.push('\n');
    s
}

fn compact(m: &ComplexMatrix) -> String {
    let mut s = m.to_json_string();
    s.push('\n');
    s
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compute {
            matrix,
            norm,
            quantity,
            other,
            p,
        } => {
            let v = compute(&matrix, norm, quantity, other.as_deref(), p)?;
            print!("{}", pretty(&v));
            Ok(())
        }
        Command::Sample { ensemble, out } => {
            let s = sample(&ensemble)?;
            let mats = s.matrices();
            write_out(out.as_deref(), &compact(mats[0]))?;
            if mats.len() == 2 {
                match &out {
                    Some(p) => {
                        let mut second = p.clone().into_os_string();
                        second.push(".second");
                        write_out(Some(Path::new(&second)), &compact(mats[1]))?;
                    }
                    None => print!("{}", compact(mats[1])),
                }
            }
            Ok(())
        }
        Command::Verify {
            suite,
            seed,
            trials,
            dims,
            p,
            threads,
            out,
        } => {
            if let Some(d) = &dims {
                if d.is_empty() || d.contains(&0) {
                    return Err(Failure::Usage("--dims must list positive dimensions".into()));
                }
            }
            if let Some(parent) = out.as_deref().and_then(Path::parent) {
                if !parent.as_os_str().is_empty() && !parent.is_dir() {
                    return Err(Failure::Usage(format!("no such directory: {}", parent.display())));
                }
            }
            let opts = SuiteOptions {
                dims,
                norms: p,
                trials,
                seed,
                threads,
            };
            let reports = run_suite(&suite, &opts)?;
            let json = reports_to_json(&reports);
            let table = render_table(&reports);
            match &out {
                Some(path) => {
                    write_out(Some(path), &json)?;
                    print!("{table}");
                }
                None => {
                    print!("{json}");
                    eprint!("{table}");
                }
            }
            if reports.iter().all(|r| r.passed()) {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Matrix(msg)) => {
            eprintln!("error: malformed matrix: {msg}");
            ExitCode::from(3)
        }
    }
}
