//! `ymp` command-line front end.
//!
//! Exit codes: 0 success, 1 a check found a nonzero residual, 2 bad input.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::clifford::{lie_basis, Algebra, Field, Multivector};
use crate::error::{Error, Result};
use crate::field_series::{conservation_defect, qk_terms, solve_order, ym_current, PlaneWaveField, SeriesField};
use crate::json;
use crate::lie_ymp::{
    classify_n2, classify_n3, factory_anticommuting, factory_extra_n3, factory_grassmann, factory_zero_subset,
    lambda_fit, structure_constants, verify, ymp_residual, Metric, N2Class, N3Class, Theta,
};
use crate::matrix_rep::{embed_degenerate, faithful_rep};
use crate::newton::{expand_system, float_candidate, multistart, Certificate, MultistartOptions, NewtonOptions};
use crate::scalar::{parse_rational, Rational, Scalar};

#[derive(Parser, Debug)]
#[command(
    name = "ymp",
    version,
    about = "Yang-Mills-Proca fields valued in Clifford algebras: cubic constant systems and plane-wave series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a solution candidate against the cubic system.
    Verify(VerifyArgs),
    /// Build a candidate from one of the known solution families.
    Factory(FactoryArgs),
    /// Search for constant solutions numerically.
    Solve(SolveArgs),
    /// Perturbation terms around a constant solution, optionally solving the next order.
    Series(SeriesArgs),
    /// Name the family of an n = 2 or n = 3 candidate.
    Classify(InputArgs),
    /// Matrix images of the generators of an algebra.
    Repr(ReprArgs),
    /// Yang-Mills current of a plane-wave potential and its conservation defect.
    Conserve(ConserveArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "UPPER")]
enum FieldArg {
    R,
    C,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Anticommuting,
    ZeroSubset,
    Grassmann,
    ExtraN3,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input JSON file; standard input when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Overrides the candidate's λ.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// 0 demands an exactly vanishing residual.
    #[arg(long, default_value_t = 0.0)]
    tol: f64,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// `p,q` or `p,q,r`.
    #[arg(long)]
    signature: String,
    #[arg(long, value_enum, default_value = "C")]
    field: FieldArg,
}

#[derive(Args, Debug)]
struct FactoryArgs {
    #[arg(long, value_enum)]
    class: FamilyArg,
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Space-time metric `p,q`; defaults to the algebra's signature.
    #[arg(long)]
    metric: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    theta: i64,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    kappa: String,
    /// Zero-based component indices to zero (zero-subset family).
    #[arg(long)]
    zero: Option<String>,
    /// Number of Grassmann components.
    #[arg(long, default_value_t = 2)]
    count: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[arg(long)]
    metric: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// A plane-wave field (order 0) or an array of them (orders 0, 1, ...).
    #[arg(long)]
    base: PathBuf,
    /// Highest order of `Q_k` to report.
    #[arg(long, default_value_t = 1)]
    order: usize,
    /// Array of wavevectors; solves for the next order over this support.
    #[arg(long)]
    support: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    theta: i64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReprArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConserveArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    rho: String,
}

/// Outcome of a subcommand: JSON to emit and whether its check passed.
struct Outcome {
    value: Value,
    ok: bool,
    out: Option<PathBuf>,
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| {
            p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("expected comma-separated integers, got {s:?}")))
        })
        .collect()
}

fn parse_algebra(a: &AlgebraArgs) -> Result<Algebra> {
    let field = match a.field {
        FieldArg::R => Field::Real,
        FieldArg::C => Field::Complex,
    };
    match parse_list(&a.signature)?.as_slice() {
        [p, q] => Algebra::new(*p, *q, 0, field),
        [p, q, r] => Algebra::new(*p, *q, *r, field),
        _ => Err(Error::InvalidSignature(format!("expected p,q or p,q,r, got {:?}", a.signature))),
    }
}

fn parse_metric(s: Option<&str>, alg: &Algebra) -> Result<Metric> {
    match s {
        None => Ok(Metric::new(alg.p(), alg.q())),
        Some(s) => match parse_list(s)?.as_slice() {
            [p, q] => Ok(Metric::new(*p, *q)),
            _ => Err(Error::InvalidSignature(format!("metric must be p,q, got {s:?}"))),
        },
    }
}

fn parse_theta(t: i64) -> Result<Theta> {
    Theta::from_sign(t).ok_or_else(|| Error::InvalidArgument(format!("θ must be 1 or -1, got {t}")))
}

fn read_json(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<Value> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| Error::Parse(format!("standard input: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
}

fn cmd_verify(args: &VerifyArgs, stdin: &mut dyn Read) -> Result<Outcome> {
    let mut c = json::candidate_from_json(&read_json(args.io.input.as_ref(), stdin)?)?;
    if let Some(l) = &args.lambda {
        c.lambda = parse_rational(l)?;
    }
    let rep = verify(&c, args.tol)?;
    let residual = ymp_residual(&c)?;
    let fit = if c.components.iter().all(Multivector::is_zero) {
        Value::Null
    } else {
        let f = lambda_fit(&c.components, &c.metric)?;
        json!({"lambda": json::scalar_to_json(&f.lambda), "exact": f.exact, "residual_norm": f.residual_norm})
    };
    let value = json!({
        "ok": rep.ok,
        "exact_zero": rep.exact_zero,
        "max_residual_norm": rep.max_residual_norm,
        "lambda": json::rational_to_json(&c.lambda),
        "residual": residual.iter().map(json::multivector_to_json).collect::<Vec<_>>(),
        "lambda_fit": fit,
    });
    Ok(Outcome { value, ok: rep.ok, out: args.io.out.clone() })
}

fn cmd_factory(args: &FactoryArgs) -> Result<Outcome> {
    let alg = parse_algebra(&args.algebra)?;
    let theta = parse_theta(args.theta)?;
    let kappa = parse_rational(&args.kappa)?;
    let metric = parse_metric(args.metric.as_deref(), &alg)?;
    let c = match args.class {
        FamilyArg::Anticommuting => factory_anticommuting(alg, metric, theta, &kappa)?,
        FamilyArg::ZeroSubset => {
            let zero = args
                .zero
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("--zero is required for the zero-subset family".into()))?;
            factory_zero_subset(&factory_anticommuting(alg, metric, theta, &kappa)?, &parse_list(zero)?)?
        }
        FamilyArg::Grassmann => factory_grassmann(alg, args.count, metric)?,
        FamilyArg::ExtraN3 => factory_extra_n3(alg)?,
    };
    Ok(Outcome { value: json::candidate_to_json(&c), ok: true, out: args.out.clone() })
}

fn cmd_solve(args: &SolveArgs) -> Result<Outcome> {
    let alg = parse_algebra(&args.algebra)?;
    let metric = parse_metric(args.metric.as_deref(), &alg)?;
    let lambda = parse_rational(&args.lambda)?;
    let basis: Vec<Multivector> = lie_basis(&alg)?.into_iter().map(|b| Multivector::basis(alg, b)).collect();
    let sys = expand_system(structure_constants(&basis)?, metric, lambda);
    let opts = MultistartOptions {
        restarts: args.restarts,
        seed: args.seed,
        newton: NewtonOptions { tol: args.tol, ..NewtonOptions::default() },
        ..MultistartOptions::default()
    };
    let reports = multistart(&sys, &opts)?;
    let solutions = reports
        .iter()
        .map(|r| {
            let cand = match &r.certificate {
                Certificate::Rational(q) => sys.to_candidate(q)?,
                Certificate::Float => float_candidate(&sys, &r.solution)?,
            };
            Ok(json!({"candidate": json::candidate_to_json(&cand), "report": json::report_to_json(r)}))
        })
        .collect::<Result<Vec<_>>>()?;
    let value = json!({"equations": sys.size(), "solutions": solutions});
    Ok(Outcome { value, ok: !reports.is_empty(), out: args.out.clone() })
}

fn load_series(v: &Value) -> Result<SeriesField> {
    match v {
        Value::Array(items) => SeriesField::new(items.iter().map(json::plane_wave_from_json).collect::<Result<_>>()?),
        single => SeriesField::new(vec![json::plane_wave_from_json(single)?]),
    }
}

fn cmd_series(args: &SeriesArgs) -> Result<Outcome> {
    let theta = parse_theta(args.theta)?;
    let mut series = load_series(&read_json(Some(&args.base), &mut std::io::empty())?)?;
    let base = series.orders()[0].clone();
    let n = base.dim() as i64;
    // J = 4θ(n-1)γ^ν balances the order-0 term when the base is an anticommuting set
    let current = base.flip_all().scale(&Scalar::from_int(4 * theta.sign() * (n - 1)));
    let mut value = json!({});
    let mut ok = true;
    if let Some(path) = &args.support {
        let support = json::read_wave_list(&read_json(Some(path), &mut std::io::empty())?)?;
        let k = series.len();
        match solve_order(&series, k, &support, args.tol) {
            Ok(sol) => {
                value["solved"] = json!({
                    "order": k,
                    "field": json::plane_wave_to_json(&sol.field),
                    "residual_norm": sol.residual_norm,
                    "kernel_dimension": sol.kernel.len(),
                });
                series.push(sol.field)?;
            }
            Err(Error::Inconsistent(norm)) => {
                ok = false;
                value["solved"] = json!({"order": k, "inconsistent": true, "residual_norm": norm});
            }
            Err(e) => return Err(e),
        }
    }
    let q = qk_terms(&series, args.order.max(series.len() - 1));
    let q0_balanced = q[0] == current;
    value["q0_matches_current"] = json!(q0_balanced);
    value["Q"] = Value::Array(q.iter().map(json::plane_wave_to_json).collect());
    Ok(Outcome { value, ok, out: args.out.clone() })
}

fn cmd_classify(args: &InputArgs, stdin: &mut dyn Read) -> Result<Outcome> {
    let c = json::candidate_from_json(&read_json(args.input.as_ref(), stdin)?)?;
    let lambda_json = |l: &Option<Scalar>| l.as_ref().map_or(Value::Null, json::scalar_to_json);
    let value = match c.n() {
        2 => match classify_n2(&c)? {
            N2Class::Anticommuting { lambda } => json!({"class": "anticommuting", "lambda": lambda_json(&lambda)}),
            N2Class::Proportional { mu } => json!({"class": "proportional", "mu": json::scalar_to_json(&mu)}),
            N2Class::ZeroComponent { which } => json!({"class": "zero-component", "which": which}),
            N2Class::Commuting => json!({"class": "commuting"}),
            N2Class::Unknown => json!({"class": "unknown"}),
        },
        3 => match classify_n3(&c)? {
            N3Class::Anticommuting { lambda } => json!({"class": "anticommuting", "lambda": lambda_json(&lambda)}),
            N3Class::ZeroComponentClifford2 { which } => json!({"class": "zero-component", "which": which}),
            N3Class::Proportional => json!({"class": "proportional"}),
            N3Class::Commuting => json!({"class": "commuting"}),
            N3Class::Unknown => json!({"class": "unknown"}),
        },
        n => return Err(Error::InvalidArgument(format!("classification covers n = 2, 3; got n = {n}"))),
    };
    Ok(Outcome { value, ok: true, out: args.out.clone() })
}

fn cmd_repr(args: &ReprArgs) -> Result<Outcome> {
    let alg = parse_algebra(&args.algebra)?;
    let (images, faithful) = if alg.is_degenerate() {
        let psi = embed_degenerate(alg)?;
        let rep = faithful_rep(psi.target())?;
        let images = psi.generator_images().iter().map(|g| rep.image(g)).collect::<Result<Vec<_>>>()?;
        (images, Value::Null)
    } else {
        let rep = faithful_rep(alg)?;
        (rep.generator_images().to_vec(), json!(rep.is_faithful()))
    };
    let value = json!({
        "algebra": json::algebra_to_json(&alg),
        "order": images.first().map_or(1, |m| m.order()),
        "faithful": faithful,
        "generators": images.iter().map(json::cmatrix_to_json).collect::<Vec<_>>(),
    });
    Ok(Outcome { value, ok: true, out: args.out.clone() })
}

fn cmd_conserve(args: &ConserveArgs, stdin: &mut dyn Read) -> Result<Outcome> {
    let a: PlaneWaveField = json::plane_wave_from_json(&read_json(args.io.input.as_ref(), stdin)?)?;
    let rho: Rational = parse_rational(&args.rho)?;
    let j = ym_current(&a, &rho);
    let defect = conservation_defect(&a, &j, &rho)?;
    let ok = defect.is_zero();
    let value = json!({"current": json::plane_wave_to_json(&j), "conserved": ok});
    Ok(Outcome { value, ok, out: args.io.out.clone() })
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome> {
    match &cli.command {
        Command::Verify(a) => cmd_verify(a, stdin),
        Command::Factory(a) => cmd_factory(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Series(a) => cmd_series(a),
        Command::Classify(a) => cmd_classify(a, stdin),
        Command::Repr(a) => cmd_repr(a),
        Command::Conserve(a) => cmd_conserve(a, stdin),
    }
}

/// Runs the CLI on `argv` (including the program name) with explicit streams.
pub fn run_with_io(argv: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, stdin) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.value).expect("serializable") + "\n";
            let written = match &outcome.out {
                Some(path) => fs::write(path, &text).map_err(|e| e.to_string()),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    run_with_io(argv, &mut std::io::stdin(), &mut std::io::stdout(), &mut std::io::stderr())
}
