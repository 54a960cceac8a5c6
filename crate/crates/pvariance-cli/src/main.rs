//! `pvar` — command-line front end for the deformed-covariance toolkit:
//! least-variance fitting, orthogonal basis construction, polynomial
//! families, overdetermined systems, quadrature weights, expansion error
//! bounds, vector orthogonalization, and a self-check suite.

mod expr;
mod ingest;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pvariance::analysis_extras::{bessel_improved, interpolatory_rule, pv_quad_weights};
use pvariance::approx::fit;
use pvariance::odsolve::OverdeterminedProblem;
use pvariance::polyfam::FamilyDescriptor;
use pvariance::uncorrelate::{gram_schmidt, orthogonal_companion, verify_basis};
use pvariance::{Element, PCovOp, ProbSpace, Scalar};

use expr::{parse_element, parse_scalar_arg};

/// Validation failures exit with 2, mathematical failures with 3.
enum CliError {
    Usage(String),
    Math(String),
}

impl From<pvariance::Error> for CliError {
    fn from(e: pvariance::Error) -> Self {
        CliError::Math(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T: Into<String>>(msg: T) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser)]
#[command(
    name = "pvar",
    version,
    about = "Least deformed-variance fitting and uncorrelated polynomial tooling"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Fit a target with a polynomial basis by minimizing the deformed variance
    Fit(FitArgs),
    /// Construct a mutually uncorrelated polynomial basis from monomials
    Basis(BasisArgs),
    /// Print members and closed-form norms of a named polynomial family
    Polyfam(PolyfamArgs),
    /// Solve an overdetermined linear system under the deformed objective
    Odsolve(OdsolveArgs),
    /// Quadrature weights reproducing deformed variances at given nodes
    Quad(QuadArgs),
    /// Truncated-expansion error functionals S and V (V <= S)
    Bessel(BesselArgs),
    /// Orthogonalize the standard basis of R^m against a fixed direction
    Vectors(VectorsArgs),
    /// Run the built-in identity verification suite
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Backend {
    Rational,
    Float,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone)]
struct SpaceArgs {
    /// Weight function: "uniform" or an expression in x
    #[arg(long, default_value = "uniform")]
    weight: String,
    /// Integration interval endpoints
    #[arg(long, num_args = 2, value_names = ["A", "B"], default_values = ["0", "1"])]
    interval: Vec<String>,
    /// CSV sample file with header x,y[,j][,z]; replaces weight/interval
    #[arg(long)]
    data: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct OpArgs {
    /// Deformation parameter in [0, 1]
    #[arg(long, default_value = "1")]
    p: String,
    /// Fixed element as an expression in x
    #[arg(long, default_value = "1")]
    z: String,
    /// Arithmetic backend
    #[arg(long, value_enum, default_value_t = Backend::Rational)]
    backend: Backend,
}

#[derive(Args, Clone)]
struct OutArgs {
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct FitArgs {
    /// Target expression (continuous spaces; CSV input supplies y instead)
    #[arg(long)]
    target: Option<String>,
    /// Polynomial degree of the fitting basis
    #[arg(long)]
    degree: usize,
    #[command(flatten)]
    space: SpaceArgs,
    #[command(flatten)]
    op: OpArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct BasisArgs {
    /// Highest degree of the orthogonalized monomials
    #[arg(long)]
    degree: usize,
    #[command(flatten)]
    space: SpaceArgs,
    #[command(flatten)]
    op: OpArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct PolyfamArgs {
    /// Family name
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Highest member degree to emit
    #[arg(long)]
    degree: usize,
    /// Parameter r (beta-power, beta-ordinary)
    #[arg(long)]
    r: Option<String>,
    /// Parameter a (beta-unified)
    #[arg(long)]
    a: Option<String>,
    /// Parameter c (beta-unified)
    #[arg(long)]
    c: Option<String>,
    /// Parameter alpha (jacobi-divided, laguerre-divided)
    #[arg(long)]
    alpha: Option<String>,
    /// Parameter beta (jacobi-divided)
    #[arg(long)]
    beta: Option<String>,
    /// Division point sign for jacobi-divided: 1 or -1
    #[arg(long, default_value_t = 1)]
    endpoint: i8,
    /// Chebyshev kind 1..4 (chebyshev-divided)
    #[arg(long)]
    kind: Option<u8>,
    /// Division point lambda (chebyshev-shift)
    #[arg(long)]
    lambda: Option<String>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(ValueEnum, Clone, Copy)]
enum FamilyName {
    BetaPower,
    BetaOrdinary,
    BetaUnified,
    JacobiDivided,
    ChebyshevDivided,
    LaguerreDivided,
    ChebyshevShift,
}

#[derive(Args)]
struct OdsolveArgs {
    /// CSV matrix file (headerless rows)
    #[arg(long)]
    matrix: PathBuf,
    /// CSV right-hand-side column (headerless)
    #[arg(long)]
    rhs: PathBuf,
    /// Fixed direction: "ones" or a CSV column file
    #[arg(long, default_value = "ones")]
    z: String,
    /// Deformation parameter in [0, 1]
    #[arg(long, default_value = "1")]
    p: String,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct QuadArgs {
    /// Comma-separated node list, e.g. "0,1/4,1/2,1"
    #[arg(long)]
    nodes: String,
    /// Optional target; when given, weights are the covariances with the
    /// Lagrange cardinal polynomials instead of the moment-matching solve
    #[arg(long)]
    target: Option<String>,
    #[command(flatten)]
    space: SpaceArgs,
    #[command(flatten)]
    op: OpArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct BesselArgs {
    /// Target expression
    #[arg(long)]
    target: String,
    /// Expansion order (family members 0..=degree)
    #[arg(long)]
    degree: usize,
    #[command(flatten)]
    space: SpaceArgs,
    #[command(flatten)]
    op: OpArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct VectorsArgs {
    /// Dimension of the Euclidean space
    #[arg(long)]
    dim: usize,
    /// Fixed direction, comma-separated, e.g. "1,2,3"
    #[arg(long)]
    z: String,
    /// Deformation parameter in [0, 1]
    #[arg(long, default_value = "1")]
    p: String,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run
    #[arg(long, default_value = "all")]
    suite: String,
    /// Arithmetic backend
    #[arg(long, value_enum, default_value_t = Backend::Rational)]
    backend: Backend,
}

/// The JSON envelope shared by every subcommand.
#[derive(Serialize)]
struct Output {
    command: String,
    inputs: BTreeMap<String, String>,
    coefficients: serde_json::Value,
    residual_var_p: Option<String>,
    residual_ls: Option<String>,
    diagnostics: Vec<String>,
}

impl Output {
    fn new(command: &str) -> Self {
        Output {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            coefficients: serde_json::Value::Null,
            residual_var_p: None,
            residual_ls: None,
            diagnostics: Vec::new(),
        }
    }

    fn input(&mut self, key: &str, val: impl ToString) {
        self.inputs.insert(key.to_string(), val.to_string());
    }
}

fn scalar_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn render(out: &Output, args: &OutArgs) -> CliResult<()> {
    let text = match args.format {
        Format::Json => {
            let mut t = serde_json::to_string_pretty(out)
                .map_err(|e| CliError::Math(e.to_string()))?;
            t.push('\n');
            t
        }
        Format::Csv => {
            let mut t = String::new();
            match &out.coefficients {
                serde_json::Value::Array(rows) => {
                    for row in rows {
                        match row {
                            serde_json::Value::Array(cells) => {
                                let line: Vec<String> = cells
                                    .iter()
                                    .map(|c| c.as_str().unwrap_or_default().to_string())
                                    .collect();
                                t.push_str(&line.join(","));
                            }
                            other => t.push_str(other.as_str().unwrap_or_default()),
                        }
                        t.push('\n');
                    }
                }
                serde_json::Value::Null => {}
                other => {
                    t.push_str(&other.to_string());
                    t.push('\n');
                }
            }
            if let Some(r) = &out.residual_var_p {
                t.push_str(&format!("residual_var_p,{r}\n"));
            }
            if let Some(r) = &out.residual_ls {
                t.push_str(&format!("residual_ls,{r}\n"));
            }
            for d in &out.diagnostics {
                t.push_str(&format!("# {d}\n"));
            }
            t
        }
    };
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_p(text: &str, backend: Backend) -> CliResult<Scalar> {
    let p = parse_scalar_arg(text).map_err(usage)?;
    if p.is_negative() || p > Scalar::one() {
        return Err(usage(format!("p = {text} must lie in [0, 1]")));
    }
    Ok(match backend {
        Backend::Rational => p,
        Backend::Float => Scalar::float(p.to_f64()),
    })
}

/// The problem pieces assembled from the space/operator flags.
struct Problem {
    op: PCovOp,
    /// Target from the CSV y column, when samples were supplied.
    data_target: Option<Element>,
}

fn build_problem(space: &SpaceArgs, opargs: &OpArgs) -> CliResult<Problem> {
    let p = parse_p(&opargs.p, opargs.backend)?;
    if let Some(path) = &space.data {
        let table = ingest::load_samples(path).map_err(usage)?;
        let sp = ProbSpace::discrete(table.x.clone(), table.masses.clone())?;
        let z = match &table.z {
            Some(col) => Element::tabulated(col.clone()),
            None => {
                let zel = parse_element(&opargs.z).map_err(usage)?;
                tabulate(&zel, &table.x)?
            }
        };
        let op = PCovOp::with_z(sp, z, p)?;
        return Ok(Problem {
            op,
            data_target: Some(Element::tabulated(table.y)),
        });
    }
    let a = parse_scalar_arg(&space.interval[0]).map_err(usage)?;
    let b = parse_scalar_arg(&space.interval[1]).map_err(usage)?;
    let sp = build_continuous_space(&space.weight, a, b)?;
    let z = parse_element(&opargs.z).map_err(usage)?;
    let op = PCovOp::with_z(sp, z, p)?;
    Ok(Problem {
        op,
        data_target: None,
    })
}

fn tabulate(e: &Element, points: &[Scalar]) -> CliResult<Element> {
    let vals: Vec<Scalar> = points
        .iter()
        .map(|x| {
            e.eval_scalar(x)
                .unwrap_or_else(|_| Scalar::float(e.eval_f64(x.to_f64())))
        })
        .collect();
    Ok(Element::tabulated(vals))
}

fn build_continuous_space(weight: &str, a: Scalar, b: Scalar) -> CliResult<ProbSpace> {
    if weight == "uniform" || weight == "1" {
        return Ok(ProbSpace::uniform(a, b)?);
    }
    let el = parse_element(weight).map_err(usage)?;
    // A single positive x^λ(1−x)^μ term on [0, 1] keeps the exact backend.
    if a.is_zero() && b == Scalar::one() {
        if let Element::Combo(terms) = &el {
            if terms.len() == 1 && terms[0].0 == Scalar::one() {
                if let Element::PowerProduct(lam, mu) = &terms[0].1 {
                    return Ok(ProbSpace::power_beta(lam.clone(), mu.clone())?);
                }
            }
        }
        if let Element::PowerProduct(lam, mu) = &el {
            return Ok(ProbSpace::power_beta(lam.clone(), mu.clone())?);
        }
    }
    Ok(ProbSpace::custom(
        move |x| el.eval_f64(x),
        a,
        b,
    )?)
}

fn monomials(degree: usize) -> Vec<Element> {
    (0..=degree).map(Element::monomial).collect()
}

fn run_fit(args: &FitArgs) -> CliResult<()> {
    let problem = build_problem(&args.space, &args.op)?;
    let y = match (&problem.data_target, &args.target) {
        (Some(_), Some(_)) => {
            return Err(usage("--target and --data are mutually exclusive"));
        }
        (Some(t), None) => t.clone(),
        (None, Some(expr)) => parse_element(expr).map_err(usage)?,
        (None, None) => return Err(usage("either --target or --data is required")),
    };
    let res = fit(&problem.op, &monomials(args.degree), &y)?;
    let mut out = Output::new("fit");
    out.input("p", &args.op.p);
    out.input("z", &args.op.z);
    out.input("degree", args.degree);
    if let Some(t) = &args.target {
        out.input("target", t);
    }
    if let Some(d) = &args.space.data {
        out.input("data", d.display());
    } else {
        out.input("weight", &args.space.weight);
        out.input("interval", args.space.interval.join(".."));
    }
    out.coefficients = serde_json::json!(scalar_strings(&res.coefficients));
    out.residual_var_p = Some(res.residual_var_p.to_string());
    out.residual_ls = Some(res.residual_ls.to_string());
    if !res.degenerate_free_params.is_empty() {
        out.diagnostics.push(format!(
            "degenerate system; free coefficients {:?} fixed by mean matching",
            res.degenerate_free_params
        ));
    }
    render(&out, &args.out)
}

fn run_basis(args: &BasisArgs) -> CliResult<()> {
    let problem = build_problem(&args.space, &args.op)?;
    let basis = gram_schmidt(&problem.op, &monomials(args.degree))?;
    let mut rows = Vec::new();
    for el in &basis.elements {
        let coeffs = el
            .as_poly()
            .ok_or_else(|| CliError::Math("basis member is not polynomial".into()))?;
        rows.push(serde_json::json!(scalar_strings(&coeffs)));
    }
    let tol = float_tol();
    let report = verify_basis(&problem.op, &basis.elements, tol)?;
    let mut out = Output::new("basis");
    out.input("p", &args.op.p);
    out.input("z", &args.op.z);
    out.input("degree", args.degree);
    out.coefficients = serde_json::Value::Array(rows);
    out.diagnostics.push(format!(
        "variances: [{}]",
        scalar_strings(&basis.variances).join(", ")
    ));
    out.diagnostics.push(format!(
        "pairwise covariance check: worst off-diagonal {:e} ({})",
        report.worst_off_diagonal,
        if report.ok { "ok" } else { "FAILED" }
    ));
    if !report.ok {
        render(&out, &args.out)?;
        return Err(CliError::Math(
            "constructed basis failed the uncorrelatedness check".into(),
        ));
    }
    render(&out, &args.out)
}

fn parse_opt_scalar(v: &Option<String>, name: &str) -> CliResult<Scalar> {
    match v {
        Some(t) => parse_scalar_arg(t).map_err(usage),
        None => Err(usage(format!("--{name} is required for this family"))),
    }
}

fn run_polyfam(args: &PolyfamArgs) -> CliResult<()> {
    let desc = match args.family {
        FamilyName::BetaPower => FamilyDescriptor::BetaPower {
            r: parse_opt_scalar(&args.r, "r")?,
        },
        FamilyName::BetaOrdinary => FamilyDescriptor::BetaOrdinary {
            r: parse_opt_scalar(&args.r, "r")?,
        },
        FamilyName::BetaUnified => FamilyDescriptor::BetaUnified {
            a: parse_opt_scalar(&args.a, "a")?,
            c: parse_opt_scalar(&args.c, "c")?,
        },
        FamilyName::JacobiDivided => FamilyDescriptor::JacobiDivided {
            alpha: parse_opt_scalar(&args.alpha, "alpha")?,
            beta: parse_opt_scalar(&args.beta, "beta")?,
            endpoint: args.endpoint,
        },
        FamilyName::ChebyshevDivided => FamilyDescriptor::ChebyshevDivided {
            kind: args
                .kind
                .ok_or_else(|| usage("--kind is required for this family"))?,
        },
        FamilyName::LaguerreDivided => FamilyDescriptor::LaguerreDivided {
            alpha: parse_opt_scalar(&args.alpha, "alpha")?,
        },
        FamilyName::ChebyshevShift => FamilyDescriptor::ChebyshevShift {
            lambda: parse_opt_scalar(&args.lambda, "lambda")?,
        },
    };
    desc.validate()?;
    let mut rows = Vec::new();
    let mut norms = Vec::new();
    for n in 0..=args.degree {
        let poly = desc.poly(n)?;
        let coeffs = poly
            .as_poly()
            .ok_or_else(|| CliError::Math("family member is not polynomial".into()))?;
        rows.push(serde_json::json!(scalar_strings(&coeffs)));
        norms.push(desc.norm(n)?.to_string());
    }
    let mut out = Output::new("polyfam");
    out.input("degree", args.degree);
    for (key, val) in [
        ("r", &args.r),
        ("a", &args.a),
        ("c", &args.c),
        ("alpha", &args.alpha),
        ("beta", &args.beta),
        ("lambda", &args.lambda),
    ] {
        if let Some(v) = val {
            out.input(key, v);
        }
    }
    if let Some(k) = args.kind {
        out.input("kind", k);
    }
    out.coefficients = serde_json::Value::Array(rows);
    out.diagnostics.push(format!("norms: [{}]", norms.join(", ")));
    render(&out, &args.out)
}

fn run_odsolve(args: &OdsolveArgs) -> CliResult<()> {
    let a = ingest::load_matrix(&args.matrix).map_err(usage)?;
    let b = ingest::load_column(&args.rhs).map_err(usage)?;
    let p = parse_p(&args.p, Backend::Rational)?;
    let z = if args.z == "ones" {
        vec![Scalar::one(); a.len()]
    } else {
        ingest::load_column(&PathBuf::from(&args.z)).map_err(usage)?
    };
    let prob = OverdeterminedProblem::with_direction(a, b, z, p)?;
    let ls = prob.ls_solve()?;
    let pv = prob.solve()?;
    let mut out = Output::new("odsolve");
    out.input("matrix", args.matrix.display());
    out.input("rhs", args.rhs.display());
    out.input("z", &args.z);
    out.input("p", &args.p);
    out.coefficients = serde_json::json!(scalar_strings(&pv.x));
    out.diagnostics.push(format!(
        "deformed solution: [{}] with V = {}, E = {}",
        scalar_strings(&pv.x).join(", "),
        pv.objective_v,
        pv.objective_ls
    ));
    out.diagnostics.push(format!(
        "least-squares solution: [{}] with V = {}, E = {}",
        scalar_strings(&ls.x).join(", "),
        ls.objective_v,
        ls.objective_ls
    ));
    render(&out, &args.out)
}

fn run_quad(args: &QuadArgs) -> CliResult<()> {
    let problem = build_problem(&args.space, &args.op)?;
    let nodes: Vec<Scalar> = args
        .nodes
        .split(',')
        .map(|t| parse_scalar_arg(t).map_err(usage))
        .collect::<CliResult<_>>()?;
    let rule = match &args.target {
        Some(texpr) => {
            let f = parse_element(texpr).map_err(usage)?;
            interpolatory_rule(&problem.op, &nodes, &f)?
        }
        None => pv_quad_weights(&problem.op, &nodes)?,
    };
    let mut out = Output::new("quad");
    out.input("nodes", &args.nodes);
    out.input("p", &args.op.p);
    out.input("z", &args.op.z);
    if let Some(t) = &args.target {
        out.input("target", t);
    }
    let rows: Vec<serde_json::Value> = rule
        .nodes
        .iter()
        .zip(rule.weights.iter())
        .map(|(n, w)| serde_json::json!([n.to_string(), w.to_string()]))
        .collect();
    out.coefficients = serde_json::Value::Array(rows);
    out.diagnostics
        .push("rows are node,weight pairs".to_string());
    render(&out, &args.out)
}

fn run_bessel(args: &BesselArgs) -> CliResult<()> {
    let problem = build_problem(&args.space, &args.op)?;
    let f = parse_element(&args.target).map_err(usage)?;
    // Plainly orthogonal family: orthogonalize monomials at zero deformation.
    let plain = problem.op.with_p(Scalar::zero())?;
    let family = gram_schmidt(&plain, &monomials(args.degree))?.elements;
    let b = bessel_improved(&problem.op, &family, &f)?;
    let mut out = Output::new("bessel");
    out.input("p", &args.op.p);
    out.input("z", &args.op.z);
    out.input("degree", args.degree);
    out.input("target", &args.target);
    out.coefficients = serde_json::json!([b.s.to_string(), b.v.to_string()]);
    out.diagnostics.push(format!(
        "S = {} (plain squared error), V = {} (sharpened), V <= S: {}",
        b.s,
        b.v,
        b.v <= b.s
    ));
    render(&out, &args.out)
}

fn run_vectors(args: &VectorsArgs) -> CliResult<()> {
    let z: Vec<Scalar> = args
        .z
        .split(',')
        .map(|t| parse_scalar_arg(t).map_err(usage))
        .collect::<CliResult<_>>()?;
    if z.len() != args.dim {
        return Err(usage(format!(
            "direction has {} components but --dim is {}",
            z.len(),
            args.dim
        )));
    }
    let p = parse_p(&args.p, Backend::Rational)?;
    let space = ProbSpace::vectors(args.dim)?;
    let op = PCovOp::with_z(space, Element::vector(z), p)?;
    let seeds: Vec<Element> = (0..args.dim)
        .map(|i| {
            let mut v = vec![Scalar::zero(); args.dim];
            v[i] = Scalar::one();
            Element::vector(v)
        })
        .collect();
    let basis = gram_schmidt(&op, &seeds)?;
    let mut rows = Vec::new();
    let mut companions = Vec::new();
    for el in &basis.elements {
        let v = el
            .as_vector()
            .ok_or_else(|| CliError::Math("non-vector basis element".into()))?;
        rows.push(serde_json::json!(scalar_strings(&v)));
        let comp = orthogonal_companion(&op, el)?
            .as_vector()
            .ok_or_else(|| CliError::Math("non-vector companion".into()))?;
        companions.push(format!("[{}]", scalar_strings(&comp).join(", ")));
    }
    let mut out = Output::new("vectors");
    out.input("dim", args.dim);
    out.input("z", &args.z);
    out.input("p", &args.p);
    out.coefficients = serde_json::Value::Array(rows);
    out.diagnostics.push(format!(
        "variances: [{}]",
        scalar_strings(&basis.variances).join(", ")
    ));
    out.diagnostics
        .push(format!("companions: {}", companions.join(", ")));
    render(&out, &args.out)
}

fn float_tol() -> f64 {
    std::env::var("PVAR_TOL")
        .ok()
        .and_then(|v| v.parse::<f64>().ok())
        .unwrap_or(1e-10)
}

fn run_verify(args: &VerifyArgs) -> CliResult<()> {
    if args.suite != "all" {
        return Err(usage(format!("unknown suite '{}'", args.suite)));
    }
    let tol = float_tol();
    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool| {
        println!("{} - {name}", if ok { "ok" } else { "FAILED" });
        if !ok {
            failures += 1;
        }
    };

    // Quadratic fit of sqrt(1-x) with fixed element x: exact coefficients.
    {
        let p = match args.backend {
            Backend::Rational => Scalar::one(),
            Backend::Float => Scalar::float(1.0),
        };
        let op = PCovOp::with_z(ProbSpace::uniform01(), Element::monomial(1), p)?;
        let y = Element::power_product(Scalar::zero(), Scalar::ratio(1, 2));
        let res = fit(&op, &monomials(2), &y)?;
        let want = [
            Scalar::ratio(34, 35),
            Scalar::ratio(-8, 35),
            Scalar::ratio(-4, 7),
        ];
        let ok = match args.backend {
            Backend::Rational => {
                res.coefficients == want && res.residual_var_p == Scalar::ratio(1, 2450)
            }
            Backend::Float => res
                .coefficients
                .iter()
                .zip(want.iter())
                .all(|(c, w)| (c.to_f64() - w.to_f64()).abs() < tol),
        };
        check("quadratic fit coefficients and residual", ok);
    }

    // Overdetermined example: minimizers and the objective chain.
    {
        let s = Scalar::from_int;
        let prob = OverdeterminedProblem::new(
            vec![
                vec![s(-1), s(1)],
                vec![s(2), s(-1)],
                vec![s(1), s(-2)],
                vec![s(-1), s(2)],
            ],
            vec![s(1), s(2), s(3), s(4)],
        )?;
        let ls = prob.ls_solve()?;
        let pv = prob.solve()?;
        check(
            "overdetermined system minimizers and objective chain",
            ls.x == vec![Scalar::ratio(9, 7), Scalar::one()]
                && pv.x == vec![Scalar::ratio(8, 74), Scalar::ratio(13, 74)]
                && pv.objective_v < ls.objective_v
                && ls.objective_v < ls.objective_ls,
        );
    }

    // Closed-form family norms equal operator variances.
    {
        let mut ok = true;
        for desc in [
            FamilyDescriptor::BetaPower {
                r: Scalar::ratio(3, 2),
            },
            FamilyDescriptor::BetaOrdinary { r: Scalar::one() },
            FamilyDescriptor::BetaUnified {
                a: Scalar::ratio(1, 3),
                c: Scalar::ratio(2, 5),
            },
        ] {
            let op = desc.operator()?;
            for n in 0..=4usize {
                ok &= op.var(&desc.poly(n)?)? == desc.norm(n)?;
            }
        }
        check("family norms against operator variances", ok);
    }

    // Terminating-sum orthogonality identity.
    {
        use pvariance::polyfam::{ordinary_family_sum, ordinary_family_sum_closed};
        let r = Scalar::one();
        let mut ok = true;
        for n in 0..=4usize {
            for m in 0..=4usize {
                ok &= ordinary_family_sum(m, n, &r) == ordinary_family_sum_closed(m, n, &r);
            }
        }
        check("terminating-sum orthogonality identity", ok);
    }

    // Vector orthogonalization closed forms at full deformation.
    {
        let space = ProbSpace::vectors(3)?;
        let z = Element::vector(vec![
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_int(3),
        ]);
        let op = PCovOp::with_z(space, z, Scalar::one())?;
        let seeds: Vec<Element> = (0..3)
            .map(|i| {
                let mut v = vec![Scalar::zero(); 3];
                v[i] = Scalar::one();
                Element::vector(v)
            })
            .collect();
        let basis = gram_schmidt(&op, &seeds)?;
        let x1 = basis.elements[1].as_vector().unwrap();
        check(
            "vector orthogonalization closed form",
            x1 == vec![Scalar::ratio(2, 13), Scalar::one(), Scalar::zero()],
        );
    }

    if failures > 0 {
        Err(CliError::Math(format!("{failures} verification(s) failed")))
    } else {
        println!("all verifications passed");
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Fit(a) => run_fit(a),
        Cmd::Basis(a) => run_basis(a),
        Cmd::Polyfam(a) => run_polyfam(a),
        Cmd::Odsolve(a) => run_odsolve(a),
        Cmd::Quad(a) => run_quad(a),
        Cmd::Bessel(a) => run_bessel(a),
        Cmd::Vectors(a) => run_vectors(a),
        Cmd::Verify(a) => run_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
