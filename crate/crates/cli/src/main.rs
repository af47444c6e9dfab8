//! `fracop`: evaluate operators, run verification suites, emit multiplier tables.

mod config;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde::Serialize;

use config::{parse_list, parse_points, FileConfig};
use fracop::buschman_erdelyi::{be_norm, MellinMultiplier, ZeroOrder};
use fracop::mellin::{log_grid, plancherel_norm, Norm};
use fracop::report::VerificationReport;
use fracop::{Error, Function, Operator, Quadrature};
use suites::SuiteArgs;

#[derive(Parser, Debug)]
#[command(name = "fracop", version, about = "Fractional operators: evaluation, verification suites and multiplier tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an operator on a function at points.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Run a named verification suite.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// |m(1/2 + it)| of a zero-order multiplier on a log grid.
    #[command(allow_negative_numbers = true)]
    Mellin(MellinArgs),
    /// Norm formulas next to critical-line suprema.
    #[command(allow_negative_numbers = true)]
    Norms(NormsArgs),
    /// Zero-order multiplier values at given s.
    #[command(allow_negative_numbers = true)]
    Table(TableArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Plain-text key=value file with defaults for any long option.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Operator spec, e.g. `rl-left:a=0,alpha=0.5`.
    #[arg(long)]
    op: Option<String>,
    /// Function spec, e.g. `bump:c=2,r=1` or `pow:m=1`.
    #[arg(long = "fn")]
    function: Option<String>,
    /// `a,b,...` or `lo:hi:n`.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name; `list` prints the available suites.
    suite: String,
    /// Bessel or Legendre index, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Fractional order, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Second order for semigroup suites.
    #[arg(long)]
    beta: Option<f64>,
    /// Legendre order μ, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Monomial exponent for the power suite.
    #[arg(long)]
    m: Option<f64>,
    /// Operand function spec (default `bump:c=2,r=1`).
    #[arg(long = "fn")]
    function: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct MellinArgs {
    /// S0plus, P0plus, Sminus or Pminus.
    #[arg(long)]
    which: Option<String>,
    #[arg(long)]
    nu: Option<f64>,
    /// Smallest |t|.
    #[arg(long)]
    t_min: Option<f64>,
    /// Largest |t|.
    #[arg(long)]
    t_max: Option<f64>,
    /// Points per sign of t.
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct NormsArgs {
    /// Comma-separated ν values.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Comma-separated ν values.
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    /// Points `re` or `re+imi`, comma-separated (e.g. `0.2+0.4i,-1`).
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[command(flatten)]
    common: Common,
}

/// Failure classes, mapped to exit codes 2 (configuration) and 3 (numerics).
enum Failure {
    Config(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Spec(_) => Failure::Config(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

struct Context {
    file: FileConfig,
    format: Format,
    out: Option<PathBuf>,
    quadrature: Quadrature,
}

const KNOWN_KEYS: &[&str] = &[
    "out", "format", "rel-tol", "abs-tol", "op", "fn", "points", "nu", "alpha", "beta", "mu", "m", "which", "t-min",
    "t-max", "n", "s",
];

impl Context {
    fn new(common: &Common) -> Outcome<Self> {
        let file = FileConfig::load(common.config.as_deref())?;
        if let Some(k) = file.keys().find(|k| !KNOWN_KEYS.contains(k)) {
            return Err(Failure::Config(format!("unknown config key `{k}`")));
        }
        let format = match (common.format, file.text("format")) {
            (Some(f), _) => f,
            (None, Some("csv")) | (None, None) => Format::Csv,
            (None, Some("json")) => Format::Json,
            (None, Some(other)) => return Err(Failure::Config(format!("config `format`: unknown `{other}`"))),
        };
        let out = common.out.clone().or_else(|| file.text("out").map(PathBuf::from));
        let mut quadrature = Quadrature::default();
        if let Some(v) = common.rel_tol.or(file.num("rel-tol")?) {
            quadrature.rel_tol = v;
        }
        if let Some(v) = common.abs_tol.or(file.num("abs-tol")?) {
            quadrature.abs_tol = v;
        }
        quadrature.validate()?;
        Ok(Self { file, format, out, quadrature })
    }

    fn text(&self, cli: &Option<String>, key: &str) -> Option<String> {
        cli.clone().or_else(|| self.file.text(key).map(str::to_string))
    }

    fn list(&self, cli: &Option<String>, key: &str) -> Outcome<Option<Vec<f64>>> {
        match cli {
            Some(v) => Ok(Some(parse_list(v)?)),
            None => Ok(self.file.list(key)?),
        }
    }

    fn num(&self, cli: Option<f64>, key: &str) -> Outcome<Option<f64>> {
        match cli {
            Some(v) => Ok(Some(v)),
            None => Ok(self.file.num(key)?),
        }
    }

    fn emit(&self, text: &str) -> Outcome<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text).map_err(|e| Failure::Config(format!("cannot write {}: {e}", p.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes()).map_err(|e| Failure::Config(e.to_string()))
            }
        }
    }

    fn render<R: Serialize>(&self, rows: &[R]) -> Outcome<String> {
        match self.format {
            Format::Json => serde_json::to_string_pretty(rows).map(|s| s + "\n").map_err(|e| Failure::Config(e.to_string())),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for r in rows {
                    w.serialize(r).map_err(|e| Failure::Config(e.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|e| Failure::Config(e.to_string()))?;
                String::from_utf8(bytes).map_err(|e| Failure::Config(e.to_string()))
            }
        }
    }
}

#[derive(Serialize)]
struct EvalRow {
    x: f64,
    value: f64,
    abs_err_estimate: f64,
}

fn eval(args: &EvalArgs) -> Outcome<ExitCode> {
    let ctx = Context::new(&args.common)?;
    let op_spec = ctx.text(&args.op, "op").ok_or_else(|| Failure::Config("eval needs --op".into()))?;
    let fn_spec = ctx.text(&args.function, "fn").ok_or_else(|| Failure::Config("eval needs --fn".into()))?;
    let points = ctx.text(&args.points, "points").ok_or_else(|| Failure::Config("eval needs --points".into()))?;
    let op = Operator::parse(&op_spec).map_err(|e| Failure::Config(e.to_string()))?;
    let f = Function::parse(&fn_spec).map_err(|e| Failure::Config(e.to_string()))?;
    let points = parse_points(&points)?;
    let tight = Quadrature { rel_tol: ctx.quadrature.rel_tol * 1e-2, abs_tol: ctx.quadrature.abs_tol * 1e-2, ..ctx.quadrature };
    let mut rows = Vec::with_capacity(points.len());
    for x in points {
        let value = op.apply(&f, x, &ctx.quadrature)?;
        // a second evaluation at 100× tighter tolerance
        let abs_err_estimate = match op.apply(&f, x, &tight) {
            Ok(v) => (v - value).abs(),
            Err(_) => f64::NAN,
        };
        rows.push(EvalRow { x, value, abs_err_estimate });
    }
    ctx.emit(&ctx.render(&rows)?)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyRow<'a> {
    check_name: &'a str,
    max_rel_err: f64,
    tolerance: f64,
    pass: bool,
}

fn verify(args: &VerifyArgs) -> Outcome<ExitCode> {
    let ctx = Context::new(&args.common)?;
    if args.suite == "list" {
        let text: String = suites::SUITES.iter().map(|s| format!("{}\t{}\n", s.0, s.1)).collect();
        ctx.emit(&text)?;
        return Ok(ExitCode::SUCCESS);
    }
    let suite = suites::find(&args.suite)?;
    let sargs = SuiteArgs {
        nu: ctx.list(&args.nu, "nu")?,
        alpha: ctx.list(&args.alpha, "alpha")?,
        beta: ctx.num(args.beta, "beta")?,
        mu: ctx.list(&args.mu, "mu")?,
        m: ctx.num(args.m, "m")?,
        function: ctx.text(&args.function, "fn"),
    };
    if let Some(spec) = &sargs.function {
        Function::parse(spec).map_err(|e| Failure::Config(e.to_string()))?;
    }
    let reports: Vec<VerificationReport> = suite(&sargs, &ctx.quadrature)?;
    let text = match ctx.format {
        Format::Json => ctx.render(&reports)?,
        Format::Csv => {
            let rows: Vec<VerifyRow> = reports
                .iter()
                .map(|r| VerifyRow { check_name: &r.identity, max_rel_err: r.max_rel_err, tolerance: r.tolerance, pass: r.pass })
                .collect();
            ctx.render(&rows)?
        }
    };
    ctx.emit(&text)?;
    for r in &reports {
        eprintln!("{r}");
    }
    Ok(if !reports.is_empty() && reports.iter().all(|r| r.pass) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct MellinRow {
    t: f64,
    abs_m: f64,
}

fn mellin(args: &MellinArgs) -> Outcome<ExitCode> {
    let ctx = Context::new(&args.common)?;
    let which: ZeroOrder = ctx.text(&args.which, "which").unwrap_or_else(|| "S0plus".into()).parse()?;
    let nu = ctx.num(args.nu, "nu")?.unwrap_or(0.0);
    let lo = ctx.num(args.t_min, "t-min")?.unwrap_or(1e-3);
    let hi = ctx.num(args.t_max, "t-max")?.unwrap_or(1e3);
    let n = match args.n {
        Some(n) => n,
        None => ctx.file.num("n")?.map(|v| v as usize).unwrap_or(256),
    };
    if !(lo > 0.0 && hi > lo && n >= 2) {
        return Err(Failure::Config("need 0 < t-min < t-max and n ≥ 2".into()));
    }
    let m = MellinMultiplier::new(which, nu);
    let mut rows = Vec::new();
    for t in log_grid(lo, hi, n) {
        rows.push(MellinRow { t, abs_m: m.critical_line(t)?.norm() });
    }
    ctx.emit(&ctx.render(&rows)?)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct NormRow {
    nu: f64,
    operator: &'static str,
    formula: String,
    critical_line: String,
}

fn describe(n: Norm<f64>) -> String {
    match n {
        Norm::Finite(v) => format!("{v}"),
        Norm::Unbounded => "unbounded".into(),
    }
}

fn norms(args: &NormsArgs) -> Outcome<ExitCode> {
    let ctx = Context::new(&args.common)?;
    let nus = ctx.list(&args.nu, "nu")?.unwrap_or_else(|| vec![-0.5, -0.2, 0.0, 0.3, 0.5, 1.0]);
    let grid = fracop::mellin::default_t_grid();
    let mut rows = Vec::new();
    for nu in nus {
        for w in ZeroOrder::ALL {
            let measured = plancherel_norm(&MellinMultiplier::new(w, nu), &grid)?;
            rows.push(NormRow { nu, operator: w.name(), formula: describe(be_norm(w, nu)), critical_line: describe(measured) });
        }
    }
    ctx.emit(&ctx.render(&rows)?)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TableRow {
    nu: f64,
    operator: &'static str,
    s_re: f64,
    s_im: f64,
    m_re: f64,
    m_im: f64,
    status: String,
}

fn parse_complex(text: &str) -> Outcome<Complex<f64>> {
    let t = text.trim();
    let bad = || Failure::Config(format!("bad complex number `{t}`"));
    let Some(body) = t.strip_suffix('i') else {
        return t.parse().map(|re| Complex::new(re, 0.0)).map_err(|_| bad());
    };
    let split = body.char_indices().skip(1).filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E'])).last();
    match split {
        Some((i, _)) => {
            let re: f64 = body[..i].parse().map_err(|_| bad())?;
            let im: f64 = body[i..].trim_start_matches('+').parse().map_err(|_| bad())?;
            Ok(Complex::new(re, im))
        }
        None => body.parse().map(|im| Complex::new(0.0, im)).map_err(|_| bad()),
    }
}

fn table(args: &TableArgs) -> Outcome<ExitCode> {
    let ctx = Context::new(&args.common)?;
    let nus = ctx.list(&args.nu, "nu")?.unwrap_or_else(|| vec![0.0, 0.3, 1.0]);
    let s_text = ctx.text(&args.s, "s").unwrap_or_else(|| "-0.5,0.25,0.2+0.4i,0.75".into());
    let points: Vec<Complex<f64>> = s_text.split(',').map(parse_complex).collect::<Outcome<_>>()?;
    let mut rows = Vec::new();
    for &nu in &nus {
        for w in ZeroOrder::ALL {
            for &s in &points {
                let (m, status) = match MellinMultiplier::new(w, nu).evaluate(s) {
                    Ok(m) => (m, "ok".to_string()),
                    Err(e @ (Error::StripViolation { .. } | Error::Pole(_))) => (Complex::new(f64::NAN, f64::NAN), e.to_string()),
                    Err(e) => return Err(e.into()),
                };
                rows.push(TableRow { nu, operator: w.name(), s_re: s.re, s_im: s.im, m_re: m.re, m_im: m.im, status });
            }
        }
    }
    ctx.emit(&ctx.render(&rows)?)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval(a) => eval(a),
        Command::Verify(a) => verify(a),
        Command::Mellin(a) => mellin(a),
        Command::Norms(a) => norms(a),
        Command::Table(a) => table(a),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numerical error: {msg}");
            ExitCode::from(3)
        }
    }
}
