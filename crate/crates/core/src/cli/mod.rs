//! Command line surface: parse inputs, dispatch to the algorithms and
//! render a report as text or JSON.

mod parse;

use std::io::BufRead;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use rand::SeedableRng;
use serde::Serialize;

use crate::decompose::{
    compute_u_linear, compute_u_series, decomp_det, decomp_with, default_det_set, DecompOptions, DecompReport,
    Outcome, RETRY_BUDGET,
};
use crate::factor::FactorField;
use crate::fields::{BigPrimeField, Field, FiniteField, PrimeField, Rationals};
use crate::grs::grs_decompose;
use crate::luroth::{luroth_generator, sederberg_with_retry, LurothResult};
use crate::pencil::{canonical_generator, spectrum_bruteforce, RationalFunctionMV, RationalFunctionUV};
use crate::polytope::{indecomposability_test, Indecomposability};
use crate::{Error, Result, Stream};

pub use parse::{detect_vars, parse_rational_function};

#[derive(Parser, Debug)]
#[command(name = "ratdecomp", version, about = "Decompose multivariate rational functions f = u(h)")]
struct Cli {
    /// `rational` or `fp:<p>`
    #[arg(long, global = true, default_value = "rational")]
    field: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit JSON
    #[arg(long, global = true)]
    json: bool,
    /// Comma separated variable names (detected from the input otherwise)
    #[arg(long, global = true)]
    vars: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a rational function
    Reduce { expr: String },
    /// Probabilistic decomposition
    Decomp {
        expr: String,
        /// Anchor points `a1,..,an;b1,..,bn` for the first trial
        #[arg(long)]
        points: Option<String>,
    },
    /// Deterministic decomposition over a prime field
    DecompDet {
        expr: String,
        /// Parameter set `s1,s2,...` (defaults to 0, 1, 2, ...)
        #[arg(long)]
        set: Option<String>,
    },
    /// Solve f = u(h) for u
    ComputeU {
        f: String,
        h: String,
        #[arg(long, value_enum, default_value_t = Method::Linear)]
        method: Method,
    },
    /// Generator of the field spanned by the inputs
    Luroth {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Generator of K(f, g) from the gcds of anchored pencil members
    Sederberg {
        f: String,
        g: String,
        #[arg(long)]
        points: Option<String>,
    },
    /// Newton polytope indecomposability test
    Indecomp { expr: String },
    /// Decomposition through the near-separated polynomial
    Grs { expr: String },
    /// Points (mu:lambda) of the spectrum over a small prime field
    Spectrum { expr: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Linear,
    Series,
}

#[derive(Serialize, Debug, Default, Clone, PartialEq)]
pub struct Fraction {
    pub num: String,
    pub den: String,
}

/// Machine readable result. Absent keys are omitted from the JSON.
#[derive(Serialize, Debug, Default, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub seed: u64,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gcd: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum_points: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials_used: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ErrorInfo {
    pub code: String,
    pub message: String,
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Ctx {
    Rational,
    Small(PrimeField),
    Big(BigPrimeField),
}

fn parse_field(spec: &str) -> Result<Ctx> {
    if spec == "rational" || spec == "Q" {
        return Ok(Ctx::Rational);
    }
    let Some(p) = spec.strip_prefix("fp:") else {
        return Err(Error::InvalidInput(format!("unknown field '{spec}', expected rational or fp:<p>")));
    };
    let p: BigUint = p.parse().map_err(|_| Error::InvalidInput(format!("bad prime '{p}'")))?;
    match u64::try_from(&p) {
        Ok(small) if small < 1 << 62 => Ok(Ctx::Small(PrimeField::new(small)?)),
        _ => Ok(Ctx::Big(BigPrimeField::new(p)?)),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Reduce { .. } => "reduce",
        Command::Decomp { .. } => "decomp",
        Command::DecompDet { .. } => "decomp-det",
        Command::ComputeU { .. } => "compute-u",
        Command::Luroth { .. } => "luroth",
        Command::Sederberg { .. } => "sederberg",
        Command::Indecomp { .. } => "indecomp",
        Command::Grs { .. } => "grs",
        Command::Spectrum { .. } => "spectrum",
    }
}

/// Inputs with each `-` replaced by the next nonempty line of stdin.
fn resolve_inputs(inputs: Vec<String>, stdin: &mut dyn BufRead) -> Result<Vec<String>> {
    let mut lines = stdin.lines().map_while(|l| l.ok()).filter(|l| !l.trim().is_empty());
    inputs
        .into_iter()
        .map(|s| {
            if s == "-" {
                lines.next().ok_or_else(|| Error::InvalidInput("stdin has no more expressions".into()))
            } else {
                Ok(s)
            }
        })
        .collect()
}

fn inputs_of(c: &mut Command) -> Vec<&mut String> {
    match c {
        Command::Reduce { expr }
        | Command::Decomp { expr, .. }
        | Command::DecompDet { expr, .. }
        | Command::Indecomp { expr }
        | Command::Grs { expr }
        | Command::Spectrum { expr } => vec![expr],
        Command::ComputeU { f, h, .. } => vec![f, h],
        Command::Sederberg { f, g, .. } => vec![f, g],
        Command::Luroth { exprs } => exprs.iter_mut().collect(),
    }
}

struct Env {
    vars: Vec<String>,
    rng: Stream,
}

fn fraction<F: Field>(f: &RationalFunctionMV<F>, names: &[String]) -> Fraction {
    Fraction { num: f.num().fmt_with(names), den: f.den().fmt_with(names) }
}

fn fraction_uv<F: Field>(u: &RationalFunctionUV<F>) -> Fraction {
    Fraction { num: u.num().to_string_var("T"), den: u.den().to_string_var("T") }
}

fn ints<F: Field>(k: &F, s: &str) -> Result<Vec<F::Elem>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<BigInt>()
                .map(|v| k.from_bigint(&v))
                .map_err(|_| Error::InvalidInput(format!("bad integer '{t}'")))
        })
        .collect()
}

fn point_pair<F: Field>(k: &F, s: &str, n: usize) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
    let Some((a, b)) = s.split_once(';') else {
        return Err(Error::InvalidInput("points must look like a1,..,an;b1,..,bn".into()));
    };
    let (a, b) = (ints(k, a)?, ints(k, b)?);
    if a.len() != n || b.len() != n {
        return Err(Error::InvalidInput(format!("points need {n} coordinates each")));
    }
    Ok((a, b))
}

fn decomp_fields<F: Field>(r: &DecompReport<F>, names: &[String], out: &mut Report) {
    match &r.outcome {
        Outcome::NonComposite(c) => {
            out.outcome = "non-composite".into();
            out.certification = Some(c.as_str().into());
        }
        Outcome::Decomposed(d) => {
            out.outcome = "decomposed".into();
            out.certification = d.certified.map(|c| c.as_str().into());
            out.u = Some(fraction_uv(&d.u));
            out.h = Some(fraction(&d.h, names));
        }
    }
    out.trials_used = Some(r.trials_used);
    out.warnings.extend(r.warnings.iter().cloned());
}

fn luroth_fields<F: Field>(r: &LurothResult<F>, names: &[String], out: &mut Report) {
    match r.generator() {
        Some(g) => {
            out.outcome = "generator".into();
            out.generator = Some(canonical_generator(g).fmt_with(names));
        }
        None => out.outcome = "no-generator".into(),
    }
    out.trials_used = Some(r.retries + 1);
}

/// Commands available over every field.
fn dispatch<F: FactorField>(k: &F, cmd: &Command, env: &mut Env, out: &mut Report) -> Result<()> {
    let vars = env.vars.clone();
    let parse = |s: &str| parse_rational_function(s, &vars, k);
    match cmd {
        Command::Reduce { expr } => {
            let f = parse(expr)?;
            out.outcome = "reduced".into();
            out.h = Some(fraction(&f, &vars));
        }
        Command::Decomp { expr, points } => {
            let f = parse(expr)?;
            let points = points.as_deref().map(|p| point_pair(k, p, vars.len())).transpose()?;
            let opts = DecompOptions { points, budget: RETRY_BUDGET };
            let r = decomp_with(&f, &opts, &mut env.rng)?;
            decomp_fields(&r, &vars, out);
        }
        Command::ComputeU { f, h, method } => {
            let (f, h) = (parse(f)?, parse(h)?);
            let u = match method {
                Method::Linear => compute_u_linear(&f, &h)?,
                Method::Series => compute_u_series(&f, &h)?,
            };
            out.outcome = "found".into();
            out.u = Some(fraction_uv(&u));
        }
        Command::Luroth { exprs } => {
            let fs = exprs.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
            let r = luroth_generator(&fs, &[], &mut env.rng)?;
            luroth_fields(&r, &vars, out);
        }
        Command::Sederberg { f, g, points } => {
            let (f, g) = (parse(f)?, parse(g)?);
            let points = points.as_deref().map(|p| point_pair(k, p, vars.len())).transpose()?;
            let r = sederberg_with_retry(&f, &g, points, &mut env.rng)?;
            luroth_fields(&r, &vars, out);
            if let Some((ha, hb)) = &r.gcds {
                out.warnings.push(format!("H_a = {}", ha.fmt_with(&vars)));
                out.warnings.push(format!("H_b = {}", hb.fmt_with(&vars)));
            }
        }
        Command::Indecomp { expr } => {
            let r = indecomposability_test(&parse(expr)?)?;
            out.outcome = match r.verdict {
                Indecomposability::NonComposite => "non-composite",
                Indecomposability::Inconclusive => "inconclusive",
            }
            .into();
            out.gcd = Some(r.gcd);
        }
        Command::Grs { expr } => {
            let f = parse(expr)?;
            let r = grs_decompose(&f, &mut env.rng)?;
            decomp_fields(&r.decomp, &vars, out);
        }
        Command::DecompDet { .. } | Command::Spectrum { .. } => {
            return Err(Error::UnsupportedField(format!("{} needs a prime field", out.command)));
        }
    }
    Ok(())
}

/// Commands that also need a finite field.
fn dispatch_finite<F: FiniteField + FactorField>(k: &F, cmd: &Command, env: &mut Env, out: &mut Report) -> Result<()> {
    let vars = env.vars.clone();
    match cmd {
        Command::DecompDet { expr, set } => {
            let f = parse_rational_function(expr, &vars, k)?;
            let s = match set {
                Some(s) => ints(k, s)?,
                None => default_det_set(k, f.degree()),
            };
            let r = decomp_det(&f, &s, &mut env.rng)?;
            decomp_fields(&r, &vars, out);
        }
        Command::Spectrum { expr } => {
            let f = parse_rational_function(expr, &vars, k)?;
            if f.nvars() < 2 {
                return Err(Error::InvalidInput("spectrum needs at least two variables".into()));
            }
            let s = spectrum_bruteforce(&f, &mut env.rng)?;
            out.outcome = "spectrum".into();
            out.spectrum_points = Some(s.format(k));
        }
        _ => return dispatch(k, cmd, env, out),
    }
    Ok(())
}

fn execute(cli: &mut Cli, stdin: &mut dyn BufRead, out: &mut Report) -> Result<()> {
    let ctx = parse_field(&cli.field)?;
    let raw: Vec<String> = inputs_of(&mut cli.command).iter().map(|s| s.to_string()).collect();
    let resolved = resolve_inputs(raw, stdin)?;
    for (slot, s) in inputs_of(&mut cli.command).into_iter().zip(resolved) {
        *slot = s;
    }
    let texts: Vec<String> = inputs_of(&mut cli.command).iter().map(|s| s.to_string()).collect();
    let vars = match &cli.vars {
        Some(v) => v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        None => detect_vars(&texts.iter().map(|s| s.as_str()).collect::<Vec<_>>())?,
    };
    let vars = if vars.is_empty() { vec!["X".to_string()] } else { vars };
    let mut env = Env { vars, rng: Stream::seed_from_u64(cli.seed) };
    match &ctx {
        Ctx::Rational => {
            out.field = Rationals.describe();
            dispatch(&Rationals, &cli.command, &mut env, out)
        }
        Ctx::Small(k) => {
            out.field = k.describe();
            dispatch_finite(k, &cli.command, &mut env, out)
        }
        Ctx::Big(k) => {
            out.field = k.describe();
            dispatch_finite(k, &cli.command, &mut env, out)
        }
    }
}

fn render_text(r: &Report) -> String {
    let mut s = format!("outcome: {}\n", r.outcome);
    if let Some(c) = &r.certification {
        s += &format!("certification: {c}\n");
    }
    if let Some(u) = &r.u {
        s += &format!("u = ({})/({})\n", u.num, u.den);
    }
    if let Some(h) = &r.h {
        s += &format!("h = ({})/({})\n", h.num, h.den);
    }
    if let Some(g) = &r.generator {
        s += &format!("generator = {g}\n");
    }
    if let Some(g) = r.gcd {
        s += &format!("gcd = {g}\n");
    }
    if let Some(pts) = &r.spectrum_points {
        s += &format!("spectrum ({} points): {}\n", pts.len(), pts.join(" "));
    }
    if let Some(t) = r.trials_used {
        s += &format!("trials used: {t}\n");
    }
    for w in &r.warnings {
        s += &format!("note: {w}\n");
    }
    s
}

/// Run the command line with `args` (program name first).
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Invocation { code, stdout: text, stderr: String::new() }
            } else {
                Invocation { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut report = Report {
        command: command_name(&cli.command).into(),
        field: cli.field.clone(),
        seed: cli.seed,
        ..Report::default()
    };
    let result = execute(&mut cli, stdin, &mut report);
    let code = match &result {
        Ok(()) => 0,
        Err(e) if e.is_input_error() || matches!(e, Error::UnsupportedField(_)) => 1,
        Err(_) => 2,
    };
    if let Err(e) = &result {
        report.outcome = "error".into();
        report.error = Some(ErrorInfo { code: e.code().into(), message: e.to_string() });
    }
    if cli.json {
        let mut stdout = serde_json::to_string(&report).expect("report serializes");
        stdout.push('\n');
        return Invocation { code, stdout, stderr: String::new() };
    }
    match result {
        Ok(()) => Invocation { code, stdout: render_text(&report), stderr: String::new() },
        Err(e) => Invocation { code, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
