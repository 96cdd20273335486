//! Command-line front end. `run` parses arguments, dispatches to the library
//! and renders a report as text or JSON.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 input error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};
use symexpr::{Expr, ExprError, Symbol};

use crate::engel::{self, InvariantJet};
use crate::kerr::{self, Hypersurface, KerrFunction};
use crate::tanaka::{self, Coefficients, GradedNilpotent};
use crate::{cubicalg, g2alg, models, Error};

#[derive(Debug, Parser)]
#[command(name = "contact-engel", version, about = "Exact checks for marked contact Engel structures")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Closed,
    Structure,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum G0Choice {
    Gl2,
    Borel,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoeffChoice {
    G,
    Q,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The ten relative invariants of a marking function.
    Invariants {
        #[arg(long)]
        t: String,
        #[arg(long, value_enum, default_value = "closed")]
        route: Route,
    },
    /// Branch of the classification tree.
    Classify {
        #[arg(long)]
        t: String,
        /// Decide nonvanishing at a point, e.g. "x0=1,x1=2/3".
        #[arg(long)]
        at: Option<String>,
    },
    /// Growth vector of the rank-2 distribution.
    Growth {
        #[arg(long)]
        t: String,
    },
    /// Filtration and distribution checks.
    Geometry {
        #[arg(long)]
        t: String,
    },
    /// Kerr-type marking functions.
    #[command(subcommand)]
    Kerr(KerrCommand),
    /// Fibration over the 5-dimensional base.
    #[command(subcommand)]
    Fibration(FibrationCommand),
    /// Matrix model of g2 and its structure equations.
    #[command(subcommand)]
    G2(G2Command),
    /// Tanaka prolongation and Lie algebra cohomology.
    #[command(subcommand)]
    Tanaka(TanakaCommand),
    /// Constant-coefficient homogeneous models.
    #[command(subcommand)]
    Models(ModelsCommand),
    /// Reduction of the flat structure to the parabolic.
    #[command(subcommand)]
    Reduction(ReductionCommand),
    /// Action on binary cubics.
    #[command(subcommand)]
    Cubic(CubicCommand),
}

#[derive(Debug, Subcommand)]
pub enum KerrCommand {
    /// Exact check that `F(y(t), t) = 0` and `J = 0`.
    Verify {
        /// `F(y0..y4, t)`.
        #[arg(long = "F")]
        f: String,
        /// Candidate marking in `x0..x4`.
        #[arg(long)]
        t: String,
    },
    /// Newton solve of `F(y(x, t), t) = 0` at one point.
    Solve {
        /// `F(y0..y4, t)`.
        #[arg(long = "F")]
        f: String,
        /// Point in `x0..x4`, e.g. "x0=1,x1=2,x2=3,x3=1/2,x4=5".
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = 1.0)]
        guess: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Section of the fibration cut out by a hypersurface in `y0..y4`.
    Section {
        /// `H(y0..y4)`.
        #[arg(long = "H")]
        h: String,
        /// Point in `x0..x4`.
        #[arg(long)]
        at: String,
        #[arg(long, default_value_t = 1.0)]
        guess: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum FibrationCommand {
    /// Coframes in the two charts of the correspondence space agree.
    Check,
}

#[derive(Debug, Subcommand)]
pub enum G2Command {
    /// Matrix model, structure equations, grading and invariant forms.
    Verify,
}

#[derive(Debug, Subcommand)]
pub enum TanakaCommand {
    Prolong {
        #[arg(long, value_enum, default_value = "gl2")]
        g0: G0Choice,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    Cohomology {
        #[arg(long, value_enum, default_value = "g")]
        coeffs: CoeffChoice,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        l: i32,
    },
    Normalization,
}

#[derive(Debug, Subcommand)]
pub enum ModelsCommand {
    Check,
}

#[derive(Debug, Subcommand)]
pub enum ReductionCommand {
    VerifyFlat,
}

#[derive(Debug, Subcommand)]
pub enum CubicCommand {
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    VerificationFailed,
    InputError,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::InputError => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

enum Failure {
    Input(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Expr(ExprError::Syntax { .. } | ExprError::BadIdentifier(_)) | Error::Precondition(_) => {
                Failure::Input(e.to_string())
            }
            other => Failure::Computation(other.to_string()),
        }
    }
}

fn parse_expr(name: &str, s: &str) -> Result<Expr, Failure> {
    s.parse::<Expr>().map_err(|e| Failure::Input(format!("--{name}: {e}")))
}

/// A rational constant, written as an expression or as a decimal.
fn parse_number(s: &str) -> Result<Expr, Failure> {
    if let Ok(r) = s.parse::<f64>() {
        if s.contains(['.', 'e', 'E']) {
            let q = BigRational::from_float(r).ok_or_else(|| Failure::Input(format!("--at: '{s}' is not finite")))?;
            return Ok(Expr::from_rational(&q));
        }
    }
    let e = parse_expr("at", s)?;
    if !e.is_constant() {
        return Err(Failure::Input(format!("--at: '{s}' is not a number")));
    }
    Ok(e)
}

fn parse_point(s: &str) -> Result<BTreeMap<Symbol, Expr>, Failure> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Failure::Input(format!("--at: expected name=value, got '{part}'")))?;
        let sym = Symbol::from_name(k.trim()).map_err(|e| Failure::Input(format!("--at: {e}")))?;
        out.insert(sym, parse_number(v.trim())?);
    }
    Ok(out)
}

fn rational_point(s: &str) -> Result<BTreeMap<Symbol, BigRational>, Failure> {
    parse_point(s)?
        .into_iter()
        .map(|(k, v)| v.as_rational().map(|r| (k, r)).ok_or_else(|| Failure::Input(format!("--at: {k} is not a number"))))
        .collect()
}

fn numeric_point(s: &str) -> Result<[f64; 5], Failure> {
    let p = parse_point(s)?;
    let mut out = [0.0; 5];
    for (i, o) in out.iter_mut().enumerate() {
        let v = p.get(&Symbol::x(i as u32)).ok_or_else(|| Failure::Input(format!("--at: missing x{i}")))?;
        *o = v.eval_f64(&BTreeMap::new()).map_err(|e| Failure::Input(format!("--at: x{i}: {e}")))?;
        if !o.is_finite() {
            return Err(Failure::Input(format!("--at: x{i} is not finite")));
        }
    }
    if let Some(extra) = p.keys().find(|k| !(0..5).any(|i| **k == Symbol::x(i))) {
        return Err(Failure::Input(format!("--at: unexpected coordinate {extra}")));
    }
    Ok(out)
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn invariant_table(inv: &InvariantJet) -> Value {
    to_json(&inv.table())
}

type Outcome = Result<(Value, bool), Failure>;

fn execute(cmd: &Command, inputs: &mut BTreeMap<String, String>) -> Outcome {
    let mut input = |k: &str, v: &str| {
        inputs.insert(k.into(), v.into());
    };
    match cmd {
        Command::Invariants { t, route } => {
            input("t", t);
            let t = parse_expr("t", t)?;
            let branch = engel::classify(&t)?;
            let mut results = json!({ "branch": branch.describe(), "label": to_json(&branch) });
            let mut ok = true;
            if matches!(route, Route::Closed | Route::Both) {
                results["invariants"] = invariant_table(&engel::invariants_closed_form(&t)?);
            }
            if matches!(route, Route::Structure | Route::Both) {
                results["invariants_structure"] = invariant_table(&engel::invariants_from_structure_equations(&t)?);
            }
            if *route == Route::Both {
                let a = engel::invariants_closed_form(&t)?;
                let b = engel::invariants_from_structure_equations(&t)?;
                let diff = a.differences(&b);
                ok = diff.is_empty();
                results["routes_disagree_on"] = json!(diff);
            }
            Ok((results, ok))
        }
        Command::Classify { t, at } => {
            input("t", t);
            let e = parse_expr("t", t)?;
            let label = match at {
                Some(p) => {
                    input("at", p);
                    engel::classify_at(&e, &rational_point(p)?)?
                }
                None => engel::classify(&e)?,
            };
            Ok((json!({ "branch": label.describe(), "label": to_json(&label) }), true))
        }
        Command::Growth { t } => {
            input("t", t);
            let cf = engel::adapted_coframe(&parse_expr("t", t)?)?;
            let d = vec![cf.xi(3).clone(), cf.xi(4).clone()];
            let growth = crate::forms::distribution_growth(&d, 3)?;
            Ok((json!({ "growth": growth }), true))
        }
        Command::Geometry { t } => {
            input("t", t);
            let r = engel::geometric_checks(&parse_expr("t", t)?)?;
            let ok = r.consistent();
            Ok((to_json(&r), ok))
        }
        Command::Kerr(KerrCommand::Verify { f, t }) => {
            input("F", f);
            input("t", t);
            let kf = KerrFunction::new(parse_expr("F", f)?)?;
            let r = kerr::verify_kerr_pair(&kf, &parse_expr("t", t)?)?;
            let ok = r.passed();
            Ok((to_json(&r), ok))
        }
        Command::Kerr(KerrCommand::Solve { f, at, guess, tol }) => {
            input("F", f);
            input("at", at);
            let kf = KerrFunction::new(parse_expr("F", f)?)?;
            let p = numeric_point(at)?;
            let s = kerr::solve_kerr_numeric(&kf, &p, *guess, *tol)?;
            Ok((to_json(&s), true))
        }
        Command::Kerr(KerrCommand::Section { h, at, guess, tol }) => {
            input("H", h);
            input("at", at);
            let hs = Hypersurface::new(parse_expr("H", h)?)?;
            let p = numeric_point(at)?;
            let s = kerr::section_from_hypersurface(&hs, &[p], *guess, *tol)?;
            Ok((to_json(&s), true))
        }
        Command::Fibration(FibrationCommand::Check) => {
            let r = kerr::coordinate_change_check()?;
            let ok = r.passed();
            Ok((to_json(&r), ok))
        }
        Command::G2(G2Command::Verify) => {
            let mc = g2alg::verify_maurer_cartan()?;
            let grading = g2alg::grading_and_parabolics()?;
            let forms = g2alg::invariant_forms()?;
            let ok = mc.passed() && grading.passed() && forms.passed();
            let results = json!({
                "maurer_cartan": format!("{}/{}", mc.matched(), mc.equations.len()),
                "jacobi": format!("{}/{}", mc.jacobi_passed, mc.jacobi_triples),
                "convention": mc.convention,
                "mismatches": mc.equations.iter().filter(|e| !e.matches).map(to_json).collect::<Vec<_>>(),
                "grading": to_json(&grading),
                "invariant_forms": to_json(&forms),
            });
            Ok((results, ok))
        }
        Command::Tanaka(TanakaCommand::Prolong { g0, max_degree }) => {
            input("g0", &format!("{g0:?}").to_lowercase());
            input("max_degree", &max_degree.to_string());
            let m = GradedNilpotent::from_g2()?;
            let basis = match g0 {
                G0Choice::Gl2 => tanaka::g0_gl2()?,
                G0Choice::Borel => tanaka::g0_borel()?,
                G0Choice::Full => m.graded_derivations(),
            };
            let t = tanaka::tanaka_prolong(&m, &basis, *max_degree)?;
            Ok((to_json(&t.summary()), true))
        }
        Command::Tanaka(TanakaCommand::Cohomology { coeffs, p, l }) => {
            input("coeffs", &format!("{coeffs:?}").to_lowercase());
            input("p", &p.to_string());
            input("l", &l.to_string());
            let v = match coeffs {
                CoeffChoice::G => Coefficients::g()?,
                CoeffChoice::Q => Coefficients::q()?,
            };
            let h = tanaka::cohomology(&v, *p, *l)?;
            let ok = h.d_squared_zero;
            Ok((to_json(&h), ok))
        }
        Command::Tanaka(TanakaCommand::Normalization) => {
            let r = tanaka::normalization_obstruction()?;
            let ok = r.image_q_inside_image_g && r.no_invariant_complement();
            let mut v = to_json(&r);
            v["no_invariant_complement"] = json!(r.no_invariant_complement());
            Ok((v, ok))
        }
        Command::Models(ModelsCommand::Check) => {
            let reports = models::catalogue()?.iter().map(models::identify).collect::<Result<Vec<_>, _>>()?;
            let flat = models::flat_algebra()?;
            let ok = reports.iter().all(|r| r.closed) && flat.closed;
            Ok((json!({ "systems": to_json(&reports), "flat": to_json(&flat) }), ok))
        }
        Command::Reduction(ReductionCommand::VerifyFlat) => {
            let r = engel::verify_flat_reduction()?;
            let ok = r.passed();
            Ok((to_json(&r), ok))
        }
        Command::Cubic(CubicCommand::Verify { seed, samples }) => {
            input("seed", &seed.to_string());
            input("samples", &samples.to_string());
            let r = cubicalg::verify(*seed, *samples);
            let ok = r.passed();
            Ok((to_json(&r), ok))
        }
    }
}

fn command_name(cmd: &Command) -> String {
    let s = match cmd {
        Command::Invariants { .. } => "invariants",
        Command::Classify { .. } => "classify",
        Command::Growth { .. } => "growth",
        Command::Geometry { .. } => "geometry",
        Command::Kerr(KerrCommand::Verify { .. }) => "kerr verify",
        Command::Kerr(KerrCommand::Solve { .. }) => "kerr solve",
        Command::Kerr(KerrCommand::Section { .. }) => "kerr section",
        Command::Fibration(_) => "fibration check",
        Command::G2(_) => "g2 verify",
        Command::Tanaka(TanakaCommand::Prolong { .. }) => "tanaka prolong",
        Command::Tanaka(TanakaCommand::Cohomology { .. }) => "tanaka cohomology",
        Command::Tanaka(TanakaCommand::Normalization) => "tanaka normalization",
        Command::Models(_) => "models check",
        Command::Reduction(_) => "reduction verify-flat",
        Command::Cubic(_) => "cubic verify",
    };
    s.into()
}

/// Runs one parsed command and builds its report.
pub fn report(cli: &Cli) -> Report {
    let mut inputs = BTreeMap::new();
    let outcome = execute(&cli.command, &mut inputs);
    let command = command_name(&cli.command);
    match outcome {
        Ok((results, ok)) => Report {
            command,
            inputs,
            results,
            status: if ok { Status::Ok } else { Status::VerificationFailed },
            message: None,
        },
        Err(Failure::Input(m)) => Report { command, inputs, results: Value::Null, status: Status::InputError, message: Some(m) },
        Err(Failure::Computation(m)) => {
            Report { command, inputs, results: Value::Null, status: Status::VerificationFailed, message: Some(m) }
        }
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if x.is_object() || (x.is_array() && x.as_array().is_some_and(|a| a.iter().any(|e| e.is_object()))) {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_value(x, indent + 1, out);
                } else {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                let _ = writeln!(out, "{pad}[{i}]");
                render_value(x, indent + 1, out);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

pub fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("reports serialize") + "\n",
        Format::Text => {
            let mut out = format!("command: {}\n", r.command);
            for (k, v) in &r.inputs {
                let _ = writeln!(out, "input {k}: {v}");
            }
            if let Some(m) = &r.message {
                let _ = writeln!(out, "message: {m}");
            }
            if !r.results.is_null() {
                render_value(&r.results, 0, &mut out);
            }
            let _ = writeln!(out, "status: {}", scalar(&to_json(&r.status)));
            out
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code with the rendered output.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let r = report(&cli);
    let text = render(&r, cli.format);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            return (2, format!("{text}cannot write {}: {e}\n", path.display()));
        }
    }
    (r.status.code(), text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn json_of(args: &[&str]) -> (i32, Value) {
        let mut argv = vec!["contact-engel"];
        argv.extend_from_slice(args);
        argv.extend_from_slice(&["--format", "json"]);
        let (code, out) = run(argv);
        (code, serde_json::from_str(&out).expect("json re-parses"))
    }

    #[test]
    fn flat_invariants() {
        let (code, v) = json_of(&["invariants", "--t", "0"]);
        assert_eq!(code, 0);
        assert_eq!(v["results"]["branch"].as_str().unwrap().split(' ').next(), Some("flat"));
        for e in v["results"]["invariants"].as_array().unwrap() {
            assert_eq!(e["value"], "0");
        }
    }

    #[test]
    fn printed_expressions_reparse() {
        let (_, v) = json_of(&["invariants", "--t", "x4^2 + x1*x3", "--route", "both"]);
        let inv = engel::invariants_closed_form(&"x4^2 + x1*x3".parse().unwrap()).unwrap();
        for (e, (_, want)) in v["results"]["invariants"].as_array().unwrap().iter().zip(inv.named()) {
            let back: Expr = e["value"].as_str().unwrap().parse().unwrap();
            assert_eq!(&back, want);
        }
        assert_eq!(v["status"], "ok");
    }

    #[test]
    fn malformed_expression_is_input_error() {
        let (code, v) = json_of(&["invariants", "--t", "x1 + * x2"]);
        assert_eq!(code, 2);
        assert!(v["message"].as_str().unwrap().contains("syntax error at"));
    }

    #[test]
    fn unknown_command() {
        assert_eq!(run(["contact-engel", "frobnicate"]).0, 2);
    }

    #[test]
    fn kerr_pair_and_failure() {
        let (code, _) =
            json_of(&["kerr", "verify", "--F", "t - (2*y3 - y1)/y2", "--t", "(x1 - 2*x3)/(-x2 + 2*x4)"]);
        assert_eq!(code, 0);
        let (code, v) = json_of(&["kerr", "verify", "--F", "t - (2*y3 - y1)/y2", "--t", "x4"]);
        assert_eq!(code, 1);
        assert_eq!(v["status"], "verification-failed");
    }

    #[test]
    fn text_output_has_status() {
        let (code, out) = run(["contact-engel", "classify", "--t", "x4"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("status: ok\n"), "{out}");
    }
}
