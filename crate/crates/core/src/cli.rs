//! The `jbalg` command line.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::alphabet::{Alphabet, GenId, Parity};
use crate::concrete::{CheckResult, Report, StructureAlgebra, Vector};
use crate::engine::{self, json as ejson, Element, FreeAlgebra, Theory};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::farkas::{self, PoissonPolynomial};
use crate::kantor;
use crate::parse::parse;
use crate::term::{MultiDegree, Term};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

const DEFAULT_MAX_DEGREE: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "jbalg", version, about = "Normal forms in free generalized Poisson, Jordan bracket and generic Poisson superalgebras")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FreeOpts {
    #[arg(long, default_value = "genp")]
    pub theory: Theory,
    /// Generators, e.g. `x1,x2,t:odd`.
    #[arg(long, default_value = "")]
    pub gens: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of an expression.
    Nf {
        #[command(flatten)]
        free: FreeOpts,
        expr: String,
    },
    /// Dimension of the multilinear component of degree N.
    Dim {
        #[arg(long, default_value = "genp")]
        theory: Theory,
        n: usize,
        /// Print every degree from 1 to N.
        #[arg(long)]
        table: bool,
    },
    /// Basis monomials of one multidegree.
    Basis {
        #[command(flatten)]
        free: FreeOpts,
        /// Occurrence counts per generator in declaration order, e.g. `1,1,1`.
        #[arg(long)]
        multidegree: String,
        /// Occurrences of the unit.
        #[arg(long, default_value_t = 0)]
        units: u32,
    },
    /// Decide whether an expression in `?variables` is an identity.
    CheckIdentity {
        /// Concrete algebra file.
        #[arg(long, conflicts_with = "free")]
        algebra: Option<String>,
        /// Check in the free algebra instead.
        #[arg(long)]
        free: bool,
        #[arg(long, default_value = "genp")]
        theory: Theory,
        #[arg(long, default_value = "")]
        gens: String,
        /// Variables taken odd in the free check, e.g. `a,b`.
        #[arg(long, default_value = "")]
        odd: String,
        expr: String,
    },
    /// Jordan check of the Kantor double of a concrete algebra.
    KantorCheck {
        #[arg(long)]
        algebra: String,
        /// Only the super-Jordan identity on the double.
        #[arg(long, conflicts_with = "jorskob")]
        direct: bool,
        /// Only the three identities on the algebra itself.
        #[arg(long)]
        jorskob: bool,
    },
    /// Reduce a multilinear identity to customary form.
    Farkas {
        /// Expression in `?variables` (or declared even generators).
        #[arg(long)]
        input: String,
        #[arg(long, default_value = "")]
        gens: String,
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate an expression in `?variables` in a concrete algebra.
    Eval {
        #[arg(long)]
        algebra: String,
        /// `name=value`, the value a basis name or coordinates `1,0,2/3`.
        #[arg(long = "bind")]
        binds: Vec<String>,
        expr: String,
    },
    /// Check the identities an algebra file claims.
    Validate { file: String },
}

fn max_degree() -> usize {
    std::env::var("JB_MAX_DEGREE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

fn guard(degree: usize) -> Result<()> {
    let limit = max_degree();
    if degree > limit {
        return Err(Error::DegreeLimit { degree, limit });
    }
    Ok(())
}

fn term_size(t: &Term) -> usize {
    match t {
        Term::Gen(_) | Term::Var(_) => 1,
        Term::Prod(a, b) | Term::Bracket(a, b) => term_size(a) + term_size(b),
        Term::Sum(ts) => ts.iter().map(|(_, t)| term_size(t)).max().unwrap_or(0),
    }
}

fn free_algebra(theory: Theory, gens: &str) -> Result<FreeAlgebra> {
    Ok(FreeAlgebra::new(Arc::new(Alphabet::parse_list(gens)?), theory))
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Json(format!("{path}: {e}")))
}

fn load_algebra(path: &str) -> Result<StructureAlgebra> {
    StructureAlgebra::from_json(&read(path)?)
}

/// What a command produced: text, JSON and the exit status.
struct Outcome {
    text: String,
    json: serde_json::Value,
    code: i32,
}

impl Outcome {
    fn ok(text: String, json: serde_json::Value) -> Outcome {
        Outcome { text, json, code: EXIT_OK }
    }

    fn verdict(passed: bool, text: String, json: serde_json::Value) -> Outcome {
        Outcome { text, json, code: if passed { EXIT_OK } else { EXIT_FALSE } }
    }
}

fn show(e: &Element, a: &Alphabet) -> String {
    e.display(a).to_string()
}

fn check_text(a: &StructureAlgebra, r: &CheckResult) -> String {
    match &r.witness {
        None => format!("pass {}", r.identity),
        Some(w) => {
            let args: Vec<&str> = w.indices.iter().map(|&i| a.names()[i].as_str()).collect();
            format!("fail {} at ({}): {}", r.identity, args.join(", "), a.format_vector(&w.residual))
        }
    }
}

fn report_text(a: &StructureAlgebra, r: &Report) -> String {
    r.results.iter().map(|c| check_text(a, c)).collect::<Vec<_>>().join("\n")
}

fn cmd_nf(free: &FreeOpts, expr: &str) -> Result<Outcome> {
    let alg = free_algebra(free.theory, &free.gens)?;
    let t = parse(expr, alg.alphabet())?;
    guard(term_size(&t))?;
    let e = alg.normal_form(&t)?;
    Ok(Outcome::ok(show(&e, alg.alphabet()), ejson::to_value(&e, alg.alphabet())))
}

fn cmd_dim(theory: Theory, n: usize, table: bool) -> Result<Outcome> {
    guard(n)?;
    if table {
        let rows: Vec<(usize, usize)> = (1..=n).map(|k| (k, engine::dim_multilinear(k, theory))).collect();
        let text = rows.iter().map(|(k, d)| format!("{k} {d}")).collect::<Vec<_>>().join("\n");
        let j: BTreeMap<String, usize> = rows.iter().map(|(k, d)| (k.to_string(), *d)).collect();
        return Ok(Outcome::ok(text, json!(j)));
    }
    let d = engine::dim_multilinear(n, theory);
    Ok(Outcome::ok(d.to_string(), json!(d)))
}

fn cmd_basis(free: &FreeOpts, multidegree: &str, units: u32) -> Result<Outcome> {
    let counts: Vec<u32> = multidegree
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Json(format!("bad multidegree entry `{s}`"))))
        .collect::<Result<_>>()?;
    let gens = if free.gens.is_empty() {
        (1..=counts.len()).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",")
    } else {
        free.gens.clone()
    };
    let alg = free_algebra(free.theory, &gens)?;
    if counts.len() != alg.alphabet().len() - 1 {
        return Err(Error::Json(format!(
            "multidegree has {} entries for {} generators",
            counts.len(),
            alg.alphabet().len() - 1
        )));
    }
    guard((counts.iter().sum::<u32>() + units) as usize)?;
    let mut all = vec![units];
    all.extend(counts);
    let basis = alg.enumerate_basis(&MultiDegree::new(all));
    let names: Vec<String> = basis.iter().map(|m| m.display(alg.alphabet()).to_string()).collect();
    Ok(Outcome::ok(names.join("\n"), json!(names)))
}

/// Replaces `?v` by fresh generators and reports the normal form.
fn free_identity(theory: Theory, gens: &str, odd: &str, expr: &str) -> Result<Outcome> {
    let base = Alphabet::parse_list(gens)?;
    let t = parse(expr, &base)?;
    let (ml, vars) = t.multilinearize()?;
    guard(term_size(&ml))?;
    let odd: Vec<&str> = odd.split(',').map(|s| s.trim().trim_start_matches('?')).filter(|s| !s.is_empty()).collect();
    let mut decls = Vec::new();
    let mut fresh: HashMap<String, String> = HashMap::new();
    for v in &vars {
        let base_name = v.trim_start_matches('?');
        let mut name = base_name.to_string();
        while base.lookup(&name).is_some() || fresh.values().any(|n| *n == name) {
            name.push('\'');
        }
        let parity = if odd.iter().any(|o| base_name.starts_with(o)) { Parity::Odd } else { Parity::Even };
        decls.push((name.clone(), parity));
        fresh.insert(v.clone(), name);
    }
    let alg = FreeAlgebra::new(Arc::new(base.extended(&decls)?), theory);
    let bindings: HashMap<String, Element> = fresh
        .iter()
        .map(|(v, n)| Ok((v.clone(), alg.gen_named(n)?)))
        .collect::<Result<_>>()?;
    let residual = alg.substitute(&ml, &bindings)?;
    let holds = residual.is_zero();
    let text = if holds {
        "true".to_string()
    } else {
        format!("false\nresidual: {}", show(&residual, alg.alphabet()))
    };
    let j = json!({
        "identity": holds,
        "residual": ejson::to_value(&residual, alg.alphabet()),
    });
    Ok(Outcome::verdict(holds, text, j))
}

fn concrete_identity(path: &str, expr: &str) -> Result<Outcome> {
    let a = load_algebra(path)?;
    let t = parse(expr, &Alphabet::new::<&str>(&[])?)?;
    guard(term_size(&t))?;
    let r = a.is_identity(&t, Strategy::default())?;
    let text = if r.passed() { "true".to_string() } else { format!("false\n{}", check_text(&a, &r)) };
    Ok(Outcome::verdict(r.passed(), text, serde_json::to_value(&r).expect("report")))
}

fn cmd_kantor(path: &str, direct: bool, jorskob: bool) -> Result<Outcome> {
    let a = load_algebra(path)?;
    let strategy = Strategy::default();
    let mut lines = Vec::new();
    let mut j = serde_json::Map::new();
    let mut verdicts = Vec::new();
    if !jorskob {
        let d = kantor::double_of(&a);
        let r = kantor::super_jordan_check(&d, strategy)?;
        lines.push(format!("double: {}", check_text(&d, &r)));
        verdicts.push(r.passed());
        j.insert("direct".into(), serde_json::to_value(&r).expect("report"));
    }
    if !direct {
        let r = kantor::jorskob_check(&a, strategy)?;
        lines.push(report_text(&a, &r));
        verdicts.push(r.passed());
        j.insert("jorskob".into(), serde_json::to_value(&r).expect("report"));
    }
    let jordan = verdicts.iter().all(|&v| v);
    if verdicts.len() == 2 {
        let agree = verdicts[0] == verdicts[1];
        lines.push(format!("agreement: {agree}"));
        j.insert("agree".into(), json!(agree));
    }
    lines.push(format!("jordan: {jordan}"));
    j.insert("jordan".into(), json!(jordan));
    Ok(Outcome::verdict(jordan, lines.join("\n"), serde_json::Value::Object(j)))
}

fn cmd_farkas(input: &str, gens: &str, trace: bool) -> Result<Outcome> {
    let base = Alphabet::parse_list(gens)?;
    let t = parse(input, &base)?;
    guard(term_size(&t))?;
    let vars: Vec<String> = t.var_degrees().into_keys().collect();
    let mut decls = Vec::new();
    for v in &vars {
        if base.lookup(v).is_some() {
            return Err(Error::Alphabet(format!("variable `?{v}` clashes with a generator")));
        }
        decls.push((v.clone(), Parity::Even));
    }
    let alg = Arc::new(FreeAlgebra::new(Arc::new(base.extended(&decls)?), Theory::GenP));
    let t = t.replace_vars(&|v| alg.alphabet().lookup(v).map(crate::term::gen));
    let g0 = PoissonPolynomial::with_occurring(alg.clone(), alg.normal_form(&t)?)?;
    let r = farkas::farkas_reduce(&g0)?;
    let mut text = Vec::new();
    let mut steps = Vec::new();
    if trace {
        text.push(format!("input: {g0}"));
        for s in &r.trace {
            text.push(format!("{}: {}", s.kind, s.poly));
            steps.push(json!({"step": s.kind.to_string(), "poly": ejson::to_value(s.poly.element(), s.poly.alphabet())}));
        }
    }
    text.push(r.result.to_string());
    let j = if trace { json!({"result": r.result.to_value(), "trace": steps}) } else { r.result.to_value() };
    Ok(Outcome::ok(text.join("\n"), j))
}

fn cmd_eval(path: &str, binds: &[String], expr: &str) -> Result<Outcome> {
    let a = load_algebra(path)?;
    let t = parse(expr, &Alphabet::new::<&str>(&[])?)?;
    guard(term_size(&t))?;
    let mut vars: HashMap<String, Vector> = HashMap::new();
    for b in binds {
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| Error::Json(format!("binding `{b}` is not name=value")))?;
        vars.insert(name.trim().trim_start_matches('?').to_string(), a.parse_vector(value.trim())?);
    }
    let v = a.evaluate(&t, &vars, &HashMap::<GenId, Vector>::new())?;
    let coords: Vec<String> = v.iter().map(crate::scalar::format).collect();
    Ok(Outcome::ok(a.format_vector(&v), json!(coords)))
}

fn cmd_validate(path: &str) -> Result<Outcome> {
    let a = load_algebra(path)?;
    let r = a.validate(Strategy::default())?;
    Ok(Outcome::verdict(r.passed(), report_text(&a, &r), serde_json::to_value(&r).expect("report")))
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Nf { free, expr } => cmd_nf(free, expr),
        Command::Dim { theory, n, table } => cmd_dim(*theory, *n, *table),
        Command::Basis { free, multidegree, units } => cmd_basis(free, multidegree, *units),
        Command::CheckIdentity { algebra: Some(path), expr, .. } => concrete_identity(path, expr),
        Command::CheckIdentity { algebra: None, free: true, theory, gens, odd, expr } => {
            free_identity(*theory, gens, odd, expr)
        }
        Command::CheckIdentity { .. } => Err(Error::Json("check-identity needs --algebra FILE or --free".into())),
        Command::KantorCheck { algebra, direct, jorskob } => cmd_kantor(algebra, *direct, *jorskob),
        Command::Farkas { input, gens, trace } => cmd_farkas(input, gens, *trace),
        Command::Eval { algebra, binds, expr } => cmd_eval(algebra, binds, expr),
        Command::Validate { file } => cmd_validate(file),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::UnknownGenerator(_)
        | Error::Unbound(_)
        | Error::Alphabet(_)
        | Error::Json(_)
        | Error::Malformed(_)
        | Error::Rational(_)
        | Error::DegreeLimit { .. }
        | Error::NotMultilinearizable(_)
        | Error::NotDesignated(_)
        | Error::OddUnsupported
        | Error::NoUnit
        | Error::NotSupercommutative(_)
        | Error::NotAnticommutative(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = std::panic::catch_unwind(|| dispatch(&cli.command));
    match result {
        Ok(Ok(o)) => {
            if cli.json {
                let _ = writeln!(out, "{}", o.json);
            } else {
                let _ = writeln!(out, "{}", o.text);
            }
            o.code
        }
        Ok(Err(e)) => {
            if cli.json {
                let _ = writeln!(err, "{}", json!({"error": e.to_string()}));
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            exit_code(&e)
        }
        Err(_) => {
            let _ = writeln!(err, "error: internal failure");
            EXIT_INTERNAL
        }
    }
}
