//! Command-line front end.
//!
//! [`run`] takes the argument vector and returns the exit code with the text
//! destined for stdout and stderr, so the binary and the tests share one path.

use std::fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::arith::{
    genus, is_galois, isom_forms, purely_cubic_root, signature, ArithError, BaseField,
    ConstantStatus, Extension, Family, IsomResult, NonIsomorphism, Ramified, SearchBase,
    SearchBudget, Witness,
};
use crate::canon::{reduce_cubic, shanks_to_canonical, CanonicalForm, Cubic, Reduction};
use crate::ffcubic::{decompose_any, Shape};
use crate::ffield::{Field, FieldElem, FieldError};
use crate::places::{places_up_to, PlaceError};
use crate::polyring::{Poly, RatFunc, Scalar};

pub mod parse;

pub use parse::{parse_cubic, parse_expr, parse_ratfunc, Expr, ParseError, Sym};

/// Version of the JSON output format; see `schema/cubic-ext.v1.schema.json`.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "cubic-ext", version, about = "Cubic extensions of F_q and F_q(x)")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Constant field, as "q" or "p^m".
    #[arg(long, global = true, default_value = "2")]
    field: String,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest place degree listed by `splitting` and compared by `isom`.
    #[arg(long, global = true, default_value_t = 3)]
    max_degree: usize,
    /// Height bound for witness searches.
    #[arg(long, global = true, default_value_t = 6)]
    bound: usize,
    /// Whether `x` is a variable (function) or absent (finite).
    #[arg(long, global = true, value_enum, default_value_t = BaseChoice::Auto)]
    base: BaseChoice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BaseChoice {
    Auto,
    Finite,
    Function,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a cubic to its canonical form.
    Classify { cubic: String },
    /// Factorization shape and factors.
    Factor { cubic: String },
    /// Compare the extensions generated by two cubics.
    Isom { first: String, second: String },
    /// Galois test.
    Galois { cubic: String },
    /// Signatures at all places up to --max-degree.
    Splitting { cubic: String },
    /// Genus and ramification.
    Genus { cubic: String },
    /// Constant field extension test.
    Constant { cubic: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Factor { .. } => "factor",
            Command::Isom { .. } => "isom",
            Command::Galois { .. } => "galois",
            Command::Splitting { .. } => "splitting",
            Command::Genus { .. } => "genus",
            Command::Constant { .. } => "constant",
        }
    }

    fn exprs(&self) -> Vec<&str> {
        match self {
            Command::Isom { first, second } => vec![first, second],
            Command::Classify { cubic }
            | Command::Factor { cubic }
            | Command::Galois { cubic }
            | Command::Splitting { cubic }
            | Command::Genus { cubic }
            | Command::Constant { cubic } => vec![cubic],
        }
    }

    fn needs_function_base(&self) -> bool {
        matches!(self, Command::Splitting { .. } | Command::Genus { .. } | Command::Constant { .. })
    }
}

/// Failure classes, one per exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Parse { message: String, position: Option<usize> },
    Math(String),
    Size(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Math(_) => 3,
            CliError::Size(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Math(_) => "math",
            CliError::Size(_) => "size",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse { message, .. } | CliError::Math(message) | CliError::Size(message) => message,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.message())
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        let position = match &e {
            ParseError::Syntax { pos, .. } | ParseError::UnboundSymbol { pos, .. } => Some(*pos),
            _ => None,
        };
        match e {
            ParseError::DivisionByZero => CliError::Math(e.to_string()),
            _ => CliError::Parse { message: e.to_string(), position },
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::SizeExceeded { .. } => CliError::Size(e.to_string()),
            FieldError::NotPrime(_) | FieldError::ZeroDegree => {
                CliError::Parse { message: format!("bad field: {e}"), position: None }
            }
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<PlaceError> for CliError {
    fn from(e: PlaceError) -> Self {
        match e {
            PlaceError::TooMany(_) => CliError::Size(e.to_string()),
            PlaceError::Field(f) => f.into(),
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::SearchTooLarge(_) => CliError::Size(e.to_string()),
            ArithError::Place(p) => p.into(),
            ArithError::Field(f) => f.into(),
            _ => CliError::Math(e.to_string()),
        }
    }
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let command = cli.cmd.name();
    match execute(&cli) {
        Ok((input, result)) => {
            let doc = json!({ "command": command, "input": input, "result": result });
            let stdout = if cli.opts.json {
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
                s.push('\n');
                s
            } else {
                render_text(&doc)
            };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(err) => {
            let stderr = if cli.opts.json {
                let mut obj = Map::new();
                obj.insert("kind".into(), json!(err.kind()));
                obj.insert("message".into(), json!(err.message()));
                if let CliError::Parse { position: Some(p), .. } = &err {
                    obj.insert("position".into(), json!(p));
                }
                let doc = json!({ "command": command, "error": Value::Object(obj) });
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
                s.push('\n');
                s
            } else {
                format!("error: {err}\n")
            };
            Outcome { code: err.exit_code(), stdout: String::new(), stderr }
        }
    }
}

fn field_label(f: Field) -> String {
    if f.degree() == 1 {
        f.p().to_string()
    } else {
        format!("{}^{}", f.p(), f.degree())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Base {
    Finite,
    Function,
}

fn execute(cli: &Cli) -> Result<(Value, Value), CliError> {
    let opts = &cli.opts;
    let field = Field::from_spec(&opts.field)?;
    let exprs = cli.cmd.exprs();
    let mut mentions_x = false;
    for s in &exprs {
        mentions_x |= parse_expr(s)?.mentions(Sym::FunctionVar);
    }
    let base = match opts.base {
        BaseChoice::Finite if cli.cmd.needs_function_base() => {
            return Err(CliError::Parse {
                message: format!("{} needs the function field base", cli.cmd.name()),
                position: None,
            })
        }
        BaseChoice::Finite => Base::Finite,
        BaseChoice::Function => Base::Function,
        BaseChoice::Auto if mentions_x || cli.cmd.needs_function_base() => Base::Function,
        BaseChoice::Auto => Base::Finite,
    };
    let mut input = Map::new();
    input.insert("field".into(), json!(field_label(field)));
    input.insert("base".into(), json!(if base == Base::Finite { "finite" } else { "function" }));
    input.insert("exprs".into(), json!(exprs));
    match &cli.cmd {
        Command::Splitting { .. } => {
            input.insert("max_degree".into(), json!(opts.max_degree));
        }
        Command::Isom { .. } => {
            input.insert("bound".into(), json!(opts.bound));
        }
        _ => {}
    }

    let cubics = exprs
        .iter()
        .map(|s| {
            let [e, f, g] = parse_cubic(s, field, base == Base::Function)?;
            Ok(Cubic::new(e, f, g))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let budget = SearchBudget {
        max_height: opts.bound,
        max_place_degree: opts.bound.min(opts.max_degree),
        ..SearchBudget::default()
    };

    let result = match base {
        Base::Finite => {
            let cubics: Vec<Cubic<FieldElem>> = cubics.iter().map(to_finite).collect();
            finite_command(&cli.cmd, &cubics, &budget)?
        }
        Base::Function => function_command(&cli.cmd, &cubics, opts.max_degree, &budget)?,
    };
    Ok((Value::Object(input), result))
}

fn to_finite(c: &Cubic<RatFunc>) -> Cubic<FieldElem> {
    let k = |r: &RatFunc| r.as_constant().expect("parsed without x");
    Cubic::new(k(&c.e), k(&c.f), k(&c.g))
}

fn poly_str<T: Scalar>(p: &Poly<T>) -> String {
    p.fmt_var("X")
}

fn form_json<T: Scalar + fmt::Display>(red: &Reduction<T>) -> Value {
    let mut m = Map::new();
    m.insert("form".into(), json!(red.form.name()));
    match &red.form {
        CanonicalForm::Reducible { root, quadratic: (b, c) } => {
            m.insert("root".into(), json!(root.to_string()));
            let q = Poly::new(vec![c.clone(), b.clone(), b.one_like()], b.zero_like());
            m.insert("quadratic".into(), json!(poly_str(&q)));
        }
        other => {
            m.insert("a".into(), json!(other.param().expect("parametrized form").to_string()));
        }
    }
    m.insert("canonical".into(), json!(poly_str(&red.form.to_cubic().to_poly())));
    m.insert("map".into(), json!(red.map.to_string()));
    Value::Object(m)
}

fn brief_form<T: Scalar + fmt::Display>(form: &CanonicalForm<T>) -> Value {
    json!({
        "form": form.name(),
        "a": form.param().map(|a| a.to_string()),
    })
}

fn not_irreducible<T>(form: &CanonicalForm<T>) -> Option<CliError> {
    match form {
        CanonicalForm::Reducible { .. } => Some(ArithError::Reducible.into()),
        CanonicalForm::InseparablePure(_) => Some(ArithError::Inseparable.into()),
        _ => None,
    }
}

fn finite_reduce(c: &Cubic<FieldElem>) -> Result<Reduction<FieldElem>, CliError> {
    let red = reduce_cubic(c);
    if let Some(e) = not_irreducible(&red.form) {
        return Err(e);
    }
    if decompose_any(c).shape() != Shape::Irreducible {
        return Err(ArithError::Reducible.into());
    }
    Ok(red)
}

fn finite_command(
    cmd: &Command,
    cubics: &[Cubic<FieldElem>],
    budget: &SearchBudget,
) -> Result<Value, CliError> {
    let elems = |v: Vec<FieldElem>| v.iter().map(|r| r.to_string()).collect::<Vec<_>>();
    match cmd {
        Command::Classify { .. } => {
            let red = reduce_cubic(&cubics[0]);
            let mut v = form_json(&red);
            let irreducible = decompose_any(&cubics[0]).shape() == Shape::Irreducible;
            v.as_object_mut().unwrap().insert("irreducible".into(), json!(irreducible));
            Ok(v)
        }
        Command::Factor { .. } => {
            let d = decompose_any(&cubics[0]);
            Ok(json!({
                "shape": d.shape().to_string(),
                "factors": d.factors().iter().map(poly_str).collect::<Vec<_>>(),
                "roots": elems(d.roots()),
            }))
        }
        Command::Isom { .. } => {
            let r1 = finite_reduce(&cubics[0])?;
            let r2 = finite_reduce(&cubics[1])?;
            isom_json(&r1.form, &r2.form, budget)
        }
        Command::Galois { .. } => {
            let red = finite_reduce(&cubics[0])?;
            galois_json(&cubics[0], &red.form)
        }
        _ => unreachable!("function base enforced"),
    }
}

fn function_command(
    cmd: &Command,
    cubics: &[Cubic<RatFunc>],
    max_degree: usize,
    budget: &SearchBudget,
) -> Result<Value, CliError> {
    let ext = |c: &Cubic<RatFunc>| -> Result<Extension, CliError> { Ok(Extension::from_cubic(c)?.0) };
    match cmd {
        Command::Classify { .. } => {
            let red = reduce_cubic(&cubics[0]);
            let mut v = form_json(&red);
            let irreducible = match &red.form {
                CanonicalForm::Reducible { .. } => false,
                _ => crate::arith::has_rational_root(&cubics[0])?.is_none(),
            };
            v.as_object_mut().unwrap().insert("irreducible".into(), json!(irreducible));
            Ok(v)
        }
        Command::Factor { .. } => {
            let root = crate::arith::has_rational_root(&cubics[0])?;
            Ok(json!({
                "shape": if root.is_some() { "reducible" } else { "irreducible" },
                "rational_root": root.map(|r| r.to_string()),
            }))
        }
        Command::Isom { .. } => {
            let (l1, l2) = (ext(&cubics[0])?, ext(&cubics[1])?);
            isom_json(&l1.form(), &l2.form(), budget)
        }
        Command::Galois { .. } => {
            let l = ext(&cubics[0])?;
            galois_json(&cubics[0], &l.form())
        }
        Command::Splitting { .. } => {
            let l = ext(&cubics[0])?;
            let mut rows = Vec::new();
            for p in places_up_to(l.base(), max_degree)? {
                let s = signature(&l, &p)?;
                rows.push(json!({ "place": p.to_string(), "degree": p.degree(), "signature": s.as_str() }));
            }
            Ok(json!({ "form": l.family().name(), "a": l.param().to_string(), "places": rows }))
        }
        Command::Genus { .. } => {
            let l = ext(&cubics[0])?;
            let g = genus(&l)?;
            let list = |v: &[Ramified]| {
                v.iter().map(|r| json!({ "place": r.place.to_string(), "d": r.d })).collect::<Vec<_>>()
            };
            let names = |v: &[Ramified]| v.iter().map(|r| r.place.to_string()).collect::<Vec<_>>();
            let rep = l.report();
            let mut m = Map::new();
            m.insert("genus".into(), json!(g));
            m.insert("fully_ramified".into(), json!(list(&rep.fully)));
            m.insert("partially_ramified".into(), json!(list(&rep.partial)));
            match l.family() {
                Family::Pure => {}
                Family::DepressedTrace => {
                    m.insert("S".into(), json!(names(&rep.partial)));
                }
                Family::Char3 => {
                    m.insert("S".into(), json!(names(&rep.fully)));
                    m.insert("T".into(), json!(names(&rep.partial)));
                }
            }
            m.insert("form".into(), json!(l.family().name()));
            m.insert("a".into(), json!(l.param().to_string()));
            Ok(Value::Object(m))
        }
        Command::Constant { .. } => {
            let l = ext(&cubics[0])?;
            Ok(match l.constant_status() {
                ConstantStatus::Constant(u) => json!({
                    "constant": true,
                    "u": u.map(|u| u.to_string()),
                    "ramified_place": null,
                }),
                ConstantStatus::Geometric(p) => json!({
                    "constant": false,
                    "u": null,
                    "ramified_place": p.to_string(),
                }),
            })
        }
    }
}

fn witness_json<T: fmt::Display>(w: &Witness<T>) -> Value {
    match w {
        Witness::Pure { j, c } => json!({ "kind": "pure", "j": j, "c": c.to_string() }),
        Witness::Depressed { alpha, beta } => {
            json!({ "kind": "depressed", "alpha": alpha.to_string(), "beta": beta.to_string() })
        }
        Witness::Char3 { j, w } => json!({ "kind": "char3", "j": j, "w": w.to_string() }),
        Witness::ViaPure { c1, c2, j, c } => json!({
            "kind": "via-pure",
            "c1": c1.to_string(),
            "c2": c2.to_string(),
            "j": j,
            "c": c.to_string(),
        }),
    }
}

fn reason_json(r: &NonIsomorphism) -> Value {
    match r {
        NonIsomorphism::CubeClass => json!({ "kind": "cube-class" }),
        NonIsomorphism::PurityMismatch => json!({ "kind": "purity-mismatch" }),
        NonIsomorphism::Exhausted => json!({ "kind": "exhausted" }),
        NonIsomorphism::FamilyMismatch => json!({ "kind": "family-mismatch" }),
        NonIsomorphism::Genus(a, b) => json!({ "kind": "genus", "left": a, "right": b }),
        NonIsomorphism::Signature { place, left, right } => json!({
            "kind": "signature",
            "place": place.to_string(),
            "left": left.as_str(),
            "right": right.as_str(),
        }),
    }
}

fn isom_json<T: SearchBase + fmt::Display>(
    f1: &CanonicalForm<T>,
    f2: &CanonicalForm<T>,
    budget: &SearchBudget,
) -> Result<Value, CliError> {
    let forms = json!([brief_form(f1), brief_form(f2)]);
    Ok(match isom_forms(f1, f2, budget)? {
        IsomResult::Isomorphic(w) => {
            json!({ "forms": forms, "verdict": "isomorphic", "witness": witness_json(&w) })
        }
        IsomResult::NotIsomorphic(r) => {
            json!({ "forms": forms, "verdict": "not-isomorphic", "reason": reason_json(&r) })
        }
        IsomResult::Undetermined => json!({ "forms": forms, "verdict": "undetermined" }),
    })
}

fn galois_json<T: BaseField + fmt::Display>(c: &Cubic<T>, form: &CanonicalForm<T>) -> Result<Value, CliError> {
    let mut m = Map::new();
    m.insert("form".into(), json!(form.name()));
    m.insert("a".into(), json!(form.param().map(|a| a.to_string())));
    m.insert("galois".into(), json!(is_galois(form)?));
    let pcr = match form {
        CanonicalForm::DepressedTrace(a) => purely_cubic_root(a).map(|c| c.to_string()),
        _ => None,
    };
    m.insert("purely_cubic_root".into(), json!(pcr));
    // X^3 + aX^2 - (a+3)X + 1
    let e = &c.e;
    let is_shanks = e.characteristic() != 3
        && c.g.is_one()
        && c.f == -(e.clone() + e.from_int_like(3));
    let shanks = if is_shanks {
        match shanks_to_canonical(e) {
            Ok((param, map)) => json!({ "a": e.to_string(), "param": param.to_string(), "map": map.to_string() }),
            Err(_) => Value::Null,
        }
    } else {
        Value::Null
    };
    m.insert("shanks".into(), shanks);
    Ok(Value::Object(m))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(", "),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar_text(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn table_text(out: &mut String, rows: &[Value], indent: &str) {
    let Some(Value::Object(first)) = rows.first() else { return };
    let keys: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| keys.iter().map(|k| scalar_text(&r[k.as_str()])).collect())
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| cells.iter().map(|c| c[i].len()).max().unwrap_or(0).max(k.len()))
        .collect();
    let line = |vals: Vec<&str>| {
        let parts: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:<w$}")).collect();
        format!("{indent}{}\n", parts.join("  ").trim_end())
    };
    out.push_str(&line(keys.iter().map(|k| k.as_str()).collect()));
    for c in &cells {
        out.push_str(&line(c.iter().map(|s| s.as_str()).collect()));
    }
}

fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: {}\n", scalar_text(&doc["command"])));
    out.push_str(&format!("input: {}\n", scalar_text(&doc["input"])));
    if let Value::Object(result) = &doc["result"] {
        for (k, v) in result {
            match v {
                Value::Array(rows) if rows.iter().all(Value::is_object) && !rows.is_empty() => {
                    out.push_str(&format!("{k}:\n"));
                    table_text(&mut out, rows, "  ");
                }
                _ => out.push_str(&format!("{k}: {}\n", scalar_text(v))),
            }
        }
    }
    out
}
