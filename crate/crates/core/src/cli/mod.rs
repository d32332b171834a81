//! Command-line front end: subcommands, JSON/CSV emission and exit codes
//! (0 success, 1 violations found, 2 usage or input error).

pub mod expr;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::canonical::DualCanonical;
use crate::error::{Error, Result};
use crate::multiplicativity::verify_theorem_51;
use crate::pbw::{unit_datum, Expansion, PbwBasis};
use crate::qea::Uq;
use crate::quiver::{adapted_word, Orientation, QuiverData};
use crate::rootdata::{parse_int_vec, parse_word, render_vec, CartanDatum, ReducedWord};
use crate::suites::{self, Setup, SuiteReport, Target};

pub use expr::{lower, parse_ast, parse_expr, ExprAst};

pub const SCHEMA: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "qflag", version, about = "PBW bases, dual canonical bases and flag minors of U_q(n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct TypeArg {
    /// Cartan type label such as A3, B2 or D4.
    #[arg(long = "type", value_name = "TYPE")]
    pub cartan_type: String,
}

#[derive(Args, Debug, Clone)]
pub struct TargetArgs {
    #[command(flatten)]
    pub ty: TypeArg,
    /// Reduced word of w_0, e.g. 1,2,1, or `all`.
    #[arg(long, conflicts_with = "orientation")]
    pub word: Option<String>,
    /// Orientation as arrows, e.g. "2>1,2>3", or `all`.
    #[arg(long)]
    pub orientation: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Positive roots, the root sequence of a word and the matrix of d on unit data.
    Rootdata {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        word: Option<String>,
    },
    /// PBW root vectors and coordinates.
    Pbw {
        #[command(subcommand)]
        command: PbwCommand,
    },
    /// Dual canonical basis of one weight space.
    Basis {
        #[command(flatten)]
        target: TargetArgs,
        /// Weight in simple-root coordinates, e.g. 1,1.
        #[arg(long)]
        weight: String,
    },
    /// Flag minors of every prefix.
    FlagMinors {
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Adapted word and Auslander-Reiten data of an orientation.
    Quiver {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        orientation: String,
    },
    /// Runs a verification suite.
    Check {
        /// One of serre, pairing, prop21, cor22, prop31, prop32, prop41, prop42, thm51, remark43, claim43.
        suite: String,
        #[command(flatten)]
        target: TargetArgs,
        /// Height bound.
        #[arg(long, default_value_t = 4)]
        height: i64,
        /// Also count q-commuting pairs outside the adapted monomials (thm51).
        #[arg(long)]
        exploratory: bool,
        /// Prefix word for remark43.
        #[arg(long, default_value = "2,1,3,2")]
        prefix: String,
    },
    /// Scans all pairs of dual canonical elements for q-commutation and multiplicativity.
    MultScan {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, default_value_t = 4)]
        height: i64,
        #[arg(long)]
        exploratory: bool,
        /// Include one record per q-commuting pair.
        #[arg(long)]
        pairs: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum PbwCommand {
    /// Root vectors E_beta for the word.
    Roots {
        #[command(flatten)]
        target: TargetArgs,
    },
    /// PBW (or dual PBW) coordinates of an expression.
    Coords {
        #[command(flatten)]
        target: TargetArgs,
        /// Expression such as "E1*E2 - q^-1*E2*E1".
        #[arg(long)]
        expr: String,
        /// Coordinates in the dual PBW basis instead.
        #[arg(long)]
        dual: bool,
    },
}

/// A result: JSON payload, CSV table and whether violations were found.
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub violations: bool,
}

impl Output {
    fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Output { json, header: header.iter().map(|s| s.to_string()).collect(), rows, violations: false }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut map = Map::new();
                map.insert("schema".into(), json!(SCHEMA));
                if let Value::Object(m) = &self.json {
                    map.extend(m.clone());
                } else {
                    map.insert("result".into(), self.json.clone());
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
                w.write_record(&self.header).map_err(io)?;
                for r in &self.rows {
                    w.write_record(r).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
                Ok(String::from_utf8(bytes).expect("utf-8"))
            }
        }
    }
}

fn datum(ty: &TypeArg) -> Result<CartanDatum> {
    CartanDatum::from_label(&ty.cartan_type)
}

fn targets(d: &CartanDatum, t: &TargetArgs) -> Result<Vec<Target>> {
    match (&t.word, &t.orientation) {
        (Some(w), None) if w == "all" => Ok(d.all_longest_words().into_iter().map(Target::Word).collect()),
        (Some(w), None) => Ok(vec![Target::Word(parse_word(w)?)]),
        (None, Some(o)) if o == "all" => Ok(Orientation::all(d)?.into_iter().map(Target::Orientation).collect()),
        (None, Some(o)) => Ok(vec![Target::Orientation(Orientation::parse(d, o)?)]),
        (None, None) => Err(Error::InvalidArgument("one of --word or --orientation is required".into())),
        (Some(_), Some(_)) => Err(Error::InvalidArgument("--word and --orientation are exclusive".into())),
    }
}

fn single_target(d: &CartanDatum, t: &TargetArgs) -> Result<Target> {
    let mut v = targets(d, t)?;
    if v.len() != 1 {
        return Err(Error::InvalidArgument("this command takes a single word or orientation".into()));
    }
    Ok(v.remove(0))
}

fn basis_for(d: &CartanDatum, t: &TargetArgs) -> Result<Arc<DualCanonical>> {
    Ok(Setup::new(d, &single_target(d, t)?)?.basis)
}

fn expansion_json(e: &Expansion) -> Value {
    Value::Array(e.iter().map(|(m, c)| json!({ "datum": m, "coeff": c.to_string() })).collect())
}

fn expansion_text(e: &Expansion) -> String {
    let parts: Vec<String> = e.iter().map(|(m, c)| format!("{}:{c}", render_vec(m))).collect();
    parts.join("; ")
}

fn rootdata(ty: &TypeArg, word: &Option<String>) -> Result<Output> {
    let d = datum(ty)?;
    let w = match word {
        Some(w) => ReducedWord::new(&d, parse_word(w)?)?,
        None => d.longest_word(),
    };
    let n = w.len();
    let pbw = PbwBasis::new(Arc::new(Uq::new(d.clone())), w.clone())?;
    let dm: Vec<Vec<i64>> = (0..n)
        .map(|k| (0..n).map(|l| pbw.d_form(&unit_datum(n, k + 1), &unit_datum(n, l + 1))).collect())
        .collect();
    let cartan: Vec<Vec<i64>> = (1..=d.rank()).map(|i| (1..=d.rank()).map(|j| d.cartan(i, j)).collect()).collect();
    let json = json!({
        "type": d.cartan_type().to_string(),
        "cartan_matrix": cartan,
        "positive_roots": d.positive_roots(),
        "word": w.word(),
        "betas": w.betas(),
        "d_matrix": dm,
    });
    let rows = (0..n)
        .map(|k| {
            let mut r = vec![(k + 1).to_string(), w.letter(k + 1).to_string(), render_vec(w.beta(k + 1))];
            r.extend(dm[k].iter().map(|x| x.to_string()));
            r
        })
        .collect();
    let mut header = vec!["k".to_string(), "letter".into(), "beta".into()];
    header.extend((1..=n).map(|l| format!("d_{l}")));
    let mut o = Output::new(json, &[], rows);
    o.header = header;
    Ok(o)
}

fn pbw_roots(t: &TargetArgs) -> Result<Output> {
    let d = datum(&t.ty)?;
    let dc = basis_for(&d, t)?;
    let pbw = dc.pbw();
    let w = pbw.word();
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for k in 1..=w.len() {
        let e = pbw.root_vector(k)?.render('E');
        items.push(json!({ "k": k, "letter": w.letter(k), "beta": w.beta(k), "root_vector": e }));
        rows.push(vec![k.to_string(), w.letter(k).to_string(), render_vec(w.beta(k)), e]);
    }
    let json = json!({ "type": d.cartan_type().to_string(), "word": w.word(), "root_vectors": items });
    Ok(Output::new(json, &["k", "letter", "beta", "root_vector"], rows))
}

fn pbw_coords(t: &TargetArgs, text: &str, dual: bool) -> Result<Output> {
    let d = datum(&t.ty)?;
    let dc = basis_for(&d, t)?;
    let x = parse_expr(&d, text)?;
    let e = if dual { dc.pbw().dual_pbw_coordinates(&x)? } else { dc.pbw().pbw_coordinates(&x)? };
    let json = json!({
        "type": d.cartan_type().to_string(),
        "word": dc.pbw().word().word(),
        "expr": x.render('E'),
        "basis": if dual { "dual_pbw" } else { "pbw" },
        "coordinates": expansion_json(&e),
    });
    let rows = e.iter().map(|(m, c)| vec![render_vec(m), c.to_string()]).collect();
    Ok(Output::new(json, &["datum", "coeff"], rows))
}

fn basis(t: &TargetArgs, weight: &str) -> Result<Output> {
    let d = datum(&t.ty)?;
    let mu = parse_int_vec(weight)?;
    if mu.len() != d.rank() || mu.iter().any(|&x| x < 0) {
        return Err(Error::InvalidArgument(format!("weight must have {} non-negative entries", d.rank())));
    }
    let dc = basis_for(&d, t)?;
    let space = dc.space(&mu)?;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for m in &space.data {
        let e = dc.element_expr(m)?.render('E');
        let dp = dc.dual_pbw_expansion(m)?;
        items.push(json!({ "datum": m, "element": e, "dual_pbw": expansion_json(&dp) }));
        rows.push(vec![render_vec(m), e, expansion_text(&dp)]);
    }
    let json = json!({
        "type": d.cartan_type().to_string(),
        "word": dc.pbw().word().word(),
        "weight": mu,
        "elements": items,
    });
    Ok(Output::new(json, &["datum", "element", "dual_pbw"], rows))
}

fn flag_minors(t: &TargetArgs) -> Result<Output> {
    let d = datum(&t.ty)?;
    let dc = basis_for(&d, t)?;
    let w = dc.pbw().word().clone();
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for k in 1..=w.len() {
        let m = dc.flag_datum(k)?;
        let weight = d.minor_weight(&w.word()[..k], w.letter(k));
        let e = dc.element_expr(&m)?.render('E');
        items.push(json!({ "k": k, "letter": w.letter(k), "weight": weight, "datum": m, "element": e }));
        rows.push(vec![k.to_string(), w.letter(k).to_string(), render_vec(&weight), render_vec(&m), e]);
    }
    let json = json!({ "type": d.cartan_type().to_string(), "word": w.word(), "flag_minors": items });
    Ok(Output::new(json, &["k", "letter", "weight", "datum", "element"], rows))
}

fn quiver(ty: &TypeArg, orientation: &str) -> Result<Output> {
    let d = datum(ty)?;
    let o = Orientation::parse(&d, orientation)?;
    let q = QuiverData::new(&d, &o, adapted_word(&d, &o)?)?;
    let n = q.len();
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for k in 1..=n {
        let hom: Vec<i64> = (1..=n).map(|l| q.hom_indec(k, l)).collect();
        let ext: Vec<i64> = (1..=n).map(|l| q.ext_indec(k, l)).collect();
        let tau = q.tau(k);
        items.push(json!({
            "k": k,
            "vertex": q.word.letter(k),
            "dim_vector": q.word.beta(k),
            "tau": tau,
            "hom": hom,
            "ext": ext,
        }));
        rows.push(vec![
            k.to_string(),
            q.word.letter(k).to_string(),
            render_vec(q.word.beta(k)),
            tau.map(|t| t.to_string()).unwrap_or_default(),
            render_vec(&hom),
            render_vec(&ext),
        ]);
    }
    let json = json!({
        "type": d.cartan_type().to_string(),
        "orientation": o.to_string(),
        "sinks": o.sinks(),
        "adapted_word": q.word.word(),
        "indecomposables": items,
    });
    Ok(Output::new(json, &["k", "vertex", "dim_vector", "tau", "hom", "ext"], rows))
}

fn run_suite(d: &CartanDatum, suite: &str, t: &Target, h: i64, exploratory: bool) -> Result<SuiteReport> {
    let s = Setup::new(d, t)?;
    match suite {
        "pairing" => suites::pairing(&s, h),
        "prop21" => suites::prop21(&s),
        "cor22" => suites::cor22(&s, h),
        "prop31" => suites::prop31(&s, h),
        "prop32" => suites::prop32(&s, h),
        "prop41" => suites::prop41(&s),
        "prop42" => suites::prop42(&s, h),
        "thm51" => suites::thm51(&s, h, exploratory),
        _ => Err(Error::InvalidArgument(format!("unknown suite `{suite}`"))),
    }
}

fn reports_output(reports: Vec<SuiteReport>) -> Output {
    let violations = reports.iter().any(|r| !r.passed());
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.suite.clone(),
                r.cartan_type.clone(),
                r.word.as_ref().map(|w| render_vec(w)).unwrap_or_default(),
                r.orientation.clone().unwrap_or_default(),
                r.height.map(|h| h.to_string()).unwrap_or_default(),
                r.checks.to_string(),
                r.violations.len().to_string(),
            ]
        })
        .collect();
    let json = json!({
        "passed": !violations,
        "reports": serde_json::to_value(&reports).expect("serializable"),
    });
    let mut o = Output::new(json, &["suite", "type", "word", "orientation", "height", "checks", "violations"], rows);
    o.violations = violations;
    o
}

fn check(suite: &str, t: &TargetArgs, h: i64, exploratory: bool, prefix: &str) -> Result<Output> {
    if h < 0 {
        return Err(Error::InvalidArgument("--height must be non-negative".into()));
    }
    let d = datum(&t.ty)?;
    let reports = match suite {
        "serre" => vec![suites::serre(&d, h)],
        "claim43" => vec![suites::claim43(&d)?],
        "remark43" => vec![suites::remark43(&d, &parse_word(prefix)?)?],
        s if suites::SUITES.contains(&s) => {
            targets(&d, t)?.iter().map(|x| run_suite(&d, s, x, h, exploratory)).collect::<Result<Vec<_>>>()?
        }
        s => return Err(Error::InvalidArgument(format!("unknown suite `{s}`; expected one of {}", suites::SUITES.join(", ")))),
    };
    Ok(reports_output(reports))
}

fn mult_scan(t: &TargetArgs, h: i64, exploratory: bool, pairs: bool) -> Result<Output> {
    let d = datum(&t.ty)?;
    let mut scans = Vec::new();
    let mut rows = Vec::new();
    let mut violations = false;
    for target in targets(&d, t)? {
        let s = Setup::new(&d, &target)?;
        let mut r = verify_theorem_51(s.basis.clone(), h, exploratory)?;
        r.orientation = s.orientation.as_ref().map(|o| o.to_string());
        if !pairs {
            r.pairs.clear();
        }
        violations |= !r.violations.is_empty();
        rows.push(vec![
            render_vec(&r.word),
            r.orientation.clone().unwrap_or_default(),
            r.height.to_string(),
            r.adapted_monomials.to_string(),
            r.pairs_scanned.to_string(),
            r.q_commuting.to_string(),
            r.multiplicative.to_string(),
            r.violations.len().to_string(),
        ]);
        scans.push(serde_json::to_value(&r).expect("serializable"));
    }
    let json = json!({ "type": d.cartan_type().to_string(), "passed": !violations, "scans": scans });
    let mut o = Output::new(
        json,
        &["word", "orientation", "height", "adapted_monomials", "pairs_scanned", "q_commuting", "multiplicative", "violations"],
        rows,
    );
    o.violations = violations;
    Ok(o)
}

/// Executes a parsed command.
pub fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Rootdata { ty, word } => rootdata(ty, word),
        Command::Pbw { command: PbwCommand::Roots { target } } => pbw_roots(target),
        Command::Pbw { command: PbwCommand::Coords { target, expr, dual } } => pbw_coords(target, expr, *dual),
        Command::Basis { target, weight } => basis(target, weight),
        Command::FlagMinors { target } => flag_minors(target),
        Command::Quiver { ty, orientation } => quiver(ty, orientation),
        Command::Check { suite, target, height, exploratory, prefix } => check(suite, target, *height, *exploratory, prefix),
        Command::MultScan { target, height, exploratory, pairs } => mult_scan(target, *height, *exploratory, *pairs),
    }
}

/// Parses arguments, runs, writes output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = match execute(&cli).and_then(|o| Ok((o.render(cli.format)?, o.violations))) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let written = match &cli.output {
        Some(p) => std::fs::write(p, &out.0),
        None => std::io::stdout().lock().write_all(out.0.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    i32::from(out.1)
}

/// Parses `args` (without the program name) and returns the rendered output and
/// whether violations were found. `--output` is ignored.
pub fn run_to_string<I, T>(args: I) -> Result<(String, bool)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("qflag")).chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::InvalidArgument(e.to_string().trim_end().to_string()))?;
    let out = execute(&cli)?;
    Ok((out.render(cli.format)?, out.violations))
}
