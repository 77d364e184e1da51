//! The `hardy` command line tool.
//!
//! Every command builds a [`Report`] that is printed either as text or, with
//! `--json`, as `{command, inputs, outputs, checks, version}`. Exit status is
//! 0 on success, 1 when a check fails and 2 for usage or domain errors.

pub mod sweeps;
pub mod table;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{GroupTag, Mat2, Rational};
use crate::cfe::{
    expand_all_even, expand_classical, expand_classical_odd, expand_gamma02, expand_theta,
    word_from_matrix, CfKind, ContinuedFraction,
};
use crate::density::{construct, DensityRequest, DensityWitness, Target};
use crate::error::{Error, Result};
use crate::qverify::SeriesParams;
use crate::sums::{
    dedekind_cotangent_numeric, dedekind_hickerson, dedekind_recursive, hardy_s4_direct,
    hardy_s4_from_cfe, hardy_s_direct, hardy_s_from_cfe,
};

pub use table::{table_rows, TableRow};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Witnesses with `c` up to this size are re-checked by direct summation.
const DIRECT_LIMIT: i64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(name = "hardy", version, about = "Hardy and Dedekind sums with subgroup continued fractions")]
pub struct Cli {
    /// Print a JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Absolute tolerance for numeric checks
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Series truncation order for numeric checks
    #[arg(long, global = true)]
    pub terms: Option<usize>,
    /// Upper bound on c for tables and sweeps
    #[arg(long = "max-c", global = true, allow_negative_numbers = true)]
    pub max_c: Option<i64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate s(d, c), S(d, c) or S4(d, c)
    #[command(allow_negative_numbers = true)]
    Sum {
        kind: SumKind,
        #[arg(value_parser = parse_big)]
        d: BigInt,
        #[arg(value_parser = parse_big)]
        c: BigInt,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Expand a rational number, or evaluate an expansion with `eval`
    #[command(allow_negative_numbers = true)]
    Cfe {
        kind: CfeKind,
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Print the convergents as well
        #[arg(long)]
        convergents: bool,
        /// Expansion type for `eval`
        #[arg(long = "as", value_enum)]
        as_kind: Option<ExpansionKind>,
    },
    /// Write a matrix `a,b,c,d` as a word in the generators of a group
    Decompose {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        /// sl2, theta or gamma02; defaults to the smallest group containing it
        #[arg(long, value_parser = parse_group)]
        group: Option<GroupTag>,
    },
    /// Find d/c near x with prescribed sums
    #[command(allow_negative_numbers = true)]
    Density {
        kind: DensityKind,
        /// Target, e.g. `1/2` or `-3`
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        x: Rational,
        /// Positive rational bound on |x - d/c|
        #[arg(long, value_parser = parse_rational)]
        eps: Rational,
        /// Target sum for `s` and `s4`
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i64>,
        /// Even target for S + S4 (`joint`)
        #[arg(long, allow_negative_numbers = true)]
        m1: Option<i64>,
        /// Odd target for S4 (`joint`)
        #[arg(long, allow_negative_numbers = true)]
        m2: Option<i64>,
    },
    /// Run a verification sweep
    Verify {
        suite: VerifySuite,
        /// Random words per numeric suite
        #[arg(long)]
        words: Option<usize>,
        /// Seed for the random words
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print S and S4 with their expansions for 1 <= d < c <= max-c
    Table {
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumKind {
    S,
    HardyS,
    HardyS4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    Cfe,
    Recursive,
    Hickerson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CfeKind {
    Theta,
    Gamma02,
    Classical,
    ClassicalOdd,
    AllEven,
    Eval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExpansionKind {
    Theta,
    Gamma02,
    Classical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DensityKind {
    S,
    S4,
    Joint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifySuite {
    Table,
    Reciprocity,
    Theorem1,
    Corollary,
    Dedekind,
    Qseries,
    Cocycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
}

fn parse_big(s: &str) -> std::result::Result<BigInt, String> {
    s.trim_start_matches('+').parse().map_err(|_| format!("`{s}` is not an integer"))
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_group(s: &str) -> std::result::Result<GroupTag, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    pub failures: usize,
    /// First counterexample, if any.
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs_error: Option<f64>,
}

impl Check {
    pub fn from_failures(name: &str, cases: usize, failures: &[String]) -> Self {
        Check {
            name: name.to_string(),
            pass: failures.is_empty(),
            cases,
            failures: failures.len(),
            error: failures.first().cloned(),
            max_abs_error: None,
        }
    }

    fn single(name: &str, pass: bool, error: impl FnOnce() -> String) -> Self {
        let failures = if pass { vec![] } else { vec![error()] };
        Check::from_failures(name, 1, &failures)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
    pub version: u32,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    fn new(command: &str, inputs: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            outputs: json!({}),
            checks: Vec::new(),
            version: SCHEMA_VERSION,
            text: String::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Parses `args` (program name first), runs the command and prints the
/// result. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", report.text);
            }
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if cli.json {
                let body = json!({ "command": command_name(&cli.command), "error": e.to_string(), "version": SCHEMA_VERSION });
                println!("{}", serde_json::to_string_pretty(&body).expect("error serializes"));
            }
            eprintln!("error: {e}");
            2
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Sum { .. } => "sum",
        Command::Cfe { .. } => "cfe",
        Command::Decompose { .. } => "decompose",
        Command::Density { .. } => "density",
        Command::Verify { .. } => "verify",
        Command::Table { .. } => "table",
    }
}

/// Runs a parsed command without printing anything.
pub fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Sum { kind, d, c, method } => cmd_sum(*kind, d, c, *method),
        Command::Cfe { kind, x, convergents, as_kind } => cmd_cfe(*kind, x, *convergents, *as_kind),
        Command::Decompose { matrix, group } => cmd_decompose(matrix, *group),
        Command::Density { kind, x, eps, m, m1, m2 } => cmd_density(*kind, x, eps, *m, *m1, *m2),
        Command::Verify { suite, words, seed } => cmd_verify(cli, *suite, *words, *seed),
        Command::Table { format } => cmd_table(cli.max_c.unwrap_or(10), *format),
    }
}

fn small(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::OutOfRange(format!("{what} = {x} is too large for direct summation")))
}

pub fn cmd_sum(kind: SumKind, d: &BigInt, c: &BigInt, method: Option<Method>) -> Result<Report> {
    let method = method.unwrap_or(match kind {
        SumKind::S => Method::Recursive,
        SumKind::HardyS | SumKind::HardyS4 => Method::Cfe,
    });
    let mut report = Report::new("sum", json!({ "kind": kind, "d": big_json(d), "c": big_json(c), "method": method }));
    let value = match (kind, method) {
        (SumKind::S, Method::Recursive) => {
            let v = dedekind_recursive(d.clone(), c.clone())?;
            json!({ "value": v.to_string(), "approx": v.to_f64() })
        }
        (SumKind::S, Method::Hickerson) => {
            let v = dedekind_hickerson(d.clone(), c.clone())?;
            json!({ "value": v.to_string(), "approx": v.to_f64() })
        }
        (SumKind::S, Method::Direct) => {
            let v = dedekind_cotangent_numeric(small(d, "d")?, small(c, "c")?)?;
            json!({ "value": format!("{v:.15}"), "approx": v })
        }
        (SumKind::HardyS, Method::Cfe) => json!({ "value": big_json(&hardy_s_from_cfe(d.clone(), c.clone())?) }),
        (SumKind::HardyS4, Method::Cfe) => json!({ "value": big_json(&hardy_s4_from_cfe(d.clone(), c.clone())?) }),
        (SumKind::HardyS, Method::Direct) => json!({ "value": hardy_s_direct(small(d, "d")?, small(c, "c")?)? }),
        (SumKind::HardyS4, Method::Direct) => json!({ "value": hardy_s4_direct(small(d, "d")?, small(c, "c")?)? }),
        (kind, method) => {
            return Err(Error::OutOfRange(format!(
                "method {} does not apply to {}",
                serde_json::to_value(method).expect("enum").as_str().unwrap_or("?"),
                serde_json::to_value(kind).expect("enum").as_str().unwrap_or("?"),
            )))
        }
    };
    match &value["value"] {
        Value::String(s) => report.line(s),
        other => report.line(other.to_string()),
    }
    report.outputs = value;
    Ok(report)
}

fn expansion_json(cf: &ContinuedFraction, convergents: bool) -> Result<Value> {
    let mut out = json!({
        "expansion": cf.to_string(),
        "compressed": cf.compressed().to_string(),
        "kind": cf.kind(),
        "length": cf.len(),
        "length_parity": cf.length_parity(),
        "value": cf.value()?.to_string(),
        "word": cf.to_word().to_string(),
    });
    if convergents {
        let conv = cf.convergents()?;
        let pairs: Vec<Value> = conv.pairs().iter().map(|(p, q)| json!([big_json(p), big_json(q)])).collect();
        out["convergents"] = Value::Array(pairs);
    }
    Ok(out)
}

pub fn cmd_cfe(kind: CfeKind, x: &str, convergents: bool, as_kind: Option<ExpansionKind>) -> Result<Report> {
    let mut report = Report::new("cfe", json!({ "kind": kind, "x": x }));
    let cf = if kind == CfeKind::Eval {
        match as_kind {
            Some(ExpansionKind::Theta) => ContinuedFraction::parse_as(CfKind::ThetaNeg, x)?,
            Some(ExpansionKind::Gamma02) => ContinuedFraction::parse_as(CfKind::Gamma02Pos, x)?,
            Some(ExpansionKind::Classical) => ContinuedFraction::parse_as(CfKind::Classical, x)?,
            None => x.parse()?,
        }
    } else {
        let r: Rational = x.parse()?;
        match kind {
            CfeKind::Theta => expand_theta(&r)?,
            CfeKind::Gamma02 => expand_gamma02(&r)?,
            CfeKind::Classical => expand_classical(&r)?,
            CfeKind::ClassicalOdd => expand_classical_odd(&r)?,
            CfeKind::AllEven => expand_all_even(&r)?,
            CfeKind::Eval => unreachable!("handled above"),
        }
    };
    let out = expansion_json(&cf, convergents)?;
    if kind == CfeKind::Eval {
        report.line(format!("{}", cf.value()?));
    } else {
        report.line(cf.to_string());
        let expected: Rational = x.parse()?;
        let value = cf.value()?;
        report.checks.push(Check::single("evaluates", value == expected, || format!("expansion gives {value}")));
    }
    report.line(format!("word: {}", out["word"].as_str().unwrap_or_default()));
    if let Some(pairs) = out.get("convergents").and_then(Value::as_array) {
        let shown: Vec<String> = pairs.iter().map(|p| format!("{}/{}", p[0], p[1])).collect();
        report.line(format!("convergents: {}", shown.join(", ")));
    }
    report.outputs = out;
    Ok(report)
}

pub fn cmd_decompose(matrix: &str, group: Option<GroupTag>) -> Result<Report> {
    let m: Mat2 = matrix.parse()?;
    let tag = match group {
        Some(tag) => tag,
        None => [GroupTag::Theta, GroupTag::Gamma02]
            .into_iter()
            .find(|t| t.contains(&m))
            .unwrap_or(GroupTag::SL2),
    };
    let mut report = Report::new("decompose", json!({ "matrix": m.to_string(), "group": tag.to_string() }));
    let word = word_from_matrix(&m, tag)?;
    let product = word.to_matrix();
    report.checks.push(Check::single("multiplies_out", product == m, || format!("word gives {product}")));
    report.line(word.to_string());
    report.outputs = json!({ "word": word.to_string(), "sign": word.sign(), "group": tag.to_string() });
    Ok(report)
}

fn witness_checks(w: &DensityWitness, req: &DensityRequest) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let bound = w.distance < req.epsilon;
    let exact = (&req.x - &w.value()).abs() == w.distance;
    checks.push(Check::single("distance", bound && exact, || format!("|x - d/c| = {} vs eps {}", w.distance, req.epsilon)));
    let direct = w.c <= BigInt::from(DIRECT_LIMIT);
    let (s, s4) = if direct {
        let (d, c) = (small(&w.d, "d")?, small(&w.c, "c")?);
        let s = w.s.as_ref().map(|_| hardy_s_direct(d, c).map(BigInt::from)).transpose()?;
        let s4 = w.s4.as_ref().map(|_| hardy_s4_direct(d, c).map(BigInt::from)).transpose()?;
        (s, s4)
    } else {
        let s = w.s.as_ref().map(|_| hardy_s_from_cfe(w.d.clone(), w.c.clone())).transpose()?;
        let s4 = w.s4.as_ref().map(|_| hardy_s4_from_cfe(w.d.clone(), w.c.clone())).transpose()?;
        (s, s4)
    };
    let ok = match req.target {
        Target::S { m } => s == Some(BigInt::from(m)),
        Target::S4 { m } => s4 == Some(BigInt::from(m)),
        Target::Joint { m1, m2 } => {
            s4 == Some(BigInt::from(m2)) && s.as_ref().zip(s4.as_ref()).map(|(a, b)| a + b) == Some(BigInt::from(m1))
        }
    };
    let name = if direct { "sums_direct" } else { "sums_fast" };
    checks.push(Check::single(name, ok, || format!("recomputed S = {s:?}, S4 = {s4:?}")));
    Ok(checks)
}

pub fn cmd_density(
    kind: DensityKind,
    x: &Rational,
    eps: &Rational,
    m: Option<i64>,
    m1: Option<i64>,
    m2: Option<i64>,
) -> Result<Report> {
    let need = |v: Option<i64>, flag: &str| v.ok_or_else(|| Error::OutOfRange(format!("missing --{flag}")));
    let target = match kind {
        DensityKind::S => Target::S { m: need(m, "m")? },
        DensityKind::S4 => Target::S4 { m: need(m, "m")? },
        DensityKind::Joint => Target::Joint { m1: need(m1, "m1")?, m2: need(m2, "m2")? },
    };
    let req = DensityRequest { x: x.clone(), epsilon: eps.clone(), target };
    let mut report = Report::new(
        "density",
        json!({ "x": x.to_string(), "eps": eps.to_string(), "target": target }),
    );
    let w = construct(&req)?;
    report.checks = witness_checks(&w, &req)?;
    report.line(format!("{}", w.value()));
    report.line(format!("expansion: {}", w.expansion.compressed()));
    if let Some(s) = &w.s {
        report.line(format!("S = {s}"));
    }
    if let Some(s4) = &w.s4 {
        report.line(format!("S4 = {s4}"));
    }
    report.line(format!("distance: {}", w.distance));
    report.outputs = serde_json::to_value(&w).expect("witness serializes");
    Ok(report)
}

fn series_params(cli: &Cli) -> Result<SeriesParams> {
    let d = SeriesParams::default();
    SeriesParams::new(cli.terms.unwrap_or(d.terms), d.quad_nodes, cli.tol.unwrap_or(d.tol))
}

pub fn cmd_verify(cli: &Cli, suite: VerifySuite, words: Option<usize>, seed: Option<u64>) -> Result<Report> {
    let start = Instant::now();
    let params = series_params(cli)?;
    let mut inputs = json!({ "suite": suite });
    let bound = |default: i64| -> Result<i64> {
        let c = cli.max_c.unwrap_or(default);
        if c < 1 {
            return Err(Error::OutOfRange(format!("--max-c must be positive, got {c}")));
        }
        Ok(c)
    };
    let numeric = || {
        let mut run = sweeps::NumericRun::new(params.clone());
        run.words = words.unwrap_or(run.words);
        run.seed = seed.unwrap_or(run.seed);
        run
    };
    let checks = match suite {
        VerifySuite::Table => table::verify_table()?,
        VerifySuite::Theorem1 => {
            let c = bound(500)?;
            inputs["max_c"] = json!(c);
            sweeps::sweep_fast_vs_direct(c)?
        }
        VerifySuite::Corollary => {
            let c = bound(500)?;
            inputs["max_c"] = json!(c);
            sweeps::sweep_joint(c)?
        }
        VerifySuite::Reciprocity => {
            let (cs, cs4) = match cli.max_c {
                Some(_) => (bound(300)?, bound(201)?),
                None => (300, 201),
            };
            inputs["max_c"] = json!({ "s": cs, "s4": cs4 });
            sweeps::sweep_reciprocity(cs, cs4)?
        }
        VerifySuite::Dedekind => {
            let c = bound(200)?;
            inputs["max_c"] = json!(c);
            sweeps::sweep_dedekind(c, &sweeps::default_scale())?
        }
        VerifySuite::Qseries | VerifySuite::Cocycle => {
            let run = numeric();
            inputs["params"] = serde_json::to_value(&run.params).expect("params serialize");
            inputs["words"] = json!(run.words);
            inputs["seed"] = json!(run.seed);
            if suite == VerifySuite::Qseries {
                sweeps::run_qseries(&run)?
            } else {
                sweeps::run_cocycle(&run)?
            }
        }
    };
    let mut report = Report::new("verify", inputs);
    let unit = if suite == VerifySuite::Table { "rows" } else { "cases" };
    for c in &checks {
        let mut line = format!("{} {} {} {unit}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.cases);
        if let Some(e) = c.max_abs_error {
            let _ = write!(line, ", max error {e:.2e}");
        }
        if let Some(err) = &c.error {
            let _ = write!(line, ", {} failures, first: {err}", c.failures);
        }
        report.line(line);
    }
    let total: usize = checks.iter().map(|c| c.cases).sum();
    let failed = checks.iter().filter(|c| !c.pass).count();
    let elapsed = start.elapsed().as_secs_f64();
    report.line(if failed == 0 {
        format!("PASS {total} {unit} in {elapsed:.2}s")
    } else {
        format!("FAIL {failed} of {} checks", checks.len())
    });
    report.outputs = json!({ "total_cases": total, "failed_checks": failed, "seconds": elapsed });
    report.checks = checks;
    Ok(report)
}

pub fn cmd_table(max_c: i64, format: TableFormat) -> Result<Report> {
    let rows = table_rows(max_c)?;
    let mut report = Report::new("table", json!({ "max_c": max_c }));
    report.text = match format {
        TableFormat::Text => table::render_text(&rows),
        TableFormat::Csv => table::render_csv(&rows),
    };
    report.outputs = json!({ "rows": rows.iter().map(TableRow::to_json).collect::<Vec<_>>() });
    Ok(report)
}
