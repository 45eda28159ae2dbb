//! The `csf` command line: `run`, `bench`, `check-plan` and `list`.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::addonly::OpCounter;
use crate::csf::{
    check_plan_sufficiency, check_pragmatic, run_procedure_with, CheckMode, RunOptions, TraceEvent,
    TraceLevel, ViolationReport,
};
use crate::error::Error;
use crate::oracle;
use crate::registry::{Input, Procedure, Registry};
use crate::state::{Params, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_INSUFFICIENT: i32 = 4;
pub const EXIT_OVERFLOW: i32 = 5;
pub const EXIT_NONTERMINATION: i32 = 6;
pub const EXIT_BUDGET: i32 = 7;
pub const EXIT_PRECONDITION: i32 = 8;
pub const EXIT_MISMATCH: i32 = 9;

/// Overrides the sufficiency checker's node budget.
pub const BUDGET_VAR: &str = "CSF_ENUM_BUDGET";

const AFTER_HELP: &str = "\
Exit status:
  0  success
  1  internal or evaluation error
  2  bad usage (unknown procedure, missing or invalid input)
  3  a checkpoint failed (violation report printed)
  4  plan insufficient (counterexample printed)
  5  arithmetic overflow
  6  loop exceeded its iteration cap
  7  sufficiency check exceeded its budget
  8  precondition refused
  9  result differs from the oracle (--verify)

Environment:
  CSF_ENUM_BUDGET  node budget for check-plan (default 200000000)";

#[derive(Parser, Debug)]
#[command(
    name = "csf",
    version,
    about = "Run, check and benchmark addition-only algorithms built from subgoal plans",
    after_help = AFTER_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one procedure with checkpoint checking.
    Run(RunArgs),
    /// Count operations across values of N.
    Bench(BenchArgs),
    /// Check a plan's sufficiency on a bounded domain.
    CheckPlan(CheckArgs),
    /// List procedures and their plans.
    List(ListArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Strict,
    Lenient,
    Off,
}

impl From<Mode> for CheckMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Strict => CheckMode::Strict,
            Mode::Lenient => CheckMode::Lenient,
            Mode::Off => CheckMode::Off,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Trace {
    None,
    Blocks,
    Iterations,
}

impl From<Trace> for TraceLevel {
    fn from(t: Trace) -> Self {
        match t {
            Trace::None => TraceLevel::None,
            Trace::Blocks => TraceLevel::Blocks,
            Trace::Iterations => TraceLevel::Iterations,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Procedure name, see `csf list`.
    algorithm: String,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    /// Comma-separated integers, e.g. 1,5,3.
    #[arg(long, allow_hyphen_values = true)]
    array: Option<String>,
    #[arg(long, value_enum, default_value = "strict")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "none")]
    trace: Trace,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// Compare the result with a multiplication oracle.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Comma-separated procedure names.
    algorithms: String,
    /// Comma-separated values or inclusive ranges, e.g. 1,2,10..20.
    #[arg(long)]
    n: String,
    /// Exponent for `pow` (default 3).
    #[arg(long)]
    m: Option<i64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Compare every result with a multiplication oracle.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Procedure whose plan is checked.
    plan: String,
    /// Scalars and array entries range over 0..=bound.
    #[arg(long, default_value_t = 8)]
    bound: i64,
    /// Arrays have length 0..=max-len.
    #[arg(long, default_value_t = 3)]
    max_len: usize,
    /// Remove the subgoal with this label first (repeatable).
    #[arg(long)]
    drop: Vec<String>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Args, Debug)]
struct ListArgs {
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Overflow { .. } => EXIT_OVERFLOW,
        Error::Nontermination { .. } => EXIT_NONTERMINATION,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Precondition(_) => EXIT_PRECONDITION,
        Error::UnknownProcedure { .. } | Error::Domain(_) => EXIT_USAGE,
        _ => EXIT_INTERNAL,
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the command line against the built-in registry.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_registry(&Registry::builtin(), args, out, err)
}

pub fn run_with_registry<I, T>(
    registry: &Registry,
    args: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(registry, &a, out),
        Command::Bench(a) => cmd_bench(registry, &a, out, err),
        Command::CheckPlan(a) => cmd_check_plan(registry, &a, out),
        Command::List(a) => cmd_list(registry, &a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_array(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| usage(format!("bad array entry `{s}`")))
        })
        .collect()
}

fn parse_n_list(text: &str) -> Result<Vec<i64>, Failure> {
    let mut values = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parse = |s: &str| -> Result<i64, Failure> {
            s.trim()
                .parse()
                .map_err(|_| usage(format!("bad N value `{s}`")))
        };
        match part.split_once("..") {
            Some((lo, hi)) => values.extend(parse(lo)?..=parse(hi)?),
            None => values.push(parse(part)?),
        }
    }
    if values.is_empty() {
        return Err(usage("--n needs at least one value"));
    }
    Ok(values)
}

fn verify_result(name: &str, params: &Params, result: &Value) -> Result<bool, Failure> {
    Ok(oracle::expected(name, params)? == *result)
}

#[derive(Serialize)]
struct RunOutput<'a> {
    algorithm: &'a str,
    params: &'a Params,
    mode: CheckMode,
    result: Option<&'a Value>,
    counters: OpCounter,
    violations: Vec<&'a ViolationReport>,
    trace: &'a [TraceEvent],
}

fn cmd_run(registry: &Registry, a: &RunArgs, out: &mut dyn Write) -> CmdResult {
    let proc = registry.get(&a.algorithm)?;
    let array = a.array.as_deref().map(parse_array).transpose()?;
    let params = proc.params(a.n, a.m, array.as_deref())?;
    let opts = RunOptions {
        mode: a.mode.into(),
        trace: a.trace.into(),
    };
    let report = run_procedure_with(&proc.spec, &params, opts)?;
    let mismatch = match (&report.result, a.verify) {
        (Some(r), true) => !verify_result(proc.name, &params, r)?,
        _ => false,
    };

    match a.format {
        Format::Json => {
            let body = RunOutput {
                algorithm: proc.name,
                params: &report.params,
                mode: report.mode,
                result: report.result.as_ref(),
                counters: report.counters,
                violations: report.violation.iter().collect(),
                trace: &report.trace,
            };
            serde_json::to_writer_pretty(&mut *out, &body).map_err(|e| usage(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let c = report.counters;
            let row = [
                proc.name.to_owned(),
                report.params.to_string(),
                format!("{:?}", report.mode).to_lowercase(),
                report
                    .result
                    .as_ref()
                    .map(Value::to_string)
                    .unwrap_or_default(),
                c.adds.to_string(),
                c.subs.to_string(),
                c.compares.to_string(),
                c.selects.to_string(),
                report.principal_iterations(&proc.spec).to_string(),
                report
                    .violation
                    .as_ref()
                    .map(|v| v.failed.clone())
                    .unwrap_or_default(),
            ];
            w.write_record([
                "algorithm",
                "params",
                "mode",
                "result",
                "adds",
                "subs",
                "compares",
                "selects",
                "iterations",
                "violation",
            ])
            .and_then(|_| w.write_record(&row))
            .and_then(|_| w.flush().map_err(Into::into))
            .map_err(|e| usage(e.to_string()))?;
        }
        Format::Human => {
            for ev in &report.trace {
                write!(out, "#{} {:?}", ev.seq, ev.kind)?;
                if let Some(b) = ev.block {
                    write!(out, " block {b} ({})", proc.spec.blocks()[b].label)?;
                }
                if let Some(i) = ev.iteration {
                    write!(out, " iteration {i}")?;
                }
                let checks: Vec<String> = ev
                    .checks
                    .iter()
                    .map(|c| format!("{} {}", c.label, if c.holds { "ok" } else { "FAILED" }))
                    .collect();
                if !checks.is_empty() {
                    write!(out, ": {}", checks.join(", "))?;
                }
                writeln!(out, " [adds={}]", ev.counters.adds)?;
            }
            match &report.result {
                Some(r) => writeln!(out, "{}{} = {r}", proc.name, report.params)?,
                None => writeln!(out, "{}{}: no result", proc.name, report.params)?,
            }
            let c = report.counters;
            writeln!(
                out,
                "adds={} subs={} compares={} selects={} assigns={} iterations={:?}",
                c.adds, c.subs, c.compares, c.selects, c.assigns, report.block_iterations
            )?;
            if report.short_circuited {
                writeln!(out, "short-circuited")?;
            }
            if let Some(v) = &report.violation {
                let at = match (v.block, v.iteration) {
                    (Some(b), Some(i)) => format!("block {b}, iteration {i}"),
                    (Some(b), None) => format!("end of block {b}"),
                    _ => "end of run".to_owned(),
                };
                writeln!(
                    out,
                    "violation: {} failed at {at}; state {}",
                    v.failed, v.state
                )?;
            }
            if mismatch {
                writeln!(out, "result differs from the oracle")?;
            }
        }
    }
    Ok(if report.violation.is_some() {
        EXIT_VIOLATION
    } else if mismatch {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    })
}

#[derive(Serialize)]
struct BenchRow {
    algorithm: &'static str,
    n: i64,
    /// The result, or the error that stopped the run.
    result: String,
    adds: Option<u64>,
    subs: Option<u64>,
    compares: Option<u64>,
    selects: Option<u64>,
    iterations: Option<u64>,
    #[serde(skip)]
    wall_micros: u128,
    #[serde(skip)]
    mismatch: bool,
}

fn bench_params(proc: &Procedure, n: i64, m: i64) -> Result<Params, Error> {
    match proc.input {
        Input::Array => proc.params(None, None, Some(&(1..=n).collect::<Vec<_>>())),
        _ => proc.params(Some(n), Some(m), None),
    }
}

fn bench_cell(proc: &Procedure, n: i64, m: i64, verify: bool) -> Result<BenchRow, Failure> {
    let started = Instant::now();
    let params = bench_params(proc, n, m)?;
    let opts = RunOptions {
        mode: CheckMode::Off,
        trace: TraceLevel::None,
    };
    let mut row = BenchRow {
        algorithm: proc.name,
        n,
        result: String::new(),
        adds: None,
        subs: None,
        compares: None,
        selects: None,
        iterations: None,
        wall_micros: 0,
        mismatch: false,
    };
    match run_procedure_with(&proc.spec, &params, opts) {
        Ok(report) => {
            let result = report.result.clone().expect("unchecked runs always finish");
            if verify {
                row.mismatch = !verify_result(proc.name, &params, &result)?;
            }
            row.result = result.to_string();
            row.adds = Some(report.counters.adds);
            row.subs = Some(report.counters.subs);
            row.compares = Some(report.counters.compares);
            row.selects = Some(report.counters.selects);
            row.iterations = Some(report.principal_iterations(&proc.spec));
        }
        Err(Error::Overflow { .. }) => row.result = "overflow".into(),
        Err(e) => return Err(e.into()),
    }
    row.wall_micros = started.elapsed().as_micros();
    Ok(row)
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn cmd_bench(
    registry: &Registry,
    a: &BenchArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let procs = a
        .algorithms
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| registry.get(name))
        .collect::<Result<Vec<_>, _>>()?;
    if procs.is_empty() {
        return Err(usage("no algorithms given"));
    }
    let ns = parse_n_list(&a.n)?;
    let m = a.m.unwrap_or(3);
    let cells: Vec<(&Procedure, i64)> = procs
        .iter()
        .flat_map(|p| ns.iter().map(move |&n| (*p, n)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(p, n)| bench_cell(p, n, m, a.verify))
        .collect::<Result<Vec<_>, _>>()?;

    match a.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let write = |w: &mut csv::Writer<&mut dyn Write>| -> csv::Result<()> {
                w.write_record([
                    "algorithm",
                    "n",
                    "result",
                    "adds",
                    "subs",
                    "compares",
                    "selects",
                    "iterations",
                ])?;
                for r in &rows {
                    w.write_record([
                        r.algorithm.to_owned(),
                        r.n.to_string(),
                        r.result.clone(),
                        opt(r.adds),
                        opt(r.subs),
                        opt(r.compares),
                        opt(r.selects),
                        opt(r.iterations),
                    ])?;
                }
                w.flush()?;
                Ok(())
            };
            write(&mut w).map_err(|e| usage(e.to_string()))?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows).map_err(|e| usage(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Human => {
            writeln!(
                out,
                "{:<8} {:>10} {:>22} {:>12} {:>10} {:>10} {:>8} {:>10} {:>10}",
                "algorithm",
                "n",
                "result",
                "adds",
                "subs",
                "compares",
                "selects",
                "iterations",
                "wall_us"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:<9} {:>10} {:>22} {:>12} {:>10} {:>10} {:>8} {:>10} {:>10}",
                    r.algorithm,
                    r.n,
                    r.result,
                    opt(r.adds),
                    opt(r.subs),
                    opt(r.compares),
                    opt(r.selects),
                    opt(r.iterations),
                    r.wall_micros
                )?;
            }
        }
    }
    let mismatches: Vec<String> = rows
        .iter()
        .filter(|r| r.mismatch)
        .map(|r| format!("{}({})", r.algorithm, r.n))
        .collect();
    if mismatches.is_empty() {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "oracle mismatch: {}", mismatches.join(", "))?;
        Ok(EXIT_MISMATCH)
    }
}

fn budget_from_env() -> Result<Option<u64>, Failure> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            usage(format!(
                "{BUDGET_VAR} must be a non-negative integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(None),
    }
}

#[derive(Serialize)]
struct PragmaticVerdict<'a> {
    subgoal: &'a str,
    pragmatic: bool,
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    plan: &'a str,
    dropped: &'a [String],
    sufficient: bool,
    visited: u64,
    pragmatic: Vec<PragmaticVerdict<'a>>,
    counterexample: Option<serde_json::Value>,
}

fn cmd_check_plan(registry: &Registry, a: &CheckArgs, out: &mut dyn Write) -> CmdResult {
    let proc = registry.get(&a.plan)?;
    let mut plan = proc.spec.plan().clone();
    for label in &a.drop {
        let index = plan.position(label).ok_or_else(|| {
            let labels: Vec<&str> = plan.subgoals.iter().map(|s| s.label()).collect();
            usage(format!(
                "`{}` has no subgoal `{label}`; subgoals: {}",
                proc.name,
                labels.join(", ")
            ))
        })?;
        plan = plan.without(index)?;
    }
    let mut dom = proc.domain(a.bound, a.max_len);
    if let Some(budget) = budget_from_env()? {
        dom = dom.with_budget(budget);
    }
    let verdict = check_plan_sufficiency(&plan, &dom)?;
    let mut pragmatic = Vec::new();
    if verdict.sufficient {
        for (i, sg) in plan.subgoals.iter().enumerate() {
            if sg.pragmatic {
                pragmatic.push(PragmaticVerdict {
                    subgoal: sg.label(),
                    pragmatic: check_pragmatic(&plan, i, &dom)?,
                });
            }
        }
    }

    match a.format {
        Format::Json => {
            let body = CheckOutput {
                plan: proc.name,
                dropped: &a.drop,
                sufficient: verdict.sufficient,
                visited: verdict.visited,
                pragmatic,
                counterexample: verdict
                    .counterexample
                    .as_ref()
                    .map(|(p, s)| serde_json::json!({ "params": p, "state": s })),
            };
            serde_json::to_writer_pretty(&mut *out, &body).map_err(|e| usage(e.to_string()))?;
            writeln!(out)?;
        }
        _ => {
            let word = if verdict.sufficient {
                "sufficient"
            } else {
                "insufficient"
            };
            writeln!(
                out,
                "{}: {word} ({} assignments visited)",
                proc.name, verdict.visited
            )?;
            for v in &pragmatic {
                let yn = if v.pragmatic { "yes" } else { "no" };
                writeln!(out, "{} pragmatic: {yn}", v.subgoal)?;
            }
            if let Some((p, s)) = &verdict.counterexample {
                writeln!(out, "counterexample: params {p}, state {s}")?;
            }
        }
    }
    Ok(if verdict.sufficient {
        EXIT_OK
    } else {
        EXIT_INSUFFICIENT
    })
}

#[derive(Serialize)]
struct ListEntry<'a> {
    name: &'a str,
    summary: &'a str,
    subgoals: Vec<String>,
}

fn cmd_list(registry: &Registry, a: &ListArgs, out: &mut dyn Write) -> CmdResult {
    let entries: Vec<ListEntry> = registry
        .iter()
        .map(|p| ListEntry {
            name: p.name,
            summary: p.summary,
            subgoals: p
                .spec
                .subgoals()
                .iter()
                .enumerate()
                .map(|(i, sg)| sg.notation(i))
                .collect(),
        })
        .collect();
    match a.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &entries).map_err(|e| usage(e.to_string()))?;
            writeln!(out)?;
        }
        _ => {
            for e in &entries {
                writeln!(out, "{}  {}", e.name, e.summary)?;
                for sg in &e.subgoals {
                    writeln!(out, "{}: {sg}", e.name)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}
