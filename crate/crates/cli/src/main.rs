//! `tvec`: check, erase, evaluate and self-test `.tvec` files.
//!
//! Exit codes: 0 success, 1 check or evaluation failure, 2 usage, I/O or
//! parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use tvec_core::erase::erase;
use tvec_core::frontend::{pretty_term, ResolvedDef};
use tvec_core::oracle::{run_property_suite, SuiteConfig, SuiteReport};
use tvec_core::program::{check_source, Program};
use tvec_core::reduce::{eval_cbv_traced, normalize_with, CbvOutcome, NormalizeOutcome, Strategy, DEFAULT_FUEL};
use tvec_core::syntax::{Mode, Term};
use tvec_core::typecheck::Checker;
use tvec_core::Diagnostic;

/// `println!` that ignores a closed stdout, e.g. when piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "tvec", version, about = "Type checker and evaluator for annotated vector type theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Overrides the file's `mode` pragma.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Mode>,
    /// Reduction step budget for joins and evaluation.
    #[arg(long, env = "TVEC_FUEL", default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    /// Print a JSON report on stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every definition in a file.
    Check {
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Erase a definition and run it.
    Eval {
        path: PathBuf,
        def: String,
        #[arg(long, value_enum, default_value_t = EvalStrategy::Cbv)]
        strategy: EvalStrategy,
        /// Print every reduction step.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Print the erasure of a definition.
    Erase {
        path: PathBuf,
        def: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run the exhaustive property suite over small terms.
    Selftest {
        /// Largest term size to enumerate.
        #[arg(long, default_value_t = 6)]
        size: usize,
        /// Run one mode only (default: both).
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
        /// Step budget for each individual normalization.
        #[arg(long, default_value_t = 10_000)]
        fuel: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum EvalStrategy {
    /// Call-by-value evaluation.
    Cbv,
    /// Full-β normalization, leftmost-outermost.
    Full,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Deeply nested terms recurse deeply in the checker and printer.
    let worker = std::thread::Builder::new().stack_size(256 << 20).spawn(move || run(cli));
    match worker.map(|h| h.join()) {
        Ok(Ok(code)) => ExitCode::from(code),
        _ => {
            eprintln!("error: internal failure");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Check { path, common } => cmd_check(&path, &common),
        Command::Eval { path, def, strategy, trace, common } => cmd_eval(&path, &def, strategy, trace, &common),
        Command::Erase { path, def, common } => cmd_erase(&path, &def, &common),
        Command::Selftest { size, mode, fuel, json } => cmd_selftest(size, mode, fuel, json),
    }
}

/// Reads and checks a file; on failure prints the problem and returns the
/// exit code.
fn load(path: &Path, common: &Common) -> Result<(Program, String), u8> {
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            let msg = format!("cannot read {}: {e}", path.display());
            if common.json {
                out!("{}", json!({ "error": msg, "defs": [], "mode": common.mode, "fuel": common.fuel }));
            } else {
                eprintln!("error: {msg}");
            }
            return Err(EXIT_USAGE);
        }
    };
    match check_source(&src, common.mode, common.fuel) {
        Ok(p) => Ok((p, src)),
        Err(d) => {
            if common.json {
                out!("{}", json!({ "error": d, "defs": [], "mode": common.mode, "fuel": common.fuel }));
            } else {
                eprint!("{}: {}", path.display(), d.render(Some(&src)));
            }
            Err(EXIT_USAGE)
        }
    }
}

fn cmd_check(path: &Path, common: &Common) -> u8 {
    let (program, src) = match load(path, common) {
        Ok(x) => x,
        Err(code) => return code,
    };
    if common.json {
        out!("{}", serde_json::to_string_pretty(&program.report()).expect("report serializes"));
    } else {
        for d in &program.defs {
            match (&d.result, &d.def) {
                (Ok(_), Some(def)) => out!("{} : {}", d.name, program.signature(def)),
                (Err(e), _) => {
                    out!("{} : FAILED", d.name);
                    eprint!("{}: {}", path.display(), e.render(Some(&src)));
                }
                (Ok(_), None) => unreachable!("checked definitions are resolved"),
            }
        }
    }
    if program.all_ok() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

/// Finds `name`, printing an error when it is missing.
fn find_def<'p>(program: &'p Program, name: &str, json: bool) -> Result<&'p tvec_core::program::CheckedDef, u8> {
    match program.get(name) {
        Some(d) => Ok(d),
        None => {
            let msg = format!("no definition named `{name}`");
            if json {
                out!("{}", json!({ "error": msg }));
            } else {
                eprintln!("error: {msg}");
            }
            Err(EXIT_USAGE)
        }
    }
}

#[derive(Serialize)]
struct EvalReport<'a> {
    def: &'a str,
    strategy: EvalStrategy,
    mode: Mode,
    fuel: u64,
    outcome: &'static str,
    term: String,
    steps: u64,
    closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn cmd_eval(path: &Path, name: &str, strategy: EvalStrategy, trace: bool, common: &Common) -> u8 {
    let (program, src) = match load(path, common) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let checked = match find_def(&program, name, common.json) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let def: &ResolvedDef = match (&checked.result, &checked.def) {
        (Ok(_), Some(def)) => def,
        (Err(e), _) => return report_failure(e, &src, path, common.json),
        (Ok(_), None) => unreachable!("checked definitions are resolved"),
    };
    let term = erase(&def.body);
    let mut on_step = |n: u64, t: &Term| {
        if trace && !common.json {
            out!("{n:>6}  {}", pretty_term(t));
        }
    };
    let (outcome, shown, steps, reason) = match strategy {
        EvalStrategy::Cbv => match eval_cbv_traced(&term, common.fuel, program.mode, &mut on_step) {
            CbvOutcome::Value { term, steps } => ("Value", term, steps, None),
            CbvOutcome::Stuck { term, reason, steps } => ("Stuck", term, steps, Some(reason.to_string())),
            CbvOutcome::FuelExhausted { last, fuel } => ("FuelExhausted", last, fuel, None),
        },
        EvalStrategy::Full => {
            match normalize_with(&term, common.fuel, program.mode, Strategy::LeftmostOutermost, &mut on_step) {
                NormalizeOutcome::NormalForm { term, steps } => ("NormalForm", term, steps, None),
                NormalizeOutcome::FuelExhausted { last, fuel } => ("FuelExhausted", last, fuel, None),
            }
        }
    };
    let closed = def.is_closed();
    let report = EvalReport {
        def: name,
        strategy,
        mode: program.mode,
        fuel: common.fuel,
        outcome,
        term: pretty_term(&shown),
        steps,
        closed,
        reason,
    };
    if common.json {
        out!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        out!("{}({}) after {} steps", report.outcome, report.term, report.steps);
        if let Some(r) = &report.reason {
            out!("reason: {r}");
        }
        if !closed {
            let ctx: Vec<String> = def.params.iter().map(|(x, t)| format!("{x} : {}", program.show_ty(t))).collect();
            out!(
                "note: `{name}` is checked in the non-empty context ({}); its free variables block evaluation",
                ctx.join(", ")
            );
        }
    }
    match outcome {
        "Value" | "NormalForm" => EXIT_OK,
        "Stuck" if !closed => EXIT_OK,
        "Stuck" => {
            if !common.json {
                eprintln!("error: the closed, well-typed definition `{name}` got stuck; this contradicts type safety");
            }
            EXIT_FAIL
        }
        _ => {
            if !common.json {
                eprintln!("error: evaluation did not finish within {} steps", common.fuel);
            }
            EXIT_FAIL
        }
    }
}

fn report_failure(e: &Diagnostic, src: &str, path: &Path, json: bool) -> u8 {
    if json {
        out!("{}", json!({ "error": e }));
    } else {
        eprint!("{}: {}", path.display(), e.render(Some(src)));
    }
    EXIT_FAIL
}

fn cmd_erase(path: &Path, name: &str, common: &Common) -> u8 {
    let (program, _) = match load(path, common) {
        Ok(x) => x,
        Err(code) => return code,
    };
    let checked = match find_def(&program, name, common.json) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let Some(def) = &checked.def else {
        let e = checked.result.as_ref().expect_err("unresolved definitions carry their error");
        if common.json {
            out!("{}", json!({ "error": e }));
        } else {
            eprintln!("error: {e}");
        }
        return EXIT_FAIL;
    };
    let erased = pretty_term(&erase(&def.body));
    if common.json {
        out!("{}", json!({ "def": name, "erased": erased }));
    } else {
        out!("{erased}");
    }
    EXIT_OK
}

fn cmd_selftest(size: usize, mode: Option<Mode>, fuel: u64, json: bool) -> u8 {
    let modes = match mode {
        Some(m) => vec![m],
        None => vec![Mode::Base, Mode::LargeElim],
    };
    let config = SuiteConfig { max_size: size, fuel, ..SuiteConfig::default() };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for m in modes {
        match run_property_suite(&config, &Checker::new(m).with_fuel(fuel)) {
            Ok(r) => reports.push(r),
            Err(e) => {
                if json {
                    out!("{}", json!({ "error": e.to_string() }));
                } else {
                    eprintln!("error: {e}");
                }
                return EXIT_USAGE;
            }
        }
    }
    let passed = reports.iter().all(SuiteReport::passed);
    if json {
        out!(
            "{}",
            serde_json::to_string_pretty(&json!({ "passed": passed, "suites": reports })).expect("report serializes")
        );
    } else {
        for r in &reports {
            print_suite(r);
        }
        out!("{}", if passed { "selftest passed" } else { "selftest FAILED" });
    }
    if passed {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn print_suite(r: &SuiteReport) {
    out!(
        "mode {}: size <= {}, {} terms, {} well typed ({} closed), {} ms",
        r.mode,
        r.max_size,
        r.enumerated,
        r.well_typed,
        r.well_typed_closed,
        r.elapsed_ms
    );
    for p in &r.properties {
        out!(
            "  {} {:<4} checked {:>6}  failed {}  undecided {}  {}",
            if p.failed == 0 && p.undecided == 0 { "ok  " } else { "FAIL" },
            p.id,
            p.checked,
            p.failed,
            p.undecided,
            p.description
        );
        for c in &p.counterexamples {
            out!("         {c}");
        }
    }
    let hits: Vec<String> = r.rule_hits.iter().map(|(k, v)| format!("{k}={v}")).collect();
    out!("  rule hits: {}", hits.join(" "));
    let missing = r.missing_rules();
    if !missing.is_empty() {
        out!("  rules never exercised: {}", missing.join(", "));
    }
}
