//! Exhaustive property checks over enumerated terms.
//!
//! | id | property |
//! |----|----------|
//! | P1 | closed well-typed terms normalize; the normal form is a value of canonical shape; equality types relate joinable terms |
//! | P2 | closed well-typed terms evaluate (call-by-value) to a value of canonical shape |
//! | P3 | leftmost-outermost and rightmost-innermost normalization agree |
//! | P4 | substitution does not invent free variables, and preserves typing |
//! | P5 | printing then parsing is the identity up to α |

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::canonical::canonical_shape;
use super::enumerate::{enumerate, open_context, CapExceeded};
use crate::diagnostic::DiagnosticKind;
use crate::erase::erase;
use crate::frontend::{parse_erased, parse_term, pretty_ann, pretty_term, pretty_ty};
use crate::reduce::{eval_cbv, is_value, joinable, normalize_with, CbvOutcome, NormalizeOutcome, Strategy};
use crate::syntax::{build, AnnKind, AnnTerm, Context, Mode, Term, Ty};
use crate::typecheck::{Rule, Typer};

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub max_size: usize,
    /// Budget for every individual normalization or evaluation.
    pub fuel: u64,
    /// Counterexamples kept per property.
    pub max_counterexamples: usize,
    pub threads: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_size: 6,
            fuel: 10_000,
            max_counterexamples: 5,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyReport {
    pub id: String,
    pub description: String,
    pub checked: u64,
    pub failed: u64,
    /// Runs that hit the fuel limit; neither passed nor failed.
    pub undecided: u64,
    pub counterexamples: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub mode: Mode,
    pub max_size: usize,
    pub fuel: u64,
    /// Terms enumerated over the open context (closed ones included).
    pub enumerated: u64,
    pub closed: u64,
    pub well_typed: u64,
    pub well_typed_closed: u64,
    pub properties: Vec<PropertyReport>,
    /// Successful applications of each rule available in `mode`, counted
    /// over all nodes of well-typed terms.
    pub rule_hits: BTreeMap<&'static str, u64>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0 && p.undecided == 0) && self.rule_hits.values().all(|&n| n > 0)
    }

    pub fn failures(&self) -> u64 {
        self.properties.iter().map(|p| p.failed).sum()
    }

    pub fn undecided(&self) -> u64 {
        self.properties.iter().map(|p| p.undecided).sum()
    }

    pub fn missing_rules(&self) -> Vec<&'static str> {
        self.rule_hits.iter().filter(|(_, &n)| n == 0).map(|(&r, _)| r).collect()
    }
}

const DESCRIPTIONS: [(&str, &str); 5] = [
    ("P1", "closed well-typed terms normalize to canonical values; equations are joinable"),
    ("P2", "closed well-typed terms evaluate to canonical values"),
    ("P3", "normal forms do not depend on the reduction strategy"),
    ("P4", "substitution respects free variables and typing"),
    ("P5", "parse after print is the identity up to alpha"),
];

/// Verdict of one property on one term.
enum Verdict {
    Pass,
    Fail(String),
    Undecided(String),
}

#[derive(Default)]
struct Tally {
    props: [PropertyReport; 5],
    hits: BTreeMap<Rule, u64>,
    well_typed: u64,
    well_typed_closed: u64,
    closed: u64,
}

impl Tally {
    fn record(&mut self, idx: usize, t: &AnnTerm, v: Verdict, cap: usize) {
        let p = &mut self.props[idx];
        p.checked += 1;
        let note = match v {
            Verdict::Pass => return,
            Verdict::Fail(why) => {
                p.failed += 1;
                why
            }
            Verdict::Undecided(why) => {
                p.undecided += 1;
                format!("undecided: {why}")
            }
        };
        if p.counterexamples.len() < cap {
            p.counterexamples.push(format!("{}  --  {note}", pretty_ann(t)));
        }
    }

    fn merge(&mut self, other: Tally, cap: usize) {
        for (a, b) in self.props.iter_mut().zip(other.props) {
            a.checked += b.checked;
            a.failed += b.failed;
            a.undecided += b.undecided;
            for c in b.counterexamples {
                if a.counterexamples.len() < cap {
                    a.counterexamples.push(c);
                }
            }
        }
        for (r, n) in other.hits {
            *self.hits.entry(r).or_default() += n;
        }
        self.well_typed += other.well_typed;
        self.well_typed_closed += other.well_typed_closed;
        self.closed += other.closed;
    }
}

/// Runs P1-P5 over every term of size at most `config.max_size` whose free
/// variables come from [`open_context`]. Typing is delegated to `typer`.
pub fn run_property_suite(config: &SuiteConfig, typer: &dyn Typer) -> Result<SuiteReport, CapExceeded> {
    let start = Instant::now();
    let mode = typer.mode();
    let ctx = open_context();
    let terms = enumerate(config.max_size, mode, &ctx)?;
    let threads = config.threads.max(1);
    let chunk = terms.len().div_ceil(threads).max(1);
    let mut tally = Tally::default();
    std::thread::scope(|scope| {
        let handles: Vec<_> = terms
            .chunks(chunk)
            .map(|part| {
                let ctx = ctx.clone();
                scope.spawn(move || {
                    let mut local = Tally::default();
                    for t in part {
                        check_term(t, &ctx, typer, config, &mut local);
                    }
                    local
                })
            })
            .collect();
        for h in handles {
            tally.merge(h.join().expect("property worker panicked"), config.max_counterexamples);
        }
    });
    let mut properties = Vec::new();
    for (mut p, (id, desc)) in tally.props.into_iter().zip(DESCRIPTIONS) {
        p.id = id.to_string();
        p.description = desc.to_string();
        properties.push(p);
    }
    let rule_hits = Rule::ALL
        .iter()
        .filter(|r| r.in_mode(mode))
        .map(|r| (r.as_str(), tally.hits.get(r).copied().unwrap_or(0)))
        .collect();
    Ok(SuiteReport {
        mode,
        max_size: config.max_size,
        fuel: config.fuel,
        enumerated: terms.len() as u64,
        closed: tally.closed,
        well_typed: tally.well_typed,
        well_typed_closed: tally.well_typed_closed,
        properties,
        rule_hits,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn count_rules(t: &AnnTerm, hits: &mut BTreeMap<Rule, u64>) {
    *hits.entry(Rule::of(t)).or_default() += 1;
    for c in t.children() {
        count_rules(c, hits);
    }
}

fn check_term(t: &AnnTerm, ctx: &Context, typer: &dyn Typer, config: &SuiteConfig, tally: &mut Tally) {
    let cap = config.max_counterexamples;
    let mode = typer.mode();
    tally.record(4, t, round_trip(t), cap);

    let closed = t.free_vars().is_empty();
    if closed {
        tally.closed += 1;
    }
    let empty = Context::new();
    let ty = match typer.infer(if closed { &empty } else { ctx }, t) {
        Ok(ty) => ty,
        Err(d) => {
            if d.kind == DiagnosticKind::JoinUndecided {
                tally.record(0, t, Verdict::Undecided(d.message), cap);
            }
            return;
        }
    };
    tally.well_typed += 1;
    count_rules(t, &mut tally.hits);
    tally.record(3, t, substitution(t, &ty, ctx, typer), cap);
    if closed {
        tally.well_typed_closed += 1;
        let a = erase(t);
        tally.record(0, t, normalization(&a, &ty, mode, config.fuel), cap);
        tally.record(1, t, evaluation(&a, &ty, mode, config.fuel), cap);
        tally.record(2, t, confluence(&a, mode, config.fuel), cap);
    }
}

fn normalization(a: &Term, ty: &Ty, mode: Mode, fuel: u64) -> Verdict {
    let nf = match normalize_with(a, fuel, mode, Strategy::LeftmostOutermost, &mut |_, _| {}) {
        NormalizeOutcome::NormalForm { term, .. } => term,
        NormalizeOutcome::FuelExhausted { .. } => return Verdict::Undecided("normalization ran out of fuel".into()),
    };
    if !is_value(&nf) {
        return Verdict::Fail(format!("normal form `{}` is not a value", pretty_term(&nf)));
    }
    match canonical_shape(&nf, ty, mode, fuel) {
        Ok(true) => {}
        Ok(false) => {
            return Verdict::Fail(format!("normal form `{}` does not fit `{}`", pretty_term(&nf), pretty_ty(ty)))
        }
        Err(_) => return Verdict::Undecided("index normalization ran out of fuel".into()),
    }
    if let Ty::Eq(l, r) = ty {
        match joinable(l, r, fuel, mode) {
            Ok(true) => {}
            Ok(false) => return Verdict::Fail(format!("proves `{}` but the sides are not joinable", pretty_ty(ty))),
            Err(_) => return Verdict::Undecided("equation sides ran out of fuel".into()),
        }
    }
    Verdict::Pass
}

fn evaluation(a: &Term, ty: &Ty, mode: Mode, fuel: u64) -> Verdict {
    match eval_cbv(a, fuel, mode) {
        CbvOutcome::Value { term, .. } => match canonical_shape(&term, ty, mode, fuel) {
            Ok(true) => Verdict::Pass,
            Ok(false) => Verdict::Fail(format!("value `{}` does not fit `{}`", pretty_term(&term), pretty_ty(ty))),
            Err(_) => Verdict::Undecided("index normalization ran out of fuel".into()),
        },
        CbvOutcome::Stuck { term, reason, .. } => {
            Verdict::Fail(format!("evaluation is stuck at `{}`: {reason}", pretty_term(&term)))
        }
        CbvOutcome::FuelExhausted { .. } => Verdict::Undecided("evaluation ran out of fuel".into()),
    }
}

fn confluence(a: &Term, mode: Mode, fuel: u64) -> Verdict {
    let run = |s| normalize_with(a, fuel, mode, s, &mut |_, _| {});
    match (run(Strategy::LeftmostOutermost), run(Strategy::RightmostInnermost)) {
        (NormalizeOutcome::NormalForm { term: l, .. }, NormalizeOutcome::NormalForm { term: r, .. }) => {
            if l.alpha_eq(&r) {
                Verdict::Pass
            } else {
                Verdict::Fail(format!("strategies disagree: `{}` vs `{}`", pretty_term(&l), pretty_term(&r)))
            }
        }
        _ => Verdict::Undecided("a strategy ran out of fuel".into()),
    }
}

/// Closed natural-number terms substituted for context variables.
fn nat_replacements() -> Vec<AnnTerm> {
    vec![
        build::zero(),
        build::succ(build::zero()),
        build::app(build::lam("x", Ty::Nat, build::var("x")), build::numeral(2)),
    ]
}

fn substitution(t: &AnnTerm, ty: &Ty, ctx: &Context, typer: &dyn Typer) -> Verdict {
    let fv = t.free_vars();
    let erased = erase(t);
    let efv = erased.free_vars();
    for (x, _) in ctx.bindings() {
        for s in nat_replacements() {
            let es = erase(&s);
            let after = erased.subst(&x, &es).free_vars();
            if let Some(y) = after.iter().find(|y| !(efv.contains(*y) && **y != x) && !es.free_vars().contains(*y)) {
                return Verdict::Fail(format!("erased substitution for `{x}` introduced `{y}`"));
            }
            let sub = t.subst(&x, &s);
            if let Some(y) = sub.free_vars().iter().find(|y| !(fv.contains(*y) && **y != x)) {
                return Verdict::Fail(format!("substitution for `{x}` introduced `{y}`"));
            }
        }
    }
    // Typing survives instantiating the natural-number variable.
    if fv.iter().any(|x| &**x == "n") {
        let rest = Context::from_bindings(ctx.bindings().into_iter().filter(|(x, _)| &**x != "n"));
        for s in nat_replacements() {
            let want = ty.subst("n", &erase(&s));
            match typer.infer(&rest, &t.subst("n", &s)) {
                Ok(got) if got.alpha_eq(&want) => {}
                Ok(got) => {
                    return Verdict::Fail(format!(
                        "after n := {} the type is `{}`, expected `{}`",
                        pretty_ann(&s),
                        pretty_ty(&got),
                        pretty_ty(&want)
                    ))
                }
                Err(d) if d.kind == DiagnosticKind::JoinUndecided => {
                    return Verdict::Undecided(format!("after n := {}: {}", pretty_ann(&s), d.message))
                }
                Err(d) => return Verdict::Fail(format!("after n := {} checking fails: {d}", pretty_ann(&s))),
            }
        }
    }
    Verdict::Pass
}

fn round_trip(t: &AnnTerm) -> Verdict {
    let text = pretty_ann(t);
    match parse_term(&text) {
        Ok(back) if back.alpha_eq(t) => {}
        Ok(back) => return Verdict::Fail(format!("reparsed as `{}`", pretty_ann(&back))),
        Err(d) => return Verdict::Fail(format!("printed form does not parse: {d}")),
    }
    let e = erase(t);
    let etext = pretty_term(&e);
    match parse_erased(&etext) {
        Ok(back) if back.alpha_eq(&e) => {}
        Ok(back) => return Verdict::Fail(format!("erasure reparsed as `{}`", pretty_term(&back))),
        Err(d) => return Verdict::Fail(format!("printed erasure `{etext}` does not parse: {d}")),
    }
    for ty in annotation_types_of(t) {
        let text = pretty_ty(ty);
        match crate::frontend::parse_type(&text) {
            Ok(back) if back.alpha_eq(ty) => {}
            _ => return Verdict::Fail(format!("annotation `{text}` does not round trip")),
        }
    }
    Verdict::Pass
}

fn annotation_types_of(t: &AnnTerm) -> Vec<&Ty> {
    let mut out = t.annotations();
    if let AnnKind::Var(_) = t.kind {
        return out;
    }
    for c in t.children() {
        out.extend(annotation_types_of(c));
    }
    out
}
