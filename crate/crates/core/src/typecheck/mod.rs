//! Syntax-directed type computation `Γ ⊩ t : φ` for annotated terms.
//!
//! Every rule is determined by the root constructor, so [`Checker::infer`]
//! either returns the unique type of a term or a [`Diagnostic`] naming the
//! rule that failed. Types are compared with α-equivalence only; any
//! conversion has to be written as an explicit `cast`.

mod extension;

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::Serialize;

use crate::diagnostic::{Diagnostic, DiagnosticKind};
use crate::erase::erase;
use crate::frontend::{pretty_term, pretty_ty};
use crate::reduce::{join_check, DEFAULT_FUEL};
use crate::syntax::{fresh_name, AnnKind, AnnTerm, Context, Mode, Name, Span, Subst, Term, Ty};

pub type CheckResult = Result<Ty, Diagnostic>;

/// Anything that assigns types to annotated terms. The property suite is
/// generic over this so that deliberately broken checkers can be plugged in.
pub trait Typer: Sync {
    fn mode(&self) -> Mode;
    fn fuel(&self) -> u64;
    fn infer(&self, ctx: &Context, t: &AnnTerm) -> CheckResult;
}

/// Names of the typing rules, one per annotated constructor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Var,
    App,
    ImplicitApp,
    Lam,
    ImplicitLam,
    Zero,
    Succ,
    RecNat,
    Nil,
    Cons,
    RecVec,
    Join,
    Cast,
    QuasiLam,
    QuasiApp,
    FoldZ,
    UnfoldZ,
    FoldS,
    UnfoldS,
}

impl Rule {
    pub const ALL: [Rule; 19] = [
        Rule::Var,
        Rule::App,
        Rule::ImplicitApp,
        Rule::Lam,
        Rule::ImplicitLam,
        Rule::Zero,
        Rule::Succ,
        Rule::RecNat,
        Rule::Nil,
        Rule::Cons,
        Rule::RecVec,
        Rule::Join,
        Rule::Cast,
        Rule::QuasiLam,
        Rule::QuasiApp,
        Rule::FoldZ,
        Rule::UnfoldZ,
        Rule::FoldS,
        Rule::UnfoldS,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Var => "var",
            Rule::App => "app",
            Rule::ImplicitApp => "implicit-app",
            Rule::Lam => "lam",
            Rule::ImplicitLam => "implicit-lam",
            Rule::Zero => "zero",
            Rule::Succ => "succ",
            Rule::RecNat => "rnat",
            Rule::Nil => "nil",
            Rule::Cons => "cons",
            Rule::RecVec => "rvec",
            Rule::Join => "join",
            Rule::Cast => "cast",
            Rule::QuasiLam => "quasi-lam",
            Rule::QuasiApp => "quasi-app",
            Rule::FoldZ => "foldz",
            Rule::UnfoldZ => "unfoldz",
            Rule::FoldS => "folds",
            Rule::UnfoldS => "unfolds",
        }
    }

    /// Whether the rule exists in `mode`.
    pub fn in_mode(self, mode: Mode) -> bool {
        match self {
            Rule::ImplicitApp | Rule::ImplicitLam => mode == Mode::Base,
            Rule::QuasiLam | Rule::QuasiApp | Rule::FoldZ | Rule::UnfoldZ | Rule::FoldS | Rule::UnfoldS => {
                mode == Mode::LargeElim
            }
            _ => true,
        }
    }

    pub fn of(t: &AnnTerm) -> Rule {
        use AnnKind::*;
        match &t.kind {
            Var(_) => Rule::Var,
            App(..) => Rule::App,
            ImplicitApp(..) => Rule::ImplicitApp,
            Lam(..) => Rule::Lam,
            ImplicitLam(..) => Rule::ImplicitLam,
            Zero => Rule::Zero,
            Succ(_) => Rule::Succ,
            RecNat { .. } => Rule::RecNat,
            Nil(_) => Rule::Nil,
            Cons(..) => Rule::Cons,
            RecVec { .. } => Rule::RecVec,
            Join(..) => Rule::Join,
            Cast { .. } => Rule::Cast,
            QuasiLam(..) => Rule::QuasiLam,
            QuasiApp(..) => Rule::QuasiApp,
            FoldZ(..) => Rule::FoldZ,
            UnfoldZ(_) => Rule::UnfoldZ,
            FoldS(..) => Rule::FoldS,
            UnfoldS(..) => Rule::UnfoldS,
        }
    }
}

/// Per-rule counters of successful rule applications. Shared between
/// threads, so counting never requires `&mut`.
#[derive(Debug, Default)]
pub struct RuleHits {
    counts: [AtomicU64; 19],
}

impl RuleHits {
    pub fn new() -> Self {
        Self::default()
    }

    fn record(&self, rule: Rule) {
        self.counts[rule as usize].fetch_add(1, Ordering::Relaxed);
    }

    pub fn get(&self, rule: Rule) -> u64 {
        self.counts[rule as usize].load(Ordering::Relaxed)
    }

    pub fn snapshot(&self) -> Vec<(Rule, u64)> {
        Rule::ALL.iter().map(|&r| (r, self.get(r))).collect()
    }
}

/// The type checker for one mode.
#[derive(Clone, Debug)]
pub struct Checker {
    pub mode: Mode,
    /// Reduction budget for each side of every `join`.
    pub fuel: u64,
    hits: Option<Arc<RuleHits>>,
}

impl Default for Checker {
    fn default() -> Self {
        Checker::new(Mode::Base)
    }
}

impl Typer for Checker {
    fn mode(&self) -> Mode {
        self.mode
    }

    fn fuel(&self) -> u64 {
        self.fuel
    }

    fn infer(&self, ctx: &Context, t: &AnnTerm) -> CheckResult {
        Checker::infer(self, ctx, t)
    }
}

fn err(kind: DiagnosticKind, rule: Rule, span: Span, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::error(kind, rule.as_str(), span, msg)
}

fn mismatch(rule: Rule, span: Span, what: &str, expected: &Ty, actual: &Ty) -> Diagnostic {
    err(DiagnosticKind::TypeMismatch, rule, span, format!("{what} has the wrong type"))
        .with_types(pretty_ty(expected), pretty_ty(actual))
}

impl Checker {
    pub fn new(mode: Mode) -> Self {
        Checker { mode, fuel: DEFAULT_FUEL, hits: None }
    }

    pub fn with_fuel(mut self, fuel: u64) -> Self {
        self.fuel = fuel;
        self
    }

    /// Records every successful rule application into `hits`.
    pub fn with_hits(mut self, hits: Arc<RuleHits>) -> Self {
        self.hits = Some(hits);
        self
    }

    /// Computes the type of `t` in `ctx`. The context is validated once
    /// here; the rules below only extend it with scope-checked types.
    pub fn infer(&self, ctx: &Context, t: &AnnTerm) -> CheckResult {
        if let Some((x, why)) = ctx.first_violation() {
            return Err(Diagnostic::error(
                DiagnosticKind::ContextNotOk,
                "context",
                t.span,
                format!("context is not well scoped at `{x}`: {why}"),
            ));
        }
        for (x, ty) in ctx.bindings() {
            if self.mode == Mode::Base && ty.uses_extension() {
                return Err(Diagnostic::error(
                    DiagnosticKind::ModeViolation,
                    "context",
                    t.span,
                    format!("type of `{x}` uses large-elim forms in base mode"),
                ));
            }
        }
        self.synth(ctx, t)
    }

    /// Infers a type and compares it with `expected`.
    pub fn check_against(&self, ctx: &Context, t: &AnnTerm, expected: &Ty) -> CheckResult {
        let actual = self.infer(ctx, t)?;
        if actual.alpha_eq(expected) {
            Ok(expected.clone())
        } else {
            Err(Diagnostic::error(
                DiagnosticKind::TypeMismatch,
                "check",
                t.span,
                "inferred type differs from the declared type",
            )
            .with_types(pretty_ty(expected), pretty_ty(&actual)))
        }
    }

    fn synth(&self, ctx: &Context, t: &AnnTerm) -> CheckResult {
        let rule = Rule::of(t);
        if !rule.in_mode(self.mode) {
            let form = t.extension_form().or(t.base_only_form()).unwrap_or(rule.as_str());
            return Err(err(
                DiagnosticKind::ModeViolation,
                rule,
                t.span,
                format!("{form} is not available in {} mode", self.mode),
            ));
        }
        let ty = self.rule(ctx, t, rule)?;
        if let Some(h) = &self.hits {
            h.record(rule);
        }
        Ok(ty)
    }

    /// Checks that an annotation mentions only bound variables (plus the
    /// motive binders in `extra`) and fits the current mode.
    fn scope(&self, ctx: &Context, ty: &Ty, extra: &[&Name], rule: Rule, span: Span) -> Result<(), Diagnostic> {
        if let Some(x) = ty.free_vars().into_iter().find(|x| !ctx.contains(x) && !extra.contains(&x)) {
            return Err(err(
                DiagnosticKind::ScopeViolation,
                rule,
                span,
                format!("annotation `{}` mentions unbound variable `{x}`", pretty_ty(ty)),
            ));
        }
        if self.mode == Mode::Base && ty.uses_extension() {
            return Err(err(
                DiagnosticKind::ModeViolation,
                rule,
                span,
                format!("annotation `{}` uses large-elim forms in base mode", pretty_ty(ty)),
            ));
        }
        Ok(())
    }

    /// Enters the binder `x : dom` over `body`, renaming `x` when the
    /// context already binds it.
    fn bind(&self, ctx: &Context, x: &Name, dom: &Ty, body: &AnnTerm) -> (Name, Context, AnnTerm) {
        if !ctx.contains(x) {
            return (x.clone(), ctx.extend(x.clone(), dom.clone()), body.clone());
        }
        let body_fv = body.free_vars();
        let x2 = fresh_name(x, |c| ctx.contains(c) || body_fv.contains(c));
        let body2 = body.rename(x, &x2);
        (x2.clone(), ctx.extend(x2, dom.clone()), body2)
    }

    fn expect_pi(&self, ty: Ty, rule: Rule, span: Span, implicit: bool) -> Result<(Name, Ty, Ty), Diagnostic> {
        match (ty, implicit) {
            (Ty::Pi(x, a, b), false) | (Ty::Forall(x, a, b), true) => Ok((x, *a, *b)),
            (other, _) => {
                let want = if implicit { "an implicit product `All x : A. B`" } else { "a product `Pi x : A. B`" };
                Err(err(
                    DiagnosticKind::ShapeMismatch,
                    rule,
                    span,
                    format!("expected {want}, found `{}`", pretty_ty(&other)),
                ))
            }
        }
    }

    fn rule(&self, ctx: &Context, t: &AnnTerm, rule: Rule) -> CheckResult {
        use AnnKind::*;
        let span = t.span;
        match &t.kind {
            Var(x) => ctx.lookup(x).cloned().ok_or_else(|| {
                err(DiagnosticKind::UnboundVariable, rule, span, format!("variable `{x}` is not bound"))
            }),
            App(f, a) | ImplicitApp(f, a) | QuasiApp(f, a) => {
                let implicit = !matches!(t.kind, App(..));
                let fty = self.synth(ctx, f)?;
                let (x, dom, cod) = self.expect_pi(fty, rule, f.span, implicit)?;
                let aty = self.synth(ctx, a)?;
                if !aty.alpha_eq(&dom) {
                    let what = if rule == Rule::QuasiApp { "witness" } else { "argument" };
                    return Err(mismatch(rule, a.span, what, &dom, &aty));
                }
                Ok(cod.subst(&x, &erase(a)))
            }
            Lam(x, dom, body) | ImplicitLam(x, dom, body) | QuasiLam(x, dom, body) => {
                self.scope(ctx, dom, &[], rule, span)?;
                let (x2, inner, body2) = self.bind(ctx, x, dom, body);
                let cod = self.synth(&inner, &body2)?;
                if matches!(t.kind, Lam(..)) {
                    return Ok(Ty::Pi(x2, Box::new(dom.clone()), Box::new(cod)));
                }
                if erase(&body2).occurs_free(&x2) {
                    return Err(err(
                        DiagnosticKind::ImplicitVariableEscapes,
                        rule,
                        span,
                        format!(
                            "`{x}` is bound implicitly but occurs in the erased body `{}`",
                            pretty_term(&erase(body))
                        ),
                    ));
                }
                Ok(Ty::Forall(x2, Box::new(dom.clone()), Box::new(cod)))
            }
            Zero => Ok(Ty::Nat),
            Succ(a) => {
                let aty = self.synth(ctx, a)?;
                if aty != Ty::Nat {
                    return Err(mismatch(rule, a.span, "argument of S", &Ty::Nat, &aty));
                }
                Ok(Ty::Nat)
            }
            Nil(elem) => {
                self.scope(ctx, elem, &[], rule, span)?;
                Ok(Ty::vec(elem.clone(), Term::Zero))
            }
            Cons(h, tl) => {
                let tty = self.synth(ctx, tl)?;
                let (elem, len) = match tty {
                    Ty::Vec(elem, len) => (*elem, len),
                    other => {
                        return Err(err(
                            DiagnosticKind::ShapeMismatch,
                            rule,
                            tl.span,
                            format!("tail of cons must be a vector, found `{}`", pretty_ty(&other)),
                        ))
                    }
                };
                let hty = self.synth(ctx, h)?;
                if !hty.alpha_eq(&elem) {
                    return Err(mismatch(rule, h.span, "head of cons", &elem, &hty));
                }
                Ok(Ty::vec(elem, Term::succ(len)))
            }
            RecNat { var, motive, base, step, target } => {
                self.scope(ctx, motive, &[var], rule, span)?;
                let tty = self.synth(ctx, target)?;
                if tty != Ty::Nat {
                    return Err(mismatch(rule, target.span, "scrutinee", &Ty::Nat, &tty));
                }
                let base_want = motive.subst(var, &Term::Zero);
                let bty = self.synth(ctx, base)?;
                if !bty.alpha_eq(&base_want) {
                    return Err(mismatch(rule, base.span, "zero case", &base_want, &bty));
                }
                let taken = taken_names(ctx, motive);
                let y = fresh_name("y", |c| taken.contains(c));
                let u = fresh_name("u", |c| taken.contains(c) || *c == *y);
                let step_want = Ty::Pi(
                    y.clone(),
                    Box::new(Ty::Nat),
                    Box::new(Ty::Pi(
                        u,
                        Box::new(motive.subst(var, &Term::Var(y.clone()))),
                        Box::new(motive.subst(var, &Term::succ(Term::Var(y)))),
                    )),
                );
                let sty = self.synth(ctx, step)?;
                if !sty.alpha_eq(&step_want) {
                    return Err(mismatch(rule, step.span, "successor case", &step_want, &sty));
                }
                Ok(motive.subst(var, &erase(target)))
            }
            RecVec { len_var, vec_var, motive, base, step, target } => {
                self.scope(ctx, motive, &[len_var, vec_var], rule, span)?;
                let tty = self.synth(ctx, target)?;
                let (elem, len) = match tty {
                    Ty::Vec(elem, len) => (*elem, len),
                    other => {
                        return Err(err(
                            DiagnosticKind::ShapeMismatch,
                            rule,
                            target.span,
                            format!("scrutinee must be a vector, found `{}`", pretty_ty(&other)),
                        ))
                    }
                };
                let inst = |l: Term, v: Term| {
                    motive.subst_with(&Subst::new().with(len_var.clone(), l).with(vec_var.clone(), v))
                };
                let base_want = inst(Term::Zero, Term::Nil);
                let bty = self.synth(ctx, base)?;
                if !bty.alpha_eq(&base_want) {
                    return Err(mismatch(rule, base.span, "nil case", &base_want, &bty));
                }
                let mut taken = taken_names(ctx, motive);
                taken.extend(elem.free_vars());
                let mut pick = |base: &str| {
                    let n = fresh_name(base, |c| taken.contains(c));
                    taken.insert(n.clone());
                    n
                };
                let (l, z, v, u) = (pick("l"), pick("z"), pick("v"), pick("u"));
                let var = |n: &Name| Term::Var(n.clone());
                let step_want = Ty::Forall(
                    l.clone(),
                    Box::new(Ty::Nat),
                    Box::new(Ty::Pi(
                        z.clone(),
                        Box::new(elem.clone()),
                        Box::new(Ty::Pi(
                            v.clone(),
                            Box::new(Ty::vec(elem.clone(), var(&l))),
                            Box::new(Ty::Pi(
                                u,
                                Box::new(inst(var(&l), var(&v))),
                                Box::new(inst(Term::succ(var(&l)), Term::cons(var(&z), var(&v)))),
                            )),
                        )),
                    )),
                );
                let sty = self.synth(ctx, step)?;
                if !sty.alpha_eq(&step_want) {
                    return Err(mismatch(rule, step.span, "cons case", &step_want, &sty));
                }
                Ok(inst(len, erase(target)))
            }
            Join(a, b) => {
                self.synth(ctx, a)?;
                self.synth(ctx, b)?;
                let (ea, eb) = (erase(a), erase(b));
                match join_check(&ea, &eb, self.fuel, self.mode) {
                    Ok(j) if j.joinable => Ok(Ty::Eq(ea, eb)),
                    Ok(j) => Err(err(
                        DiagnosticKind::JoinFailed,
                        rule,
                        span,
                        format!("`{}` and `{}` are not joinable", pretty_term(&ea), pretty_term(&eb)),
                    )
                    .with_types(pretty_term(&j.left), pretty_term(&j.right))
                    .with_note(Diagnostic::note(span, "expected/actual show the two normal forms"))),
                    Err(e) => Err(err(
                        DiagnosticKind::JoinUndecided,
                        rule,
                        span,
                        format!("undecided: normalization ran out of fuel ({e})"),
                    )),
                }
            }
            Cast { var, motive, proof, subject } => {
                self.scope(ctx, motive, &[var], rule, span)?;
                let pty = self.synth(ctx, proof)?;
                let (lhs, rhs) = match pty {
                    Ty::Eq(l, r) => (l, r),
                    other => {
                        return Err(err(
                            DiagnosticKind::ShapeMismatch,
                            rule,
                            proof.span,
                            format!("cast needs an equality proof, found `{}`", pretty_ty(&other)),
                        ))
                    }
                };
                let want = motive.subst(var, &lhs);
                let sty = self.synth(ctx, subject)?;
                if !sty.alpha_eq(&want) {
                    return Err(mismatch(rule, subject.span, "cast subject", &want, &sty));
                }
                Ok(motive.subst(var, &rhs))
            }
            FoldZ(..) | UnfoldZ(_) | FoldS(..) | UnfoldS(..) => self.rule_fold(ctx, t, rule),
        }
    }
}

/// Names a fresh binder must avoid: the context domain and the motive's
/// free variables.
fn taken_names(ctx: &Context, motive: &Ty) -> BTreeSet<Name> {
    let mut taken = ctx.domain();
    taken.extend(motive.free_vars());
    taken
}

/// Convenience: infer in the empty context.
pub fn infer_closed(mode: Mode, t: &AnnTerm) -> CheckResult {
    Checker::new(mode).infer(&Context::new(), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_term, parse_type};

    fn infer_src(ctx: &Context, src: &str) -> CheckResult {
        Checker::new(Mode::Base).infer(ctx, &parse_term(src).unwrap())
    }

    fn ty(src: &str) -> Ty {
        parse_type(src).unwrap()
    }

    const PLUS: &str = "(fun m : Nat => fun n : Nat => rnat [x. Nat] n (fun y : Nat => fun u : Nat => S u) m)";

    #[test]
    fn reflexive_join() {
        assert_eq!(infer_src(&Context::new(), "join 0 0").unwrap(), ty("0 = 0"));
    }

    #[test]
    fn join_of_distinct_numerals_fails() {
        let d = infer_src(&Context::new(), "join 0 (S 0)").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::JoinFailed);
        assert_eq!(d.expected.as_deref(), Some("0"));
        assert_eq!(d.actual.as_deref(), Some("1"));
    }

    #[test]
    fn open_join_with_free_length() {
        let ctx = Context::from_bindings([("l2", Ty::Nat)]);
        let t = infer_src(&ctx, &format!("join l2 ({PLUS} 0 l2)")).unwrap();
        assert!(matches!(t, Ty::Eq(Term::Var(_), _)));
    }

    #[test]
    fn check_against_reports_both_types() {
        let c = Checker::new(Mode::Base);
        assert_eq!(c.check_against(&Context::new(), &parse_term("0").unwrap(), &Ty::Nat).unwrap(), Ty::Nat);
        let d = c.check_against(&Context::new(), &parse_term("0").unwrap(), &ty("0 = 0")).unwrap_err();
        assert_eq!(d.expected.as_deref(), Some("0 = 0"));
        assert_eq!(d.actual.as_deref(), Some("Nat"));
    }

    #[test]
    fn implicit_abstraction_side_condition() {
        let ok = infer_src(&Context::new(), "ifun l : Nat => fun v : Vec Nat l => v").unwrap();
        assert!(ok.alpha_eq(&ty("All l : Nat. Pi v : Vec Nat l. Vec Nat l")));
        let d = infer_src(&Context::new(), "ifun x : Nat => x").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::ImplicitVariableEscapes);
    }

    #[test]
    fn implicit_application_substitutes_the_erased_witness() {
        let t = infer_src(&Context::new(), "(ifun l : Nat => fun v : Vec Nat l => v) @[S 0]").unwrap();
        assert!(t.alpha_eq(&ty("Pi v : Vec Nat 1. Vec Nat 1")));
    }

    #[test]
    fn cast_rewrites_the_motive() {
        let ctx = Context::from_bindings([("l", Ty::Nat), ("v", ty("Vec Nat l"))]);
        let t = infer_src(&ctx, &format!("cast [x. Vec Nat x] (join l ({PLUS} 0 l)) v")).unwrap();
        let Ty::Vec(_, len) = t else { panic!() };
        assert!(matches!(len, Term::App(..)));
    }

    #[test]
    fn recursors() {
        let t = infer_src(&Context::new(), &format!("{PLUS} 2 2")).unwrap();
        assert_eq!(t, Ty::Nat);
        let len = "rvec [x. y. Nat] 0 (ifun l : Nat => fun z : Nat => fun v : Vec Nat l => fun u : Nat => S u) (cons 0 nil[Nat])";
        assert_eq!(infer_src(&Context::new(), len).unwrap(), Ty::Nat);
    }

    #[test]
    fn dependent_recursor_motive() {
        // Builds a vector of zeros of length n.
        let src = "fun n : Nat => rnat [x. Vec Nat x] nil[Nat] (fun y : Nat => fun u : Vec Nat y => cons 0 u) n";
        let t = infer_src(&Context::new(), src).unwrap();
        assert!(t.alpha_eq(&ty("Pi n : Nat. Vec Nat n")));
    }

    #[test]
    fn binder_shadowing_the_context_is_renamed() {
        let ctx = Context::from_bindings([("x", ty("0 = 0"))]);
        let t = infer_src(&ctx, "fun x : Nat => x").unwrap();
        assert!(t.alpha_eq(&ty("Pi z : Nat. Nat")));
    }

    #[test]
    fn failures_carry_rule_and_span() {
        let d = infer_src(&Context::new(), "S (join 0 0)").unwrap_err();
        assert_eq!(d.rule, "succ");
        assert_eq!(d.span, Span::new(2, 12));
        let d = infer_src(&Context::new(), "0 0").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::ShapeMismatch);
        let d = infer_src(&Context::new(), "fun v : Vec Nat q => v").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::ScopeViolation);
    }

    #[test]
    fn ill_scoped_context_is_rejected() {
        let ctx = Context::from_bindings([("v", ty("Vec Nat x"))]);
        assert_eq!(infer_src(&ctx, "0").unwrap_err().kind, DiagnosticKind::ContextNotOk);
    }

    #[test]
    fn extension_forms_are_rejected_in_base_mode() {
        let d = infer_src(&Context::new(), "foldz [Nat] 0").unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::ModeViolation);
    }

    #[test]
    fn hits_are_recorded() {
        let hits = Arc::new(RuleHits::new());
        let c = Checker::new(Mode::Base).with_hits(hits.clone());
        c.infer(&Context::new(), &parse_term("S (S 0)").unwrap()).unwrap();
        assert_eq!(hits.get(Rule::Succ), 2);
        assert_eq!(hits.get(Rule::Zero), 1);
        assert_eq!(hits.get(Rule::Join), 0);
    }
}
