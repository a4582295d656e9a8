//! Reduction of erased terms.
//!
//! Full β-reduction (the compatible closure of the five contraction rules,
//! plus `(λ.a)◦ ⇝ a` in large-elim mode) decides equality through
//! normal forms. The call-by-value relation is the operational semantics:
//! it never reduces under `λx.` or `λ.`, evaluates operator before operand,
//! and recursor arguments left to right with the scrutinee last.

use std::fmt;

use crate::frontend::pretty_term;
use crate::syntax::{Mode, Term};

pub const DEFAULT_FUEL: u64 = 100_000;

/// Terms larger than this are treated like fuel exhaustion; only
/// non-normalizing inputs ever grow this far.
pub const MAX_TERM_NODES: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    LeftmostOutermost,
    RightmostInnermost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizeOutcome {
    NormalForm { term: Term, steps: u64 },
    FuelExhausted { last: Term, fuel: u64 },
}

impl NormalizeOutcome {
    pub fn normal_form(&self) -> Option<&Term> {
        match self {
            NormalizeOutcome::NormalForm { term, .. } => Some(term),
            NormalizeOutcome::FuelExhausted { .. } => None,
        }
    }

    pub fn into_result(self) -> Result<Term, FuelExhausted> {
        match self {
            NormalizeOutcome::NormalForm { term, .. } => Ok(term),
            NormalizeOutcome::FuelExhausted { last, fuel } => Err(FuelExhausted { last, fuel }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("reduction did not finish within {fuel} steps")]
pub struct FuelExhausted {
    pub last: Term,
    pub fuel: u64,
}

// ---------------------------------------------------------------------------
// Full β

/// Contracts the redex at the root of `a`, if there is one.
pub fn contract(a: &Term, mode: Mode) -> Option<Term> {
    match a {
        Term::App(f, arg) => match &**f {
            Term::Lam(x, body) => Some(body.subst(x, arg)),
            _ => None,
        },
        Term::QuasiApp(f) => match &**f {
            Term::QuasiLam(body) => Some((**body).clone()),
            _ => None,
        },
        Term::RecNat(base, step, target) => match &**target {
            Term::Zero => Some((**base).clone()),
            Term::Succ(pred) => Some(Term::apps(
                (**step).clone(),
                [(**pred).clone(), Term::RecNat(base.clone(), step.clone(), pred.clone())],
            )),
            _ => None,
        },
        Term::RecVec(base, step, target) => match &**target {
            Term::Nil => Some((**base).clone()),
            Term::Cons(head, tail) => {
                // The step of a large-elim vector recursor is quasi-implicit
                // in the length, so it is instantiated with `◦` first.
                let step_term = match mode {
                    Mode::Base => (**step).clone(),
                    Mode::LargeElim => Term::quasi_app((**step).clone()),
                };
                Some(Term::apps(
                    step_term,
                    [(**head).clone(), (**tail).clone(), Term::RecVec(base.clone(), step.clone(), tail.clone())],
                ))
            }
            _ => None,
        },
        _ => None,
    }
}

fn children(a: &Term) -> Vec<&Term> {
    match a {
        Term::Var(_) | Term::Zero | Term::Nil | Term::Join => vec![],
        Term::Lam(_, b) | Term::Succ(b) | Term::QuasiLam(b) | Term::QuasiApp(b) => vec![b],
        Term::App(x, y) | Term::Cons(x, y) => vec![x, y],
        Term::RecNat(x, y, z) | Term::RecVec(x, y, z) => vec![x, y, z],
    }
}

fn replace_child(a: &Term, index: usize, new: Term) -> Term {
    let mut out = a.clone();
    let slot: &mut Term = match (&mut out, index) {
        (Term::Lam(_, b) | Term::Succ(b) | Term::QuasiLam(b) | Term::QuasiApp(b), 0) => b,
        (Term::App(x, _) | Term::Cons(x, _) | Term::RecNat(x, _, _) | Term::RecVec(x, _, _), 0) => x,
        (Term::App(_, y) | Term::Cons(_, y) | Term::RecNat(_, y, _) | Term::RecVec(_, y, _), 1) => y,
        (Term::RecNat(_, _, z) | Term::RecVec(_, _, z), 2) => z,
        _ => unreachable!("child index {index} out of range"),
    };
    *slot = new;
    out
}

/// All one-step full-β reducts of `a`, without duplicates.
pub fn step_full(a: &Term, mode: Mode) -> Vec<Term> {
    let mut out = Vec::new();
    if let Some(r) = contract(a, mode) {
        out.push(r);
    }
    for (i, child) in children(a).into_iter().enumerate() {
        for r in step_full(child, mode) {
            out.push(replace_child(a, i, r));
        }
    }
    let mut unique: Vec<Term> = Vec::with_capacity(out.len());
    for t in out {
        if !unique.contains(&t) {
            unique.push(t);
        }
    }
    unique
}

pub fn is_normal(a: &Term, mode: Mode) -> bool {
    step_leftmost_outermost(a, mode).is_none()
}

pub fn step_leftmost_outermost(a: &Term, mode: Mode) -> Option<Term> {
    if let Some(r) = contract(a, mode) {
        return Some(r);
    }
    children(a)
        .into_iter()
        .enumerate()
        .find_map(|(i, c)| step_leftmost_outermost(c, mode).map(|r| (i, r)))
        .map(|(i, r)| replace_child(a, i, r))
}

pub fn step_rightmost_innermost(a: &Term, mode: Mode) -> Option<Term> {
    let kids = children(a);
    for i in (0..kids.len()).rev() {
        if let Some(r) = step_rightmost_innermost(kids[i], mode) {
            return Some(replace_child(a, i, r));
        }
    }
    contract(a, mode)
}

pub fn step_with(a: &Term, mode: Mode, strategy: Strategy) -> Option<Term> {
    match strategy {
        Strategy::LeftmostOutermost => step_leftmost_outermost(a, mode),
        Strategy::RightmostInnermost => step_rightmost_innermost(a, mode),
    }
}

/// Normal-order normalization with a step budget.
pub fn normalize(a: &Term, fuel: u64, mode: Mode) -> NormalizeOutcome {
    normalize_with(a, fuel, mode, Strategy::LeftmostOutermost, &mut |_, _| {})
}

pub fn normalize_with(
    a: &Term,
    fuel: u64,
    mode: Mode,
    strategy: Strategy,
    on_step: &mut dyn FnMut(u64, &Term),
) -> NormalizeOutcome {
    let mut cur = a.clone();
    let mut steps = 0;
    loop {
        match step_with(&cur, mode, strategy) {
            None => return NormalizeOutcome::NormalForm { term: cur, steps },
            Some(_) if steps >= fuel || cur.size() > MAX_TERM_NODES => {
                return NormalizeOutcome::FuelExhausted { last: cur, fuel };
            }
            Some(next) => {
                steps += 1;
                on_step(steps, &next);
                cur = next;
            }
        }
    }
}

/// Result of comparing two terms by their normal forms.
#[derive(Clone, Debug)]
pub struct Joinability {
    pub joinable: bool,
    pub left: Term,
    pub right: Term,
}

/// Normalizes both sides and compares the normal forms up to α.
pub fn join_check(a: &Term, b: &Term, fuel: u64, mode: Mode) -> Result<Joinability, FuelExhausted> {
    let left = normalize(a, fuel, mode).into_result()?;
    let right = normalize(b, fuel, mode).into_result()?;
    Ok(Joinability { joinable: left.alpha_eq(&right), left, right })
}

/// `a ↓ b`
pub fn joinable(a: &Term, b: &Term, fuel: u64, mode: Mode) -> Result<bool, FuelExhausted> {
    join_check(a, b, fuel, mode).map(|j| j.joinable)
}

// ---------------------------------------------------------------------------
// Call-by-value

/// `v ::= λx.a | λ.a | 0 | S v | nil | cons v v | join`
pub fn is_value(a: &Term) -> bool {
    match a {
        Term::Lam(..) | Term::QuasiLam(_) | Term::Zero | Term::Nil | Term::Join => true,
        Term::Succ(v) => is_value(v),
        Term::Cons(v, w) => is_value(v) && is_value(w),
        _ => false,
    }
}

/// Why a CBV configuration cannot step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StuckReason {
    FreeVariable(Term),
    NotAFunction(Term),
    NotAQuasiAbstraction(Term),
    NotANumeral(Term),
    NotAVector(Term),
}

impl fmt::Display for StuckReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StuckReason::FreeVariable(t) => write!(f, "free variable `{}` has no value", pretty_term(t)),
            StuckReason::NotAFunction(t) => write!(f, "`{}` is applied but is not a function", pretty_term(t)),
            StuckReason::NotAQuasiAbstraction(t) => {
                write!(f, "`{}` is instantiated with `@-` but is not a `qfun`", pretty_term(t))
            }
            StuckReason::NotANumeral(t) => write!(f, "rnat scrutinee `{}` is not a numeral", pretty_term(t)),
            StuckReason::NotAVector(t) => write!(f, "rvec scrutinee `{}` is not a vector", pretty_term(t)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CbvStep {
    Reduced(Term),
    Value,
    Stuck(StuckReason),
}

/// One CBV step, distinguishing values from stuck terms.
pub fn cbv_step(a: &Term, mode: Mode) -> CbvStep {
    match a {
        Term::Lam(..) | Term::QuasiLam(_) | Term::Zero | Term::Nil | Term::Join => CbvStep::Value,
        Term::Var(_) => CbvStep::Stuck(StuckReason::FreeVariable(a.clone())),
        Term::Succ(b) => match cbv_step(b, mode) {
            CbvStep::Reduced(b2) => CbvStep::Reduced(Term::succ(b2)),
            other => other,
        },
        Term::Cons(h, t) => match cbv_step(h, mode) {
            CbvStep::Reduced(h2) => CbvStep::Reduced(Term::Cons(Box::new(h2), t.clone())),
            CbvStep::Stuck(r) => CbvStep::Stuck(r),
            CbvStep::Value => match cbv_step(t, mode) {
                CbvStep::Reduced(t2) => CbvStep::Reduced(Term::Cons(h.clone(), Box::new(t2))),
                other => other,
            },
        },
        Term::App(f, arg) => match cbv_step(f, mode) {
            CbvStep::Reduced(f2) => CbvStep::Reduced(Term::App(Box::new(f2), arg.clone())),
            CbvStep::Stuck(r) => CbvStep::Stuck(r),
            CbvStep::Value => match cbv_step(arg, mode) {
                CbvStep::Reduced(a2) => CbvStep::Reduced(Term::App(f.clone(), Box::new(a2))),
                CbvStep::Stuck(r) => CbvStep::Stuck(r),
                CbvStep::Value => match contract(a, mode) {
                    Some(r) => CbvStep::Reduced(r),
                    None => CbvStep::Stuck(StuckReason::NotAFunction((**f).clone())),
                },
            },
        },
        Term::QuasiApp(f) => match cbv_step(f, mode) {
            CbvStep::Reduced(f2) => CbvStep::Reduced(Term::quasi_app(f2)),
            CbvStep::Stuck(r) => CbvStep::Stuck(r),
            CbvStep::Value => match contract(a, mode) {
                Some(r) => CbvStep::Reduced(r),
                None => CbvStep::Stuck(StuckReason::NotAQuasiAbstraction((**f).clone())),
            },
        },
        Term::RecNat(..) | Term::RecVec(..) => {
            let kids = children(a);
            for (i, k) in kids.iter().enumerate() {
                match cbv_step(k, mode) {
                    CbvStep::Reduced(k2) => return CbvStep::Reduced(replace_child(a, i, k2)),
                    CbvStep::Stuck(r) => return CbvStep::Stuck(r),
                    CbvStep::Value => {}
                }
            }
            match contract(a, mode) {
                Some(r) => CbvStep::Reduced(r),
                None if matches!(a, Term::RecNat(..)) => CbvStep::Stuck(StuckReason::NotANumeral(kids[2].clone())),
                None => CbvStep::Stuck(StuckReason::NotAVector(kids[2].clone())),
            }
        }
    }
}

/// The unique CBV reduct, or `None` for values and stuck terms.
pub fn step_cbv(a: &Term, mode: Mode) -> Option<Term> {
    match cbv_step(a, mode) {
        CbvStep::Reduced(r) => Some(r),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CbvOutcome {
    Value { term: Term, steps: u64 },
    Stuck { term: Term, reason: StuckReason, steps: u64 },
    FuelExhausted { last: Term, fuel: u64 },
}

impl CbvOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            CbvOutcome::Value { .. } => "Value",
            CbvOutcome::Stuck { .. } => "Stuck",
            CbvOutcome::FuelExhausted { .. } => "FuelExhausted",
        }
    }
}

pub fn eval_cbv(a: &Term, fuel: u64, mode: Mode) -> CbvOutcome {
    eval_cbv_traced(a, fuel, mode, &mut |_, _| {})
}

pub fn eval_cbv_traced(a: &Term, fuel: u64, mode: Mode, on_step: &mut dyn FnMut(u64, &Term)) -> CbvOutcome {
    let mut cur = a.clone();
    let mut steps = 0;
    loop {
        match cbv_step(&cur, mode) {
            CbvStep::Value => return CbvOutcome::Value { term: cur, steps },
            CbvStep::Stuck(reason) => return CbvOutcome::Stuck { term: cur, reason, steps },
            CbvStep::Reduced(_) if steps >= fuel || cur.size() > MAX_TERM_NODES => {
                return CbvOutcome::FuelExhausted { last: cur, fuel };
            }
            CbvStep::Reduced(next) => {
                steps += 1;
                on_step(steps, &next);
                cur = next;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: Mode = Mode::Base;

    fn id() -> Term {
        Term::lam("x", Term::var("x"))
    }

    /// λm.λn. R_nat n (λy.λu. S u) m
    fn plus() -> Term {
        Term::lam(
            "m",
            Term::lam(
                "n",
                Term::rec_nat(
                    Term::var("n"),
                    Term::lam("y", Term::lam("u", Term::succ(Term::var("u")))),
                    Term::var("m"),
                ),
            ),
        )
    }

    fn omega() -> Term {
        let w = Term::lam("x", Term::app(Term::var("x"), Term::var("x")));
        Term::app(w.clone(), w)
    }

    #[test]
    fn beta_at_the_root() {
        assert_eq!(step_full(&Term::app(id(), Term::Zero), B), vec![Term::Zero]);
    }

    #[test]
    fn rnat_zero_and_reducts_inside() {
        let a = Term::app(id(), Term::Zero);
        let t = Term::rec_nat(a.clone(), Term::var("f"), Term::Zero);
        let reducts = step_full(&t, B);
        assert!(reducts.contains(&a));
        assert!(reducts.contains(&Term::rec_nat(Term::Zero, Term::var("f"), Term::Zero)));
        assert_eq!(reducts.len(), 2);
    }

    #[test]
    fn rvec_cons_unfolds_one_step() {
        let (a, f, h, tl) = (Term::var("a"), Term::var("f"), Term::var("h"), Term::var("t"));
        let t = Term::rec_vec(a.clone(), f.clone(), Term::cons(h.clone(), tl.clone()));
        let expected = Term::apps(f.clone(), [h, tl.clone(), Term::rec_vec(a.clone(), f.clone(), tl)]);
        assert!(step_full(&t, B).contains(&expected));
    }

    #[test]
    fn large_elim_rvec_instantiates_the_step() {
        let t = Term::rec_vec(Term::var("a"), Term::var("f"), Term::cons(Term::var("h"), Term::Nil));
        let r = contract(&t, Mode::LargeElim).unwrap();
        let Term::App(inner, _) = &r else { panic!("{r:?}") };
        let Term::App(inner, _) = &**inner else { panic!() };
        let Term::App(head, _) = &**inner else { panic!() };
        assert_eq!(**head, Term::quasi_app(Term::var("f")));
    }

    #[test]
    fn plus_two_two_is_four() {
        let t = Term::apps(plus(), [Term::numeral(2), Term::numeral(2)]);
        match normalize(&t, DEFAULT_FUEL, B) {
            NormalizeOutcome::NormalForm { term, steps } => {
                assert_eq!(term, Term::numeral(4));
                assert!(steps > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_is_already_normal() {
        assert_eq!(
            normalize(&Term::Zero, DEFAULT_FUEL, B),
            NormalizeOutcome::NormalForm { term: Term::Zero, steps: 0 }
        );
    }

    #[test]
    fn omega_exhausts_fuel() {
        for fuel in [1, 10, 1000] {
            assert!(
                matches!(normalize(&omega(), fuel, B), NormalizeOutcome::FuelExhausted { fuel: f, .. } if f == fuel)
            );
        }
    }

    #[test]
    fn growing_divergence_is_cut_off() {
        let w = Term::lam("x", Term::apps(Term::var("x"), [Term::var("x"), Term::var("x")]));
        let t = Term::app(w.clone(), w);
        assert!(matches!(normalize(&t, 50, B), NormalizeOutcome::FuelExhausted { .. }));
    }

    #[test]
    fn joinability_of_open_arithmetic() {
        let l2 = Term::var("l2");
        let l = Term::var("l");
        assert!(joinable(&l2, &Term::apps(plus(), [Term::Zero, l2.clone()]), DEFAULT_FUEL, B).unwrap());
        let lhs = Term::succ(Term::apps(plus(), [l.clone(), l2.clone()]));
        let rhs = Term::apps(plus(), [Term::succ(l), l2]);
        assert!(joinable(&lhs, &rhs, DEFAULT_FUEL, B).unwrap());
        assert!(!joinable(&Term::Zero, &Term::numeral(1), DEFAULT_FUEL, B).unwrap());
    }

    #[test]
    fn joinable_propagates_fuel_exhaustion() {
        assert!(joinable(&omega(), &Term::Zero, 100, B).is_err());
    }

    #[test]
    fn values() {
        assert!(is_value(&Term::numeral(1)));
        assert!(!is_value(&Term::succ(Term::app(id(), Term::Zero))));
        assert!(is_value(&Term::quasi_lam(Term::app(Term::Zero, Term::Zero))));
        assert!(!is_value(&Term::var("x")));
    }

    #[test]
    fn cbv_quasi_beta() {
        let a = Term::var("a");
        assert_eq!(step_cbv(&Term::quasi_app(Term::quasi_lam(a.clone())), Mode::LargeElim), Some(a));
    }

    #[test]
    fn zero_applied_to_zero_is_stuck() {
        let t = Term::app(Term::Zero, Term::Zero);
        assert_eq!(step_cbv(&t, B), None);
        assert!(!is_value(&t));
        assert!(matches!(eval_cbv(&t, 10, B), CbvOutcome::Stuck { steps: 0, .. }));
    }

    #[test]
    fn cbv_reduces_the_argument_once_the_head_is_a_value() {
        let t = Term::app(id(), Term::app(id(), Term::Zero));
        assert_eq!(step_cbv(&t, B), Some(Term::app(id(), Term::Zero)));
    }

    #[test]
    fn cbv_never_enters_a_quasi_lambda() {
        let t = Term::quasi_lam(Term::app(Term::Zero, Term::Zero));
        assert_eq!(eval_cbv(&t, 10, Mode::LargeElim), CbvOutcome::Value { term: t.clone(), steps: 0 });
    }

    #[test]
    fn cbv_recursor_evaluates_scrutinee_last() {
        let redex = Term::app(id(), Term::Zero);
        let t = Term::rec_nat(redex.clone(), Term::var("f"), redex.clone());
        let expected = Term::rec_nat(Term::Zero, Term::var("f"), redex);
        assert_eq!(step_cbv(&t, B), Some(expected));
    }

    #[test]
    fn strategies_agree_on_plus() {
        let t = Term::apps(plus(), [Term::numeral(2), Term::numeral(3)]);
        let lo = normalize_with(&t, DEFAULT_FUEL, B, Strategy::LeftmostOutermost, &mut |_, _| {});
        let ri = normalize_with(&t, DEFAULT_FUEL, B, Strategy::RightmostInnermost, &mut |_, _| {});
        assert!(lo.normal_form().unwrap().alpha_eq(ri.normal_form().unwrap()));
    }
}
