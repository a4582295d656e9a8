//! Annotation erasure `|t|`, defined on every annotated term regardless of
//! whether it type checks.

use crate::syntax::{AnnKind, AnnTerm, Term};

pub fn erase(t: &AnnTerm) -> Term {
    use AnnKind::*;
    let e = |t: &AnnTerm| Box::new(erase(t));
    match &t.kind {
        Var(x) => Term::Var(x.clone()),
        App(f, a) => Term::App(e(f), e(a)),
        ImplicitApp(f, _) => erase(f),
        Lam(x, _, body) => Term::Lam(x.clone(), e(body)),
        ImplicitLam(_, _, body) => erase(body),
        Zero => Term::Zero,
        Succ(a) => Term::Succ(e(a)),
        RecNat { base, step, target, .. } => Term::RecNat(e(base), e(step), e(target)),
        Nil(_) => Term::Nil,
        Cons(h, tl) => Term::Cons(e(h), e(tl)),
        RecVec { base, step, target, .. } => Term::RecVec(e(base), e(step), e(target)),
        Join(..) => Term::Join,
        Cast { subject, .. } => erase(subject),
        QuasiLam(_, _, body) => Term::QuasiLam(e(body)),
        QuasiApp(f, _) => Term::QuasiApp(e(f)),
        FoldZ(_, a) | UnfoldZ(a) | FoldS(_, _, a) | UnfoldS(_, a) => erase(a),
    }
}

/// Embeds an erased term as an annotated one. Only terms without binders
/// or quasi-implicit forms have an annotation-free counterpart; `None`
/// otherwise.
pub fn embed(a: &Term) -> Option<AnnTerm> {
    use crate::syntax::build;
    Some(match a {
        Term::Var(x) => build::var(x),
        Term::App(f, b) => build::app(embed(f)?, embed(b)?),
        Term::Zero => build::zero(),
        Term::Succ(b) => build::succ(embed(b)?),
        Term::Cons(h, t) => build::cons(embed(h)?, embed(t)?),
        Term::Lam(..)
        | Term::RecNat(..)
        | Term::RecVec(..)
        | Term::Nil
        | Term::Join
        | Term::QuasiLam(_)
        | Term::QuasiApp(_) => return None,
    })
}
