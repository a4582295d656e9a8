//! Core syntax: unannotated terms, types, annotated terms and contexts.
//!
//! Variables are named. α-equivalence is decided structurally by
//! comparing binder positions (see [`alpha`]), so binder names are only
//! hints kept for printing and diagnostics.

mod alpha;
mod context;
mod subst;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use alpha::{alpha_eq_ann, alpha_eq_term, alpha_eq_ty};
pub use context::Context;
pub use subst::{fresh_name, AnnSubst, Subst};

pub type Name = Arc<str>;

pub fn name(s: &str) -> Name {
    Arc::from(s)
}

/// Which fragment of the theory a term lives in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Implicit products via `ifun` / `@[..]`; full-β reduction is normalizing.
    #[default]
    Base,
    /// `ifzero` types, quasi-implicit products and fold/unfold coercions.
    LargeElim,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Base => "base",
            Mode::LargeElim => "large-elim",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "base" => Ok(Mode::Base),
            "large-elim" => Ok(Mode::LargeElim),
            other => Err(format!("unknown mode `{other}` (expected `base` or `large-elim`)")),
        }
    }
}

/// Byte range into a source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub const DUMMY: Span = Span { start: 0, end: 0 };

    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

/// Erased program term: the object of reduction and of equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name),
    App(Box<Term>, Box<Term>),
    Lam(Name, Box<Term>),
    Zero,
    Succ(Box<Term>),
    /// `R_nat base step target`
    RecNat(Box<Term>, Box<Term>, Box<Term>),
    Nil,
    Cons(Box<Term>, Box<Term>),
    /// `R_vc base step target`
    RecVec(Box<Term>, Box<Term>, Box<Term>),
    Join,
    /// `λ.a`, the binder-free quasi-implicit abstraction.
    QuasiLam(Box<Term>),
    /// `a ◦`
    QuasiApp(Box<Term>),
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(name(x))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    /// Left-nested application `f a1 a2 ...`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn lam(x: &str, body: Term) -> Term {
        Term::Lam(name(x), Box::new(body))
    }

    pub fn succ(a: Term) -> Term {
        Term::Succ(Box::new(a))
    }

    pub fn numeral(n: u64) -> Term {
        (0..n).fold(Term::Zero, |acc, _| Term::succ(acc))
    }

    pub fn rec_nat(base: Term, step: Term, target: Term) -> Term {
        Term::RecNat(Box::new(base), Box::new(step), Box::new(target))
    }

    pub fn cons(head: Term, tail: Term) -> Term {
        Term::Cons(Box::new(head), Box::new(tail))
    }

    pub fn rec_vec(base: Term, step: Term, target: Term) -> Term {
        Term::RecVec(Box::new(base), Box::new(step), Box::new(target))
    }

    pub fn quasi_lam(body: Term) -> Term {
        Term::QuasiLam(Box::new(body))
    }

    pub fn quasi_app(f: Term) -> Term {
        Term::QuasiApp(Box::new(f))
    }

    /// Returns `n` when the term is a fully literal `S (S ... 0)` tower.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0;
        let mut cur = self;
        loop {
            match cur {
                Term::Zero => return Some(n),
                Term::Succ(inner) => {
                    n += 1;
                    cur = inner;
                }
                _ => return None,
            }
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::Nil | Term::Join => 1,
            Term::Lam(_, b) | Term::Succ(b) | Term::QuasiLam(b) | Term::QuasiApp(b) => 1 + b.size(),
            Term::App(a, b) | Term::Cons(a, b) => 1 + a.size() + b.size(),
            Term::RecNat(a, b, c) | Term::RecVec(a, b, c) => 1 + a.size() + b.size() + c.size(),
        }
    }

    pub fn uses_extension(&self) -> bool {
        match self {
            Term::QuasiLam(_) | Term::QuasiApp(_) => true,
            Term::Var(_) | Term::Zero | Term::Nil | Term::Join => false,
            Term::Lam(_, b) | Term::Succ(b) => b.uses_extension(),
            Term::App(a, b) | Term::Cons(a, b) => a.uses_extension() || b.uses_extension(),
            Term::RecNat(a, b, c) | Term::RecVec(a, b, c) => {
                a.uses_extension() || b.uses_extension() || c.uses_extension()
            }
        }
    }
}

/// Types. Embedded terms are always erased terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ty {
    Nat,
    /// `⟨vc elem len⟩`
    Vec(Box<Ty>, Term),
    Pi(Name, Box<Ty>, Box<Ty>),
    /// Implicit product. In large-elim mode it is the quasi-implicit product.
    Forall(Name, Box<Ty>, Box<Ty>),
    Eq(Term, Term),
    /// `ifzero scrutinee zero_branch succ_branch`
    IfZero(Term, Box<Ty>, Box<Ty>),
}

impl Ty {
    pub fn vec(elem: Ty, len: Term) -> Ty {
        Ty::Vec(Box::new(elem), len)
    }

    pub fn pi(x: &str, dom: Ty, cod: Ty) -> Ty {
        Ty::Pi(name(x), Box::new(dom), Box::new(cod))
    }

    pub fn forall(x: &str, dom: Ty, cod: Ty) -> Ty {
        Ty::Forall(name(x), Box::new(dom), Box::new(cod))
    }

    pub fn eq(lhs: Term, rhs: Term) -> Ty {
        Ty::Eq(lhs, rhs)
    }

    pub fn if_zero(scrutinee: Term, zero: Ty, succ: Ty) -> Ty {
        Ty::IfZero(scrutinee, Box::new(zero), Box::new(succ))
    }

    pub fn size(&self) -> usize {
        match self {
            Ty::Nat => 1,
            Ty::Vec(e, l) => 1 + e.size() + l.size(),
            Ty::Pi(_, a, b) | Ty::Forall(_, a, b) => 1 + a.size() + b.size(),
            Ty::Eq(a, b) => 1 + a.size() + b.size(),
            Ty::IfZero(s, a, b) => 1 + s.size() + a.size() + b.size(),
        }
    }

    pub fn uses_extension(&self) -> bool {
        match self {
            Ty::Nat => false,
            Ty::IfZero(..) => true,
            Ty::Vec(e, l) => e.uses_extension() || l.uses_extension(),
            Ty::Pi(_, a, b) | Ty::Forall(_, a, b) => a.uses_extension() || b.uses_extension(),
            Ty::Eq(a, b) => a.uses_extension() || b.uses_extension(),
        }
    }
}

/// Annotated term with its source span.
#[derive(Clone, Debug)]
pub struct AnnTerm {
    pub kind: AnnKind,
    pub span: Span,
}

#[derive(Clone, Debug)]
pub enum AnnKind {
    Var(Name),
    App(Box<AnnTerm>, Box<AnnTerm>),
    /// `(t t')⁻`
    ImplicitApp(Box<AnnTerm>, Box<AnnTerm>),
    Lam(Name, Ty, Box<AnnTerm>),
    /// `λ⁻x:φ.t`
    ImplicitLam(Name, Ty, Box<AnnTerm>),
    Zero,
    Succ(Box<AnnTerm>),
    /// `R_nat x.φ base step target`; `var` is bound in `motive`.
    RecNat {
        var: Name,
        motive: Ty,
        base: Box<AnnTerm>,
        step: Box<AnnTerm>,
        target: Box<AnnTerm>,
    },
    Nil(Ty),
    Cons(Box<AnnTerm>, Box<AnnTerm>),
    /// `R_vc x.y.φ base step target`; `len_var` and `vec_var` are bound in `motive`.
    RecVec {
        len_var: Name,
        vec_var: Name,
        motive: Ty,
        base: Box<AnnTerm>,
        step: Box<AnnTerm>,
        target: Box<AnnTerm>,
    },
    Join(Box<AnnTerm>, Box<AnnTerm>),
    /// `cast x.φ proof subject`; `var` is bound in `motive`.
    Cast {
        var: Name,
        motive: Ty,
        proof: Box<AnnTerm>,
        subject: Box<AnnTerm>,
    },
    QuasiLam(Name, Ty, Box<AnnTerm>),
    /// Quasi-implicit application with the instantiating witness.
    QuasiApp(Box<AnnTerm>, Box<AnnTerm>),
    /// `foldZ(succ_branch, t)`
    FoldZ(Ty, Box<AnnTerm>),
    UnfoldZ(Box<AnnTerm>),
    /// `foldS(witness, zero_branch, t)`
    FoldS(Box<AnnTerm>, Ty, Box<AnnTerm>),
    /// `unfoldS(witness, t)`
    UnfoldS(Box<AnnTerm>, Box<AnnTerm>),
}

impl From<AnnKind> for AnnTerm {
    fn from(kind: AnnKind) -> Self {
        AnnTerm { kind, span: Span::DUMMY }
    }
}

/// Span-free constructors, mostly for tests and generated terms.
pub mod build {
    use super::*;

    fn b(t: AnnTerm) -> Box<AnnTerm> {
        Box::new(t)
    }

    pub fn var(x: &str) -> AnnTerm {
        AnnKind::Var(name(x)).into()
    }
    pub fn app(f: AnnTerm, a: AnnTerm) -> AnnTerm {
        AnnKind::App(b(f), b(a)).into()
    }
    pub fn iapp(f: AnnTerm, a: AnnTerm) -> AnnTerm {
        AnnKind::ImplicitApp(b(f), b(a)).into()
    }
    pub fn lam(x: &str, ty: Ty, body: AnnTerm) -> AnnTerm {
        AnnKind::Lam(name(x), ty, b(body)).into()
    }
    pub fn ilam(x: &str, ty: Ty, body: AnnTerm) -> AnnTerm {
        AnnKind::ImplicitLam(name(x), ty, b(body)).into()
    }
    pub fn zero() -> AnnTerm {
        AnnKind::Zero.into()
    }
    pub fn succ(t: AnnTerm) -> AnnTerm {
        AnnKind::Succ(b(t)).into()
    }
    pub fn numeral(n: u64) -> AnnTerm {
        (0..n).fold(zero(), |acc, _| succ(acc))
    }
    pub fn rec_nat(x: &str, motive: Ty, base: AnnTerm, step: AnnTerm, target: AnnTerm) -> AnnTerm {
        AnnKind::RecNat { var: name(x), motive, base: b(base), step: b(step), target: b(target) }.into()
    }
    pub fn nil(ty: Ty) -> AnnTerm {
        AnnKind::Nil(ty).into()
    }
    pub fn cons(h: AnnTerm, t: AnnTerm) -> AnnTerm {
        AnnKind::Cons(b(h), b(t)).into()
    }
    pub fn rec_vec(x: &str, y: &str, motive: Ty, base: AnnTerm, step: AnnTerm, target: AnnTerm) -> AnnTerm {
        AnnKind::RecVec { len_var: name(x), vec_var: name(y), motive, base: b(base), step: b(step), target: b(target) }
            .into()
    }
    pub fn join(l: AnnTerm, r: AnnTerm) -> AnnTerm {
        AnnKind::Join(b(l), b(r)).into()
    }
    pub fn cast(x: &str, motive: Ty, proof: AnnTerm, subject: AnnTerm) -> AnnTerm {
        AnnKind::Cast { var: name(x), motive, proof: b(proof), subject: b(subject) }.into()
    }
    pub fn qlam(x: &str, ty: Ty, body: AnnTerm) -> AnnTerm {
        AnnKind::QuasiLam(name(x), ty, b(body)).into()
    }
    pub fn qapp(f: AnnTerm, witness: AnnTerm) -> AnnTerm {
        AnnKind::QuasiApp(b(f), b(witness)).into()
    }
    pub fn fold_z(succ_branch: Ty, t: AnnTerm) -> AnnTerm {
        AnnKind::FoldZ(succ_branch, b(t)).into()
    }
    pub fn unfold_z(t: AnnTerm) -> AnnTerm {
        AnnKind::UnfoldZ(b(t)).into()
    }
    pub fn fold_s(witness: AnnTerm, zero_branch: Ty, t: AnnTerm) -> AnnTerm {
        AnnKind::FoldS(b(witness), zero_branch, b(t)).into()
    }
    pub fn unfold_s(witness: AnnTerm, t: AnnTerm) -> AnnTerm {
        AnnKind::UnfoldS(b(witness), b(t)).into()
    }
}

impl AnnTerm {
    pub fn new(kind: AnnKind, span: Span) -> Self {
        AnnTerm { kind, span }
    }

    /// Node count, annotations included: every term constructor counts one,
    /// and each annotation type contributes its own [`Ty::size`]. Motive
    /// binder names are free.
    pub fn size(&self) -> usize {
        use AnnKind::*;
        match &self.kind {
            Var(_) | Zero => 1,
            Nil(ty) => 1 + ty.size(),
            Succ(t) | UnfoldZ(t) => 1 + t.size(),
            App(a, b) | ImplicitApp(a, b) | Cons(a, b) | Join(a, b) | QuasiApp(a, b) | UnfoldS(a, b) => {
                1 + a.size() + b.size()
            }
            Lam(_, ty, t) | ImplicitLam(_, ty, t) | QuasiLam(_, ty, t) | FoldZ(ty, t) => 1 + ty.size() + t.size(),
            FoldS(w, ty, t) => 1 + w.size() + ty.size() + t.size(),
            RecNat { motive, base, step, target, .. } | RecVec { motive, base, step, target, .. } => {
                1 + motive.size() + base.size() + step.size() + target.size()
            }
            Cast { motive, proof, subject, .. } => 1 + motive.size() + proof.size() + subject.size(),
        }
    }

    /// Immediate annotated subterms, left to right.
    pub fn children(&self) -> Vec<&AnnTerm> {
        use AnnKind::*;
        match &self.kind {
            Var(_) | Zero | Nil(_) => vec![],
            Succ(t) | UnfoldZ(t) | Lam(_, _, t) | ImplicitLam(_, _, t) | QuasiLam(_, _, t) | FoldZ(_, t) => vec![t],
            App(a, b) | ImplicitApp(a, b) | Cons(a, b) | Join(a, b) | QuasiApp(a, b) | UnfoldS(a, b) => {
                vec![a, b]
            }
            FoldS(w, _, t) => vec![w, t],
            RecNat { base, step, target, .. } | RecVec { base, step, target, .. } => vec![base, step, target],
            Cast { proof, subject, .. } => vec![proof, subject],
        }
    }

    /// Annotation types carried directly by this node.
    pub fn annotations(&self) -> Vec<&Ty> {
        use AnnKind::*;
        match &self.kind {
            Lam(_, ty, _) | ImplicitLam(_, ty, _) | QuasiLam(_, ty, _) | Nil(ty) | FoldZ(ty, _) | FoldS(_, ty, _) => {
                vec![ty]
            }
            RecNat { motive, .. } | RecVec { motive, .. } | Cast { motive, .. } => vec![motive],
            _ => vec![],
        }
    }

    /// The extension-only constructor at the root, if any.
    pub fn extension_form(&self) -> Option<&'static str> {
        use AnnKind::*;
        match &self.kind {
            QuasiLam(..) => Some("qfun"),
            QuasiApp(..) => Some("quasi-implicit application"),
            FoldZ(..) => Some("foldz"),
            UnfoldZ(..) => Some("unfoldz"),
            FoldS(..) => Some("folds"),
            UnfoldS(..) => Some("unfolds"),
            _ => None,
        }
    }

    /// The base-only constructor at the root, if any.
    pub fn base_only_form(&self) -> Option<&'static str> {
        match &self.kind {
            AnnKind::ImplicitLam(..) => Some("ifun"),
            AnnKind::ImplicitApp(..) => Some("implicit application"),
            _ => None,
        }
    }
}
