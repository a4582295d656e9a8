use std::collections::BTreeSet;

use super::{name, AnnKind, AnnTerm, Name, Term, Ty};

/// Appends primes to `base` until `taken` rejects it.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> Name {
    let mut candidate = format!("{base}'");
    while taken(&candidate) {
        candidate.push('\'');
    }
    name(&candidate)
}

// ---------------------------------------------------------------------------
// Free variables

impl Term {
    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => &**y == x,
            Term::Lam(y, b) => &**y != x && b.occurs_free(x),
            Term::Zero | Term::Nil | Term::Join => false,
            Term::Succ(b) | Term::QuasiLam(b) | Term::QuasiApp(b) => b.occurs_free(x),
            Term::App(a, b) | Term::Cons(a, b) => a.occurs_free(x) || b.occurs_free(x),
            Term::RecNat(a, b, c) | Term::RecVec(a, b, c) => a.occurs_free(x) || b.occurs_free(x) || c.occurs_free(x),
        }
    }

    pub(crate) fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Lam(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Term::Zero | Term::Nil | Term::Join => {}
            Term::Succ(b) | Term::QuasiLam(b) | Term::QuasiApp(b) => b.collect_free(bound, out),
            Term::App(a, b) | Term::Cons(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Term::RecNat(a, b, c) | Term::RecVec(a, b, c) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
                c.collect_free(bound, out);
            }
        }
    }
}

impl Ty {
    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            Ty::Nat => false,
            Ty::Vec(e, l) => e.occurs_free(x) || l.occurs_free(x),
            Ty::Pi(y, a, b) | Ty::Forall(y, a, b) => a.occurs_free(x) || (&**y != x && b.occurs_free(x)),
            Ty::Eq(a, b) => a.occurs_free(x) || b.occurs_free(x),
            Ty::IfZero(s, a, b) => s.occurs_free(x) || a.occurs_free(x) || b.occurs_free(x),
        }
    }

    pub(crate) fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Ty::Nat => {}
            Ty::Vec(e, l) => {
                e.collect_free(bound, out);
                l.collect_free(bound, out);
            }
            Ty::Pi(x, a, b) | Ty::Forall(x, a, b) => {
                a.collect_free(bound, out);
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Ty::Eq(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Ty::IfZero(s, a, b) => {
                s.collect_free(bound, out);
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
        }
    }
}

impl AnnTerm {
    /// Free variables, including those mentioned only by annotations.
    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        use AnnKind::*;
        match &self.kind {
            Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Lam(x, ty, body) | ImplicitLam(x, ty, body) | QuasiLam(x, ty, body) => {
                ty.collect_free(bound, out);
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            RecNat { var, motive, base, step, target } => {
                bound.push(var.clone());
                motive.collect_free(bound, out);
                bound.pop();
                for t in [base, step, target] {
                    t.collect_free(bound, out);
                }
            }
            RecVec { len_var, vec_var, motive, base, step, target } => {
                bound.push(len_var.clone());
                bound.push(vec_var.clone());
                motive.collect_free(bound, out);
                bound.truncate(bound.len() - 2);
                for t in [base, step, target] {
                    t.collect_free(bound, out);
                }
            }
            Cast { var, motive, proof, subject } => {
                bound.push(var.clone());
                motive.collect_free(bound, out);
                bound.pop();
                proof.collect_free(bound, out);
                subject.collect_free(bound, out);
            }
            _ => {
                for ty in self.annotations() {
                    ty.collect_free(bound, out);
                }
                for child in self.children() {
                    child.collect_free(bound, out);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Substitution on erased terms and types

/// A simultaneous, capture-avoiding substitution of erased terms.
#[derive(Clone, Debug, Default)]
pub struct Subst {
    map: Vec<(Name, Term)>,
    /// Free variables of every replacement.
    range_fv: BTreeSet<Name>,
}

impl Subst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(x: &str, replacement: Term) -> Self {
        Self::new().with(name(x), replacement)
    }

    pub fn with(mut self, x: Name, replacement: Term) -> Self {
        self.range_fv.extend(replacement.free_vars());
        self.map.retain(|(y, _)| *y != x);
        self.map.push((x, replacement));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn get(&self, x: &str) -> Option<&Term> {
        self.map.iter().find(|(y, _)| &**y == x).map(|(_, t)| t)
    }

    fn has_key(&self, x: &str) -> bool {
        self.map.iter().any(|(y, _)| &**y == x)
    }

    fn without(&self, x: &str) -> Subst {
        if !self.has_key(x) {
            return self.clone();
        }
        let mut out = Subst::new();
        for (y, t) in &self.map {
            if &**y != x {
                out = out.with(y.clone(), t.clone());
            }
        }
        out
    }

    /// Prepares the substitution for descending under binder `x`, whose
    /// scope has free variables `scope_fv`. Returns the (possibly renamed)
    /// binder and the substitution to apply inside.
    fn enter(&self, x: &Name, scope_fv: impl FnOnce() -> BTreeSet<Name>) -> (Name, Subst) {
        let inner = self.without(x);
        if inner.is_empty() || !inner.range_fv.contains(x) {
            return (x.clone(), inner);
        }
        let scope = scope_fv();
        let fresh = fresh_name(x, |c| inner.range_fv.contains(c) || scope.contains(c) || inner.has_key(c));
        let renamed = inner.with(x.clone(), Term::Var(fresh.clone()));
        (fresh, renamed)
    }
}

impl Term {
    /// `[replacement/x]self`
    pub fn subst(&self, x: &str, replacement: &Term) -> Term {
        self.subst_with(&Subst::single(x, replacement.clone()))
    }

    pub fn subst_with(&self, s: &Subst) -> Term {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Term::Var(x) => s.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::Lam(x, b) => {
                let (x2, inner) = s.enter(x, || b.free_vars());
                Term::Lam(x2, Box::new(b.subst_with(&inner)))
            }
            Term::Zero | Term::Nil | Term::Join => self.clone(),
            Term::Succ(b) => Term::Succ(Box::new(b.subst_with(s))),
            Term::QuasiLam(b) => Term::QuasiLam(Box::new(b.subst_with(s))),
            Term::QuasiApp(b) => Term::QuasiApp(Box::new(b.subst_with(s))),
            Term::App(a, b) => Term::App(Box::new(a.subst_with(s)), Box::new(b.subst_with(s))),
            Term::Cons(a, b) => Term::Cons(Box::new(a.subst_with(s)), Box::new(b.subst_with(s))),
            Term::RecNat(a, b, c) => {
                Term::RecNat(Box::new(a.subst_with(s)), Box::new(b.subst_with(s)), Box::new(c.subst_with(s)))
            }
            Term::RecVec(a, b, c) => {
                Term::RecVec(Box::new(a.subst_with(s)), Box::new(b.subst_with(s)), Box::new(c.subst_with(s)))
            }
        }
    }
}

impl Ty {
    /// `[replacement/x]self`
    pub fn subst(&self, x: &str, replacement: &Term) -> Ty {
        self.subst_with(&Subst::single(x, replacement.clone()))
    }

    pub fn subst_with(&self, s: &Subst) -> Ty {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Ty::Nat => Ty::Nat,
            Ty::Vec(e, l) => Ty::Vec(Box::new(e.subst_with(s)), l.subst_with(s)),
            Ty::Pi(x, a, b) => {
                let (x2, inner) = s.enter(x, || b.free_vars());
                Ty::Pi(x2, Box::new(a.subst_with(s)), Box::new(b.subst_with(&inner)))
            }
            Ty::Forall(x, a, b) => {
                let (x2, inner) = s.enter(x, || b.free_vars());
                Ty::Forall(x2, Box::new(a.subst_with(s)), Box::new(b.subst_with(&inner)))
            }
            Ty::Eq(a, b) => Ty::Eq(a.subst_with(s), b.subst_with(s)),
            Ty::IfZero(c, a, b) => Ty::IfZero(c.subst_with(s), Box::new(a.subst_with(s)), Box::new(b.subst_with(s))),
        }
    }

    /// Renames binder `x` of a motive to `to` inside `self`.
    pub fn rename(&self, x: &str, to: &Name) -> Ty {
        self.subst(x, &Term::Var(to.clone()))
    }
}

// ---------------------------------------------------------------------------
// Substitution on annotated terms

/// Substitution of annotated terms for variables. Term positions receive
/// the annotated replacement; annotation types receive its erasure.
#[derive(Clone, Debug, Default)]
pub struct AnnSubst {
    map: Vec<(Name, AnnTerm)>,
    erased: Subst,
    range_fv: BTreeSet<Name>,
}

impl AnnSubst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(x: &str, replacement: AnnTerm) -> Self {
        Self::new().with(name(x), replacement)
    }

    pub fn with(mut self, x: Name, replacement: AnnTerm) -> Self {
        self.range_fv.extend(replacement.free_vars());
        self.erased = self.erased.with(x.clone(), crate::erase::erase(&replacement));
        self.map.retain(|(y, _)| *y != x);
        self.map.push((x, replacement));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn has_key(&self, x: &str) -> bool {
        self.map.iter().any(|(y, _)| &**y == x)
    }

    fn without(&self, x: &str) -> AnnSubst {
        if !self.has_key(x) {
            return self.clone();
        }
        let mut out = AnnSubst::new();
        for (y, t) in &self.map {
            if &**y != x {
                out = out.with(y.clone(), t.clone());
            }
        }
        out
    }

    fn enter(&self, x: &Name, scope_fv: impl FnOnce() -> BTreeSet<Name>) -> (Name, AnnSubst) {
        let inner = self.without(x);
        if inner.is_empty() || !inner.range_fv.contains(x) {
            return (x.clone(), inner);
        }
        let scope = scope_fv();
        let fresh = fresh_name(x, |c| inner.range_fv.contains(c) || scope.contains(c) || inner.has_key(c));
        let renamed =
            inner.with(x.clone(), AnnTerm { kind: AnnKind::Var(fresh.clone()), span: crate::syntax::Span::DUMMY });
        (fresh, renamed)
    }
}

impl AnnTerm {
    /// `self[x := replacement]` at the annotated level.
    pub fn subst(&self, x: &str, replacement: &AnnTerm) -> AnnTerm {
        self.subst_with(&AnnSubst::single(x, replacement.clone()))
    }

    /// Capture-avoiding renaming of the free variable `x` to `to`.
    pub fn rename(&self, x: &str, to: &Name) -> AnnTerm {
        self.subst(x, &AnnTerm { kind: AnnKind::Var(to.clone()), span: self.span })
    }

    pub fn subst_with(&self, s: &AnnSubst) -> AnnTerm {
        if s.is_empty() {
            return self.clone();
        }
        use AnnKind::*;
        let bx = |t: &AnnTerm| Box::new(t.subst_with(s));
        let kind = match &self.kind {
            Var(x) => match s.map.iter().find(|(y, _)| y == x) {
                Some((_, r)) => return AnnTerm { kind: r.kind.clone(), span: self.span },
                None => Var(x.clone()),
            },
            App(a, b) => App(bx(a), bx(b)),
            ImplicitApp(a, b) => ImplicitApp(bx(a), bx(b)),
            Lam(x, ty, body) | ImplicitLam(x, ty, body) | QuasiLam(x, ty, body) => {
                let ty2 = ty.subst_with(&s.erased);
                let (x2, inner) = s.enter(x, || body.free_vars());
                let body2 = Box::new(body.subst_with(&inner));
                match &self.kind {
                    Lam(..) => Lam(x2, ty2, body2),
                    ImplicitLam(..) => ImplicitLam(x2, ty2, body2),
                    _ => QuasiLam(x2, ty2, body2),
                }
            }
            Zero => Zero,
            Succ(t) => Succ(bx(t)),
            RecNat { var, motive, base, step, target } => {
                let (var2, motive2) = subst_motive1(var, motive, &s.erased);
                RecNat { var: var2, motive: motive2, base: bx(base), step: bx(step), target: bx(target) }
            }
            Nil(ty) => Nil(ty.subst_with(&s.erased)),
            Cons(a, b) => Cons(bx(a), bx(b)),
            RecVec { len_var, vec_var, motive, base, step, target } => {
                let (x1, s1) = s.erased.enter(len_var, || {
                    let mut fv = motive.free_vars();
                    fv.insert(vec_var.clone());
                    fv
                });
                let (x2, s2) = s1.enter(vec_var, || {
                    let mut fv = motive.free_vars();
                    fv.insert(x1.clone());
                    fv
                });
                let motive2 = motive.subst_with(&s2);
                RecVec { len_var: x1, vec_var: x2, motive: motive2, base: bx(base), step: bx(step), target: bx(target) }
            }
            Join(a, b) => Join(bx(a), bx(b)),
            Cast { var, motive, proof, subject } => {
                let (var2, motive2) = subst_motive1(var, motive, &s.erased);
                Cast { var: var2, motive: motive2, proof: bx(proof), subject: bx(subject) }
            }
            QuasiApp(a, b) => QuasiApp(bx(a), bx(b)),
            FoldZ(ty, t) => FoldZ(ty.subst_with(&s.erased), bx(t)),
            UnfoldZ(t) => UnfoldZ(bx(t)),
            FoldS(w, ty, t) => FoldS(bx(w), ty.subst_with(&s.erased), bx(t)),
            UnfoldS(w, t) => UnfoldS(bx(w), bx(t)),
        };
        AnnTerm { kind, span: self.span }
    }
}

fn subst_motive1(var: &Name, motive: &Ty, s: &Subst) -> (Name, Ty) {
    let (var2, inner) = s.enter(var, || motive.free_vars());
    (var2, motive.subst_with(&inner))
}
