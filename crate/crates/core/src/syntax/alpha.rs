//! α-equivalence by binder position.
//!
//! Each side keeps a stack of the binders it has passed under. A variable
//! bound on one side must be bound at the same depth on the other; free
//! variables must agree by name.

use super::{AnnKind, AnnTerm, Name, Term, Ty};

#[derive(Default)]
struct Scopes {
    left: Vec<Name>,
    right: Vec<Name>,
}

impl Scopes {
    fn var(&self, x: &Name, y: &Name) -> bool {
        let i = self.left.iter().rposition(|b| b == x);
        let j = self.right.iter().rposition(|b| b == y);
        match (i, j) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        }
    }

    fn under<R>(&mut self, x: &Name, y: &Name, f: impl FnOnce(&mut Self) -> R) -> R {
        self.left.push(x.clone());
        self.right.push(y.clone());
        let r = f(self);
        self.left.pop();
        self.right.pop();
        r
    }

    fn term(&mut self, a: &Term, b: &Term) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => self.var(x, y),
            (Term::App(f1, a1), Term::App(f2, a2)) | (Term::Cons(f1, a1), Term::Cons(f2, a2)) => {
                self.term(f1, f2) && self.term(a1, a2)
            }
            (Term::Lam(x, b1), Term::Lam(y, b2)) => self.under(x, y, |s| s.term(b1, b2)),
            (Term::Zero, Term::Zero) | (Term::Nil, Term::Nil) | (Term::Join, Term::Join) => true,
            (Term::Succ(a1), Term::Succ(a2))
            | (Term::QuasiLam(a1), Term::QuasiLam(a2))
            | (Term::QuasiApp(a1), Term::QuasiApp(a2)) => self.term(a1, a2),
            (Term::RecNat(a1, b1, c1), Term::RecNat(a2, b2, c2))
            | (Term::RecVec(a1, b1, c1), Term::RecVec(a2, b2, c2)) => {
                self.term(a1, a2) && self.term(b1, b2) && self.term(c1, c2)
            }
            _ => false,
        }
    }

    fn ty(&mut self, a: &Ty, b: &Ty) -> bool {
        match (a, b) {
            (Ty::Nat, Ty::Nat) => true,
            (Ty::Vec(e1, l1), Ty::Vec(e2, l2)) => self.ty(e1, e2) && self.term(l1, l2),
            (Ty::Pi(x, a1, b1), Ty::Pi(y, a2, b2)) | (Ty::Forall(x, a1, b1), Ty::Forall(y, a2, b2)) => {
                self.ty(a1, a2) && self.under(x, y, |s| s.ty(b1, b2))
            }
            (Ty::Eq(l1, r1), Ty::Eq(l2, r2)) => self.term(l1, l2) && self.term(r1, r2),
            (Ty::IfZero(s1, a1, b1), Ty::IfZero(s2, a2, b2)) => self.term(s1, s2) && self.ty(a1, a2) && self.ty(b1, b2),
            _ => false,
        }
    }

    fn ann(&mut self, a: &AnnTerm, b: &AnnTerm) -> bool {
        use AnnKind::*;
        match (&a.kind, &b.kind) {
            (Var(x), Var(y)) => self.var(x, y),
            (Zero, Zero) => true,
            (Nil(t1), Nil(t2)) => self.ty(t1, t2),
            (Succ(a1), Succ(a2)) | (UnfoldZ(a1), UnfoldZ(a2)) => self.ann(a1, a2),
            (App(f1, a1), App(f2, a2))
            | (ImplicitApp(f1, a1), ImplicitApp(f2, a2))
            | (Cons(f1, a1), Cons(f2, a2))
            | (Join(f1, a1), Join(f2, a2))
            | (QuasiApp(f1, a1), QuasiApp(f2, a2))
            | (UnfoldS(f1, a1), UnfoldS(f2, a2)) => self.ann(f1, f2) && self.ann(a1, a2),
            (Lam(x, t1, b1), Lam(y, t2, b2))
            | (ImplicitLam(x, t1, b1), ImplicitLam(y, t2, b2))
            | (QuasiLam(x, t1, b1), QuasiLam(y, t2, b2)) => self.ty(t1, t2) && self.under(x, y, |s| s.ann(b1, b2)),
            (FoldZ(t1, a1), FoldZ(t2, a2)) => self.ty(t1, t2) && self.ann(a1, a2),
            (FoldS(w1, t1, a1), FoldS(w2, t2, a2)) => self.ann(w1, w2) && self.ty(t1, t2) && self.ann(a1, a2),
            (
                RecNat { var: x1, motive: m1, base: b1, step: s1, target: t1 },
                RecNat { var: x2, motive: m2, base: b2, step: s2, target: t2 },
            ) => self.under(x1, x2, |s| s.ty(m1, m2)) && self.ann(b1, b2) && self.ann(s1, s2) && self.ann(t1, t2),
            (
                RecVec { len_var: x1, vec_var: y1, motive: m1, base: b1, step: s1, target: t1 },
                RecVec { len_var: x2, vec_var: y2, motive: m2, base: b2, step: s2, target: t2 },
            ) => {
                self.under(x1, x2, |s| s.under(y1, y2, |s| s.ty(m1, m2)))
                    && self.ann(b1, b2)
                    && self.ann(s1, s2)
                    && self.ann(t1, t2)
            }
            (
                Cast { var: x1, motive: m1, proof: p1, subject: t1 },
                Cast { var: x2, motive: m2, proof: p2, subject: t2 },
            ) => self.under(x1, x2, |s| s.ty(m1, m2)) && self.ann(p1, p2) && self.ann(t1, t2),
            _ => false,
        }
    }
}

pub fn alpha_eq_term(a: &Term, b: &Term) -> bool {
    Scopes::default().term(a, b)
}

pub fn alpha_eq_ty(a: &Ty, b: &Ty) -> bool {
    Scopes::default().ty(a, b)
}

/// α-equivalence of annotated terms; spans are ignored.
pub fn alpha_eq_ann(a: &AnnTerm, b: &AnnTerm) -> bool {
    Scopes::default().ann(a, b)
}

impl Term {
    pub fn alpha_eq(&self, other: &Term) -> bool {
        alpha_eq_term(self, other)
    }
}

impl Ty {
    pub fn alpha_eq(&self, other: &Ty) -> bool {
        alpha_eq_ty(self, other)
    }
}

impl AnnTerm {
    pub fn alpha_eq(&self, other: &AnnTerm) -> bool {
        alpha_eq_ann(self, other)
    }
}
