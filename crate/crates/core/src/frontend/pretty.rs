//! Printing in the concrete syntax accepted by the parser.
//!
//! Precedence levels: `TOP` admits binders, `SPINE` admits applications and
//! keyword forms, `ATOM` only variables, literals and parenthesized terms.

use std::fmt::Write as _;

use crate::syntax::{AnnKind, AnnTerm, Term, Ty};

const TOP: u8 = 0;
const SPINE: u8 = 1;
const ATOM: u8 = 2;

pub fn pretty_term(t: &Term) -> String {
    let mut out = String::new();
    term(&mut out, t, TOP);
    out
}

pub fn pretty_ty(t: &Ty) -> String {
    let mut out = String::new();
    ty(&mut out, t, TOP);
    out
}

pub fn pretty_ann(t: &AnnTerm) -> String {
    let mut out = String::new();
    ann(&mut out, t, TOP);
    out
}

fn open(out: &mut String, need: u8, have: u8) -> bool {
    let paren = have > need;
    if paren {
        out.push('(');
    }
    paren
}

fn close(out: &mut String, paren: bool) {
    if paren {
        out.push(')');
    }
}

fn term(out: &mut String, t: &Term, prec: u8) {
    if let Some(n) = t.as_numeral() {
        let _ = write!(out, "{n}");
        return;
    }
    match t {
        Term::Var(x) => out.push_str(x),
        Term::Zero => out.push('0'),
        Term::Nil => out.push_str("nil"),
        Term::Join => out.push_str("join"),
        Term::Lam(x, body) => {
            let p = open(out, TOP, prec);
            let _ = write!(out, "fun {x} => ");
            term(out, body, TOP);
            close(out, p);
        }
        Term::QuasiLam(body) => {
            let p = open(out, TOP, prec);
            out.push_str("qfun => ");
            term(out, body, TOP);
            close(out, p);
        }
        Term::App(f, a) => {
            let p = open(out, SPINE, prec);
            term(out, f, SPINE);
            out.push(' ');
            term(out, a, ATOM);
            close(out, p);
        }
        Term::QuasiApp(f) => {
            let p = open(out, SPINE, prec);
            term(out, f, SPINE);
            out.push_str(" @-");
            close(out, p);
        }
        Term::Succ(a) => keyword(out, prec, "S", &[&**a], term),
        Term::Cons(a, b) => keyword(out, prec, "cons", &[&**a, &**b], term),
        Term::RecNat(a, b, c) => keyword(out, prec, "rnat", &[&**a, &**b, &**c], term),
        Term::RecVec(a, b, c) => keyword(out, prec, "rvec", &[&**a, &**b, &**c], term),
    }
}

fn keyword<T>(out: &mut String, prec: u8, kw: &str, args: &[&T], print: fn(&mut String, &T, u8)) {
    let p = open(out, SPINE, prec);
    out.push_str(kw);
    for a in args {
        out.push(' ');
        print(out, a, ATOM);
    }
    close(out, p);
}

fn ty(out: &mut String, t: &Ty, prec: u8) {
    match t {
        Ty::Nat => out.push_str("Nat"),
        Ty::Vec(elem, len) => {
            let p = open(out, TOP, prec);
            out.push_str("Vec ");
            ty(out, elem, ATOM);
            out.push(' ');
            term(out, len, ATOM);
            close(out, p);
        }
        Ty::IfZero(s, z, n) => {
            let p = open(out, TOP, prec);
            out.push_str("ifzero ");
            term(out, s, ATOM);
            out.push(' ');
            ty(out, z, ATOM);
            out.push(' ');
            ty(out, n, ATOM);
            close(out, p);
        }
        Ty::Pi(x, dom, cod) | Ty::Forall(x, dom, cod) => {
            let p = open(out, TOP, prec);
            let kw = if matches!(t, Ty::Pi(..)) { "Pi" } else { "All" };
            let _ = write!(out, "{kw} {x} : ");
            let dom_prec = match **dom {
                Ty::Pi(..) | Ty::Forall(..) | Ty::Eq(..) => ATOM,
                _ => TOP,
            };
            ty(out, dom, dom_prec);
            out.push_str(". ");
            ty(out, cod, TOP);
            close(out, p);
        }
        Ty::Eq(l, r) => {
            let p = open(out, TOP, prec);
            term(out, l, SPINE);
            out.push_str(" = ");
            term(out, r, SPINE);
            close(out, p);
        }
    }
}

fn ann_numeral(t: &AnnTerm) -> Option<u64> {
    let mut n = 0;
    let mut cur = t;
    loop {
        match &cur.kind {
            AnnKind::Zero => return Some(n),
            AnnKind::Succ(inner) => {
                n += 1;
                cur = inner;
            }
            _ => return None,
        }
    }
}

fn ann(out: &mut String, t: &AnnTerm, prec: u8) {
    use AnnKind::*;
    if let Some(n) = ann_numeral(t) {
        let _ = write!(out, "{n}");
        return;
    }
    match &t.kind {
        Var(x) => out.push_str(x),
        Zero => out.push('0'),
        Nil(elem) => {
            out.push_str("nil[");
            ty(out, elem, TOP);
            out.push(']');
        }
        Lam(x, dom, body) | ImplicitLam(x, dom, body) | QuasiLam(x, dom, body) => {
            let kw = match &t.kind {
                Lam(..) => "fun",
                ImplicitLam(..) => "ifun",
                _ => "qfun",
            };
            let p = open(out, TOP, prec);
            let _ = write!(out, "{kw} {x} : ");
            ty(out, dom, TOP);
            out.push_str(" => ");
            ann(out, body, TOP);
            close(out, p);
        }
        App(f, a) => {
            let p = open(out, SPINE, prec);
            ann(out, f, SPINE);
            out.push(' ');
            ann(out, a, ATOM);
            close(out, p);
        }
        ImplicitApp(f, w) | QuasiApp(f, w) => {
            let p = open(out, SPINE, prec);
            ann(out, f, SPINE);
            out.push_str(if matches!(t.kind, ImplicitApp(..)) { " @[" } else { " @-[" });
            ann(out, w, TOP);
            out.push(']');
            close(out, p);
        }
        Succ(a) => keyword(out, prec, "S", &[&**a], ann),
        Cons(a, b) => keyword(out, prec, "cons", &[&**a, &**b], ann),
        Join(a, b) => keyword(out, prec, "join", &[&**a, &**b], ann),
        UnfoldZ(a) => keyword(out, prec, "unfoldz", &[&**a], ann),
        RecNat { var, motive, base, step, target } => {
            let head = format!("rnat [{var}. {}]", pretty_ty(motive));
            keyword(out, prec, &head, &[&**base, &**step, &**target], ann);
        }
        RecVec { len_var, vec_var, motive, base, step, target } => {
            let head = format!("rvec [{len_var}. {vec_var}. {}]", pretty_ty(motive));
            keyword(out, prec, &head, &[&**base, &**step, &**target], ann);
        }
        Cast { var, motive, proof, subject } => {
            let head = format!("cast [{var}. {}]", pretty_ty(motive));
            keyword(out, prec, &head, &[&**proof, &**subject], ann);
        }
        FoldZ(branch, a) => {
            let head = format!("foldz [{}]", pretty_ty(branch));
            keyword(out, prec, &head, &[&**a], ann);
        }
        FoldS(w, branch, a) => {
            let head = format!("folds [{}] [{}]", pretty_ann(w), pretty_ty(branch));
            keyword(out, prec, &head, &[&**a], ann);
        }
        UnfoldS(w, a) => {
            let head = format!("unfolds [{}]", pretty_ann(w));
            keyword(out, prec, &head, &[&**a], ann);
        }
    }
}

/// Replaces every subterm that is α-equal to one of `abbreviations`' bodies
/// by the abbreviation's name. Used to show types in terms of the
/// definitions a file introduced.
pub fn refold(t: &Term, abbreviations: &[(crate::syntax::Name, Term)]) -> Term {
    if let Some((n, _)) = abbreviations.iter().find(|(_, body)| body.alpha_eq(t)) {
        return Term::Var(n.clone());
    }
    let r = |x: &Term| Box::new(refold(x, abbreviations));
    match t {
        Term::Var(_) | Term::Zero | Term::Nil | Term::Join => t.clone(),
        Term::Lam(x, b) => {
            // A bound variable that shadows an abbreviation name would change
            // meaning after folding; leave such bodies alone.
            if abbreviations.iter().any(|(n, _)| n == x) {
                t.clone()
            } else {
                Term::Lam(x.clone(), r(b))
            }
        }
        Term::App(a, b) => Term::App(r(a), r(b)),
        Term::Cons(a, b) => Term::Cons(r(a), r(b)),
        Term::Succ(a) => Term::Succ(r(a)),
        Term::QuasiLam(a) => Term::QuasiLam(r(a)),
        Term::QuasiApp(a) => Term::QuasiApp(r(a)),
        Term::RecNat(a, b, c) => Term::RecNat(r(a), r(b), r(c)),
        Term::RecVec(a, b, c) => Term::RecVec(r(a), r(b), r(c)),
    }
}

pub fn refold_ty(t: &Ty, abbreviations: &[(crate::syntax::Name, Term)]) -> Ty {
    let shadows = |x: &crate::syntax::Name| abbreviations.iter().any(|(n, _)| n == x);
    match t {
        Ty::Nat => Ty::Nat,
        Ty::Vec(e, l) => Ty::Vec(Box::new(refold_ty(e, abbreviations)), refold(l, abbreviations)),
        Ty::Pi(x, a, b) | Ty::Forall(x, a, b) => {
            let a2 = Box::new(refold_ty(a, abbreviations));
            let b2 = if shadows(x) { b.clone() } else { Box::new(refold_ty(b, abbreviations)) };
            if matches!(t, Ty::Pi(..)) {
                Ty::Pi(x.clone(), a2, b2)
            } else {
                Ty::Forall(x.clone(), a2, b2)
            }
        }
        Ty::Eq(l, r) => Ty::Eq(refold(l, abbreviations), refold(r, abbreviations)),
        Ty::IfZero(s, a, b) => Ty::IfZero(
            refold(s, abbreviations),
            Box::new(refold_ty(a, abbreviations)),
            Box::new(refold_ty(b, abbreviations)),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_erased, parse_term, parse_type};
    use crate::syntax::build;

    #[test]
    fn numerals_print_as_digits() {
        assert_eq!(pretty_term(&Term::numeral(2)), "2");
        assert_eq!(pretty_ann(&build::numeral(2)), "2");
        assert_eq!(pretty_term(&Term::succ(Term::var("n"))), "S n");
    }

    #[test]
    fn abstraction_round_trips_textually() {
        let t = parse_term("fun x:Nat => x").unwrap();
        assert_eq!(pretty_ann(&t), "fun x : Nat => x");
    }

    #[test]
    fn arguments_are_parenthesized() {
        let t = Term::app(Term::var("f"), Term::app(Term::var("g"), Term::lam("x", Term::var("x"))));
        assert_eq!(pretty_term(&t), "f (g (fun x => x))");
        assert_eq!(pretty_term(&Term::app(Term::cons(Term::var("a"), Term::Nil), Term::Zero)), "cons a nil 0");
    }

    #[test]
    fn types_print_and_reparse() {
        for src in [
            "Pi x : Nat. Vec Nat x",
            "All l : Nat. Pi v : Vec (Vec Nat 0) l. S l = plus l 1",
            "Pi u : (S 0 = 0). Nat",
            "Pi f : (Pi x : Nat. Nat). ifzero (f 0) Nat (Vec Nat 1)",
            "(fun x => x) = rnat 0 (fun y => fun u => S u) n",
        ] {
            let t = parse_type(src).unwrap();
            let printed = pretty_ty(&t);
            assert!(parse_type(&printed).unwrap().alpha_eq(&t), "{src} -> {printed}");
            assert_eq!(pretty_ty(&parse_type(&printed).unwrap()), printed);
        }
    }

    #[test]
    fn annotated_forms_print_and_reparse() {
        for src in [
            "rvec [x. y. Vec Nat (S x)] (cast [x. Vec Nat x] (join 0 0) nil[Nat]) s v",
            "unfolds [0] (cast [z. ifzero z Nat (Pi x : Nat. Nat)] p (foldz [Pi x : Nat. Nat] 0)) 0",
            "qfun p : (S 0 = 0) => f @-[folds [n] [Nat] 0] @[1]",
            "ifun l : Nat => fun v : Vec Nat l => rnat [k. Nat] 0 (fun y : Nat => fun u : Nat => S u) l",
        ] {
            let t = parse_term(src).unwrap();
            let printed = pretty_ann(&t);
            assert!(parse_term(&printed).unwrap().alpha_eq(&t), "{src} -> {printed}");
        }
    }

    #[test]
    fn erased_quasi_forms_reparse() {
        let t = Term::app(Term::quasi_app(Term::quasi_lam(Term::var("a"))), Term::Join);
        let printed = pretty_term(&t);
        assert_eq!(printed, "(qfun => a) @- join");
        assert_eq!(parse_erased(&printed).unwrap(), t);
    }

    #[test]
    fn refolding_names_definitions() {
        let plus = parse_erased("fun m => fun n => rnat n (fun y => fun u => S u) m").unwrap();
        let t = Term::apps(plus.clone(), [Term::Zero, Term::var("l2")]);
        let abbrevs = vec![(crate::syntax::name("plus"), plus)];
        assert_eq!(pretty_term(&refold(&t, &abbrevs)), "plus 0 l2");
    }
}
