//! The fold/unfold coercions between `ifzero` types and their branches.
//! Quasi-implicit abstraction and application share their code with the
//! implicit forms in the parent module.

use super::{err, mismatch, CheckResult, Checker, Rule};
use crate::diagnostic::DiagnosticKind;
use crate::erase::erase;
use crate::frontend::{pretty_term, pretty_ty};
use crate::syntax::{AnnKind, AnnTerm, Context, Term, Ty};

impl Checker {
    pub(super) fn rule_fold(&self, ctx: &Context, t: &AnnTerm, rule: Rule) -> CheckResult {
        let span = t.span;
        match &t.kind {
            AnnKind::FoldZ(succ_branch, a) => {
                self.scope(ctx, succ_branch, &[], rule, span)?;
                let zero_branch = self.synth(ctx, a)?;
                Ok(Ty::if_zero(Term::Zero, zero_branch, succ_branch.clone()))
            }
            AnnKind::FoldS(w, zero_branch, a) => {
                self.witness(ctx, w, rule)?;
                self.scope(ctx, zero_branch, &[], rule, span)?;
                let succ_branch = self.synth(ctx, a)?;
                Ok(Ty::if_zero(Term::succ(erase(w)), zero_branch.clone(), succ_branch))
            }
            AnnKind::UnfoldZ(a) => {
                let (scrutinee, zero_branch, _) = self.if_zero_of(ctx, a, rule)?;
                if !scrutinee.alpha_eq(&Term::Zero) {
                    return Err(err(
                        DiagnosticKind::ScrutineeMismatch,
                        rule,
                        a.span,
                        format!("unfoldz needs scrutinee 0, found `{}`", pretty_term(&scrutinee)),
                    ));
                }
                Ok(zero_branch)
            }
            AnnKind::UnfoldS(w, a) => {
                self.witness(ctx, w, rule)?;
                let (scrutinee, _, succ_branch) = self.if_zero_of(ctx, a, rule)?;
                let want = Term::succ(erase(w));
                if !scrutinee.alpha_eq(&want) {
                    return Err(err(
                        DiagnosticKind::ScrutineeMismatch,
                        rule,
                        a.span,
                        format!(
                            "unfolds needs scrutinee `{}`, found `{}`",
                            pretty_term(&want),
                            pretty_term(&scrutinee)
                        ),
                    ));
                }
                Ok(succ_branch)
            }
            _ => unreachable!("rule_fold called on a non-coercion"),
        }
    }

    fn witness(&self, ctx: &Context, w: &AnnTerm, rule: Rule) -> Result<(), crate::diagnostic::Diagnostic> {
        let wty = self.synth(ctx, w)?;
        if wty != Ty::Nat {
            return Err(mismatch(rule, w.span, "witness", &Ty::Nat, &wty));
        }
        Ok(())
    }

    fn if_zero_of(
        &self,
        ctx: &Context,
        a: &AnnTerm,
        rule: Rule,
    ) -> Result<(Term, Ty, Ty), crate::diagnostic::Diagnostic> {
        match self.synth(ctx, a)? {
            Ty::IfZero(s, z, n) => Ok((s, *z, *n)),
            other => Err(err(
                DiagnosticKind::ShapeMismatch,
                rule,
                a.span,
                format!("expected an `ifzero` type, found `{}`", pretty_ty(&other)),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::frontend::{parse_term, parse_type};
    use crate::syntax::{Context, Mode, Ty};
    use crate::typecheck::{CheckResult, Checker};

    fn infer(ctx: &Context, src: &str) -> CheckResult {
        Checker::new(Mode::LargeElim).infer(ctx, &parse_term(src).unwrap())
    }

    fn ty(src: &str) -> Ty {
        parse_type(src).unwrap()
    }

    const SYM: &str = "cast [x. x = S 0] p (join (S 0) (S 0))";

    fn quod_libet() -> String {
        format!("unfolds [0] (cast [z. ifzero z Nat (Pi x : Nat. Nat)] ({SYM}) (foldz [Pi x : Nat. Nat] 0)) 0")
    }

    #[test]
    fn fold_zero() {
        let t = infer(&Context::new(), "foldz [Pi x : Nat. Nat] 0").unwrap();
        assert!(t.alpha_eq(&ty("ifzero 0 Nat (Pi x : Nat. Nat)")));
        let back = infer(&Context::new(), "unfoldz (foldz [Pi x : Nat. Nat] 0)").unwrap();
        assert_eq!(back, Ty::Nat);
    }

    #[test]
    fn fold_successor_round_trip() {
        let src = "unfolds [2] (folds [2] [Nat] (fun x : Nat => x))";
        assert!(infer(&Context::new(), src).unwrap().alpha_eq(&ty("Pi x : Nat. Nat")));
        let bad = infer(&Context::new(), "unfolds [1] (folds [2] [Nat] 0)").unwrap_err();
        assert_eq!(bad.kind, crate::diagnostic::DiagnosticKind::ScrutineeMismatch);
    }

    #[test]
    fn quod_libet_in_a_false_context() {
        let ctx = Context::from_bindings([("p", ty("S 0 = 0"))]);
        assert_eq!(infer(&ctx, SYM).unwrap(), ty("0 = S 0"));
        assert_eq!(infer(&ctx, &quod_libet()).unwrap(), Ty::Nat);
    }

    #[test]
    fn quasi_implicit_abstraction_over_the_false_premise() {
        let t = infer(&Context::new(), &format!("qfun p : (S 0 = 0) => {}", quod_libet())).unwrap();
        assert!(t.alpha_eq(&ty("All p : (1 = 0). Nat")));
    }

    #[test]
    fn quasi_application_needs_a_witness_of_the_domain() {
        let f = "qfun l : Nat => fun v : Vec Nat l => v";
        let t = infer(&Context::new(), &format!("({f}) @-[2]")).unwrap();
        assert!(t.alpha_eq(&ty("Pi v : Vec Nat 2. Vec Nat 2")));
        assert!(infer(&Context::new(), &format!("({f}) @-[join 0 0]")).is_err());
    }

    #[test]
    fn implicit_forms_are_rejected() {
        let d = infer(&Context::new(), "ifun l : Nat => 0").unwrap_err();
        assert_eq!(d.kind, crate::diagnostic::DiagnosticKind::ModeViolation);
    }
}
