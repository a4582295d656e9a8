use proptest::prelude::*;

use tvec_core::erase::{embed, erase};
use tvec_core::frontend::{parse_erased, parse_term, pretty_ann, pretty_term};
use tvec_core::reduce::{
    is_normal, is_value, joinable, normalize, step_cbv, step_full, step_leftmost_outermost, CbvStep,
};
use tvec_core::syntax::{build, AnnTerm, Mode, Term, Ty};

const NAMES: [&str; 3] = ["x", "y", "z"];

fn name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(&NAMES[..])
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Base), Just(Mode::LargeElim)]
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![name().prop_map(Term::var), Just(Term::Zero), Just(Term::Nil), Just(Term::Join),];
    leaf.prop_recursive(5, 40, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, a)| Term::app(f, a)),
            (name(), inner.clone()).prop_map(|(x, b)| Term::lam(x, b)),
            inner.clone().prop_map(Term::succ),
            (inner.clone(), inner.clone()).prop_map(|(h, t)| Term::cons(h, t)),
            (inner.clone(), inner.clone(), inner.clone()).prop_map(|(b, s, t)| Term::rec_nat(b, s, t)),
            (inner.clone(), inner.clone(), inner.clone()).prop_map(|(b, s, t)| Term::rec_vec(b, s, t)),
            inner.clone().prop_map(Term::quasi_lam),
            inner.prop_map(Term::quasi_app),
        ]
    })
}

fn base_term() -> impl Strategy<Value = Term> {
    term().prop_filter("base fragment", |t| !t.uses_extension())
}

fn ty() -> impl Strategy<Value = Ty> {
    prop_oneof![
        Just(Ty::Nat),
        Just(Ty::pi("z", Ty::Nat, Ty::Nat)),
        Just(Ty::eq(Term::Zero, Term::Zero)),
        name().prop_map(|x| Ty::vec(Ty::Nat, Term::var(x))),
    ]
}

fn ann_term() -> impl Strategy<Value = AnnTerm> {
    let leaf = prop_oneof![name().prop_map(build::var), Just(build::zero()), ty().prop_map(build::nil)];
    leaf.prop_recursive(4, 30, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(f, a)| build::app(f, a)),
            (inner.clone(), inner.clone()).prop_map(|(f, a)| build::iapp(f, a)),
            (name(), ty(), inner.clone()).prop_map(|(x, t, b)| build::lam(x, t, b)),
            (name(), ty(), inner.clone()).prop_map(|(x, t, b)| build::ilam(x, t, b)),
            inner.clone().prop_map(build::succ),
            (inner.clone(), inner.clone()).prop_map(|(h, t)| build::cons(h, t)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| build::join(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(p, t)| build::cast("i", Ty::Nat, p, t)),
            (inner.clone(), inner.clone(), inner).prop_map(|(b, s, t)| build::rec_nat("i", Ty::Nat, b, s, t)),
        ]
    })
}

/// Builds α-variants by renaming each binder to a fresh name.
fn rename_binders(t: &Term, counter: &mut usize) -> Term {
    match t {
        Term::Lam(x, b) => {
            *counter += 1;
            let fresh = format!("w{counter}");
            let body = b.subst(x, &Term::var(&fresh));
            Term::lam(&fresh, rename_binders(&body, counter))
        }
        Term::Var(_) | Term::Zero | Term::Nil | Term::Join => t.clone(),
        Term::App(f, a) => Term::app(rename_binders(f, counter), rename_binders(a, counter)),
        Term::Succ(a) => Term::succ(rename_binders(a, counter)),
        Term::Cons(h, tl) => Term::cons(rename_binders(h, counter), rename_binders(tl, counter)),
        Term::RecNat(b, s, tg) => {
            Term::rec_nat(rename_binders(b, counter), rename_binders(s, counter), rename_binders(tg, counter))
        }
        Term::RecVec(b, s, tg) => {
            Term::rec_vec(rename_binders(b, counter), rename_binders(s, counter), rename_binders(tg, counter))
        }
        Term::QuasiLam(b) => Term::quasi_lam(rename_binders(b, counter)),
        Term::QuasiApp(f) => Term::quasi_app(rename_binders(f, counter)),
    }
}

proptest! {
    #[test]
    fn substitution_free_variable_law(a in term(), x in name(), b in term()) {
        let result = a.subst(x, &b).free_vars();
        let mut expected = a.free_vars();
        if expected.remove(x) {
            expected.extend(b.free_vars());
        }
        prop_assert_eq!(result, expected);
    }

    #[test]
    fn substituting_a_variable_for_itself_is_identity(a in term(), x in name()) {
        prop_assert!(a.subst(x, &Term::var(x)).alpha_eq(&a));
    }

    #[test]
    fn substituting_for_an_absent_variable_is_identity(a in term(), b in term()) {
        prop_assert!(a.subst("absent", &b).alpha_eq(&a));
    }

    #[test]
    fn alpha_equivalence_is_reflexive_and_sees_through_renaming(a in term()) {
        prop_assert!(a.alpha_eq(&a));
        let renamed = rename_binders(&a, &mut 0);
        prop_assert!(a.alpha_eq(&renamed));
        prop_assert!(renamed.alpha_eq(&a));
    }

    #[test]
    fn substitution_respects_alpha(a in term(), x in name(), b in term()) {
        let renamed = rename_binders(&a, &mut 0);
        prop_assert!(a.subst(x, &b).alpha_eq(&renamed.subst(x, &b)));
    }

    #[test]
    fn erasure_shrinks_and_keeps_free_variables(t in ann_term()) {
        let e = erase(&t);
        prop_assert!(e.size() <= t.size());
        // An implicit binder disappears, so its variable may surface free;
        // the checker rejects exactly those terms.
        if !pretty_ann(&t).contains("ifun") {
            prop_assert!(e.free_vars().is_subset(&t.free_vars()));
        }
    }

    #[test]
    fn embedding_erases_back(a in term()) {
        if let Some(t) = embed(&a) {
            prop_assert_eq!(erase(&t), a);
        }
    }

    #[test]
    fn printing_then_parsing_round_trips(a in term(), t in ann_term()) {
        let back = parse_erased(&pretty_term(&a)).unwrap();
        prop_assert!(back.alpha_eq(&a), "{}", pretty_term(&a));
        let back = parse_term(&pretty_ann(&t)).unwrap();
        prop_assert!(back.alpha_eq(&t), "{}", pretty_ann(&t));
    }

    #[test]
    fn cbv_steps_are_full_steps(a in term(), m in mode()) {
        if let Some(next) = step_cbv(&a, m) {
            prop_assert!(step_full(&a, m).iter().any(|b| b.alpha_eq(&next)));
        }
    }

    #[test]
    fn cbv_is_deterministic_and_values_do_not_step(a in term(), m in mode()) {
        prop_assert_eq!(step_cbv(&a, m), step_cbv(&a, m));
        if is_value(&a) {
            prop_assert_eq!(tvec_core::reduce::cbv_step(&a, m), CbvStep::Value);
        }
    }

    #[test]
    fn normal_forms_have_no_step(a in base_term(), m in mode()) {
        if let Some(nf) = normalize(&a, 200, m).normal_form() {
            prop_assert!(is_normal(nf, m));
            prop_assert!(step_full(nf, m).is_empty());
            prop_assert!(step_leftmost_outermost(nf, m).is_none());
        }
    }

    #[test]
    fn joinability_is_symmetric(a in base_term(), b in base_term()) {
        if let (Ok(ab), Ok(ba)) = (joinable(&a, &b, 200, Mode::Base), joinable(&b, &a, 200, Mode::Base)) {
            prop_assert_eq!(ab, ba);
        }
    }
}
