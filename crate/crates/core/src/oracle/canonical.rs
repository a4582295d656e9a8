//! Canonical forms: the value shapes a closed term of a given type may
//! take.

use crate::reduce::{normalize, FuelExhausted};
use crate::syntax::{Mode, Term, Ty};

/// Whether the value `v` has the head its type `ty` demands. Length
/// indices and `ifzero` scrutinees are normalized first, which may run out
/// of fuel.
pub fn canonical_shape(v: &Term, ty: &Ty, mode: Mode, fuel: u64) -> Result<bool, FuelExhausted> {
    Ok(match ty {
        Ty::Nat => matches!(v, Term::Zero | Term::Succ(_)),
        Ty::Vec(_, len) => {
            let len = normalize(len, fuel, mode).into_result()?;
            match v {
                Term::Nil => len == Term::Zero,
                Term::Cons(..) => matches!(len, Term::Succ(_)),
                _ => false,
            }
        }
        Ty::Pi(..) => matches!(v, Term::Lam(..)),
        // An implicit product leaves no trace in the erased term; a
        // quasi-implicit one is introduced by `λ.`.
        Ty::Forall(_, _, body) => match mode {
            Mode::Base => canonical_shape(v, body, mode, fuel)?,
            Mode::LargeElim => matches!(v, Term::QuasiLam(_)),
        },
        Ty::Eq(..) => *v == Term::Join,
        Ty::IfZero(s, zero, succ) => match normalize(s, fuel, mode).into_result()? {
            Term::Zero => canonical_shape(v, zero, mode, fuel)?,
            Term::Succ(_) => canonical_shape(v, succ, mode, fuel)?,
            _ => false,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{parse_erased, parse_type};

    fn shape(v: &str, ty: &str, mode: Mode) -> bool {
        canonical_shape(&parse_erased(v).unwrap(), &parse_type(ty).unwrap(), mode, 1000).unwrap()
    }

    #[test]
    fn heads_match_types() {
        assert!(shape("join", "0 = 0", Mode::Base));
        assert!(shape("S 0", "Nat", Mode::Base));
        assert!(!shape("0", "Pi x : Nat. Nat", Mode::Base));
        assert!(shape("fun x => x", "All l : Nat. Pi x : Vec Nat l. Vec Nat l", Mode::Base));
        assert!(shape("qfun => 0", "All l : Nat. Nat", Mode::LargeElim));
        assert!(!shape("0", "All l : Nat. Nat", Mode::LargeElim));
    }

    #[test]
    fn vector_length_is_normalized() {
        let plus = "(fun m => fun n => rnat n (fun y => fun u => S u) m)";
        assert!(shape("cons 0 nil", &format!("Vec Nat ({plus} 0 1)"), Mode::Base));
        assert!(!shape("nil", &format!("Vec Nat ({plus} 0 1)"), Mode::Base));
    }

    #[test]
    fn ifzero_selects_a_branch() {
        assert!(shape("fun x => x", "ifzero (S 0) Nat (Pi x : Nat. Nat)", Mode::LargeElim));
        assert!(!shape("fun x => x", "ifzero 0 Nat (Pi x : Nat. Nat)", Mode::LargeElim));
    }

    #[test]
    fn divergent_index_is_reported() {
        let omega = parse_erased("(fun x => x x) (fun x => x x)").unwrap();
        assert!(canonical_shape(&Term::Nil, &Ty::vec(Ty::Nat, omega), Mode::Base, 50).is_err());
    }
}
