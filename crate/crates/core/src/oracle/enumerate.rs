//! Exhaustive enumeration of small annotated terms.
//!
//! Size is [`AnnTerm::size`]: one per term constructor plus the node count
//! of every annotation type. Motive binder names are not counted. Term
//! binders are named `x0`, `x1`, ... by depth and motives always bind `i`
//! (and `j` for vectors), so two distinct enumerated terms are never
//! α-equivalent.
//!
//! Annotations come from a fixed alphabet:
//! - binder domains, `nil` element types and fold branches: `Nat`,
//!   `Pi z : Nat. Nat`, `0 = 0`, `Vec Nat 0`, and in large-elim mode also
//!   `ifzero 0 Nat Nat`;
//! - `rnat` and `cast` motives over `i`: `Nat`, `Vec Nat i`, `i = 0`, and in
//!   large-elim mode `ifzero i Nat Nat`;
//! - `rvec` motives over `i. j`: `Nat`, `Vec Nat i`.

use std::collections::HashMap;

use thiserror::Error;

use crate::syntax::{build, AnnTerm, Context, Mode, Name, Term, Ty};

/// Largest size [`enumerate`] accepts.
pub const MAX_ENUM_SIZE: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("enumeration size {requested} exceeds the cap of {cap}")]
pub struct CapExceeded {
    pub requested: usize,
    pub cap: usize,
}

pub fn annotation_types(mode: Mode) -> Vec<Ty> {
    let mut out =
        vec![Ty::Nat, Ty::pi("z", Ty::Nat, Ty::Nat), Ty::eq(Term::Zero, Term::Zero), Ty::vec(Ty::Nat, Term::Zero)];
    if mode == Mode::LargeElim {
        out.push(Ty::if_zero(Term::Zero, Ty::Nat, Ty::Nat));
    }
    out
}

pub fn nat_motives(mode: Mode) -> Vec<Ty> {
    let i = || Term::var("i");
    let mut out = vec![Ty::Nat, Ty::vec(Ty::Nat, i()), Ty::eq(i(), Term::Zero)];
    if mode == Mode::LargeElim {
        out.push(Ty::if_zero(i(), Ty::Nat, Ty::Nat));
    }
    out
}

pub fn vec_motives() -> Vec<Ty> {
    vec![Ty::Nat, Ty::vec(Ty::Nat, Term::var("i"))]
}

/// The open context used to reach the recursor rules at small sizes:
/// `n : Nat`, a step function for `rnat`, and one for `rvec`.
pub fn open_context() -> Context {
    let nat_step = Ty::pi("y", Ty::Nat, Ty::pi("u", Ty::Nat, Ty::Nat));
    let vec_step = Ty::forall(
        "l",
        Ty::Nat,
        Ty::pi("z", Ty::Nat, Ty::pi("v", Ty::vec(Ty::Nat, Term::var("l")), Ty::pi("u", Ty::Nat, Ty::Nat))),
    );
    Context::from_bindings([("n", Ty::Nat), ("f", nat_step), ("s", vec_step)])
}

/// Every annotated term of size at most `max_size` whose free variables
/// come from `ctx`, smallest first, in a fixed order.
pub fn enumerate(max_size: usize, mode: Mode, ctx: &Context) -> Result<Vec<AnnTerm>, CapExceeded> {
    if max_size > MAX_ENUM_SIZE {
        return Err(CapExceeded { requested: max_size, cap: MAX_ENUM_SIZE });
    }
    let mut e = Enumerator::new(mode, ctx);
    let mut out = Vec::new();
    for size in 1..=max_size {
        out.extend(e.exact(size, 0).iter().cloned());
    }
    Ok(out)
}

struct Enumerator {
    mode: Mode,
    ctx_vars: Vec<Name>,
    annots: Vec<Ty>,
    nat_motives: Vec<Ty>,
    vec_motives: Vec<Ty>,
    memo: HashMap<(usize, usize), Vec<AnnTerm>>,
}

fn binder(depth: usize) -> String {
    format!("x{depth}")
}

impl Enumerator {
    fn new(mode: Mode, ctx: &Context) -> Self {
        Enumerator {
            mode,
            ctx_vars: ctx.bindings().into_iter().map(|(x, _)| x).collect(),
            annots: annotation_types(mode),
            nat_motives: nat_motives(mode),
            vec_motives: vec_motives(),
            memo: HashMap::new(),
        }
    }

    /// Terms of exactly `size` nodes under `depth` enclosing binders.
    fn exact(&mut self, size: usize, depth: usize) -> &Vec<AnnTerm> {
        if !self.memo.contains_key(&(size, depth)) {
            let terms = self.build(size, depth);
            self.memo.insert((size, depth), terms);
        }
        &self.memo[&(size, depth)]
    }

    fn get(&mut self, size: usize, depth: usize) -> Vec<AnnTerm> {
        self.exact(size, depth).clone()
    }

    /// All `(a, b)` with `|a| + |b| = total`.
    fn pairs(&mut self, total: usize, depth: usize) -> Vec<(AnnTerm, AnnTerm)> {
        let mut out = Vec::new();
        for left in 1..total {
            let ls = self.get(left, depth);
            let rs = self.get(total - left, depth);
            for a in &ls {
                for b in &rs {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    fn triples(&mut self, total: usize, depth: usize) -> Vec<(AnnTerm, AnnTerm, AnnTerm)> {
        let mut out = Vec::new();
        for first in 1..total {
            let fs = self.get(first, depth);
            for (b, c) in self.pairs(total - first, depth) {
                for a in &fs {
                    out.push((a.clone(), b.clone(), c.clone()));
                }
            }
        }
        out
    }

    fn build(&mut self, size: usize, depth: usize) -> Vec<AnnTerm> {
        let ext = self.mode == Mode::LargeElim;
        let mut out = Vec::new();
        if size == 1 {
            for x in &self.ctx_vars {
                out.push(build::var(x));
            }
            for d in 0..depth {
                out.push(build::var(&binder(d)));
            }
            out.push(build::zero());
        }
        let rest = size - 1;
        for ty in self.annots.clone() {
            if ty.size() == rest {
                out.push(build::nil(ty));
            }
        }
        if rest >= 1 {
            for t in self.get(rest, depth) {
                out.push(build::succ(t));
            }
            if ext {
                for t in self.get(rest, depth) {
                    out.push(build::unfold_z(t));
                }
            }
        }
        for (a, b) in self.pairs(rest, depth) {
            out.push(build::app(a.clone(), b.clone()));
            out.push(build::cons(a.clone(), b.clone()));
            out.push(build::join(a.clone(), b.clone()));
            if ext {
                out.push(build::qapp(a.clone(), b.clone()));
                out.push(build::unfold_s(a, b));
            } else {
                out.push(build::iapp(a, b));
            }
        }
        let x = binder(depth);
        for ty in self.annots.clone() {
            let Some(body_size) = rest.checked_sub(ty.size()).filter(|&s| s >= 1) else { continue };
            for body in self.get(body_size, depth + 1) {
                out.push(build::lam(&x, ty.clone(), body.clone()));
                if ext {
                    out.push(build::qlam(&x, ty.clone(), body));
                } else {
                    out.push(build::ilam(&x, ty.clone(), body));
                }
            }
            if ext {
                for t in self.get(body_size, depth) {
                    out.push(build::fold_z(ty.clone(), t));
                }
                for (w, t) in self.pairs(body_size, depth) {
                    out.push(build::fold_s(w, ty.clone(), t));
                }
            }
        }
        for m in self.nat_motives.clone() {
            let Some(kids) = rest.checked_sub(m.size()) else { continue };
            for (a, b, c) in self.triples(kids, depth) {
                out.push(build::rec_nat("i", m.clone(), a, b, c));
            }
            for (p, t) in self.pairs(kids, depth) {
                out.push(build::cast("i", m.clone(), p, t));
            }
        }
        for m in self.vec_motives.clone() {
            let Some(kids) = rest.checked_sub(m.size()) else { continue };
            for (a, b, c) in self.triples(kids, depth) {
                out.push(build::rec_vec("i", "j", m.clone(), a, b, c));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_one_is_the_atoms() {
        let closed = enumerate(1, Mode::Base, &Context::new()).unwrap();
        assert_eq!(closed.len(), 1);
        let open = enumerate(1, Mode::Base, &open_context()).unwrap();
        assert_eq!(open.len(), 4);
    }

    #[test]
    fn sizes_are_exact_and_ascending() {
        let ts = enumerate(5, Mode::LargeElim, &Context::new()).unwrap();
        assert!(ts.windows(2).all(|w| w[0].size() <= w[1].size()));
    }

    #[test]
    fn small_sizes_contain_expected_terms() {
        let ts = enumerate(3, Mode::Base, &Context::new()).unwrap();
        let has = |t: &AnnTerm| ts.iter().any(|u| u.alpha_eq(t));
        assert!(has(&build::succ(build::zero())));
        assert!(has(&build::join(build::zero(), build::zero())));
        assert!(has(&build::nil(Ty::Nat)));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate(9, Mode::Base, &Context::new()).unwrap_err(),
            CapExceeded { requested: 9, cap: MAX_ENUM_SIZE }
        );
    }
}
