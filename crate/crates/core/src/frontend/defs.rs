//! Definitions are transparent abbreviations: each reference to an earlier
//! closed definition is replaced by its body before checking.

use std::collections::{BTreeMap, BTreeSet};

use super::parser::{Item, SourceFile};
use crate::diagnostic::{Diagnostic, DiagnosticKind};
use crate::erase::erase;
use crate::syntax::{AnnKind, AnnSubst, AnnTerm, Context, Mode, Name, Span, Subst, Term, Ty};

/// A definition with every earlier definition inlined.
#[derive(Clone, Debug)]
pub struct ResolvedDef {
    pub name: Name,
    pub span: Span,
    pub name_span: Span,
    /// Parameters become the checking context.
    pub params: Vec<(Name, Ty)>,
    pub ty: Ty,
    pub body: AnnTerm,
    /// Earlier definitions this one mentions.
    pub deps: Vec<Name>,
}

impl ResolvedDef {
    pub fn context(&self) -> Context {
        Context::from_bindings(self.params.iter().cloned())
    }

    pub fn is_closed(&self) -> bool {
        self.params.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Resolved {
    /// The mode selected by the file's `mode` pragma, if any.
    pub pragma: Option<Mode>,
    /// One entry per definition, in file order.
    pub defs: Vec<(Name, Result<ResolvedDef, Diagnostic>)>,
    /// Erased bodies of closed definitions, for printing types in terms of
    /// definition names.
    pub abbreviations: Vec<(Name, Term)>,
}

/// Inlines definitions. Errors that concern a single definition are
/// reported in its entry; a conflicting `mode` pragma fails the whole file.
pub fn resolve_defs(file: &SourceFile) -> Result<Resolved, Diagnostic> {
    let mut pragma: Option<(Mode, Span)> = None;
    for item in &file.items {
        if let Item::Mode { mode, span } = item {
            if let Some((prev, _)) = pragma {
                if prev != *mode {
                    return Err(Diagnostic::error(
                        DiagnosticKind::Parse,
                        "mode",
                        *span,
                        format!("conflicting mode pragma: file already selected `{prev}`"),
                    ));
                }
            }
            pragma = Some((*mode, *span));
        }
    }

    let all_names: BTreeSet<Name> = file.defs().map(|d| d.name.clone()).collect();
    // Inlined bodies of earlier closed definitions, and the set of earlier
    // open ones.
    let mut closed: BTreeMap<Name, AnnTerm> = BTreeMap::new();
    let mut open: BTreeSet<Name> = BTreeSet::new();
    let mut seen: BTreeSet<Name> = BTreeSet::new();
    let mut out = Vec::new();
    let mut abbreviations = Vec::new();

    for def in file.defs() {
        if !seen.insert(def.name.clone()) {
            let d = Diagnostic::error(
                DiagnosticKind::DuplicateDefinition,
                "resolve",
                def.name_span,
                format!("`{}` is already defined", def.name),
            );
            out.push((def.name.clone(), Err(d)));
            continue;
        }

        // Free names, each paired with the binders in scope where it occurs.
        let mut refs: Vec<(Name, Span)> = Vec::new();
        let mut bound: Vec<Name> = Vec::new();
        for p in &def.params {
            for x in p.ty.free_vars() {
                if !bound.contains(&x) {
                    refs.push((x, p.span));
                }
            }
            bound.push(p.name.clone());
        }
        for x in def.ty.free_vars() {
            if !bound.contains(&x) {
                refs.push((x, def.span));
            }
        }
        for x in def.body.free_vars() {
            if !bound.contains(&x) {
                let span = find_var(&def.body, &x).unwrap_or(def.body.span);
                refs.push((x, span));
            }
        }

        let mut deps: Vec<Name> = Vec::new();
        let mut problem = None;
        for (x, span) in refs {
            let (kind, msg) = if x == def.name {
                (
                    DiagnosticKind::RecursiveReference,
                    format!("`{x}` refers to itself; recursion is only available through rnat and rvec"),
                )
            } else if closed.contains_key(&x) {
                if !deps.contains(&x) {
                    deps.push(x);
                }
                continue;
            } else if open.contains(&x) {
                (
                    DiagnosticKind::OpenDefinitionReference,
                    format!("`{x}` has parameters and cannot be referenced by other definitions"),
                )
            } else if all_names.contains(&x) {
                (DiagnosticKind::RecursiveReference, format!("`{x}` is defined later in the file"))
            } else {
                (DiagnosticKind::UnknownName, format!("unknown name `{x}`"))
            };
            problem = Some(Diagnostic::error(kind, "resolve", span, msg));
            break;
        }
        if let Some(d) = problem {
            out.push((def.name.clone(), Err(d)));
            if def.params.is_empty() {
                // Keep later references resolvable so they report the
                // dependency failure rather than an unknown name.
                closed.insert(def.name.clone(), def.body.clone());
            } else {
                open.insert(def.name.clone());
            }
            continue;
        }

        let mut s = AnnSubst::new();
        let mut es = Subst::new();
        for x in &deps {
            s = s.with(x.clone(), closed[x].clone());
            es = es.with(x.clone(), erase(&closed[x]));
        }
        let params: Vec<(Name, Ty)> = def.params.iter().map(|p| (p.name.clone(), p.ty.subst_with(&es))).collect();
        let ty = def.ty.subst_with(&es);
        let body = def.body.subst_with(&s);
        if params.is_empty() {
            let erased = erase(&body);
            if erased.as_numeral().is_none() && erased.size() > 2 {
                abbreviations.push((def.name.clone(), erased));
            }
            closed.insert(def.name.clone(), body.clone());
        } else {
            open.insert(def.name.clone());
        }
        out.push((
            def.name.clone(),
            Ok(ResolvedDef {
                name: def.name.clone(),
                span: def.span,
                name_span: def.name_span,
                params,
                ty,
                body,
                deps,
            }),
        ));
    }
    Ok(Resolved { pragma: pragma.map(|(m, _)| m), defs: out, abbreviations })
}

/// Span of the first occurrence of the variable `x`.
fn find_var(t: &AnnTerm, x: &str) -> Option<Span> {
    if let AnnKind::Var(y) = &t.kind {
        if &**y == x {
            return Some(t.span);
        }
    }
    t.children().into_iter().find_map(|c| find_var(c, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_file;

    fn resolve(src: &str) -> Resolved {
        resolve_defs(&parse_file(src).unwrap()).unwrap()
    }

    #[test]
    fn earlier_definitions_are_inlined() {
        let r = resolve(
            "def plus : Pi m : Nat. Pi n : Nat. Nat = fun m : Nat => fun n : Nat => rnat [x. Nat] n (fun y : Nat => fun u : Nat => S u) m
             def two : Nat = S (S zero)
             def four : Nat = plus two two",
        );
        let four = r.defs[2].1.as_ref().unwrap();
        assert!(four.body.free_vars().is_empty());
        assert_eq!(four.deps.len(), 2);
        assert_eq!(r.abbreviations.len(), 2);
    }

    #[test]
    fn self_reference_is_rejected() {
        let r = resolve("def f : Nat = f");
        let d = r.defs[0].1.as_ref().unwrap_err();
        assert_eq!(d.kind, DiagnosticKind::RecursiveReference);
        assert_eq!(d.span, Span::new(14, 15));
    }

    #[test]
    fn unknown_and_forward_names() {
        let r = resolve("def a : Nat = b\ndef b : Nat = 0\ndef c : Nat = q");
        assert_eq!(r.defs[0].1.as_ref().unwrap_err().kind, DiagnosticKind::RecursiveReference);
        assert!(r.defs[1].1.is_ok());
        assert_eq!(r.defs[2].1.as_ref().unwrap_err().kind, DiagnosticKind::UnknownName);
    }

    #[test]
    fn parameters_bind_and_open_definitions_are_private() {
        let r = resolve("def p (l : Nat) : l = l = join l l\ndef q : Nat = p");
        let p = r.defs[0].1.as_ref().unwrap();
        assert_eq!(p.context().len(), 1);
        assert_eq!(r.defs[1].1.as_ref().unwrap_err().kind, DiagnosticKind::OpenDefinitionReference);
    }

    #[test]
    fn duplicates_and_pragmas() {
        let r = resolve("mode large-elim\ndef a : Nat = 0\ndef a : Nat = 0");
        assert_eq!(r.pragma, Some(Mode::LargeElim));
        assert_eq!(r.defs[1].1.as_ref().unwrap_err().kind, DiagnosticKind::DuplicateDefinition);
        assert!(resolve_defs(&parse_file("mode base\nmode large-elim").unwrap()).is_err());
    }

    #[test]
    fn local_binders_shadow_definitions() {
        let r = resolve("def n : Nat = 3\ndef id : Pi n : Nat. Nat = fun n : Nat => n");
        let id = r.defs[1].1.as_ref().unwrap();
        assert!(id.deps.is_empty());
    }
}
