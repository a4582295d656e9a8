//! Checking a whole source file: parse, resolve definitions, check each
//! one against its declared type.

use serde::Serialize;

use crate::diagnostic::{Diagnostic, DiagnosticKind};
use crate::frontend::{parse_file, pretty_ty, refold_ty, resolve_defs, ResolvedDef};
use crate::syntax::{Mode, Name, Term, Ty};
use crate::typecheck::Checker;

#[derive(Clone, Debug)]
pub struct CheckedDef {
    pub name: Name,
    /// `None` when resolution failed.
    pub def: Option<ResolvedDef>,
    /// The declared type on success.
    pub result: Result<Ty, Diagnostic>,
}

#[derive(Clone, Debug)]
pub struct Program {
    pub mode: Mode,
    pub fuel: u64,
    pub defs: Vec<CheckedDef>,
    pub abbreviations: Vec<(Name, Term)>,
}

/// Machine-readable summary of a checked file.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub defs: Vec<DefReport>,
    pub mode: Mode,
    pub fuel: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DefReport {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: Option<String>,
    pub status: Status,
    pub diagnostic: Option<Diagnostic>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

/// Parses and checks `src`. `mode` overrides the file's pragma. Parse and
/// file-level resolution errors are returned as `Err`; per-definition
/// failures are recorded in the result.
pub fn check_source(src: &str, mode: Option<Mode>, fuel: u64) -> Result<Program, Diagnostic> {
    let file = parse_file(src)?;
    let resolved = resolve_defs(&file)?;
    let mode = mode.or(resolved.pragma).unwrap_or_default();
    let checker = Checker::new(mode).with_fuel(fuel);
    let mut defs: Vec<CheckedDef> = Vec::new();
    for (name, r) in resolved.defs {
        let checked = match r {
            Err(d) => CheckedDef { name, def: None, result: Err(d) },
            Ok(def) => {
                let failed_dep = def.deps.iter().find(|dep| defs.iter().any(|c| &c.name == *dep && c.result.is_err()));
                let result = match failed_dep {
                    Some(dep) => Err(Diagnostic::error(
                        DiagnosticKind::DependsOnFailed,
                        "resolve",
                        def.name_span,
                        format!("depends on `{dep}`, which failed to check"),
                    )),
                    None => checker.check_against(&def.context(), &def.body, &def.ty),
                };
                CheckedDef { name, def: Some(def), result }
            }
        };
        defs.push(checked);
    }
    Ok(Program { mode, fuel, defs, abbreviations: resolved.abbreviations })
}

impl Program {
    pub fn all_ok(&self) -> bool {
        self.defs.iter().all(|d| d.result.is_ok())
    }

    pub fn get(&self, name: &str) -> Option<&CheckedDef> {
        self.defs.iter().rev().find(|d| &*d.name == name)
    }

    /// Prints a type with closed definitions folded back to their names.
    pub fn show_ty(&self, ty: &Ty) -> String {
        pretty_ty(&refold_ty(ty, &self.abbreviations))
    }

    /// The type to display for a definition: parameters become a prefix
    /// `(x : T) ...` of the declared type.
    pub fn signature(&self, def: &ResolvedDef) -> String {
        let mut out = String::new();
        for (x, t) in &def.params {
            out.push_str(&format!("({x} : {}) ", self.show_ty(t)));
        }
        out.push_str(&self.show_ty(&def.ty));
        out
    }

    pub fn report(&self) -> Report {
        let defs = self
            .defs
            .iter()
            .map(|c| DefReport {
                name: c.name.to_string(),
                ty: c.def.as_ref().map(|d| self.signature(d)),
                status: if c.result.is_ok() { Status::Ok } else { Status::Error },
                diagnostic: c.result.as_ref().err().cloned(),
            })
            .collect();
        Report { defs, mode: self.mode, fuel: self.fuel }
    }
}
