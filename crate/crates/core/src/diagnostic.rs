use std::fmt::Write as _;

use serde::Serialize;

use crate::syntax::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Note,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticKind {
    Lex,
    Parse,
    DuplicateDefinition,
    UnknownName,
    RecursiveReference,
    OpenDefinitionReference,
    DependsOnFailed,
    ContextNotOk,
    UnboundVariable,
    ScopeViolation,
    ModeViolation,
    ShapeMismatch,
    TypeMismatch,
    ImplicitVariableEscapes,
    JoinFailed,
    JoinUndecided,
    ScrutineeMismatch,
    Note,
}

/// A structured report: the rule that was attempted, where, and why it
/// failed.
#[derive(Clone, Debug, Serialize, thiserror::Error)]
#[error("{rule}: {message}")]
pub struct Diagnostic {
    pub severity: Severity,
    pub kind: DiagnosticKind,
    pub rule: String,
    pub span: Span,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<Diagnostic>,
}

impl Diagnostic {
    pub fn error(kind: DiagnosticKind, rule: impl Into<String>, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            kind,
            rule: rule.into(),
            span,
            message: message.into(),
            expected: None,
            actual: None,
            notes: Vec::new(),
        }
    }

    pub fn note(span: Span, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Note, ..Diagnostic::error(DiagnosticKind::Note, "note", span, message) }
    }

    pub fn with_types(mut self, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        self.expected = Some(expected.into());
        self.actual = Some(actual.into());
        self
    }

    pub fn with_note(mut self, note: Diagnostic) -> Self {
        self.notes.push(note);
        self
    }

    /// Human-readable rendering; positions are shown as `line:col` when
    /// the source text is available.
    pub fn render(&self, source: Option<&str>) -> String {
        let mut out = String::new();
        self.render_into(&mut out, source, 0);
        out
    }

    fn render_into(&self, out: &mut String, source: Option<&str>, depth: usize) {
        let indent = "  ".repeat(depth);
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Note => "note",
        };
        let at = match source {
            Some(src) => {
                let (l1, c1) = line_col(src, self.span.start);
                let (l2, c2) = line_col(src, self.span.end);
                format!("{l1}:{c1}-{l2}:{c2}")
            }
            None => format!("{}..{}", self.span.start, self.span.end),
        };
        if self.severity == Severity::Note {
            let _ = writeln!(out, "{indent}{sev}: {}", self.message);
        } else {
            let _ = writeln!(out, "{indent}{sev}[{}] at {at}: {}", self.rule, self.message);
        }
        if let Some(e) = &self.expected {
            let _ = writeln!(out, "{indent}  expected: {e}");
        }
        if let Some(a) = &self.actual {
            let _ = writeln!(out, "{indent}  actual:   {a}");
        }
        for n in &self.notes {
            n.render_into(out, source, depth + 1);
        }
    }
}

/// 1-based line and column (in characters) of a byte offset.
pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..src.floor_char_boundary_compat(offset)];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

trait FloorCharBoundary {
    fn floor_char_boundary_compat(&self, i: usize) -> usize;
}

impl FloorCharBoundary for str {
    fn floor_char_boundary_compat(&self, mut i: usize) -> usize {
        while i > 0 && !self.is_char_boundary(i) {
            i -= 1;
        }
        i
    }
}
