//! Kernel for a dependently typed lambda calculus with naturals,
//! length-indexed vectors and equality proved by joinability.
//!
//! Annotated terms ([`syntax::AnnTerm`]) are checked by [`typecheck`] and
//! erased ([`erase`]) to untyped terms ([`syntax::Term`]), which are what
//! [`reduce`] runs and what equality types talk about.

// Diagnostics carry spans, types and notes; they are only built on the error path.
#![allow(clippy::result_large_err)]

pub mod diagnostic;
pub mod erase;
pub mod frontend;
pub mod oracle;
pub mod program;
pub mod reduce;
pub mod syntax;
pub mod typecheck;

pub use diagnostic::Diagnostic;
pub use syntax::{AnnTerm, Context, Mode, Term, Ty};
