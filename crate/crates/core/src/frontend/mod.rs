//! Concrete syntax: lexing, parsing, printing, and resolution of file-level
//! definitions.

mod defs;
mod lexer;
mod parser;
mod pretty;

pub use defs::{resolve_defs, Resolved, ResolvedDef};
pub use lexer::{lex, Tok, Token};
pub use parser::{
    is_keyword, parse_erased, parse_file, parse_term, parse_type, Def, Item, Param, SourceFile, KEYWORDS,
};
pub use pretty::{pretty_ann, pretty_term, pretty_ty, refold, refold_ty};
