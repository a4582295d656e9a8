use crate::diagnostic::{Diagnostic, DiagnosticKind};
use crate::syntax::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Colon,
    Dot,
    /// `=>`
    Arrow,
    /// `=`
    Equals,
    /// `@`
    At,
    /// `@-`
    AtMinus,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Arrow => "`=>`".into(),
            Tok::Equals => "`=`".into(),
            Tok::At => "`@`".into(),
            Tok::AtMinus => "`@-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits `src` into tokens. `--` starts a comment running to the end of
/// the line. Identifiers may contain an inner `-` when a letter follows it
/// (`large-elim`).
pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if src[start..].starts_with("--") {
            while let Some(&(_, c)) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        let single = |tok| Some((tok, start + c.len_utf8()));
        let simple = match c {
            '(' => single(Tok::LParen),
            ')' => single(Tok::RParen),
            '[' => single(Tok::LBrack),
            ']' => single(Tok::RBrack),
            ':' => single(Tok::Colon),
            '.' => single(Tok::Dot),
            '=' if src[start..].starts_with("=>") => Some((Tok::Arrow, start + 2)),
            '=' => single(Tok::Equals),
            '@' if src[start..].starts_with("@-") => Some((Tok::AtMinus, start + 2)),
            '@' => single(Tok::At),
            _ => None,
        };
        if let Some((tok, end)) = simple {
            while chars.peek().is_some_and(|&(i, _)| i < end) {
                chars.next();
            }
            out.push(Token { tok, span: Span::new(start, end) });
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let text = &src[start..end];
            let n = text.parse::<u64>().map_err(|_| {
                Diagnostic::error(
                    DiagnosticKind::Lex,
                    "lex",
                    Span::new(start, end),
                    format!("numeral `{text}` is too large"),
                )
            })?;
            out.push(Token { tok: Tok::Num(n), span: Span::new(start, end) });
            continue;
        }
        if ident_start(c) {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                let dash_joins = d == '-' && src[i + 1..].chars().next().is_some_and(char::is_alphabetic);
                if !(ident_continue(d) || dash_joins) {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            out.push(Token { tok: Tok::Ident(src[start..end].to_string()), span: Span::new(start, end) });
            continue;
        }
        return Err(Diagnostic::error(
            DiagnosticKind::Lex,
            "lex",
            Span::new(start, start + c.len_utf8()),
            format!("unexpected character `{c}`"),
        ));
    }
    out.push(Token { tok: Tok::Eof, span: Span::new(src.len(), src.len()) });
    Ok(out)
}
