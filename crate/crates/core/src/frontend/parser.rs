//! Recursive-descent parser for `.tvec` sources.
//!
//! Three grammars share one token stream: annotated terms (definition
//! bodies), erased terms (embedded in types), and types. A parenthesis at
//! the start of a type is ambiguous between a parenthesized type and the
//! left side of an equation; the parser tries the type first and falls
//! back to an equation.

use super::lexer::{lex, Tok, Token};
use crate::diagnostic::{Diagnostic, DiagnosticKind};
use crate::syntax::{name, AnnKind, AnnTerm, Mode, Name, Span, Term, Ty};

pub const KEYWORDS: &[&str] = &[
    "Nat", "Vec", "Pi", "All", "ifzero", "fun", "ifun", "qfun", "S", "zero", "nil", "cons", "rnat", "rvec", "join",
    "cast", "foldz", "unfoldz", "folds", "unfolds", "def", "mode",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

#[derive(Clone, Debug)]
pub struct SourceFile {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Item {
    Mode { mode: Mode, span: Span },
    Def(Def),
}

/// `def name (x : T)* : T = t`
#[derive(Clone, Debug)]
pub struct Def {
    pub name: Name,
    pub name_span: Span,
    pub params: Vec<Param>,
    pub ty: Ty,
    pub body: AnnTerm,
    pub span: Span,
}

#[derive(Clone, Debug)]
pub struct Param {
    pub name: Name,
    pub ty: Ty,
    pub span: Span,
}

impl SourceFile {
    pub fn defs(&self) -> impl Iterator<Item = &Def> {
        self.items.iter().filter_map(|i| match i {
            Item::Def(d) => Some(d),
            Item::Mode { .. } => None,
        })
    }
}

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

pub fn parse_file(src: &str) -> PResult<SourceFile> {
    let mut p = Parser::new(src)?;
    let mut items = Vec::new();
    while p.peek() != &Tok::Eof {
        items.push(p.item()?);
    }
    Ok(SourceFile { items })
}

/// Parses a complete annotated term.
pub fn parse_term(src: &str) -> PResult<AnnTerm> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

/// Parses a complete erased term.
pub fn parse_erased(src: &str) -> PResult<Term> {
    let mut p = Parser::new(src)?;
    let t = p.uterm()?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_type(src: &str) -> PResult<Ty> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.expect_eof()?;
    Ok(t)
}

impl Parser {
    fn new(src: &str) -> PResult<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].span.end
        }
    }

    fn since(&self, start: usize) -> Span {
        Span::new(start, self.prev_end().max(start))
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, what: &str) -> PResult<T> {
        Err(Diagnostic::error(
            DiagnosticKind::Parse,
            "parse",
            self.span(),
            format!("expected {what}, found {}", self.peek().describe()),
        ))
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            self.error(&tok.describe())
        }
    }

    fn expect_eof(&self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> PResult<(Name, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_keyword(&s) => {
                let sp = self.bump().span;
                Ok((name(&s), sp))
            }
            Tok::Ident(s) => Err(Diagnostic::error(
                DiagnosticKind::Parse,
                "parse",
                self.span(),
                format!("`{s}` is a keyword and cannot be used as a name"),
            )),
            _ => self.error("an identifier"),
        }
    }

    // -- items -------------------------------------------------------------

    fn item(&mut self) -> PResult<Item> {
        let start = self.span().start;
        if self.eat_kw("mode") {
            let sp = self.span();
            let mode = match self.peek().clone() {
                Tok::Ident(s) => {
                    s.parse::<Mode>().map_err(|m| Diagnostic::error(DiagnosticKind::Parse, "parse", sp, m))?
                }
                _ => return self.error("`base` or `large-elim`"),
            };
            self.bump();
            return Ok(Item::Mode { mode, span: self.since(start) });
        }
        if self.eat_kw("def") {
            let (name, name_span) = self.ident()?;
            let mut params = Vec::new();
            while *self.peek() == Tok::LParen {
                let pstart = self.bump().span.start;
                let (x, _) = self.ident()?;
                self.expect(Tok::Colon)?;
                let ty = self.ty()?;
                self.expect(Tok::RParen)?;
                params.push(Param { name: x, ty, span: self.since(pstart) });
            }
            self.expect(Tok::Colon)?;
            let ty = self.ty()?;
            self.expect(Tok::Equals)?;
            let body = self.term()?;
            return Ok(Item::Def(Def { name, name_span, params, ty, body, span: self.since(start) }));
        }
        self.error("`def` or `mode`")
    }

    // -- annotated terms ---------------------------------------------------

    fn term(&mut self) -> PResult<AnnTerm> {
        let start = self.span().start;
        for kw in ["fun", "ifun", "qfun"] {
            if self.eat_kw(kw) {
                let (x, _) = self.ident()?;
                self.expect(Tok::Colon)?;
                let ty = self.ty()?;
                self.expect(Tok::Arrow)?;
                let body = Box::new(self.term()?);
                let kind = match kw {
                    "fun" => AnnKind::Lam(x, ty, body),
                    "ifun" => AnnKind::ImplicitLam(x, ty, body),
                    _ => AnnKind::QuasiLam(x, ty, body),
                };
                return Ok(AnnTerm::new(kind, self.since(start)));
            }
        }
        self.spine()
    }

    fn bracketed_term(&mut self) -> PResult<AnnTerm> {
        self.expect(Tok::LBrack)?;
        let t = self.term()?;
        self.expect(Tok::RBrack)?;
        Ok(t)
    }

    fn bracketed_type(&mut self) -> PResult<Ty> {
        self.expect(Tok::LBrack)?;
        let t = self.ty()?;
        self.expect(Tok::RBrack)?;
        Ok(t)
    }

    fn spine(&mut self) -> PResult<AnnTerm> {
        let start = self.span().start;
        let mut head = self.head()?;
        loop {
            let kind = match self.peek() {
                Tok::At => {
                    self.bump();
                    let w = self.bracketed_term()?;
                    AnnKind::ImplicitApp(Box::new(head), Box::new(w))
                }
                Tok::AtMinus => {
                    self.bump();
                    let w = self.bracketed_term()?;
                    AnnKind::QuasiApp(Box::new(head), Box::new(w))
                }
                _ if self.starts_atom() => {
                    let a = self.atom()?;
                    AnnKind::App(Box::new(head), Box::new(a))
                }
                _ => break,
            };
            head = AnnTerm::new(kind, self.since(start));
        }
        Ok(head)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => !is_keyword(s) || s == "zero" || s == "nil",
            Tok::Num(_) | Tok::LParen => true,
            _ => false,
        }
    }

    fn head(&mut self) -> PResult<AnnTerm> {
        let start = self.span().start;
        let Tok::Ident(kw) = self.peek().clone() else {
            return self.atom();
        };
        let b = Box::new;
        let kind = match kw.as_str() {
            "S" => {
                self.bump();
                AnnKind::Succ(b(self.atom()?))
            }
            "cons" => {
                self.bump();
                AnnKind::Cons(b(self.atom()?), b(self.atom()?))
            }
            "join" => {
                self.bump();
                AnnKind::Join(b(self.atom()?), b(self.atom()?))
            }
            "rnat" => {
                self.bump();
                self.expect(Tok::LBrack)?;
                let (var, _) = self.ident()?;
                self.expect(Tok::Dot)?;
                let motive = self.ty()?;
                self.expect(Tok::RBrack)?;
                AnnKind::RecNat { var, motive, base: b(self.atom()?), step: b(self.atom()?), target: b(self.atom()?) }
            }
            "rvec" => {
                self.bump();
                self.expect(Tok::LBrack)?;
                let (len_var, _) = self.ident()?;
                self.expect(Tok::Dot)?;
                let (vec_var, _) = self.ident()?;
                self.expect(Tok::Dot)?;
                let motive = self.ty()?;
                self.expect(Tok::RBrack)?;
                AnnKind::RecVec {
                    len_var,
                    vec_var,
                    motive,
                    base: b(self.atom()?),
                    step: b(self.atom()?),
                    target: b(self.atom()?),
                }
            }
            "cast" => {
                self.bump();
                self.expect(Tok::LBrack)?;
                let (var, _) = self.ident()?;
                self.expect(Tok::Dot)?;
                let motive = self.ty()?;
                self.expect(Tok::RBrack)?;
                AnnKind::Cast { var, motive, proof: b(self.atom()?), subject: b(self.atom()?) }
            }
            "foldz" => {
                self.bump();
                let ty = self.bracketed_type()?;
                AnnKind::FoldZ(ty, b(self.atom()?))
            }
            "unfoldz" => {
                self.bump();
                AnnKind::UnfoldZ(b(self.atom()?))
            }
            "folds" => {
                self.bump();
                let w = self.bracketed_term()?;
                let ty = self.bracketed_type()?;
                AnnKind::FoldS(b(w), ty, b(self.atom()?))
            }
            "unfolds" => {
                self.bump();
                let w = self.bracketed_term()?;
                AnnKind::UnfoldS(b(w), b(self.atom()?))
            }
            _ => return self.atom(),
        };
        Ok(AnnTerm::new(kind, self.since(start)))
    }

    fn atom(&mut self) -> PResult<AnnTerm> {
        let start = self.span().start;
        match self.peek().clone() {
            Tok::Num(n) => {
                let sp = self.bump().span;
                let mut t = AnnTerm::new(AnnKind::Zero, sp);
                for _ in 0..n {
                    t = AnnTerm::new(AnnKind::Succ(Box::new(t)), sp);
                }
                Ok(t)
            }
            Tok::LParen => {
                self.bump();
                let mut t = self.term()?;
                self.expect(Tok::RParen)?;
                t.span = self.since(start);
                Ok(t)
            }
            Tok::Ident(s) if s == "zero" => Ok(AnnTerm::new(AnnKind::Zero, self.bump().span)),
            Tok::Ident(s) if s == "nil" => {
                self.bump();
                let ty = self.bracketed_type()?;
                Ok(AnnTerm::new(AnnKind::Nil(ty), self.since(start)))
            }
            Tok::Ident(_) => {
                let (x, sp) = self.ident()?;
                Ok(AnnTerm::new(AnnKind::Var(x), sp))
            }
            _ => self.error("a term"),
        }
    }

    // -- erased terms ------------------------------------------------------

    fn uterm(&mut self) -> PResult<Term> {
        if self.eat_kw("fun") {
            let (x, _) = self.ident()?;
            self.expect(Tok::Arrow)?;
            return Ok(Term::Lam(x, Box::new(self.uterm()?)));
        }
        if self.eat_kw("qfun") {
            self.expect(Tok::Arrow)?;
            return Ok(Term::quasi_lam(self.uterm()?));
        }
        let mut head = self.uhead()?;
        loop {
            if *self.peek() == Tok::AtMinus {
                self.bump();
                head = Term::quasi_app(head);
            } else if self.starts_uatom() {
                head = Term::app(head, self.uatom()?);
            } else {
                return Ok(head);
            }
        }
    }

    fn starts_uatom(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => !is_keyword(s) || matches!(s.as_str(), "zero" | "nil" | "join"),
            Tok::Num(_) | Tok::LParen => true,
            _ => false,
        }
    }

    fn uhead(&mut self) -> PResult<Term> {
        if self.eat_kw("S") {
            return Ok(Term::succ(self.uatom()?));
        }
        if self.eat_kw("cons") {
            let h = self.uatom()?;
            return Ok(Term::cons(h, self.uatom()?));
        }
        for kw in ["rnat", "rvec"] {
            if self.eat_kw(kw) {
                let a = self.uatom()?;
                let s = self.uatom()?;
                let t = self.uatom()?;
                return Ok(if kw == "rnat" { Term::rec_nat(a, s, t) } else { Term::rec_vec(a, s, t) });
            }
        }
        self.uatom()
    }

    fn uatom(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(Term::numeral(n))
            }
            Tok::LParen => {
                self.bump();
                let t = self.uterm()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(s) if s == "zero" => {
                self.bump();
                Ok(Term::Zero)
            }
            Tok::Ident(s) if s == "nil" => {
                self.bump();
                Ok(Term::Nil)
            }
            Tok::Ident(s) if s == "join" => {
                self.bump();
                Ok(Term::Join)
            }
            Tok::Ident(_) => Ok(Term::Var(self.ident()?.0)),
            _ => self.error("a term"),
        }
    }

    // -- types -------------------------------------------------------------

    fn ty(&mut self) -> PResult<Ty> {
        for kw in ["Pi", "All"] {
            if self.eat_kw(kw) {
                let (x, _) = self.ident()?;
                self.expect(Tok::Colon)?;
                let dom = Box::new(self.ty()?);
                self.expect(Tok::Dot)?;
                let cod = Box::new(self.ty()?);
                return Ok(if kw == "Pi" { Ty::Pi(x, dom, cod) } else { Ty::Forall(x, dom, cod) });
            }
        }
        if self.is_kw("Nat") || self.is_kw("Vec") || self.is_kw("ifzero") {
            return self.tapp();
        }
        if *self.peek() == Tok::LParen {
            let save = self.pos;
            let as_type = self.paren_ty();
            if let Ok(t) = &as_type {
                if *self.peek() != Tok::Equals {
                    return Ok(t.clone());
                }
            }
            self.pos = save;
            return match self.equation() {
                Ok(t) => Ok(t),
                Err(e) => match as_type {
                    Err(e2) if e2.span.start > e.span.start => Err(e2),
                    _ => Err(e),
                },
            };
        }
        self.equation()
    }

    fn paren_ty(&mut self) -> PResult<Ty> {
        self.expect(Tok::LParen)?;
        let t = self.ty()?;
        self.expect(Tok::RParen)?;
        Ok(t)
    }

    fn equation(&mut self) -> PResult<Ty> {
        let lhs = self.uterm()?;
        if *self.peek() != Tok::Equals {
            return self.error("`=` (an equation) or a type");
        }
        self.bump();
        let rhs = self.uterm()?;
        Ok(Ty::Eq(lhs, rhs))
    }

    fn tapp(&mut self) -> PResult<Ty> {
        if self.eat_kw("Nat") {
            return Ok(Ty::Nat);
        }
        if self.eat_kw("Vec") {
            let elem = self.tatom()?;
            let len = self.uatom()?;
            return Ok(Ty::vec(elem, len));
        }
        if self.eat_kw("ifzero") {
            let s = self.uatom()?;
            let z = self.tatom()?;
            let n = self.tatom()?;
            return Ok(Ty::if_zero(s, z, n));
        }
        self.error("a type")
    }

    fn tatom(&mut self) -> PResult<Ty> {
        if self.eat_kw("Nat") {
            return Ok(Ty::Nat);
        }
        if *self.peek() == Tok::LParen {
            return self.paren_ty();
        }
        self.error("`Nat` or a parenthesized type")
    }
}
