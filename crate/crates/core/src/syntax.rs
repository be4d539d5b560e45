//! Concrete syntax: parsing and printing.
//!
//! Terms:     term ::= atom+          (application, left-associative)
//!            atom ::= NAT | '\.' term | '(' term ')'
//! Types:     T    ::= VAR | U '->' T ('->' right-associative)
//!            U    ::= 'w' | T | U '/\' U   ('/\' binds tighter than '->')
//!            VAR  ::= 'a' NAT
//! Contexts:  ctx  ::= 'nil' | U '.' ctx
//! Typings:   ctx '|-' T
//!
//! A lambda body extends as far right as possible, so `\. 1 2` is the
//! abstraction of the application. Printers emit a canonical spacing that
//! reparses to the same value; parsers accept arbitrary whitespace and
//! redundant parentheses and require the full input to be consumed.
//!
//! Derivations are serialized as s-expressions
//! `(rule ("term" "ctx" "type") premise*)` with the three judgement parts
//! quoted (the strings never contain quotes themselves).

use crate::systems::{Derivation, Rule};
use crate::term::Term;
use crate::ty::{Ctx, Inter, Ty, Typing};
use std::fmt;

/// Parse failure: byte position and a short description of the expectation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Nat(u32),
    Var(u32),
    Omega,
    Nil,
    Lambda,
    LParen,
    RParen,
    Arrow,
    Wedge,
    Dot,
    Turnstile,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Nat(n) => write!(f, "{n}"),
            Tok::Var(n) => write!(f, "a{n}"),
            Tok::Omega => write!(f, "w"),
            Tok::Nil => write!(f, "nil"),
            Tok::Lambda => write!(f, "\\."),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::Arrow => write!(f, "->"),
            Tok::Wedge => write!(f, "/\\"),
            Tok::Dot => write!(f, "."),
            Tok::Turnstile => write!(f, "|-"),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '.' => {
                toks.push((i, Tok::Dot));
                i += 1;
            }
            '\\' => {
                if bytes.get(i + 1) == Some(&b'.') {
                    toks.push((i, Tok::Lambda));
                    i += 2;
                } else {
                    return Err(ParseError {
                        pos: i,
                        msg: "expected '.' after '\\'".into(),
                    });
                }
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((i, Tok::Arrow));
                    i += 2;
                } else {
                    return Err(ParseError {
                        pos: i,
                        msg: "expected '>' after '-'".into(),
                    });
                }
            }
            '/' => {
                if bytes.get(i + 1) == Some(&b'\\') {
                    toks.push((i, Tok::Wedge));
                    i += 2;
                } else {
                    return Err(ParseError {
                        pos: i,
                        msg: "expected '\\' after '/'".into(),
                    });
                }
            }
            '|' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    toks.push((i, Tok::Turnstile));
                    i += 2;
                } else {
                    return Err(ParseError {
                        pos: i,
                        msg: "expected '-' after '|'".into(),
                    });
                }
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u32 = input[start..i].parse().map_err(|_| ParseError {
                    pos: start,
                    msg: "number too large".into(),
                })?;
                toks.push((start, Tok::Nat(n)));
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word = &input[start..i];
                let tok = if word == "w" {
                    Tok::Omega
                } else if word == "nil" {
                    Tok::Nil
                } else if let Some(digits) = word.strip_prefix('a') {
                    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(ParseError {
                            pos: start,
                            msg: format!("unknown word '{word}'"),
                        });
                    }
                    let n: u32 = digits.parse().map_err(|_| ParseError {
                        pos: start,
                        msg: "variable number too large".into(),
                    })?;
                    Tok::Var(n)
                } else {
                    return Err(ParseError {
                        pos: start,
                        msg: format!("unknown word '{word}'"),
                    });
                };
                toks.push((start, tok));
            }
            _ => {
                return Err(ParseError {
                    pos: i,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(input: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: tokenize(input)?,
            pos: 0,
            end: input.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            got => Err(self.fail_at(format!(
                "expected '{want}'{}",
                got.map_or(", found end of input".into(), |g| format!(", found '{g}'"))
            ))),
        }
    }

    fn fail_at(&self, msg: String) -> ParseError {
        // Point at the token *before* the cursor when we already consumed it.
        let pos = self
            .toks
            .get(self.pos.saturating_sub(1))
            .map_or(self.end, |(p, _)| *p);
        ParseError { pos, msg }
    }

    fn fail_here(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.fail_here("unexpected trailing input"))
        }
    }

    // ---- terms ----

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut atoms = Vec::new();
        while let Some(t) = self.peek() {
            match t {
                Tok::Nat(_) | Tok::Lambda | Tok::LParen => atoms.push(self.atom()?),
                _ => break,
            }
        }
        let mut it = atoms.into_iter();
        let first = it
            .next()
            .ok_or_else(|| self.fail_here("expected a term"))?;
        Ok(it.fold(first, Term::app))
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.next() {
            Some(Tok::Nat(n)) => {
                if n == 0 {
                    Err(self.fail_at("indices start at 1".into()))
                } else {
                    Ok(Term::Index(n))
                }
            }
            Some(Tok::Lambda) => Ok(Term::abs(self.term()?)),
            Some(Tok::LParen) => {
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.fail_at("expected a term atom".into())),
        }
    }

    // ---- types ----

    /// U-level expression: an and-chain, optionally followed by an arrow.
    fn inter(&mut self) -> Result<Inter, ParseError> {
        let left = self.and_chain()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.next();
            let right = self.inter()?;
            let right_ty = right.as_single().cloned().ok_or_else(|| {
                self.fail_here("the right side of an arrow must be a single type")
            })?;
            Ok(Inter::single(Ty::arrow(left, right_ty)))
        } else {
            Ok(left)
        }
    }

    fn and_chain(&mut self) -> Result<Inter, ParseError> {
        let mut acc = self.inter_atom()?;
        while self.peek() == Some(&Tok::Wedge) {
            self.next();
            let next = self.inter_atom()?;
            acc = acc.and(&next);
        }
        Ok(acc)
    }

    fn inter_atom(&mut self) -> Result<Inter, ParseError> {
        match self.next() {
            Some(Tok::Omega) => Ok(Inter::omega()),
            Some(Tok::Var(n)) => Ok(Inter::single(Ty::var(n))),
            Some(Tok::LParen) => {
                let u = self.inter()?;
                self.expect(Tok::RParen)?;
                Ok(u)
            }
            _ => Err(self.fail_at("expected 'w', a type variable, or '('".into())),
        }
    }

    fn ty(&mut self) -> Result<Ty, ParseError> {
        let u = self.inter()?;
        u.as_single()
            .cloned()
            .ok_or_else(|| self.fail_here("expected a single type, not 'w' or an intersection"))
    }

    fn ctx(&mut self) -> Result<Ctx, ParseError> {
        let mut entries = Vec::new();
        loop {
            if self.peek() == Some(&Tok::Nil) {
                self.next();
                return Ok(Ctx::new(entries));
            }
            entries.push(self.inter()?);
            self.expect(Tok::Dot)?;
        }
    }

    fn typing(&mut self) -> Result<Typing, ParseError> {
        let ctx = self.ctx()?;
        self.expect(Tok::Turnstile)?;
        let ty = self.ty()?;
        Ok(Typing::new(ctx, ty))
    }
}

pub fn parse_term(input: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(input)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_type(input: &str) -> Result<Ty, ParseError> {
    let mut p = Parser::new(input)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_inter(input: &str) -> Result<Inter, ParseError> {
    let mut p = Parser::new(input)?;
    let u = p.inter()?;
    p.finish()?;
    Ok(u)
}

pub fn parse_context(input: &str) -> Result<Ctx, ParseError> {
    let mut p = Parser::new(input)?;
    let c = p.ctx()?;
    p.finish()?;
    Ok(c)
}

pub fn parse_typing(input: &str) -> Result<Typing, ParseError> {
    let mut p = Parser::new(input)?;
    let t = p.typing()?;
    p.finish()?;
    Ok(t)
}

// ---- printing ----

pub fn print_term(t: &Term) -> String {
    match t {
        Term::Index(n) => n.to_string(),
        Term::Abs(b) => match b.as_ref() {
            Term::App(_, _) => format!("\\. ({})", print_term(b)),
            _ => format!("\\. {}", print_term(b)),
        },
        Term::App(_, _) => {
            let mut head = t;
            let mut args = Vec::new();
            while let Term::App(f, a) = head {
                args.push(a.as_ref());
                head = f;
            }
            args.reverse();
            let mut out = match head {
                Term::Abs(_) => format!("({})", print_term(head)),
                _ => print_term(head),
            };
            let last = args.len() - 1;
            for (i, a) in args.into_iter().enumerate() {
                let needs_parens = match a {
                    Term::Index(_) => false,
                    Term::App(_, _) => true,
                    // A lambda swallows everything to its right, so it may
                    // only stand bare as the final argument.
                    Term::Abs(_) => i != last,
                };
                if needs_parens {
                    out.push_str(&format!(" ({})", print_term(a)));
                } else {
                    out.push_str(&format!(" {}", print_term(a)));
                }
            }
            out
        }
    }
}

pub fn print_type(t: &Ty) -> String {
    match t {
        Ty::Var(v) => format!("a{}", v.0),
        Ty::Arrow(u, rest) => {
            let left = print_inter_left(u);
            // An and-chain of two or more members is wrapped so the arrow
            // visibly takes the whole chain.
            let left = if u.width() >= 2 {
                format!("({left})")
            } else {
                left
            };
            format!("{left}->{}", print_type(rest))
        }
    }
}

/// An intersection on the left of an arrow or as a context entry: arrows
/// inside elements are parenthesized, a bare variable is not.
fn print_elem(t: &Ty) -> String {
    match t {
        Ty::Var(_) => print_type(t),
        Ty::Arrow(_, _) => format!("({})", print_type(t)),
    }
}

fn print_inter_left(u: &Inter) -> String {
    if u.is_omega() {
        "w".to_string()
    } else {
        u.iter().map(print_elem).collect::<Vec<_>>().join("/\\")
    }
}

pub fn print_inter(u: &Inter) -> String {
    print_inter_left(u)
}

pub fn print_context(c: &Ctx) -> String {
    let mut out = String::new();
    for u in c.entries() {
        out.push_str(&print_inter_left(u));
        out.push('.');
    }
    out.push_str("nil");
    out
}

pub fn print_typing(t: &Typing) -> String {
    format!("{} |- {}", print_context(&t.ctx), print_type(&t.ty))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_term(self))
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_type(self))
    }
}

impl fmt::Display for Inter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_inter(self))
    }
}

impl fmt::Display for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_context(self))
    }
}

impl fmt::Display for Typing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_typing(self))
    }
}

// ---- derivation s-expressions ----

fn rule_tag(r: Rule) -> &'static str {
    match r {
        Rule::Var => "var",
        Rule::VarR => "var_r",
        Rule::VarN => "varn",
        Rule::ArrI => "->i",
        Rule::ArrIPrime => "->'i",
        Rule::ArrE => "->e",
        Rule::ArrEPrime => "->'e",
    }
}

fn rule_from_tag(tag: &str) -> Option<Rule> {
    Some(match tag {
        "var" => Rule::Var,
        "var_r" => Rule::VarR,
        "varn" => Rule::VarN,
        "->i" => Rule::ArrI,
        "->'i" => Rule::ArrIPrime,
        "->e" => Rule::ArrE,
        "->'e" => Rule::ArrEPrime,
        _ => return None,
    })
}

pub fn print_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    write_derivation(d, &mut out);
    out
}

fn write_derivation(d: &Derivation, out: &mut String) {
    out.push('(');
    out.push_str(rule_tag(d.rule));
    out.push_str(&format!(
        " (\"{}\" \"{}\" \"{}\")",
        print_term(&d.term),
        print_context(&d.typing.ctx),
        print_type(&d.typing.ty)
    ));
    for p in &d.premises {
        out.push(' ');
        write_derivation(p, out);
    }
    out.push(')');
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum SexpTok {
    LParen,
    RParen,
    Str(String),
    Atom(String),
}

fn sexp_tokenize(input: &str) -> Result<Vec<(usize, SexpTok)>, ParseError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] as char {
            c if c.is_whitespace() => i += 1,
            '(' => {
                toks.push((i, SexpTok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, SexpTok::RParen));
                i += 1;
            }
            '"' => {
                let start = i;
                i += 1;
                let from = i;
                while i < bytes.len() && bytes[i] != b'"' {
                    i += 1;
                }
                if i == bytes.len() {
                    return Err(ParseError {
                        pos: start,
                        msg: "unterminated string".into(),
                    });
                }
                toks.push((start, SexpTok::Str(input[from..i].to_string())));
                i += 1;
            }
            _ => {
                let start = i;
                while i < bytes.len() {
                    let c = bytes[i] as char;
                    if c.is_whitespace() || c == '(' || c == ')' || c == '"' {
                        break;
                    }
                    i += 1;
                }
                toks.push((start, SexpTok::Atom(input[start..i].to_string())));
            }
        }
    }
    Ok(toks)
}

pub fn parse_derivation(input: &str) -> Result<Derivation, ParseError> {
    let toks = sexp_tokenize(input)?;
    let mut pos = 0;
    let d = parse_derivation_node(&toks, &mut pos, input.len())?;
    if pos != toks.len() {
        return Err(ParseError {
            pos: toks[pos].0,
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(d)
}

fn parse_derivation_node(
    toks: &[(usize, SexpTok)],
    pos: &mut usize,
    end: usize,
) -> Result<Derivation, ParseError> {
    let at = |p: usize| toks.get(p).map_or(end, |(b, _)| *b);
    let fail = |p: usize, msg: &str| ParseError {
        pos: at(p),
        msg: msg.into(),
    };
    match toks.get(*pos) {
        Some((_, SexpTok::LParen)) => *pos += 1,
        _ => return Err(fail(*pos, "expected '('")),
    }
    let rule = match toks.get(*pos) {
        Some((b, SexpTok::Atom(tag))) => rule_from_tag(tag).ok_or(ParseError {
            pos: *b,
            msg: format!("unknown rule '{tag}'"),
        })?,
        _ => return Err(fail(*pos, "expected a rule name")),
    };
    *pos += 1;
    match toks.get(*pos) {
        Some((_, SexpTok::LParen)) => *pos += 1,
        _ => return Err(fail(*pos, "expected '(' before the judgement")),
    }
    let mut strings = Vec::new();
    for what in ["term", "context", "type"] {
        match toks.get(*pos) {
            Some((_, SexpTok::Str(s))) => {
                strings.push(s.clone());
                *pos += 1;
            }
            _ => return Err(fail(*pos, &format!("expected a quoted {what}"))),
        }
    }
    match toks.get(*pos) {
        Some((_, SexpTok::RParen)) => *pos += 1,
        _ => return Err(fail(*pos, "expected ')' after the judgement")),
    }
    let term = parse_term(&strings[0])?;
    let ctx = parse_context(&strings[1])?;
    let ty = parse_type(&strings[2])?;
    let mut premises = Vec::new();
    loop {
        match toks.get(*pos) {
            Some((_, SexpTok::RParen)) => {
                *pos += 1;
                return Ok(Derivation {
                    rule,
                    term,
                    typing: Typing::new(ctx, ty),
                    premises,
                });
            }
            Some((_, SexpTok::LParen)) => premises.push(parse_derivation_node(toks, pos, end)?),
            _ => return Err(fail(*pos, "expected a premise or ')'")),
        }
    }
}
