//! Parser for `.inet` source files.
//!
//! ```text
//! file     ::= item*
//! item     ::= "agent" IDENT "/" NAT
//!            | "rule" side "><" side
//!            | "net" IDENT? "{" (equation ";")* "}"
//! side     ::= IDENT "[" terms? "]"
//! equation ::= term "=" term
//! term     ::= "!"? IDENT ("(" terms? ")")?
//! terms    ::= term ("," term)*
//! ```
//!
//! Identifiers declared with `agent` anywhere in the file are agents; every
//! other identifier inside a term is a name.

use std::collections::HashSet;
use std::fmt;

use crate::calculus::{
    Configuration, Equation, InteractionSystem, Net, Rule, RuleSet, RuleSide, Signature, Span,
    Term,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    NeededOnName,
    ArgsOnName,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Span,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            ParseErrorKind::Syntax => "ParseError",
            ParseErrorKind::NeededOnName => "NeededOnName",
            ParseErrorKind::ArgsOnName => "ArgsOnName",
        };
        write!(f, "{}: error[{}]: {}", self.span, tag, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(u64),
    Bang,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Eq,
    Slash,
    Bowtie,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Nat(n) => write!(f, "`{n}`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrack => f.write_str("`[`"),
            Tok::RBrack => f.write_str("`]`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Bowtie => f.write_str("`><`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

impl std::error::Error for ParseError {}

fn syntax(span: Span, message: impl Into<String>) -> ParseError {
    ParseError {
        kind: ParseErrorKind::Syntax,
        span,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1u32, 1u32);
    while let Some(&c) = chars.peek() {
        let span = Span::new(line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(s), span));
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            let n = s
                .parse()
                .map_err(|_| syntax(span, format!("number `{s}` is too large")))?;
            out.push((Tok::Nat(n), span));
            continue;
        }
        bump(&mut chars);
        let tok = match c {
            '!' => Tok::Bang,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            '/' => Tok::Slash,
            '>' if chars.peek() == Some(&'<') => {
                bump(&mut chars);
                Tok::Bowtie
            }
            other => return Err(syntax(span, format!("unexpected character `{other}`"))),
        };
        out.push((tok, span));
    }
    out.push((Tok::Eof, Span::new(line, col)));
    Ok(out)
}

const KEYWORDS: [&str; 3] = ["agent", "rule", "net"];

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    agents: HashSet<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Span, ParseError> {
        let (t, span) = self.next();
        if t == tok {
            Ok(span)
        } else {
            Err(syntax(span, format!("expected {tok}, found {t}")))
        }
    }

    fn ident(&mut self) -> Result<(String, Span), ParseError> {
        match self.next() {
            (Tok::Ident(s), span) if !KEYWORDS.contains(&s.as_str()) => Ok((s, span)),
            (t, span) => Err(syntax(span, format!("expected identifier, found {t}"))),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let start = self.span();
        let needed = self.eat(&Tok::Bang);
        let (ident, span) = self.ident()?;
        let span = if needed { start } else { span };
        if self.agents.contains(&ident) {
            let args = if self.eat(&Tok::LParen) {
                self.terms(Tok::RParen)?
            } else {
                Vec::new()
            };
            return Ok(Term::Agent {
                symbol: ident,
                needed,
                args,
                span,
            });
        }
        if needed {
            return Err(ParseError {
                kind: ParseErrorKind::NeededOnName,
                span,
                message: format!("needed marker on name `{ident}`"),
            });
        }
        if *self.peek() == Tok::LParen {
            return Err(ParseError {
                kind: ParseErrorKind::ArgsOnName,
                span: self.span(),
                message: format!("argument list on name `{ident}` (undeclared agent?)"),
            });
        }
        Ok(Term::Name {
            name: ident,
            needed: false,
            span,
        })
    }

    /// Comma-separated terms up to and including `close`.
    fn terms(&mut self, close: Tok) -> Result<Vec<Term>, ParseError> {
        let mut out = Vec::new();
        if self.eat(&close) {
            return Ok(out);
        }
        loop {
            out.push(self.term()?);
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.expect(close)?;
            return Ok(out);
        }
    }

    fn side(&mut self) -> Result<RuleSide, ParseError> {
        let (symbol, span) = self.ident()?;
        self.expect(Tok::LBrack)?;
        let templates = self.terms(Tok::RBrack)?;
        Ok(RuleSide {
            symbol,
            templates,
            span,
        })
    }
}

/// Parses an interaction system from source text.
pub fn parse(src: &str) -> Result<InteractionSystem, ParseError> {
    let toks = lex(src)?;
    // Agents may be used before their declaration.
    let agents = toks
        .windows(4)
        .filter_map(|w| match w {
            [(Tok::Ident(kw), _), (Tok::Ident(name), _), (Tok::Slash, _), (Tok::Nat(_), _)]
                if kw == "agent" =>
            {
                Some(name.clone())
            }
            _ => None,
        })
        .collect();
    let mut p = Parser {
        toks,
        pos: 0,
        agents,
    };
    let mut signature = Signature::new();
    let mut rules = Vec::new();
    let mut nets = Vec::new();
    loop {
        let (tok, span) = p.next();
        match tok {
            Tok::Eof => break,
            Tok::Ident(kw) if kw == "agent" => {
                let (name, name_span) = p.ident()?;
                p.expect(Tok::Slash)?;
                let arity = match p.next() {
                    (Tok::Nat(n), _) => n,
                    (t, span) => return Err(syntax(span, format!("expected arity, found {t}"))),
                };
                let arity = usize::try_from(arity)
                    .map_err(|_| syntax(name_span, "arity out of range"))?;
                signature.declare(&name, arity, name_span);
            }
            Tok::Ident(kw) if kw == "rule" => {
                let left = p.side()?;
                p.expect(Tok::Bowtie)?;
                let right = p.side()?;
                rules.push(Rule { left, right, span });
            }
            Tok::Ident(kw) if kw == "net" => {
                let name = match p.peek() {
                    Tok::Ident(_) => Some(p.ident()?.0),
                    _ => None,
                };
                p.expect(Tok::LBrace)?;
                let mut equations = Vec::new();
                while !p.eat(&Tok::RBrace) {
                    let lhs = p.term()?;
                    p.expect(Tok::Eq)?;
                    let rhs = p.term()?;
                    p.expect(Tok::Semi)?;
                    equations.push(Equation::new(lhs, rhs));
                }
                nets.push(Net {
                    name,
                    config: Configuration::new(equations),
                    span,
                });
            }
            t => {
                return Err(syntax(
                    span,
                    format!("expected `agent`, `rule` or `net`, found {t}"),
                ))
            }
        }
    }
    let rules = RuleSet::build(&signature, rules);
    Ok(InteractionSystem {
        signature,
        rules,
        nets,
    })
}
