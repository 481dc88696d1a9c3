use std::fmt;
use std::str::FromStr;

use super::{FamilyDescriptor, FamilyError};

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::BrokenWheel(k) => write!(f, "(broken {k})"),
            FamilyDescriptor::Wheel(k) => write!(f, "(wheel {k})"),
            FamilyDescriptor::Glue(l, r) => write!(f, "(glue {l} {r})"),
            FamilyDescriptor::InsertWheel { base, triangle, j } => {
                write!(f, "(insert {base} t{triangle} j={j})")
            }
            FamilyDescriptor::String(parts) => {
                write!(f, "(string")?;
                for p in parts {
                    write!(f, " {p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(s: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut atom = String::new();
    let flush = |atom: &mut String, out: &mut Vec<Token>| {
        if !atom.is_empty() {
            out.push(Token::Atom(std::mem::take(atom)));
        }
    };
    for ch in s.chars() {
        match ch {
            '(' | ')' => {
                flush(&mut atom, &mut out);
                out.push(if ch == '(' { Token::Open } else { Token::Close });
            }
            c if c.is_whitespace() => flush(&mut atom, &mut out),
            c => atom.push(c),
        }
    }
    flush(&mut atom, &mut out);
    out
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

fn perr(msg: impl Into<String>) -> FamilyError {
    FamilyError::Parse(msg.into())
}

impl Parser {
    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn atom(&mut self) -> Result<String, FamilyError> {
        match self.next() {
            Some(Token::Atom(a)) => Ok(a),
            other => Err(perr(format!("expected a word, found {other:?}"))),
        }
    }

    fn number(&mut self, prefix: &str) -> Result<usize, FamilyError> {
        let a = self.atom()?;
        a.strip_prefix(prefix)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| perr(format!("expected `{prefix}<number>`, found `{a}`")))
    }

    fn close(&mut self) -> Result<(), FamilyError> {
        match self.next() {
            Some(Token::Close) => Ok(()),
            other => Err(perr(format!("expected `)`, found {other:?}"))),
        }
    }

    fn term(&mut self) -> Result<FamilyDescriptor, FamilyError> {
        match self.next() {
            Some(Token::Open) => {}
            other => return Err(perr(format!("expected `(`, found {other:?}"))),
        }
        let head = self.atom()?;
        let d = match head.as_str() {
            "broken" => FamilyDescriptor::BrokenWheel(self.number("")?),
            "wheel" => FamilyDescriptor::Wheel(self.number("")?),
            "glue" => {
                let l = self.term()?;
                let r = self.term()?;
                FamilyDescriptor::glue(l, r)
            }
            "insert" => {
                let base = self.term()?;
                let triangle = self.number("t")?;
                let j = self.number("j=")?;
                FamilyDescriptor::insert(base, triangle, j)
            }
            "string" => {
                let mut parts = Vec::new();
                while self.peek() == Some(&Token::Open) {
                    parts.push(self.term()?);
                }
                if parts.is_empty() {
                    return Err(perr("empty string"));
                }
                FamilyDescriptor::String(parts)
            }
            other => return Err(perr(format!("unknown constructor `{other}`"))),
        };
        self.close()?;
        Ok(d)
    }
}

impl FromStr for FamilyDescriptor {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { tokens: tokenize(s), pos: 0 };
        let d = p.term()?;
        if p.pos != p.tokens.len() {
            return Err(perr("trailing input after descriptor"));
        }
        Ok(d)
    }
}
