//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! imp   ::= or ("->" imp)?
//! or    ::= and ("|" and)*
//! and   ::= unary ("&" unary)*
//! unary ::= ("~" | "[F]" | "<F>" | "[P]" | "<P>") unary | atom
//! atom  ::= ident | "false" | "(" imp ")"
//! ```
//!
//! The Unicode symbols produced by the pretty-printer are accepted as well.

use super::Formula;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset of the offending token.
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: expected one of {}, found {}",
            self.offset,
            self.expected.join(", "),
            self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    False,
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    BoxF,
    DiaF,
    BoxP,
    DiaP,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::False => "`false`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::BoxF => "`[F]`".into(),
            Tok::DiaF => "`<F>`".into(),
            Tok::BoxP => "`[P]`".into(),
            Tok::DiaP => "`<P>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const OPERAND: &[&str] = &["identifier", "false", "(", "~", "[F]", "<F>", "[P]", "<P>"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let mut rest = text.char_indices().peekable();
    while let Some(&(pos, c)) = rest.peek() {
        if c.is_whitespace() {
            rest.next();
            continue;
        }
        let tail = &text[pos..];
        let fixed: &[(&str, Tok)] = &[
            ("->", Tok::Arrow),
            ("[F]", Tok::BoxF),
            ("<F>", Tok::DiaF),
            ("[P]", Tok::BoxP),
            ("<P>", Tok::DiaP),
            ("~", Tok::Not),
            ("&", Tok::And),
            ("|", Tok::Or),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("→", Tok::Arrow),
            ("¬", Tok::Not),
            ("∧", Tok::And),
            ("∨", Tok::Or),
            ("□", Tok::BoxF),
            ("◇", Tok::DiaF),
            ("■", Tok::BoxP),
            ("◆", Tok::DiaP),
            ("⊥", Tok::False),
        ];
        if let Some((sym, tok)) = fixed.iter().find(|(sym, _)| tail.starts_with(sym)) {
            toks.push((pos, tok.clone()));
            for _ in 0..sym.chars().count() {
                rest.next();
            }
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let len = tail
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(tail.len());
            let word = &tail[..len];
            toks.push((
                pos,
                if word == "false" {
                    Tok::False
                } else {
                    Tok::Ident(word.to_string())
                },
            ));
            for _ in 0..len {
                rest.next();
            }
            continue;
        }
        return Err(ParseError {
            offset: pos,
            expected: OPERAND.to_vec(),
            found: format!("character `{c}`"),
        });
    }
    toks.push((text.len(), Tok::Eof));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let (offset, tok) = &self.toks[self.pos];
        ParseError {
            offset: *offset,
            expected: expected.to_vec(),
            found: tok.describe(),
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let wrap: fn(Formula) -> Formula = match self.peek() {
            Tok::Not => Formula::not,
            Tok::BoxF => Formula::boxed,
            Tok::DiaF => Formula::diamond,
            Tok::BoxP => Formula::black_box,
            Tok::DiaP => Formula::black_diamond,
            _ => return self.atom(),
        };
        self.bump();
        Ok(wrap(self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::atom(&name))
            }
            Tok::False => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implication()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&[")", "->", "|", "&"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

/// Parse a formula in the surface syntax.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = parser.implication()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.error(&["end of input", "->", "|", "&"]));
    }
    Ok(f)
}
