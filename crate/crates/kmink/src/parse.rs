//! Lexer and recursive-descent parser for the expression language.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/')? factor)*      juxtaposition multiplies
//! factor := '-' factor | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'i' | 'k' | 'x0'..'x3' | '(' expr ')' | ':' expr ':'
//! ```
//!
//! Every canonical string printed by the library parses back to an equal
//! element: coefficients like `i/k` or `(1/2-3/4*i)/k` are ordinary
//! subexpressions, and ordered blocks `:x0^2*x1:` use the ordering bracket.
//! The same `:` token opens and closes a bracket, so inside one a `:` always
//! closes it and never starts a juxtaposed factor.

use crate::ast::Ast;
use num::bigint::BigInt;
use num::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    ImagUnit,
    Kappa,
    Gen(u8),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Colon,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
            }
            b'0'..=b'9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &src[start..pos];
                out.push((Tok::Int(digits.parse().expect("digits")), start));
            }
            b'i' => {
                out.push((Tok::ImagUnit, pos));
                pos += 1;
            }
            b'k' => {
                out.push((Tok::Kappa, pos));
                pos += 1;
            }
            b'x' => {
                let digit = bytes.get(pos + 1).copied();
                let after = bytes.get(pos + 2).copied();
                match digit {
                    Some(d @ b'0'..=b'3') if !after.is_some_and(|a| a.is_ascii_digit()) => {
                        out.push((Tok::Gen(d - b'0'), pos));
                        pos += 2;
                    }
                    _ => return err(pos, "expected a generator x0, x1, x2 or x3"),
                }
            }
            b'+' => {
                out.push((Tok::Plus, pos));
                pos += 1;
            }
            b'-' => {
                out.push((Tok::Minus, pos));
                pos += 1;
            }
            b'*' => {
                out.push((Tok::Star, pos));
                pos += 1;
            }
            b'/' => {
                out.push((Tok::Slash, pos));
                pos += 1;
            }
            b'^' => {
                out.push((Tok::Caret, pos));
                pos += 1;
            }
            b'(' => {
                out.push((Tok::LParen, pos));
                pos += 1;
            }
            b')' => {
                out.push((Tok::RParen, pos));
                pos += 1;
            }
            b':' => {
                out.push((Tok::Colon, pos));
                pos += 1;
            }
            _ => return err(pos, format!("unexpected character {:?}", src[pos..].chars().next().unwrap())),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    colon_depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.advance();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.advance();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    /// Whether a token can begin a juxtaposed factor. A colon only counts
    /// outside any ordering bracket; inside one it closes the bracket.
    fn starts_factor(&self, t: &Tok) -> bool {
        match t {
            Tok::Int(_) | Tok::ImagUnit | Tok::Kappa | Tok::Gen(_) | Tok::LParen => true,
            Tok::Colon => self.colon_depth == 0,
            _ => false,
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.advance();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.advance();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(t) if self.starts_factor(t) => {
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.advance();
            return Ok(Ast::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(base);
        }
        self.advance();
        let negative = if matches!(self.peek(), Some(Tok::Minus)) {
            self.advance();
            true
        } else {
            false
        };
        let at = self.here();
        match self.advance() {
            Some(Tok::Int(n)) => {
                let Some(mut e) = n.to_i64() else {
                    return err(at, "exponent out of range");
                };
                if negative {
                    e = -e;
                }
                Ok(Ast::Pow(Box::new(base), e))
            }
            _ => err(at, "expected an integer exponent after '^'"),
        }
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        let at = self.here();
        match self.advance() {
            Some(Tok::Int(n)) => Ok(Ast::Int(n)),
            Some(Tok::ImagUnit) => Ok(Ast::ImagUnit),
            Some(Tok::Kappa) => Ok(Ast::Kappa),
            Some(Tok::Gen(mu)) => Ok(Ast::Gen(mu)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.advance() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => err(self.end.min(self.here()), "expected ')'"),
                }
            }
            Some(Tok::Colon) => {
                self.colon_depth += 1;
                let inner = self.expr()?;
                self.colon_depth -= 1;
                match self.advance() {
                    Some(Tok::Colon) => Ok(Ast::Ordered(Box::new(inner))),
                    _ => err(self.end.min(self.here()), "expected closing ':'"),
                }
            }
            Some(_) => err(at, "expected a number, i, k, a generator, '(' or ':'"),
            None => err(at, "unexpected end of input"),
        }
    }
}

/// Parse a source string into an expression tree.
pub fn parse(src: &str) -> Result<Ast, ParseError> {
    let toks = lex(src)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: src.len(),
        colon_depth: 0,
    };
    let ast = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return err(parser.here(), "unexpected trailing input");
    }
    Ok(ast)
}

/// Parse and evaluate in one step; both failure modes are usage errors.
pub fn parse_element(src: &str) -> Result<crate::words::NCElement, String> {
    let ast = parse(src).map_err(|e| e.to_string())?;
    ast.eval().map_err(|e| e.to_string())
}
