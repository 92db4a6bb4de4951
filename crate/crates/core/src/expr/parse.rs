use thiserror::Error;

use super::Expr;
use crate::Real;

/// Syntax error with the byte offset at which parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message} (expected {expected})")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
    pub expected: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Num(f64),
    X,
    Exp,
    Ln,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::X => "`x`".into(),
            Tok::Exp => "`exp`".into(),
            Tok::Ln => "`ln`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_digit() || bytes[j] == b'.') {
                    j += 1;
                }
                // optional exponent: e, E followed by optional sign and digits
                if j < bytes.len() && (bytes[j] == b'e' || bytes[j] == b'E') {
                    let mut k = j + 1;
                    if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                        k += 1;
                    }
                    if k < bytes.len() && bytes[k].is_ascii_digit() {
                        while k < bytes.len() && bytes[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let text = &src[i..j];
                let v: f64 = text.parse().map_err(|_| ParseError {
                    offset: start,
                    message: format!("malformed number `{text}`"),
                    expected: "a decimal literal".into(),
                })?;
                out.push((Tok::Num(v), start));
                i = j;
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                let tok = match &src[i..j] {
                    "x" => Tok::X,
                    "exp" => Tok::Exp,
                    "ln" => Tok::Ln,
                    other => {
                        return Err(ParseError {
                            offset: start,
                            message: format!("unknown identifier `{other}`"),
                            expected: "`x`, `exp` or `ln`".into(),
                        })
                    }
                };
                out.push((tok, start));
                i = j;
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                    expected: "an operator, number, `x`, `exp`, `ln` or parenthesis".into(),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Tok {
        self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            offset: self.offset(),
            message: format!("unexpected {}", self.peek().describe()),
            expected: expected.into(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expr<T: Real>(&mut self) -> Result<Expr<T>, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term<T: Real>(&mut self) -> Result<Expr<T>, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::mul(lhs, self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::div(lhs, self.unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary<T: Real>(&mut self) -> Result<Expr<T>, ParseError> {
        if self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::neg(self.unary()?));
        }
        self.power()
    }

    fn power<T: Real>(&mut self) -> Result<Expr<T>, ParseError> {
        let base = self.primary()?;
        if self.peek() == Tok::Caret {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Expr::pow(base, exponent));
        }
        Ok(base)
    }

    fn primary<T: Real>(&mut self) -> Result<Expr<T>, ParseError> {
        const OPERAND: &str = "a number, `x`, `exp(`, `ln(` or `(`";
        match self.peek() {
            Tok::Num(v) => {
                self.bump();
                Ok(Expr::Const(T::lit(v)))
            }
            Tok::X => {
                self.bump();
                Ok(Expr::Var)
            }
            Tok::Exp | Tok::Ln => {
                let func = self.bump();
                self.expect(Tok::LParen, "`(` after function name")?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(if func == Tok::Exp {
                    Expr::exp(arg)
                } else {
                    Expr::ln(arg)
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

pub(super) fn parse<T: Real>(src: &str) -> Result<Expr<T>, ParseError> {
    if src.trim().is_empty() {
        return Err(ParseError {
            offset: 0,
            message: "empty expression".into(),
            expected: "an expression".into(),
        });
    }
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek() != Tok::End {
        return Err(p.error("an operator or end of input"));
    }
    Ok(e)
}
