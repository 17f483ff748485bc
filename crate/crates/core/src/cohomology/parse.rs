//! Text syntax for ring elements.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { "*" unary } ;
//! unary   = "-" unary | power ;
//! power   = atom [ "^" integer ] ;
//! atom    = integer [ "/" integer ] | identifier | "(" expr ")" ;
//! ```
//!
//! Multiplication is always written out: `2*t`, never `2t`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::ring::{is_ident_continue, is_ident_start, RingElement, RingPresentation};
use super::CohomologyError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Zero-based character offset of the offending token.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Number(n) => write!(f, "`{n}`"),
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Plus => f.write_str("`+`"),
            Token::Minus => f.write_str("`-`"),
            Token::Star => f.write_str("`*`"),
            Token::Slash => f.write_str("`/`"),
            Token::Caret => f.write_str("`^`"),
            Token::LParen => f.write_str("`(`"),
            Token::RParen => f.write_str("`)`"),
            Token::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Token::Number(digits.parse().expect("ascii digits")), start));
                continue;
            }
            c if is_ident_start(c) => {
                while i < chars.len() && is_ident_continue(chars[i]) {
                    i += 1;
                }
                out.push((Token::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            other => {
                return Err(ParseError {
                    position: start,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Token::End, chars.len()));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    ring: &'a Arc<RingPresentation>,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn advance(&mut self) -> (Token, usize) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> CohomologyError {
        CohomologyError::Parse(ParseError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<RingElement, CohomologyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.advance();
                    acc = acc.add(&self.term()?)?;
                }
                Token::Minus => {
                    self.advance();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RingElement, CohomologyError> {
        let mut acc = self.unary()?;
        while *self.peek() == Token::Star {
            self.advance();
            acc = acc.mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RingElement, CohomologyError> {
        if *self.peek() == Token::Minus {
            self.advance();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RingElement, CohomologyError> {
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.advance();
        match self.peek().clone() {
            Token::Number(n) => {
                let e = n.to_u32().ok_or_else(|| self.error("exponent too large"))?;
                self.advance();
                if *self.peek() == Token::Caret {
                    return Err(self.error("chained exponents need parentheses"));
                }
                Ok(base.pow(e))
            }
            other => Err(self.error(format!("expected a nonnegative integer exponent, found {other}"))),
        }
    }

    fn atom(&mut self) -> Result<RingElement, CohomologyError> {
        let position = self.offset();
        match self.peek().clone() {
            Token::Number(n) => {
                self.advance();
                let mut value = BigRational::from_integer(n);
                if *self.peek() == Token::Slash {
                    self.advance();
                    match self.peek().clone() {
                        Token::Number(d) if !d.is_zero() => {
                            self.advance();
                            value /= BigRational::from_integer(d);
                        }
                        Token::Number(_) => return Err(self.error("division by zero")),
                        other => {
                            return Err(self.error(format!(
                                "`/` only forms rational literals `p/q`; found {other}"
                            )))
                        }
                    }
                }
                RingElement::scalar(self.ring, value).map_err(|e| match e {
                    CohomologyError::NotRepresentable { value, domain } => CohomologyError::Parse(ParseError {
                        position,
                        message: format!("coefficient {value} is not representable over {domain}"),
                    }),
                    other => other,
                })
            }
            Token::Ident(name) => {
                if self.ring.generator_index(&name).is_none() {
                    return Err(self.error(format!("unknown identifier `{name}`")));
                }
                self.advance();
                RingElement::generator(self.ring, &name)
            }
            Token::LParen => {
                self.advance();
                let inner = self.expr()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error(format!("expected `)`, found {}", self.peek())));
                }
                self.advance();
                Ok(inner)
            }
            other => Err(self.error(format!("expected a number, generator or `(`, found {other}"))),
        }
    }
}

/// Parse `text` as an element of `ring`.
pub fn parse_element(text: &str, ring: &Arc<RingPresentation>) -> Result<RingElement, CohomologyError> {
    let tokens = tokenize(text).map_err(CohomologyError::Parse)?;
    let mut parser = Parser { tokens, pos: 0, ring };
    let value = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(parser.error(format!("expected an operator, found {}", parser.peek())));
    }
    Ok(value)
}
