//! Tokenizer and precedence-climbing parser shared by the coefficient grammar
//! and the element grammar.
//!
//! Precedence, loosest first: `+ -`, `* /`, unary minus, `o` (symmetrized
//! product), `^`. All binary operators are left-associative.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Splits `src` into tokens. Identifiers followed by `-<digits>` are merged
/// when the merged spelling is accepted by `is_name` (generator names such as
/// `l-1`), so `l-1*w2` lexes as two generators while `eta-2` stays a difference.
pub(crate) fn tokenize(
    src: &str,
    line: usize,
    col0: usize,
    is_name: &dyn Fn(&str) -> bool,
) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(s.parse().unwrap()),
                line,
                col,
            });
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let mut name: String = chars[start..i].iter().collect();
            if i + 1 < chars.len() && chars[i] == '-' && chars[i + 1].is_ascii_digit() {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let merged = format!("{name}-{}", chars[i + 1..j].iter().collect::<String>());
                if is_name(&merged) {
                    name = merged;
                    i = j;
                }
            }
            out.push(Token {
                tok: Tok::Ident(name),
                line,
                col,
            });
        } else if "+-*/^()[],=<".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line,
                col,
            });
            i += 1;
        } else {
            return Err(Error::Parse {
                line,
                col,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

/// Semantic actions for [`parse_tokens`].
pub(crate) trait ExprBuilder {
    type Value;
    fn int(&self, n: BigInt) -> Result<Self::Value>;
    fn ident(&self, name: &str, tok: &Token) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn sub(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn div(&self, a: Self::Value, b: Self::Value, tok: &Token) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value>;
    fn pow(&self, a: Self::Value, e: i64, tok: &Token) -> Result<Self::Value>;
    fn weyl(&self, _a: Self::Value, _b: Self::Value, tok: &Token) -> Result<Self::Value> {
        Err(parse_err(tok, "symmetrized product 'o' is not allowed here"))
    }
}

pub(crate) fn parse_err(tok: &Token, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: tok.line,
        col: tok.col,
        msg: msg.into(),
    }
}

struct Parser<'a, B: ExprBuilder> {
    toks: &'a [Token],
    pos: usize,
    b: &'a B,
    end: (usize, usize),
}

/// Parses the whole token slice as one expression.
pub(crate) fn parse_tokens<B: ExprBuilder>(
    toks: &[Token],
    b: &B,
    end: (usize, usize),
) -> Result<B::Value> {
    let mut p = Parser { toks, pos: 0, b, end };
    let v = p.expr()?;
    if let Some(t) = p.toks.get(p.pos) {
        return Err(parse_err(t, format!("unexpected token {:?}", t.tok)));
    }
    Ok(v)
}

impl<B: ExprBuilder> Parser<'_, B> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn eof_err(&self) -> Error {
        Error::Parse {
            line: self.end.0,
            col: self.end.1,
            msg: "unexpected end of expression".into(),
        }
    }

    fn expr(&mut self) -> Result<B::Value> {
        let mut acc = self.term()?;
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' {
                self.b.add(acc, rhs)?
            } else {
                self.b.sub(acc, rhs)?
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<B::Value> {
        let mut acc = self.unary()?;
        while let Some(Tok::Sym(c @ ('*' | '/'))) = self.peek() {
            let c = *c;
            let tok = self.toks[self.pos].clone();
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                self.b.mul(acc, rhs)?
            } else {
                self.b.div(acc, rhs, &tok)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<B::Value> {
        match self.peek() {
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                self.b.neg(v)
            }
            Some(Tok::Sym('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.weyl(),
        }
    }

    fn weyl(&mut self) -> Result<B::Value> {
        let mut acc = self.power()?;
        while matches!(self.peek(), Some(Tok::Ident(s)) if s == "o") {
            let tok = self.toks[self.pos].clone();
            self.pos += 1;
            let rhs = self.power()?;
            acc = self.b.weyl(acc, rhs, &tok)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<B::Value> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            let tok = self.toks[self.pos].clone();
            self.pos += 1;
            let neg = if let Some(Tok::Sym('-')) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            let Some(t) = self.toks.get(self.pos) else {
                return Err(self.eof_err());
            };
            let Tok::Int(n) = &t.tok else {
                return Err(parse_err(t, "exponent must be an integer"));
            };
            let e: i64 = n
                .try_into()
                .map_err(|_| parse_err(t, "exponent out of range"))?;
            self.pos += 1;
            return self.b.pow(base, if neg { -e } else { e }, &tok);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<B::Value> {
        let Some(t) = self.toks.get(self.pos) else {
            return Err(self.eof_err());
        };
        self.pos += 1;
        match &t.tok {
            Tok::Int(n) => self.b.int(n.clone()),
            Tok::Ident(name) if name == "o" => Err(parse_err(t, "'o' needs a left operand")),
            Tok::Ident(name) => self.b.ident(name, t),
            Tok::Sym('(') => {
                let v = self.expr()?;
                match self.toks.get(self.pos) {
                    Some(Token { tok: Tok::Sym(')'), .. }) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    Some(t) => Err(parse_err(t, "expected ')'")),
                    None => Err(self.eof_err()),
                }
            }
            other => Err(parse_err(t, format!("unexpected token {other:?}"))),
        }
    }
}
