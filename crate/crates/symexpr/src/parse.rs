//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := atom ("^" integer)? | "-" factor
//! atom   := integer | identifier | "(" expr ")"
//! ```

use num_bigint::BigInt;

use crate::{Expr, ExprError, Symbol};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ExprError::Syntax { pos: i, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.src.len())
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc * self.factor()?;
            } else if self.eat('/') {
                let at = self.offset();
                let rhs = self.factor()?;
                acc = acc.checked_div(&rhs).map_err(|_| ExprError::Syntax {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let at = self.offset();
            let Some(Tok::Int(n)) = self.peek().cloned() else {
                return self.err("expected integer exponent");
            };
            self.pos += 1;
            let e: i64 = i64::try_from(&n).map_err(|_| ExprError::Syntax { pos: at, msg: "exponent too large".into() })?;
            let e = if neg { -e } else { e };
            return base.pow(e).map_err(|_| ExprError::Syntax { pos: at, msg: "division by zero".into() });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::from_bigint(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let s = Symbol::from_name(&name).map_err(|_| ExprError::Syntax {
                    pos: at,
                    msg: format!("invalid identifier '{name}'"),
                })?;
                Ok(Expr::sym(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression. Identifiers resolve as in [`Symbol::from_name`].
pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, src };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

impl std::str::FromStr for Expr {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(parse("1 + 2*3^2").unwrap(), Expr::int(19));
        assert_eq!(parse("-2^2").unwrap(), Expr::int(-4));
        assert_eq!(parse("2/4*x0").unwrap(), Expr::rational(1, 2) * Expr::var("x0"));
        assert_eq!(parse("x0^-1").unwrap(), Expr::one() / Expr::var("x0"));
    }

    #[test]
    fn kerr_example() {
        let e = parse("(x1 - s*x3)/(-x2 + s*x4)").unwrap();
        let back = parse(&e.to_string()).unwrap();
        assert_eq!(e, back);
    }

    #[test]
    fn syntax_errors_report_position() {
        assert_eq!(
            parse("x0 + * x1"),
            Err(ExprError::Syntax { pos: 5, msg: "unexpected '*'".into() })
        );
        assert!(matches!(parse("(x0"), Err(ExprError::Syntax { pos: 3, .. })));
        assert!(matches!(parse("x0 $"), Err(ExprError::Syntax { pos: 3, .. })));
        assert!(matches!(parse("x0/(x1 - x1)"), Err(ExprError::Syntax { pos: 3, .. })));
    }
}
