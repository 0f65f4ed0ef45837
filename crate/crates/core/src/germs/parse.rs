//! Recursive-descent parser for the germ input language:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := [integer] ['*'] factor ('*' factor)*
//! factor := 'y' ['^' integer] | 'z' ['^' integer] | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. A single leading sign on an expression is
//! also accepted.

use num_bigint::BigInt;
use num_traits::One;

use super::germ::{add_term, mul_terms, Terms};
use super::GermError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var(u8),
    Caret,
    Star,
    Plus,
    Minus,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, GermError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &text[start..pos];
                out.push((start, Token::Int(digits.parse().expect("ascii digits"))));
                continue;
            }
            b'y' | b'z' => Token::Var(b),
            b'^' => Token::Caret,
            b'*' => Token::Star,
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'(' => Token::Open,
            b')' => Token::Close,
            _ => {
                let ch = text[pos..].chars().next().unwrap_or('?');
                return Err(syntax(pos, format!("unexpected character {ch:?}")));
            }
        };
        out.push((pos, tok));
        pos += 1;
    }
    Ok(out)
}

fn syntax(position: usize, message: impl Into<String>) -> GermError {
    GermError::Syntax {
        position,
        message: message.into(),
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        self.cursor += 1;
        t
    }

    fn expr(&mut self) -> Result<Terms, GermError> {
        let mut sign = BigInt::one();
        match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                sign = -sign;
            }
            Some(Token::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = Terms::new();
        loop {
            for (e, c) in self.term()? {
                add_term(&mut acc, e, &sign * c);
            }
            match self.peek() {
                Some(Token::Plus) => sign = BigInt::one(),
                Some(Token::Minus) => sign = -BigInt::one(),
                _ => return Ok(acc),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<Terms, GermError> {
        let mut coefficient = BigInt::one();
        if let Some(Token::Int(n)) = self.peek() {
            coefficient = n.clone();
            self.bump();
            if self.peek() == Some(&Token::Star) {
                self.bump();
            }
        }
        let mut product = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            let next = self.factor()?;
            product = mul_terms(&product, &next);
        }
        for c in product.values_mut() {
            *c *= &coefficient;
        }
        Ok(product)
    }

    fn factor(&mut self) -> Result<Terms, GermError> {
        let pos = self.position();
        match self.bump() {
            Some(Token::Var(v)) => {
                let mut exp = 1u32;
                if self.peek() == Some(&Token::Caret) {
                    self.bump();
                    let pos = self.position();
                    match self.bump() {
                        Some(Token::Int(n)) => {
                            exp = u32::try_from(&n)
                                .map_err(|_| syntax(pos, "exponent out of range"))?;
                        }
                        _ => return Err(syntax(pos, "expected integer exponent after '^'")),
                    }
                }
                let key = if v == b'y' { (exp, 0) } else { (0, exp) };
                Ok(Terms::from([(key, BigInt::one())]))
            }
            Some(Token::Open) => {
                let inner = self.expr()?;
                let pos = self.position();
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(syntax(pos, "expected ')'")),
                }
            }
            Some(_) => Err(syntax(pos, "expected 'y', 'z' or '('")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

pub(crate) fn parse_terms(text: &str) -> Result<Terms, GermError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end: text.len(),
    };
    let terms = parser.expr()?;
    if parser.cursor < parser.tokens.len() {
        return Err(syntax(parser.position(), "trailing input"));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(text: &str) -> Terms {
        parse_terms(text).unwrap_or_else(|e| panic!("{text}: {e}"))
    }

    #[test]
    fn accepts_grammar_forms() {
        let t = ok("3*y^2*z + 2y - (y + z)*(y - z)");
        assert_eq!(t.get(&(2, 1)), Some(&BigInt::from(3)));
        assert_eq!(t.get(&(1, 0)), Some(&BigInt::from(2)));
        assert_eq!(t.get(&(2, 0)), Some(&BigInt::from(-1)));
        assert_eq!(t.get(&(0, 2)), Some(&BigInt::from(1)));
        assert_eq!(ok("  y ^ 2 -z^4 "), ok("y^2-z^4"));
        assert_eq!(ok("-y"), Terms::from([((1, 0), BigInt::from(-1))]));
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in [
            "", "y^", "y z", "2", "y + ", "(y", "y)", "x^2", "y^-1", "y**z",
        ] {
            assert!(
                matches!(parse_terms(bad), Err(GermError::Syntax { .. })),
                "{bad:?} should be a syntax error"
            );
        }
    }

    #[test]
    fn syntax_error_reports_position() {
        match parse_terms("y^2 - q") {
            Err(GermError::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
    }
}
