//! Recursive-descent parser for dimension expressions.
//!
//! Grammar:
//!
//! ```text
//! expr := term (('*' | '/') term)*
//! term := base ('^' rational)? | '|' expr '|' | 'root' '(' expr ',' int ')'
//! base := kg | kgs | kgm | m | s
//! ```
//!
//! `m` and `s` expand to their definitions `|kgm/kg|` and `kgs/kg`. A slash
//! immediately after `^p` binds to the exponent only when followed by an
//! integer, so `kg^1/2` is a half power while `kg^2/kgs` is a quotient.

use super::Dimension;
use num_rational::Rational64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DimParseError {
    #[error("parse error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown base `{name}` at byte {pos} (expected kg, kgs, kgm, m, or s)")]
    UnknownBase { pos: usize, name: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(i64),
    Star,
    Slash,
    Caret,
    Bar,
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Clone)]
struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<(Token, usize), DimParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Token::End, start));
        }
        let c = self.src[self.pos];
        let simple = match c {
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            b'|' => Some(Token::Bar),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            b',' => Some(Token::Comma),
            _ => None,
        };
        if let Some(tok) = simple {
            self.pos += 1;
            return Ok((tok, start));
        }
        if c == b'-' || c.is_ascii_digit() {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let value = text.parse::<i64>().map_err(|_| DimParseError::Syntax {
                pos: start,
                message: format!("invalid integer `{text}`"),
            })?;
            return Ok((Token::Int(value), start));
        }
        if c.is_ascii_alphabetic() {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return Ok((Token::Ident(text.to_string()), start));
        }
        Err(DimParseError::Syntax {
            pos: start,
            message: format!("unexpected character `{}`", c as char),
        })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    current: Token,
    current_pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, DimParseError> {
        let mut lexer = Lexer::new(src);
        let (current, current_pos) = lexer.next()?;
        Ok(Parser {
            lexer,
            current,
            current_pos,
        })
    }

    fn advance(&mut self) -> Result<(), DimParseError> {
        let (tok, pos) = self.lexer.next()?;
        self.current = tok;
        self.current_pos = pos;
        Ok(())
    }

    fn expect(&mut self, expected: Token, what: &str) -> Result<(), DimParseError> {
        if self.current == expected {
            self.advance()
        } else {
            Err(DimParseError::Syntax {
                pos: self.current_pos,
                message: format!("expected {what}, found {:?}", self.current),
            })
        }
    }

    fn expr(&mut self) -> Result<Dimension, DimParseError> {
        let mut acc = self.term()?;
        loop {
            match self.current {
                Token::Star => {
                    self.advance()?;
                    acc = acc.mul(&self.term()?);
                }
                Token::Slash => {
                    self.advance()?;
                    acc = acc.div(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Dimension, DimParseError> {
        let base = match self.current.clone() {
            Token::Bar => {
                self.advance()?;
                let inner = self.expr()?;
                self.expect(Token::Bar, "closing `|`")?;
                inner.abs()
            }
            Token::Ident(name) if name == "root" => {
                self.advance()?;
                self.expect(Token::LParen, "`(` after root")?;
                let inner = self.expr()?;
                self.expect(Token::Comma, "`,` in root")?;
                let (index, pos) = self.integer()?;
                if index < 1 {
                    return Err(DimParseError::Syntax {
                        pos,
                        message: format!("root index must be >= 1, got {index}"),
                    });
                }
                self.expect(Token::RParen, "`)` closing root")?;
                inner.root(index as u32)
            }
            Token::Ident(name) => {
                let pos = self.current_pos;
                self.advance()?;
                match name.as_str() {
                    "kg" => Dimension::kg(),
                    "kgs" => Dimension::kgs(),
                    "kgm" => Dimension::kgm(),
                    "m" => Dimension::meter(),
                    "s" => Dimension::second(),
                    _ => return Err(DimParseError::UnknownBase { pos, name }),
                }
            }
            _ => {
                return Err(DimParseError::Syntax {
                    pos: self.current_pos,
                    message: format!("expected a term, found {:?}", self.current),
                })
            }
        };
        if self.current == Token::Caret {
            self.advance()?;
            let exponent = self.rational()?;
            Ok(base.pow(exponent))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<(i64, usize), DimParseError> {
        if let Token::Int(value) = self.current {
            let pos = self.current_pos;
            self.advance()?;
            Ok((value, pos))
        } else {
            Err(DimParseError::Syntax {
                pos: self.current_pos,
                message: format!("expected an integer, found {:?}", self.current),
            })
        }
    }

    /// `int ('/' int)?` — the slash is consumed only when an integer follows,
    /// leaving `kg^2/kgs` to parse as a quotient of terms.
    fn rational(&mut self) -> Result<Rational64, DimParseError> {
        let (numer, pos) = self.integer()?;
        if self.current == Token::Slash {
            let mut probe = self.lexer.clone();
            if let Ok((Token::Int(denom), dpos)) = probe.next() {
                if denom == 0 {
                    return Err(DimParseError::Syntax {
                        pos: dpos,
                        message: "zero denominator in exponent".to_string(),
                    });
                }
                self.advance()?; // consume '/'
                self.advance()?; // consume denominator
                let _ = pos;
                return Ok(Rational64::new(numer, denom));
            }
        }
        Ok(Rational64::from_integer(numer))
    }
}

/// Parse a dimension expression such as `kgs/kg`, `|kgm/kg|^2`, or
/// `root(kg, 2)`.
pub fn parse_dimension(text: &str) -> Result<Dimension, DimParseError> {
    let mut parser = Parser::new(text)?;
    let dim = parser.expr()?;
    if parser.current != Token::End {
        return Err(DimParseError::Syntax {
            pos: parser.current_pos,
            message: format!("unconsumed input starting with {:?}", parser.current),
        });
    }
    Ok(dim)
}

#[cfg(test)]
mod tests {
    use super::super::BaseLine;
    use super::*;

    #[test]
    fn second_definition_parses() {
        let d = parse_dimension("kgs/kg").unwrap();
        assert_eq!(d, Dimension::second());
    }

    #[test]
    fn zero_power_is_dimensionless() {
        let d = parse_dimension("kg^0").unwrap();
        assert!(d.is_dimensionless());
    }

    #[test]
    fn absolute_square_of_meter_body() {
        let d = parse_dimension("|kgm/kg|^2").unwrap();
        assert_eq!(
            d.exponent(BaseLine::Kgm),
            num_rational::Rational64::new(2, 1)
        );
        assert_eq!(
            d.exponent(BaseLine::Kg),
            num_rational::Rational64::new(-2, 1)
        );
        assert!(d.is_absolute());
    }

    #[test]
    fn exponent_slash_binds_to_integer_only() {
        let half = parse_dimension("kg^1/2").unwrap();
        assert_eq!(
            half.exponent(BaseLine::Kg),
            num_rational::Rational64::new(1, 2)
        );
        let quotient = parse_dimension("kg^2/kgs").unwrap();
        assert_eq!(
            quotient.exponent(BaseLine::Kg),
            num_rational::Rational64::new(2, 1)
        );
        assert_eq!(
            quotient.exponent(BaseLine::Kgs),
            num_rational::Rational64::new(-1, 1)
        );
    }

    #[test]
    fn root_term_parses() {
        let d = parse_dimension("root(kg, 2)").unwrap();
        assert_eq!(d, Dimension::kg().root(2));
        assert!(d.is_absolute());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_dimension("kg *") {
            Err(DimParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_dimension("foo") {
            Err(DimParseError::UnknownBase { pos, name }) => {
                assert_eq!(pos, 0);
                assert_eq!(name, "foo");
            }
            other => panic!("expected unknown base, got {other:?}"),
        }
    }

    #[test]
    fn derived_bases_expand() {
        assert_eq!(parse_dimension("m").unwrap(), Dimension::meter());
        assert_eq!(parse_dimension("s").unwrap(), Dimension::second());
    }

    #[test]
    fn pretty_print_round_trips() {
        for text in ["kg", "kgs/kg", "|kgm/kg|", "kg^-3/2*kgm^5/6", "kg^0"] {
            let d = parse_dimension(text).unwrap();
            let again = parse_dimension(&d.pretty()).unwrap();
            assert_eq!(d, again, "round trip through `{}`", d.pretty());
        }
    }
}
