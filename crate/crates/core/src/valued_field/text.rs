//! Text form of field elements.
//!
//! ```text
//! expr     ::= ['+' | '-'] term (('+' | '-') term)*
//! term     ::= coeff ['*' 't' ['^' exponent]] | 't' ['^' exponent] | 'O(t^' exponent ')'
//! coeff    ::= digits ['/' digits]
//! exponent ::= ['-'] digits | '(' ['-'] digits ['/' digits] ')'
//! ```
//!
//! Whitespace between tokens is ignored and `−` (U+2212) is accepted as a
//! minus sign. The `O(t^e)` term records a truncation order and may appear
//! at most once, as the last term.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{is_integer, PuiseuxNumber, Rat};
use crate::error::ParseError;

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_minus(&mut self) -> bool {
        match self.peek() {
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                true
            }
            _ => false,
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn error(&mut self, msg: impl Into<String>) -> ParseError {
        self.skip_ws();
        ParseError::new(self.pos, msg)
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    /// `digits ['/' digits]`, unsigned.
    fn unsigned_rat(&mut self) -> Result<Rat, ParseError> {
        let num = self.digits()?;
        if self.eat('/') {
            let at = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(ParseError::new(at, "zero denominator"));
            }
            Ok(Rat::new(num, den))
        } else {
            Ok(Rat::from_integer(num))
        }
    }

    fn exponent(&mut self) -> Result<Rat, ParseError> {
        if self.eat('(') {
            let neg = self.eat_minus();
            let r = self.unsigned_rat()?;
            self.expect(')')?;
            Ok(if neg { -r } else { r })
        } else {
            let neg = self.eat_minus();
            let n = Rat::from_integer(self.digits()?);
            Ok(if neg { -n } else { n })
        }
    }

    fn t_power(&mut self) -> Result<Rat, ParseError> {
        if self.eat('^') {
            self.exponent()
        } else {
            Ok(Rat::one())
        }
    }
}

/// Parses a signed rational such as `-3/2` or `7`.
pub fn parse_rat(text: &str) -> Result<Rat, ParseError> {
    let mut cur = Cursor::new(text);
    let neg = cur.eat_minus();
    if !neg {
        cur.eat('+');
    }
    let r = cur.unsigned_rat()?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(if neg { -r } else { r })
}

/// Parses the text form of a field element.
pub fn parse_puiseux(text: &str) -> Result<PuiseuxNumber, ParseError> {
    let mut cur = Cursor::new(text);
    if cur.at_end() {
        return Err(cur.error("empty expression"));
    }
    let mut terms = Vec::new();
    let mut trunc: Option<Rat> = None;
    let mut first = true;
    loop {
        let negative = if first {
            let neg = cur.eat_minus();
            if !neg {
                cur.eat('+');
            }
            neg
        } else if cur.eat_minus() {
            true
        } else if cur.eat('+') {
            false
        } else {
            return Err(cur.error("expected '+' or '-' between terms"));
        };
        first = false;

        match cur.peek() {
            Some('O') => {
                if negative {
                    return Err(cur.error("truncation term cannot be negated"));
                }
                cur.bump();
                cur.expect('(')?;
                cur.expect('t')?;
                cur.expect('^')?;
                let order = cur.exponent()?;
                cur.expect(')')?;
                trunc = Some(order);
                if !cur.at_end() {
                    return Err(cur.error("truncation term must come last"));
                }
                break;
            }
            Some('t') => {
                cur.bump();
                let e = cur.t_power()?;
                let c = if negative { -Rat::one() } else { Rat::one() };
                terms.push((e, c));
            }
            Some(ch) if ch.is_ascii_digit() => {
                let mut c = cur.unsigned_rat()?;
                if negative {
                    c = -c;
                }
                let e = if cur.eat('*') {
                    cur.expect('t')?;
                    cur.t_power()?
                } else {
                    Rat::zero()
                };
                terms.push((e, c));
            }
            _ => return Err(cur.error("expected a term")),
        }
        if cur.at_end() {
            break;
        }
    }
    if let Some(t) = &trunc {
        if let Some((e, _)) = terms.iter().find(|(e, _)| e >= t) {
            return Err(ParseError::new(
                text.chars().count(),
                format!("term t^{e} lies beyond the truncation order {t}"),
            ));
        }
    }
    Ok(PuiseuxNumber::from_terms(terms, trunc))
}

fn format_exponent(e: &Rat) -> String {
    if e.is_one() {
        String::new()
    } else if is_integer(e) {
        format!("^{e}")
    } else {
        format!("^({e})")
    }
}

/// Canonical text form; `parse_puiseux(&format_puiseux(x)) == x`.
pub fn format_puiseux(x: &PuiseuxNumber) -> String {
    let mut out = String::new();
    for (i, (e, c)) in x.terms().iter().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if e.is_zero() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push('t');
            out.push_str(&format_exponent(e));
        } else {
            out.push_str(&format!("{mag}*t{}", format_exponent(e)));
        }
    }
    match x.trunc_order() {
        Some(t) => {
            let tail = if t.is_one() {
                "O(t^1)".to_string()
            } else if is_integer(t) {
                format!("O(t^{t})")
            } else {
                format!("O(t^({t}))")
            };
            if out.is_empty() {
                out = tail;
            } else {
                out.push_str(" + ");
                out.push_str(&tail);
            }
        }
        None if out.is_empty() => out.push('0'),
        None => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valued_field::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn monomial() {
        let x = parse_puiseux("t^4").unwrap();
        assert_eq!(x.terms(), &[(rat(4), rat(1))]);
    }

    #[test]
    fn two_terms() {
        let x = parse_puiseux("1 - t").unwrap();
        assert_eq!(x.terms(), &[(rat(0), rat(1)), (rat(1), rat(-1))]);
    }

    #[test]
    fn fractional_exponent() {
        let x = parse_puiseux("3*t^(1/2) + t").unwrap();
        assert_eq!(x.terms(), &[(ratio(1, 2), rat(3)), (rat(1), rat(1))]);
    }

    #[test]
    fn negative_exponents_and_unicode_minus() {
        let x = parse_puiseux("−3/2*t^-2 + t^(-1/3)").unwrap();
        assert_eq!(x.terms(), &[(rat(-2), ratio(-3, 2)), (ratio(-1, 3), rat(1))]);
        assert_eq!(format_puiseux(&x), "-3/2*t^-2 + t^(-1/3)");
    }

    #[test]
    fn truncation_term() {
        let x = parse_puiseux("1 + t + O(t^3)").unwrap();
        assert_eq!(x.trunc_order(), Some(&rat(3)));
        assert_eq!(format_puiseux(&x), "1 + t + O(t^3)");
        assert!(parse_puiseux("t^4 + O(t^3)").is_err());
        assert!(parse_puiseux("O(t^3) + t").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_puiseux("t^").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_puiseux("1 + * t").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_puiseux("2 t").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse_puiseux("").is_err());
        assert!(parse_puiseux("1/0").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rat("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rat(" 4 ").unwrap(), rat(4));
        assert!(parse_rat("4/").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn zero_formats() {
        assert_eq!(format_puiseux(&PuiseuxNumber::zero()), "0");
        assert_eq!(parse_puiseux("0").unwrap(), PuiseuxNumber::zero());
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..5).prop_map(|(n, d)| ratio(n, d))
    }

    fn arb_series() -> impl Strategy<Value = PuiseuxNumber> {
        (
            proptest::collection::vec((arb_rat(), arb_rat()), 0..6),
            proptest::option::of(20i64..30),
        )
            .prop_map(|(terms, t)| PuiseuxNumber::from_terms(terms, t.map(rat)))
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(x in arb_series()) {
            let text = format_puiseux(&x);
            prop_assert_eq!(parse_puiseux(&text).unwrap(), x);
        }
    }
}
