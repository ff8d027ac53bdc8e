//! Text syntax for bivariate polynomials.
//!
//! A polynomial is a sequence of terms joined by `+` or `-`. A term is a
//! `*`-separated product of factors: an integer, a bracketed field element
//! `[c0,c1,..]`, `x`, `x^i`, `y` or `y^j`. Whitespace is ignored.

use super::{BiPoly, Monomial};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Lexer { chars, pos: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(c.to_digit(10).unwrap() as u64))
                .ok_or_else(|| self.err("integer literal too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(v)
    }
}

fn exponent(lx: &mut Lexer) -> Result<u32> {
    if lx.peek() == Some('^') {
        lx.bump();
        let e = lx.number()?;
        u32::try_from(e)
            .ok()
            .filter(|&e| e <= 1 << 20)
            .ok_or_else(|| lx.err("exponent exceeds 2^20"))
    } else {
        Ok(1)
    }
}

fn factor(
    lx: &mut Lexer,
    field: &Field,
    coef: &mut FieldElement,
    mono: &mut Monomial,
) -> Result<()> {
    match lx.peek() {
        Some(c) if c.is_ascii_digit() => {
            let v = lx.number()?;
            let c = field.from_int((v % field.characteristic() as u64) as i64);
            *coef = field.mul(*coef, c);
        }
        Some('[') => {
            let start = lx.offset();
            let mut text = String::new();
            while let Some(c) = lx.bump() {
                text.push(c);
                if c == ']' {
                    break;
                }
            }
            if !text.ends_with(']') {
                return Err(Error::Syntax {
                    pos: start,
                    msg: "unterminated field element".into(),
                });
            }
            let e = field.parse_element(&text).map_err(|_| Error::Syntax {
                pos: start,
                msg: format!("bad field element {}", text),
            })?;
            *coef = field.mul(*coef, e);
        }
        Some('x') => {
            lx.bump();
            mono.x += exponent(lx)?;
        }
        Some('y') => {
            lx.bump();
            mono.y += exponent(lx)?;
        }
        Some(c) if c.is_alphabetic() => {
            let pos = lx.offset();
            let mut name = String::new();
            while let Some(c) = lx.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
                name.push(c);
                lx.bump();
            }
            return Err(Error::UnknownVariable { pos, name });
        }
        Some(c) => return Err(lx.err(format!("unexpected `{}`", c))),
        None => return Err(lx.err("unexpected end of input")),
    }
    if mono.total() > 1 << 20 {
        return Err(lx.err("total degree exceeds 2^20"));
    }
    Ok(())
}

/// Parse `text` into a polynomial over `field`; coefficients are reduced
/// into the field.
pub fn parse_poly(text: &str, field: &Field) -> Result<BiPoly> {
    let mut lx = Lexer::new(text);
    let mut terms = Vec::new();
    if lx.peek().is_none() {
        return Err(lx.err("empty polynomial"));
    }
    let mut first = true;
    while lx.peek().is_some() {
        let mut negative = false;
        match lx.peek() {
            Some('+') => {
                lx.bump();
            }
            Some('-') => {
                lx.bump();
                negative = true;
            }
            _ if !first => return Err(lx.err("expected `+` or `-`")),
            _ => {}
        }
        first = false;
        let mut coef = FieldElement::ONE;
        let mut mono = Monomial::ONE;
        factor(&mut lx, field, &mut coef, &mut mono)?;
        while lx.peek() == Some('*') {
            lx.bump();
            factor(&mut lx, field, &mut coef, &mut mono)?;
        }
        if negative {
            coef = field.neg(coef);
        }
        terms.push((mono, coef));
    }
    Ok(BiPoly::from_terms(field, terms))
}

fn monomial_text(m: Monomial) -> String {
    let part = |v: char, e: u32| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{}^{}", v, e)),
    };
    [part('x', m.x), part('y', m.y)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

/// Graded-lex order, highest first; terms joined by ` + `.
pub(crate) fn serialize(p: &BiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let field = p.field();
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| (b.total(), b.x).cmp(&(a.total(), a.x)));
    terms
        .iter()
        .map(|&(m, c)| {
            let mono = monomial_text(m);
            if mono.is_empty() {
                field.format_element(c)
            } else if c == FieldElement::ONE {
                mono
            } else {
                format!("{}*{}", field.format_element(c), mono)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    fn support(p: &BiPoly) -> Vec<(u32, u32, u32)> {
        p.terms().map(|(m, c)| (m.x, m.y, c.index())).collect()
    }

    #[test]
    fn parse_examples() {
        let f5 = make_field(5, 1, None).unwrap();
        let p = parse_poly("3*x^2*y + 4*y^7 + 1", &f5).unwrap();
        assert_eq!(support(&p), vec![(0, 0, 1), (0, 7, 4), (2, 1, 3)]);
        let f7 = make_field(7, 1, None).unwrap();
        let p = parse_poly("6*x*y + 2*x", &f7).unwrap();
        assert_eq!(support(&p), vec![(1, 0, 2), (1, 1, 6)]);
        assert!(parse_poly("x^2 - x^2", &f7).unwrap().is_zero());
    }

    #[test]
    fn coefficients_reduce_and_signs_apply() {
        let f5 = make_field(5, 1, None).unwrap();
        let p = parse_poly("-x + 12*y - 0", &f5).unwrap();
        assert_eq!(support(&p), vec![(0, 1, 2), (1, 0, 4)]);
        let p = parse_poly("y*x*2*x", &f5).unwrap();
        assert_eq!(support(&p), vec![(2, 1, 2)]);
    }

    #[test]
    fn errors_carry_positions() {
        let f5 = make_field(5, 1, None).unwrap();
        assert_eq!(
            parse_poly("x + z^2", &f5),
            Err(Error::UnknownVariable {
                pos: 4,
                name: "z".into()
            })
        );
        assert!(matches!(
            parse_poly("x + ", &f5),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_poly("x y", &f5),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse_poly("x^", &f5), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("", &f5), Err(Error::Syntax { .. })));
    }

    #[test]
    fn serialization_order() {
        let f5 = make_field(5, 1, None).unwrap();
        let p = parse_poly("1 + y^2 + 3*x*y + x^2 + 2*x", &f5).unwrap();
        assert_eq!(serialize(&p), "x^2 + 3*x*y + y^2 + 2*x + 1");
        assert_eq!(serialize(&BiPoly::zero(&f5)), "0");
    }

    #[test]
    fn extension_field_coefficients() {
        let f = make_field(2, 2, None).unwrap();
        let p = parse_poly("[0,1]*x + [1,1] + x*y", &f).unwrap();
        assert_eq!(serialize(&p), "x*y + [0,1]*x + [1,1]");
        assert_eq!(parse_poly(&serialize(&p), &f).unwrap(), p);
    }

    proptest! {
        #[test]
        fn serialize_parse_fixed_point(raw in prop::collection::vec((0u32..8, 0u32..8, 0i64..20), 0..15)) {
            let f = make_field(11, 1, None).unwrap();
            let p = BiPoly::from_terms(&f, raw.iter().map(|&(i, j, c)| (Monomial::new(i, j), f.from_int(c))));
            let s = serialize(&p);
            let back = parse_poly(&s, &f).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(serialize(&back), s);
        }
    }
}
