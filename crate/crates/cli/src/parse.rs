//! Parser for cubic expressions such as `x0^3 + (1/2 - w)*x1*x2^2`.
//!
//! Grammar:
//!
//! ```text
//! expr    := [+|-] term { (+|-) term }
//! term    := factor { (*|/) factor }
//! factor  := primary [ ^ integer ]
//! primary := integer | w | x0 | x1 | x2 | ( expr )
//! ```
//!
//! Division is only allowed by a nonzero constant. After expansion every
//! top-level term must be homogeneous of degree 3.

use hesse_core::poly::{Form, TernaryCubic};
use hesse_core::Error;
use hesse_core::scalar::{Eis, Rat, Scalar};

use crate::error::CliError;

const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    W,
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, CliError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].to_string())));
                continue;
            }
            'x' => match bytes.get(i + 1) {
                Some(d @ b'0'..=b'2') => {
                    i += 1;
                    Tok::Var((d - b'0') as usize)
                }
                _ => return Err(CliError::syntax(start, "expected x0, x1 or x2")),
            },
            'w' => Tok::W,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(CliError::syntax(start, format!("unexpected character '{other}'"))),
        };
        i += 1;
        out.push((start, tok));
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    /// A sum, also returning each top-level term with its source text.
    fn expr(&mut self) -> Result<(Form<Eis>, Vec<(String, Form<Eis>)>), CliError> {
        let mut total = Form::zero();
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negate = match self.peek() {
                Tok::Plus => {
                    self.bump();
                    false
                }
                Tok::Minus => {
                    self.bump();
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let start = self.offset();
            let t = self.term()?;
            let t = if negate { t.neg() } else { t };
            terms.push((self.src[start..self.offset()].trim().to_string(), t.clone()));
            total = total.add(&t);
        }
        Ok((total, terms))
    }

    fn term(&mut self) -> Result<Form<Eis>, CliError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    let d = self.factor()?;
                    let c = constant_of(&d).ok_or_else(|| CliError::syntax(at, "division by a non-constant"))?;
                    let inv = c.inv().ok_or_else(|| CliError::syntax(at, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Form<Eis>, CliError> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Int(s) => {
                let k: u32 = s.parse().ok().filter(|&k| k <= MAX_EXPONENT).ok_or_else(|| CliError::syntax(at, "exponent too large"))?;
                Ok(base.pow(k))
            }
            _ => Err(CliError::syntax(at, "expected an integer exponent")),
        }
    }

    fn primary(&mut self) -> Result<Form<Eis>, CliError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(s) => {
                let r: Rat = s.parse().map_err(|_| CliError::syntax(at, "bad integer"))?;
                Ok(Form::constant(Eis::rational(r)))
            }
            Tok::W => Ok(Form::constant(Eis::w())),
            Tok::Var(i) => Ok(Form::var(i)),
            Tok::LParen => {
                let (inner, _) = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    _ => Err(CliError::syntax(close, "expected ')'")),
                }
            }
            Tok::End => Err(CliError::syntax(at, "unexpected end of input")),
            _ => Err(CliError::syntax(at, "expected a number, w, a variable or '('")),
        }
    }
}

fn constant_of(f: &Form<Eis>) -> Option<Eis> {
    if f.is_zero() {
        return Some(Eis::from(0));
    }
    (f.degrees() == [0]).then(|| f.coeff([0, 0, 0]))
}

/// Parses a homogeneous cubic over Q(w).
pub fn parse_cubic(src: &str) -> Result<TernaryCubic<Eis>, CliError> {
    let mut p = Parser { src, toks: tokenize(src)?, pos: 0 };
    if *p.peek() == Tok::End {
        return Err(CliError::syntax(0, "empty expression"));
    }
    let (total, terms) = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(CliError::syntax(p.offset(), "unexpected token"));
    }
    for (text, t) in &terms {
        if let Some(&d) = t.degrees().iter().find(|&&d| d != 3) {
            return Err(CliError::Inhomogeneous { term: text.clone(), degree: d });
        }
    }
    if total.is_zero() {
        return Err(CliError::Core(Error::ZeroForm));
    }
    Ok(TernaryCubic::from_form(&total)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hesse_core::classify::{normal_form_cubic, CubicType};

    #[test]
    fn basic() {
        let f = parse_cubic("x0^3 + x1^3 + x2^3 - 3*x0*x1*x2").unwrap();
        assert_eq!(f, TernaryCubic::from_int_terms(&[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1), ([1, 1, 1], -3)]));
        let g = parse_cubic("(x0 + x1)^3 - x0^3 - x1^3").unwrap();
        assert_eq!(g, TernaryCubic::from_int_terms(&[([2, 1, 0], 3), ([1, 2, 0], 3)]));
        let h = parse_cubic("(1/2 + 2*w)*x0^3 - w^2*x1*x2^2/3").unwrap();
        assert_eq!(*h.coeff([3, 0, 0]), "1/2 + 2*w".parse().unwrap());
        assert_eq!(*h.coeff([0, 1, 2]), (Eis::w2() * Eis::from(-1)).scale(&Rat::new(1, 3)));
    }

    #[test]
    fn errors() {
        match parse_cubic("x0^2") {
            Err(CliError::Inhomogeneous { term, degree }) => {
                assert_eq!(term, "x0^2");
                assert_eq!(degree, 2);
            }
            other => panic!("{other:?}"),
        }
        match parse_cubic("x0^3 + 5 - x1*x2") {
            Err(CliError::Inhomogeneous { term, .. }) => assert_eq!(term, "5"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_cubic("x0^3 +"), Err(CliError::Syntax { pos: 6, .. })));
        assert!(matches!(parse_cubic("x3^3"), Err(CliError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_cubic("x0^3 / x1"), Err(CliError::Syntax { .. })));
        assert!(matches!(parse_cubic("(x0^3"), Err(CliError::Syntax { .. })));
        assert!(matches!(parse_cubic("x0^3 - x0^3"), Err(CliError::Core(_))));
    }

    #[test]
    fn round_trip_normal_forms() {
        for mu in [Eis::from(1), Eis::from(2), Eis::w(), "-1/2 + 3*w".parse().unwrap()] {
            for t in CubicType::ALL {
                if let Some(f) = normal_form_cubic(t, &mu) {
                    assert_eq!(parse_cubic(&f.to_string()).unwrap(), f, "{f}");
                }
            }
        }
    }
}
