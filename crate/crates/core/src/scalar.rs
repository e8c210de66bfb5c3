//! Coefficient fields: exact rationals, the Eisenstein field Q(w) with
//! w a primitive cube root of unity, and double-precision complex numbers.
//!
//! Elements of Q(w) are stored in the basis {1, w}; every product is
//! reduced with w^2 = -1 - w.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_complex::Complex64 as CF;

use crate::error::{Error, Result};

/// Common interface of the coefficient rings used by forms and matrices.
///
/// All implementors are fields; `inv` returns `None` only for zero.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// Structural zero test. For floating point this is `== 0.0`.
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn to_cf(&self) -> CF;
    fn magnitude(&self) -> f64 {
        self.to_cf().norm()
    }
}

// ---------------------------------------------------------------------------
// Rat

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Rat {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Rat {
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer, denom))
    }

    pub fn integer(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn inv(&self) -> Option<Rat> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0
            .to_f64()
            .unwrap_or_else(|| self.numer().to_f64().unwrap_or(f64::NAN) / self.denom().to_f64().unwrap_or(f64::NAN))
    }

    /// Exact square root when both numerator and denominator are perfect squares.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rat::from_bigints(n, d))
        } else {
            None
        }
    }

    /// Best rational approximation with denominator at most `max_denom`
    /// (continued fraction convergents).
    pub fn approximate(x: f64, max_denom: i64) -> Option<Rat> {
        if !x.is_finite() {
            return None;
        }
        let (mut h0, mut h1) = (0i128, 1i128);
        let (mut k0, mut k1) = (1i128, 0i128);
        let mut r = x;
        for _ in 0..64 {
            let a = r.floor();
            if a.abs() > 1e15 {
                break;
            }
            let ai = a as i128;
            let h2 = ai * h1 + h0;
            let k2 = ai * k1 + k0;
            if k2 > max_denom as i128 {
                break;
            }
            h0 = h1;
            h1 = h2;
            k0 = k1;
            k1 = k2;
            let frac = r - a;
            if frac.abs() < 1e-12 {
                break;
            }
            r = 1.0 / frac;
        }
        if k1 == 0 {
            return None;
        }
        Some(Rat::from_bigints(BigInt::from(h1), BigInt::from(k1)))
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::integer(n)
    }
}

macro_rules! forward_binop {
    ($t:ty, $tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b $t> for &'a $t {
            type Output = $t;
            fn $m(self, rhs: &'b $t) -> $t {
                let f: fn(&$t, &$t) -> $t = $body;
                f(self, rhs)
            }
        }
        impl<'b> $tr<&'b $t> for $t {
            type Output = $t;
            fn $m(self, rhs: &'b $t) -> $t {
                (&self).$m(rhs)
            }
        }
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<$t> for &'a $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Rat, Add, add, |x, y| Rat(&x.0 + &y.0));
forward_binop!(Rat, Sub, sub, |x, y| Rat(&x.0 - &y.0));
forward_binop!(Rat, Mul, mul, |x, y| Rat(&x.0 * &y.0));
forward_binop!(Rat, Div, div, |x, y| {
    assert!(!y.is_zero(), "division by zero");
    Rat(&x.0 / &y.0)
});

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn from_i64(n: i64) -> Self {
        Rat::integer(n)
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        Rat::inv(self)
    }
    fn to_cf(&self) -> CF {
        CF::new(self.to_f64(), 0.0)
    }
}

// ---------------------------------------------------------------------------
// Eis

/// An element `a + b*w` of Q(w), w^2 + w + 1 = 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Eis {
    pub a: Rat,
    pub b: Rat,
}

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

impl Eis {
    pub fn new(a: Rat, b: Rat) -> Eis {
        Eis { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Eis {
        Eis::new(Rat::integer(a), Rat::integer(b))
    }

    pub fn rational(r: Rat) -> Eis {
        Eis::new(r, Rat::zero())
    }

    /// The cube root of unity w.
    pub fn w() -> Eis {
        Eis::from_ints(0, 1)
    }

    /// w^2 = -1 - w.
    pub fn w2() -> Eis {
        Eis::from_ints(-1, -1)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugation, w -> w^2.
    pub fn conj(&self) -> Eis {
        Eis::new(&self.a - &self.b, -&self.b)
    }

    /// Field norm a^2 - ab + b^2.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Trace x + conj(x) = 2a - b.
    pub fn trace(&self) -> Rat {
        &self.a + &self.a - &self.b
    }

    pub fn checked_inv(&self) -> Result<Eis> {
        let n = self.norm();
        let ninv = n.inv().ok_or(Error::DivisionByZero)?;
        let c = self.conj();
        Ok(Eis::new(&c.a * &ninv, &c.b * &ninv))
    }

    pub fn scale(&self, r: &Rat) -> Eis {
        Eis::new(&self.a * r, &self.b * r)
    }

    pub fn pow(&self, mut e: u32) -> Eis {
        let mut base = self.clone();
        let mut acc = Eis::from_ints(1, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Embedding into C sending w to (-1 + i*sqrt(3))/2.
    pub fn embed(&self) -> CF {
        let a = self.a.to_f64();
        let b = self.b.to_f64();
        CF::new(a - 0.5 * b, SQRT3_2 * b)
    }

    /// Nearest element of Q(w) with bounded denominators; the caller is
    /// expected to verify the result exactly.
    pub fn approximate(z: CF, max_denom: i64) -> Option<Eis> {
        let b = z.im / SQRT3_2;
        let a = z.re + 0.5 * b;
        Some(Eis::new(Rat::approximate(a, max_denom)?, Rat::approximate(b, max_denom)?))
    }

    /// Exact square root in Q(w), if one exists.
    pub fn sqrt(&self) -> Option<Eis> {
        if Scalar::is_zero(self) {
            return Some(self.clone());
        }
        let n = self.norm().sqrt_exact()?;
        let t2 = self.trace() + &n + &n;
        let candidate = if t2.is_zero() {
            // x is a rational multiple of 1 + 2w, so x^2 = -3 d^2
            if !self.is_rational() {
                return None;
            }
            let d = (-&self.a / Rat::integer(3)).sqrt_exact()?;
            Eis::new(d.clone(), &d + &d)
        } else {
            let t = t2.sqrt_exact()?;
            let num = self.clone() + Eis::rational(n);
            let tinv = t.inv()?;
            num.scale(&tinv)
        };
        if &(&candidate * &candidate) == self {
            Some(candidate)
        } else {
            None
        }
    }

    /// Cube root in Q(w), found by rounding the complex cube roots and
    /// verifying exactly. Returns `None` when no verified root is found.
    pub fn cbrt(&self) -> Option<Eis> {
        if Scalar::is_zero(self) {
            return Some(self.clone());
        }
        let z = self.embed();
        let r = z.norm().cbrt();
        let arg = z.arg() / 3.0;
        for k in 0..3 {
            let theta = arg + 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            let c = CF::from_polar(r, theta);
            if let Some(e) = Eis::approximate(c, 1 << 20) {
                if &e.pow(3) == self {
                    return Some(e);
                }
            }
        }
        None
    }
}

impl From<i64> for Eis {
    fn from(n: i64) -> Eis {
        Eis::from_ints(n, 0)
    }
}

impl From<Rat> for Eis {
    fn from(r: Rat) -> Eis {
        Eis::rational(r)
    }
}

forward_binop!(Eis, Add, add, |x, y| Eis::new(&x.a + &y.a, &x.b + &y.b));
forward_binop!(Eis, Sub, sub, |x, y| Eis::new(&x.a - &y.a, &x.b - &y.b));
// (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w
forward_binop!(Eis, Mul, mul, |x, y| {
    if x.b.is_zero() && y.b.is_zero() {
        return Eis::rational(&x.a * &y.a);
    }
    let bd = &x.b * &y.b;
    Eis::new(&x.a * &y.a - &bd, &x.a * &y.b + &x.b * &y.a - bd)
});
forward_binop!(Eis, Div, div, |x, y| x * &y.checked_inv().expect("division by zero"));

impl Neg for Eis {
    type Output = Eis;
    fn neg(self) -> Eis {
        Eis::new(-self.a, -self.b)
    }
}

impl Neg for &Eis {
    type Output = Eis;
    fn neg(self) -> Eis {
        Eis::new(-&self.a, -&self.b)
    }
}

impl Scalar for Eis {
    fn zero() -> Self {
        Eis::from_ints(0, 0)
    }
    fn one() -> Self {
        Eis::from_ints(1, 0)
    }
    fn from_i64(n: i64) -> Self {
        Eis::from_ints(n, 0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
    fn to_cf(&self) -> CF {
        self.embed()
    }
}

impl fmt::Display for Eis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wterm = |b: &Rat| -> String {
            if b.is_one() {
                "w".to_string()
            } else {
                format!("{b}*w")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => {
                if self.b.is_negative() {
                    write!(f, "-{}", wterm(&self.b.abs()))
                } else {
                    write!(f, "{}", wterm(&self.b))
                }
            }
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}", self.a, sign, wterm(&self.b.abs()))
            }
        }
    }
}

impl fmt::Debug for Eis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Eis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Eis> {
        let mut p = ScalarParser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let e: Eis = s.parse()?;
        if !e.is_rational() {
            return Err(Error::Parse { pos: 0, msg: "expected a rational number".into() });
        }
        Ok(e.a)
    }
}

/// Recursive-descent parser for scalar text such as `2/3 + 1/2*w`.
struct ScalarParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ScalarParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Eis> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Eis> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    let dinv = d.checked_inv().map_err(|_| Error::Parse { pos: at, msg: "division by zero".into() })?;
                    acc = acc * dinv;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Eis> {
        let base = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                return Ok(-self.factor()?);
            }
            Some(b'+') => {
                self.pos += 1;
                return self.factor();
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                v
            }
            Some(b'w') => {
                self.pos += 1;
                Eis::w()
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Eis::rational(Rat::from_bigints(n, BigInt::one()))
            }
            Some(_) => return Err(self.err("unexpected character")),
            None => return Err(self.err("unexpected end of input")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| self.err("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}

// ---------------------------------------------------------------------------
// CF

impl Scalar for CF {
    fn zero() -> Self {
        CF::new(0.0, 0.0)
    }
    fn one() -> Self {
        CF::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        CF::new(n as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            None
        } else {
            Some(CF::new(1.0, 0.0) / self)
        }
    }
    fn to_cf(&self) -> CF {
        *self
    }
}

/// Text form of a complex float, e.g. `0.5-0.8660254037844386i`.
pub fn format_cf(z: &CF) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im == 0.0 {
        format_f64(re)
    } else if im < 0.0 {
        format!("{}-{}i", format_f64(re), format_f64(-im))
    } else {
        format!("{}+{}i", format_f64(re), format_f64(im))
    }
}

fn format_f64(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-4 {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> Eis {
        Eis::from_ints(a, b)
    }

    #[test]
    fn w_squared() {
        assert_eq!(Eis::w() * Eis::w(), e(-1, -1));
        assert_eq!(e(1, 1) * e(1, 1), Eis::w());
        let x: Eis = "2/3 + 1/2*w".parse().unwrap();
        assert_eq!(Eis::one() * &x, x);
    }

    #[test]
    fn inverses() {
        assert_eq!(Eis::one().checked_inv().unwrap(), Eis::one());
        assert_eq!(Eis::w().checked_inv().unwrap(), e(-1, -1));
        assert_eq!(e(1, 1).checked_inv().unwrap(), e(0, -1));
        assert_eq!(Eis::zero().checked_inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation() {
        assert_eq!(Eis::w().conj(), e(-1, -1));
        let r = Eis::rational(Rat::new(5, 7));
        assert_eq!(r.conj(), r);
        let x: Eis = "-3/4 + 5/2*w".parse().unwrap();
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn embedding() {
        assert_eq!(Eis::one().embed(), CF::new(1.0, 0.0));
        let w = Eis::w().embed();
        assert_eq!(w.re, -0.5);
        assert!((w.im - 0.8660254037844386).abs() < 1e-16);
        assert!((w * w * w - CF::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1", "-1", "w", "-w", "2/3 + 1/2*w", "-2/3 - 1/2*w", "7*w", "5 - w"] {
            let x: Eis = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
            assert_eq!(x.to_string().parse::<Eis>().unwrap(), x);
        }
        assert_eq!("w^2".parse::<Eis>().unwrap(), Eis::w2());
        assert_eq!("(1/2 + 2*w)*2".parse::<Eis>().unwrap(), e(1, 4));
        assert!("1/0".parse::<Eis>().is_err());
        assert!("2 +".parse::<Eis>().is_err());
        assert!("x".parse::<Eis>().is_err());
    }

    #[test]
    fn square_and_cube_roots() {
        let x: Eis = "3/5 - 7/2*w".parse().unwrap();
        let sq = &x * &x;
        let r = sq.sqrt().unwrap();
        assert_eq!(&r * &r, sq);
        // -3 = (1 + 2w)^2
        assert_eq!(Eis::from(-3).sqrt().unwrap().pow(2), Eis::from(-3));
        assert_eq!(Eis::from(2).sqrt(), None);
        assert_eq!(Eis::w().sqrt().unwrap().pow(2), Eis::w());
        let c = x.pow(3);
        assert_eq!(c.cbrt().unwrap().pow(3), c);
        assert_eq!(Eis::w2().cbrt(), None);
    }

    #[test]
    fn rational_approximation() {
        assert_eq!(Rat::approximate(0.75, 100).unwrap(), Rat::new(3, 4));
        assert_eq!(Rat::approximate(-2.0 / 3.0, 100).unwrap(), Rat::new(-2, 3));
    }
}
