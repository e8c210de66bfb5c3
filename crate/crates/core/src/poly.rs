//! Ternary forms, 3x3 matrices and the cubic covariants built from them.
//!
//! Group action convention: a matrix `g` acts on forms by
//! `(g . f)(x) = f(g^-1 x)`, so that `g` maps the curve `f = 0` onto the
//! curve `g . f = 0` and `act(g1, act(g2, f)) = act(g1 g2, f)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{format_cf, Eis, Scalar, CF};

pub type Exp = [u32; 3];

/// The ten cubic monomials in the fixed serialization order,
/// lexicographic from `x0^3` down to `x2^3`.
pub const CUBIC_MONOMIALS: [Exp; 10] = [
    [3, 0, 0],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [1, 1, 1],
    [1, 0, 2],
    [0, 3, 0],
    [0, 2, 1],
    [0, 1, 2],
    [0, 0, 3],
];

pub fn cubic_slot(e: Exp) -> Option<usize> {
    CUBIC_MONOMIALS.iter().position(|m| *m == e)
}

// ---------------------------------------------------------------------------
// Mat3

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat3<S> {
    pub m: [[S; 3]; 3],
}

impl<S: Scalar> Mat3<S> {
    pub fn new(m: [[S; 3]; 3]) -> Self {
        Mat3 { m }
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> S) -> Self {
        Mat3 { m: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Self::from_fn(|i, j| S::from_i64(rows[i][j]))
    }

    /// Matrix whose k-th column is `cols[k]`.
    pub fn from_columns(cols: &[[S; 3]; 3]) -> Self {
        Self::from_fn(|i, j| cols[j][i].clone())
    }

    pub fn diag(d: [S; 3]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i].clone() } else { S::zero() })
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..3).fold(S::zero(), |acc, k| acc + self.m[i][k].clone() * &other.m[k][j])
        })
    }

    pub fn mul_vec(&self, v: &[S; 3]) -> [S; 3] {
        std::array::from_fn(|i| (0..3).fold(S::zero(), |acc, k| acc + self.m[i][k].clone() * &v[k]))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_fn(|i, j| self.m[i][j].clone() * c)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i].clone())
    }

    fn minor(&self, r: usize, c: usize) -> S {
        let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        self.m[rs[0]][cs[0]].clone() * &self.m[rs[1]][cs[1]]
            - self.m[rs[0]][cs[1]].clone() * &self.m[rs[1]][cs[0]]
    }

    pub fn det(&self) -> S {
        (0..3).fold(S::zero(), |acc, j| {
            let t = self.m[0][j].clone() * &self.minor(0, j);
            if j % 2 == 0 {
                acc + t
            } else {
                acc - t
            }
        })
    }

    pub fn adjugate(&self) -> Self {
        Self::from_fn(|i, j| {
            let c = self.minor(j, i);
            if (i + j) % 2 == 0 {
                c
            } else {
                -c
            }
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        let dinv = d.inv().ok_or(Error::SingularMatrix)?;
        Ok(self.adjugate().scale(&dinv))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat3<T> {
        Mat3::from_fn(|i, j| f(&self.m[i][j]))
    }

    pub fn to_cf(&self) -> Mat3<CF> {
        self.map(|x| x.to_cf())
    }
}

// ---------------------------------------------------------------------------
// Form

/// A polynomial in x0, x1, x2 stored sparsely; zero coefficients are never kept.
#[derive(Clone, PartialEq, Debug)]
pub struct Form<S> {
    terms: BTreeMap<Exp, S>,
}

impl<S: Scalar> Default for Form<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Form<S> {
    pub fn zero() -> Self {
        Form { terms: BTreeMap::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: S, e: Exp) -> Self {
        let mut f = Self::zero();
        f.add_term(e, c);
        f
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(S::one(), e)
    }

    /// The linear form `c0 x0 + c1 x1 + c2 x2`.
    pub fn linear(c: &[S; 3]) -> Self {
        let mut f = Self::zero();
        for (i, ci) in c.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            f.add_term(e, ci.clone());
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exp) -> S {
        self.terms.get(&e).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, e: Exp, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Total degrees present, lowest first.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut r = Self::zero();
        for (e, x) in &self.terms {
            r.add_term(*e, x.clone() * c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                r.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1.clone() * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(S::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = *e;
                e2[i] -= 1;
                r.add_term(e2, c.clone() * &S::from_i64(e[i] as i64));
            }
        }
        r
    }

    pub fn eval(&self, p: &[S; 3]) -> S {
        self.terms.iter().fold(S::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..e[i] {
                    t = t * &p[i];
                }
            }
            acc + t
        })
    }

    /// Substitutes `x_i -> subs[i]`.
    pub fn substitute(&self, subs: &[Form<S>; 3]) -> Self {
        let maxdeg = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0);
        let powers: Vec<Vec<Form<S>>> = subs
            .iter()
            .map(|s| {
                let mut v = vec![Form::constant(S::one())];
                for k in 1..=maxdeg as usize {
                    let next = v[k - 1].mul(s);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut r = Self::zero();
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize]
                .mul(&powers[1][e[1] as usize])
                .mul(&powers[2][e[2] as usize])
                .scale(c);
            r = r.add(&t);
        }
        r
    }

    /// Division with remainder by a single divisor in lex order
    /// (x0 > x1 > x2). The remainder is zero iff `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let (lt_e, lt_c) = divisor.terms.iter().next_back().ok_or(Error::DivisionByZero)?;
        let lt_inv = lt_c.inv().ok_or(Error::DivisionByZero)?;
        let mut p = self.clone();
        let mut q = Self::zero();
        let mut r = Self::zero();
        while let Some((e, c)) = p.terms.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            if (0..3).all(|i| e[i] >= lt_e[i]) {
                let qe = [e[0] - lt_e[0], e[1] - lt_e[1], e[2] - lt_e[2]];
                let t = Self::monomial(c * &lt_inv, qe);
                p = p.sub(&t.mul(divisor));
                q = q.add(&t);
            } else {
                p.terms.remove(&e);
                r.add_term(e, c);
            }
        }
        Ok((q, r))
    }

    pub fn divides(&self, dividend: &Self) -> Result<bool> {
        Ok(dividend.div_rem(self)?.1.is_zero())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Form<T> {
        let mut r = Form::zero();
        for (e, c) in &self.terms {
            r.add_term(*e, f(c));
        }
        r
    }
}

// ---------------------------------------------------------------------------
// TernaryCubic

/// A cubic form in x0, x1, x2 with coefficients in the slots of
/// [`CUBIC_MONOMIALS`].
#[derive(Clone, PartialEq, Debug)]
pub struct TernaryCubic<S> {
    pub coeffs: [S; 10],
}

impl<S: Scalar> TernaryCubic<S> {
    pub fn new(coeffs: [S; 10]) -> Self {
        TernaryCubic { coeffs }
    }

    pub fn zero() -> Self {
        TernaryCubic { coeffs: std::array::from_fn(|_| S::zero()) }
    }

    pub fn from_terms(terms: &[(Exp, S)]) -> Self {
        let mut f = Self::zero();
        for (e, c) in terms {
            let slot = cubic_slot(*e).expect("cubic monomial");
            f.coeffs[slot] = f.coeffs[slot].clone() + c;
        }
        f
    }

    pub fn from_int_terms(terms: &[(Exp, i64)]) -> Self {
        let t: Vec<(Exp, S)> = terms.iter().map(|(e, c)| (*e, S::from_i64(*c))).collect();
        Self::from_terms(&t)
    }

    pub fn from_form(f: &Form<S>) -> Result<Self> {
        let mut c = Self::zero();
        for (e, x) in f.terms() {
            let slot = cubic_slot(*e).ok_or_else(|| Error::Consistency(format!("monomial {e:?} is not cubic")))?;
            c.coeffs[slot] = x.clone();
        }
        Ok(c)
    }

    pub fn to_form(&self) -> Form<S> {
        let mut f = Form::zero();
        for (e, c) in CUBIC_MONOMIALS.iter().zip(&self.coeffs) {
            f.add_term(*e, c.clone());
        }
        f
    }

    pub fn coeff(&self, e: Exp) -> &S {
        &self.coeffs[cubic_slot(e).expect("cubic monomial")]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &S) -> Self {
        TernaryCubic { coeffs: std::array::from_fn(|i| self.coeffs[i].clone() * c) }
    }

    pub fn add(&self, other: &Self) -> Self {
        TernaryCubic { coeffs: std::array::from_fn(|i| self.coeffs[i].clone() + &other.coeffs[i]) }
    }

    pub fn eval(&self, p: &[S; 3]) -> S {
        self.to_form().eval(p)
    }

    pub fn gradient(&self) -> [Form<S>; 3] {
        let f = self.to_form();
        std::array::from_fn(|i| f.derivative(i))
    }

    /// Nonzero coefficients as `(exponent, scalar)` pairs in serialization order.
    pub fn nonzero_terms(&self) -> Vec<(Exp, S)> {
        CUBIC_MONOMIALS
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (*e, c.clone()))
            .collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TernaryCubic<T> {
        TernaryCubic { coeffs: std::array::from_fn(|i| f(&self.coeffs[i])) }
    }

    pub fn to_cf(&self) -> TernaryCubic<CF> {
        self.map(|x| x.to_cf())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}

/// The Hessian `det(d^2 f / dx_i dx_j)`, with no normalizing constant.
pub fn hessian<S: Scalar>(f: &TernaryCubic<S>) -> TernaryCubic<S> {
    let g = f.to_form();
    let first: Vec<Form<S>> = (0..3).map(|i| g.derivative(i)).collect();
    let h: Vec<Vec<Form<S>>> = (0..3).map(|i| (0..3).map(|j| first[i].derivative(j)).collect()).collect();
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| h[r0][c0].mul(&h[r1][c1]).sub(&h[r0][c1].mul(&h[r1][c0]));
    let det = h[0][0]
        .mul(&minor(1, 2, 1, 2))
        .sub(&h[0][1].mul(&minor(1, 2, 0, 2)))
        .add(&h[0][2].mul(&minor(1, 2, 0, 1)));
    TernaryCubic::from_form(&det).expect("hessian of a cubic is a cubic")
}

/// `(g . f)(x) = f(g^-1 x)`.
pub fn act<S: Scalar>(g: &Mat3<S>, f: &TernaryCubic<S>) -> Result<TernaryCubic<S>> {
    let ginv = g.inverse()?;
    Ok(act_by_inverse(&ginv, f))
}

/// Substitutes `x -> ginv x` directly, for callers that already hold `g^-1`.
pub fn act_by_inverse<S: Scalar>(ginv: &Mat3<S>, f: &TernaryCubic<S>) -> TernaryCubic<S> {
    let subs: [Form<S>; 3] = std::array::from_fn(|i| Form::linear(&ginv.m[i]));
    TernaryCubic::from_form(&f.to_form().substitute(&subs)).expect("substitution preserves degree")
}

pub fn eval<S: Scalar>(f: &TernaryCubic<S>, p: &[S; 3]) -> S {
    f.eval(p)
}

/// Basis of sl3: the six off-diagonal units and two diagonal differences.
pub fn sl3_basis<S: Scalar>() -> Vec<Mat3<S>> {
    let mut basis = Vec::with_capacity(8);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                basis.push(Mat3::from_fn(|r, c| if r == i && c == j { S::one() } else { S::zero() }));
            }
        }
    }
    for k in 0..2 {
        basis.push(Mat3::from_fn(|r, c| {
            if r != c {
                S::zero()
            } else if r == k {
                S::one()
            } else if r == k + 1 {
                -S::one()
            } else {
                S::zero()
            }
        }));
    }
    basis
}

/// The infinitesimal action `X . f = -sum_i (X x)_i df/dx_i`.
pub fn lie_action<S: Scalar>(x: &Mat3<S>, f: &TernaryCubic<S>) -> TernaryCubic<S> {
    let grad = f.gradient();
    let mut r = Form::zero();
    for (i, gi) in grad.iter().enumerate() {
        r = r.sub(&Form::linear(&x.m[i]).mul(gi));
    }
    TernaryCubic::from_form(&r).expect("tangent vector is a cubic")
}

/// Dimension of the SL3-orbit of `f`: the rank of its tangent space.
pub fn sl3_orbit_dim(f: &TernaryCubic<Eis>) -> usize {
    let rows: Vec<Vec<Eis>> = sl3_basis::<Eis>().iter().map(|x| lie_action(x, f).coeffs.to_vec()).collect();
    linalg::rank(&rows)
}

// ---------------------------------------------------------------------------
// text

fn monomial_text(e: &Exp) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(format!("x{i}")),
            _ => parts.push(format!("x{i}^{k}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: Vec<(bool, String, String)>) -> fmt::Result {
    // (negative, coefficient text without sign or empty for unit, monomial)
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (neg, coeff, mono)) in terms.iter().enumerate() {
        let body = if coeff.is_empty() { mono.clone() } else { format!("{coeff}*{mono}") };
        match (k, neg) {
            (0, false) => write!(f, "{body}")?,
            (0, true) => write!(f, "-{body}")?,
            (_, false) => write!(f, " + {body}")?,
            (_, true) => write!(f, " - {body}")?,
        }
    }
    Ok(())
}

impl fmt::Display for TernaryCubic<Eis> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .nonzero_terms()
            .into_iter()
            .map(|(e, c)| {
                if c.is_rational() {
                    let neg = c.a.is_negative();
                    let a = c.a.abs();
                    let coeff = if a.is_one() { String::new() } else { a.to_string() };
                    (neg, coeff, monomial_text(&e))
                } else {
                    (false, format!("({c})"), monomial_text(&e))
                }
            })
            .collect();
        write_terms(f, terms)
    }
}

impl fmt::Display for TernaryCubic<CF> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .nonzero_terms()
            .into_iter()
            .map(|(e, c)| (false, format!("({})", format_cf(&c)), monomial_text(&e)))
            .collect();
        write_terms(f, terms)
    }
}

/// Serializes nonzero coefficients as `(i0 i1 i2, scalar)` pairs joined by `; `.
pub fn serialize_cubic(f: &TernaryCubic<Eis>) -> String {
    f.nonzero_terms()
        .iter()
        .map(|(e, c)| format!("({} {} {}, {})", e[0], e[1], e[2], c))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn deserialize_cubic(s: &str) -> Result<TernaryCubic<Eis>> {
    let mut f = TernaryCubic::zero();
    let perr = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    let mut offset = 0;
    for chunk in s.split(';') {
        let start = offset;
        offset += chunk.len() + 1;
        let t = chunk.trim();
        if t.is_empty() {
            continue;
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| perr(start, "expected (i0 i1 i2, scalar)"))?;
        let (exps, scalar) = inner.split_once(',').ok_or_else(|| perr(start, "missing comma"))?;
        let e: Vec<u32> = exps
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| perr(start, "bad exponent")))
            .collect::<Result<_>>()?;
        let e: Exp = e.try_into().map_err(|_| perr(start, "expected three exponents"))?;
        let slot = cubic_slot(e).ok_or_else(|| perr(start, "not a cubic monomial"))?;
        f.coeffs[slot] = scalar.trim().parse()?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn cubic(terms: &[(Exp, i64)]) -> TernaryCubic<Eis> {
        TernaryCubic::from_int_terms(terms)
    }

    #[test]
    fn hessian_table_values() {
        let mu = Eis::from(3);
        let h6 = cubic(&[([1, 1, 1], 1)]).scale(&mu);
        assert_eq!(hessian(&h6), cubic(&[([1, 1, 1], 2)]).scale(&mu.pow(3)));
        assert!(hessian(&cubic(&[([3, 0, 0], 1)])).is_zero());
        let h7 = cubic(&[([2, 1, 0], 1), ([0, 2, 1], -1)]);
        assert_eq!(hessian(&h7), cubic(&[([0, 3, 0], -8)]));
        let fermat = cubic(&[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)]);
        assert_eq!(hessian(&fermat), cubic(&[([1, 1, 1], 216)]));
        assert!(hessian(&TernaryCubic::<Eis>::zero()).is_zero());
    }

    #[test]
    fn action_by_substitution() {
        let f = cubic(&[([2, 1, 0], 1)]);
        assert_eq!(act(&Mat3::identity(), &f).unwrap(), f);
        let swap = Mat3::<Eis>::from_i64([[1, 0, 0], [0, 0, 1], [0, 1, 0]]);
        assert_eq!(act(&swap, &f).unwrap(), cubic(&[([2, 0, 1], 1)]));
        let singular = Mat3::<Eis>::from_i64([[1, 1, 0], [1, 1, 0], [0, 0, 1]]);
        assert_eq!(act(&singular, &f), Err(Error::SingularMatrix));
    }

    #[test]
    fn hessian_covariance_pointwise() {
        let f = cubic(&[([3, 0, 0], 1), ([2, 1, 0], -2), ([1, 1, 1], 3), ([0, 1, 2], 5), ([0, 0, 3], -1)]);
        let g = Mat3::<Eis>::from_i64([[1, 2, 0], [0, 1, 1], [1, 1, 0]]);
        assert_eq!(g.det(), Eis::from(1));
        let hgf = hessian(&act(&g, &f).unwrap());
        let v = [Eis::from(2), Eis::w(), Eis::from(-1)];
        assert_eq!(hgf.eval(&g.mul_vec(&v)), hessian(&f).eval(&v));
    }

    #[test]
    fn evaluation() {
        let fermat = cubic(&[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)]);
        assert!(fermat.eval(&[Eis::from(0), Eis::from(-1), Eis::from(1)]).is_zero());
        let x03 = cubic(&[([3, 0, 0], 1)]);
        assert_eq!(x03.eval(&[Eis::from(1), Eis::from(0), Eis::from(0)]), Eis::from(1));
        let p = [Eis::from(1), Eis::w(), Eis::rational(Rat::new(1, 2))];
        let p2 = p.clone().map(|x| x * Eis::from(2));
        assert_eq!(fermat.eval(&p2), fermat.eval(&p) * Eis::from(8));
    }

    #[test]
    fn orbit_dimensions_of_normal_forms() {
        assert_eq!(sl3_orbit_dim(&cubic(&[([3, 0, 0], 1)])), 3);
        assert_eq!(sl3_orbit_dim(&cubic(&[([2, 1, 0], 1)])), 5);
        assert_eq!(sl3_orbit_dim(&cubic(&[([1, 1, 1], 1)])), 6);
        assert_eq!(sl3_orbit_dim(&cubic(&[([2, 1, 0], 1), ([0, 2, 1], -1)])), 7);
        assert_eq!(sl3_orbit_dim(&cubic(&[([0, 2, 1], 1), ([3, 0, 0], -1)])), 8);
        let pencil1 = cubic(&[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1), ([1, 1, 1], 1)]);
        assert_eq!(sl3_orbit_dim(&pencil1), 8);
    }

    #[test]
    fn division() {
        let x0 = Form::<Eis>::var(0);
        let x1 = Form::<Eis>::var(1);
        let conic = x0.mul(&x0).sub(&x1.mul(&Form::var(2)));
        let f = conic.mul(&x1);
        assert!(x1.divides(&f).unwrap());
        assert!(conic.divides(&f).unwrap());
        assert!(!x0.divides(&f).unwrap());
        assert_eq!(Form::<Eis>::zero().divides(&f), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_and_serialization() {
        let f = cubic(&[([3, 0, 0], 1), ([1, 1, 1], -3), ([0, 0, 3], 2)]);
        assert_eq!(f.to_string(), "x0^3 - 3*x0*x1*x2 + 2*x2^3");
        let g = f.add(&TernaryCubic::from_terms(&[([0, 1, 2], "1/2 - w".parse().unwrap())]));
        assert_eq!(g.to_string(), "x0^3 - 3*x0*x1*x2 + (1/2 - w)*x1*x2^2 + 2*x2^3");
        let s = serialize_cubic(&g);
        assert_eq!(s, "(3 0 0, 1); (1 1 1, -3); (0 1 2, 1/2 - w); (0 0 3, 2)");
        assert_eq!(deserialize_cubic(&s).unwrap(), g);
        assert!(deserialize_cubic("(2 0 0, 1)").is_err());
    }
}
