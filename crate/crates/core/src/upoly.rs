//! Univariate polynomials and binary forms over a field, with a numeric
//! simultaneous root finder for complex coefficients.

use crate::scalar::{Scalar, CF};

/// Polynomial with coefficients stored lowest degree first and no
/// structurally zero leading coefficient.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<S> {
    c: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut c: Vec<S>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&S> {
        self.c.last()
    }

    pub fn eval(&self, x: &S) -> S {
        self.c.iter().rev().fold(S::zero(), |acc, a| acc * x + a)
    }

    pub fn derivative(&self) -> Self {
        Poly::new(self.c.iter().enumerate().skip(1).map(|(k, a)| a.clone() * &S::from_i64(k as i64)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        Poly::new(
            (0..n)
                .map(|k| match (self.c.get(k), other.c.get(k)) {
                    (Some(a), Some(b)) => a.clone() + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: &S) -> Self {
        Poly::new(self.c.iter().map(|a| a.clone() * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().unwrap().inv().expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        let mut q = vec![S::zero(); self.c.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let t = r.last().unwrap().clone() * &inv;
            for (j, b) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].clone() - t.clone() * b;
            }
            q[k] = t;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) => self.scale(&l.inv().expect("nonzero")),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors, monic.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// The unique polynomial of degree below `xs.len()` through the given values.
    pub fn interpolate(xs: &[S], ys: &[S]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let mut total = Poly::zero();
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            let mut basis = Poly::new(vec![S::one()]);
            let mut denom = S::one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Poly::new(vec![-xj.clone(), S::one()]));
                    denom = denom * &(xi.clone() - xj);
                }
            }
            total = total.add(&basis.scale(&(yi.clone() * &denom.inv().expect("distinct nodes"))));
        }
        total
    }
}

/// Binary form `sum_i c_i x0^i x1^(d-i)` of formal degree `d`.
///
/// Setting `x1 = 1` gives the polynomial with the same coefficient vector;
/// the point `(1:0)` is a root of multiplicity `d - deg`.
#[derive(Clone, PartialEq, Debug)]
pub struct BinaryForm<S> {
    pub degree: usize,
    pub poly: Poly<S>,
}

impl<S: Scalar> BinaryForm<S> {
    pub fn new(degree: usize, coeffs: Vec<S>) -> Self {
        let poly = Poly::new(coeffs);
        assert!(poly.degree().map_or(true, |d| d <= degree), "coefficients exceed formal degree");
        BinaryForm { degree, poly }
    }

    /// Recovers a form of degree `d` from its values at `(k : 1)`, `k = 0..=d`.
    pub fn from_values(degree: usize, values: &[S]) -> Self {
        let xs: Vec<S> = (0..=degree as i64).map(S::from_i64).collect();
        BinaryForm { degree, poly: Poly::interpolate(&xs, values) }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn infinite_multiplicity(&self) -> usize {
        self.degree - self.poly.degree().unwrap_or(self.degree)
    }

    pub fn eval(&self, x0: &S, x1: &S) -> S {
        let mut acc = S::zero();
        for (i, c) in self.poly.coeffs().iter().enumerate() {
            let mut t = c.clone();
            for _ in 0..i {
                t = t * x0;
            }
            for _ in i..self.degree {
                t = t * x1;
            }
            acc = acc + t;
        }
        acc
    }

    /// Greatest common divisor up to scalars; a zero form acts as identity.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = self.poly.gcd(&other.poly);
        let inf = self.infinite_multiplicity().min(other.infinite_multiplicity());
        BinaryForm { degree: g.degree().unwrap_or(0) + inf, poly: g }
    }

    /// Number of distinct roots in the projective line over the algebraic closure.
    pub fn distinct_root_count(&self) -> usize {
        assert!(!self.is_zero());
        let finite = self.poly.squarefree().degree().unwrap_or(0);
        finite + usize::from(self.infinite_multiplicity() > 0)
    }
}

/// Sylvester matrix of two polynomials given by formal coefficient vectors,
/// lowest degree first; its determinant is their resultant.
pub fn sylvester_matrix<S: Scalar>(a: &[S], b: &[S]) -> Vec<Vec<S>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, shifts) in [(a, n), (b, m)] {
        for s in 0..shifts {
            let mut row = vec![S::zero(); size];
            for (k, c) in src.iter().rev().enumerate() {
                row[s + k] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// All complex roots of `sum c_k t^k` by Aberth-Ehrlich iteration.
/// The leading coefficient must be nonzero.
pub fn complex_roots(c: &[CF]) -> Vec<CF> {
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let a: Vec<CF> = c.iter().map(|x| x / lead).collect();
    let r0 = (0..n).map(|k| a[k].norm().powf(1.0 / (n - k) as f64)).fold(1e-3, f64::max);
    let mut z: Vec<CF> = (0..n)
        .map(|k| CF::from_polar(r0, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let eval = |x: CF| -> (CF, CF) {
        let mut p = CF::new(0.0, 0.0);
        let mut dp = CF::new(0.0, 0.0);
        for coef in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + coef;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: CF = (0..n).filter(|&j| j != i).map(|j| CF::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let step = ratio / (CF::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                worst = worst.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if worst < 1e-16 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Eis, Rat};

    fn p(c: &[i64]) -> Poly<Rat> {
        Poly::new(c.iter().map(|&x| Rat::integer(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (t-1)^2 (t+2) and (t-1)(t+3)
        let a = p(&[2, -3, 0, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert_eq!(a.squarefree(), p(&[-2, 1, 1]));
    }

    #[test]
    fn interpolation() {
        let f = p(&[5, 0, -1, 2]);
        let xs: Vec<Rat> = (0..4).map(Rat::integer).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(Poly::interpolate(&xs, &ys), f);
    }

    #[test]
    fn binary_forms() {
        // x0 * x1^2 : roots (0:1) twice and (1:0) once
        let f = BinaryForm::new(3, vec![Rat::zero(), Rat::one()]);
        assert_eq!(f.infinite_multiplicity(), 2);
        assert_eq!(f.distinct_root_count(), 2);
        let g = BinaryForm::new(2, vec![Rat::zero(), Rat::integer(-1), Rat::one()]);
        let h = f.gcd(&g);
        assert_eq!(h.degree, 1);
        assert_eq!(h.distinct_root_count(), 1);
        let vals: Vec<Eis> = (0..4).map(|k| Eis::from(k * k * k - 1)).collect();
        let cube = BinaryForm::from_values(3, &vals);
        assert_eq!(cube.eval(&Eis::w(), &Eis::from(1)), Eis::from(0));
    }

    #[test]
    fn resultant() {
        // t^2 - 1 and t - 1 share a root; t^2 - 1 and t - 2 do not
        let a = vec![Rat::integer(-1), Rat::zero(), Rat::one()];
        assert!(crate::linalg::det(&sylvester_matrix(&a, &[Rat::integer(-1), Rat::one()])).is_zero());
        assert_eq!(crate::linalg::det(&sylvester_matrix(&a, &[Rat::integer(-2), Rat::one()])), Rat::integer(3));
    }

    #[test]
    fn numeric_roots() {
        // t^3 - 1
        let roots = complex_roots(&[CF::new(-1.0, 0.0), CF::new(0.0, 0.0), CF::new(0.0, 0.0), CF::new(1.0, 0.0)]);
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!((r * r * r - 1.0).norm() < 1e-12);
        }
        let w = Eis::w().embed();
        assert!(roots.iter().any(|r| (r - w).norm() < 1e-12));
    }
}
