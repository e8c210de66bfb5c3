//! Points, lines and transformations of the projective plane, each kept in
//! a canonical representative so that equality is equality of classes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::Mat3;
use crate::scalar::{format_cf, Eis, Rat, Scalar, CF};

/// Default tolerance for numeric incidence tests on unit representatives.
pub const NUMERIC_INCIDENCE_TOL: f64 = 1e-9;
/// Default tolerance for numeric point equality.
pub const NUMERIC_POINT_TOL: f64 = 1e-6;

/// Scalars that know how to pick a canonical multiple of a vector.
pub trait ProjScalar: Scalar {
    /// Rescales a nonzero vector to its canonical representative.
    fn canonicalize(v: &mut [Self]);
    /// Exact types ignore `tol` and test for zero.
    fn negligible(&self, tol: f64) -> bool;
}

fn first_nonzero_to_one<S: Scalar>(v: &mut [S]) {
    if let Some(inv) = v.iter().find(|x| !x.is_zero()).and_then(|x| x.inv()) {
        for x in v.iter_mut() {
            *x = x.clone() * &inv;
        }
    }
}

impl ProjScalar for Eis {
    fn canonicalize(v: &mut [Self]) {
        first_nonzero_to_one(v)
    }
    fn negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl ProjScalar for Rat {
    fn canonicalize(v: &mut [Self]) {
        first_nonzero_to_one(v)
    }
    fn negligible(&self, _tol: f64) -> bool {
        Scalar::is_zero(self)
    }
}

impl ProjScalar for CF {
    /// Unit Euclidean norm, with the first coordinate of non-negligible
    /// modulus made real and positive.
    fn canonicalize(v: &mut [Self]) {
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return;
        }
        let lead = v.iter().find(|x| x.norm() > 1e-9 * norm).copied().unwrap_or(CF::new(1.0, 0.0));
        let phase = lead.conj() / lead.norm();
        for x in v.iter_mut() {
            *x = *x * phase / norm;
        }
    }
    fn negligible(&self, tol: f64) -> bool {
        self.norm() < tol
    }
}

fn cross<S: Scalar>(p: &[S; 3], q: &[S; 3]) -> [S; 3] {
    [
        p[1].clone() * &q[2] - p[2].clone() * &q[1],
        p[2].clone() * &q[0] - p[0].clone() * &q[2],
        p[0].clone() * &q[1] - p[1].clone() * &q[0],
    ]
}

fn dot<S: Scalar>(p: &[S; 3], q: &[S; 3]) -> S {
    p[0].clone() * &q[0] + p[1].clone() * &q[1] + p[2].clone() * &q[2]
}

fn det3<S: Scalar>(p: &[S; 3], q: &[S; 3], r: &[S; 3]) -> S {
    dot(p, &cross(q, r))
}

// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PPoint<S> {
    coords: [S; 3],
}

impl<S: ProjScalar> PPoint<S> {
    pub fn new(mut coords: [S; 3]) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroVector);
        }
        S::canonicalize(&mut coords);
        Ok(PPoint { coords })
    }

    pub fn from_i64(c: [i64; 3]) -> Result<Self> {
        Self::new(c.map(S::from_i64))
    }

    pub fn coords(&self) -> &[S; 3] {
        &self.coords
    }

    pub fn to_cf(&self) -> PPoint<CF> {
        PPoint::new(self.coords.clone().map(|c| c.to_cf())).expect("nonzero")
    }
}

impl PPoint<CF> {
    /// Sine of the angle between unit representatives, `|p ^ q|`;
    /// independent of the phase normalization.
    pub fn distance(&self, other: &PPoint<CF>) -> f64 {
        let (p, q) = (&self.coords, &other.coords);
        [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| (p[i] * q[j] - p[j] * q[i]).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn approx_eq(&self, other: &PPoint<CF>, tol: f64) -> bool {
        self.distance(other) < tol
    }
}

/// A line, stored as the canonical coefficient vector of its linear form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PLine<S> {
    coeffs: [S; 3],
}

impl<S: ProjScalar> PLine<S> {
    pub fn new(mut coeffs: [S; 3]) -> Result<Self> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroVector);
        }
        S::canonicalize(&mut coeffs);
        Ok(PLine { coeffs })
    }

    pub fn coeffs(&self) -> &[S; 3] {
        &self.coeffs
    }

    pub fn contains(&self, p: &PPoint<S>) -> bool {
        dot(&self.coeffs, &p.coords).negligible(NUMERIC_INCIDENCE_TOL)
    }
}

pub fn collinear<S: ProjScalar>(p: &PPoint<S>, q: &PPoint<S>, r: &PPoint<S>) -> bool {
    collinear_tol(p, q, r, NUMERIC_INCIDENCE_TOL)
}

/// Determinant test; for numeric points `tol` bounds |det| of the unit representatives.
pub fn collinear_tol<S: ProjScalar>(p: &PPoint<S>, q: &PPoint<S>, r: &PPoint<S>, tol: f64) -> bool {
    det3(&p.coords, &q.coords, &r.coords).negligible(tol)
}

pub fn line_through<S: ProjScalar>(p: &PPoint<S>, q: &PPoint<S>) -> Result<PLine<S>> {
    let c = cross(&p.coords, &q.coords);
    if c.iter().all(|x| x.negligible(NUMERIC_INCIDENCE_TOL)) {
        return Err(Error::EqualPoints);
    }
    PLine::new(c)
}

/// The point where two distinct lines meet.
pub fn intersection<S: ProjScalar>(l: &PLine<S>, m: &PLine<S>) -> Result<PPoint<S>> {
    let c = cross(&l.coeffs, &m.coeffs);
    if c.iter().all(|x| x.negligible(NUMERIC_INCIDENCE_TOL)) {
        return Err(Error::EqualPoints);
    }
    PPoint::new(c)
}

// ---------------------------------------------------------------------------

/// An element of PGL3, stored as a canonical matrix: the first nonzero entry
/// in row-major order is 1 (exact) or the matrix has unit Frobenius norm
/// with that entry real-positive (numeric).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PTransform<S> {
    matrix: Mat3<S>,
}

impl<S: ProjScalar> PTransform<S> {
    pub fn new(matrix: Mat3<S>) -> Result<Self> {
        if matrix.det().negligible(0.0) {
            return Err(Error::SingularMatrix);
        }
        let mut flat: Vec<S> = matrix.m.iter().flat_map(|r| r.iter().cloned()).collect();
        S::canonicalize(&mut flat);
        Ok(PTransform { matrix: Mat3::from_fn(|i, j| flat[3 * i + j].clone()) })
    }

    pub fn identity() -> Self {
        PTransform { matrix: Mat3::identity() }
    }

    pub fn matrix(&self) -> &Mat3<S> {
        &self.matrix
    }

    pub fn apply(&self, p: &PPoint<S>) -> PPoint<S> {
        PPoint::new(self.matrix.mul_vec(&p.coords)).expect("invertible matrix maps nonzero vectors to nonzero vectors")
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new(self.matrix.mul(&other.matrix)).expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.matrix.adjugate()).expect("adjugate of an invertible matrix")
    }

    pub fn to_cf(&self) -> PTransform<CF> {
        PTransform::new(self.matrix.to_cf()).expect("invertible")
    }
}

pub fn apply<S: ProjScalar>(g: &PTransform<S>, p: &PPoint<S>) -> PPoint<S> {
    g.apply(p)
}

const FRAME_TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

fn check_frame<S: ProjScalar>(frame: &[PPoint<S>; 4], tol: f64) -> Result<()> {
    for t in FRAME_TRIPLES {
        if collinear_tol(&frame[t[0]], &frame[t[1]], &frame[t[2]], tol) {
            return Err(Error::DegenerateFrame(t));
        }
    }
    Ok(())
}

/// Matrix sending the standard frame e0, e1, e2, e0+e1+e2 to `frame`.
fn frame_matrix<S: ProjScalar>(frame: &[PPoint<S>; 4]) -> Result<Mat3<S>> {
    let cols = [frame[0].coords.clone(), frame[1].coords.clone(), frame[2].coords.clone()];
    let a = Mat3::from_columns(&cols);
    let lambda = a.inverse()?.mul_vec(&frame[3].coords);
    Ok(a.mul(&Mat3::diag(lambda)))
}

/// The unique projective transformation with `src[k] -> dst[k]`.
pub fn transform_from_frames<S: ProjScalar>(src: &[PPoint<S>; 4], dst: &[PPoint<S>; 4]) -> Result<PTransform<S>> {
    check_frame(src, NUMERIC_INCIDENCE_TOL)?;
    check_frame(dst, NUMERIC_INCIDENCE_TOL)?;
    let ms = frame_matrix(src)?;
    let md = frame_matrix(dst)?;
    PTransform::new(md.mul(&ms.adjugate()))
}

// ---------------------------------------------------------------------------
// text

impl fmt::Display for PPoint<Eis> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Display for PPoint<CF> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.coords;
        write!(f, "({} : {} : {})", format_cf(&c[0]), format_cf(&c[1]), format_cf(&c[2]))
    }
}

impl FromStr for PPoint<Eis> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or(Error::Parse { pos: 0, msg: "expected (a : b : c)".into() })?;
        let parts: Vec<&str> = inner.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse { pos: 0, msg: "expected three coordinates".into() });
        }
        let c: Vec<Eis> = parts.iter().map(|p| p.trim().parse()).collect::<Result<_>>()?;
        PPoint::new([c[0].clone(), c[1].clone(), c[2].clone()])
    }
}

impl fmt::Display for PLine<Eis> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = format!("x{i}");
            if c == &Eis::from(1) {
                terms.push(var);
            } else if c == &Eis::from(-1) {
                terms.push(format!("-{var}"));
            } else if c.is_rational() {
                terms.push(format!("{c}*{var}"));
            } else {
                terms.push(format!("({c})*{var}"));
            }
        }
        write!(f, "{} = 0", terms.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Display for PTransform<Eis> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .m
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Display for PTransform<CF> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix
            .m
            .iter()
            .map(|r| format!("[{}]", r.iter().map(format_cf).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: [Eis; 3]) -> PPoint<Eis> {
        PPoint::new(c).unwrap()
    }

    fn z(n: i64) -> Eis {
        Eis::from(n)
    }

    // t_{0,j} = (0 : -w^j : 1), t_{1,j} = (1 : 0 : -w^j), t_{2,j} = (-w^j : 1 : 0)
    fn flex(i: usize, j: u32) -> PPoint<Eis> {
        let wj = Eis::w().pow(j);
        match i {
            0 => pt([z(0), -wj, z(1)]),
            1 => pt([z(1), z(0), -wj]),
            _ => pt([-wj, z(1), z(0)]),
        }
    }

    #[test]
    fn canonical_representatives() {
        let p = pt([z(0), z(-2), z(2)]);
        assert_eq!(p.coords(), &[z(0), z(1), z(-1)]);
        assert_eq!(PPoint::<Eis>::new([z(0), z(0), z(0)]), Err(Error::ZeroVector));
        let q = PPoint::<CF>::new([CF::new(0.0, 0.0), CF::new(0.0, 2.0), CF::new(1.0, 0.0)]).unwrap();
        assert!((q.coords()[1].im).abs() < 1e-15 && q.coords()[1].re > 0.0);
    }

    #[test]
    fn collinearity() {
        assert!(collinear(&flex(0, 0), &flex(0, 1), &flex(0, 2)));
        assert!(!collinear(&flex(0, 0), &flex(1, 0), &flex(1, 1)));
        assert!(collinear(&flex(1, 1), &flex(1, 1), &flex(2, 0)));
    }

    #[test]
    fn lines() {
        assert_eq!(line_through(&flex(0, 0), &flex(0, 1)).unwrap(), PLine::new([z(1), z(0), z(0)]).unwrap());
        let e0 = PPoint::<Eis>::from_i64([1, 0, 0]).unwrap();
        let e1 = PPoint::<Eis>::from_i64([0, 1, 0]).unwrap();
        assert_eq!(line_through(&e0, &e1).unwrap(), PLine::new([z(0), z(0), z(1)]).unwrap());
        assert_eq!(line_through(&flex(0, 0), &flex(1, 0)).unwrap(), PLine::new([z(1), z(1), z(1)]).unwrap());
        assert_eq!(line_through(&e0, &e0), Err(Error::EqualPoints));
        assert_eq!(line_through(&e0, &e1).unwrap().to_string(), "x2 = 0");
    }

    #[test]
    fn frames() {
        let std: [PPoint<Eis>; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]].map(|c| PPoint::from_i64(c).unwrap());
        assert_eq!(transform_from_frames(&std, &std).unwrap(), PTransform::identity());
        let permuted = [std[1].clone(), std[2].clone(), std[0].clone(), std[3].clone()];
        let t = transform_from_frames(&std, &permuted).unwrap();
        assert_eq!(t.matrix(), &Mat3::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 0]]));

        // the frame argument against complex conjugation being realizable
        let src = [flex(2, 1), flex(0, 0), flex(1, 0), flex(1, 1)];
        let dst = [flex(2, 2), flex(0, 0), flex(1, 0), flex(1, 2)];
        let g = transform_from_frames(&src, &dst).unwrap();
        for k in 0..4 {
            assert_eq!(g.apply(&src[k]), dst[k]);
        }
        assert_ne!(g.apply(&flex(0, 1)), flex(0, 2));

        let degenerate = [flex(0, 0), flex(0, 1), flex(0, 2), flex(1, 0)];
        assert_eq!(transform_from_frames(&degenerate, &std), Err(Error::DegenerateFrame([0, 1, 2])));
    }

    #[test]
    fn apply_and_inverse() {
        let g1 = PTransform::new(Mat3::<Eis>::from_i64([[0, 1, 0], [0, 0, 1], [1, 0, 0]])).unwrap();
        let p = pt([z(2), Eis::w(), z(5)]);
        assert_eq!(g1.apply(&p), pt([Eis::w(), z(5), z(2)]));
        assert_eq!(PTransform::identity().apply(&p), p);
        assert_eq!(g1.apply(&g1.inverse().apply(&p)), p);
    }

    #[test]
    fn point_text() {
        let p: PPoint<Eis> = "(0 : -w : 1)".parse().unwrap();
        assert_eq!(p, flex(0, 1));
        assert_eq!(p.to_string().parse::<PPoint<Eis>>().unwrap(), p);
        assert!("(1 : 2)".parse::<PPoint<Eis>>().is_err());
    }

    #[test]
    fn numeric_distance_ignores_phase() {
        let p = flex(1, 1).to_cf();
        let rotated = PPoint { coords: p.coords().map(|c| c * CF::from_polar(1.0, 0.7)) };
        assert!(p.distance(&rotated) < 1e-7);
        assert!(p.distance(&flex(1, 2).to_cf()) > 0.1);
    }
}
