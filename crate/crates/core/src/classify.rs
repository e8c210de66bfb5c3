//! Projective classification of ternary cubics over Q(w) by their
//! singular locus.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{act_by_inverse, hessian, Form, Mat3, TernaryCubic};
use crate::projective::{PLine, PPoint};
use crate::scalar::{Eis, Scalar};
use crate::upoly::{complex_roots, sylvester_matrix, BinaryForm, Poly};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum CubicType {
    #[serde(rename = "elliptic")]
    Elliptic,
    #[serde(rename = "triple-line")]
    TripleLine,
    #[serde(rename = "double-line-plus-line")]
    DoubleLinePlusLine,
    #[serde(rename = "three-concurrent-lines")]
    ThreeConcurrentLines,
    #[serde(rename = "triangle")]
    Triangle,
    #[serde(rename = "conic-plus-tangent")]
    ConicPlusTangentLine,
    #[serde(rename = "conic-plus-secant")]
    ConicPlusSecantLine,
    #[serde(rename = "cuspidal")]
    CuspidalCubic,
    #[serde(rename = "nodal")]
    NodalCubic,
}

impl CubicType {
    pub const ALL: [CubicType; 9] = [
        CubicType::Elliptic,
        CubicType::TripleLine,
        CubicType::DoubleLinePlusLine,
        CubicType::ThreeConcurrentLines,
        CubicType::Triangle,
        CubicType::ConicPlusTangentLine,
        CubicType::ConicPlusSecantLine,
        CubicType::CuspidalCubic,
        CubicType::NodalCubic,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            CubicType::Elliptic => "elliptic",
            CubicType::TripleLine => "triple-line",
            CubicType::DoubleLinePlusLine => "double-line-plus-line",
            CubicType::ThreeConcurrentLines => "three-concurrent-lines",
            CubicType::Triangle => "triangle",
            CubicType::ConicPlusTangentLine => "conic-plus-tangent",
            CubicType::ConicPlusSecantLine => "conic-plus-secant",
            CubicType::CuspidalCubic => "cuspidal",
            CubicType::NodalCubic => "nodal",
        }
    }

    /// Name of the normal form row for the singular types.
    pub fn normal_form(self) -> Option<&'static str> {
        match self {
            CubicType::Elliptic => None,
            CubicType::TripleLine => Some("h3"),
            CubicType::DoubleLinePlusLine => Some("h5"),
            CubicType::ThreeConcurrentLines => Some("h6"),
            CubicType::Triangle => Some("h_mu_6"),
            CubicType::ConicPlusTangentLine => Some("h7"),
            CubicType::ConicPlusSecantLine => Some("h_mu_7"),
            CubicType::CuspidalCubic => Some("h8"),
            CubicType::NodalCubic => Some("h_mu_8"),
        }
    }

    /// Reducible types are exactly those whose flex locus is a curve.
    pub fn is_reducible(self) -> bool {
        !matches!(self, CubicType::Elliptic | CubicType::CuspidalCubic | CubicType::NodalCubic)
    }
}

impl fmt::Display for CubicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CubicType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CubicType::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("unknown cubic type '{s}'") })
    }
}

/// The normal form of a singular type, scaled by `mu` where the type has a modulus.
pub fn normal_form_cubic(t: CubicType, mu: &Eis) -> Option<TernaryCubic<Eis>> {
    let x = |i| Form::<Eis>::var(i);
    let from = |f: Form<Eis>| TernaryCubic::from_form(&f).expect("cubic");
    let int = |terms: &[([u32; 3], i64)]| TernaryCubic::<Eis>::from_int_terms(terms);
    let conic = x(0).mul(&x(0)).sub(&x(1).mul(&x(2)));
    Some(match t {
        CubicType::Elliptic => return None,
        CubicType::TripleLine => int(&[([3, 0, 0], 1)]),
        CubicType::DoubleLinePlusLine => int(&[([2, 1, 0], 1)]),
        CubicType::ThreeConcurrentLines => int(&[([2, 1, 0], 1), ([1, 2, 0], 1)]),
        CubicType::Triangle => int(&[([1, 1, 1], 1)]).scale(mu),
        CubicType::ConicPlusTangentLine => from(conic.mul(&x(1))),
        CubicType::ConicPlusSecantLine => from(conic.mul(&x(0))).scale(mu),
        CubicType::CuspidalCubic => int(&[([0, 2, 1], 1), ([3, 0, 0], -1)]),
        CubicType::NodalCubic => int(&[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)]).scale(mu),
    })
}

/// Whether `t` has a modulus `mu` in its normal form.
pub fn has_modulus(t: CubicType) -> bool {
    matches!(t, CubicType::Triangle | CubicType::ConicPlusSecantLine | CubicType::NodalCubic)
}

#[derive(Clone, PartialEq, Debug)]
pub struct SingularLocus {
    pub points: Vec<PPoint<Eis>>,
    pub infinite: bool,
    pub witness_line: Option<PLine<Eis>>,
}

// ---------------------------------------------------------------------------
// double lines

fn cross(a: &[Eis; 3], b: &[Eis; 3]) -> [Eis; 3] {
    [
        a[1].clone() * &b[2] - a[2].clone() * &b[1],
        a[2].clone() * &b[0] - a[0].clone() * &b[2],
        a[0].clone() * &b[1] - a[1].clone() * &b[0],
    ]
}

fn ints(v: [i64; 3]) -> [Eis; 3] {
    v.map(Eis::from)
}

/// Lines in general position used to locate a double line.
const PROBE_LINES: [[i64; 3]; 7] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [1, -3, 5], [2, 7, -1]];

/// The repeated root of `f` restricted to the line through `p` and `q`,
/// as a point of the plane.
fn repeated_point_on_line(f: &TernaryCubic<Eis>, p: &[Eis; 3], q: &[Eis; 3]) -> Option<[Eis; 3]> {
    let at = |s: &Eis, t: &Eis| -> [Eis; 3] { std::array::from_fn(|i| s.clone() * &p[i] + t.clone() * &q[i]) };
    let values: Vec<Eis> = (0..4).map(|k| f.eval(&at(&Eis::from(k), &Eis::from(1)))).collect();
    let r = BinaryForm::from_values(3, &values);
    if r.is_zero() {
        return None;
    }
    if r.infinite_multiplicity() >= 2 {
        return Some(at(&Eis::from(1), &Eis::from(0)));
    }
    let g = r.poly.gcd(&r.poly.derivative());
    if g.degree()? == 0 {
        return None;
    }
    let lin = g.squarefree();
    let root = -lin.coeffs()[0].clone() * &lin.coeffs()[1].inv()?;
    Some(at(&root, &Eis::from(1)))
}

/// A line `l` with `l^2 | f`, if one exists.
fn double_line(f: &TernaryCubic<Eis>) -> Option<PLine<Eis>> {
    let form = f.to_form();
    let mut candidates: Vec<PPoint<Eis>> = Vec::new();
    for a in PROBE_LINES {
        let a = ints(a);
        let p = cross(&a, &ints([1, 0, 0]));
        let p = if p.iter().all(|x| x.is_zero()) { cross(&a, &ints([0, 1, 0])) } else { p };
        let q = cross(&a, &p);
        if let Some(pt) = repeated_point_on_line(f, &p, &q).and_then(|c| PPoint::new(c).ok()) {
            if !candidates.contains(&pt) {
                candidates.push(pt);
            }
        }
    }
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            let Ok(line) = crate::projective::line_through(&candidates[i], &candidates[j]) else {
                continue;
            };
            let l = Form::linear(line.coeffs());
            if l.mul(&l).divides(&form).unwrap_or(false) {
                return Some(line);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// finite singular loci

const TRIALS: usize = 3;
const MAX_ATTEMPTS: usize = 12;

/// A projection of the singular locus from the centre of a random chart.
struct Projection {
    change: Mat3<Eis>,
    partials: [Form<Eis>; 3],
    directions: BinaryForm<Eis>,
}

fn random_change(rng: &mut ChaCha8Rng) -> Mat3<Eis> {
    loop {
        let entries: Vec<i64> = (0..9).map(|_| rng.gen_range(-3..=3)).collect();
        let m = Mat3::<Eis>::from_fn(|i, j| Eis::from(entries[3 * i + j]));
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Coefficients of `form(x0, x1, x2)` as a polynomial in `x2`, lowest first.
fn restrict_x2(form: &Form<Eis>, x0: &Eis, x1: &Eis, degree: usize) -> Vec<Eis> {
    let mut out = vec![Eis::from(0); degree + 1];
    for (e, c) in form.terms() {
        let v = c.clone() * &x0.pow(e[0]) * &x1.pow(e[1]);
        out[e[2] as usize] = out[e[2] as usize].clone() + v;
    }
    out
}

fn project(f: &TernaryCubic<Eis>, change: Mat3<Eis>) -> Option<Projection> {
    let g = act_by_inverse(&change, f);
    let partials = g.gradient();
    // the centre (0:0:1) must lie off every partial conic
    if partials.iter().any(|p| p.coeff([0, 0, 2]).is_zero()) {
        return None;
    }
    let mut directions = BinaryForm::new(4, Vec::new());
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let values: Vec<Eis> = (0..5)
            .map(|k| {
                let k = Eis::from(k);
                let one = Eis::from(1);
                let a = restrict_x2(&partials[i], &k, &one, 2);
                let b = restrict_x2(&partials[j], &k, &one, 2);
                linalg::det(&sylvester_matrix(&a, &b))
            })
            .collect();
        directions = directions.gcd(&BinaryForm::from_values(4, &values));
    }
    if directions.is_zero() {
        return None;
    }
    Some(Projection { change, partials, directions })
}

fn projections(f: &TernaryCubic<Eis>) -> Vec<Projection> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let mut out = Vec::new();
    for _ in 0..MAX_ATTEMPTS {
        if let Some(p) = project(f, random_change(&mut rng)) {
            out.push(p);
            if out.len() == TRIALS {
                break;
            }
        }
    }
    out
}

/// The most frequent count, falling back to the median.
fn consensus(counts: &[usize]) -> usize {
    let mut sorted = counts.to_vec();
    sorted.sort_unstable();
    for &c in &sorted {
        if sorted.iter().filter(|&&x| x == c).count() * 2 > sorted.len() {
            return c;
        }
    }
    sorted[sorted.len() / 2]
}

/// Roots in Q(w) of a squarefree polynomial, or `None` if some root is not in Q(w).
fn field_roots(p: &Poly<Eis>) -> Option<Vec<Eis>> {
    let p = p.monic();
    match p.degree()? {
        0 => Some(Vec::new()),
        1 => Some(vec![-p.coeffs()[0].clone()]),
        2 => {
            let (c, b) = (&p.coeffs()[0], &p.coeffs()[1]);
            let disc = b.clone() * b - Eis::from(4) * c;
            let s = disc.sqrt()?;
            let half = Eis::new(crate::scalar::Rat::new(1, 2), crate::scalar::Rat::zero());
            Some(vec![(s.clone() - b) * &half, (-s - b) * &half])
        }
        _ => {
            let numeric: Vec<_> = p.coeffs().iter().map(|c| c.embed()).collect();
            for z in complex_roots(&numeric) {
                let Some(r) = Eis::approximate(z, 1 << 24) else { continue };
                if p.eval(&r).is_zero() {
                    let (q, _) = p.div_rem(&Poly::new(vec![-r.clone(), Eis::from(1)]));
                    let mut rest = field_roots(&q)?;
                    rest.push(r);
                    return Some(rest);
                }
            }
            None
        }
    }
}

fn extension_degree(p: &Poly<Eis>) -> usize {
    p.degree().unwrap_or(1).max(2)
}

/// Lifts every direction of a projection to a singular point.
fn lift(f: &TernaryCubic<Eis>, proj: &Projection) -> Result<Vec<PPoint<Eis>>> {
    let sq = proj.directions.poly.squarefree();
    let mut dirs: Vec<(Eis, Eis)> = field_roots(&sq)
        .ok_or(Error::UnsupportedExtension { degree: extension_degree(&sq) })?
        .into_iter()
        .map(|t| (t, Eis::from(1)))
        .collect();
    if proj.directions.infinite_multiplicity() > 0 {
        dirs.push((Eis::from(1), Eis::from(0)));
    }
    let grad = f.gradient();
    let mut points = Vec::new();
    for (a, b) in dirs {
        let mut g = Poly::zero();
        for p in &proj.partials {
            g = g.gcd(&Poly::new(restrict_x2(p, &a, &b, 2)));
        }
        let g = g.squarefree();
        if g.degree() != Some(1) {
            return Err(Error::Consistency("singular direction does not lift to a unique point".into()));
        }
        let z = -g.coeffs()[0].clone();
        let q = proj.change.mul_vec(&[a, b, z]);
        if grad.iter().any(|d| !d.eval(&q).is_zero()) {
            return Err(Error::Consistency("lifted point is not singular".into()));
        }
        points.push(PPoint::new(q)?);
    }
    points.sort();
    Ok(points)
}

enum Locus {
    Line(PLine<Eis>),
    Finite { count: usize, projections: Vec<Projection> },
}

fn locus(f: &TernaryCubic<Eis>) -> Result<Locus> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if let Some(line) = double_line(f) {
        return Ok(Locus::Line(line));
    }
    let projections = projections(f);
    if projections.is_empty() {
        return Err(Error::Consistency("no generic projection found".into()));
    }
    let counts: Vec<usize> = projections.iter().map(|p| p.directions.distinct_root_count()).collect();
    let count = consensus(&counts);
    let projections = projections.into_iter().zip(counts).filter(|(_, c)| *c == count).map(|(p, _)| p).collect();
    Ok(Locus::Finite { count, projections })
}

/// The singular points of `C(f)`. Points outside Q(w) are reported as an
/// unsupported extension.
pub fn singular_points(f: &TernaryCubic<Eis>) -> Result<SingularLocus> {
    match locus(f)? {
        Locus::Line(line) => Ok(SingularLocus { points: Vec::new(), infinite: true, witness_line: Some(line) }),
        Locus::Finite { count: 0, .. } => Ok(SingularLocus { points: Vec::new(), infinite: false, witness_line: None }),
        Locus::Finite { projections, .. } => {
            let points = lift(f, &projections[0])?;
            Ok(SingularLocus { points, infinite: false, witness_line: None })
        }
    }
}

/// Type of the cubic through the local form at its unique singular point `p`.
fn classify_one_point(f: &TernaryCubic<Eis>, p: &PPoint<Eis>) -> Result<CubicType> {
    let c = p.coords();
    let unit = |i: usize| ints(std::array::from_fn(|k| i64::from(k == i)));
    let (a, b) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(a, b)| !Mat3::from_columns(&[unit(a), unit(b), c.clone()]).det().is_zero())
        .expect("some pair of unit vectors completes a basis");
    let m = Mat3::from_columns(&[unit(a), unit(b), c.clone()]);
    let g = act_by_inverse(&m, f);
    if [[0, 0, 3], [1, 0, 2], [0, 1, 2]].iter().any(|e| !g.coeff(*e).is_zero()) {
        return Err(Error::Consistency("point is not singular".into()));
    }
    let (qa, qb, qc) = (g.coeff([2, 0, 1]).clone(), g.coeff([1, 1, 1]).clone(), g.coeff([0, 2, 1]).clone());
    if qa.is_zero() && qb.is_zero() && qc.is_zero() {
        return Ok(CubicType::ThreeConcurrentLines);
    }
    let disc = qb.clone() * &qb - Eis::from(4) * &qa * &qc;
    if !disc.is_zero() {
        return Ok(CubicType::NodalCubic);
    }
    let l = if qa.is_zero() {
        Form::var(1)
    } else {
        Form::linear(&[Eis::from(2) * &qa, qb, Eis::from(0)])
    };
    let mut q3 = Form::zero();
    for e in [[3, 0, 0], [2, 1, 0], [1, 2, 0], [0, 3, 0]] {
        q3.add_term(e, g.coeff(e).clone());
    }
    if l.divides(&q3)? {
        Ok(CubicType::ConicPlusTangentLine)
    } else {
        Ok(CubicType::CuspidalCubic)
    }
}

pub fn classify(f: &TernaryCubic<Eis>) -> Result<CubicType> {
    match locus(f)? {
        Locus::Line(line) => {
            let l = Form::linear(line.coeffs());
            let (q, r) = f.to_form().div_rem(&l.mul(&l))?;
            debug_assert!(r.is_zero());
            if l.divides(&q)? {
                Ok(CubicType::TripleLine)
            } else {
                Ok(CubicType::DoubleLinePlusLine)
            }
        }
        Locus::Finite { count: 0, .. } => Ok(CubicType::Elliptic),
        Locus::Finite { count: 1, projections } => {
            let points = lift(f, &projections[0])?;
            classify_one_point(f, &points[0])
        }
        Locus::Finite { count: 2, .. } => Ok(CubicType::ConicPlusSecantLine),
        Locus::Finite { count: 3, .. } => Ok(CubicType::Triangle),
        Locus::Finite { count, .. } => Err(Error::Consistency(format!("a reduced cubic has at most 3 singular points, found {count}"))),
    }
}

pub fn is_elliptic(f: &TernaryCubic<Eis>) -> Result<bool> {
    Ok(classify(f)? == CubicType::Elliptic)
}

/// Whether the component `p = 0` of `C(f)` lies on the Hessian curve.
///
/// `p` must divide `f`; its degree may be 1, 2 or 3 so that an irreducible
/// cubic can be passed as its own single component.
pub fn component_in_flex_locus(p: &Form<Eis>, f: &TernaryCubic<Eis>) -> Result<bool> {
    let degrees = p.degrees();
    match degrees.as_slice() {
        [d] if (1..=3).contains(d) => {}
        [d] => return Err(Error::BadFactorDegree(*d)),
        [] => return Err(Error::ZeroForm),
        _ => return Err(Error::Consistency("factor is not homogeneous".into())),
    }
    if !p.divides(&f.to_form())? {
        return Err(Error::NotADivisor);
    }
    let h = hessian(f);
    Ok(h.is_zero() || p.divides(&h.to_form())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(terms: &[([u32; 3], i64)]) -> TernaryCubic<Eis> {
        TernaryCubic::from_int_terms(terms)
    }

    fn normal_forms(mu: Eis) -> Vec<(TernaryCubic<Eis>, CubicType)> {
        CubicType::ALL[1..].iter().map(|&t| (normal_form_cubic(t, &mu).unwrap(), t)).collect()
    }

    #[test]
    fn singular_locus_examples() {
        let fermat = cubic(&[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)]);
        let s = singular_points(&fermat).unwrap();
        assert!(s.points.is_empty() && !s.infinite);

        let s = singular_points(&cubic(&[([1, 1, 1], 1)])).unwrap();
        let expected: Vec<PPoint<Eis>> =
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|c| PPoint::from_i64(*c).unwrap()).collect();
        let mut got = s.points.clone();
        got.sort();
        let mut want = expected.clone();
        want.sort();
        assert_eq!(got, want);

        let s = singular_points(&cubic(&[([2, 1, 0], 1)])).unwrap();
        assert!(s.infinite && s.points.is_empty());
        assert_eq!(s.witness_line, Some(PLine::new(ints([1, 0, 0])).unwrap()));

        assert_eq!(singular_points(&TernaryCubic::zero()), Err(Error::ZeroForm));
    }

    #[test]
    fn normal_forms_get_their_own_tags() {
        for mu in [Eis::from(1), Eis::from(2), Eis::w()] {
            for (f, t) in normal_forms(mu.clone()) {
                assert_eq!(classify(&f).unwrap(), t, "{f}");
            }
        }
    }

    #[test]
    fn pencil_members() {
        let member = |l: Eis| {
            cubic(&[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)])
                .add(&cubic(&[([1, 1, 1], 1)]).scale(&l))
        };
        assert_eq!(classify(&member(Eis::from(-3))).unwrap(), CubicType::Triangle);
        assert_eq!(classify(&member(Eis::w().scale(&crate::scalar::Rat::integer(-3)))).unwrap(), CubicType::Triangle);
        assert!(is_elliptic(&member(Eis::from(1))).unwrap());
        assert!(!is_elliptic(&cubic(&[([3, 0, 0], 1)])).unwrap());
    }

    #[test]
    fn invariance_under_coordinate_change() {
        let g = Mat3::<Eis>::from_i64([[2, 1, 0], [1, 1, 3], [0, -1, 1]]);
        for (f, t) in normal_forms(Eis::from(1)) {
            let moved = crate::poly::act(&g, &f).unwrap();
            assert_eq!(classify(&moved).unwrap(), t);
        }
    }

    #[test]
    fn flex_locus_components() {
        let x = |i| Form::<Eis>::var(i);
        let conic = x(0).mul(&x(0)).sub(&x(1).mul(&x(2)));
        let h7 = TernaryCubic::from_form(&conic.mul(&x(1))).unwrap();
        assert!(component_in_flex_locus(&x(1), &h7).unwrap());
        assert!(!component_in_flex_locus(&conic, &h7).unwrap());
        let h6 = cubic(&[([2, 1, 0], 1), ([1, 2, 0], 1)]);
        assert!(component_in_flex_locus(&x(0), &h6).unwrap());
        assert_eq!(component_in_flex_locus(&x(2), &h6), Err(Error::NotADivisor));
        let triangle = cubic(&[([1, 1, 1], 1)]);
        assert!((0..3).all(|i| component_in_flex_locus(&x(i), &triangle).unwrap()));
    }

    #[test]
    fn tags_round_trip() {
        for t in CubicType::ALL {
            assert_eq!(t.tag().parse::<CubicType>().unwrap(), t);
        }
    }
}
