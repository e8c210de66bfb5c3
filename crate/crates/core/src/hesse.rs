//! The Hesse pencil `x0^3 + x1^3 + x2^3 + lambda x0 x1 x2`, its nine base
//! points and twelve lines, and reduction of smooth cubics into it.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::finitegeo::{ag23_lines, third_point, Pt, F3};
use crate::flexsolve::flexes_numeric;
use crate::linalg;
use crate::poly::{act, Form, TernaryCubic, CUBIC_MONOMIALS};
use crate::projective::{transform_from_frames, PLine, PPoint, PTransform};
use crate::scalar::{format_cf, Eis, Scalar, CF};

const CUBES: [[u32; 3]; 3] = [[3, 0, 0], [0, 3, 0], [0, 0, 3]];
const XYZ: [u32; 3] = [1, 1, 1];

#[derive(Clone, PartialEq, Debug)]
pub enum PencilParam<S> {
    Finite(S),
    Infinity,
}

impl fmt::Display for PencilParam<Eis> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PencilParam::Finite(l) => write!(f, "lambda = {l}"),
            PencilParam::Infinity => write!(f, "lambda = inf"),
        }
    }
}

impl fmt::Display for PencilParam<CF> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PencilParam::Finite(l) => write!(f, "lambda = {}", format_cf(l)),
            PencilParam::Infinity => write!(f, "lambda = inf"),
        }
    }
}

pub fn pencil_member(l: &PencilParam<Eis>) -> TernaryCubic<Eis> {
    match l {
        PencilParam::Finite(l) => {
            let mut f = TernaryCubic::from_int_terms(&[(CUBES[0], 1), (CUBES[1], 1), (CUBES[2], 1)]);
            f.coeffs[4] = l.clone();
            f
        }
        PencilParam::Infinity => TernaryCubic::from_int_terms(&[(XYZ, 1)]),
    }
}

/// The four parameters of singular members.
pub fn singular_parameters() -> [PencilParam<Eis>; 4] {
    let m3 = Eis::from(-3);
    [
        PencilParam::Infinity,
        PencilParam::Finite(m3.clone()),
        PencilParam::Finite(m3.clone() * Eis::w()),
        PencilParam::Finite(m3 * Eis::w2()),
    ]
}

/// The three lines making up a singular member, or `None` for a smooth one.
pub fn singular_member_lines(l: &PencilParam<Eis>) -> Option<[PLine<Eis>; 3]> {
    let pos = singular_parameters().iter().position(|p| p == l)?;
    let lines = &hesse_config().lines;
    Some(std::array::from_fn(|k| lines[3 * pos + k].clone()))
}

/// Exact pencil membership.
pub fn in_pencil(f: &TernaryCubic<Eis>) -> Option<PencilParam<Eis>> {
    if f.is_zero() {
        return None;
    }
    let others_vanish = CUBIC_MONOMIALS
        .iter()
        .filter(|e| !CUBES.contains(e) && **e != XYZ)
        .all(|e| f.coeff(*e).is_zero());
    let a = f.coeff(CUBES[0]);
    if !others_vanish || f.coeff(CUBES[1]) != a || f.coeff(CUBES[2]) != a {
        return None;
    }
    match a.inv() {
        Some(inv) => Some(PencilParam::Finite(f.coeff(XYZ).clone() * &inv)),
        None => Some(PencilParam::Infinity),
    }
}

/// Nearest pencil parameter and the relative size of the part of `f`
/// off the pencil.
pub fn pencil_fit(f: &TernaryCubic<CF>) -> (PencilParam<CF>, f64) {
    let scale = f.max_abs();
    if scale == 0.0 {
        return (PencilParam::Infinity, f64::INFINITY);
    }
    let cubes: Vec<CF> = CUBES.iter().map(|e| *f.coeff(*e)).collect();
    let a = (cubes[0] + cubes[1] + cubes[2]) / 3.0;
    let mut off: f64 = cubes.iter().map(|c| (c - a).norm()).fold(0.0, f64::max);
    for e in CUBIC_MONOMIALS.iter().filter(|e| !CUBES.contains(e) && **e != XYZ) {
        off = off.max(f.coeff(*e).norm());
    }
    let c = *f.coeff(XYZ);
    let param = if a.norm() > 1e-12 * scale { PencilParam::Finite(c / a) } else { PencilParam::Infinity };
    (param, off / scale)
}

/// Numeric pencil membership with tolerance `tol` relative to the largest coefficient.
pub fn in_pencil_numeric(f: &TernaryCubic<CF>, tol: f64) -> Option<PencilParam<CF>> {
    let (p, r) = pencil_fit(f);
    (r <= tol).then_some(p)
}

// ---------------------------------------------------------------------------
// configuration

/// The base point `t_{i,j}`.
pub fn flex(p: Pt) -> PPoint<Eis> {
    let wj = -Eis::w().pow(u32::from(p.1.value()));
    let (z, o) = (Eis::from(0), Eis::from(1));
    let c = match p.0.value() {
        0 => [z, wj, o],
        1 => [o, z, wj],
        _ => [wj, o, z],
    };
    PPoint::new(c).expect("nonzero")
}

fn line_forms() -> [[Eis; 3]; 12] {
    let (z, o, w, w2) = (Eis::from(0), Eis::from(1), Eis::w(), Eis::w2());
    [
        [o.clone(), z.clone(), z.clone()],
        [z.clone(), o.clone(), z.clone()],
        [z.clone(), z, o.clone()],
        [o.clone(), o.clone(), o.clone()],
        [o.clone(), w.clone(), w2.clone()],
        [o.clone(), w2.clone(), w.clone()],
        [o.clone(), o.clone(), w.clone()],
        [o.clone(), w.clone(), o.clone()],
        [o.clone(), w2.clone(), w2.clone()],
        [o.clone(), o.clone(), w2.clone()],
        [o.clone(), w.clone(), w],
        [o.clone(), w2, o],
    ]
}

#[derive(Clone, Debug)]
pub struct HesseConfig {
    /// `flexes[k]` is `t_{i,j}` with `k = 3 i + j`.
    pub flexes: Vec<PPoint<Eis>>,
    /// Three lines per singular member, in the order of [`singular_parameters`].
    pub lines: Vec<PLine<Eis>>,
    pub incidence: Vec<[bool; 9]>,
}

impl HesseConfig {
    fn build() -> Self {
        let flexes: Vec<PPoint<Eis>> = Pt::all().into_iter().map(flex).collect();
        let lines: Vec<PLine<Eis>> = line_forms().into_iter().map(|c| PLine::new(c).expect("nonzero")).collect();
        let incidence = lines.iter().map(|l| std::array::from_fn(|k| l.contains(&flexes[k]))).collect();
        HesseConfig { flexes, lines, incidence }
    }

    pub fn points_on(&self, line: usize) -> Vec<usize> {
        (0..9).filter(|&k| self.incidence[line][k]).collect()
    }

    pub fn lines_through(&self, k: usize) -> Vec<usize> {
        (0..self.lines.len()).filter(|&l| self.incidence[l][k]).collect()
    }

    /// The third flex on the line through flexes `a != b`.
    pub fn third(&self, a: usize, b: usize) -> usize {
        let l = (0..self.lines.len())
            .find(|&l| self.incidence[l][a] && self.incidence[l][b])
            .expect("every pair of flexes spans a line of the configuration");
        self.points_on(l).into_iter().find(|&k| k != a && k != b).expect("three flexes per line")
    }

    pub fn incidence_count(&self) -> usize {
        self.incidence.iter().map(|r| r.iter().filter(|&&b| b).count()).sum()
    }
}

pub fn hesse_config() -> &'static HesseConfig {
    static CONFIG: OnceLock<HesseConfig> = OnceLock::new();
    CONFIG.get_or_init(HesseConfig::build)
}

/// Builds the configuration and checks its incidence properties.
pub fn incidence_report() -> Result<HesseConfig> {
    let c = HesseConfig::build();
    let fail = |m: String| Err(Error::Consistency(m));
    for (l, _) in c.lines.iter().enumerate() {
        if c.points_on(l).len() != 3 {
            return fail(format!("line {l} does not contain exactly three flexes"));
        }
    }
    for k in 0..9 {
        if c.lines_through(k).len() != 4 {
            return fail(format!("flex {} is not on exactly four lines", Pt::from_index(k)));
        }
    }
    for a in 0..9 {
        for b in a + 1..9 {
            let line = crate::projective::line_through(&c.flexes[a], &c.flexes[b])?;
            if !c.lines.contains(&line) {
                return fail(format!("line through flexes {a} and {b} is not in the configuration"));
            }
        }
    }
    if c.incidence_count() != 36 {
        return fail("incidence count differs from 36".into());
    }
    for (k, param) in singular_parameters().iter().enumerate() {
        let product = (0..3).fold(Form::constant(Eis::from(1)), |acc, i| acc.mul(&Form::linear(c.lines[3 * k + i].coeffs())));
        if TernaryCubic::from_form(&product)? != pencil_member(param) {
            return fail(format!("lines do not multiply to the member {param}"));
        }
    }
    Ok(c)
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub rank: usize,
    pub basis: Vec<TernaryCubic<Eis>>,
}

impl LinearSystem {
    /// Whether the basis spans exactly the pencil.
    pub fn is_pencil(&self) -> bool {
        let pencil = [pencil_member(&PencilParam::Finite(Eis::from(0))), pencil_member(&PencilParam::Infinity)];
        let rows = |v: &[TernaryCubic<Eis>]| v.iter().map(|f| f.coeffs.to_vec()).collect::<Vec<_>>();
        let mut both = rows(&self.basis);
        both.extend(rows(&pencil));
        linalg::rank(&rows(&self.basis)) == 2 && linalg::rank(&both) == 2
    }
}

/// Cubics through the nine flexes: the kernel of the evaluation matrix.
pub fn cubics_through_flexes() -> LinearSystem {
    let rows: Vec<Vec<Eis>> = hesse_config()
        .flexes
        .iter()
        .map(|p| CUBIC_MONOMIALS.iter().map(|e| Form::monomial(Eis::from(1), *e).eval(p.coords())).collect())
        .collect();
    let rank = linalg::rank(&rows);
    let basis = linalg::kernel(&rows, 10)
        .into_iter()
        .map(|v| TernaryCubic::new(std::array::from_fn(|i| v[i].clone())))
        .collect();
    LinearSystem { rank, basis }
}

/// Chord-tangent addition of flexes with origin `o`, read off the incidence table.
pub fn flex_add(a: Pt, b: Pt, o: Pt) -> Pt {
    let c = hesse_config();
    let (a, b, o) = (a.index(), b.index(), o.index());
    let third_with_o = |x: usize| if x == o { o } else { c.third(x, o) };
    let r = if a != b { third_with_o(c.third(a, b)) } else { third_with_o(a) };
    Pt::from_index(r)
}

// ---------------------------------------------------------------------------
// normal form

/// The frame `t_{0,0}, t_{1,0}, t_{1,1}, t_{2,1}`.
pub const FRAME: [Pt; 4] = [Pt(F3::ZERO, F3::ZERO), Pt(F3::ONE, F3::ZERO), Pt(F3::ONE, F3::ONE), Pt(F3::TWO, F3::ONE)];

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub transform: PTransform<CF>,
    pub param: PencilParam<CF>,
    pub residual: f64,
    /// Label in F3^2 of each numeric flex, aligned with `flexes`.
    pub labels: Vec<Pt>,
    pub flexes: Vec<PPoint<CF>>,
}

const COLLINEAR_TOL: f64 = 1e-6;
const MATCH_TOL: f64 = 1e-6;

fn det_unit(p: &PPoint<CF>, q: &PPoint<CF>, r: &PPoint<CF>) -> f64 {
    let (a, b, c) = (p.coords(), q.coords(), r.coords());
    (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])).norm()
}

/// The 12 collinear triples of nine numeric points, if they form an AG(2,3).
fn collinear_triples(points: &[PPoint<CF>]) -> Result<Vec<[usize; 3]>> {
    let mut scored = Vec::new();
    for i in 0..9 {
        for j in i + 1..9 {
            for k in j + 1..9 {
                scored.push((det_unit(&points[i], &points[j], &points[k]), [i, j, k]));
            }
        }
    }
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    if scored[11].0 > COLLINEAR_TOL || scored[12].0 < COLLINEAR_TOL {
        return Err(Error::LabelingNotFound);
    }
    let triples: Vec<[usize; 3]> = scored[..12].iter().map(|s| s.1).collect();
    for a in 0..9 {
        for b in a + 1..9 {
            if triples.iter().filter(|t| t.contains(&a) && t.contains(&b)).count() != 1 {
                return Err(Error::LabelingNotFound);
            }
        }
    }
    Ok(triples)
}

/// A bijection from point indices to F3^2 carrying the triples onto lines.
fn label_points(triples: &[[usize; 3]]) -> Result<Vec<Pt>> {
    let third = |a: usize, b: usize| -> usize {
        let t = triples.iter().find(|t| t.contains(&a) && t.contains(&b)).expect("pair covered");
        t.iter().copied().find(|&k| k != a && k != b).expect("three points")
    };
    let mut label: Vec<Option<Pt>> = vec![None; 9];
    label[0] = Some(Pt::new(0, 0));
    label[1] = Some(Pt::new(1, 0));
    let off = (2..9).find(|&k| k != third(0, 1)).expect("nine points");
    label[off] = Some(Pt::new(0, 1));
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..9 {
            for b in 0..9 {
                if let (true, Some(la), Some(lb)) = (a != b, label[a], label[b]) {
                    let c = third(a, b);
                    if label[c].is_none() {
                        label[c] = Some(third_point(la, lb));
                        changed = true;
                    }
                }
            }
        }
    }
    let labels: Vec<Pt> = label.into_iter().collect::<Option<_>>().ok_or(Error::LabelingNotFound)?;
    let mut seen = labels.clone();
    seen.sort();
    seen.dedup();
    let lines = ag23_lines();
    let consistent = triples.iter().all(|t| {
        let mut image = t.map(|k| labels[k]);
        image.sort();
        lines.contains(&image)
    });
    if seen.len() != 9 || !consistent {
        return Err(Error::LabelingNotFound);
    }
    Ok(labels)
}

fn realize_labeling(points: &[PPoint<CF>], labels: &[Pt]) -> Option<PTransform<CF>> {
    let pick = |p: Pt| labels.iter().position(|&l| l == p).map(|k| points[k].clone());
    let src: [PPoint<CF>; 4] = [pick(FRAME[0])?, pick(FRAME[1])?, pick(FRAME[2])?, pick(FRAME[3])?];
    let dst: [PPoint<CF>; 4] = FRAME.map(|p| flex(p).to_cf());
    let t = transform_from_frames(&src, &dst).ok()?;
    let all_match = points.iter().zip(labels).all(|(p, &l)| t.apply(p).distance(&flex(l).to_cf()) < MATCH_TOL);
    all_match.then_some(t)
}

/// A projective transformation `T` with `T . f` in the Hesse pencil.
pub fn to_hesse_normal_form(f: &TernaryCubic<CF>, seed: u64, tol: f64) -> Result<NormalForm> {
    let result = flexes_numeric(f, seed, tol)?;
    let flexes: Vec<PPoint<CF>> = result.points.iter().filter(|p| !p.singular).map(|p| p.point.clone()).collect();
    if result.dim != 0 || flexes.len() != 9 {
        return Err(Error::Numeric(format!("expected 9 flexes of a smooth cubic, found {}", flexes.len())));
    }
    let triples = collinear_triples(&flexes)?;
    let labels = label_points(&triples)?;
    // half of all labelings differ from a realizable one by the conjugation map (i, j) -> (i, 2j)
    let conjugate: Vec<Pt> = labels.iter().map(|p| Pt(p.0, p.1 + p.1)).collect();
    let (transform, labels) = match realize_labeling(&flexes, &labels) {
        Some(t) => (t, labels),
        None => (realize_labeling(&flexes, &conjugate).ok_or(Error::LabelingNotFound)?, conjugate),
    };
    let image = act(transform.matrix(), f)?;
    let (param, residual) = pencil_fit(&image);
    if residual > tol {
        return Err(Error::ResidualTooLarge { residual, tol });
    }
    Ok(NormalForm { transform, param, residual, labels, flexes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::collinear;
    use crate::poly::Mat3;
    use crate::scalar::Rat;

    #[test]
    fn members() {
        let fermat = pencil_member(&PencilParam::Finite(Eis::from(0)));
        assert_eq!(fermat, TernaryCubic::from_int_terms(&[(CUBES[0], 1), (CUBES[1], 1), (CUBES[2], 1)]));
        assert_eq!(pencil_member(&PencilParam::Infinity), TernaryCubic::from_int_terms(&[(XYZ, 1)]));
        let five = fermat.add(&TernaryCubic::from_int_terms(&[(XYZ, 5)]));
        assert_eq!(in_pencil(&five), Some(PencilParam::Finite(Eis::from(5))));
        assert_eq!(in_pencil(&fermat.add(&TernaryCubic::from_int_terms(&[([2, 1, 0], 1)]))), None);
        assert_eq!(in_pencil(&TernaryCubic::from_int_terms(&[(XYZ, 3)])), Some(PencilParam::Infinity));
        let g1 = Mat3::<Eis>::from_i64([[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
        let moved = act(&g1, &pencil_member(&PencilParam::Finite(Eis::from(1)))).unwrap();
        assert!(in_pencil(&moved).is_some());
        assert_eq!(PencilParam::Finite(Eis::w()).to_string(), "lambda = w");
        assert_eq!(PencilParam::<Eis>::Infinity.to_string(), "lambda = inf");
    }

    #[test]
    fn configuration() {
        let c = incidence_report().unwrap();
        assert_eq!(c.lines.len(), 12);
        assert_eq!(c.points_on(0), vec![0, 1, 2]);
        assert_eq!(c.lines_through(0).len(), 4);
        assert_eq!(c.incidence_count(), 36);
        for p in singular_parameters() {
            assert!(singular_member_lines(&p).is_some());
        }
        assert!(singular_member_lines(&PencilParam::Finite(Eis::from(1))).is_none());
        assert!(collinear(&c.flexes[0], &c.flexes[1], &c.flexes[2]));
    }

    #[test]
    fn linear_system() {
        let s = cubics_through_flexes();
        assert_eq!(s.rank, 8);
        assert_eq!(s.basis.len(), 2);
        assert!(s.is_pencil());
    }

    #[test]
    fn group_law() {
        let o = Pt::new(0, 0);
        for a in Pt::all() {
            assert_eq!(flex_add(o, a, o), a);
            assert_eq!(flex_add(flex_add(a, a, o), a, o), o);
            for b in Pt::all() {
                assert_eq!(flex_add(a, b, o), a + b);
            }
        }
        assert_eq!(flex_add(Pt::new(1, 0), Pt::new(0, 1), o), Pt::new(1, 1));
    }

    #[test]
    fn normal_form_of_a_translate() {
        let f = pencil_member(&PencilParam::Finite(Eis::new(Rat::integer(2), Rat::zero()))).to_cf();
        let g = Mat3::<CF>::from_fn(|i, j| CF::new((i * 3 + j) as f64 * 0.1 + if i == j { 1.0 } else { 0.0 }, 0.05 * (i as f64 - j as f64)));
        let moved = act(&g, &f).unwrap();
        let nf = to_hesse_normal_form(&moved, 0, 1e-6).unwrap();
        assert!(nf.residual < 1e-6);
        let nf = to_hesse_normal_form(&pencil_member(&PencilParam::Finite(Eis::from(1))).to_cf(), 0, 1e-6).unwrap();
        assert!(nf.residual < 1e-8);
    }
}
