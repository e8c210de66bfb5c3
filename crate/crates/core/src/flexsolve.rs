//! Numeric intersection of a cubic with its Hessian curve, and the
//! dimension of that intersection for exact cubics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::linalg::det_cf;
use crate::poly::{act_by_inverse, hessian, Form, Mat3, TernaryCubic};
use crate::projective::PPoint;
use crate::scalar::{Eis, CF};
use crate::upoly::{complex_roots, sylvester_matrix};

pub const DEFAULT_TOL: f64 = 1e-6;

const SAMPLES: usize = 16;
const LEAD_THRESHOLD: f64 = 1e-10;
const ZERO_RESULTANT: f64 = 1e-10;
const CLUSTER_RADIUS: f64 = 1e-3;
const SINGULAR_GRADIENT: f64 = 1e-6;
const MAX_NEWTON: usize = 40;
const NEWTON_STEP: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct FlexPoint {
    pub point: PPoint<CF>,
    /// `|f(p)|` relative to the largest coefficient of `f`, with `|p| = 1`.
    pub residual_f: f64,
    /// Same for the Hessian.
    pub residual_h: f64,
    /// The gradient of `f` vanishes here: a singular point of the curve.
    pub singular: bool,
    pub converged: bool,
}

impl FlexPoint {
    pub fn residual(&self) -> f64 {
        self.residual_f.max(self.residual_h)
    }
}

#[derive(Clone, Debug)]
pub struct FlexResult {
    pub points: Vec<FlexPoint>,
    pub multiplicity_warning: bool,
    pub dim: u8,
}

impl FlexResult {
    pub fn smooth_points(&self) -> impl Iterator<Item = &FlexPoint> {
        self.points.iter().filter(|p| !p.singular)
    }
}

fn normalized(f: &TernaryCubic<CF>) -> TernaryCubic<CF> {
    let m = f.max_abs();
    f.map(|c| c / m)
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> Mat3<CF> {
    loop {
        let mut cols: Vec<[CF; 3]> = Vec::new();
        for _ in 0..3 {
            let mut v: [CF; 3] = std::array::from_fn(|_| CF::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            for u in &cols {
                let ip: CF = (0..3).map(|i| u[i].conj() * v[i]).sum();
                for i in 0..3 {
                    v[i] -= ip * u[i];
                }
            }
            let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if n < 1e-3 {
                break;
            }
            cols.push(v.map(|x| x / n));
        }
        if cols.len() == 3 {
            let m = Mat3::from_columns(&[cols[0], cols[1], cols[2]]);
            let scale = m.det().powf(-1.0 / 3.0);
            return m.scale(&scale);
        }
    }
}

fn coeffs_in_x2(f: &Form<CF>, x0: CF, x1: CF) -> Vec<CF> {
    let mut out = vec![CF::new(0.0, 0.0); 4];
    for (e, c) in f.terms() {
        out[e[2] as usize] += c * x0.powu(e[0]) * x1.powu(e[1]);
    }
    out
}

/// Coefficients of `Res_x2(f, h)(t, 1)` as a polynomial in `t`, by sampling
/// on the unit circle and inverting the discrete Fourier transform.
fn resultant_in_t(f: &Form<CF>, h: &Form<CF>) -> Vec<CF> {
    let one = CF::new(1.0, 0.0);
    let nodes: Vec<CF> = (0..SAMPLES)
        .map(|k| CF::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / SAMPLES as f64))
        .collect();
    let values: Vec<CF> = nodes
        .iter()
        .map(|&t| det_cf(&sylvester_matrix(&coeffs_in_x2(f, t, one), &coeffs_in_x2(h, t, one))))
        .collect();
    (0..=9)
        .map(|j| {
            let s: CF = nodes.iter().zip(&values).map(|(z, v)| v * z.powu(j as u32).conj()).sum();
            s / SAMPLES as f64
        })
        .collect()
}

struct System {
    f: Form<CF>,
    h: Form<CF>,
    df: [Form<CF>; 3],
    dh: [Form<CF>; 3],
}

impl System {
    fn new(f: &TernaryCubic<CF>, h: &TernaryCubic<CF>) -> Self {
        System { f: f.to_form(), h: h.to_form(), df: f.gradient(), dh: h.gradient() }
    }

    fn unit(p: &[CF; 3]) -> [CF; 3] {
        let n = p.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        p.map(|x| x / n)
    }

    fn residuals(&self, p: &[CF; 3]) -> (f64, f64) {
        let u = Self::unit(p);
        (self.f.eval(&u).norm(), self.h.eval(&u).norm())
    }

    fn gradient_norm(&self, p: &[CF; 3]) -> f64 {
        let u = Self::unit(p);
        self.df.iter().map(|d| d.eval(&u).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Newton iteration with the largest coordinate pinned to 1.
    fn refine(&self, start: [CF; 3]) -> ([CF; 3], bool) {
        let k = (0..3).max_by(|&a, &b| start[a].norm().total_cmp(&start[b].norm())).unwrap();
        let free: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let mut p = start.map(|x| x / start[k]);
        let size = |p: &[CF; 3]| {
            let (a, b) = self.residuals(p);
            a.max(b)
        };
        let mut res = size(&p);
        for _ in 0..MAX_NEWTON {
            let fv = self.f.eval(&p);
            let hv = self.h.eval(&p);
            let j = [
                [self.df[free[0]].eval(&p), self.df[free[1]].eval(&p)],
                [self.dh[free[0]].eval(&p), self.dh[free[1]].eval(&p)],
            ];
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det.norm() < 1e-300 {
                break;
            }
            let s0 = (j[1][1] * fv - j[0][1] * hv) / det;
            let s1 = (j[0][0] * hv - j[1][0] * fv) / det;
            let mut next = p;
            next[free[0]] -= s0;
            next[free[1]] -= s1;
            let next_res = size(&next);
            if !next_res.is_finite() || next_res > 10.0 * res.max(1e-300) {
                break;
            }
            p = next;
            res = next_res;
            if s0.norm().max(s1.norm()) < NEWTON_STEP {
                return (p, true);
            }
        }
        (p, res < 1e-10)
    }
}

fn attempt(f: &TernaryCubic<CF>, h: &TernaryCubic<CF>, change: &Mat3<CF>, tol: f64) -> Option<FlexResult> {
    let g = normalized(&act_by_inverse(change, f));
    let gh = normalized(&act_by_inverse(change, h));
    let coeffs = resultant_in_t(&g.to_form(), &gh.to_form());
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale < ZERO_RESULTANT {
        return Some(FlexResult { points: Vec::new(), multiplicity_warning: false, dim: 1 });
    }
    if coeffs[9].norm() < LEAD_THRESHOLD * scale {
        return None;
    }
    let roots = complex_roots(&coeffs);
    let mut multiplicity_warning = false;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i] - roots[j]).norm() < CLUSTER_RADIUS * roots[i].norm().max(1.0) {
                multiplicity_warning = true;
            }
        }
    }

    let gf = g.to_form();
    let ghf = gh.to_form();
    let system = System::new(f, h);
    let one = CF::new(1.0, 0.0);
    let mut found: Vec<FlexPoint> = Vec::new();
    for t in roots {
        let (x0, x1) = if t.norm() <= 1.0 { (t, one) } else { (one, one / t) };
        let cubic = coeffs_in_x2(&gf, x0, x1);
        let hv = |z: CF| ghf.eval(&[x0, x1, z]).norm();
        let lifted = if cubic[3].norm() < 1e-14 {
            Vec::new()
        } else {
            complex_roots(&cubic)
        };
        let Some(z) = lifted.into_iter().min_by(|a, b| hv(*a).total_cmp(&hv(*b))) else {
            continue;
        };
        let q = change.mul_vec(&[x0, x1, z]);
        let (p, converged) = system.refine(q);
        let (residual_f, residual_h) = system.residuals(&p);
        let singular = system.gradient_norm(&p) < SINGULAR_GRADIENT.max(tol);
        let Ok(point) = PPoint::new(p) else { continue };
        found.push(FlexPoint { point, residual_f, residual_h, singular, converged });
    }

    let mut points: Vec<FlexPoint> = Vec::new();
    for cand in found {
        let radius = if cand.singular { tol.sqrt() } else { tol };
        match points.iter_mut().find(|p| p.point.distance(&cand.point) < radius.max(if p.singular { tol.sqrt() } else { tol })) {
            Some(existing) => {
                multiplicity_warning = true;
                if cand.residual() < existing.residual() {
                    *existing = cand;
                }
            }
            None => points.push(cand),
        }
    }
    points.sort_by(|a, b| {
        let ka: Vec<f64> = a.point.coords().iter().flat_map(|c| [c.re, c.im]).collect();
        let kb: Vec<f64> = b.point.coords().iter().flat_map(|c| [c.re, c.im]).collect();
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    Some(FlexResult { points, multiplicity_warning, dim: 0 })
}

/// The intersection of `C(f)` with its Hessian curve, singular points included.
pub fn flexes_numeric(f: &TernaryCubic<CF>, seed: u64, tol: f64) -> Result<FlexResult> {
    if f.max_abs() == 0.0 {
        return Err(Error::ZeroForm);
    }
    let f = normalized(f);
    let h = hessian(&f);
    if h.max_abs() < ZERO_RESULTANT {
        return Ok(FlexResult { points: Vec::new(), multiplicity_warning: false, dim: 1 });
    }
    let h = normalized(&h);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..2 {
        let change = random_unimodular(&mut rng);
        if let Some(r) = attempt(&f, &h, &change, tol) {
            return Ok(r);
        }
    }
    Err(Error::Numeric("resultant has a vanishing leading coefficient in two random charts".into()))
}

/// 1 when the flex locus is a curve, which happens exactly for reducible cubics.
pub fn fl_dimension(f: &TernaryCubic<Eis>) -> Result<u8> {
    Ok(u8::from(classify(f)?.is_reducible()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct FiberProfile {
    pub in_j: bool,
    pub fiber_dim: u8,
}

/// Dimension of the fibre over `f` of the variety of (cubic, flex) pairs.
pub fn fiber_profile(f: &TernaryCubic<Eis>) -> Result<FiberProfile> {
    let d = fl_dimension(f)?;
    Ok(FiberProfile { in_j: d == 1, fiber_dim: d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat() -> TernaryCubic<Eis> {
        TernaryCubic::from_int_terms(&[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)])
    }

    fn flex_points() -> Vec<PPoint<CF>> {
        let mut out = Vec::new();
        for j in 0..3 {
            let wj = Eis::w().pow(j);
            let z = Eis::from(0);
            let o = Eis::from(1);
            for c in [[z.clone(), -wj.clone(), o.clone()], [o.clone(), z.clone(), -wj.clone()], [-wj.clone(), o, z]] {
                out.push(PPoint::new(c).unwrap().to_cf());
            }
        }
        out
    }

    #[test]
    fn fermat_flexes() {
        for f in [fermat(), fermat().add(&TernaryCubic::from_int_terms(&[([1, 1, 1], 1)]))] {
            let r = flexes_numeric(&f.to_cf(), 0, DEFAULT_TOL).unwrap();
            assert_eq!(r.dim, 0);
            assert_eq!(r.points.len(), 9);
            for t in flex_points() {
                assert!(r.points.iter().any(|p| p.point.distance(&t) < 1e-8));
            }
            assert!(r.points.iter().all(|p| p.residual() < 1e-8 && !p.singular));
        }
    }

    #[test]
    fn nodal_cubic_contains_the_node() {
        let f = TernaryCubic::<Eis>::from_int_terms(&[([0, 2, 1], 1), ([3, 0, 0], -1), ([2, 0, 1], -1)]);
        let r = flexes_numeric(&f.to_cf(), 0, DEFAULT_TOL).unwrap();
        assert_eq!(r.dim, 0);
        let node = PPoint::<CF>::from_i64([0, 0, 1]).unwrap();
        assert!(r.points.iter().any(|p| p.singular && p.point.distance(&node) < 1e-4));
        assert_eq!(r.smooth_points().count(), 3);
        assert!(r.multiplicity_warning);
    }

    #[test]
    fn reducible_cubics_have_curves_of_flexes() {
        let triangle = TernaryCubic::<Eis>::from_int_terms(&[([1, 1, 1], 1)]);
        assert_eq!(flexes_numeric(&triangle.to_cf(), 0, DEFAULT_TOL).unwrap().dim, 1);
        assert_eq!(fl_dimension(&TernaryCubic::from_int_terms(&[([2, 1, 0], 1)])).unwrap(), 1);
        let cusp = TernaryCubic::<Eis>::from_int_terms(&[([0, 2, 1], 1), ([3, 0, 0], -1)]);
        assert_eq!(fl_dimension(&cusp).unwrap(), 0);
        assert_eq!(fiber_profile(&fermat()).unwrap(), FiberProfile { in_j: false, fiber_dim: 0 });
        assert_eq!(fiber_profile(&triangle).unwrap(), FiberProfile { in_j: true, fiber_dim: 1 });
    }

    #[test]
    fn deterministic_for_a_seed() {
        let f = TernaryCubic::<Eis>::from_int_terms(&[([3, 0, 0], 2), ([1, 1, 1], 5), ([0, 1, 2], -3), ([0, 3, 0], 1), ([0, 0, 3], 7)]);
        let a = flexes_numeric(&f.to_cf(), 7, DEFAULT_TOL).unwrap();
        let b = flexes_numeric(&f.to_cf(), 7, DEFAULT_TOL).unwrap();
        assert_eq!(a.points.len(), 9);
        for (p, q) in a.points.iter().zip(&b.points) {
            assert_eq!(p.point.coords(), q.point.coords());
        }
    }
}
