//! The Hessian group: the 216 projective transformations preserving the
//! Hesse pencil, and its action on the nine flexes.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::finitegeo::{AffMap3, Pt};
use crate::hesse::{flex, hesse_config, in_pencil, pencil_member, PencilParam, FRAME};
use crate::poly::{act, Mat3};
use crate::projective::{transform_from_frames, PTransform};
use crate::scalar::{Eis, Scalar};

pub const HES_ORDER: usize = 216;
const CLOSURE_LIMIT: usize = 500;

/// The five generators: cyclic shift, swap of x1 and x2, diag(1,w,w^2),
/// diag(1,w,w) and the Fourier matrix.
pub fn generators() -> [PTransform<Eis>; 5] {
    let (o, w, w2) = (Eis::from(1), Eis::w(), Eis::w2());
    let mats = [
        Mat3::from_i64([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
        Mat3::from_i64([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
        Mat3::diag([o.clone(), w.clone(), w2.clone()]),
        Mat3::diag([o.clone(), w.clone(), w.clone()]),
        Mat3::new([[o.clone(), o.clone(), o.clone()], [o.clone(), w.clone(), w2.clone()], [o, w2, w]]),
    ];
    mats.map(|m| PTransform::new(m).expect("generators are invertible"))
}

/// `perm[k]` is the index of the flex `t . flex(k)`, if `t` permutes the flexes.
pub fn flex_permutation(t: &PTransform<Eis>) -> Option<[usize; 9]> {
    let flexes = &hesse_config().flexes;
    let mut perm = [0usize; 9];
    for (k, p) in flexes.iter().enumerate() {
        let image = t.apply(p);
        perm[k] = flexes.iter().position(|q| *q == image)?;
    }
    Some(perm)
}

#[derive(Clone, Debug)]
pub struct HesElement {
    pub transform: PTransform<Eis>,
    pub flex_perm: [usize; 9],
    pub theta_image: AffMap3,
}

impl HesElement {
    fn new(transform: PTransform<Eis>) -> Result<Self> {
        let flex_perm = flex_permutation(&transform).ok_or(Error::NotAffine)?;
        let theta_image = AffMap3::from_permutation(&flex_perm)?;
        Ok(HesElement { transform, flex_perm, theta_image })
    }
}

impl fmt::Display for HesElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  theta = {}", self.transform, self.theta_image)
    }
}

pub struct HesGroupTable {
    pub elements: Vec<HesElement>,
    pub index: HashMap<PTransform<Eis>, usize>,
    /// `cayley[a][b]` is the index of `elements[a] . elements[b]`.
    pub cayley: Vec<Vec<u16>>,
    by_perm: HashMap<[usize; 9], usize>,
}

/// Breadth-first closure of the generators.
pub fn enumerate_hes() -> Result<HesGroupTable> {
    let gens = generators();
    let mut elements = vec![HesElement::new(PTransform::identity())?];
    let mut index = HashMap::new();
    index.insert(PTransform::identity(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let t = g.compose(&elements[i].transform);
            if index.contains_key(&t) {
                continue;
            }
            if elements.len() >= CLOSURE_LIMIT {
                return Err(Error::ClosureOverflow(CLOSURE_LIMIT));
            }
            index.insert(t.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(HesElement::new(t)?);
        }
    }
    let by_perm: HashMap<[usize; 9], usize> = elements.iter().enumerate().map(|(i, e)| (e.flex_perm, i)).collect();
    if by_perm.len() != elements.len() {
        return Err(Error::Consistency("two group elements induce the same flex permutation".into()));
    }
    let n = elements.len();
    let mut cayley = vec![vec![0u16; n]; n];
    for a in 0..n {
        for b in 0..n {
            let (pa, pb) = (&elements[a].flex_perm, &elements[b].flex_perm);
            let ab: [usize; 9] = std::array::from_fn(|k| pa[pb[k]]);
            cayley[a][b] = *by_perm.get(&ab).ok_or(Error::NotAGroup)? as u16;
        }
    }
    Ok(HesGroupTable { elements, index, cayley, by_perm })
}

/// The group table, built on first use.
pub fn hes_table() -> &'static HesGroupTable {
    static TABLE: OnceLock<HesGroupTable> = OnceLock::new();
    TABLE.get_or_init(|| enumerate_hes().expect("the Hessian group closes"))
}

impl HesGroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn find(&self, t: &PTransform<Eis>) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn find_by_permutation(&self, perm: &[usize; 9]) -> Option<usize> {
        self.by_perm.get(perm).copied()
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b] as usize
    }

    /// Indices of the elements fixing `t_{i,j}`.
    pub fn stabilizer(&self, p: Pt) -> Vec<usize> {
        let k = p.index();
        (0..self.order()).filter(|&i| self.elements[i].flex_perm[k] == k).collect()
    }

    pub fn theta_images(&self, indices: &[usize]) -> Vec<AffMap3> {
        indices.iter().map(|&i| self.elements[i].theta_image).collect()
    }

    /// The flexes reachable from `p`.
    pub fn orbit(&self, p: Pt) -> Vec<Pt> {
        let mut out: Vec<Pt> = self.elements.iter().map(|e| Pt::from_index(e.flex_perm[p.index()])).collect();
        out.sort();
        out.dedup();
        out
    }
}

pub fn theta(e: &HesElement) -> Result<AffMap3> {
    AffMap3::from_permutation(&e.flex_perm)
}

/// The permutation of flexes induced by complex conjugation: `(i, j) -> (i, 2j)`.
pub fn c_hat() -> AffMap3 {
    AffMap3::from_ints([[1, 0], [0, 2]], [0, 0]).expect("invertible")
}

/// The projective transformation inducing `sigma` on the flexes, if any.
pub fn realize_collineation(sigma: &AffMap3) -> Result<Option<PTransform<Eis>>> {
    let src = FRAME.map(flex);
    let dst = FRAME.map(|p| flex(sigma.apply(p)));
    let t = transform_from_frames(&src, &dst)?;
    let realized = Pt::all().into_iter().all(|p| t.apply(&flex(p)) == flex(sigma.apply(p)));
    Ok(realized.then_some(t))
}

/// A determinant-one matrix in the class of `t`, when the cube root of its
/// determinant lies in Q(w).
pub fn unimodular_representative(t: &PTransform<Eis>) -> Option<Mat3<Eis>> {
    let m = t.matrix();
    let root = m.det().cbrt()?;
    Some(m.scale(&root.inv()?))
}

/// Seeded random integer transformations outside the group, entries in -3..=3.
pub fn random_non_members(seed: u64, count: usize) -> Vec<PTransform<Eis>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let table = hes_table();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let entries: Vec<i64> = (0..9).map(|_| rng.gen_range(-3..=3)).collect();
        let m = Mat3::<Eis>::from_fn(|i, j| Eis::from(entries[3 * i + j]));
        if let Ok(t) = PTransform::new(m) {
            if table.find(&t).is_none() {
                out.push(t);
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub struct H12 {
    pub g_in_hes: bool,
    pub image_in_pencil: bool,
}

/// Whether `g` lies in the group, and whether it keeps the member `lambda` in the pencil.
pub fn h12_check(g: &PTransform<Eis>, lambda: &PencilParam<Eis>) -> Result<H12> {
    let g_in_hes = hes_table().find(g).is_some();
    let image = act(g.matrix(), &pencil_member(lambda))?;
    Ok(H12 { g_in_hes, image_in_pencil: in_pencil(&image).is_some() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitegeo::{saff_enumerate, sl2f3_recognize};

    fn gen_theta(k: usize) -> AffMap3 {
        HesElement::new(generators()[k].clone()).unwrap().theta_image
    }

    #[test]
    fn generator_actions() {
        let perm = |k: usize| flex_permutation(&generators()[k]).unwrap();
        for p in Pt::all() {
            let (i, j) = (p.0, p.1);
            assert_eq!(perm(0)[p.index()], (p + Pt::new(2, 0)).index());
            assert_eq!(perm(1)[p.index()], Pt(i + i, j + j).index());
            assert_eq!(perm(2)[p.index()], (p + Pt::new(0, 2)).index());
            assert_eq!(perm(3)[p.index()], Pt(i, i + j).index());
            assert_eq!(perm(4)[p.index()], Pt(j, i + i).index());
        }
        assert_eq!(gen_theta(0), AffMap3::translation_by(Pt::new(2, 0)));
        assert_eq!(gen_theta(2), AffMap3::translation_by(Pt::new(0, 2)));
        assert_eq!(gen_theta(1), AffMap3::from_ints([[2, 0], [0, 2]], [0, 0]).unwrap());
        assert_eq!(gen_theta(3), AffMap3::from_ints([[1, 0], [1, 1]], [0, 0]).unwrap());
        assert_eq!(gen_theta(4), AffMap3::from_ints([[0, 1], [2, 0]], [0, 0]).unwrap());
    }

    #[test]
    fn table() {
        let t = hes_table();
        assert_eq!(t.order(), HES_ORDER);
        let fixes_all: Vec<usize> = (0..t.order()).filter(|&i| t.elements[i].flex_perm == std::array::from_fn(|k| k)).collect();
        assert_eq!(fixes_all, vec![0]);
        let mut images: Vec<AffMap3> = t.elements.iter().map(|e| e.theta_image).collect();
        images.sort();
        let mut saff = saff_enumerate();
        saff.sort();
        assert_eq!(images, saff);
        let s = t.stabilizer(Pt::new(0, 0));
        assert_eq!(s.len(), 24);
        assert!(sl2f3_recognize(&t.theta_images(&s)).unwrap());
        assert_eq!(t.orbit(Pt::new(0, 0)).len(), 9);
        for e in &t.elements {
            let d = unimodular_representative(&e.transform);
            if let Some(m) = d {
                assert_eq!(m.det(), Eis::from(1));
            }
        }
    }

    #[test]
    fn realizability() {
        assert_eq!(realize_collineation(&AffMap3::identity()).unwrap(), Some(PTransform::identity()));
        assert_eq!(realize_collineation(&c_hat()).unwrap(), None);
        let sigma = AffMap3::from_ints([[0, 1], [2, 0]], [1, 1]).unwrap();
        let g = realize_collineation(&sigma).unwrap().unwrap();
        let i = hes_table().find(&g).unwrap();
        assert_eq!(hes_table().elements[i].theta_image, sigma);
    }

    #[test]
    fn h12() {
        let one = PencilParam::Finite(Eis::from(1));
        assert_eq!(h12_check(&generators()[2], &one).unwrap(), H12 { g_in_hes: true, image_in_pencil: true });
        assert_eq!(h12_check(&PTransform::identity(), &one).unwrap(), H12 { g_in_hes: true, image_in_pencil: true });
        let g = PTransform::new(Mat3::from_i64([[1, 2, 0], [0, 1, 0], [0, 0, 1]])).unwrap();
        assert_eq!(h12_check(&g, &one).unwrap(), H12 { g_in_hes: false, image_in_pencil: false });
        for g in random_non_members(3, 5) {
            assert_eq!(h12_check(&g, &one).unwrap(), H12 { g_in_hes: false, image_in_pencil: false });
        }
    }
}
