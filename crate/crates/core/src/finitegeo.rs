//! The affine plane over F3 and its affine groups.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct F3(u8);

impl F3 {
    pub const ZERO: F3 = F3(0);
    pub const ONE: F3 = F3(1);
    pub const TWO: F3 = F3(2);
    pub const ALL: [F3; 3] = [F3(0), F3(1), F3(2)];

    pub fn new(n: i64) -> F3 {
        F3(n.rem_euclid(3) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn inv(self) -> Option<F3> {
        // 1 and 2 are their own inverses
        (self.0 != 0).then_some(self)
    }
}

impl Add for F3 {
    type Output = F3;
    fn add(self, o: F3) -> F3 {
        F3((self.0 + o.0) % 3)
    }
}

impl Sub for F3 {
    type Output = F3;
    fn sub(self, o: F3) -> F3 {
        F3((self.0 + 3 - o.0) % 3)
    }
}

impl Mul for F3 {
    type Output = F3;
    fn mul(self, o: F3) -> F3 {
        F3((self.0 * o.0) % 3)
    }
}

impl Neg for F3 {
    type Output = F3;
    fn neg(self) -> F3 {
        F3((3 - self.0) % 3)
    }
}

impl fmt::Display for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for F3 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.0)
    }
}

/// A point of F3^2, also used as a flex label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize)]
pub struct Pt(pub F3, pub F3);

impl Pt {
    pub fn new(i: i64, j: i64) -> Pt {
        Pt(F3::new(i), F3::new(j))
    }

    /// Position `3 i + j` in the list of all points.
    pub fn index(self) -> usize {
        3 * self.0 .0 as usize + self.1 .0 as usize
    }

    pub fn from_index(k: usize) -> Pt {
        Pt::new((k / 3) as i64, (k % 3) as i64)
    }

    pub fn all() -> [Pt; 9] {
        std::array::from_fn(Pt::from_index)
    }

    pub fn scale(self, c: F3) -> Pt {
        Pt(c * self.0, c * self.1)
    }
}

impl Add for Pt {
    type Output = Pt;
    fn add(self, o: Pt) -> Pt {
        Pt(self.0 + o.0, self.1 + o.1)
    }
}

impl Sub for Pt {
    type Output = Pt;
    fn sub(self, o: Pt) -> Pt {
        Pt(self.0 - o.0, self.1 - o.1)
    }
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// The third point on the line through two distinct points: `2(u + v)`.
pub fn third_point(u: Pt, v: Pt) -> Pt {
    (u + v).scale(F3::TWO)
}

pub fn collinear_f3(a: Pt, b: Pt, c: Pt) -> bool {
    let (u, v) = (b - a, c - a);
    u.0 * v.1 - u.1 * v.0 == F3::ZERO
}

/// The 12 lines of AG(2,3), each sorted, in sorted order.
pub fn ag23_lines() -> Vec<[Pt; 3]> {
    let mut lines = Vec::new();
    let pts = Pt::all();
    for (i, &u) in pts.iter().enumerate() {
        for &v in &pts[i + 1..] {
            let mut l = [u, v, third_point(u, v)];
            l.sort();
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    lines.sort();
    lines
}

// ---------------------------------------------------------------------------

pub type Mat2 = [[F3; 2]; 2];

fn det2(m: &Mat2) -> F3 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// `x -> linear x + translation` on column vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct AffMap3 {
    pub linear: Mat2,
    pub translation: Pt,
}

impl AffMap3 {
    pub fn new(linear: Mat2, translation: Pt) -> Result<Self> {
        if det2(&linear) == F3::ZERO {
            return Err(Error::SingularMatrix);
        }
        Ok(AffMap3 { linear, translation })
    }

    pub fn from_ints(linear: [[i64; 2]; 2], translation: [i64; 2]) -> Result<Self> {
        Self::new(linear.map(|r| r.map(F3::new)), Pt::new(translation[0], translation[1]))
    }

    pub fn identity() -> Self {
        AffMap3 { linear: [[F3::ONE, F3::ZERO], [F3::ZERO, F3::ONE]], translation: Pt::default() }
    }

    pub fn translation_by(t: Pt) -> Self {
        AffMap3 { translation: t, ..Self::identity() }
    }

    pub fn det(&self) -> F3 {
        det2(&self.linear)
    }

    pub fn is_special(&self) -> bool {
        self.det() == F3::ONE
    }

    pub fn apply(&self, p: Pt) -> Pt {
        let m = &self.linear;
        Pt(m[0][0] * p.0 + m[0][1] * p.1, m[1][0] * p.0 + m[1][1] * p.1) + self.translation
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &AffMap3) -> AffMap3 {
        let (a, b) = (&self.linear, &other.linear);
        let linear = std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]));
        AffMap3 { linear, translation: self.apply(other.translation) }
    }

    pub fn inverse(&self) -> AffMap3 {
        let m = &self.linear;
        let d = self.det().inv().expect("invertible");
        let linear = [[d * m[1][1], -(d * m[0][1])], [-(d * m[1][0]), d * m[0][0]]];
        let partial = AffMap3 { linear, translation: Pt::default() };
        let t = partial.apply(self.translation);
        AffMap3 { linear, translation: Pt(-t.0, -t.1) }
    }

    /// `perm[k]` is the index of the image of point `k`.
    pub fn permutation(&self) -> [usize; 9] {
        std::array::from_fn(|k| self.apply(Pt::from_index(k)).index())
    }

    /// The affine map inducing `perm`, if there is one.
    pub fn from_permutation(perm: &[usize; 9]) -> Result<AffMap3> {
        let img = |p: Pt| Pt::from_index(perm[p.index()]);
        let t = img(Pt::new(0, 0));
        let c0 = img(Pt::new(1, 0)) - t;
        let c1 = img(Pt::new(0, 1)) - t;
        let map = AffMap3::new([[c0.0, c1.0], [c0.1, c1.1]], t).map_err(|_| Error::NotAffine)?;
        if &map.permutation() == perm {
            Ok(map)
        } else {
            Err(Error::NotAffine)
        }
    }

    pub fn preserves_lines(&self) -> bool {
        let lines = ag23_lines();
        lines.iter().all(|l| {
            let mut image = l.map(|p| self.apply(p));
            image.sort();
            lines.contains(&image)
        })
    }
}

impl fmt::Display for AffMap3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.linear;
        write!(f, "[[{},{}],[{},{}]] + ({},{})", m[0][0], m[0][1], m[1][0], m[1][1], self.translation.0, self.translation.1)
    }
}

impl FromStr for AffMap3 {
    type Err = Error;

    /// Parses `[[a,b],[c,d]] + (t1,t2)`; the translation part is optional.
    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse { pos: 0, msg: msg.to_string() };
        let digits: Vec<i64> = s
            .split(|c: char| !(c.is_ascii_digit() || c == '-'))
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| err("bad integer")))
            .collect::<Result<_>>()?;
        let (m, t) = match digits.len() {
            4 => (&digits[..4], [0, 0]),
            6 => (&digits[..4], [digits[4], digits[5]]),
            _ => return Err(err("expected [[a,b],[c,d]] + (t1,t2)")),
        };
        AffMap3::from_ints([[m[0], m[1]], [m[2], m[3]]], t).map_err(|_| err("linear part is singular"))
    }
}

fn all_linear() -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in F3::ALL {
        for b in F3::ALL {
            for c in F3::ALL {
                for d in F3::ALL {
                    let m = [[a, b], [c, d]];
                    if det2(&m) != F3::ZERO {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// All 432 affine bijections of F3^2.
pub fn aff_enumerate() -> Vec<AffMap3> {
    let mut out = Vec::with_capacity(432);
    for m in all_linear() {
        for t in Pt::all() {
            out.push(AffMap3 { linear: m, translation: t });
        }
    }
    out
}

/// The 216 affine maps whose linear part has determinant 1.
pub fn saff_enumerate() -> Vec<AffMap3> {
    aff_enumerate().into_iter().filter(AffMap3::is_special).collect()
}

pub fn is_closed(group: &[AffMap3]) -> bool {
    group.iter().all(|a| group.iter().all(|b| group.contains(&a.compose(b))))
}

/// Whether `group` is a point stabilizer isomorphic to SL2(F3) through
/// its linear parts.
pub fn sl2f3_recognize(group: &[AffMap3]) -> Result<bool> {
    if !is_closed(group) {
        return Err(Error::NotAGroup);
    }
    if group.len() != 24 {
        return Ok(false);
    }
    let Some(p) = Pt::all().into_iter().find(|&p| group.iter().all(|g| g.apply(p) == p)) else {
        return Ok(false);
    };
    let to_p = AffMap3::translation_by(p);
    let mut linear: Vec<Mat2> = group
        .iter()
        .map(|g| to_p.inverse().compose(g).compose(&to_p))
        .map(|g| {
            debug_assert_eq!(g.translation, Pt::default());
            g.linear
        })
        .collect();
    linear.sort();
    linear.dedup();
    Ok(linear.len() == 24 && linear.iter().all(|m| det2(m) == F3::ONE))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field() {
        assert_eq!(F3::TWO * F3::TWO, F3::ONE);
        assert_eq!(F3::ONE - F3::TWO, F3::TWO);
        assert_eq!(F3::new(-1), F3::TWO);
        assert_eq!(F3::ZERO.inv(), None);
    }

    #[test]
    fn lines() {
        let lines = ag23_lines();
        assert_eq!(lines.len(), 12);
        assert!(lines.contains(&[Pt::new(0, 0), Pt::new(1, 0), Pt::new(2, 0)]));
        assert_eq!(third_point(Pt::new(0, 0), Pt::new(1, 1)), Pt::new(2, 2));
        for p in Pt::all() {
            assert_eq!(lines.iter().filter(|l| l.contains(&p)).count(), 4);
        }
        assert!(collinear_f3(Pt::new(0, 0), Pt::new(1, 0), Pt::new(2, 0)));
        assert!(!collinear_f3(Pt::new(0, 0), Pt::new(1, 0), Pt::new(1, 1)));
        let pts = Pt::all();
        let mut count = 0;
        for i in 0..9 {
            for j in i + 1..9 {
                for k in j + 1..9 {
                    count += usize::from(collinear_f3(pts[i], pts[j], pts[k]));
                }
            }
        }
        assert_eq!(count, 12);
    }

    #[test]
    fn groups() {
        let saff = saff_enumerate();
        assert_eq!(saff.len(), 216);
        assert_eq!(aff_enumerate().len(), 432);
        assert!(aff_enumerate().iter().all(AffMap3::preserves_lines));
        let stab: Vec<AffMap3> = saff.iter().copied().filter(|g| g.apply(Pt::new(0, 0)) == Pt::new(0, 0)).collect();
        assert_eq!(stab.len(), 24);
        assert!(sl2f3_recognize(&stab).unwrap());
        let stab12: Vec<AffMap3> = saff.iter().copied().filter(|g| g.apply(Pt::new(1, 2)) == Pt::new(1, 2)).collect();
        assert!(sl2f3_recognize(&stab12).unwrap());
        let translations: Vec<AffMap3> = Pt::all().into_iter().map(AffMap3::translation_by).collect();
        assert!(!sl2f3_recognize(&translations).unwrap());
        assert_eq!(sl2f3_recognize(&stab[..5]), Err(Error::NotAGroup));
    }

    #[test]
    fn maps() {
        let g = AffMap3::from_ints([[0, 1], [2, 0]], [1, 2]).unwrap();
        assert_eq!(g.compose(&g.inverse()), AffMap3::identity());
        assert_eq!(AffMap3::from_permutation(&g.permutation()).unwrap(), g);
        assert_eq!(g.to_string(), "[[0,1],[2,0]] + (1,2)");
        assert_eq!(g.to_string().parse::<AffMap3>().unwrap(), g);
        assert_eq!("[[1,0],[0,2]]".parse::<AffMap3>().unwrap().det(), F3::TWO);
        let mut swap = [0usize, 1, 2, 3, 4, 5, 6, 7, 8];
        swap.swap(0, 1);
        assert_eq!(AffMap3::from_permutation(&swap), Err(Error::NotAffine));
    }
}
