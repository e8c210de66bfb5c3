//! Gaussian elimination over an exact field. The zero test is structural,
//! so these routines are only meaningful for exact scalars.

use crate::scalar::{Scalar, CF};

/// Reduces `rows` in place to reduced row echelon form and returns the
/// pivot column of each nonzero row.
pub fn row_reduce<S: Scalar>(rows: &mut [Vec<S>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = x.clone() * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..ncols {
                    let t = factor.clone() * &rows[r][j];
                    rows[i][j] = rows[i][j].clone() - t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// A basis of the right null space `{v : M v = 0}`.
pub fn kernel<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); ncols];
            v[f] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant by elimination; exact scalars only.
pub fn det<S: Scalar>(rows: &[Vec<S>]) -> S {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut acc = S::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return S::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc = acc * &m[c][c];
        let inv = m[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone() * &inv;
            for j in c..n {
                let t = factor.clone() * &m[c][j];
                m[i][j] = m[i][j].clone() - t;
            }
        }
    }
    acc
}

/// Determinant of a complex matrix by LU with partial pivoting.
pub fn det_cf(rows: &[Vec<CF>]) -> CF {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut acc = CF::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].norm().total_cmp(&m[b][c].norm())).unwrap();
        if m[p][c].norm() == 0.0 {
            return CF::new(0.0, 0.0);
        }
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc *= m[c][c];
        for i in c + 1..n {
            let factor = m[i][c] / m[c][c];
            for j in c..n {
                let t = factor * m[c][j];
                m[i][j] -= t;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn r(n: i64) -> Rat {
        Rat::integer(n)
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)], vec![r(1), r(0), r(1)]];
        assert_eq!(rank(&m), 2);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&k[0]).fold(r(0), |acc, (a, b)| acc + a * b);
            assert!(dot.is_zero());
        }
        assert_eq!(rank::<Rat>(&[]), 0);
        assert!(det(&m).is_zero());
        let inv = vec![vec![r(0), r(2), r(1)], vec![r(1), r(0), r(0)], vec![r(3), r(1), r(5)]];
        assert_eq!(det(&inv), r(-9));
        let num: Vec<Vec<CF>> = inv.iter().map(|row| row.iter().map(|x| x.to_cf()).collect()).collect();
        assert!((det_cf(&num) + 9.0).norm() < 1e-12);
    }
}
