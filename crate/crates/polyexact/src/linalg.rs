//! Exact linear algebra over the rationals. Vectors are plain `Vec`s; every
//! subspace basis returned here is in reduced row echelon form, so two
//! subspaces are equal exactly when their bases are.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::IntMatrix;

pub type QVec = Vec<BigRational>;

pub fn qvec(v: &[i64]) -> QVec {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

pub fn from_int_matrix(m: &IntMatrix) -> Vec<QVec> {
    m.rows().iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `M v` for a row-major matrix.
pub fn mat_vec(m: &[QVec], v: &[BigRational]) -> QVec {
    m.iter().map(|r| dot(r, v)).collect()
}

pub fn int_mat_vec(m: &IntMatrix, v: &[BigRational]) -> QVec {
    m.rows()
        .iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .filter(|(a, _)| !a.is_zero())
                .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
                .sum()
        })
        .collect()
}

pub fn is_zero_vec(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Reduced row echelon form; zero rows dropped. Returns the rows and the
/// pivot column of each.
pub fn rref(rows: &[QVec], ncols: usize) -> (Vec<QVec>, Vec<usize>) {
    let mut m: Vec<QVec> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[QVec], ncols: usize) -> usize {
    rref(rows, ncols).0.len()
}

/// Canonical basis (RREF) of the span of `rows`.
pub fn span_basis(rows: &[QVec], ncols: usize) -> Vec<QVec> {
    rref(rows, ncols).0
}

/// Canonical basis of `{x : A x = 0}`.
pub fn kernel(a: &[QVec], ncols: usize) -> Vec<QVec> {
    let (r, pivots) = rref(a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![BigRational::zero(); ncols];
        v[f] = BigRational::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[f].clone();
        }
        basis.push(v);
    }
    span_basis(&basis, ncols)
}

pub fn same_span(a: &[QVec], b: &[QVec], ncols: usize) -> bool {
    span_basis(a, ncols) == span_basis(b, ncols)
}

/// Whether every vector of `sub` lies in the span of `sup`.
pub fn contained_in(sub: &[QVec], sup: &[QVec], ncols: usize) -> bool {
    let base = rank(sup, ncols);
    let mut all = sup.to_vec();
    all.extend(sub.iter().cloned());
    rank(&all, ncols) == base
}

/// Coefficients `c` with `sum c_i basis_i = v`, if `v` lies in the span.
/// `basis` must be linearly independent.
pub fn coordinates(basis: &[QVec], v: &[BigRational]) -> Option<QVec> {
    let n = v.len();
    let k = basis.len();
    // solve the n x k system B^T c = v by elimination on the augmented matrix
    let mut aug: Vec<QVec> = (0..n)
        .map(|i| {
            let mut row: QVec = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let (r, pivots) = {
        let (r, p) = rref(&aug, k + 1);
        aug = r;
        (aug.clone(), p)
    };
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![BigRational::zero(); k];
    for (row, &p) in r.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

/// Skew or symmetric bilinear form `x^T G y`.
pub fn form(g: &[QVec], x: &[BigRational], y: &[BigRational]) -> BigRational {
    dot(x, &mat_vec(g, y))
}

/// Gram matrix of a bilinear form on a list of vectors.
pub fn gram(g: &[QVec], vs: &[QVec]) -> Vec<QVec> {
    let gv: Vec<QVec> = vs.iter().map(|v| mat_vec(g, v)).collect();
    vs.iter().map(|x| gv.iter().map(|y| dot(x, y)).collect()).collect()
}

pub fn transpose(m: &[QVec], ncols: usize) -> Vec<QVec> {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Characteristic polynomial of a square rational matrix with integer
/// characteristic polynomial (checked); `None` otherwise.
pub fn char_poly_rational(m: &[QVec]) -> Option<crate::IntPoly> {
    let n = m.len();
    let lcm = m.iter().flatten().fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    // det(tI - M) = det(tI - A/d) = d^{-n} det(d t I - A), A = d M integral
    let a: Vec<Vec<BigInt>> =
        m.iter().map(|r| r.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect()).collect();
    let pa = IntMatrix::new(a).ok()?.char_poly().ok()?;
    // p_A(s) with s = d t, divided by d^n
    let mut coeffs = Vec::with_capacity(n + 1);
    for (i, c) in pa.coeffs().iter().enumerate() {
        let scale = num_traits::pow(lcm.clone(), i);
        let num = c * scale;
        let den = num_traits::pow(lcm.clone(), n);
        let q = BigRational::new(num, den);
        if !q.is_integer() {
            return None;
        }
        coeffs.push(q.to_integer());
    }
    Some(crate::IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let a = vec![qvec(&[1, 1, 1])];
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&mat_vec(&a, v)));
        }
        assert_eq!(k, vec![qvec(&[1, 0, -1]), qvec(&[0, 1, -1])]);
    }

    #[test]
    fn spans_and_coordinates() {
        let a = vec![qvec(&[1, 1, 0]), qvec(&[0, 1, 1])];
        let b = vec![qvec(&[1, 2, 1]), qvec(&[1, 0, -1])];
        assert!(same_span(&a, &b, 3));
        assert!(contained_in(&[qvec(&[2, 3, 1])], &a, 3));
        assert!(!contained_in(&[qvec(&[1, 0, 0])], &a, 3));
        assert_eq!(coordinates(&a, &qvec(&[2, 3, 1])), Some(qvec(&[2, 1])));
        assert_eq!(coordinates(&a, &qvec(&[1, 0, 0])), None);
    }

    #[test]
    fn rational_char_poly() {
        let m = vec![qvec(&[2, 1]), qvec(&[1, 1])];
        assert_eq!(char_poly_rational(&m).unwrap(), crate::IntPoly::from_i64(&[1, -3, 1]));
        let half = vec![vec![BigRational::new(1.into(), 2.into())]];
        assert!(char_poly_rational(&half).is_none());
    }
}
