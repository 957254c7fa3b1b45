use num_bigint::BigInt;
use polyexact::IntMatrix;

/// A permutation `p` with `a[p[i]][p[j]] == b[i][j]` for all `i, j`, if one
/// exists. Backtracking over rows, pruned by sorted row and column contents.
pub fn permutation_equivalent(a: &IntMatrix, b: &IntMatrix) -> Option<Vec<usize>> {
    let n = a.nrows();
    if !a.is_square() || !b.is_square() || b.nrows() != n {
        return None;
    }
    let signature = |m: &IntMatrix, i: usize| {
        let mut row: Vec<BigInt> = m.rows()[i].clone();
        let mut col: Vec<BigInt> = (0..n).map(|r| m.get(r, i).clone()).collect();
        row.sort();
        col.sort();
        (m.get(i, i).clone(), row, col)
    };
    let sa: Vec<_> = (0..n).map(|i| signature(a, i)).collect();
    let sb: Vec<_> = (0..n).map(|i| signature(b, i)).collect();
    let candidates: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| sa[j] == sb[i]).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut p = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &candidates, 0, &mut p, &mut used) {
        Some(p)
    } else {
        None
    }
}

fn extend(
    a: &IntMatrix,
    b: &IntMatrix,
    cand: &[Vec<usize>],
    i: usize,
    p: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == p.len() {
        return true;
    }
    for &j in &cand[i] {
        if used[j] {
            continue;
        }
        let consistent = (0..i).all(|k| a.get(j, p[k]) == b.get(i, k) && a.get(p[k], j) == b.get(k, i));
        if !consistent {
            continue;
        }
        p[i] = j;
        used[j] = true;
        if extend(a, b, cand, i + 1, p, used) {
            return true;
        }
        used[j] = false;
    }
    p[i] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_relabelling() {
        let a = IntMatrix::from_i64(&[vec![1, 0, 0, 1], vec![0, 0, 1, 1], vec![1, 0, 0, 2], vec![0, 1, 0, 0]]).unwrap();
        let perm = [2, 0, 3, 1];
        let b = a.permuted(&perm);
        let p = permutation_equivalent(&a, &b).unwrap();
        assert_eq!(a.permuted(&p).rows(), b.rows());
    }

    #[test]
    fn rejects_different() {
        let a = IntMatrix::from_i64(&[vec![2, 1], vec![1, 1]]).unwrap();
        let b = IntMatrix::from_i64(&[vec![1, 1], vec![1, 2]]).unwrap();
        assert!(permutation_equivalent(&a, &b).is_some());
        let c = IntMatrix::from_i64(&[vec![1, 2], vec![1, 1]]).unwrap();
        assert!(permutation_equivalent(&a, &c).is_none());
    }
}
