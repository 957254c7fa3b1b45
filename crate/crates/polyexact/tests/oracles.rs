use num_bigint::BigInt;
use num_rational::BigRational;
use polyexact::rational::{rat, ten_to_minus};
use polyexact::{char_poly, largest_real_root, lt_polynomial, smallest_positive_root, IntMatrix, IntPoly};
use proptest::prelude::*;

// Dense i64 polynomials, lowest degree first.
fn pmul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn padd(acc: &mut Vec<i64>, b: &[i64], sign: i64) {
    if acc.len() < b.len() {
        acc.resize(b.len(), 0);
    }
    for (i, y) in b.iter().enumerate() {
        acc[i] += sign * y;
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// det(tI - A) by the Leibniz expansion.
fn leibniz_char_poly(a: &[Vec<i64>]) -> IntPoly {
    let n = a.len();
    let mut acc = vec![0i64];
    for p in permutations(n) {
        let mut term = vec![sign(&p)];
        for (i, &j) in p.iter().enumerate() {
            let entry = if i == j { vec![-a[i][j], 1] } else { vec![-a[i][j]] };
            term = pmul(&term, &entry);
        }
        padd(&mut acc, &term, 1);
    }
    IntPoly::from_i64(&acc)
}

fn square(max_n: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n).prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(-range..=range, n), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn char_poly_matches_determinant_expansion(a in square(5, 4)) {
        let m = IntMatrix::from_i64(&a).unwrap();
        prop_assert_eq!(char_poly(&m).unwrap(), leibniz_char_poly(&a));
    }

    #[test]
    fn char_poly_is_similarity_invariant(a in square(5, 3), seed in 0usize..120) {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            perm.swap(i, s % (i + 1));
            s /= i + 1;
        }
        let m = IntMatrix::from_i64(&a).unwrap();
        prop_assert_eq!(m.char_poly().unwrap(), m.permuted(&perm).char_poly().unwrap());
    }

    #[test]
    fn largest_root_of_split_polynomial(mut roots in prop::collection::vec(-12i64..=12, 1..6)) {
        let p = roots.iter().fold(vec![1i64], |acc, r| pmul(&acc, &[-r, 1]));
        let p = IntPoly::from_i64(&p);
        roots.sort_unstable();
        let top = *roots.last().unwrap();
        if top <= 0 {
            prop_assert!(largest_real_root(&p, &ten_to_minus(9)).is_err());
            return Ok(());
        }
        let top = BigRational::from_integer(BigInt::from(top));
        let b = largest_real_root(&p, &ten_to_minus(9)).unwrap();
        prop_assert!(b.contains(&top));
        prop_assert!(b.width() <= ten_to_minus(9));
        if let Some(&r) = roots.iter().find(|&&r| r > 0) {
            let s = smallest_positive_root(&p, &ten_to_minus(9)).unwrap();
            prop_assert!(s.contains(&BigRational::from_integer(BigInt::from(r))));
        }
    }

    #[test]
    fn rational_roots_are_bracketed(num in 1i64..40, den in 1i64..40, other in -30i64..0) {
        // (den t - num)(t - other), other negative
        let p = IntPoly::from_i64(&pmul(&[-num, den], &[-other, 1]));
        let b = largest_real_root(&p, &ten_to_minus(12)).unwrap();
        prop_assert!(b.contains(&rat(num, den)));
    }

    #[test]
    fn product_with_reversal_is_reciprocal(c in prop::collection::vec(-5i64..=5, 2..6)) {
        prop_assume!(c[0] != 0 && *c.last().unwrap() != 0);
        let rev: Vec<i64> = c.iter().rev().copied().collect();
        let p = IntPoly::from_i64(&pmul(&c, &rev));
        prop_assert!(p.is_reciprocal().unwrap());
        prop_assert!(p.has_inversion_closed_roots().unwrap());
    }
}

#[test]
fn lt_roots_against_floating_point() {
    for (a, b) in [(1u32, 2u32), (1, 5), (2, 3), (1, 12), (3, 7)] {
        let p = lt_polynomial(a, b).unwrap();
        let br = largest_real_root(&p, &ten_to_minus(10)).unwrap();
        // the polynomial is negative just left of its largest root and
        // positive from there on
        let (lo, hi) = (br.value - 1e-7, br.value + 1e-7);
        assert!(p.eval_f64(lo) < 0.0 && p.eval_f64(hi) > 0.0, "LT_{a},{b}");
        let mut x = hi;
        while x < 4.0 {
            assert!(p.eval_f64(x) > 0.0, "LT_{a},{b} at {x}");
            x += 1e-3;
        }
    }
}
