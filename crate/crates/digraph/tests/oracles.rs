use std::collections::BTreeMap;

use digraph::{
    clique_polynomial, curve_complex, is_perron_frobenius, is_strongly_connected, simple_cycles, spectral_radius,
    Digraph, Method,
};
use polyexact::rational::ten_to_minus;
use polyexact::{IntMatrix, IntPoly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Some power of `A` is entrywise positive; checked on the boolean pattern up
/// to the Wielandt exponent `(n-1)^2 + 1`.
fn wielandt_primitive(a: &[Vec<i64>]) -> bool {
    let n = a.len();
    let pat: Vec<Vec<bool>> = a.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
    let mut pow = pat.clone();
    for _ in 1..(n - 1) * (n - 1) + 1 {
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).any(|k| pow[i][k] && pat[k][j]);
            }
        }
        pow = next;
    }
    pow.iter().all(|r| r.iter().all(|&x| x))
}

fn random_nonneg(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Vec<Vec<i64>> {
    (0..n)
        .map(|_| (0..n).map(|_| if rng.gen_bool(density) { rng.gen_range(1..=2) } else { 0 }).collect())
        .collect()
}

#[test]
fn perron_frobenius_matches_wielandt() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut positives = 0;
    for i in 0..200 {
        let n = 1 + i % 6;
        let density = [0.2, 0.35, 0.5][i % 3];
        let a = random_nonneg(&mut rng, n, density);
        let m = IntMatrix::from_i64(&a).unwrap();
        let expected = wielandt_primitive(&a);
        positives += usize::from(expected);
        assert_eq!(is_perron_frobenius(&m).unwrap(), expected, "{a:?}");
    }
    // the sample exercises both verdicts
    assert!(positives > 20 && positives < 180, "{positives}");
}

/// Simple cycles by exhaustive search over vertex sequences starting at their
/// least vertex; each is counted with the product of edge multiplicities.
fn brute_cycles(a: &[Vec<i64>]) -> BTreeMap<Vec<usize>, u64> {
    let n = a.len();
    let mut out = BTreeMap::new();
    // m[r][c] counts edges c -> r
    let mult = |from: usize, to: usize| a[to][from] as u64;
    fn extend(
        path: &mut Vec<usize>,
        n: usize,
        mult: &dyn Fn(usize, usize) -> u64,
        out: &mut BTreeMap<Vec<usize>, u64>,
    ) {
        let last = *path.last().unwrap();
        let start = path[0];
        let back = mult(last, start);
        if back > 0 {
            let w: u64 = path.windows(2).map(|p| mult(p[0], p[1])).product::<u64>() * back;
            out.insert(path.clone(), w);
        }
        for v in start + 1..n {
            if !path.contains(&v) && mult(last, v) > 0 {
                path.push(v);
                extend(path, n, mult, out);
                path.pop();
            }
        }
    }
    for s in 0..n {
        extend(&mut vec![s], n, &mult, &mut out);
    }
    out
}

#[test]
fn cycles_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..300 {
        let n = 1 + i % 5;
        let a = random_nonneg(&mut rng, n, 0.5);
        let g = Digraph::from_matrix(&IntMatrix::from_i64(&a).unwrap()).unwrap();
        let mut got: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        for c in simple_cycles(&g, 100_000).unwrap() {
            *got.entry(c.vertices.clone()).or_default() += 1;
        }
        assert_eq!(got, brute_cycles(&a), "{a:?}");
    }
}

/// Sum over sets of pairwise vertex-disjoint cycles.
fn brute_clique_polynomial(cycles: &[(Vec<usize>, u64)]) -> IntPoly {
    let mut coeffs = vec![0i64; 64];
    fn go(i: usize, used: u64, deg: usize, sign: i64, weight: i64, cycles: &[(Vec<usize>, u64)], c: &mut [i64]) {
        if i == cycles.len() {
            c[deg] += sign * weight;
            return;
        }
        go(i + 1, used, deg, sign, weight, cycles, c);
        let (vs, m) = &cycles[i];
        let mask: u64 = vs.iter().map(|v| 1u64 << v).sum();
        if used & mask == 0 {
            go(i + 1, used | mask, deg + vs.len(), -sign, weight * *m as i64, cycles, c);
        }
    }
    go(0, 0, 0, 1, 1, cycles, &mut coeffs);
    IntPoly::from_i64(&coeffs)
}

#[test]
fn clique_polynomial_matches_disjoint_cycle_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for i in 0..150 {
        let n = 1 + i % 6;
        let a = random_nonneg(&mut rng, n, 0.45);
        let g = Digraph::from_matrix(&IntMatrix::from_i64(&a).unwrap()).unwrap();
        let cx = curve_complex(&g, 100_000).unwrap();
        let brute: Vec<(Vec<usize>, u64)> = brute_cycles(&a).into_iter().collect();
        assert_eq!(clique_polynomial(&cx), brute_clique_polynomial(&brute), "{a:?}");
    }
}

#[test]
fn clique_polynomial_is_reversed_char_poly() {
    // Q(t) = det(I - tA) for the digraph of A
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for i in 0..150 {
        let n = 1 + i % 6;
        let a = random_nonneg(&mut rng, n, 0.45);
        let m = IntMatrix::from_i64(&a).unwrap();
        let g = Digraph::from_matrix(&m).unwrap();
        let q = clique_polynomial(&curve_complex(&g, 100_000).unwrap());
        let mut rev: Vec<_> = m.char_poly().unwrap().coeffs().to_vec();
        rev.resize(n + 1, 0.into());
        rev.reverse();
        assert_eq!(q, IntPoly::new(rev), "{a:?}");
    }
}

fn power_radius(a: &[Vec<i64>]) -> f64 {
    let n = a.len();
    let mut v = vec![1.0f64; n];
    let mut rho = 0.0;
    for _ in 0..20_000 {
        let w: Vec<f64> =
            (0..n).map(|i| (0..n).map(|j| a[i][j] as f64 * v[j]).sum::<f64>()).collect();
        let s: f64 = w.iter().sum();
        rho = s / v.iter().sum::<f64>();
        v = w.iter().map(|x| x / s).collect();
    }
    rho
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn spectral_routes_agree_with_power_iteration(seed in any::<u64>(), n in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_nonneg(&mut rng, n, 0.55);
        let m = IntMatrix::from_i64(&a).unwrap();
        prop_assume!(is_perron_frobenius(&m).unwrap());
        let tol = ten_to_minus(10);
        let c = spectral_radius(&m, Method::Charpoly, &tol, 100_000).unwrap();
        let q = spectral_radius(&m, Method::Clique, &tol, 100_000).unwrap();
        let p = power_radius(&a);
        prop_assert!((c.value - p).abs() < 1e-6, "{} vs {}", c.value, p);
        prop_assert!((q.value - c.value).abs() < 1e-9);
    }

    #[test]
    fn strong_connectivity_matches_reachability(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_nonneg(&mut rng, n, 0.3);
        let g = Digraph::from_matrix(&IntMatrix::from_i64(&a).unwrap()).unwrap();
        // transitive closure by Floyd-Warshall
        let mut r: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || a[j][i] > 0).collect()).collect();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
                }
            }
        }
        let strong = r.iter().all(|row| row.iter().all(|&x| x));
        prop_assert_eq!(is_strongly_connected(&g), strong);
    }
}
