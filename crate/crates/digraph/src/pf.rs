use std::collections::VecDeque;

use num_integer::Integer;
use polyexact::IntMatrix;
use num_traits::ToPrimitive;

use crate::{Digraph, DigraphError};

fn reach(adj: &[Vec<usize>], start: usize) -> Vec<Option<usize>> {
    let mut level = vec![None; adj.len()];
    level[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let d = level[v].unwrap();
        for &w in &adj[v] {
            if level[w].is_none() {
                level[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    level
}

pub fn is_strongly_connected(g: &Digraph) -> bool {
    if g.vertex_count() == 0 {
        return false;
    }
    let fwd = g.successors();
    let mut back = vec![Vec::new(); g.vertex_count()];
    for &(a, b, _) in g.edges() {
        back[b].push(a);
    }
    reach(&fwd, 0).iter().all(Option::is_some) && reach(&back, 0).iter().all(Option::is_some)
}

/// Gcd of the cycle lengths of a strongly connected digraph, computed from
/// breadth-first levels: every edge `a -> b` contributes `level(a) + 1 - level(b)`.
/// `None` when the graph is not strongly connected or has no edges.
pub fn period(g: &Digraph) -> Option<usize> {
    if !is_strongly_connected(g) || g.edges().is_empty() {
        return None;
    }
    let level = reach(&g.successors(), 0);
    let mut p = 0i64;
    for &(a, b, _) in g.edges() {
        let d = level[a].unwrap() as i64 + 1 - level[b].unwrap() as i64;
        p = p.gcd(&d);
    }
    Some(p as usize)
}

/// Strongly connected and aperiodic, which for a nonnegative matrix is
/// equivalent to some power being strictly positive.
pub fn is_perron_frobenius(m: &IntMatrix) -> Result<bool, DigraphError> {
    let g = Digraph::from_matrix(m)?;
    Ok(period(&g) == Some(1))
}

/// Floating-point power iteration: returns `(rho, v)` with `v` normalized to
/// unit sum. Meant for diagnostics on Perron-Frobenius input only.
pub fn perron_vector(m: &IntMatrix, iterations: usize) -> (f64, Vec<f64>) {
    let n = m.nrows();
    let a: Vec<Vec<f64>> =
        m.rows().iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::INFINITY)).collect()).collect();
    let mut v = vec![1.0 / n as f64; n];
    let mut rho = 0.0;
    for _ in 0..iterations {
        // averaging with the identity removes periodic oscillation
        let w: Vec<f64> = (0..n).map(|i| a[i].iter().zip(&v).map(|(x, y)| x * y).sum::<f64>() + v[i]).collect();
        let s: f64 = w.iter().sum();
        if s == 0.0 {
            return (0.0, v);
        }
        rho = s - 1.0;
        v = w.into_iter().map(|x| x / s).collect();
    }
    (rho, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn small_cases() {
        assert!(is_perron_frobenius(&m(&[vec![0, 1], vec![1, 1]])).unwrap());
        assert!(!is_perron_frobenius(&m(&[vec![0, 1], vec![1, 0]])).unwrap());
        assert!(!is_perron_frobenius(&m(&[vec![1, 1], vec![0, 1]])).unwrap());
        assert!(!is_perron_frobenius(&m(&[vec![0]])).unwrap());
        assert!(is_perron_frobenius(&m(&[vec![1]])).unwrap());
        let ff = m(&[vec![1, 0, 0, 1], vec![0, 0, 1, 1], vec![1, 0, 0, 2], vec![0, 1, 0, 0]]);
        assert!(is_perron_frobenius(&ff).unwrap());
    }

    #[test]
    fn power_iteration_golden() {
        let (rho, v) = perron_vector(&m(&[vec![2, 1], vec![1, 1]]), 200);
        assert!((rho - 2.618033988749895).abs() < 1e-9);
        assert!((v[0] / v[1] - 1.618033988749895).abs() < 1e-9);
    }
}
