use std::collections::HashMap;
use std::fmt::Write;

use num_bigint::BigInt;
use polyexact::IntPoly;

use crate::{simple_cycles, Cycle, Digraph, DigraphError};

/// Simple cycles of a digraph as weighted vertices (weight = length), joined
/// when vertex-disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveComplex {
    pub cycles: Vec<Cycle>,
    /// Sorted pairs `(i, j)`, `i < j`.
    pub adjacency: Vec<(usize, usize)>,
}

impl CurveComplex {
    pub fn from_cycles(cycles: Vec<Cycle>) -> Self {
        let mut adjacency = Vec::new();
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                if cycles[i].is_disjoint(&cycles[j]) {
                    adjacency.push((i, j));
                }
            }
        }
        CurveComplex { cycles, adjacency }
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn weight(&self, i: usize) -> usize {
        self.cycles[i].len()
    }

    pub fn weights(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.weight(i)).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency.iter().filter(|&&(a, b)| a == i || b == i).count()
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        self.adjacency.binary_search(&key).is_ok()
    }

    /// Multiset of weights of isolated vertices and of each edge, as a
    /// relabeling-independent summary.
    pub fn shape(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        let mut iso: Vec<usize> = (0..self.len()).filter(|&i| self.degree(i) == 0).map(|i| self.weight(i)).collect();
        iso.sort_unstable();
        let mut edges: Vec<(usize, usize)> = self
            .adjacency
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.weight(a), self.weight(b));
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        (iso, edges)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph curve_complex {\n");
        for (i, c) in self.cycles.iter().enumerate() {
            let path: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "  c{i} [label=\"{} ({})\"];", c.len(), path.join(" "));
        }
        for &(a, b) in &self.adjacency {
            let _ = writeln!(s, "  c{a} -- c{b};");
        }
        s.push_str("}\n");
        s
    }
}

pub fn curve_complex(g: &Digraph, cap: usize) -> Result<CurveComplex, DigraphError> {
    Ok(CurveComplex::from_cycles(simple_cycles(g, cap)?))
}

type Bits = Vec<u64>;

fn clear(b: &mut Bits, i: usize) {
    b[i / 64] &= !(1u64 << (i % 64));
}

fn first(b: &Bits) -> Option<usize> {
    b.iter().enumerate().find(|(_, w)| **w != 0).map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

/// `Q_G(t) = sum over cliques C (empty clique included) of (-1)^|C| t^{w(C)}`.
///
/// Deletion-contraction on the least remaining vertex `v`:
/// `Q(S) = Q(S - v) - t^{w(v)} Q(S ∩ N(v))`, memoized on the vertex set.
pub fn clique_polynomial(g: &CurveComplex) -> IntPoly {
    let n = g.len();
    let words = n.div_ceil(64).max(1);
    let mut nbr: Vec<Bits> = vec![vec![0; words]; n];
    for &(a, b) in &g.adjacency {
        nbr[a][b / 64] |= 1 << (b % 64);
        nbr[b][a / 64] |= 1 << (a % 64);
    }
    let mut all = vec![0u64; words];
    for i in 0..n {
        all[i / 64] |= 1 << (i % 64);
    }
    let mut memo: HashMap<Bits, IntPoly> = HashMap::new();
    clique_rec(&all, g, &nbr, &mut memo)
}

fn clique_rec(s: &Bits, g: &CurveComplex, nbr: &[Bits], memo: &mut HashMap<Bits, IntPoly>) -> IntPoly {
    let Some(v) = first(s) else { return IntPoly::one() };
    if let Some(p) = memo.get(s) {
        return p.clone();
    }
    let mut rest = s.clone();
    clear(&mut rest, v);
    let within: Bits = rest.iter().zip(&nbr[v]).map(|(a, b)| a & b).collect();
    let without_v = clique_rec(&rest, g, nbr, memo);
    let with_v = clique_rec(&within, g, nbr, memo).shift(g.weight(v));
    let p = without_v - with_v;
    memo.insert(s.clone(), p.clone());
    p
}

/// Clique polynomial computed by brute force over all vertex subsets; only
/// for small complexes.
pub fn clique_polynomial_brute(g: &CurveComplex) -> IntPoly {
    let n = g.len();
    assert!(n < 24, "brute-force clique enumeration on {n} vertices");
    let mut coeffs: Vec<BigInt> = Vec::new();
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let clique = members.iter().enumerate().all(|(k, &a)| members[k + 1..].iter().all(|&b| g.are_adjacent(a, b)));
        if clique {
            let w: usize = members.iter().map(|&i| g.weight(i)).sum();
            if coeffs.len() <= w {
                coeffs.resize(w + 1, BigInt::from(0));
            }
            coeffs[w] += if members.len().is_multiple_of(2) { 1 } else { -1 };
        }
    }
    IntPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyexact::{lt_polynomial, IntMatrix};

    fn complex_of(rows: &[Vec<i64>]) -> CurveComplex {
        let g = Digraph::from_matrix(&IntMatrix::from_i64(rows).unwrap()).unwrap();
        curve_complex(&g, 1000).unwrap()
    }

    #[test]
    fn single_loop() {
        let c = complex_of(&[vec![1]]);
        assert_eq!(clique_polynomial(&c), IntPoly::from_i64(&[1, -1]));
    }

    #[test]
    fn two_disjoint_loops() {
        let c = complex_of(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(c.adjacency, vec![(0, 1)]);
        assert_eq!(clique_polynomial(&c), IntPoly::from_i64(&[1, -2, 1]));
    }

    #[test]
    fn first_family_k2() {
        let c = complex_of(&[vec![1, 0, 0, 1], vec![0, 0, 1, 1], vec![1, 0, 0, 2], vec![0, 1, 0, 0]]);
        // hub of weight 1 joined to 2, 3, 3; isolated 4
        assert_eq!(c.shape(), (vec![4], vec![(1, 2), (1, 3), (1, 3)]));
        let q = clique_polynomial(&c);
        assert_eq!(q, lt_polynomial(1, 2).unwrap());
        assert_eq!(q, clique_polynomial_brute(&c));
    }

    #[test]
    fn dot_output() {
        let c = complex_of(&[vec![1, 0], vec![0, 1]]);
        let d = c.to_dot();
        assert!(d.starts_with("graph curve_complex {"));
        assert!(d.contains("c0 -- c1;"));
    }
}
