//! Directed multigraphs built from nonnegative integer matrices.
//!
//! Convention: entry `M[r][c]` is the number of directed edges `c -> r`.
//! For a transition matrix (columns = source edges) this means an edge
//! `e -> e'` for every time the image of `e` crosses `e'`. Perron-Frobenius
//! verdicts and spectra do not depend on the choice; only the order in which
//! cycles are listed does.

mod complex;
mod cycles;
mod pf;
mod spectral;

pub use complex::{clique_polynomial, clique_polynomial_brute, curve_complex, CurveComplex};
pub use cycles::{simple_cycles, Cycle};
pub use pf::{is_perron_frobenius, is_strongly_connected, perron_vector, period};
pub use spectral::{spectral_radius, Method};

use num_traits::{Signed, ToPrimitive, Zero};
use polyexact::{IntMatrix, PolyError};
use thiserror::Error;

/// Default upper bound on the number of enumerated cycles.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_CYCLE_CAP`].
pub const CYCLE_CAP_ENV: &str = "TTX_CYCLE_CAP";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("simple-cycle enumeration exceeded the cap of {cap} cycles")]
    CycleCap { cap: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Cycle cap from `TTX_CYCLE_CAP`, falling back to the default.
pub fn cycle_cap_from_env() -> usize {
    std::env::var(CYCLE_CAP_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_CYCLE_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    /// `(from, to, multiplicity)`, sorted, multiplicities positive.
    edges: Vec<(usize, usize, u64)>,
}

impl Digraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, u64)>) -> Result<Self, DigraphError> {
        let mut merged = std::collections::BTreeMap::new();
        for (a, b, m) in edges {
            if a >= n || b >= n {
                return Err(DigraphError::Domain(format!("edge {a}->{b} out of range for {n} vertices")));
            }
            if m > 0 {
                *merged.entry((a, b)).or_insert(0u64) += m;
            }
        }
        Ok(Digraph { n, edges: merged.into_iter().map(|((a, b), m)| (a, b, m)).collect() })
    }

    pub fn from_matrix(m: &IntMatrix) -> Result<Self, DigraphError> {
        if !m.is_square() {
            return Err(DigraphError::Domain(format!("matrix is {}x{}, not square", m.nrows(), m.ncols())));
        }
        let n = m.nrows();
        let mut edges = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let x = m.get(r, c);
                if x.is_negative() {
                    return Err(DigraphError::Domain(format!("negative entry {x} at ({r},{c})")));
                }
                if !x.is_zero() {
                    let mult = x
                        .to_u64()
                        .ok_or_else(|| DigraphError::Domain(format!("entry {x} too large for a multiplicity")))?;
                    edges.push((c, r, mult));
                }
            }
        }
        Digraph::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    pub fn multiplicity(&self, from: usize, to: usize) -> u64 {
        self.edges
            .binary_search_by(|&(a, b, _)| (a, b).cmp(&(from, to)))
            .map_or(0, |i| self.edges[i].2)
    }

    /// Out-neighbours of each vertex, ignoring multiplicity, sorted.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for &(a, b, _) in &self.edges {
            out[a].push(b);
        }
        out
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.edges.iter().map(|e| e.2).sum()
    }
}

/// `digraph_from_matrix` with the crate's edge convention.
pub fn digraph_from_matrix(m: &IntMatrix) -> Result<Digraph, DigraphError> {
    Digraph::from_matrix(m)
}
