use crate::{Digraph, DigraphError};

/// A simple directed cycle. `vertices` starts at its least vertex; step `i`
/// goes `vertices[i] -> vertices[i+1]` (cyclically) along parallel edge
/// number `parallel[i]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub parallel: Vec<u64>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_disjoint(&self, other: &Cycle) -> bool {
        !self.vertices.iter().any(|v| other.vertices.contains(v))
    }
}

struct Johnson<'a> {
    adj: &'a [Vec<usize>],
    start: usize,
    blocked: Vec<bool>,
    b_lists: Vec<Vec<usize>>,
    stack: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Johnson<'_> {
    fn unblock(&mut self, u: usize) {
        let mut work = vec![u];
        while let Some(x) = work.pop() {
            if self.blocked[x] {
                self.blocked[x] = false;
                work.extend(std::mem::take(&mut self.b_lists[x]));
            }
        }
    }

    fn circuit(&mut self, v: usize) -> bool {
        let mut closed = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for &w in self.adj[v].iter() {
            if w < self.start {
                continue;
            }
            if w == self.start {
                self.found.push(self.stack.clone());
                closed = true;
            } else if !self.blocked[w] && self.circuit(w) {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &w in self.adj[v].iter() {
                if w >= self.start && !self.b_lists[w].contains(&v) {
                    self.b_lists[w].push(v);
                }
            }
        }
        self.stack.pop();
        closed
    }
}

/// Vertex sequences of all simple cycles of the underlying simple digraph,
/// by Johnson's algorithm. Each starts at its least vertex; output order is
/// by start vertex, then depth-first discovery order.
fn vertex_cycles(g: &Digraph) -> Vec<Vec<usize>> {
    let adj = g.successors();
    let n = g.vertex_count();
    let mut all = Vec::new();
    for s in 0..n {
        let mut j = Johnson {
            adj: &adj,
            start: s,
            blocked: vec![false; n],
            b_lists: vec![Vec::new(); n],
            stack: Vec::new(),
            found: Vec::new(),
        };
        j.circuit(s);
        all.append(&mut j.found);
    }
    all
}

/// All simple cycles, parallel edges giving distinct cycles. Fails once more
/// than `cap` cycles would be produced.
pub fn simple_cycles(g: &Digraph, cap: usize) -> Result<Vec<Cycle>, DigraphError> {
    let mut out = Vec::new();
    for vs in vertex_cycles(g) {
        let mults: Vec<u64> =
            (0..vs.len()).map(|i| g.multiplicity(vs[i], vs[(i + 1) % vs.len()])).collect();
        let count = mults.iter().try_fold(1usize, |acc, &m| acc.checked_mul(m as usize));
        match count {
            Some(c) if out.len() + c <= cap => {}
            _ => return Err(DigraphError::CycleCap { cap }),
        }
        let count = count.unwrap();
        for mut idx in 0..count {
            // mixed-radix decoding, last step varying fastest
            let mut parallel = vec![0u64; vs.len()];
            for i in (0..vs.len()).rev() {
                parallel[i] = (idx % mults[i] as usize) as u64;
                idx /= mults[i] as usize;
            }
            out.push(Cycle { vertices: vs.clone(), parallel });
        }
    }
    Ok(out)
}
