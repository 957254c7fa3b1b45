use num_bigint::BigInt;
use num_rational::BigRational;
use polyexact::linalg::{self, QVec};
use polyexact::IntMatrix;
use traintrack::{DoubleCover, TrainTrack};

/// Transfer operators of a finite normal covering of tracks:
/// `(π_* w̃)(e) = Σ_{π(ẽ)=e} w̃(ẽ)`, `(π^* w)(ẽ) = w(π(ẽ))` and
/// `(s w̃)(ẽ) = Σ_{g ∈ G} w̃(g ẽ)`.
#[derive(Clone, Debug)]
pub struct CoveringOperators {
    pub degree: usize,
    /// `π_*`, base edges × cover edges.
    pub push: IntMatrix,
    /// `π^*`, cover edges × base edges.
    pub pull: IntMatrix,
    /// `s`, cover edges × cover edges.
    pub sum: IntMatrix,
}

impl CoveringOperators {
    pub fn from_double_cover(base: &TrainTrack, d: &DoubleCover) -> Self {
        let be = base.edge_ids(None);
        let ce = d.cover.edge_ids(None);
        let mut push = IntMatrix::zeros(be.len(), ce.len());
        let mut sum = IntMatrix::zeros(ce.len(), ce.len());
        let one = BigInt::from(1);
        for (j, e) in ce.iter().enumerate() {
            let i = be.binary_search(&d.edge_proj[e]).unwrap();
            push.add_to(i, j, &one);
            // G = {id, deck}
            sum.add_to(j, j, &one);
            let g = ce.binary_search(&DoubleCover::deck_edge(*e)).unwrap();
            sum.add_to(j, g, &one);
        }
        let pull = push.transpose();
        CoveringOperators { degree: 2, push, pull, sum }
    }

    pub fn push(&self, w: &[BigRational]) -> QVec {
        linalg::int_mat_vec(&self.push, w)
    }

    pub fn pull(&self, w: &[BigRational]) -> QVec {
        linalg::int_mat_vec(&self.pull, w)
    }

    pub fn symmetrize(&self, w: &[BigRational]) -> QVec {
        linalg::int_mat_vec(&self.sum, w)
    }
}
