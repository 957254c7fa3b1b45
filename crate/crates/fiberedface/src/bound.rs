use std::cmp::Ordering;

use num_rational::BigRational;
use polyexact::{compare_roots, largest_real_root, lt_polynomial, IntPoly, RootBracket};
use serde::Serialize;

use crate::FaceError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Above,
    Equal,
    Below,
}

impl Relation {
    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Greater => Relation::Above,
            Ordering::Equal => Relation::Equal,
            Ordering::Less => Relation::Below,
        }
    }

    pub fn holds(self) -> bool {
        self != Relation::Below
    }
}

/// Which refined bound applies to a given `K = |χ|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SharpKind {
    /// `λ^K ≥ 8`
    OddEight,
    /// `λ ≥ |LT_{1,K/2}|`
    EvenLt,
    /// `λ ≥ μ²` when `K = 2`
    GoldenSquare,
}

/// Outcome of comparing `λ` against the lower bounds for `K = |χ(S)|`.
/// Every relation is decided exactly.
#[derive(Clone, Debug, Serialize)]
pub struct BoundVerdict {
    pub k: u32,
    pub multi_orbit: bool,
    /// `λ^K` against `μ⁴`.
    pub mu4: Relation,
    pub sharp_kind: SharpKind,
    /// `λ` against the refined bound for this `K`.
    pub sharp: Relation,
    pub l_value: f64,
}

impl BoundVerdict {
    pub fn satisfied(&self) -> bool {
        self.mu4.holds() && self.sharp.holds()
    }

    /// A map with at least two puncture orbits must satisfy both bounds.
    pub fn consistent(&self) -> bool {
        !self.multi_orbit || self.satisfied()
    }

    pub fn attains_sharp_bound(&self) -> bool {
        self.sharp == Relation::Equal
    }
}

/// Polynomial whose largest root is the refined lower bound on `λ`.
pub fn sharp_bound_poly(k: u32) -> Result<(SharpKind, IntPoly), FaceError> {
    match k {
        0 => Err(FaceError::Domain("K must be positive".into())),
        2 => Ok((SharpKind::GoldenSquare, IntPoly::from_i64(&[1, -3, 1]))),
        k if k % 2 == 0 => Ok((SharpKind::EvenLt, lt_polynomial(1, k / 2)?)),
        k => {
            let mut c = vec![0i64; k as usize + 1];
            c[0] = -8;
            c[k as usize] = 1;
            Ok((SharpKind::OddEight, IntPoly::from_i64(&c)))
        }
    }
}

/// `t^{2K} - 7 t^K + 1`, whose largest root is `μ^{4/K}`.
fn mu4_poly(k: u32) -> IntPoly {
    let k = k as usize;
    let mut c = vec![0i64; 2 * k + 1];
    c[0] = 1;
    c[k] = -7;
    c[2 * k] = 1;
    IntPoly::from_i64(&c)
}

pub fn bound_check(lambda: &RootBracket, k: u32, multi_orbit: bool) -> Result<BoundVerdict, FaceError> {
    let (sharp_kind, sharp_poly) = sharp_bound_poly(k)?;
    let tol: BigRational = lambda.tol.clone();
    let mu4 = largest_real_root(&mu4_poly(k), &tol)?;
    let sharp = largest_real_root(&sharp_poly, &tol)?;
    Ok(BoundVerdict {
        k,
        multi_orbit,
        mu4: Relation::from_ordering(compare_roots(lambda, &mu4)),
        sharp_kind,
        sharp: Relation::from_ordering(compare_roots(lambda, &sharp)),
        l_value: lambda.value.powi(k as i32),
    })
}
