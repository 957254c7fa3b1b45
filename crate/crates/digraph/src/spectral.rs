use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Signed;
use polyexact::{char_poly, largest_real_root, smallest_positive_root, IntMatrix, RootBracket};
use serde::{Deserialize, Serialize};

use crate::{clique_polynomial, curve_complex, is_perron_frobenius, Digraph, DigraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Charpoly,
    Clique,
}

impl FromStr for Method {
    type Err = DigraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "charpoly" => Ok(Method::Charpoly),
            "clique" => Ok(Method::Clique),
            other => Err(DigraphError::Domain(format!("unknown method `{other}` (expected charpoly or clique)"))),
        }
    }
}

/// Bracket of width at most `tol` around `1/x`, where `x` is the smallest
/// positive root of `q`.
fn reciprocal_of_smallest(q: &polyexact::IntPoly, tol: &BigRational) -> Result<RootBracket, DigraphError> {
    let mut s = smallest_positive_root(q, tol)?;
    loop {
        if s.is_exact() {
            return Ok(s.reciprocal());
        }
        if s.lo.is_positive() {
            // width of [1/hi, 1/lo] is (hi - lo) / (lo hi)
            let w = s.width() / (&s.lo * &s.hi);
            if &w <= tol {
                let mut r = s.reciprocal();
                r.tol = tol.clone();
                return Ok(r);
            }
        }
        let half = s.width() / BigRational::from_integer(2.into());
        s = s.refine(&half);
    }
}

fn brackets_close(a: &RootBracket, b: &RootBracket, slack: &BigRational) -> bool {
    a.lo <= &b.hi + slack && b.lo <= &a.hi + slack
}

/// Spectral radius of a Perron-Frobenius matrix.
///
/// `Charpoly` isolates the largest real root of the characteristic
/// polynomial. `Clique` takes the reciprocal of the smallest positive root of
/// the clique polynomial of the curve complex, and cross-checks it against the
/// characteristic polynomial route to within `10 * tol`.
pub fn spectral_radius(
    m: &IntMatrix,
    method: Method,
    tol: &BigRational,
    cycle_cap: usize,
) -> Result<RootBracket, DigraphError> {
    if !is_perron_frobenius(m)? {
        return Err(DigraphError::Domain("matrix is not Perron-Frobenius".into()));
    }
    let by_charpoly = largest_real_root(&char_poly(m)?, tol)?;
    match method {
        Method::Charpoly => Ok(by_charpoly),
        Method::Clique => {
            let g = Digraph::from_matrix(m)?;
            let q = clique_polynomial(&curve_complex(&g, cycle_cap)?);
            let r = reciprocal_of_smallest(&q, tol)?;
            let slack = tol * BigRational::from_integer(10.into());
            if !brackets_close(&r, &by_charpoly, &slack) {
                return Err(DigraphError::Inconsistent(format!(
                    "clique route gives {:.12}, characteristic polynomial gives {:.12}",
                    r.value, by_charpoly.value
                )));
            }
            Ok(r)
        }
    }
}
