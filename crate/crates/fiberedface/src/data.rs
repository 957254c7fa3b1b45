use std::path::Path;

use num_rational::BigRational;
use num_traits::Signed;
use polyexact::{linalg, LaurentPoly};
use serde::{Deserialize, Serialize};

use crate::FaceError;

/// Alexander and Teichmüller polynomials of a fibered face, with the cone
/// over the face given by generator covectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberedFaceData {
    pub name: String,
    pub alexander: LaurentPoly,
    pub teichmuller: LaurentPoly,
    pub cone: Vec<Vec<i64>>,
}

impl FiberedFaceData {
    pub fn new(
        name: impl Into<String>,
        alexander: LaurentPoly,
        teichmuller: LaurentPoly,
        cone: Vec<Vec<i64>>,
    ) -> Result<Self, FaceError> {
        let d = FiberedFaceData { name: name.into(), alexander, teichmuller, cone };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), FaceError> {
        let n = self.alexander.nvars();
        if self.teichmuller.nvars() != n {
            return Err(FaceError::Domain(format!(
                "Alexander polynomial has {n} variables, Teichmüller polynomial has {}",
                self.teichmuller.nvars()
            )));
        }
        if self.alexander.is_zero() || self.teichmuller.is_zero() {
            return Err(FaceError::Domain("zero polynomial in fibered-face data".into()));
        }
        for g in &self.cone {
            if g.len() != n {
                return Err(FaceError::Domain(format!("cone generator {g:?} has the wrong length")));
            }
            if g.iter().all(|&x| x == 0) {
                return Err(FaceError::Domain("zero cone generator".into()));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, FaceError> {
        let d: FiberedFaceData = serde_json::from_str(text).map_err(|e| FaceError::Parse(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FaceError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| FaceError::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    pub fn nvars(&self) -> usize {
        self.alexander.nvars()
    }

    /// Whether `a` is a nonnegative rational combination of the generators.
    /// By Carathéodory it suffices to try linearly independent subsets.
    pub fn in_cone(&self, a: &[i64]) -> Result<bool, FaceError> {
        let n = self.nvars();
        if a.len() != n {
            return Err(FaceError::Domain(format!("class {a:?} has {} coordinates, expected {n}", a.len())));
        }
        let target = linalg::qvec(a);
        if linalg::is_zero_vec(&target) {
            return Ok(true);
        }
        let gens: Vec<_> = self.cone.iter().map(|g| linalg::qvec(g)).collect();
        let m = gens.len();
        for mask in 1u64..(1u64 << m) {
            let subset: Vec<_> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| gens[i].clone()).collect();
            if subset.len() > n || linalg::rank(&subset, n) != subset.len() {
                continue;
            }
            if let Some(c) = linalg::coordinates(&subset, &target) {
                if c.iter().all(|x: &BigRational| !x.is_negative()) {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// `max <a, g> - min <a, g>` over the support of `delta`.
pub fn alexander_norm(delta: &LaurentPoly, a: &[i64]) -> Result<u64, FaceError> {
    if delta.is_zero() {
        return Err(FaceError::Domain("Alexander norm of the zero polynomial".into()));
    }
    if a.len() != delta.nvars() {
        return Err(FaceError::Domain(format!(
            "class {a:?} has {} coordinates, polynomial has {} variables",
            a.len(),
            delta.nvars()
        )));
    }
    let pairings: Vec<i64> = delta.support().map(|g| g.iter().zip(a).map(|(x, y)| x * y).sum()).collect();
    let max = pairings.iter().max().unwrap();
    let min = pairings.iter().min().unwrap();
    Ok((max - min) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta1() -> LaurentPoly {
        // b^2 + b(a^2 - a + 1) + a^2
        LaurentPoly::from_i64_terms(
            2,
            &[(&[0, 2], 1), (&[2, 1], 1), (&[1, 1], -1), (&[0, 1], 1), (&[2, 0], 1)],
        )
        .unwrap()
    }

    #[test]
    fn norm_examples() {
        let d = delta1();
        assert_eq!(alexander_norm(&d, &[1, 3]).unwrap(), 4);
        assert_eq!(alexander_norm(&d, &[0, 1]).unwrap(), 2);
        assert_eq!(alexander_norm(&d, &[0, 0]).unwrap(), 0);
        assert!(alexander_norm(&LaurentPoly::new(2), &[1, 0]).is_err());
        assert!(alexander_norm(&d, &[1]).is_err());
    }

    #[test]
    fn cone_membership() {
        let f = FiberedFaceData::new("x", delta1(), delta1(), vec![vec![1, 2], vec![-1, 0]]).unwrap();
        assert!(f.in_cone(&[0, 1]).unwrap());
        assert!(f.in_cone(&[1, 3]).unwrap());
        assert!(f.in_cone(&[-5, 0]).unwrap());
        assert!(!f.in_cone(&[1, 1]).unwrap());
        assert!(!f.in_cone(&[0, -1]).unwrap());
    }

    #[test]
    fn rejects_bad_data() {
        let one_var = LaurentPoly::from_i64_terms(1, &[(&[1], 1)]).unwrap();
        assert!(FiberedFaceData::new("x", delta1(), one_var, vec![]).is_err());
        assert!(FiberedFaceData::new("x", delta1(), delta1(), vec![vec![0, 0]]).is_err());
    }
}
