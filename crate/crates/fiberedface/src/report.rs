use num_rational::BigRational;
use num_traits::{One, Pow};
use polyexact::json::RationalText;
use polyexact::rational::{to_decimal, to_f64};
use polyexact::{largest_real_root, IntPoly, RootBracket, Sturm};
use serde::Serialize;

use crate::{alexander_norm, FaceError, FiberedFaceData};

/// Expansion factor and normalized dilatation `L = λ^{||a||}` of the
/// monodromy of the fiber in class `a`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub class: Vec<i64>,
    pub norm: u64,
    pub specialized: IntPoly,
    pub shift: i64,
    pub lambda: RootBracket,
    /// `L` lies in `[l_lo, l_hi]`.
    pub l_lo: RationalText,
    pub l_hi: RationalText,
    pub l_value: f64,
    pub l_error: f64,
    /// False when the cone test was skipped.
    pub cone_checked: bool,
}

impl ClassReport {
    pub fn l_decimal(&self, digits: usize) -> String {
        let mid = (&self.l_lo.0 + &self.l_hi.0) / BigRational::from_integer(2.into());
        to_decimal(&mid, digits)
    }
}

/// Report for a class in the recorded cone.
pub fn class_report(f: &FiberedFaceData, a: &[i64], tol: &BigRational) -> Result<ClassReport, FaceError> {
    if !f.in_cone(a)? {
        return Err(FaceError::OutsideCone { class: a.to_vec() });
    }
    build(f, a, tol, true)
}

/// Report without the cone test.
pub fn class_report_unchecked(
    f: &FiberedFaceData,
    a: &[i64],
    tol: &BigRational,
) -> Result<ClassReport, FaceError> {
    build(f, a, tol, false)
}

fn build(f: &FiberedFaceData, a: &[i64], tol: &BigRational, cone_checked: bool) -> Result<ClassReport, FaceError> {
    let norm = alexander_norm(&f.alexander, a)?;
    let spec = f.teichmuller.specialize(a)?;
    let degenerate = || FaceError::DegenerateClass { class: a.to_vec(), poly: spec.poly.to_string() };
    if spec.poly.degree().unwrap_or(0) == 0 {
        return Err(degenerate());
    }
    let sq = polyexact::squarefree(&spec.poly);
    let bound = polyexact::cauchy_bound(&sq);
    if Sturm::new(&sq).count(&BigRational::one(), &bound) == 0 {
        return Err(degenerate());
    }
    let lambda = largest_real_root(&spec.poly, tol)?;
    let e = norm as u32;
    let l_lo = Pow::pow(&lambda.lo, e);
    let l_hi = Pow::pow(&lambda.hi, e);
    let l_value = to_f64(&((&l_lo + &l_hi) / BigRational::from_integer(2.into())));
    let l_error = to_f64(&((&l_hi - &l_lo) / BigRational::from_integer(2.into())));
    Ok(ClassReport {
        class: a.to_vec(),
        norm,
        specialized: spec.poly,
        shift: spec.shift,
        lambda,
        l_lo: RationalText(l_lo),
        l_hi: RationalText(l_hi),
        l_value,
        l_error,
        cone_checked,
    })
}
