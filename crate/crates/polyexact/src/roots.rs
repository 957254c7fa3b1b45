//! Real root isolation by Sturm sequences and bisection, all in exact
//! rational arithmetic.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::json::RationalText;
use crate::rational::{to_decimal, to_f64};
use crate::{IntPoly, PolyError};

/// A real root isolated in the half-open interval `(lo, hi]` (or exactly,
/// when `lo == hi`). `poly` is the squarefree polynomial the root belongs
/// to; the bracket contains no other root of it.
#[derive(Clone, Debug)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
    pub value: f64,
    pub tol: BigRational,
    pub poly: IntPoly,
}

#[derive(Serialize)]
struct RootBracketRepr {
    lo: RationalText,
    hi: RationalText,
    lo_decimal: String,
    hi_decimal: String,
    value: f64,
    width: f64,
}

impl Serialize for RootBracket {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RootBracketRepr {
            lo: RationalText(self.lo.clone()),
            hi: RationalText(self.hi.clone()),
            lo_decimal: to_decimal(&self.lo, 12),
            hi_decimal: to_decimal(&self.hi, 12),
            value: self.value,
            width: to_f64(&self.width()),
        }
        .serialize(s)
    }
}

impl RootBracket {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Closed-interval membership.
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        to_f64(&self.lo) <= x && x <= to_f64(&self.hi)
    }

    /// Shrink the bracket until its width is at most `tol`.
    pub fn refine(&self, tol: &BigRational) -> RootBracket {
        let sturm = Sturm::new(&self.poly);
        let (lo, hi) = bisect_isolated(&sturm, self.lo.clone(), self.hi.clone(), tol);
        bracket(lo, hi, tol.clone(), self.poly.clone())
    }

    /// Bracket for the reciprocal `1/x` of this root (assumed positive).
    pub fn reciprocal(&self) -> RootBracket {
        let rev = IntPoly::new(self.poly.coeffs().iter().rev().cloned().collect());
        let poly = squarefree(&rev);
        let mut s = self.clone();
        while !s.lo.is_positive() && !s.is_exact() {
            let w = s.width() / BigRational::from_integer(2.into());
            s = s.refine(&w);
        }
        let (lo, hi) = if s.is_exact() || s.poly.sign_at(&s.hi) == 0 {
            (s.hi.recip(), s.hi.recip())
        } else {
            (s.hi.recip(), s.lo.recip())
        };
        bracket(lo, hi, self.tol.clone(), poly)
    }
}

fn bracket(lo: BigRational, hi: BigRational, tol: BigRational, poly: IntPoly) -> RootBracket {
    let value = to_f64(&((&lo + &hi) / BigRational::from_integer(2.into())));
    RootBracket { lo, hi, value, tol, poly }
}

/// Minimal rational-coefficient polynomial helper for division chains.
#[derive(Clone, Debug)]
struct QPoly(Vec<BigRational>);

impl QPoly {
    fn from_int(p: &IntPoly) -> Self {
        QPoly(p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let mut r = self.0.clone();
        let dl = d.0.last().expect("division by zero polynomial");
        let dd = d.0.len() - 1;
        if r.len() <= dd {
            return (QPoly(Vec::new()), QPoly(r).trim());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = &r[i] / dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = &r[idx] - &c * dc;
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (QPoly(q).trim(), QPoly(r).trim())
    }

    /// Clear denominators and divide out content; positive leading coefficient.
    fn to_primitive_int(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let lcm = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        IntPoly::new(ints.into_iter().map(|c| c / &g * &sign).collect())
    }
}

fn qgcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        // content removal keeps coefficient growth in check
        let r = QPoly::from_int(&a.rem(&b).to_primitive_int());
        a = b;
        b = r;
    }
    a
}

/// Greatest common divisor, primitive with positive leading coefficient.
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    qgcd(&QPoly::from_int(a), &QPoly::from_int(b)).to_primitive_int()
}

/// Exact quotient over the rationals, made primitive.
pub fn poly_div_exact(a: &IntPoly, b: &IntPoly) -> IntPoly {
    QPoly::from_int(a).div_rem(&QPoly::from_int(b)).0.to_primitive_int()
}

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn squarefree(p: &IntPoly) -> IntPoly {
    if p.degree().unwrap_or(0) == 0 {
        return QPoly::from_int(p).to_primitive_int();
    }
    let g = poly_gcd(p, &p.derivative());
    poly_div_exact(p, &g)
}

/// Bound exceeding the absolute value of every root (Cauchy).
pub fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    BigRational::one() + BigRational::new(m, lead)
}

/// Sturm chain of a squarefree polynomial.
pub struct Sturm {
    chain: Vec<IntPoly>,
}

impl Sturm {
    pub fn new(p: &IntPoly) -> Self {
        let p0 = QPoly::from_int(p);
        let p1 = QPoly::from_int(&p.derivative());
        let mut chain = vec![p0.to_primitive_int_signed(), p1.to_primitive_int_signed()];
        let (mut a, mut b) = (p0, p1);
        while !b.is_zero() {
            let r = a.rem(&b);
            if r.is_zero() {
                break;
            }
            let neg = QPoly(r.0.iter().map(|c| -c).collect()).to_primitive_int_signed();
            chain.push(neg.clone());
            a = b;
            b = QPoly::from_int(&neg);
        }
        chain.retain(|q| !q.is_zero());
        Sturm { chain }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for q in &self.chain {
            let v = q.sign_at(x);
            if v == 0 {
                continue;
            }
            let pos = v > 0;
            if let Some(l) = last {
                if l != pos {
                    count += 1;
                }
            }
            last = Some(pos);
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations(a).saturating_sub(self.variations(b))
    }

    pub fn poly(&self) -> &IntPoly {
        &self.chain[0]
    }
}

impl QPoly {
    /// Like `to_primitive_int` but keeps the sign (Sturm chains need it).
    fn to_primitive_int_signed(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let lcm = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        IntPoly::new(ints.into_iter().map(|c| c / &g).collect())
    }
}

fn half(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(2.into())
}

/// Bisect an interval `(lo, hi]` holding exactly one root down to `tol`.
fn bisect_isolated(
    sturm: &Sturm,
    mut lo: BigRational,
    mut hi: BigRational,
    tol: &BigRational,
) -> (BigRational, BigRational) {
    let p = sturm.poly();
    if lo == hi {
        return (lo, hi);
    }
    while &(&hi - &lo) > tol {
        let mid = half(&lo, &hi);
        if p.sign_at(&mid) == 0 {
            return (mid.clone(), mid);
        }
        if sturm.count(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

fn check_tol(tol: &BigRational) -> Result<(), PolyError> {
    if tol.is_positive() {
        Ok(())
    } else {
        Err(PolyError::Domain("tolerance must be positive".into()))
    }
}

/// Largest real root, required to be positive.
pub fn largest_real_root(p: &IntPoly, tol: &BigRational) -> Result<RootBracket, PolyError> {
    check_tol(tol)?;
    if p.degree().unwrap_or(0) == 0 {
        return Err(PolyError::NotFound("constant polynomial has no roots".into()));
    }
    let sq = squarefree(p);
    let sturm = Sturm::new(&sq);
    let zero = BigRational::zero();
    let mut hi = cauchy_bound(&sq);
    if sturm.count(&zero, &hi) == 0 {
        return Err(PolyError::NotFound(format!("no positive real root of {p}")));
    }
    let mut lo = zero;
    // invariant: at least one root in (lo, hi], none above hi
    loop {
        let n = sturm.count(&lo, &hi);
        if n == 1 && &(&hi - &lo) <= tol {
            break;
        }
        let mid = half(&lo, &hi);
        let above = sturm.count(&mid, &hi);
        if above == 0 && sq.sign_at(&mid) == 0 {
            return Ok(bracket(mid.clone(), mid, tol.clone(), sq));
        }
        if above >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(bracket(lo, hi, tol.clone(), sq))
}

/// Smallest positive real root.
pub fn smallest_positive_root(p: &IntPoly, tol: &BigRational) -> Result<RootBracket, PolyError> {
    check_tol(tol)?;
    if p.degree().unwrap_or(0) == 0 {
        return Err(PolyError::NotFound("constant polynomial has no roots".into()));
    }
    let sq = squarefree(p);
    let sturm = Sturm::new(&sq);
    let mut lo = BigRational::zero();
    let mut hi = cauchy_bound(&sq);
    if sturm.count(&lo, &hi) == 0 {
        return Err(PolyError::NotFound(format!("no positive real root of {p}")));
    }
    // invariant: no root in (0, lo], at least one in (lo, hi]
    loop {
        let n = sturm.count(&lo, &hi);
        if n == 1 && &(&hi - &lo) <= tol {
            break;
        }
        let mid = half(&lo, &hi);
        let below = sturm.count(&lo, &mid);
        if below == 1 && sq.sign_at(&mid) == 0 {
            return Ok(bracket(mid.clone(), mid, tol.clone(), sq));
        }
        if below >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(bracket(lo, hi, tol.clone(), sq))
}

/// Exact comparison of two isolated real algebraic numbers.
pub fn compare_roots(a: &RootBracket, b: &RootBracket) -> Ordering {
    let (mut a, mut b) = (a.clone(), b.clone());
    let g = poly_gcd(&a.poly, &b.poly);
    let common = if g.degree().unwrap_or(0) > 0 { Some(Sturm::new(&squarefree(&g))) } else { None };
    let two = BigRational::from_integer(2.into());
    loop {
        if a.is_exact() && b.is_exact() {
            return a.lo.cmp(&b.lo);
        }
        if a.hi < b.lo || (a.hi == b.lo && !b.is_exact()) {
            return Ordering::Less;
        }
        if b.hi < a.lo || (b.hi == a.lo && !a.is_exact()) {
            return Ordering::Greater;
        }
        if let Some(c) = &common {
            let lo = a.lo.clone().max(b.lo.clone());
            let hi = a.hi.clone().min(b.hi.clone());
            if lo <= hi && root_in_closed(c, &lo, &hi) {
                // both brackets isolate, so both roots are that common root
                return Ordering::Equal;
            }
        }
        let (wa, wb) = (a.width(), b.width());
        if wa >= wb {
            a = a.refine(&(wa / &two));
        } else {
            b = b.refine(&(wb / &two));
        }
    }
}

fn root_in_closed(s: &Sturm, lo: &BigRational, hi: &BigRational) -> bool {
    s.poly().sign_at(lo) == 0 || s.count(lo, hi) > 0
}

/// Decimal string of the bracket midpoint.
pub fn bracket_decimal(b: &RootBracket, digits: usize) -> String {
    to_decimal(&half(&b.lo, &b.hi), digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, ten_to_minus};
    use crate::lt_polynomial;

    fn tol9() -> BigRational {
        ten_to_minus(9)
    }

    #[test]
    fn golden_square() {
        let p = IntPoly::from_i64(&[1, -3, 1]);
        let r = largest_real_root(&p, &tol9()).unwrap();
        assert!(r.width() <= tol9());
        assert!((r.value - 2.618033988749895).abs() < 1e-9);
        let s = smallest_positive_root(&p, &tol9()).unwrap();
        assert!((s.value - 0.3819660112501051).abs() < 1e-9);
    }

    #[test]
    fn exact_roots() {
        let p = IntPoly::from_i64(&[-1, 1]);
        let r = largest_real_root(&p, &tol9()).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.lo, int(1));
        let q = IntPoly::from_i64(&[1, -1]);
        let s = smallest_positive_root(&q, &tol9()).unwrap();
        assert_eq!(s.lo, int(1));
    }

    #[test]
    fn lt12_root() {
        let p = lt_polynomial(1, 2).unwrap();
        let r = largest_real_root(&p, &tol9()).unwrap();
        assert!(r.contains_f64(1.7220838057));
        assert!((r.value.powi(3) - 5.107).abs() < 1e-3);
        let s = smallest_positive_root(&p, &tol9()).unwrap();
        assert!((s.value - 0.580692).abs() < 1e-6);
    }

    #[test]
    fn no_positive_root() {
        let p = IntPoly::from_i64(&[1, 0, 1]);
        assert!(matches!(largest_real_root(&p, &tol9()), Err(PolyError::NotFound(_))));
        let q = IntPoly::from_i64(&[2, 1]);
        assert!(smallest_positive_root(&q, &tol9()).is_err());
    }

    #[test]
    fn repeated_roots() {
        // (t-2)^2 (t-1)
        let p = &IntPoly::from_i64(&[-2, 1]).pow(2) * &IntPoly::from_i64(&[-1, 1]);
        let r = largest_real_root(&p, &tol9()).unwrap();
        assert!(r.contains(&int(2)));
        let s = smallest_positive_root(&p, &tol9()).unwrap();
        assert!(s.contains(&int(1)));
    }

    #[test]
    fn comparisons() {
        let a = largest_real_root(&IntPoly::from_i64(&[1, -3, 1]), &rat(1, 10)).unwrap();
        let b = largest_real_root(&IntPoly::from_i64(&[1, -3, 1]).pow(2), &rat(1, 1000)).unwrap();
        assert_eq!(compare_roots(&a, &b), Ordering::Equal);
        let c = largest_real_root(&IntPoly::from_i64(&[-5, 0, 0, 1]), &rat(1, 10)).unwrap();
        assert_eq!(compare_roots(&a, &c), Ordering::Greater);
        assert_eq!(compare_roots(&c, &a), Ordering::Less);
        let d = largest_real_root(&IntPoly::from_i64(&[-2, 1]), &rat(1, 10)).unwrap();
        let e = largest_real_root(&IntPoly::from_i64(&[-4, 0, 1]), &rat(1, 10)).unwrap();
        assert_eq!(compare_roots(&d, &e), Ordering::Equal);
    }

    #[test]
    fn reciprocal_bracket() {
        let a = largest_real_root(&lt_polynomial(1, 3).unwrap(), &tol9()).unwrap();
        let b = a.reciprocal();
        let s = smallest_positive_root(&lt_polynomial(1, 3).unwrap(), &tol9()).unwrap();
        assert_eq!(compare_roots(&b, &s), Ordering::Equal);
    }
}
