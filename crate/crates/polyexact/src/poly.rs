use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::PolyError;

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
/// `coeffs[i]` is the coefficient of `t^i`; trailing zeros are always trimmed,
/// so derived equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^deg`
    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `P(x)` as `-1`, `0` or `1`, computed in integers as
    /// `q^n P(p/q)` without any rational normalization.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Substitute `t -> t^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return Self::constant(self.coeffs.iter().sum());
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Reciprocity in the sense `p(t) = (-t)^n p(1/t)`, i.e. `c_i = (-1)^n c_{n-i}`.
    pub fn is_reciprocal(&self) -> Result<bool, PolyError> {
        let n = self
            .degree()
            .ok_or_else(|| PolyError::Domain("reciprocity of the zero polynomial".into()))?;
        let odd = n % 2 == 1;
        Ok((0..=n).all(|i| {
            let mirror = &self.coeffs[n - i];
            if odd {
                self.coeffs[i] == -mirror
            } else {
                &self.coeffs[i] == mirror
            }
        }))
    }

    /// Whether the roots, with multiplicity, are closed under `x ↦ 1/x`:
    /// the reversed coefficient list is `±` the original one. Unlike
    /// [`IntPoly::is_reciprocal`] this accepts an odd number of roots at `-1`,
    /// as in `t + 1` or `t² - 1`.
    pub fn has_inversion_closed_roots(&self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Err(PolyError::Domain("reciprocity of the zero polynomial".into()));
        }
        let rev: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        let neg: Vec<BigInt> = rev.iter().map(|c| -c).collect();
        Ok(rev == self.coeffs || neg == self.coeffs)
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

/// `LT_{a,b}(t) = t^{2b} - t^{b+a} - t^b - t^{b-a} + 1` for `0 < a < b`.
pub fn lt_polynomial(a: u32, b: u32) -> Result<IntPoly, PolyError> {
    if a == 0 || a >= b {
        return Err(PolyError::Domain(format!(
            "LT polynomial needs 0 < a < b, got a={a}, b={b}"
        )));
    }
    let (a, b) = (a as usize, b as usize);
    let mut c = vec![0i64; 2 * b + 1];
    c[0] += 1;
    c[b - a] -= 1;
    c[b] -= 1;
    c[b + a] -= 1;
    c[2 * b] += 1;
    Ok(IntPoly::from_i64(&c))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct IntPolyRepr {
    coeffs: Vec<crate::json::BigIntText>,
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IntPolyRepr {
            coeffs: self.coeffs.iter().cloned().map(crate::json::BigIntText).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = IntPolyRepr::deserialize(d)?;
        Ok(IntPoly::new(r.coeffs.into_iter().map(|c| c.0).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_displays() {
        let p = IntPoly::from_i64(&[1, -1, -1, -1, 1, 0, 0]);
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.to_string(), "t^4 - t^3 - t^2 - t + 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn reciprocity() {
        assert!(IntPoly::from_i64(&[1, -1, -1, -1, 1]).is_reciprocal().unwrap());
        assert!(IntPoly::from_i64(&[1, -3, 1]).is_reciprocal().unwrap());
        assert!(!IntPoly::from_i64(&[-1, -1, 1]).is_reciprocal().unwrap());
        // odd degree: anti-palindrome
        assert!(IntPoly::from_i64(&[-1, 1]).is_reciprocal().unwrap());
        assert!(!IntPoly::from_i64(&[1, 1]).is_reciprocal().unwrap());
        assert!(IntPoly::zero().is_reciprocal().is_err());
        assert!(IntPoly::from_i64(&[1, 1]).has_inversion_closed_roots().unwrap());
        assert!(IntPoly::from_i64(&[-1, 0, 1]).has_inversion_closed_roots().unwrap());
        assert!(!IntPoly::from_i64(&[-1, 0, 1]).is_reciprocal().unwrap());
        assert!(!IntPoly::from_i64(&[0, 1]).has_inversion_closed_roots().unwrap());
        assert!(!IntPoly::from_i64(&[-1, -1, 1]).has_inversion_closed_roots().unwrap());
    }

    #[test]
    fn lt_examples() {
        assert_eq!(lt_polynomial(1, 2).unwrap(), IntPoly::from_i64(&[1, -1, -1, -1, 1]));
        assert_eq!(
            lt_polynomial(1, 3).unwrap(),
            IntPoly::from_i64(&[1, 0, -1, -1, -1, 0, 1])
        );
        assert_eq!(
            lt_polynomial(3, 5).unwrap(),
            IntPoly::from_i64(&[1, 0, -1, 0, 0, -1, 0, 0, -1, 0, 1])
        );
        assert!(lt_polynomial(2, 2).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = IntPoly::from_i64(&[1, 1]);
        let b = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(&a * &b, IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(&a - &a, IntPoly::zero());
        assert_eq!(a.pow(3), IntPoly::from_i64(&[1, 3, 3, 1]));
        assert_eq!(IntPoly::from_i64(&[1, 2]).compose_power(3), IntPoly::from_i64(&[1, 0, 0, 2]));
    }

    #[test]
    fn json_roundtrip() {
        let p = IntPoly::from_i64(&[1, -3, 1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":["1","-3","1"]}"#);
        let q: IntPoly = serde_json::from_str(r#"{"coeffs":[1,"-3",1]}"#).unwrap();
        assert_eq!(p, q);
    }
}
