use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::json::BigIntText;
use crate::{IntPoly, PolyError};

/// Multivariate Laurent polynomial with integer coefficients, stored sparsely.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

/// Result of substituting `x_i -> t^{a_i}`: `poly = t^shift * P(t^a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    pub poly: IntPoly,
    pub shift: i64,
}

impl LaurentPoly {
    pub fn new(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<i64>, BigInt)>,
    {
        let mut p = Self::new(nvars);
        for (exp, c) in terms {
            p.add_term(exp, c)?;
        }
        Ok(p)
    }

    pub fn from_i64_terms(nvars: usize, terms: &[(&[i64], i64)]) -> Result<Self, PolyError> {
        Self::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: BigInt) -> Result<(), PolyError> {
        if exp.len() != self.nvars {
            return Err(PolyError::Dimension(format!(
                "exponent vector of length {} in a {}-variable polynomial",
                exp.len(),
                self.nvars
            )));
        }
        let slot = self.terms.entry(exp.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.terms.keys()
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::Dimension("variable counts differ".into()));
        }
        let mut out = LaurentPoly::new(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2)?;
            }
        }
        Ok(out)
    }

    /// Substitute `x_i -> t^{a_i}` and multiply by the smallest nonnegative
    /// power of `t` that clears negative exponents.
    pub fn specialize(&self, a: &[i64]) -> Result<Specialization, PolyError> {
        if a.len() != self.nvars {
            return Err(PolyError::Dimension(format!(
                "class has {} coordinates, polynomial has {} variables",
                a.len(),
                self.nvars
            )));
        }
        let mut collected: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d: i64 = e.iter().zip(a).map(|(x, y)| x * y).sum();
            *collected.entry(d).or_default() += c;
        }
        collected.retain(|_, c| !c.is_zero());
        let Some(&min) = collected.keys().next() else {
            return Ok(Specialization { poly: IntPoly::zero(), shift: 0 });
        };
        let shift = (-min).max(0);
        let max = *collected.keys().last().unwrap();
        let mut coeffs = vec![BigInt::zero(); (max + shift + 1) as usize];
        for (d, c) in collected {
            coeffs[(d + shift) as usize] = c;
        }
        Ok(Specialization { poly: IntPoly::new(coeffs), shift })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        const NAMES: [&str; 4] = ["a", "b", "c", "d"];
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| {
                    let name = if self.nvars <= 4 { NAMES[i].to_string() } else { format!("x{}", i + 1) };
                    if *x == 1 { name } else { format!("{name}^{x}") }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == BigInt::from(1) {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<i64>,
    coef: BigIntText,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    vars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentRepr {
            vars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr { exp: e.clone(), coef: BigIntText(c.clone()) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = LaurentRepr::deserialize(d)?;
        LaurentPoly::from_terms(r.vars, r.terms.into_iter().map(|t| (t.exp, t.coef.0)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lt_polynomial;

    fn theta() -> LaurentPoly {
        // b^2 - b(a^2 + a + 1) + a^2 in variables (a, b)
        LaurentPoly::from_i64_terms(
            2,
            &[(&[0, 2], 1), (&[2, 1], -1), (&[1, 1], -1), (&[0, 1], -1), (&[2, 0], 1)],
        )
        .unwrap()
    }

    #[test]
    fn specializations() {
        let s = theta().specialize(&[0, 1]).unwrap();
        assert_eq!(s.poly, IntPoly::from_i64(&[1, -3, 1]));
        let s = theta().specialize(&[1, 3]).unwrap();
        assert_eq!(s.poly, lt_polynomial(1, 2).unwrap().shift(2));
        assert_eq!(s.shift, 0);
        let five = LaurentPoly::from_i64_terms(2, &[(&[0, 0], 5)]).unwrap();
        assert_eq!(five.specialize(&[3, -1]).unwrap().poly, IntPoly::from_i64(&[5]));
    }

    #[test]
    fn negative_exponents_shift() {
        let p = LaurentPoly::from_i64_terms(1, &[(&[-2], 1), (&[1], 1)]).unwrap();
        let s = p.specialize(&[1]).unwrap();
        assert_eq!(s.shift, 2);
        assert_eq!(s.poly, IntPoly::from_i64(&[1, 0, 0, 1]));
    }

    #[test]
    fn cancellation_and_json() {
        let p = LaurentPoly::from_i64_terms(2, &[(&[1, 0], 1), (&[0, 1], -1)]).unwrap();
        assert!(p.specialize(&[1, 1]).unwrap().poly.is_zero());
        let text = serde_json::to_string(&theta()).unwrap();
        let back: LaurentPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, theta());
        assert!(LaurentPoly::from_i64_terms(2, &[(&[1], 1)]).is_err());
    }
}
