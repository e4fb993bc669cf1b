//! Laurent polynomials in one variable with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `Σ coeffs[k] · t^(min_degree + k)`, always trimmed so the first and last
/// stored coefficients are nonzero. The zero polynomial has no coefficients
/// and `min_degree = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_degree: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self {
            min_degree: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, degree: i64) -> Self {
        Self::from_coeffs(degree, vec![c.into()])
    }

    /// The variable `t`.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    pub fn from_coeffs(min_degree: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { min_degree, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(min_degree: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(min_degree, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_degree += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_degree = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_degree == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// Highest exponent; equals `min_degree` for the zero polynomial.
    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.coeffs.len().saturating_sub(1) as i64
    }

    pub fn span(&self) -> i64 {
        self.max_degree() - self.min_degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn coeff(&self, degree: i64) -> BigInt {
        let k = degree - self.min_degree;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            min_degree: self.min_degree + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.min_degree, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `t ↦ t^w`.
    pub fn substitute_power(&self, w: u64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        assert!(w >= 1, "substitution exponent must be positive");
        let w = w as i64;
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * w as usize + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * w as usize] = c.clone();
        }
        Self::from_coeffs(self.min_degree * w, coeffs)
    }

    /// Canonical representative up to units `±t^k`: lowest exponent zero,
    /// lowest coefficient positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let flip = self.coeffs[0].is_negative();
        Self {
            min_degree: 0,
            coeffs: if flip {
                self.coeffs.iter().map(|c| -c).collect()
            } else {
                self.coeffs.clone()
            },
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero() || (self.min_degree == 0 && self.coeffs[0].is_positive())
    }

    /// Exact division by `divisor` over `Z[t^{±1}]`. Returns `None` when the
    /// quotient does not exist with integer coefficients.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = divisor.coeffs.last().unwrap();
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.min_degree - divisor.min_degree, quot))
    }

    /// Evaluates at an integer point; negative exponents are not allowed there.
    pub fn eval_at(&self, t: &BigInt) -> Option<BigInt> {
        if self.min_degree < 0 && !self.is_zero() {
            return None;
        }
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        Some(acc * num_traits::pow(t.clone(), self.min_degree as usize))
    }

    /// Renders in the variable named `var`, e.g. `1 - t + t^2`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_degree + k as i64;
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_degree.min(rhs.min_degree);
        let hi = self.max_degree().max(rhs.max_degree());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.min_degree - lo) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.min_degree - lo) as usize + k] += c;
        }
        LaurentPoly::from_coeffs(lo, coeffs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            min_degree: self.min_degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.min_degree + rhs.min_degree, coeffs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| &acc + &p)
    }
}

fn bigint_to_number(c: &BigInt) -> serde_json::Number {
    // arbitrary_precision keeps every digit
    serde_json::from_str(&c.to_string()).expect("integer literal is valid JSON")
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let coeffs: Vec<serde_json::Number> = self.coeffs.iter().map(bigint_to_number).collect();
        let mut st = ser.serialize_struct("LaurentPoly", 2)?;
        st.serialize_field("min_degree", &self.min_degree)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            min_degree: i64,
            coeffs: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(de)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|v| {
                let text = match v {
                    serde_json::Value::Number(n) => n.to_string(),
                    serde_json::Value::String(s) => s.clone(),
                    _ => return Err(D::Error::custom("coefficient must be an integer")),
                };
                text.parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("bad coefficient {text}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPoly::from_coeffs(raw.min_degree, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(min: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(min, c)
    }

    #[test]
    fn trimming_is_canonical() {
        assert_eq!(p(-2, &[0, 0, 1, 2, 0]), p(0, &[1, 2]));
        assert_eq!(p(5, &[0, 0]), LaurentPoly::zero());
        assert_eq!(LaurentPoly::zero().min_degree(), 0);
    }

    #[test]
    fn ring_operations() {
        let a = p(0, &[1, -1]);
        let b = p(0, &[1, 1]);
        assert_eq!(&a * &b, p(0, &[1, 0, -1]));
        assert_eq!(&a + &b, p(0, &[2]));
        assert_eq!(&a - &a, LaurentPoly::zero());
        assert_eq!(p(-1, &[1, 1]).pow(2), p(-2, &[1, 2, 1]));
    }

    #[test]
    fn normalization_removes_units() {
        let q = p(-3, &[-1, 1, -1]);
        assert_eq!(q.normalized(), p(0, &[1, -1, 1]));
        assert!(q.normalized().is_normalized());
        assert_eq!(p(4, &[3]).normalized(), LaurentPoly::constant(3));
    }

    #[test]
    fn exact_division() {
        let num = p(0, &[1, 0, 0, 1]);
        let den = p(0, &[1, 1]);
        assert_eq!(num.exact_div(&den), Some(p(0, &[1, -1, 1])));
        assert_eq!(p(0, &[1, 0, 1]).exact_div(&den), None);
        assert_eq!(p(0, &[1]).exact_div(&p(0, &[2])), None);
        assert_eq!(p(3, &[2, 2]).exact_div(&p(1, &[1, 1])), Some(p(2, &[2])));
    }

    #[test]
    fn power_substitution() {
        assert_eq!(p(0, &[1, -1, 1]).substitute_power(3), p(0, &[1, 0, 0, -1, 0, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(0, &[1, -1, 1]).to_string(), "1 - t + t^2");
        assert_eq!(p(-2, &[-1, 0, 3]).display_in("A"), "-A^-2 + 3");
    }

    #[test]
    fn json_round_trip_keeps_big_coefficients() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let q = LaurentPoly::from_coeffs(0, vec![big, BigInt::from(-1)]);
        let text = serde_json::to_string(&q).unwrap();
        assert_eq!(
            text,
            r#"{"min_degree":0,"coeffs":[123456789012345678901234567890,-1]}"#
        );
        let back: LaurentPoly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, q);
    }
}
