//! Burau matrices: exact rational evaluation (reduced and unreduced) and the
//! reduced matrix over `Z[t, t^{-1}]`.
//!
//! A braid word acts on the right, `B(w_1 w_2) = B(w_1)·B(w_2)`. For `σ_i`
//! the reduced matrix differs from the identity only in column `i`, which
//! becomes `(t, −t, 1)` in rows `i−1, i, i+1`; for `σ_i^{-1}` it becomes
//! `(1, −t^{-1}, t^{-1})`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::InvariantError;
use crate::braid::BraidWord;

pub type RationalMatrix = Vec<Vec<BigRational>>;

fn identity(n: usize) -> RationalMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

/// Reduced Burau matrix of `w` at `t`, size `(n−1)×(n−1)`.
pub fn burau_reduced_eval(w: &BraidWord, t: &BigRational) -> Result<RationalMatrix, InvariantError> {
    if t.is_zero() {
        return Err(InvariantError::ZeroParameter);
    }
    let n = w.strands();
    if n < 2 {
        return Err(InvariantError::TooFewStrands(n));
    }
    let m = n - 1;
    let t_inv = t.recip();
    let mut mat = identity(m);
    for letter in w.letters() {
        let c = letter.index() - 1;
        let (left, mid, right) = if letter.is_positive() {
            (t.clone(), -t.clone(), BigRational::one())
        } else {
            (BigRational::one(), -t_inv.clone(), t_inv.clone())
        };
        for row in mat.iter_mut() {
            let mut v = &row[c] * &mid;
            if c > 0 {
                v += &row[c - 1] * &left;
            }
            if c + 1 < m {
                v += &row[c + 1] * &right;
            }
            row[c] = v;
        }
    }
    Ok(mat)
}

/// Unreduced Burau matrix of `w` at `t`, size `n×n`. `σ_i` acts on columns
/// `i−1, i` (0-based) through the block `[[1−t, t], [1, 0]]`.
pub fn burau_unreduced_eval(w: &BraidWord, t: &BigRational) -> Result<RationalMatrix, InvariantError> {
    if t.is_zero() {
        return Err(InvariantError::ZeroParameter);
    }
    let n = w.strands();
    let one = BigRational::one();
    let t_inv = t.recip();
    let mut mat = identity(n);
    for letter in w.letters() {
        let c = letter.index() - 1;
        for row in mat.iter_mut() {
            let (x, y) = (row[c].clone(), row[c + 1].clone());
            if letter.is_positive() {
                row[c] = &x * (&one - t) + &y;
                row[c + 1] = &x * t;
            } else {
                row[c] = &y * &t_inv;
                row[c + 1] = &x + &y * (&one - &t_inv);
            }
        }
    }
    Ok(mat)
}

/// Integer coefficients for the symbolic matrix. `i128` overflows report
/// `None`, and the caller retries with `BigInt`.
pub trait Coeff: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    fn abs_big(&self) -> BigUint;
    fn rem_prime(&self, p: u64) -> u64;
    fn to_bigint(&self) -> BigInt;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i128::checked_add(*self, *other)
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn abs_big(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
    fn rem_prime(&self, p: u64) -> u64 {
        self.rem_euclid(p as i128) as u64
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn abs_big(&self) -> BigUint {
        self.abs().to_biguint().expect("absolute value is nonnegative")
    }
    fn rem_prime(&self, p: u64) -> u64 {
        let p = BigInt::from(p);
        let r = ((self % &p) + &p) % &p;
        r.to_u64().expect("residue fits in u64")
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// A dense Laurent polynomial `Σ c_k t^{lo+k}` used inside the symbolic matrix.
/// Not necessarily trimmed.
#[derive(Debug, Clone)]
pub struct Entry<C> {
    pub lo: i64,
    pub coeffs: Vec<C>,
}

impl<C: Coeff> Entry<C> {
    pub fn zero() -> Self {
        Self { lo: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self { lo: 0, coeffs: vec![c] }
    }

    pub fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.lo = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Degree range of a trimmed nonzero entry.
    pub fn range(&self) -> Option<(i64, i64)> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.coeffs.len() as i64 - 1))
        }
    }

    /// `self += ± t^shift · other`.
    pub fn add_shifted(&mut self, other: &Self, shift: i64, negate: bool) -> Option<()> {
        if other.coeffs.is_empty() {
            return Some(());
        }
        let olo = other.lo + shift;
        let ohi = olo + other.coeffs.len() as i64;
        if self.coeffs.is_empty() {
            self.lo = olo;
        }
        let lo = self.lo.min(olo);
        let hi = (self.lo + self.coeffs.len() as i64).max(ohi);
        if lo < self.lo {
            let pad = (self.lo - lo) as usize;
            let mut v = vec![C::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.lo = lo;
        }
        self.coeffs.resize((hi - lo) as usize, C::zero());
        let off = (olo - lo) as usize;
        for (k, c) in other.coeffs.iter().enumerate() {
            let term = if negate { c.checked_neg()? } else { c.clone() };
            self.coeffs[off + k] = self.coeffs[off + k].checked_add(&term)?;
        }
        Some(())
    }

    pub fn l1_norm(&self) -> BigUint {
        self.coeffs.iter().map(|c| c.abs_big()).sum()
    }
}

pub type SymbolicMatrix<C> = Vec<Vec<Entry<C>>>;

/// Reduced Burau matrix of `w` over `Z[t, t^{-1}]`, or `None` on coefficient overflow.
pub fn burau_reduced_symbolic<C: Coeff>(w: &BraidWord) -> Option<SymbolicMatrix<C>> {
    let m = w.strands().saturating_sub(1);
    let mut mat: SymbolicMatrix<C> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { Entry::constant(C::one()) } else { Entry::zero() })
                .collect()
        })
        .collect();
    for letter in w.letters() {
        let c = letter.index() - 1;
        let (left, mid, right) = if letter.is_positive() { (1, 1, 0) } else { (0, -1, -1) };
        for row in mat.iter_mut() {
            let mut v = Entry::zero();
            if c > 0 {
                v.add_shifted(&row[c - 1], left, false)?;
            }
            v.add_shifted(&row[c], mid, true)?;
            if c + 1 < m {
                v.add_shifted(&row[c + 1], right, false)?;
            }
            v.trim();
            row[c] = v;
        }
    }
    Some(mat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn word(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::from_signed(n, l).unwrap()
    }

    #[test]
    fn single_generator() {
        let m = burau_reduced_eval(&word(2, &[1]), &q(1)).unwrap();
        assert_eq!(m, vec![vec![q(-1)]]);
        let m = burau_reduced_eval(&word(2, &[1]), &q(5)).unwrap();
        assert_eq!(m, vec![vec![q(-5)]]);
    }

    #[test]
    fn empty_word_is_identity() {
        let m = burau_reduced_eval(&word(4, &[]), &q(3)).unwrap();
        assert_eq!(m, identity(3));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            burau_reduced_eval(&word(2, &[1]), &q(0)),
            Err(InvariantError::ZeroParameter)
        );
        assert_eq!(
            burau_reduced_eval(&word(1, &[]), &q(2)),
            Err(InvariantError::TooFewStrands(1))
        );
    }

    #[test]
    fn inverse_letters_cancel() {
        let t = BigRational::new(BigInt::from(3), BigInt::from(7));
        for w in [word(4, &[2, -2]), word(4, &[-3, 3]), word(4, &[1, 2, 3, -3, -2, -1])] {
            assert_eq!(burau_reduced_eval(&w, &t).unwrap(), identity(3));
            assert_eq!(burau_unreduced_eval(&w, &t).unwrap(), identity(4));
        }
    }

    #[test]
    fn braid_relations_hold() {
        let t = q(-2);
        let a = burau_reduced_eval(&word(4, &[1, 2, 1]), &t).unwrap();
        let b = burau_reduced_eval(&word(4, &[2, 1, 2]), &t).unwrap();
        assert_eq!(a, b);
        let a = burau_reduced_eval(&word(4, &[1, 3]), &t).unwrap();
        let b = burau_reduced_eval(&word(4, &[3, 1]), &t).unwrap();
        assert_eq!(a, b);
        let a = burau_unreduced_eval(&word(3, &[1, 2, 1]), &t).unwrap();
        let b = burau_unreduced_eval(&word(3, &[2, 1, 2]), &t).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn symbolic_matches_evaluation() {
        let w = word(4, &[1, 2, -3, 2, -1, 3, 3]);
        let sym = burau_reduced_symbolic::<i128>(&w).unwrap();
        for t in [q(2), q(-3), BigRational::new(BigInt::from(5), BigInt::from(2))] {
            let num = burau_reduced_eval(&w, &t).unwrap();
            for (i, row) in sym.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    let mut v = BigRational::zero();
                    for (k, c) in e.coeffs.iter().enumerate() {
                        let exp = e.lo + k as i64;
                        let tp = if exp >= 0 {
                            num_traits::pow(t.clone(), exp as usize)
                        } else {
                            num_traits::pow(t.recip(), (-exp) as usize)
                        };
                        v += BigRational::from_integer(BigInt::from(*c)) * tp;
                    }
                    assert_eq!(v, num[i][j]);
                }
            }
        }
    }

    #[test]
    fn entry_overflow_is_reported() {
        let mut e = Entry::constant(i128::MAX);
        assert!(e.add_shifted(&Entry::constant(1), 0, false).is_none());
        let mut e = Entry::constant(BigInt::from(i128::MAX));
        assert!(e.add_shifted(&Entry::constant(BigInt::from(1)), 0, false).is_some());
    }
}
