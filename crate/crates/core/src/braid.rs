//! Braid words on `n` strands and the combinatorics of their closures.
//!
//! Letters are 1-based Artin generators: `Letter::pos(i)` is `σ_i`,
//! `Letter::neg(i)` is `σ_i^{-1}`. Words are immutable values; every
//! operation returns a new word.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("syllable ({r}, {s}) is invalid: need r >= 2 and s >= 1")]
    InvalidSyllable { r: u64, s: u64 },
    #[error("tangle on {tangle} strands does not fit into {strands} strands")]
    TangleTooWide { tangle: usize, strands: usize },
    #[error("word is not positive")]
    NotPositive,
    #[error("word of {0} letters is too large to materialize")]
    TooLarge(u128),
}

/// A signed Artin generator. The stored value is `±index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(i32);

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter(index as i32)
    }

    pub fn neg(index: usize) -> Self {
        Letter(-(index as i32))
    }

    pub fn new(index: usize, positive: bool) -> Self {
        if positive {
            Self::pos(index)
        } else {
            Self::neg(index)
        }
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn sign(self) -> i64 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    pub fn raw(self) -> i32 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "s{}", self.index())
        } else {
            write!(f, "s{}^-1", self.index())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

#[derive(Deserialize)]
struct RawWord {
    strands: usize,
    letters: Vec<i32>,
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = RawWord::deserialize(de)?;
        if raw.letters.contains(&0) {
            return Err(serde::de::Error::custom("generator index 0 is not allowed"));
        }
        let letters = raw.letters.into_iter().map(Letter).collect();
        BraidWord::new(raw.strands, letters).map_err(serde::de::Error::custom)
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        if let Some(bad) = letters.iter().find(|l| l.index() == 0 || l.index() >= strands) {
            return Err(BraidError::IndexOutOfRange {
                index: bad.index(),
                strands,
            });
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    /// Builds a word from signed indices, e.g. `[1, 2, -1]` for `σ_1 σ_2 σ_1^{-1}`.
    pub fn from_signed(strands: usize, letters: &[i32]) -> Result<Self, BraidError> {
        if letters.contains(&0) {
            return Err(BraidError::IndexOutOfRange { index: 0, strands });
        }
        Self::new(strands, letters.iter().map(|&l| Letter(l)).collect())
    }

    /// `(σ_1 … σ_{r-1})^s` on `strands` strands. `r = 1` gives the empty word.
    pub fn torus_syllable(strands: usize, r: u64, s: u64) -> Result<Self, BraidError> {
        if r == 0 || r as usize > strands {
            return Err(BraidError::TangleTooWide {
                tangle: r as usize,
                strands,
            });
        }
        let len = (r as u128 - 1) * s as u128;
        if len > MAX_LETTERS {
            return Err(BraidError::TooLarge(len));
        }
        let mut letters = Vec::with_capacity(len as usize);
        for _ in 0..s {
            letters.extend((1..r as usize).map(Letter::pos));
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    pub fn negative_count(&self) -> usize {
        self.letters.iter().filter(|l| !l.is_positive()).count()
    }

    /// The same letters viewed on more strands.
    pub fn lift(&self, strands: usize) -> Result<Self, BraidError> {
        if strands < self.strands {
            return Err(BraidError::TangleTooWide {
                tangle: self.strands,
                strands,
            });
        }
        Ok(Self {
            strands,
            letters: self.letters.clone(),
        })
    }

    /// Shifts every generator index by `offset` and widens the word accordingly.
    pub fn shifted(&self, offset: usize) -> Self {
        Self {
            strands: self.strands + offset,
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new(l.index() + offset, l.is_positive()))
                .collect(),
        }
    }

    /// Concatenation `w1 · w2`.
    pub fn compose(&self, other: &BraidWord) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }

    /// Reverses the letter sequence, keeping signs. This is the word-level
    /// form of turning a braid tangle upside down about its horizontal axis.
    pub fn bar_reverse(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        Self {
            strands: self.strands,
            letters,
        }
    }

    /// Rotates the word left by `k` letters. The closure is unchanged since
    /// rotation is conjugation by the first `k` letters. `k` is taken modulo the length.
    pub fn cyclic_conjugate(&self, k: usize) -> Self {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        Self {
            strands: self.strands,
            letters,
        }
    }

    /// `perm[i]` is the top position of the strand leaving the bottom at
    /// position `i` (0-based). For `σ_1 … σ_{n-1}` this is `i ↦ i + 1 mod n`.
    pub fn permutation(&self) -> Vec<usize> {
        self.occupants()
    }

    /// Strand labels by position after running through all letters.
    fn occupants(&self) -> Vec<usize> {
        let mut occupant: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            let i = l.index();
            occupant.swap(i - 1, i);
        }
        occupant
    }

    pub fn closure_summary(&self) -> ClosureSummary {
        let n = self.strands;
        let perm = self.permutation();
        // strand -> component id, ordered by smallest strand in the cycle
        let mut component = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let mut s = start;
            while component[s] == usize::MAX {
                component[s] = count;
                s = perm[s];
            }
            count += 1;
        }

        let mut matrix = vec![vec![0i64; count]; count];
        let mut occupant: Vec<usize> = (0..n).collect();
        for l in &self.letters {
            let i = l.index();
            let a = component[occupant[i - 1]];
            let b = component[occupant[i]];
            if a == b {
                matrix[a][a] += l.sign();
            } else {
                matrix[a][b] += l.sign();
                matrix[b][a] += l.sign();
            }
            occupant.swap(i - 1, i);
        }
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                if i != j {
                    debug_assert!(*entry % 2 == 0);
                    *entry /= 2;
                }
            }
        }
        ClosureSummary {
            component_count: count,
            strand_to_component: component,
            linking_matrix: matrix,
            writhe: self.writhe(),
        }
    }

    /// Euler characteristic of the canonical Seifert surface, `strands − letters`.
    pub fn euler_characteristic(&self) -> i64 {
        self.strands as i64 - self.letters.len() as i64
    }

    /// Genus of the closure of a positive word. The canonical Seifert surface
    /// of a positive braid closure has minimal genus, so
    /// `2 − 2g − μ = strands − letters`.
    pub fn seifert_genus_positive(&self) -> Result<BigRational, BraidError> {
        if !self.is_positive() {
            return Err(BraidError::NotPositive);
        }
        let mu = self.closure_summary().component_count as i64;
        let numer = BigInt::from(self.letters.len() as i64 - self.strands as i64 + 2 - mu);
        Ok(BigRational::new(numer, BigInt::from(2)))
    }

    /// Space-separated generator tokens, e.g. `"s1 s2 s1"`.
    pub fn tokens(&self) -> String {
        self.letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            write!(f, "1 (on {} strands)", self.strands)
        } else {
            write!(f, "{} (on {} strands)", self.tokens(), self.strands)
        }
    }
}

/// Upper bound on materialized word length.
pub const MAX_LETTERS: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureSummary {
    pub component_count: usize,
    pub strand_to_component: Vec<usize>,
    /// Off-diagonal entries are linking numbers; diagonal entries are signed
    /// self-crossing counts, so the writhe is the diagonal sum plus twice the
    /// upper-triangle sum.
    pub linking_matrix: Vec<Vec<i64>>,
    pub writhe: i64,
}

impl ClosureSummary {
    pub fn linking_number(&self, a: usize, b: usize) -> i64 {
        self.linking_matrix[a][b]
    }
}

/// `(σ_1…σ_{r_1−1})^{s_1} … (σ_1…σ_{r_k−1})^{s_k}` on `max r_i` strands.
/// The empty list gives the empty word on one strand.
pub fn expand_tlink(pairs: &[(u64, u64)]) -> Result<BraidWord, BraidError> {
    if let Some(&(r, s)) = pairs.iter().find(|&&(r, s)| r < 2 || s < 1) {
        return Err(BraidError::InvalidSyllable { r, s });
    }
    let strands = pairs.iter().map(|&(r, _)| r).max().unwrap_or(1);
    let total: u128 = pairs
        .iter()
        .map(|&(r, s)| (r as u128 - 1) * s as u128)
        .sum();
    if total > MAX_LETTERS || strands as u128 > MAX_LETTERS {
        return Err(BraidError::TooLarge(total));
    }
    let mut letters = Vec::with_capacity(total as usize);
    for &(r, s) in pairs {
        for _ in 0..s {
            letters.extend((1..r as usize).map(Letter::pos));
        }
    }
    BraidWord::new(strands as usize, letters)
}

/// `τ * (p, q)`: the tangle on the leftmost strands followed by the torus braid.
pub fn tangle_star(tangle: &BraidWord, p: u64, q: u64) -> Result<BraidWord, BraidError> {
    if p < 1 || tangle.strands() as u64 > p {
        return Err(BraidError::TangleTooWide {
            tangle: tangle.strands(),
            strands: p as usize,
        });
    }
    let torus = BraidWord::torus_syllable(p as usize, p, q)?;
    tangle.lift(p as usize)?.compose(&torus)
}
