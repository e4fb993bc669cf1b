//! The T-link parameter language `T((r_1,s_1),…,(r_k,s_k))`, its normal forms,
//! the torus-link symmetry moves, and augmented parents `T(p,q) ∪ J_{a,b}`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{expand_tlink, BraidError, BraidWord, ClosureSummary};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `r < 2` at the given pair index.
    TooFewStrands { index: usize, r: u64 },
    /// `s < 1` at the given pair index.
    ZeroTwist { index: usize },
    /// After merging equal neighbours, `r` at this index does not exceed its predecessor.
    NotIncreasing { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewStrands { index, r } => {
                write!(f, "pair {index}: r = {r} is below 2")
            }
            Violation::ZeroTwist { index } => write!(f, "pair {index}: s must be at least 1"),
            Violation::NotIncreasing { index } => {
                write!(f, "pair {index}: r values are not strictly increasing")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TLinkError {
    #[error("invalid T-link: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("the T-link has no final (p, q) pair")]
    NoFinalPair,
    #[error("pair ({r}, {s}) is not a full twist")]
    NotFullTwist { r: u64, s: u64 },
    #[error("pair (q, s) = ({q}, {s}) needs s to be a multiple of q")]
    QPairNotFullTwist { q: u64, s: u64 },
    #[error("largest interior r = {r} exceeds min(p, q) = {bound}")]
    TangleTooWide { r: u64, bound: u64 },
    #[error("final pair ({p}, {q}) needs q >= 2")]
    FinalTwistTooSmall { p: u64, q: u64 },
    #[error("integer overflow while building parameters")]
    Overflow,
    #[error("invalid augmented link: {0}")]
    InvalidAugmented(String),
    #[error("expected {expected} filling coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("filling coefficients must be positive")]
    ZeroCoefficient,
    #[error("circles must be of the form J_(0,b) with strictly increasing b")]
    CirclesNotFillable,
    #[error(transparent)]
    Braid(#[from] BraidError),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub(crate) fn checked_mul(a: u64, b: u64) -> Result<u64, TLinkError> {
    a.checked_mul(b).ok_or(TLinkError::Overflow)
}

pub(crate) fn checked_add(a: u64, b: u64) -> Result<u64, TLinkError> {
    a.checked_add(b).ok_or(TLinkError::Overflow)
}

/// An ordered list of `(r, s)` pairs. The empty list presents the unknot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TLinkSpec {
    pairs: Vec<(u64, u64)>,
}

impl TLinkSpec {
    /// Keeps the pairs exactly as given.
    pub fn raw(pairs: Vec<(u64, u64)>) -> Self {
        Self { pairs }
    }

    /// Builds the canonical form: `normalize_merge` followed by validation.
    pub fn new(pairs: Vec<(u64, u64)>) -> Result<Self, TLinkError> {
        let spec = Self::raw(pairs).normalize_merge();
        let violations = spec.validate();
        if violations.is_empty() {
            Ok(spec)
        } else {
            Err(TLinkError::Invalid(violations))
        }
    }

    pub fn torus(p: u64, q: u64) -> Result<Self, TLinkError> {
        Self::new(vec![(p, q)])
    }

    pub fn unknot() -> Self {
        Self { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The final `(p, q)` pair.
    pub fn final_pair(&self) -> Option<(u64, u64)> {
        self.pairs.last().copied()
    }

    /// Every pair except the final one.
    pub fn interior(&self) -> &[(u64, u64)] {
        match self.pairs.split_last() {
            Some((_, rest)) => rest,
            None => &[],
        }
    }

    pub fn strands(&self) -> u64 {
        self.pairs.iter().map(|&(r, _)| r).max().unwrap_or(1)
    }

    /// `Σ s_i (r_i − 1)`.
    pub fn letter_count(&self) -> u128 {
        self.pairs
            .iter()
            .map(|&(r, s)| r.saturating_sub(1) as u128 * s as u128)
            .sum()
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (index, &(r, s)) in self.pairs.iter().enumerate() {
            if r < 2 {
                out.push(Violation::TooFewStrands { index, r });
            }
            if s < 1 {
                out.push(Violation::ZeroTwist { index });
            }
        }
        let mut prev: Option<u64> = None;
        for (index, &(r, _)) in self.pairs.iter().enumerate() {
            match prev {
                Some(p) if r == p => {}
                Some(p) if r < p => out.push(Violation::NotIncreasing { index }),
                _ => {}
            }
            prev = Some(r);
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Drops syllables that are the identity (`r ≤ 1` or `s = 0`) and merges
    /// neighbours with equal `r`, since `(r,a)*(r,b) = (r,a+b)`.
    pub fn normalize_merge(&self) -> Self {
        let mut pairs: Vec<(u64, u64)> = Vec::with_capacity(self.pairs.len());
        for &(r, s) in &self.pairs {
            if r <= 1 || s == 0 {
                continue;
            }
            match pairs.last_mut() {
                Some(last) if last.0 == r => last.1 = last.1.saturating_add(s),
                _ => pairs.push((r, s)),
            }
        }
        Self { pairs }
    }

    fn require_valid(&self) -> Result<Self, TLinkError> {
        let spec = self.normalize_merge();
        let violations = spec.validate();
        if violations.is_empty() {
            Ok(spec)
        } else {
            Err(TLinkError::Invalid(violations))
        }
    }

    /// Removes a pair with `r = q` (a full twist on the `q` strands) by
    /// absorbing it into the final pair, `(q, q·s) … (p, q) ↦ … (p + q·s, q)`.
    /// A pair with `r = p` is already absorbed by merging.
    ///
    /// Every pair with `r > q` must be a full twist.
    pub fn omit_rq(&self) -> Result<Self, TLinkError> {
        let spec = self.require_valid()?;
        let Some((p, q)) = spec.final_pair() else {
            return Ok(spec);
        };
        let interior = spec.interior();
        let Some(n) = interior.iter().position(|&(r, _)| r == q) else {
            return Ok(spec);
        };
        let (_, sn) = interior[n];
        if sn % q != 0 {
            return Err(TLinkError::QPairNotFullTwist { q, s: sn });
        }
        if let Some(&(r, s)) = interior[n + 1..].iter().find(|&&(r, s)| s % r != 0) {
            return Err(TLinkError::NotFullTwist { r, s });
        }
        let mut pairs: Vec<(u64, u64)> = interior
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != n)
            .map(|(_, &pair)| pair)
            .collect();
        pairs.push((checked_add(p, sn)?, q));
        Ok(Self { pairs }.normalize_merge())
    }

    /// Swaps the final pair `(p, q) ↦ (q, p)`. Valid when every interior pair
    /// is a full twist on at most `min(p, q)` strands, because full twists are
    /// central and survive turning the tangle upside down.
    pub fn bk_dual(&self) -> Result<Self, TLinkError> {
        let spec = self.require_valid()?;
        let (p, q) = spec.final_pair().ok_or(TLinkError::NoFinalPair)?;
        if q < 2 {
            return Err(TLinkError::FinalTwistTooSmall { p, q });
        }
        let interior = spec.interior();
        if let Some(&(r, s)) = interior.iter().find(|&&(r, s)| s % r != 0) {
            return Err(TLinkError::NotFullTwist { r, s });
        }
        if let Some(&(r, _)) = interior.last() {
            let bound = p.min(q);
            if r > bound {
                return Err(TLinkError::TangleTooWide { r, bound });
            }
        }
        let mut pairs = interior.to_vec();
        pairs.push((q, p));
        Ok(Self { pairs }.normalize_merge())
    }

    pub fn to_braid(&self) -> Result<BraidWord, TLinkError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(TLinkError::Invalid(violations));
        }
        Ok(expand_tlink(&self.pairs)?)
    }

    /// True when every interior pair is a full twist `(r, r·t)`.
    pub fn interior_full_twists(&self) -> bool {
        self.interior().iter().all(|&(r, s)| s % r == 0)
    }
}

impl fmt::Display for TLinkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = self
            .pairs
            .iter()
            .map(|(r, s)| format!("({r},{s})"))
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "T({inner})")
    }
}

/// The torus knot `T(p, q)` together with unknots `J_{a,b}`, listed bottom to top.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AugmentedSpec {
    pub p: u64,
    pub q: u64,
    pub circles: Vec<(u64, u64)>,
}

impl AugmentedSpec {
    pub fn new(p: u64, q: u64, circles: Vec<(u64, u64)>) -> Result<Self, TLinkError> {
        let aug = Self { p, q, circles };
        aug.validate()?;
        Ok(aug)
    }

    pub fn validate(&self) -> Result<(), TLinkError> {
        let (p, q) = (self.p, self.q);
        if !(1 < q && q < p) {
            return Err(TLinkError::InvalidAugmented(format!(
                "need 1 < q < p, got p = {p}, q = {q}"
            )));
        }
        if p.gcd(&q) != 1 {
            return Err(TLinkError::InvalidAugmented(format!(
                "p = {p} and q = {q} are not coprime"
            )));
        }
        for &(a, b) in &self.circles {
            if b < 1 || a.checked_add(b).map_or(true, |e| e >= p) {
                return Err(TLinkError::InvalidAugmented(format!(
                    "circle J_({a},{b}) needs b >= 1 and a + b < p"
                )));
            }
        }
        Ok(())
    }

    /// Closure data for the diagram of `T(p,q)` with each `J_{a,b}` drawn as a
    /// flat circle around strands `a+1 … a+b` above the braid. Component 0 is
    /// the torus knot and component `i` is the `i`-th circle. Each circle
    /// crosses every strand it encloses twice, with positive sign for the
    /// chosen orientation, and the stacked circles never cross each other.
    pub fn aug_to_diagram_summary(&self) -> Result<ClosureSummary, TLinkError> {
        self.validate()?;
        let torus = expand_tlink(&[(self.p, self.q)])?.closure_summary();
        let base = torus.component_count;
        let n = base + self.circles.len();
        let mut matrix = vec![vec![0i64; n]; n];
        for (i, row) in torus.linking_matrix.iter().enumerate() {
            matrix[i][..base].copy_from_slice(row);
        }
        let mut writhe = torus.writhe;
        for (k, &(a, b)) in self.circles.iter().enumerate() {
            let j = base + k;
            for strand in a..a + b {
                let c = torus.strand_to_component[strand as usize];
                matrix[c][j] += 1;
                matrix[j][c] += 1;
                writhe += 2;
            }
        }
        Ok(ClosureSummary {
            component_count: n,
            strand_to_component: torus.strand_to_component,
            linking_matrix: matrix,
            writhe,
        })
    }

    /// Performs `1/t_i` filling on each `J_{0,b_i}`: inserts the full twists
    /// `(b_i, b_i·t_i)` in increasing `b` order before the final `(p, q)`.
    pub fn twist_fill(&self, coefficients: &[u64]) -> Result<TLinkSpec, TLinkError> {
        self.validate()?;
        if coefficients.len() != self.circles.len() {
            return Err(TLinkError::CoefficientCount {
                expected: self.circles.len(),
                got: coefficients.len(),
            });
        }
        if coefficients.contains(&0) {
            return Err(TLinkError::ZeroCoefficient);
        }
        let fillable = self.circles.iter().all(|&(a, _)| a == 0)
            && self.circles.windows(2).all(|w| w[0].1 < w[1].1);
        if !fillable {
            return Err(TLinkError::CirclesNotFillable);
        }
        let mut pairs = Vec::with_capacity(self.circles.len() + 1);
        for (&(_, b), &t) in self.circles.iter().zip(coefficients) {
            pairs.push((b, checked_mul(b, t)?));
        }
        pairs.push((self.p, self.q));
        TLinkSpec::new(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(pairs: &[(u64, u64)]) -> TLinkSpec {
        TLinkSpec::raw(pairs.to_vec())
    }

    #[test]
    fn validate_examples() {
        assert!(t(&[(2, 3), (5, 2)]).validate().is_empty());
        assert_eq!(
            t(&[(5, 2), (2, 3)]).validate(),
            vec![Violation::NotIncreasing { index: 1 }]
        );
        assert_eq!(
            t(&[(1, 3), (5, 2)]).validate(),
            vec![Violation::TooFewStrands { index: 0, r: 1 }]
        );
        assert!(t(&[(3, 2), (3, 5), (7, 2)]).validate().is_empty());
        assert_eq!(t(&[(3, 0)]).validate(), vec![Violation::ZeroTwist { index: 0 }]);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(t(&[(1, 1), (2, 11)]).normalize_merge(), t(&[(2, 11)]));
        assert_eq!(
            t(&[(3, 2), (3, 5), (7, 2)]).normalize_merge(),
            t(&[(3, 7), (7, 2)])
        );
        assert_eq!(t(&[(2, 3)]).normalize_merge(), t(&[(2, 3)]));
    }

    #[test]
    fn omit_rq_examples() {
        assert_eq!(t(&[(3, 6), (5, 3)]).omit_rq().unwrap(), t(&[(11, 3)]));
        assert_eq!(t(&[(5, 10), (5, 3)]).omit_rq().unwrap(), t(&[(5, 13)]));
        assert_eq!(t(&[(2, 3), (7, 3)]).omit_rq().unwrap(), t(&[(2, 3), (7, 3)]));
        assert_eq!(
            t(&[(2, 1), (3, 6), (6, 12), (7, 3)]).omit_rq().unwrap(),
            t(&[(2, 1), (6, 12), (13, 3)])
        );
    }

    #[test]
    fn omit_rq_rejects_hypothesis_violations() {
        assert_eq!(
            t(&[(3, 4), (5, 3)]).omit_rq(),
            Err(TLinkError::QPairNotFullTwist { q: 3, s: 4 })
        );
        assert_eq!(
            t(&[(3, 3), (4, 5), (5, 3)]).omit_rq(),
            Err(TLinkError::NotFullTwist { r: 4, s: 5 })
        );
        assert_eq!(
            t(&[(2, 3), (5, 2)]).omit_rq(),
            Err(TLinkError::QPairNotFullTwist { q: 2, s: 3 })
        );
    }

    #[test]
    fn bk_dual_examples() {
        assert_eq!(t(&[(5, 3)]).bk_dual().unwrap(), t(&[(3, 5)]));
        assert_eq!(
            t(&[(2, 4), (7, 3)]).bk_dual().unwrap(),
            t(&[(2, 4), (3, 7)])
        );
        assert_eq!(t(&[(3, 6), (7, 3)]).bk_dual().unwrap(), t(&[(3, 13)]));
        assert!(matches!(
            t(&[(2, 3), (7, 3)]).bk_dual(),
            Err(TLinkError::NotFullTwist { r: 2, s: 3 })
        ));
        assert!(matches!(
            t(&[(4, 4), (7, 3)]).bk_dual(),
            Err(TLinkError::TangleTooWide { r: 4, bound: 3 })
        ));
        assert!(matches!(
            t(&[(5, 1)]).bk_dual(),
            Err(TLinkError::FinalTwistTooSmall { .. })
        ));
    }

    #[test]
    fn to_braid_delegates() {
        let w = t(&[(2, 4), (3, 7)]).to_braid().unwrap();
        assert_eq!(w.len(), 18);
        assert!(t(&[(5, 2), (2, 3)]).to_braid().is_err());
        assert_eq!(TLinkSpec::unknot().to_braid().unwrap().strands(), 1);
    }

    #[test]
    fn augmented_summary_examples() {
        let s = AugmentedSpec::new(7, 3, vec![(0, 6)])
            .unwrap()
            .aug_to_diagram_summary()
            .unwrap();
        assert_eq!(s.component_count, 2);
        assert_eq!(s.linking_number(0, 1), 6);

        let s = AugmentedSpec::new(5, 3, vec![(0, 2), (0, 4)])
            .unwrap()
            .aug_to_diagram_summary()
            .unwrap();
        assert_eq!(s.linking_number(1, 2), 0);
        assert_eq!(s.linking_number(0, 1), 2);
        assert_eq!(s.linking_number(0, 2), 4);

        let s = AugmentedSpec::new(5, 2, vec![])
            .unwrap()
            .aug_to_diagram_summary()
            .unwrap();
        assert_eq!(s.component_count, 1);
    }

    #[test]
    fn augmented_validation() {
        assert!(AugmentedSpec::new(6, 3, vec![]).is_err());
        assert!(AugmentedSpec::new(5, 3, vec![(1, 4)]).is_err());
        assert!(AugmentedSpec::new(3, 5, vec![]).is_err());
    }

    #[test]
    fn twist_fill_examples() {
        let aug = AugmentedSpec::new(11, 3, vec![(0, 6), (0, 9)]).unwrap();
        assert_eq!(
            aug.twist_fill(&[2, 2]).unwrap(),
            t(&[(6, 12), (9, 18), (11, 3)])
        );
        let aug = AugmentedSpec::new(7, 3, vec![]).unwrap();
        assert_eq!(aug.twist_fill(&[]).unwrap(), t(&[(7, 3)]));
        let aug = AugmentedSpec::new(7, 3, vec![(0, 6)]).unwrap();
        assert_eq!(aug.twist_fill(&[1]).unwrap(), t(&[(6, 6), (7, 3)]));
        assert_eq!(
            aug.twist_fill(&[1, 2]),
            Err(TLinkError::CoefficientCount { expected: 1, got: 2 })
        );
        assert_eq!(aug.twist_fill(&[0]), Err(TLinkError::ZeroCoefficient));
        let aug = AugmentedSpec::new(11, 3, vec![(0, 9), (0, 6)]).unwrap();
        assert_eq!(aug.twist_fill(&[1, 1]), Err(TLinkError::CirclesNotFillable));
    }

    #[test]
    fn json_shapes() {
        let spec = t(&[(2, 3), (5, 2)]);
        assert_eq!(serde_json::to_string(&spec).unwrap(), r#"{"pairs":[[2,3],[5,2]]}"#);
        let aug = AugmentedSpec::new(7, 3, vec![(0, 6)]).unwrap();
        assert_eq!(
            serde_json::to_string(&aug).unwrap(),
            r#"{"p":7,"q":3,"circles":[[0,6]]}"#
        );
    }

    #[test]
    fn display() {
        assert_eq!(t(&[(2, 4), (3, 7)]).to_string(), "T((2,4),(3,7))");
    }
}
