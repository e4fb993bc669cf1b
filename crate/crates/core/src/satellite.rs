//! Satellite decompositions of T-links and the hyperbolic/satellite classifiers.
//!
//! Three constructions produce certificates:
//!
//! * [`Theorem::FullTwist`]: `T(τ, (s_1q, s_1qt_1), …, (s_mq, s_mqt_m), (p, q))` has
//!   companion `T((s_1, t_1s_1), …, (s_m, t_ms_m + 1))` and pattern
//!   `τ̄ * (q, p + Σ s_i²qt_i)`, winding `q`.
//! * [`Theorem::NoTwist`]: `T(τ, (rc−k, r−k), (rc, r(c−2)+k))` has companion
//!   `T(c, c−1)`, winding `r`.
//! * [`Theorem::Compose`]: stacking a pattern `T((c_j, d_j))` around a knot
//!   `K_1 = T((a_i, b_i))`, winding `c_m`.
//!
//! A missing certificate means a pattern did not match. It never means the link
//! is not a satellite.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{expand_tlink, tangle_star, BraidError, BraidWord};
use crate::tlink::{checked_add, checked_mul, AugmentedSpec, TLinkError, TLinkSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatelliteError {
    #[error(transparent)]
    Spec(#[from] TLinkError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("companion {spec} has {components} components, expected a knot")]
    CompanionNotKnot { spec: String, components: usize },
}

fn out_of_range(msg: impl Into<String>) -> SatelliteError {
    SatelliteError::OutOfRange(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    FullTwist,
    NoTwist,
    Compose,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theorem::FullTwist => "FullTwist",
            Theorem::NoTwist => "NoTwist",
            Theorem::Compose => "Compose",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatelliteCertificate {
    pub source: TLinkSpec,
    pub companion: TLinkSpec,
    pub pattern_s3: TLinkSpec,
    pub winding: u64,
    pub theorem: Theorem,
    /// The pattern as a closed braid in the solid torus, when it fits in memory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern_word: Option<BraidWord>,
}

impl SatelliteCertificate {
    /// The same certificate with a different winding number.
    pub fn with_winding(&self, winding: u64) -> Self {
        Self {
            winding,
            ..self.clone()
        }
    }
}

/// `τ = (a_1, b_1) … (a_n, b_n)`, `(s_i, t_i)`, and the final `(p, q)` of a
/// full-twist satellite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullTwistParameters {
    pub a_block: Vec<(u64, u64)>,
    pub twists: Vec<(u64, u64)>,
    pub p: u64,
    pub q: u64,
}

impl FullTwistParameters {
    pub fn source(&self) -> Result<TLinkSpec, SatelliteError> {
        let mut pairs = self.a_block.clone();
        for &(s, t) in &self.twists {
            let r = checked_mul(s, self.q)?;
            pairs.push((r, checked_mul(r, t)?));
        }
        pairs.push((self.p, self.q));
        Ok(TLinkSpec::new(pairs)?)
    }

    pub fn companion(&self) -> Result<TLinkSpec, SatelliteError> {
        let last = self.twists.len().saturating_sub(1);
        let pairs = self
            .twists
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| {
                let st = checked_mul(s, t)?;
                Ok((s, if i == last { checked_add(st, 1)? } else { st }))
            })
            .collect::<Result<Vec<_>, TLinkError>>()?;
        Ok(TLinkSpec::new(pairs)?)
    }

    /// `p + Σ s_i² q t_i`.
    pub fn pattern_twist(&self) -> Result<u64, SatelliteError> {
        let mut total = self.p;
        for &(s, t) in &self.twists {
            let term = checked_mul(checked_mul(checked_mul(s, s)?, self.q)?, t)?;
            total = checked_add(total, term)?;
        }
        Ok(total)
    }

    pub fn pattern_s3(&self) -> Result<TLinkSpec, SatelliteError> {
        let mut pairs = self.a_block.clone();
        pairs.push((self.pattern_twist()?, self.q));
        Ok(TLinkSpec::new(pairs)?)
    }

    /// `τ̄ * (q, p + Σ s_i² q t_i)` on `q` strands.
    pub fn pattern_word(&self) -> Result<BraidWord, SatelliteError> {
        let tau = expand_tlink(&self.a_block)?.bar_reverse();
        Ok(tangle_star(&tau, self.q, self.pattern_twist()?)?)
    }

    pub fn certificate(&self) -> Result<SatelliteCertificate, SatelliteError> {
        Ok(SatelliteCertificate {
            source: self.source()?,
            companion: self.companion()?,
            pattern_s3: self.pattern_s3()?,
            winding: self.q,
            theorem: Theorem::FullTwist,
            pattern_word: self.pattern_word().ok(),
        })
    }
}

/// Parses `spec` as a full-twist satellite, or explains why it does not match.
pub fn match_full_twist(spec: &TLinkSpec) -> Result<FullTwistParameters, String> {
    let spec = spec.normalize_merge();
    if !spec.is_valid() {
        return Err("not a valid T-link".into());
    }
    let Some((p, q)) = spec.final_pair() else {
        return Err("the unknot has no final pair".into());
    };
    let interior = spec.interior();
    let middle_len = interior
        .iter()
        .rev()
        .take_while(|&&(r, s)| r > q && r % q == 0 && s % r == 0)
        .count();
    if middle_len == 0 {
        return Err(format!(
            "no full twist on a multiple of q = {q} strands above q before the final pair"
        ));
    }
    let split = interior.len() - middle_len;
    let (a_block, middle) = interior.split_at(split);
    if let Some(&(r, s)) = a_block.last() {
        if r == q {
            return Err(format!("pair ({r},{s}) has r = q; apply omit_rq first"));
        }
        if r > q {
            return Err(format!(
                "pair ({r},{s}) lies above q = {q} but is not a full twist on a multiple of q"
            ));
        }
    }
    let (top, _) = *middle.last().expect("middle block is nonempty");
    if top >= p {
        return Err(format!("q·s_m = {top} is not below p = {p}"));
    }
    Ok(FullTwistParameters {
        a_block: a_block.to_vec(),
        twists: middle.iter().map(|&(r, s)| (r / q, s / r)).collect(),
        p,
        q,
    })
}

pub fn decompose_full_twist(spec: &TLinkSpec) -> Option<SatelliteCertificate> {
    match_full_twist(spec).ok()?.certificate().ok()
}

/// Parameters of a no-twist satellite `T(τ, (rc−k, r−k), (rc, r(c−2)+k))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoTwistParameters {
    pub c: u64,
    pub r: u64,
    pub k: u64,
    pub a_pairs: Vec<(u64, u64)>,
}

impl NoTwistParameters {
    pub fn new(c: u64, r: u64, k: u64, a_pairs: Vec<(u64, u64)>) -> Result<Self, SatelliteError> {
        if c < 3 {
            return Err(out_of_range(format!("c = {c} must be at least 3")));
        }
        if r < 2 {
            return Err(out_of_range(format!("r = {r} must be at least 2")));
        }
        if k < 1 || k >= r {
            return Err(out_of_range(format!("k = {k} must satisfy 1 <= k <= r - 1 = {}", r - 1)));
        }
        let mut prev = 1;
        for &(a, b) in &a_pairs {
            if a <= prev || a > r - k || b == 0 {
                return Err(out_of_range(format!(
                    "a-pair ({a},{b}) needs increasing 2 <= a <= r - k = {} and b > 0",
                    r - k
                )));
            }
            prev = a;
        }
        checked_mul(checked_mul(r, c)?, c)?;
        Ok(Self { c, r, k, a_pairs })
    }

    pub fn source(&self) -> Result<TLinkSpec, SatelliteError> {
        let (c, r, k) = (self.c, self.r, self.k);
        let rc = checked_mul(r, c)?;
        let mut pairs = self.a_pairs.clone();
        pairs.push((rc - k, r - k));
        pairs.push((rc, checked_add(checked_mul(r, c - 2)?, k)?));
        Ok(TLinkSpec::new(pairs)?)
    }

    pub fn companion(&self) -> Result<TLinkSpec, SatelliteError> {
        Ok(TLinkSpec::torus(self.c, self.c - 1)?)
    }

    fn twist_before(&self) -> Result<u64, SatelliteError> {
        Ok(checked_add(checked_mul(self.r, self.c - 2)?, self.k)?)
    }

    fn twist_after(&self) -> Result<u64, SatelliteError> {
        let c1 = self.c - 1;
        Ok(checked_mul(self.r, checked_mul(c1, c1)?)?)
    }

    pub fn pattern_s3(&self) -> Result<TLinkSpec, SatelliteError> {
        let mut pairs = self.a_pairs.clone();
        pairs.push((self.r - self.k, self.r - self.k));
        pairs.push((self.r, checked_add(self.twist_after()?, self.twist_before()?)?));
        Ok(TLinkSpec::new(pairs)?)
    }

    /// `(r, r(c−2)+k) * τ * (r−k, r−k) * (r, r(c−1)²)` on `r` strands.
    pub fn pattern_word(&self) -> Result<BraidWord, SatelliteError> {
        let mut syllables = vec![(self.r, self.twist_before()?)];
        syllables.extend(self.a_pairs.iter().copied());
        if self.r - self.k >= 2 {
            syllables.push((self.r - self.k, self.r - self.k));
        }
        syllables.push((self.r, self.twist_after()?));
        Ok(expand_tlink(&syllables)?)
    }

    pub fn certificate(&self) -> Result<SatelliteCertificate, SatelliteError> {
        Ok(SatelliteCertificate {
            source: self.source()?,
            companion: self.companion()?,
            pattern_s3: self.pattern_s3()?,
            winding: self.r,
            theorem: Theorem::NoTwist,
            pattern_word: self.pattern_word().ok(),
        })
    }
}

pub fn build_no_twist(
    c: u64,
    r: u64,
    k: u64,
    a_pairs: &[(u64, u64)],
) -> Result<(TLinkSpec, SatelliteCertificate), SatelliteError> {
    let cert = NoTwistParameters::new(c, r, k, a_pairs.to_vec())?.certificate()?;
    Ok((cert.source.clone(), cert))
}

/// Recognizes `T(τ, (rc−k, r−k), (rc, r(c−2)+k))`.
pub fn match_no_twist(spec: &TLinkSpec) -> Result<NoTwistParameters, String> {
    let spec = spec.normalize_merge();
    let pairs = spec.pairs();
    if pairs.len() < 2 || !spec.is_valid() {
        return Err("needs at least two pairs".into());
    }
    let (big_p, big_q) = pairs[pairs.len() - 1];
    let (big_r, big_s) = pairs[pairs.len() - 2];
    let k = big_p - big_r;
    let r = big_s + k;
    if k == 0 || big_p % r != 0 {
        return Err("final pairs are not of the form (rc-k, r-k), (rc, r(c-2)+k)".into());
    }
    let c = big_p / r;
    if c < 3 || r.checked_mul(c - 2).and_then(|x| x.checked_add(k)) != Some(big_q) {
        return Err("final pairs are not of the form (rc-k, r-k), (rc, r(c-2)+k)".into());
    }
    NoTwistParameters::new(c, r, k, pairs[..pairs.len() - 2].to_vec()).map_err(|e| e.to_string())
}

/// Parameters of a composed satellite: pattern base `(c_j, d_j)` around the knot `K_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeParameters {
    pub companion: TLinkSpec,
    pub pattern_base: Vec<(u64, u64)>,
}

impl ComposeParameters {
    pub fn new(
        companion_pairs: &[(u64, u64)],
        pattern_base: &[(u64, u64)],
    ) -> Result<Self, SatelliteError> {
        let companion = TLinkSpec::new(companion_pairs.to_vec())?;
        if companion.is_empty() {
            return Err(out_of_range("the companion must be a nontrivial T-link"));
        }
        let components = companion.to_braid()?.closure_summary().component_count;
        if components != 1 {
            return Err(SatelliteError::CompanionNotKnot {
                spec: companion.to_string(),
                components,
            });
        }
        let base = TLinkSpec::raw(pattern_base.to_vec());
        if base.is_empty() || !base.is_valid() || base.normalize_merge() != base {
            return Err(out_of_range(
                "pattern base needs strictly increasing c_j >= 2 and d_j >= 1",
            ));
        }
        Ok(Self {
            companion,
            pattern_base: pattern_base.to_vec(),
        })
    }

    fn strands(&self) -> u64 {
        self.pattern_base.last().expect("nonempty base").0
    }

    /// `(B, D)` with `B = Σ b_i` and `D = Σ (a_i − 1) b_i`.
    pub fn twist_counts(&self) -> Result<(u64, u64), SatelliteError> {
        let mut b_sum = 0u64;
        let mut d_sum = 0u64;
        for &(a, b) in self.companion.pairs() {
            b_sum = checked_add(b_sum, b)?;
            d_sum = checked_add(d_sum, checked_mul(a - 1, b)?)?;
        }
        Ok((b_sum, d_sum))
    }

    pub fn source(&self) -> Result<TLinkSpec, SatelliteError> {
        let cm = self.strands();
        let mut pairs = self.pattern_base.clone();
        for &(a, b) in self.companion.pairs() {
            pairs.push((checked_mul(cm, a)?, checked_mul(cm, b)?));
        }
        Ok(TLinkSpec::new(pairs)?)
    }

    pub fn pattern_s3(&self) -> Result<TLinkSpec, SatelliteError> {
        let cm = self.strands();
        let (b, d) = self.twist_counts()?;
        let mut pairs = self.pattern_base.clone();
        let last = pairs.last_mut().expect("nonempty base");
        last.1 = checked_add(last.1, checked_mul(cm, checked_add(b, d)?)?)?;
        Ok(TLinkSpec::new(pairs)?)
    }

    /// `(c_1, d_1) … (c_m, d_m) * (c_m, c_m B) * (c_m, c_m D)` on `c_m` strands.
    pub fn pattern_word(&self) -> Result<BraidWord, SatelliteError> {
        let cm = self.strands();
        let (b, d) = self.twist_counts()?;
        let mut syllables = self.pattern_base.clone();
        syllables.push((cm, checked_mul(cm, b)?));
        if d > 0 {
            syllables.push((cm, checked_mul(cm, d)?));
        }
        Ok(expand_tlink(&syllables)?)
    }

    pub fn certificate(&self) -> Result<SatelliteCertificate, SatelliteError> {
        Ok(SatelliteCertificate {
            source: self.source()?,
            companion: self.companion.clone(),
            pattern_s3: self.pattern_s3()?,
            winding: self.strands(),
            theorem: Theorem::Compose,
            pattern_word: self.pattern_word().ok(),
        })
    }
}

pub fn compose_satellite(
    companion_pairs: &[(u64, u64)],
    pattern_base: &[(u64, u64)],
) -> Result<(TLinkSpec, SatelliteCertificate), SatelliteError> {
    let cert = ComposeParameters::new(companion_pairs, pattern_base)?.certificate()?;
    Ok((cert.source.clone(), cert))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Hyperbolic,
    Satellite,
    TorusKnot,
    EventuallyHyperbolic,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub citation: String,
    pub certificate: Option<SatelliteCertificate>,
}

impl Classification {
    fn cited(verdict: Verdict, citation: impl Into<String>) -> Self {
        Self {
            verdict,
            citation: citation.into(),
            certificate: None,
        }
    }

    fn satellite(citation: impl Into<String>, certificate: SatelliteCertificate) -> Self {
        Self {
            verdict: Verdict::Satellite,
            citation: citation.into(),
            certificate: Some(certificate),
        }
    }
}

const LEE_AUGMENTED: &str =
    "Lee: T(p,q) with an unknot J_(0,a) around a strands is satellite exactly when q divides a";
const LEE_TWISTED: &str =
    "Lee: the twisted torus knot T((r,rs),(p,q)) is hyperbolic for 1 < r < q < p, s > 1";
const AUG_HYPERBOLIC: &str =
    "T(p,q) with unknots J_(0,a_i), none around a multiple of q strands, is hyperbolic";
const AUG_SATELLITE: &str =
    "T(p,q) with unknots J_(0,a_i) whose a_i > q are all multiples of q is satellite, and stays satellite under 1/b_i filling";
const FULL_TWIST: &str = "full twists on multiples of q strands below the torus pair give a satellite";
const NO_TWIST: &str = "T(tau,(rc-k,r-k),(rc,r(c-2)+k)) is a satellite of T(c,c-1)";
const DEHN_FILLING: &str =
    "hyperbolic parent with no circle around a multiple of q: T((a_i,a_ib_i),(p,q)) is hyperbolic once every b_i exceeds an unspecified bound B";

/// Certificate for `T(p,q) ∪ J_{0,sq}`: the torus knot carries winding `q`
/// around the core swept out by `J`, which is isotopic to `T(s, 1)`.
fn single_aug_certificate(p: u64, q: u64, s: u64) -> Result<SatelliteCertificate, SatelliteError> {
    let torus = TLinkSpec::torus(p, q)?;
    Ok(SatelliteCertificate {
        source: torus.clone(),
        companion: TLinkSpec::raw(vec![(s, 1)]).normalize_merge(),
        pattern_s3: torus,
        winding: q,
        theorem: Theorem::FullTwist,
        pattern_word: Some(expand_tlink(&[(q, p)])?),
    })
}

pub fn classify_single_aug(p: u64, q: u64, a: u64) -> Result<Classification, SatelliteError> {
    if a <= 1 || a >= p {
        return Err(out_of_range(format!("need 1 < a < p, got a = {a}, p = {p}")));
    }
    AugmentedSpec::new(p, q, vec![(0, a)])?;
    if a % q == 0 {
        let s = a / q;
        let citation = format!("{LEE_AUGMENTED}; J is isotopic to T({s},1)");
        Ok(Classification::satellite(citation, single_aug_certificate(p, q, s)?))
    } else {
        Ok(Classification::cited(Verdict::Hyperbolic, LEE_AUGMENTED))
    }
}

pub fn classify_augmented(aug: &AugmentedSpec) -> Result<Classification, SatelliteError> {
    aug.validate()?;
    let (p, q) = (aug.p, aug.q);
    if aug.circles.iter().any(|&(a, _)| a != 0) {
        return Err(out_of_range("circles must be of the form J_(0,a)"));
    }
    let a: Vec<u64> = aug.circles.iter().map(|&(_, b)| b).collect();
    if a.iter().any(|&x| x <= 1) || a.windows(2).any(|w| w[0] >= w[1]) {
        return Err(out_of_range("need 1 < a_1 < ... < a_n < p"));
    }
    match a.as_slice() {
        [] => return Ok(Classification::cited(Verdict::TorusKnot, "torus knot T(p,q)")),
        [single] => return classify_single_aug(p, q, *single),
        _ => {}
    }
    if a.iter().all(|&x| x % q != 0) {
        return Ok(Classification::cited(Verdict::Hyperbolic, AUG_HYPERBOLIC));
    }
    if a.iter().filter(|&&x| x > q).any(|&x| x % q != 0) {
        return Ok(Classification::cited(
            Verdict::Unknown,
            "some circle encloses a multiple of q strands and some a_i > q does not",
        ));
    }
    let filled = aug.twist_fill(&vec![1; a.len()])?.omit_rq()?;
    let certificate = match decompose_full_twist(&filled) {
        Some(cert) => cert,
        None => single_aug_certificate(p, q, 1)?,
    };
    Ok(Classification::satellite(AUG_SATELLITE, certificate))
}

pub fn classify_twisted_torus(r: u64, s: u64, p: u64, q: u64) -> Classification {
    let reason = if p.gcd(&q) != 1 {
        Some("p and q are not coprime")
    } else if !(1 < r && r < q && q < p) {
        Some("needs 1 < r < q < p")
    } else if s <= 1 {
        Some("needs s > 1")
    } else {
        None
    };
    match reason {
        Some(why) => Classification::cited(Verdict::Unknown, format!("{LEE_TWISTED}; {why}")),
        None => Classification::cited(Verdict::Hyperbolic, LEE_TWISTED),
    }
}

pub fn classify_full_twist_family(p: u64, q: u64, a: &[u64]) -> Classification {
    let reason = if p.gcd(&q) != 1 || !(1 < q && q < p) {
        Some("needs coprime 1 < q < p")
    } else if a.is_empty()
        || a[0] <= 1
        || a.windows(2).any(|w| w[0] >= w[1])
        || a.last().is_some_and(|&x| x >= p)
    {
        Some("needs 1 < a_1 < ... < a_n < p")
    } else if a.iter().any(|&x| x % q == 0) {
        Some("some a_i is a multiple of q")
    } else {
        None
    };
    match reason {
        Some(why) => Classification::cited(Verdict::Unknown, format!("{DEHN_FILLING}; {why}")),
        None => Classification::cited(Verdict::EventuallyHyperbolic, DEHN_FILLING),
    }
}

/// Tries every recognizer in turn on a T-link.
pub fn classify_spec(spec: &TLinkSpec) -> Result<Classification, SatelliteError> {
    let spec = TLinkSpec::new(spec.pairs().to_vec())?;
    if spec.is_empty() {
        return Ok(Classification::cited(Verdict::Unknown, "the unknot"));
    }
    let reduced = spec.omit_rq().unwrap_or_else(|_| spec.clone());
    for candidate in [&spec, &reduced] {
        if let [(p, q)] = candidate.pairs() {
            let verdict = if p.gcd(q) == 1 { Verdict::TorusKnot } else { Verdict::Unknown };
            let note = format!("torus link T({p},{q})");
            return Ok(Classification::cited(verdict, note));
        }
    }
    for candidate in [&spec, &reduced] {
        if let [(r, rs), (p, q)] = *candidate.pairs() {
            if rs % r == 0 {
                let c = classify_twisted_torus(r, rs / r, p, q);
                if c.verdict == Verdict::Hyperbolic {
                    return Ok(c);
                }
            }
        }
    }
    for candidate in [&spec, &reduced] {
        if let Some(cert) = decompose_full_twist(candidate) {
            return Ok(Classification::satellite(FULL_TWIST, cert));
        }
    }
    if let Ok(params) = match_no_twist(&spec) {
        return Ok(Classification::satellite(NO_TWIST, params.certificate()?));
    }
    if let Some((p, q)) = spec.final_pair() {
        let interior = spec.interior();
        if interior.iter().all(|&(r, s)| s % r == 0) {
            let a: Vec<u64> = interior.iter().map(|&(r, _)| r).collect();
            let c = classify_full_twist_family(p, q, &a);
            if c.verdict == Verdict::EventuallyHyperbolic {
                return Ok(c);
            }
        }
    }
    Ok(Classification::cited(Verdict::Unknown, "no recognizer matched"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub spec: TLinkSpec,
    pub certificate: SatelliteCertificate,
    pub notes: Vec<String>,
}

/// `T((2,2c),(6,12),(9,18),(11,3))`: a satellite whose companion and pattern
/// are both hyperbolic, so it is not a cable.
pub fn counterexample_family(c: u64) -> Result<FamilyMember, SatelliteError> {
    if c <= 1 {
        return Err(out_of_range(format!("c = {c} must exceed 1")));
    }
    let spec = TLinkSpec::new(vec![(2, checked_mul(2, c)?), (6, 12), (9, 18), (11, 3)])?;
    let certificate = decompose_full_twist(&spec)
        .ok_or_else(|| out_of_range("family member failed to decompose"))?;
    let mut notes = Vec::new();
    let companion_lee = certificate.companion.bk_dual().ok().and_then(|dual| match *dual.pairs() {
        [(r, rs), (p, q)] if rs % r == 0 => Some(((r, rs / r, p, q), dual)),
        _ => None,
    });
    match companion_lee {
        Some(((r, s, p, q), dual)) => {
            let verdict = classify_twisted_torus(r, s, p, q).verdict;
            notes.push(format!(
                "companion {} is {dual} after swapping the final pair: {verdict}",
                certificate.companion
            ));
        }
        None => notes.push(format!("companion {}: not recognized", certificate.companion)),
    }
    match *certificate.pattern_s3.pairs() {
        [(r, rs), (p, q)] if rs % r == 0 => {
            let verdict = classify_twisted_torus(r, rs / r, p, q).verdict;
            notes.push(format!("pattern {}: {verdict}", certificate.pattern_s3));
        }
        _ => notes.push(format!("pattern {}: not recognized", certificate.pattern_s3)),
    }
    notes.push("hyperbolic companion and pattern: a satellite that is not a cable".into());
    Ok(FamilyMember {
        spec,
        certificate,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(pairs: &[(u64, u64)]) -> TLinkSpec {
        TLinkSpec::new(pairs.to_vec()).unwrap()
    }

    #[test]
    fn decompose_worked_example() {
        let cert = decompose_full_twist(&t(&[(2, 4), (6, 12), (9, 18), (11, 3)])).unwrap();
        assert_eq!(cert.companion, t(&[(2, 4), (3, 7)]));
        assert_eq!(cert.pattern_s3, t(&[(2, 4), (89, 3)]));
        assert_eq!(cert.winding, 3);
        assert_eq!(cert.theorem, Theorem::FullTwist);
        let word = cert.pattern_word.unwrap();
        assert_eq!(word.strands(), 3);
        assert_eq!(word.len(), 4 + 2 * 89);
    }

    #[test]
    fn decompose_without_a_block() {
        let cert = decompose_full_twist(&t(&[(6, 12), (11, 3)])).unwrap();
        assert_eq!(cert.companion, t(&[(2, 5)]));
        assert_eq!(cert.pattern_s3, t(&[(35, 3)]));
        assert_eq!(cert.winding, 3);
    }

    #[test]
    fn decompose_rejections() {
        assert!(decompose_full_twist(&t(&[(2, 3), (5, 2)])).is_none());
        // r = q pair blocks the parse until it is absorbed
        assert!(match_full_twist(&t(&[(3, 6), (6, 12), (11, 3)])).is_err());
        assert!(match_full_twist(&TLinkSpec::raw(vec![(6, 12), (5, 3)])).is_err());
        // non-full twist above q
        assert!(match_full_twist(&t(&[(6, 13), (11, 3)])).is_err());
        // an r > q that is not a multiple of q between a-block and middle block
        assert!(match_full_twist(&t(&[(4, 4), (6, 12), (11, 3)])).is_err());
    }

    #[test]
    fn decompose_general_a_block() {
        let params = match_full_twist(&t(&[(2, 3), (6, 6), (11, 3)])).unwrap();
        assert_eq!(params.a_block, vec![(2, 3)]);
        assert_eq!(params.twists, vec![(2, 1)]);
        assert_eq!(params.pattern_twist().unwrap(), 23);
        assert_eq!(params.pattern_s3().unwrap(), t(&[(2, 3), (23, 3)]));
    }

    #[test]
    fn no_twist_examples() {
        let (source, cert) = build_no_twist(3, 2, 1, &[]).unwrap();
        assert_eq!(source, t(&[(5, 1), (6, 3)]));
        assert_eq!(cert.companion, t(&[(3, 2)]));
        assert_eq!(cert.pattern_s3, t(&[(2, 11)]));
        assert_eq!(cert.winding, 2);

        let (source, cert) = build_no_twist(4, 3, 1, &[(2, 1)]).unwrap();
        assert_eq!(source, t(&[(2, 1), (11, 2), (12, 7)]));
        assert_eq!(cert.pattern_s3, TLinkSpec::raw(vec![(2, 3), (3, 34)]));

        assert!(build_no_twist(3, 2, 2, &[]).is_err());
        assert!(build_no_twist(2, 2, 1, &[]).is_err());
        assert!(build_no_twist(3, 3, 1, &[(3, 1)]).is_err());
    }

    #[test]
    fn no_twist_is_recognized() {
        let (source, cert) = build_no_twist(4, 3, 1, &[(2, 1)]).unwrap();
        let params = match_no_twist(&source).unwrap();
        assert_eq!(params.certificate().unwrap(), cert);
        assert!(match_no_twist(&t(&[(2, 3), (5, 2)])).is_err());
    }

    #[test]
    fn compose_examples() {
        let (source, cert) = compose_satellite(&[(2, 3)], &[(2, 1)]).unwrap();
        assert_eq!(source, t(&[(2, 1), (4, 6)]));
        assert_eq!(cert.pattern_s3, t(&[(2, 13)]));
        assert_eq!(cert.winding, 2);

        let (source, cert) = compose_satellite(&[(3, 4)], &[(2, 2)]).unwrap();
        assert_eq!(source, t(&[(2, 2), (6, 8)]));
        assert_eq!(cert.pattern_s3, t(&[(2, 26)]));

        assert!(matches!(
            compose_satellite(&[(2, 2)], &[(2, 1)]),
            Err(SatelliteError::CompanionNotKnot { components: 2, .. })
        ));
    }

    #[test]
    fn single_aug_examples() {
        let c = classify_single_aug(7, 3, 6).unwrap();
        assert_eq!(c.verdict, Verdict::Satellite);
        assert!(c.citation.contains("T(2,1)"));
        assert_eq!(c.certificate.unwrap().companion, TLinkSpec::raw(vec![(2, 1)]));
        assert_eq!(classify_single_aug(5, 3, 4).unwrap().verdict, Verdict::Hyperbolic);
        let c = classify_single_aug(5, 3, 3).unwrap();
        assert_eq!(c.verdict, Verdict::Satellite);
        assert!(c.certificate.unwrap().companion.is_empty());
        assert!(classify_single_aug(6, 3, 3).is_err());
        assert!(classify_single_aug(5, 3, 5).is_err());
    }

    #[test]
    fn augmented_examples() {
        let v = |a: &[u64]| {
            let aug = AugmentedSpec::new(11, 3, a.iter().map(|&x| (0, x)).collect()).unwrap();
            classify_augmented(&aug).unwrap()
        };
        assert_eq!(v(&[4, 5, 7]).verdict, Verdict::Hyperbolic);
        let sat = v(&[6, 9]);
        assert_eq!(sat.verdict, Verdict::Satellite);
        let cert = sat.certificate.unwrap();
        assert_eq!(cert.source, t(&[(6, 6), (9, 9), (11, 3)]));
        assert_eq!(cert.companion, t(&[(2, 2), (3, 4)]));
        assert_eq!(v(&[5, 6]).verdict, Verdict::Unknown);
        assert_eq!(v(&[2, 3]).verdict, Verdict::Satellite);
        assert_eq!(v(&[3, 6]).verdict, Verdict::Satellite);
    }

    #[test]
    fn twisted_torus_examples() {
        assert_eq!(classify_twisted_torus(2, 4, 7, 3).verdict, Verdict::Hyperbolic);
        assert_eq!(classify_twisted_torus(2, 1, 7, 3).verdict, Verdict::Unknown);
        assert_eq!(classify_twisted_torus(3, 2, 5, 2).verdict, Verdict::Unknown);
    }

    #[test]
    fn full_twist_family_examples() {
        assert_eq!(
            classify_full_twist_family(11, 3, &[2, 4, 5]).verdict,
            Verdict::EventuallyHyperbolic
        );
        assert_eq!(classify_full_twist_family(11, 3, &[6]).verdict, Verdict::Unknown);
        assert_eq!(
            classify_full_twist_family(7, 2, &[3, 5]).verdict,
            Verdict::EventuallyHyperbolic
        );
    }

    #[test]
    fn classify_spec_routes() {
        assert_eq!(classify_spec(&t(&[(5, 2)])).unwrap().verdict, Verdict::TorusKnot);
        assert_eq!(classify_spec(&t(&[(3, 6), (5, 3)])).unwrap().verdict, Verdict::TorusKnot);
        assert_eq!(classify_spec(&t(&[(2, 8), (7, 3)])).unwrap().verdict, Verdict::Hyperbolic);
        assert_eq!(
            classify_spec(&t(&[(2, 4), (6, 12), (9, 18), (11, 3)])).unwrap().verdict,
            Verdict::Satellite
        );
        assert_eq!(classify_spec(&t(&[(5, 1), (6, 3)])).unwrap().verdict, Verdict::Satellite);
        assert_eq!(
            classify_spec(&t(&[(2, 2), (4, 4), (7, 3)])).unwrap().verdict,
            Verdict::EventuallyHyperbolic
        );
    }

    #[test]
    fn counterexample_family_members() {
        for c in 2..=5 {
            let m = counterexample_family(c).unwrap();
            assert_eq!(m.spec, t(&[(2, 2 * c), (6, 12), (9, 18), (11, 3)]));
            assert_eq!(m.certificate.companion, t(&[(2, 4), (3, 7)]));
            assert_eq!(m.certificate.pattern_s3, t(&[(2, 2 * c), (89, 3)]));
            assert_eq!(m.certificate.winding, 3);
            assert!(m.notes.iter().filter(|n| n.contains("Hyperbolic")).count() == 2, "{:?}", m.notes);
        }
        assert!(counterexample_family(1).is_err());
    }

    #[test]
    fn certificate_json_keys() {
        let cert = decompose_full_twist(&t(&[(6, 12), (11, 3)])).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        let positions: Vec<usize> = ["source", "companion", "pattern_s3", "winding", "theorem", "pattern_word"]
            .iter()
            .map(|k| text.find(&format!("\"{k}\":")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
        assert!(text.contains(r#""theorem":"FullTwist""#));
        let mut stripped = cert.clone();
        stripped.pattern_word = None;
        let text = serde_json::to_string(&stripped).unwrap();
        assert_eq!(serde_json::from_str::<SatelliteCertificate>(&text).unwrap(), stripped);
    }
}
