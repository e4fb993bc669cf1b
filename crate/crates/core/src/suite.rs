//! Seeded random instances and exhaustive parameter boxes for the batch checks.
//!
//! Every generator is a pure function of its seed and bounds.

use num_integer::Integer;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::braid::{expand_tlink, BraidWord, Letter};
use crate::invariant::{equivalence_evidence, jones_state_sum, jones_tl_capped, Caps, EquivalenceReport, Evidence};
use crate::satellite::{
    counterexample_family, ComposeParameters, FullTwistParameters, NoTwistParameters,
    SatelliteCertificate, SatelliteError,
};
use crate::poly::LaurentPoly;
use crate::tlink::{AugmentedSpec, TLinkError, TLinkSpec};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A word on `2..=max_strands` strands with `0..=max_letters` letters.
pub fn random_word(
    rng: &mut impl Rng,
    max_strands: usize,
    max_letters: usize,
    positive: bool,
) -> BraidWord {
    let n = rng.gen_range(2..=max_strands.max(2));
    let len = rng.gen_range(0..=max_letters);
    let letters = (0..len)
        .map(|_| Letter::new(rng.gen_range(1..n), positive || rng.gen_bool(0.5)))
        .collect();
    BraidWord::new(n, letters).expect("indices are in range")
}

pub fn random_words(
    seed: u64,
    count: usize,
    max_strands: usize,
    max_letters: usize,
    positive: bool,
) -> Vec<BraidWord> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| random_word(&mut rng, max_strands, max_letters, positive))
        .collect()
}

/// Coprime `(p, q)` with `2 ≤ q < p ≤ max_p`.
pub fn torus_pairs(max_p: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for p in 3..=max_p {
        for q in 2..p {
            if p.gcd(&q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

/// Increasing full twists `(r, r·t)` with `2 ≤ r ≤ max_r`, `1 ≤ t ≤ 2`.
fn random_full_twists(rng: &mut impl Rng, max_r: u64, max_pairs: usize) -> Vec<(u64, u64)> {
    if max_r < 2 {
        return Vec::new();
    }
    let mut rs: Vec<u64> = (2..=max_r).collect();
    rs.shuffle(rng);
    let k = rng.gen_range(1..=max_pairs.min(rs.len()));
    let mut chosen = rs[..k].to_vec();
    chosen.sort_unstable();
    chosen
        .into_iter()
        .map(|r| (r, r * rng.gen_range(1..=2)))
        .collect()
}

/// Specs `T((r_1, r_1t_1), …, (r_k, r_kt_k), (p, q))` with
/// `r_k ≤ min(p, q) ≤ 8`, `r_k < p` and `p ≤ 20`.
pub fn duality_instances(seed: u64, count: usize) -> Vec<TLinkSpec> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = rng.gen_range(3..=20u64);
        let q = if p <= 8 {
            rng.gen_range(2..=20u64)
        } else {
            rng.gen_range(2..=8u64)
        };
        let bound = p.min(q).min(p - 1);
        let mut pairs = random_full_twists(&mut rng, bound, 3);
        pairs.push((p, q));
        if let Ok(spec) = TLinkSpec::new(pairs) {
            if spec.letter_count() <= 1500 {
                out.push(spec);
            }
        }
    }
    out
}

/// Raw pair lists meeting the hypotheses for absorbing `r = q` and `r = p`
/// pairs, with `p ≤ 20`: pairs below `q` are arbitrary, `(q, q·s)` is a full
/// twist, pairs strictly between `q` and `p` are full twists, and an optional
/// `(p, s)` sits right before the final `(p, q)`. At least one of the `q` or
/// `p` pairs is present.
pub fn reduction_instances(seed: u64, count: usize) -> Vec<Vec<(u64, u64)>> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q = rng.gen_range(2..=6u64);
        let p = rng.gen_range(q + 1..=20u64);
        let mut pairs = Vec::new();
        if q > 2 && rng.gen_bool(0.5) {
            let r = rng.gen_range(2..q);
            pairs.push((r, rng.gen_range(1..=4)));
        }
        let with_q = rng.gen_bool(0.7);
        if with_q {
            pairs.push((q, q * rng.gen_range(1..=3)));
        }
        if p > q + 1 && rng.gen_bool(0.5) {
            let r = rng.gen_range(q + 1..p);
            pairs.push((r, r * rng.gen_range(1..=2)));
        }
        let with_p = !with_q || rng.gen_bool(0.3);
        if with_p {
            pairs.push((p, rng.gen_range(1..=5)));
        }
        pairs.push((p, q));
        let letters: u64 = pairs.iter().map(|&(r, s)| (r - 1) * s).sum();
        if letters <= 1500 {
            out.push(pairs);
        }
    }
    out
}

/// A spec next to its dual, with the comparison between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityOutcome {
    pub spec: TLinkSpec,
    pub dual: TLinkSpec,
    pub evidence: EquivalenceReport,
    /// Both Alexander polynomials were computed and are equal.
    pub alexander_equal: bool,
}

impl DualityOutcome {
    pub fn passed(&self) -> bool {
        self.evidence.verdict == Evidence::Consistent && self.alexander_equal
    }
}

pub fn check_duality(spec: &TLinkSpec, caps: &Caps) -> Result<DualityOutcome, TLinkError> {
    let dual = spec.bk_dual()?;
    let evidence = equivalence_evidence(spec, &dual, caps);
    let alexander_equal = matches!(&evidence.alexander, [Some(a), Some(b)] if a == b);
    Ok(DualityOutcome {
        spec: spec.clone(),
        dual,
        evidence,
        alexander_equal,
    })
}

/// A raw pair list before and after absorbing its `q` and `p` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutcome {
    pub pairs: Vec<(u64, u64)>,
    pub reduced: TLinkSpec,
    pub components: [usize; 2],
    pub alexander: [Option<LaurentPoly>; 2],
}

impl ReductionOutcome {
    pub fn passed(&self) -> bool {
        self.components[0] == self.components[1]
            && matches!(&self.alexander, [Some(a), Some(b)] if a == b)
    }
}

pub fn check_reduction(pairs: &[(u64, u64)], caps: &Caps) -> Result<ReductionOutcome, TLinkError> {
    let before = expand_tlink(pairs)?;
    let reduced = TLinkSpec::new(pairs.to_vec())?.omit_rq()?;
    let after = reduced.to_braid()?;
    let words = [&before, &after];
    Ok(ReductionOutcome {
        pairs: pairs.to_vec(),
        components: words.map(|w| w.closure_summary().component_count),
        alexander: words.map(|w| caps.alexander(w).ok()),
        reduced,
    })
}

/// Jones of one word through the state sum and through `TL_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOutcome {
    pub word: BraidWord,
    pub state_sum: Option<LaurentPoly>,
    pub temperley_lieb: Option<LaurentPoly>,
}

impl OracleOutcome {
    pub fn passed(&self) -> bool {
        matches!((&self.state_sum, &self.temperley_lieb), (Some(a), Some(b)) if a == b)
    }
}

pub fn check_jones_oracles(word: &BraidWord, caps: &Caps) -> OracleOutcome {
    OracleOutcome {
        word: word.clone(),
        state_sum: jones_state_sum(word, caps.bracket_crossings).ok(),
        temperley_lieb: jones_tl_capped(word, caps.tl_strands, caps.tl_letters).ok(),
    }
}

/// Inclusive integer range, written `[lo, hi]` in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span(pub u64, pub u64);

impl Span {
    pub fn iter(self) -> impl Iterator<Item = u64> {
        self.0..=self.1
    }
}

fn one_two() -> Span {
    Span(1, 2)
}

fn default_m() -> u64 {
    1
}

/// Parameter ranges accepted by `enumerate`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Ranges {
    /// `T((2,2c),(6,12),(9,18),(11,3))` for `c` in range.
    Counterexample { c: Span },
    /// Full-twist satellites with coprime `(p, q)`, `m` middle twists, and at
    /// most `n` a-block pairs `(a, b')` with `b' ∈ {1, 2, a, 2a}`.
    FullTwist {
        p: Span,
        q: Span,
        #[serde(default = "default_m")]
        m: u64,
        #[serde(default)]
        n: u64,
        #[serde(default = "one_two")]
        t: Span,
    },
    /// No-twist satellites; `a_b` lists the `b` values tried for a single
    /// a-pair (`[]` for none).
    NoTwist {
        c: Span,
        r: Span,
        #[serde(default)]
        k: Option<Span>,
        #[serde(default)]
        a_b: Vec<u64>,
    },
    /// Composed satellites whose source has at most `max_crossings` letters.
    Compose { max_crossings: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Counterexample,
    FullTwist,
    NoTwist,
    Compose,
}

impl Ranges {
    pub fn family(&self) -> Family {
        match self {
            Ranges::Counterexample { .. } => Family::Counterexample,
            Ranges::FullTwist { .. } => Family::FullTwist,
            Ranges::NoTwist { .. } => Family::NoTwist,
            Ranges::Compose { .. } => Family::Compose,
        }
    }

    /// Certificates for every parameter tuple in range, in a fixed order.
    pub fn certificates(&self) -> Result<Vec<SatelliteCertificate>, SatelliteError> {
        match *self {
            Ranges::Counterexample { c } => c
                .iter()
                .map(|c| Ok(counterexample_family(c)?.certificate))
                .collect(),
            Ranges::FullTwist { p, q, m, n, t } => full_twist_box(p, q, m, n, t)
                .iter()
                .map(FullTwistParameters::certificate)
                .collect(),
            Ranges::NoTwist { c, r, k, ref a_b } => no_twist_box(c, r, k, a_b)
                .iter()
                .map(NoTwistParameters::certificate)
                .collect(),
            Ranges::Compose { max_crossings } => compose_box(max_crossings)
                .iter()
                .map(ComposeParameters::certificate)
                .collect(),
        }
    }
}

/// Increasing sequences of length `1..=max_len` drawn from `lo..=hi`.
fn increasing(lo: u64, hi: u64, max_len: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u64>> = (lo..=hi).map(|x| vec![x]).collect();
    stack.reverse();
    while let Some(seq) = stack.pop() {
        if (seq.len() as u64) < max_len {
            let last = *seq.last().expect("nonempty");
            for x in (last + 1..=hi).rev() {
                let mut next = seq.clone();
                next.push(x);
                stack.push(next);
            }
        }
        out.push(seq);
    }
    out
}

fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, options| {
        acc.iter()
            .flat_map(|prefix| {
                options.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect()
    })
}

/// All full-twist parameter tuples with coprime `(p, q)` in range,
/// `1 ≤ m ≤ max_m` middle twists `(s_i, t_i)` with `q < qs_1 < … < qs_m < p`
/// and `t_i ∈ t`, and `0 ≤ n ≤ max_n` a-block pairs on `2 ≤ a < q`.
pub fn full_twist_box(p: Span, q: Span, max_m: u64, max_n: u64, t: Span) -> Vec<FullTwistParameters> {
    let mut out = Vec::new();
    for q in q.iter().filter(|&q| q >= 2) {
        let mut a_blocks: Vec<Vec<(u64, u64)>> = vec![Vec::new()];
        if q > 2 {
            for seq in increasing(2, q - 1, max_n) {
                let options: Vec<Vec<(u64, u64)>> = seq
                    .iter()
                    .map(|&a| {
                        let mut bs = vec![1, 2, a, 2 * a];
                        bs.sort_unstable();
                        bs.dedup();
                        bs.into_iter().map(|b| (a, b)).collect()
                    })
                    .collect();
                a_blocks.extend(product(&options));
            }
        }
        for p in p.iter().filter(|&p| p > q && p.gcd(&q) == 1) {
            let max_s = (p - 1) / q;
            if max_s < 2 {
                continue;
            }
            for ss in increasing(2, max_s, max_m) {
                let t_choices: Vec<Vec<u64>> = ss.iter().map(|_| t.iter().collect()).collect();
                for ts in product(&t_choices) {
                    let twists: Vec<(u64, u64)> = ss.iter().copied().zip(ts).collect();
                    for a_block in &a_blocks {
                        out.push(FullTwistParameters {
                            a_block: a_block.clone(),
                            twists: twists.clone(),
                            p,
                            q,
                        });
                    }
                }
            }
        }
    }
    out
}

/// No-twist parameters with `c ≥ 3`, `r ≥ 2`, `1 ≤ k ≤ r − 1`, and either no
/// a-pair or one `(a, b)` with `2 ≤ a ≤ r − k` and `b ∈ a_b`.
pub fn no_twist_box(c: Span, r: Span, k: Option<Span>, a_b: &[u64]) -> Vec<NoTwistParameters> {
    let mut out = Vec::new();
    for c in c.iter().filter(|&c| c >= 3) {
        for r in r.iter().filter(|&r| r >= 2) {
            let ks = k.unwrap_or(Span(1, r - 1));
            for k in ks.iter().filter(|&k| k >= 1 && k < r) {
                let mut blocks = vec![Vec::new()];
                for a in 2..=r - k {
                    blocks.extend(a_b.iter().map(|&b| vec![(a, b)]));
                }
                for a_pairs in blocks {
                    if let Ok(params) = NoTwistParameters::new(c, r, k, a_pairs) {
                        out.push(params);
                    }
                }
            }
        }
    }
    out
}

/// Composed satellites: companions of one or two pairs with `a ≤ 4`, `b ≤ 7`
/// that close to nontrivial knots, bases of one or two pairs with `c ≤ 3`, `d ≤ 3`,
/// keeping sources with at most `max_crossings` letters.
pub fn compose_box(max_crossings: u64) -> Vec<ComposeParameters> {
    let syllables = |max_r: u64, max_s: u64| -> Vec<Vec<(u64, u64)>> {
        let mut out = Vec::new();
        for rs in increasing(2, max_r, 2) {
            let options: Vec<Vec<(u64, u64)>> =
                rs.iter().map(|&r| (1..=max_s).map(|s| (r, s)).collect()).collect();
            out.extend(product(&options));
        }
        out
    };
    let mut out = Vec::new();
    for companion in syllables(4, 7) {
        for base in syllables(3, 3) {
            let Ok(params) = ComposeParameters::new(&companion, &base) else {
                continue;
            };
            // a positive braid closes to the unknot exactly when its genus is 0
            let knotted = params
                .companion
                .to_braid()
                .is_ok_and(|w| w.seifert_genus_positive().is_ok_and(|g| !g.is_zero()));
            let fits = knotted
                && params
                .certificate()
                .is_ok_and(|c| c.source.letter_count() <= max_crossings as u128);
            if fits {
                out.push(params);
            }
        }
    }
    out
}

/// An augmented torus knot with circles `J_{0,b}` and the filling
/// coefficients expected back from decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTripCase {
    pub aug: AugmentedSpec,
    pub coefficients: Vec<u64>,
    pub expected: FullTwistParameters,
}

/// Every tuple of [`full_twist_box`] whose a-block consists of full twists,
/// phrased as a filling of `T(p,q) ∪ J_{0,a_i} ∪ J_{0,s_iq}`.
pub fn round_trip_box(p: Span, q: Span, max_m: u64, max_n: u64, t: Span) -> Vec<RoundTripCase> {
    full_twist_box(p, q, max_m, max_n, t)
        .into_iter()
        .filter(|f| f.a_block.iter().all(|&(a, b)| b % a == 0))
        .map(|f| {
            let mut circles: Vec<(u64, u64)> = f.a_block.iter().map(|&(a, _)| (0, a)).collect();
            let mut coefficients: Vec<u64> = f.a_block.iter().map(|&(a, b)| b / a).collect();
            for &(s, t) in &f.twists {
                circles.push((0, s * f.q));
                coefficients.push(t);
            }
            RoundTripCase {
                aug: AugmentedSpec {
                    p: f.p,
                    q: f.q,
                    circles,
                },
                coefficients,
                expected: f,
            }
        })
        .collect()
}
