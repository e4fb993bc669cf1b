//! Invariant reports, the satellite Alexander check, and equivalence evidence
//! between two T-links.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::alexander::alexander_poly;
use super::bracket::{jones_state_sum, DEFAULT_CROSSING_CAP};
use super::temperley_lieb::{jones_tl_capped, DEFAULT_LETTER_CAP, DEFAULT_STRAND_CAP};
use super::InvariantError;
use crate::braid::BraidWord;
use crate::poly::LaurentPoly;
use crate::satellite::{SatelliteCertificate, Theorem};
use crate::tlink::TLinkSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub alexander_strands: usize,
    pub alexander_letters: usize,
    pub bracket_crossings: usize,
    pub tl_strands: usize,
    pub tl_letters: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            alexander_strands: 60,
            alexander_letters: 2500,
            bracket_crossings: DEFAULT_CROSSING_CAP,
            tl_strands: DEFAULT_STRAND_CAP,
            tl_letters: DEFAULT_LETTER_CAP,
        }
    }
}

fn cap(what: &'static str, value: usize, limit: usize) -> Result<(), InvariantError> {
    if value > limit {
        Err(InvariantError::CapExceeded { what, value, limit })
    } else {
        Ok(())
    }
}

impl Caps {
    pub fn alexander(&self, w: &BraidWord) -> Result<LaurentPoly, InvariantError> {
        cap("strands", w.strands(), self.alexander_strands)?;
        cap("letters", w.len(), self.alexander_letters)?;
        alexander_poly(w)
    }

    /// Jones through the state sum when the crossings fit, else through `TL_n`.
    pub fn jones(&self, w: &BraidWord) -> Result<LaurentPoly, InvariantError> {
        if w.len() <= self.bracket_crossings {
            jones_state_sum(w, self.bracket_crossings)
        } else {
            jones_tl_capped(w, self.tl_strands, self.tl_letters)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub components: usize,
    pub linking_matrix: Vec<Vec<i64>>,
    pub writhe: i64,
    /// Euler characteristic of the braid's Seifert surface; positive words only.
    pub euler_characteristic: Option<i64>,
    pub alexander: Option<LaurentPoly>,
    pub jones: Option<LaurentPoly>,
    pub skipped: Vec<String>,
}

pub fn invariant_report(w: &BraidWord, caps: &Caps) -> InvariantReport {
    let summary = w.closure_summary();
    let mut skipped = Vec::new();
    let alexander = caps
        .alexander(w)
        .map_err(|e| skipped.push(format!("alexander: {e}")))
        .ok();
    let jones = caps
        .jones(w)
        .map_err(|e| skipped.push(format!("jones: {e}")))
        .ok();
    InvariantReport {
        components: summary.component_count,
        linking_matrix: summary.linking_matrix,
        writhe: summary.writhe,
        euler_characteristic: w.is_positive().then(|| w.euler_characteristic()),
        alexander,
        jones,
        skipped,
    }
}

pub fn spec_report(spec: &TLinkSpec, caps: &Caps) -> Result<InvariantReport, crate::tlink::TLinkError> {
    Ok(invariant_report(&spec.to_braid()?, caps))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckVerdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    Skipped,
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckVerdict::Pass => "PASS",
            CheckVerdict::Fail => "FAIL",
            CheckVerdict::Skipped => "Skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatelliteCheck {
    pub verdict: CheckVerdict,
    pub theorem: Theorem,
    pub winding: u64,
    pub source: Option<LaurentPoly>,
    pub pattern: Option<LaurentPoly>,
    pub companion: Option<LaurentPoly>,
    /// `Δ_pattern(t)·Δ_companion(t^winding)`, normalized.
    pub product: Option<LaurentPoly>,
    pub notes: Vec<String>,
}

impl SatelliteCheck {
    /// The same check against `Δ_companion(t^winding)` for another winding,
    /// reusing the stored polynomials.
    pub fn with_winding(&self, winding: u64) -> SatelliteCheck {
        let product = match (&self.pattern, &self.companion) {
            (Some(p), Some(c)) => Some((p * &c.substitute_power(winding)).normalized()),
            _ => None,
        };
        let mismatch = self.notes.iter().any(|n| n.contains("disagree"));
        let verdict = match (&self.source, &product) {
            _ if mismatch => CheckVerdict::Fail,
            (Some(s), Some(prod)) if s == prod => CheckVerdict::Pass,
            (Some(_), Some(_)) => CheckVerdict::Fail,
            _ => CheckVerdict::Skipped,
        };
        SatelliteCheck {
            verdict,
            winding,
            product,
            ..self.clone()
        }
    }
}

fn record(label: &str, r: Result<LaurentPoly, String>, notes: &mut Vec<String>) -> Option<LaurentPoly> {
    r.map_err(|e| notes.push(format!("{label}: skipped ({e})"))).ok()
}

fn spec_alexander(spec: &TLinkSpec, caps: &Caps) -> Result<LaurentPoly, String> {
    let w = spec.to_braid().map_err(|e| e.to_string())?;
    caps.alexander(&w).map_err(|e| e.to_string())
}

/// Checks `Δ_source(t) ≐ Δ_pattern(t)·Δ_companion(t^w)`. The pattern polynomial
/// comes from `pattern_s3` and, when present, the solid-torus word; if both
/// are in range they must agree.
pub fn satellite_alexander_check(cert: &SatelliteCertificate, caps: &Caps) -> SatelliteCheck {
    let mut notes = Vec::new();
    let mut fail = false;
    let source = record("source", spec_alexander(&cert.source, caps), &mut notes);
    let companion = record("companion", spec_alexander(&cert.companion, caps), &mut notes);
    let from_s3 = record("pattern_s3", spec_alexander(&cert.pattern_s3, caps), &mut notes);
    let from_word = match &cert.pattern_word {
        Some(w) => record(
            "pattern_word",
            caps.alexander(w).map_err(|e| e.to_string()),
            &mut notes,
        ),
        None => None,
    };
    let pattern = match (from_s3, from_word) {
        (Some(a), Some(b)) => {
            if a != b {
                notes.push(format!(
                    "pattern_s3 and pattern_word disagree: {a} vs {b}"
                ));
                fail = true;
            }
            Some(a)
        }
        (a, b) => a.or(b),
    };
    let product = match (&pattern, &companion) {
        (Some(p), Some(c)) => Some((p * &c.substitute_power(cert.winding)).normalized()),
        _ => None,
    };
    let verdict = match (&source, &product) {
        _ if fail => CheckVerdict::Fail,
        (Some(s), Some(prod)) if s == prod => CheckVerdict::Pass,
        (Some(_), Some(_)) => CheckVerdict::Fail,
        _ => CheckVerdict::Skipped,
    };
    SatelliteCheck {
        verdict,
        theorem: cert.theorem,
        winding: cert.winding,
        source,
        pattern,
        companion,
        product,
        notes,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Evidence {
    #[serde(rename = "CONSISTENT")]
    Consistent,
    #[serde(rename = "INCONSISTENT")]
    Inconsistent,
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Evidence::Consistent => "CONSISTENT",
            Evidence::Inconsistent => "INCONSISTENT",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub verdict: Evidence,
    /// Some comparison was skipped for size.
    pub partial: bool,
    pub components: [Option<usize>; 2],
    pub alexander: [Option<LaurentPoly>; 2],
    pub jones: [Option<LaurentPoly>; 2],
    pub notes: Vec<String>,
}

fn pair_eq<T: PartialEq>(x: &Option<T>, y: &Option<T>) -> Option<bool> {
    match (x, y) {
        (Some(x), Some(y)) => Some(x == y),
        _ => None,
    }
}

/// Compares component counts, Alexander and Jones polynomials. An
/// inconsistency rules out isotopy; consistency is only evidence.
pub fn equivalence_evidence(a: &TLinkSpec, b: &TLinkSpec, caps: &Caps) -> EquivalenceReport {
    let mut notes = Vec::new();
    let words: Vec<Option<BraidWord>> = [a, b]
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.to_braid()
                .map_err(|e| notes.push(format!("spec {}: {e}", i + 1)))
                .ok()
        })
        .collect();
    let components = [0, 1].map(|i| {
        words[i]
            .as_ref()
            .map(|w| w.closure_summary().component_count)
    });
    let mut run = |label: &str, f: &dyn Fn(&BraidWord) -> Result<LaurentPoly, InvariantError>| {
        let mut out = [None, None];
        for i in 0..2 {
            let Some(w) = words[i].as_ref() else { break };
            match f(w) {
                Ok(v) => out[i] = Some(v),
                Err(e) => {
                    notes.push(format!("{label} {}: skipped ({e})", i + 1));
                    break;
                }
            }
        }
        out
    };
    let alexander = run("alexander", &|w| caps.alexander(w));
    let jones = run("jones", &|w| caps.jones(w));

    let mut partial = false;
    let mut inconsistent = false;
    let mut compare = |name: &str, equal: Option<bool>, notes: &mut Vec<String>| match equal {
        Some(true) => {}
        Some(false) => {
            inconsistent = true;
            notes.push(format!("{name} differ"));
        }
        None => partial = true,
    };
    compare("component counts", pair_eq(&components[0], &components[1]), &mut notes);
    compare("Alexander polynomials", pair_eq(&alexander[0], &alexander[1]), &mut notes);
    compare("Jones polynomials", pair_eq(&jones[0], &jones[1]), &mut notes);
    EquivalenceReport {
        verdict: if inconsistent {
            Evidence::Inconsistent
        } else {
            Evidence::Consistent
        },
        partial,
        components,
        alexander,
        jones,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satellite::{build_no_twist, decompose_full_twist};

    fn t(pairs: &[(u64, u64)]) -> TLinkSpec {
        TLinkSpec::new(pairs.to_vec()).unwrap()
    }

    #[test]
    fn report_for_trefoil() {
        let r = spec_report(&t(&[(3, 2)]), &Caps::default()).unwrap();
        assert_eq!(r.components, 1);
        assert_eq!(r.writhe, 4);
        assert_eq!(r.euler_characteristic, Some(-1));
        assert_eq!(r.alexander, Some(LaurentPoly::from_i64s(0, &[1, -1, 1])));
        assert!(r.jones.is_some());
        assert!(r.skipped.is_empty());
    }

    #[test]
    fn unknot_report() {
        let r = spec_report(&TLinkSpec::unknot(), &Caps::default()).unwrap();
        assert!(r.alexander.unwrap().is_one());
        assert!(r.jones.unwrap().is_one());
    }

    #[test]
    fn full_twist_check_passes_and_mutation_fails() {
        let cert = decompose_full_twist(&t(&[(6, 12), (11, 3)])).unwrap();
        let check = satellite_alexander_check(&cert, &Caps::default());
        assert_eq!(check.verdict, CheckVerdict::Pass, "{:?}", check.notes);
        let bad = satellite_alexander_check(&cert.with_winding(4), &Caps::default());
        assert_eq!(bad.verdict, CheckVerdict::Fail);
        let reused = check.with_winding(4);
        assert_eq!(reused.verdict, CheckVerdict::Fail);
        assert_eq!(reused.product, bad.product);
        assert_eq!(check.with_winding(check.winding), check);
    }

    #[test]
    fn no_twist_check_passes() {
        let (_, cert) = build_no_twist(3, 2, 1, &[]).unwrap();
        let check = satellite_alexander_check(&cert, &Caps::default());
        assert_eq!(check.verdict, CheckVerdict::Pass);
        assert_eq!(check.winding, 2);
    }

    #[test]
    fn oversized_check_is_skipped() {
        let cert = decompose_full_twist(&t(&[(6, 12), (11, 3)])).unwrap();
        let caps = Caps {
            alexander_strands: 5,
            ..Caps::default()
        };
        assert_eq!(satellite_alexander_check(&cert, &caps).verdict, CheckVerdict::Skipped);
    }

    #[test]
    fn equivalence_examples() {
        let caps = Caps::default();
        let e = equivalence_evidence(&t(&[(3, 6), (5, 3)]), &t(&[(11, 3)]), &caps);
        assert_eq!(e.verdict, Evidence::Consistent);
        let e = equivalence_evidence(&t(&[(2, 4), (7, 3)]), &t(&[(2, 4), (3, 7)]), &caps);
        assert_eq!(e.verdict, Evidence::Consistent);
        let e = equivalence_evidence(&t(&[(2, 3)]), &t(&[(2, 5)]), &caps);
        assert_eq!(e.verdict, Evidence::Inconsistent);
    }
}
