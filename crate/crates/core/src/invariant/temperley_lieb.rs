//! Jones polynomial through the Temperley–Lieb algebra `TL_n(δ)`.
//!
//! A basis diagram is a perfect matching on `2n` points: `0..n` along the top
//! and `n..2n` along the bottom. Letters are multiplied in at the bottom with
//! `σ_i ↦ A·1 + A^{−1}·e_i` and `σ_i^{−1} ↦ A^{−1}·1 + A·e_i`.

use std::collections::HashMap;

use super::bracket::{jones_from_bracket, loop_value};
use super::InvariantError;
use crate::braid::BraidWord;
use crate::poly::LaurentPoly;

pub const DEFAULT_STRAND_CAP: usize = 10;
/// Around 4 s at 10 strands in an optimized build.
pub const DEFAULT_LETTER_CAP: usize = 120;

type Diagram = Vec<u8>;

fn identity(n: usize) -> Diagram {
    (0..2 * n)
        .map(|p| if p < n { (p + n) as u8 } else { (p - n) as u8 })
        .collect()
}

/// `d·e_c`, returning the new diagram and whether a closed loop was removed.
fn times_generator(d: &Diagram, n: usize, c: usize) -> (Diagram, bool) {
    let (x, y) = (n + c, n + c + 1);
    if d[x] as usize == y {
        return (d.clone(), true);
    }
    let mut out = d.clone();
    let (a, b) = (d[x] as usize, d[y] as usize);
    out[a] = b as u8;
    out[b] = a as u8;
    out[x] = y as u8;
    out[y] = x as u8;
    (out, false)
}

/// Circles in the closure of `d`, which joins top `i` to bottom `i`.
fn closure_loops(d: &Diagram, n: usize) -> usize {
    let mut seen = vec![false; 2 * n];
    let mut loops = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut p = start;
        loop {
            seen[p] = true;
            let q = d[p] as usize;
            seen[q] = true;
            let next = if q < n { q + n } else { q - n };
            if next == start || seen[next] {
                break;
            }
            p = next;
        }
    }
    loops
}

/// Bracket of the closure of `w`, computed in `TL_n`.
pub fn bracket_tl(w: &BraidWord) -> Result<LaurentPoly, InvariantError> {
    bracket_tl_capped(w, DEFAULT_STRAND_CAP, DEFAULT_LETTER_CAP)
}

pub fn bracket_tl_capped(
    w: &BraidWord,
    strand_cap: usize,
    letter_cap: usize,
) -> Result<LaurentPoly, InvariantError> {
    let n = w.strands();
    if n > strand_cap {
        return Err(InvariantError::CapExceeded {
            what: "strands",
            value: n,
            limit: strand_cap,
        });
    }
    if w.len() > letter_cap {
        return Err(InvariantError::CapExceeded {
            what: "letters",
            value: w.len(),
            limit: letter_cap,
        });
    }
    let delta = loop_value();
    let mut element: HashMap<Diagram, LaurentPoly> = HashMap::new();
    element.insert(identity(n), LaurentPoly::one());
    for letter in w.letters() {
        let c = letter.index() - 1;
        let eps = letter.sign();
        let mut next: HashMap<Diagram, LaurentPoly> = HashMap::with_capacity(element.len() * 2);
        for (d, coef) in element {
            let (e, looped) = times_generator(&d, n, c);
            let mut via_e = coef.shift(-eps);
            if looped {
                via_e = &via_e * &delta;
            }
            accumulate(&mut next, e, via_e);
            accumulate(&mut next, d, coef.shift(eps));
        }
        next.retain(|_, v| !v.is_zero());
        element = next;
    }
    let mut total = LaurentPoly::zero();
    for (d, coef) in element {
        total = total + coef * delta.pow(closure_loops(&d, n) as u32 - 1);
    }
    Ok(total)
}

fn accumulate(map: &mut HashMap<Diagram, LaurentPoly>, d: Diagram, v: LaurentPoly) {
    match map.get_mut(&d) {
        Some(slot) => *slot = &*slot + &v,
        None => {
            map.insert(d, v);
        }
    }
}

/// Normalized Jones polynomial (in `A`) through `TL_n`.
pub fn jones_tl(w: &BraidWord) -> Result<LaurentPoly, InvariantError> {
    Ok(jones_from_bracket(&bracket_tl(w)?, w.writhe()))
}

pub fn jones_tl_capped(
    w: &BraidWord,
    strand_cap: usize,
    letter_cap: usize,
) -> Result<LaurentPoly, InvariantError> {
    Ok(jones_from_bracket(
        &bracket_tl_capped(w, strand_cap, letter_cap)?,
        w.writhe(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::bracket::kauffman_bracket;

    fn word(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::from_signed(n, l).unwrap()
    }

    #[test]
    fn generator_relations() {
        let n = 3;
        let id = identity(n);
        let (e1, l) = times_generator(&id, n, 0);
        assert!(!l);
        let (e1e1, l) = times_generator(&e1, n, 0);
        assert!(l);
        assert_eq!(e1e1, e1);
        let (e1e2, _) = times_generator(&e1, n, 1);
        let (e1e2e1, l) = times_generator(&e1e2, n, 0);
        assert!(!l);
        assert_eq!(e1e2e1, e1);
    }

    #[test]
    fn closure_loop_counts() {
        assert_eq!(closure_loops(&identity(4), 4), 4);
        let (e1, _) = times_generator(&identity(2), 2, 0);
        assert_eq!(closure_loops(&e1, 2), 1);
    }

    #[test]
    fn known_values() {
        assert_eq!(
            jones_tl(&word(2, &[])).unwrap(),
            LaurentPoly::from_i64s(0, &[1, 0, 0, 0, 1])
        );
        assert_eq!(
            jones_tl(&word(2, &[1, 1])).unwrap(),
            LaurentPoly::from_i64s(0, &[1, 0, 0, 0, 0, 0, 0, 0, 1])
        );
        assert!(jones_tl(&word(1, &[])).unwrap().is_one());
    }

    #[test]
    fn matches_state_sum() {
        for w in [
            word(2, &[1, 1, 1]),
            word(3, &[1, -2, 1, -2]),
            word(4, &[1, 2, 3, 1, 2, 3, -2]),
            word(3, &[1, 1, 2, 2]),
        ] {
            assert_eq!(bracket_tl(&w).unwrap(), kauffman_bracket(&w).unwrap(), "{w}");
        }
    }

    #[test]
    fn caps() {
        assert!(bracket_tl_capped(&word(4, &[]), 3, 10).is_err());
        assert!(bracket_tl_capped(&word(2, &[1, 1, 1]), 3, 2).is_err());
    }
}
