//! Kauffman bracket of a braid closure by summing over all smoothings.
//!
//! For a positive letter the A-smoothing keeps both strands vertical; for a
//! negative letter it is the horizontal (cap/cup) smoothing.

use num_bigint::BigInt;

use super::InvariantError;
use crate::braid::BraidWord;
use crate::poly::LaurentPoly;

pub const DEFAULT_CROSSING_CAP: usize = 20;

/// `δ = −A² − A^{−2}`, the value of a disjoint circle.
pub fn loop_value() -> LaurentPoly {
    LaurentPoly::from_i64s(-2, &[-1, 0, 0, 0, -1])
}

struct Crossing {
    nw: usize,
    ne: usize,
    sw: usize,
    se: usize,
    positive: bool,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], components: &mut usize, a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra] = rb;
        *components -= 1;
    }
}

/// Unnormalized bracket `⟨ŵ⟩` with `⟨O⟩ = 1`.
pub fn kauffman_bracket(w: &BraidWord) -> Result<LaurentPoly, InvariantError> {
    kauffman_bracket_capped(w, DEFAULT_CROSSING_CAP)
}

pub fn kauffman_bracket_capped(w: &BraidWord, cap: usize) -> Result<LaurentPoly, InvariantError> {
    let crossings = w.len();
    if crossings > cap {
        return Err(InvariantError::CapExceeded {
            what: "crossings",
            value: crossings,
            limit: cap,
        });
    }
    let n = w.strands();
    let mut current: Vec<usize> = (0..n).collect();
    let mut next_arc = n;
    let mut diagram = Vec::with_capacity(crossings);
    for letter in w.letters() {
        let c = letter.index() - 1;
        let (sw, se) = (next_arc, next_arc + 1);
        next_arc += 2;
        diagram.push(Crossing {
            nw: current[c],
            ne: current[c + 1],
            sw,
            se,
            positive: letter.is_positive(),
        });
        current[c] = sw;
        current[c + 1] = se;
    }
    let mut base: Vec<usize> = (0..next_arc).collect();
    let mut base_components = next_arc;
    for (top, &bottom) in current.iter().enumerate() {
        union(&mut base, &mut base_components, top, bottom);
    }

    // counts[a][loops]: number of states with `a` A-smoothings and `loops` circles.
    let mut counts = vec![vec![0u64; next_arc + 1]; crossings + 1];
    let mut parent = vec![0usize; next_arc];
    for state in 0u64..(1u64 << crossings) {
        parent.copy_from_slice(&base);
        let mut components = base_components;
        let mut a_count = 0;
        for (k, x) in diagram.iter().enumerate() {
            let a_smoothing = state >> k & 1 == 1;
            a_count += a_smoothing as usize;
            if a_smoothing == x.positive {
                union(&mut parent, &mut components, x.nw, x.sw);
                union(&mut parent, &mut components, x.ne, x.se);
            } else {
                union(&mut parent, &mut components, x.nw, x.ne);
                union(&mut parent, &mut components, x.sw, x.se);
            }
        }
        counts[a_count][components] += 1;
    }

    let delta = loop_value();
    let max_loops = counts
        .iter()
        .flat_map(|row| row.iter().enumerate().filter(|(_, &c)| c > 0).map(|(l, _)| l))
        .max()
        .unwrap_or(1);
    let mut delta_pow = vec![LaurentPoly::one()];
    for _ in 1..max_loops {
        let last = delta_pow.last().expect("nonempty") * &delta;
        delta_pow.push(last);
    }
    let mut total = LaurentPoly::zero();
    for (a, row) in counts.iter().enumerate() {
        let exponent = 2 * a as i64 - crossings as i64;
        for (loops, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let term = delta_pow[loops - 1].shift(exponent).scale(&BigInt::from(count));
            total = total + term;
        }
    }
    Ok(total)
}

/// `(−A³)^{−writhe}·⟨L⟩`, normalized.
pub fn jones_from_bracket(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    bracket
        .shift(-3 * writhe)
        .scale(&BigInt::from(sign))
        .normalized()
}

/// Normalized Jones polynomial (in `A`) through the state sum.
pub fn jones_state_sum(w: &BraidWord, cap: usize) -> Result<LaurentPoly, InvariantError> {
    Ok(jones_from_bracket(&kauffman_bracket_capped(w, cap)?, w.writhe()))
}
