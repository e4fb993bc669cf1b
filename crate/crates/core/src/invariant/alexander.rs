//! Alexander polynomials of braid closures from `det(I − B(t)) = (1 + t + … + t^{n−1})·Δ(t)`,
//! with `B` the reduced Burau matrix.
//!
//! The default route builds `I − B` over `Z[t, t^{-1}]`, bounds the exponents and
//! coefficients of its determinant, and recovers the determinant from values at
//! consecutive integers modulo enough 62-bit primes. A slower route over the
//! rationals is kept as an independent check.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::burau::{burau_reduced_eval, burau_reduced_symbolic, Coeff, Entry, SymbolicMatrix};
use super::modular::{primes_covering, Garner, Montgomery};
use super::InvariantError;
use crate::braid::BraidWord;
use crate::poly::LaurentPoly;

const DEFAULT_ORIGIN: u64 = 2;

/// `1 + t + … + t^{n−1}`.
fn strand_factor(n: usize) -> LaurentPoly {
    LaurentPoly::from_coeffs(0, vec![<BigInt as One>::one(); n.max(1)])
}

/// Normalized Alexander polynomial of the closure of `w`.
pub fn alexander_poly(w: &BraidWord) -> Result<LaurentPoly, InvariantError> {
    alexander_poly_from(w, DEFAULT_ORIGIN)
}

/// As [`alexander_poly`], sampling the determinant at `origin, origin + 1, …`.
pub fn alexander_poly_from(w: &BraidWord, origin: u64) -> Result<LaurentPoly, InvariantError> {
    if origin == 0 {
        return Err(InvariantError::ZeroParameter);
    }
    let n = w.strands();
    if n < 2 {
        return Ok(LaurentPoly::one());
    }
    let h = match burau_reduced_symbolic::<i128>(w) {
        Some(b) => burau_det(one_minus(b).ok_or(InvariantError::Overflow)?, origin)?,
        None => {
            let b = burau_reduced_symbolic::<BigInt>(w).ok_or(InvariantError::Overflow)?;
            burau_det(one_minus(b).ok_or(InvariantError::Overflow)?, origin)?
        }
    };
    divide_out(&h, n)
}

fn divide_out(h: &LaurentPoly, n: usize) -> Result<LaurentPoly, InvariantError> {
    if h.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    h.exact_div(&strand_factor(n))
        .map(|q| q.normalized())
        .ok_or(InvariantError::NotDivisible)
}

fn one_minus<C: Coeff>(mut b: SymbolicMatrix<C>) -> Option<SymbolicMatrix<C>> {
    for (i, row) in b.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let mut v = Entry::zero();
            if i == j {
                v.add_shifted(&Entry::constant(C::one()), 0, false)?;
            }
            v.add_shifted(e, 0, true)?;
            v.trim();
            *e = v;
        }
    }
    Some(b)
}

/// Exponent window `[lo, hi]` containing every term of `det(a)`, or `None`
/// if the determinant is forced to vanish.
fn exponent_window<C: Coeff>(a: &SymbolicMatrix<C>) -> Option<(i64, i64)> {
    let m = a.len();
    let ranges: Vec<Vec<Option<(i64, i64)>>> =
        a.iter().map(|row| row.iter().map(Entry::range).collect()).collect();
    let fold = |cells: &mut dyn Iterator<Item = Option<(i64, i64)>>| {
        cells.flatten().fold(None, |acc: Option<(i64, i64)>, (l, h)| match acc {
            None => Some((l, h)),
            Some((al, ah)) => Some((al.min(l), ah.max(h))),
        })
    };
    let (mut rlo, mut rhi, mut clo, mut chi) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..m {
        let (l, h) = fold(&mut ranges[i].iter().copied())?;
        rlo += l;
        rhi += h;
        let (l, h) = fold(&mut (0..m).map(|r| ranges[r][i]))?;
        clo += l;
        chi += h;
    }
    let (lo, hi) = (rlo.max(clo), rhi.min(chi));
    (lo <= hi).then_some((lo, hi))
}

/// Hadamard bound on the coefficients of `det(a)`: on `|t| = 1` each entry is
/// at most its `ℓ1` norm, and coefficients are bounded by the maximum modulus.
fn coefficient_bound<C: Coeff>(a: &SymbolicMatrix<C>) -> BigUint {
    let m = a.len();
    let norms: Vec<Vec<BigUint>> =
        a.iter().map(|row| row.iter().map(Entry::l1_norm).collect()).collect();
    let by_rows: BigUint = norms
        .iter()
        .map(|row| row.iter().map(|x| x * x).sum::<BigUint>())
        .product();
    let by_cols: BigUint = (0..m)
        .map(|j| norms.iter().map(|row| &row[j] * &row[j]).sum::<BigUint>())
        .product();
    by_rows.min(by_cols).sqrt() + 1u32
}

/// `det(a)` for a square matrix over `Z[t, t^{-1}]`.
pub(crate) fn burau_det<C: Coeff>(a: SymbolicMatrix<C>, origin: u64) -> Result<LaurentPoly, InvariantError> {
    let m = a.len();
    if m == 0 {
        return Ok(LaurentPoly::one());
    }
    let Some((lo, hi)) = exponent_window(&a) else {
        return Ok(LaurentPoly::zero());
    };
    let points = (hi - lo) as usize + 1;
    let bound = coefficient_bound(&a);
    let moduli = primes_covering(&bound).ok_or(InvariantError::Overflow)?;

    let entry_lo: Vec<Vec<i64>> = a.iter().map(|row| row.iter().map(|e| e.lo).collect()).collect();
    let min_lo = entry_lo.iter().flatten().copied().min().unwrap_or(0);
    let max_lo = entry_lo.iter().flatten().copied().max().unwrap_or(0);

    let per_prime: Vec<Vec<u64>> = moduli
        .par_iter()
        .map(|&p| {
            let f = Montgomery::new(p);
            let residues: Vec<Vec<Vec<u64>>> = a
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.coeffs.iter().map(|c| f.to_mont(c.rem_prime(p))).collect())
                        .collect()
                })
                .collect();
            let values: Vec<u64> = (0..points as u64)
                .map(|j| {
                    let x = f.to_mont(origin + j);
                    let mut powers = Vec::with_capacity((max_lo - min_lo) as usize + 1);
                    let mut acc = f.pow_signed(x, min_lo);
                    for _ in min_lo..=max_lo {
                        powers.push(acc);
                        acc = f.mul(acc, x);
                    }
                    let mat: Vec<Vec<u64>> = residues
                        .iter()
                        .zip(&entry_lo)
                        .map(|(row, los)| {
                            row.iter()
                                .zip(los)
                                .map(|(cs, &l)| {
                                    let v = cs.iter().rev().fold(0u64, |s, &c| f.add(f.mul(s, x), c));
                                    f.mul(v, powers[(l - min_lo) as usize])
                                })
                                .collect()
                        })
                        .collect();
                    f.mul(f.det(mat), f.pow_signed(x, -lo))
                })
                .collect();
            f.interpolate_consecutive(&values, origin)
        })
        .collect();

    let garner = Garner::new(moduli);
    let coeffs: Vec<BigInt> = (0..points)
        .map(|k| {
            let residues: Vec<u64> = per_prime.iter().map(|c| c[k]).collect();
            garner.reconstruct(&residues)
        })
        .collect();
    Ok(LaurentPoly::from_coeffs(lo, coeffs))
}

fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
        }
    }
    det
}

/// Newton divided-difference interpolation, ascending monomial coefficients.
fn interpolate_rational(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut table = ys.to_vec();
    let mut newton = Vec::with_capacity(n);
    for k in 0..n {
        newton.push(table[0].clone());
        for j in 0..n - k - 1 {
            table[j] = (&table[j + 1] - &table[j]) / (&xs[j + k + 1] - &xs[j]);
        }
    }
    let mut poly = vec![newton[n - 1].clone()];
    for k in (0..n - 1).rev() {
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &xs[k];
        }
        next[0] += &newton[k];
        poly = next;
    }
    poly
}

/// Alexander polynomial by evaluating `det(I − B(t))` at the given distinct
/// nonzero rationals. Needs at least `(n−1)·len(w) + 1` points.
pub fn alexander_poly_interpolated(
    w: &BraidWord,
    points: &[BigRational],
) -> Result<LaurentPoly, InvariantError> {
    let n = w.strands();
    if n < 2 {
        return Ok(LaurentPoly::one());
    }
    let m = n - 1;
    let degree = m * w.len();
    if points.len() < degree + 1 {
        return Err(InvariantError::TooFewPoints {
            needed: degree + 1,
            got: points.len(),
        });
    }
    let xs = &points[..degree + 1];
    // Entries of B lie in t^{-ν}·Z[t], so t^{mν}·det(I − B) is a polynomial.
    let nu = w.negative_count() as i64;
    let shift = m as i64 * nu;
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| {
            let b = burau_reduced_eval(w, x)?;
            let a: Vec<Vec<BigRational>> = b
                .into_iter()
                .enumerate()
                .map(|(i, row)| {
                    row.into_iter()
                        .enumerate()
                        .map(|(j, v)| if i == j { BigRational::one() - v } else { -v })
                        .collect()
                })
                .collect();
            Ok(rational_det(a) * num_traits::pow(x.clone(), shift as usize))
        })
        .collect::<Result<_, InvariantError>>()?;
    let coeffs = interpolate_rational(xs, &ys);
    let ints = coeffs
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(InvariantError::NotDivisible)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    divide_out(&LaurentPoly::from_coeffs(-shift, ints), n)
}

/// The consecutive integers `start, start + 1, …` as rationals, enough for `w`.
pub fn integer_points(w: &BraidWord, start: i64) -> Vec<BigRational> {
    let count = w.strands().saturating_sub(1) * w.len() + 1;
    (0..count as i64)
        .map(|k| BigRational::from_integer(BigInt::from(start + k)))
        .collect()
}
