use lorenz_core::poly::LaurentPoly;
use num_bigint::BigInt;
use num_integer::Integer;

fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact long division; panics on a remainder.
fn div(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let lead = *den.last().unwrap();
    let mut quot = vec![0; num.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + den.len() - 1] / lead;
        assert_eq!(c * lead, rem[k + den.len() - 1]);
        quot[k] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    assert!(rem.iter().all(|&x| x == 0), "inexact division");
    quot
}

fn one_minus_t_pow(k: usize) -> Vec<i128> {
    let mut v = vec![0; k + 1];
    v[0] = 1;
    v[k] = -1;
    v
}

/// `(1−t)(1−t^{pq/d})^d / ((1−t^p)(1−t^q))` with `d = gcd(p, q)`, normalized.
pub fn torus_alexander(p: usize, q: usize) -> LaurentPoly {
    let d = p.gcd(&q);
    let mut num = one_minus_t_pow(1);
    for _ in 0..d {
        num = mul(&num, &one_minus_t_pow(p * q / d));
    }
    let den = mul(&one_minus_t_pow(p), &one_minus_t_pow(q));
    let coeffs: Vec<BigInt> = div(&num, &den).into_iter().map(BigInt::from).collect();
    LaurentPoly::from_coeffs(0, coeffs).normalized()
}
