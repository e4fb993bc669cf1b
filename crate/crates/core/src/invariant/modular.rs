//! Word-size modular arithmetic over 62-bit primes, with Garner
//! reconstruction into symmetric integer residues.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// `x^e` for a signed exponent; `x` must be invertible.
pub fn pow_signed(x: u64, e: i64, p: u64) -> u64 {
    if e >= 0 {
        pow_mod(x, e as u64, p)
    } else {
        pow_mod(inv_mod(x, p), e.unsigned_abs(), p)
    }
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_TABLE_LEN: usize = 512;

/// The largest primes below `2^62`, in decreasing order.
pub fn primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_TABLE_LEN);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_TABLE_LEN {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

/// Enough primes for the product to exceed `2·bound`, or `None` if the table runs out.
pub fn primes_covering(bound: &BigUint) -> Option<&'static [u64]> {
    let target = bound * 2u32 + 1u32;
    let mut product = BigUint::one();
    for (i, &p) in primes().iter().enumerate() {
        product *= p;
        if product > target {
            return Some(&primes()[..=i]);
        }
    }
    None
}

/// Precomputed Garner coefficients for a fixed list of moduli.
pub struct Garner {
    moduli: Vec<u64>,
    /// `inverses[i][j] = m_j^{-1} mod m_i` for `j < i`.
    inverses: Vec<Vec<u64>>,
    product: BigUint,
}

impl Garner {
    pub fn new(moduli: &[u64]) -> Self {
        let inverses = (0..moduli.len())
            .map(|i| {
                (0..i)
                    .map(|j| inv_mod(moduli[j] % moduli[i], moduli[i]))
                    .collect()
            })
            .collect();
        let product = moduli.iter().fold(BigUint::one(), |acc, &m| acc * m);
        Self {
            moduli: moduli.to_vec(),
            inverses,
            product,
        }
    }

    /// The unique integer in `(−M/2, M/2]` with the given residues.
    pub fn reconstruct(&self, residues: &[u64]) -> BigInt {
        let k = self.moduli.len();
        debug_assert_eq!(residues.len(), k);
        let mut digits = vec![0u64; k];
        for i in 0..k {
            let p = self.moduli[i];
            let mut x = residues[i] % p;
            for j in 0..i {
                x = mul_mod(sub_mod(x, digits[j] % p, p), self.inverses[i][j], p);
            }
            digits[i] = x;
        }
        let mut value = BigUint::zero();
        for i in (0..k).rev() {
            value = value * self.moduli[i] + digits[i];
        }
        let half = &self.product >> 1u32;
        if value > half {
            BigInt::from(value) - BigInt::from(self.product.clone())
        } else {
            BigInt::from(value)
        }
    }
}

/// Montgomery arithmetic modulo an odd `p < 2^62`. Values passed to `mul`,
/// `add` and `sub` are in Montgomery form.
#[derive(Debug, Clone, Copy)]
pub struct Montgomery {
    p: u64,
    neg_inv: u64,
    r2: u64,
}

impl Montgomery {
    pub fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < 1 << 62);
        let mut inv = p;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        Self {
            p,
            neg_inv: inv.wrapping_neg(),
            r2: mul_mod(r, r, p),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        add_mod(a, b, self.p)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        sub_mod(a, b, self.p)
    }

    pub fn to_mont(&self, x: u64) -> u64 {
        self.mul(x % self.p, self.r2)
    }

    pub fn from_mont(&self, x: u64) -> u64 {
        self.reduce(x as u128)
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    /// `x^e` for a signed exponent.
    pub fn pow_signed(&self, x: u64, e: i64) -> u64 {
        if e >= 0 {
            self.pow(x, e as u64)
        } else {
            self.pow(self.inv(x), e.unsigned_abs())
        }
    }

    /// Determinant of a square matrix in Montgomery form, consuming it.
    pub fn det(&self, mut a: Vec<Vec<u64>>) -> u64 {
        let n = a.len();
        let mut det = self.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r][col] != 0) else {
                return 0;
            };
            if pivot != col {
                a.swap(pivot, col);
                det = self.sub(0, det);
            }
            let pv = a[col][col];
            det = self.mul(det, pv);
            let inv = self.inv(pv);
            let (upper, lower) = a.split_at_mut(col + 1);
            let prow = &upper[col];
            for row in lower.iter_mut() {
                let f = self.mul(row[col], inv);
                if f == 0 {
                    continue;
                }
                for c in col..n {
                    row[c] = self.sub(row[c], self.mul(f, prow[c]));
                }
            }
        }
        det
    }

    /// Ascending coefficients (plain residues) of the polynomial of degree
    /// `≤ values.len() − 1` taking `values[j]` (Montgomery form) at `x0 + j`.
    pub fn interpolate_consecutive(&self, values: &[u64], x0: u64) -> Vec<u64> {
        let n = values.len();
        if n == 0 {
            return Vec::new();
        }
        // Newton form over consecutive nodes: c_k = Δ^k f(x0) / k!.
        let mut diffs = values.to_vec();
        let mut newton = Vec::with_capacity(n);
        for k in 0..n {
            newton.push(diffs[0]);
            for j in 0..n - k - 1 {
                diffs[j] = self.sub(diffs[j + 1], diffs[j]);
            }
        }
        let mut fact = vec![self.one(); n];
        for k in 1..n {
            fact[k] = self.mul(fact[k - 1], self.to_mont(k as u64));
        }
        let mut inv_fact = self.inv(fact[n - 1]);
        for k in (0..n).rev() {
            newton[k] = self.mul(newton[k], inv_fact);
            inv_fact = self.mul(inv_fact, self.to_mont(k as u64 % self.p));
            if k == 0 {
                break;
            }
        }
        // Horner in the basis (x − x0)(x − x0 − 1)… from the top down.
        let mut poly: Vec<u64> = vec![newton[n - 1]];
        for k in (0..n - 1).rev() {
            let node = self.to_mont(x0 + k as u64);
            let mut next = vec![0u64; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], c);
                next[i] = self.sub(next[i], self.mul(c, node));
            }
            next[0] = self.add(next[0], newton[k]);
            poly = next;
        }
        poly.into_iter().map(|c| self.from_mont(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime_and_decreasing() {
        let ps = primes();
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| p < 1 << 62 && p > 1 << 61));
        assert!(is_prime(ps[0]));
        assert!(!is_prime(ps[0] - 2) || ps[1] == ps[0] - 2);
        assert!(is_prime(2) && is_prime(3) && !is_prime(1) && !is_prime(561));
    }

    #[test]
    fn garner_round_trips_signed_values() {
        let ms = &primes()[..3];
        let g = Garner::new(ms);
        for v in [
            BigInt::from(0),
            BigInt::from(-1),
            BigInt::from(123_456_789_012_345_678i64),
            -BigInt::from(10u32).pow(50),
        ] {
            let residues: Vec<u64> = ms
                .iter()
                .map(|&p| {
                    let r = &v % BigInt::from(p);
                    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
                    r.try_into().unwrap()
                })
                .collect();
            assert_eq!(g.reconstruct(&residues), v);
        }
    }

    #[test]
    fn montgomery_matches_plain() {
        let p = primes()[0];
        let m = Montgomery::new(p);
        for (a, b) in [(0u64, 5u64), (p - 1, p - 1), (123_456_789, 987_654_321_012)] {
            let prod = m.from_mont(m.mul(m.to_mont(a), m.to_mont(b)));
            assert_eq!(prod, mul_mod(a, b, p));
        }
        assert_eq!(m.from_mont(m.inv(m.to_mont(7))), inv_mod(7, p));
        assert_eq!(m.from_mont(m.pow_signed(m.to_mont(3), -2)), inv_mod(9, p));
    }

    #[test]
    fn det_small() {
        let p = primes()[0];
        let m = Montgomery::new(p);
        let mat = |rows: &[[u64; 2]]| -> Vec<Vec<u64>> {
            rows.iter().map(|r| r.iter().map(|&x| m.to_mont(x)).collect()).collect()
        };
        assert_eq!(m.from_mont(m.det(mat(&[[2, 1], [1, 3]]))), 5);
        assert_eq!(m.from_mont(m.det(mat(&[[0, 1], [1, 0]]))), p - 1);
        assert_eq!(m.from_mont(m.det(vec![])), 1);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = primes()[1];
        let m = Montgomery::new(p);
        let coeffs = [5u64, 0, p - 3, 7, 1];
        let eval = |x: u64| {
            coeffs
                .iter()
                .rev()
                .fold(0u64, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
        };
        for x0 in [2u64, 40] {
            let values: Vec<u64> = (0..5).map(|j| m.to_mont(eval(x0 + j))).collect();
            assert_eq!(m.interpolate_consecutive(&values, x0), coeffs.to_vec());
        }
    }
}
