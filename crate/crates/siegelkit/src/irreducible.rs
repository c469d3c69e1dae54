//! Irreducibility certificates by reduction modulo small primes.
//!
//! If `f` is primitive and `f mod p` keeps its degree and is irreducible
//! over `GF(p)`, then `f` is irreducible over `Q`. The test over `GF(p)` is
//! Ben-Or's: `gcd(f, t^{p^i} - t) = 1` for `1 <= i <= deg f / 2`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::poly::IntPoly;

/// Outcome of an irreducibility attempt. `Unknown` never means reducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    /// `f mod p` is irreducible of full degree.
    Certificate { prime: u64 },
    /// Irreducible by a theorem whose hypotheses were verified.
    LemmaGuarantee,
    Unknown,
}

impl Irreducibility {
    pub fn is_certified(&self) -> bool {
        !matches!(self, Irreducibility::Unknown)
    }
}

/// Default bound on the primes tried.
pub const DEFAULT_PRIME_LIMIT: u64 = 100;

pub fn primes_up_to(n: u64) -> Vec<u64> {
    let mut sieve = vec![true; n as usize + 1];
    let mut out = Vec::new();
    for i in 2..=n as usize {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// Tries primes up to `limit`. Degree 1 is irreducible outright and is
/// reported with the first admissible prime.
pub fn certify_mod_p(f: &IntPoly, limit: u64) -> Irreducibility {
    let f = f.primitive_part();
    let Some(n) = f.degree() else {
        return Irreducibility::Unknown;
    };
    if n == 0 {
        return Irreducibility::Unknown;
    }
    for p in primes_up_to(limit.min(1 << 31)) {
        if let Some(g) = reduce_mod(&f, p) {
            if irreducible_mod_p(&g, p) {
                return Irreducibility::Certificate { prime: p };
            }
        }
    }
    Irreducibility::Unknown
}

/// Monic image of `f` modulo `p`, or `None` if `p` divides the leading
/// coefficient.
pub fn reduce_mod(f: &IntPoly, p: u64) -> Option<Vec<u64>> {
    let pb = BigInt::from(p);
    let c: Vec<u64> = f.coeffs().iter().map(|a| a.mod_floor(&pb).to_u64().unwrap()).collect();
    let lead = *c.last()?;
    if lead == 0 {
        return None;
    }
    let inv = inv_mod(lead, p);
    Some(c.iter().map(|&a| mulm(a, inv, p)).collect())
}

/// Ben-Or irreducibility test for a monic polynomial over `GF(p)`.
pub fn irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=n / 2 {
        xp = powmod(&xp, p, f, p);
        let mut h = xp.clone();
        // h = t^{p^i} - t
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        let h = trim(h);
        let g = gcd(f.to_vec(), h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime: a^{p-2}
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mulpoly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + mulm(x, y, p)) % p;
        }
    }
    trim(c)
}

fn rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    a = trim(a);
    let dm = m.len() - 1;
    let inv = inv_mod(m[dm], p);
    while a.len() > dm {
        let k = a.len() - 1 - dm;
        let c = mulm(*a.last().unwrap(), inv, p);
        for (j, &y) in m.iter().enumerate() {
            a[k + j] = (a[k + j] + p - mulm(c, y, p)) % p;
        }
        a = trim(a);
    }
    a
}

fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = rem(base.to_vec(), m, p);
    while e > 0 {
        if e & 1 == 1 {
            r = rem(mulpoly(&r, &b, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            b = rem(mulpoly(&b, &b, p), m, p);
        }
    }
    r
}

fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let f = IntPoly::from_i64(&[1, 0, -5, 1]);
        assert!(matches!(certify_mod_p(&f, 100), Irreducibility::Certificate { .. }));
        // t^2 - 1 factors everywhere
        assert_eq!(certify_mod_p(&IntPoly::from_i64(&[-1, 0, 1]), 100), Irreducibility::Unknown);
        // t^4 + 1 is irreducible but splits modulo every prime
        assert_eq!(certify_mod_p(&IntPoly::from_i64(&[1, 0, 0, 0, 1]), 100), Irreducibility::Unknown);
        assert!(matches!(certify_mod_p(&IntPoly::from_i64(&[-2, 0, 0, 1]), 100), Irreducibility::Certificate { .. }));
    }

    #[test]
    fn gf2_irreducibles_of_degree_four() {
        // exactly three irreducible quartics over GF(2)
        let mut count = 0;
        for m in 0..16u64 {
            let mut c: Vec<u64> = (0..4).map(|i| (m >> i) & 1).collect();
            c.push(1);
            if irreducible_mod_p(&c, 2) {
                count += 1;
            }
        }
        assert_eq!(count, 3);
    }
}
