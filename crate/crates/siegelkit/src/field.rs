//! Exact arithmetic in `Q(θ) = Q[t]/(f)` on the power basis.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::rat::qi;

/// The field `Q(θ)` with θ a root of a primitive irreducible polynomial.
///
/// Irreducibility is the caller's responsibility (see
/// [`crate::irreducible`]); inversion reports [`Error::DivisionByZero`] if
/// it meets a zero divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    min_poly: IntPoly,
    /// `t^d` expressed on the basis `1, t, ..., t^{d-1}`.
    top: Vec<BigRational>,
}

/// An element of `Q(θ)` as power-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub coords: Vec<BigRational>,
}

impl NumberField {
    pub fn new(min_poly: &IntPoly) -> Result<Self> {
        let d = min_poly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::ParameterViolation("minimal polynomial must have degree at least 1".into()))?;
        let f = min_poly.primitive_part();
        let lead = qi(&f.lead());
        let top = (0..d).map(|i| -qi(&f.coeff(i)) / &lead).collect();
        Ok(NumberField { min_poly: f, top })
    }

    pub fn degree(&self) -> usize {
        self.top.len()
    }

    pub fn min_poly(&self) -> &IntPoly {
        &self.min_poly
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coords: vec![BigRational::zero(); self.degree()] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rat(BigRational::one())
    }

    pub fn from_rat(&self, x: BigRational) -> FieldElement {
        let mut e = self.zero();
        e.coords[0] = x;
        e
    }

    pub fn from_int(&self, n: &BigInt) -> FieldElement {
        self.from_rat(qi(n))
    }

    /// θ itself.
    pub fn theta(&self) -> FieldElement {
        self.theta_pow(1)
    }

    /// θ^n, reduced.
    pub fn theta_pow(&self, n: usize) -> FieldElement {
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::one();
        self.reduce(c)
    }

    /// Reduces a coefficient vector of any length modulo the minimal
    /// polynomial.
    pub fn reduce(&self, mut c: Vec<BigRational>) -> FieldElement {
        let d = self.degree();
        while c.len() > d {
            let hi = c.pop().unwrap();
            if hi.is_zero() {
                continue;
            }
            let base = c.len() - d;
            for (i, t) in self.top.iter().enumerate() {
                c[base + i] += &hi * t;
            }
        }
        c.resize(d, BigRational::zero());
        FieldElement { coords: c }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement { coords: a.coords.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, a: &FieldElement, k: &BigRational) -> FieldElement {
        FieldElement { coords: a.coords.iter().map(|x| x * k).collect() }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.degree();
        let mut c = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        self.reduce(c)
    }

    pub fn pow(&self, a: &FieldElement, mut n: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm in `Q[t]`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f: Vec<BigRational> = self.min_poly.coeffs().iter().map(qi).collect();
        let (g, s) = ext_gcd(trim(a.coords.clone()), trim(f));
        if g.len() != 1 {
            return Err(Error::DivisionByZero);
        }
        let k = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|x| x * &k).collect();
        Ok(self.reduce(s))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `p(θ)` for an integer polynomial `p`.
    pub fn eval_poly(&self, p: &IntPoly) -> FieldElement {
        self.reduce(p.coeffs().iter().map(qi).collect())
    }
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(if q.is_empty() || b.is_empty() { 0 } else { q.len() + b.len() - 1 });
    let mut r: Vec<BigRational> = (0..n).map(|i| a.get(i).cloned().unwrap_or_else(BigRational::zero)).collect();
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= x * y;
        }
    }
    trim(r)
}

fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / lb;
        for (j, y) in b.iter().enumerate() {
            r[k + j] -= &c * y;
        }
        q[k] = c;
        r = trim(r);
    }
    (trim(q), r)
}

/// Returns `(g, s)` with `s a ≡ g (mod b)` and `g = gcd(a, b)`.
fn ext_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![BigRational::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let s = poly_sub_mul(&s0, &q, &s1);
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn cube_root_of_two() {
        let k = NumberField::new(&IntPoly::from_i64(&[-2, 0, 0, 1])).unwrap();
        let t = k.theta();
        let t2 = k.mul(&t, &t);
        assert_eq!(k.mul(&t, &t2), k.from_int(&BigInt::from(2)));
        let ti = k.inv(&t).unwrap();
        assert_eq!(k.mul(&t, &ti), k.one());
        assert_eq!(ti.coords, vec![q(0, 1), q(0, 1), q(1, 2)]);
    }

    #[test]
    fn non_monic_reduction() {
        // 2t^2 - 3 : θ^2 = 3/2
        let k = NumberField::new(&IntPoly::from_i64(&[-3, 0, 2])).unwrap();
        assert_eq!(k.theta_pow(2), k.from_rat(q(3, 2)));
        assert_eq!(k.theta_pow(3).coords, vec![q(0, 1), q(3, 2)]);
        assert!(k.inv(&k.zero()).is_err());
    }

    #[test]
    fn zero_divisor_is_reported() {
        // t^2 - 1 is reducible; t - 1 has no inverse
        let k = NumberField::new(&IntPoly::from_i64(&[-1, 0, 1])).unwrap();
        let a = k.sub(&k.theta(), &k.one());
        assert!(matches!(k.inv(&a), Err(Error::DivisionByZero)));
    }
}
