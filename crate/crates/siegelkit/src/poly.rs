//! Univariate and bivariate polynomials with integer coefficients.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{Policy, RInterval};
use crate::linalg;
use crate::rat::{self, qi};

/// Dense univariate polynomial; `c[i]` is the coefficient of `t^i`.
/// Trailing zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(a: BigInt) -> Self {
        IntPoly::new(vec![a])
    }

    /// `t`.
    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    /// `t - a`.
    pub fn linear_root(a: &BigInt) -> Self {
        IntPoly::new(vec![-a.clone(), BigInt::one()])
    }

    pub fn monomial(coef: BigInt, deg: usize) -> Self {
        let mut c = vec![BigInt::zero(); deg + 1];
        c[deg] = coef;
        IntPoly::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0 (only for loop bounds).
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    /// Largest absolute coefficient.
    pub fn size(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Sum of absolute coefficients.
    pub fn length(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).sum()
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }

    pub fn pow(&self, n: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.c.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect())
    }

    /// `p(t + s)`.
    pub fn shift(&self, s: &BigInt) -> IntPoly {
        let mut acc = IntPoly::zero();
        let lin = IntPoly::new(vec![s.clone(), BigInt::one()]);
        for a in self.c.iter().rev() {
            acc = acc.mul(&lin).add(&IntPoly::constant(a.clone()));
        }
        acc
    }

    /// `t^deg p(1/t)`.
    pub fn reverse(&self) -> IntPoly {
        IntPoly::new(self.c.iter().rev().cloned().collect())
    }

    /// `p(-t)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(self.c.iter().enumerate().map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() }).collect())
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        IntPoly { c: self.c.iter().map(|x| x / &g).collect() }
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        self.c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        // homogeneous evaluation keeps everything in integers
        let (p, q) = (x.numer(), x.denom());
        let n = self.deg0();
        let mut num = BigInt::zero();
        let mut pw = BigInt::one();
        let mut qpows = vec![BigInt::one(); n + 1];
        for i in 1..=n {
            qpows[i] = &qpows[i - 1] * q;
        }
        for (i, a) in self.c.iter().enumerate() {
            num += a * &pw * &qpows[n - i];
            pw *= p;
        }
        BigRational::new(num, qpows[n].clone())
    }

    /// Sign of `p(x)` at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        // homogeneous Horner on the numerator; the denominator is positive
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qp = BigInt::one();
        for a in self.c.iter().rev() {
            acc = acc * p + a * &qp;
            qp *= q;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Horner evaluation over an interval.
    pub fn eval_interval(&self, x: &RInterval) -> RInterval {
        let bits = x.bits();
        let mut acc = RInterval::zero(bits);
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(&RInterval::from_bigint(a, bits));
        }
        acc
    }

    /// Division with remainder over the rationals, returning
    /// `(q, r, m)` with `m * self = q * d + r` and `m` a power of `lead(d)`.
    pub fn pseudo_divmod(&self, d: &IntPoly) -> (IntPoly, IntPoly, BigInt) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg0();
        let ld = d.lead();
        let mut r = self.clone();
        let mut q = IntPoly::zero();
        let mut m = BigInt::one();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.lead();
            let t = IntPoly::monomial(lr, rd - dd);
            q = q.scale(&ld).add(&t);
            r = r.scale(&ld).sub(&t.mul(d));
            m *= &ld;
        }
        (q, r, m)
    }

    /// Exact division; `None` if `d` does not divide `self` in `Z[t]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        let dd = d.deg0();
        let ld = d.lead();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.c.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                return None;
            }
            let (qt, rem) = r.lead().div_rem(&ld);
            if !rem.is_zero() {
                return None;
            }
            q[rd - dd] = qt.clone();
            r = r.sub(&IntPoly::monomial(qt, rd - dd).mul(d));
        }
        Some(IntPoly::new(q))
    }

    /// Primitive greatest common divisor (positive leading coefficient).
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = o.primitive_part();
        if a.deg0() < b.deg0() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r, _) = a.pseudo_divmod(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Squarefree decomposition (Yun): pairs `(g_i, i)` with
    /// `primitive_part(self) = ± prod g_i^i`.
    pub fn squarefree(&self) -> Vec<(IntPoly, usize)> {
        let f = self.primitive_part();
        if f.deg0() == 0 {
            return Vec::new();
        }
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.div_exact_q(&a);
        let mut c = fp.div_exact_q(&a);
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while b.deg0() > 0 && i <= f.deg0() {
            a = b.gcd(&d);
            b = b.div_exact_q(&a);
            c = d.div_exact_q(&a);
            d = c.sub(&b.derivative());
            if a.deg0() > 0 {
                out.push((a.primitive_part(), i));
            }
            i += 1;
        }
        out
    }

    /// Exact quotient of polynomials known to divide (Gauss's lemma makes
    /// the quotient integral whenever `d` is primitive).
    fn div_exact_q(&self, d: &IntPoly) -> IntPoly {
        self.div_exact(d).expect("exact division in squarefree decomposition")
    }

    /// Resultant via the Sylvester determinant.
    pub fn resultant(&self, o: &IntPoly) -> BigInt {
        let (Some(m), Some(n)) = (self.degree(), o.degree()) else {
            return BigInt::zero();
        };
        if m + n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut s = vec![vec![BigInt::zero(); size]; size];
        for r in 0..n {
            for (i, a) in self.c.iter().rev().enumerate() {
                s[r][r + i] = a.clone();
            }
        }
        for r in 0..m {
            for (i, b) in o.c.iter().rev().enumerate() {
                s[n + r][r + i] = b.clone();
            }
        }
        linalg::det(&s)
    }

    /// Cauchy bound `1 + max |a_i / a_n|` on root moduli (a rational).
    pub fn cauchy_bound(&self) -> BigRational {
        let l = qi(&self.lead().abs());
        let m = self.c[..self.c.len().saturating_sub(1)].iter().map(|x| x.abs()).max().unwrap_or_default();
        BigRational::one() + qi(&m) / l
    }

    /// Parses `"t^3 - 5*t^2 + 1"` (any single-letter variable), or a list of
    /// coefficients `"[1, 0, -5, 1]"` with the constant first.
    pub fn parse(s: &str) -> Result<IntPoly> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            let mut c = Vec::new();
            for part in inner.split(',') {
                let part = part.trim().trim_matches('"');
                if part.is_empty() {
                    continue;
                }
                c.push(rat::parse_bigint(part)?);
            }
            return Ok(IntPoly::new(c));
        }
        let mut c: Vec<BigInt> = Vec::new();
        for (sign, term) in split_terms(s)? {
            let (coef, deg) = parse_monomial(&term, s)?;
            if c.len() <= deg {
                c.resize(deg + 1, BigInt::zero());
            }
            c[deg] += if sign { -coef } else { coef };
        }
        Ok(IntPoly::new(c))
    }
}

/// Splits an expression into signed terms.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse(String::from("empty polynomial")));
    }
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !matches!(prev, None | Some('^') | Some('*')) {
            out.push((neg, core::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && prev.is_none() {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    out.push((neg, cur));
    Ok(out)
}

fn parse_monomial(term: &str, whole: &str) -> Result<(BigInt, usize)> {
    let err = || Error::Parse(format!("cannot parse term {term:?} in {whole:?}"));
    if term.is_empty() {
        return Err(err());
    }
    let var_pos = term.find(|c: char| c.is_ascii_alphabetic());
    let Some(vp) = var_pos else {
        return Ok((rat::parse_bigint(term)?, 0));
    };
    let coef_str = term[..vp].trim_end_matches('*');
    let coef = if coef_str.is_empty() { BigInt::one() } else { coef_str.parse().map_err(|_| err())? };
    let rest = &term[vp + 1..];
    let deg = if rest.is_empty() {
        1
    } else if let Some(e) = rest.strip_prefix('^') {
        e.parse().map_err(|_| err())?
    } else {
        return Err(err());
    };
    Ok((coef, deg))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let m = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{m}")?,
                _ => {
                    if !m.is_one() {
                        write!(f, "{m}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Checks `|P1| |P2| <= 2^n |P1 P2|` with `n = deg P1 + deg P2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GelfondReport {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

pub fn check_gelfond(p1: &IntPoly, p2: &IntPoly) -> GelfondReport {
    let n = p1.deg0() + p2.deg0();
    let lhs = p1.size() * p2.size();
    let rhs = (BigInt::one() << n) * p1.mul(p2).size();
    let holds = lhs <= rhs;
    GelfondReport { lhs, rhs, holds }
}

/// Checks `C(n, l) <= sqrt(2/pi) 2^N / sqrt(N)` for every `0 <= l <= n <= N`.
///
/// Squaring both sides gives `pi N C(n,l)^2 <= 2 4^N`, which only needs an
/// enclosure of `pi`.
pub fn check_binom_bound(n_max: u64, policy: &Policy) -> Result<bool> {
    if n_max == 0 {
        return Err(Error::ParameterViolation(String::from("N must be positive")));
    }
    let rhs = BigInt::from(2) << (2 * n_max as usize);
    let mut worst = BigInt::zero();
    for n in 0..=n_max {
        for l in 0..=n {
            let b = rat::binom(n, l);
            if b > worst {
                worst = b;
            }
        }
    }
    let lhs_int = &worst * &worst * BigInt::from(n_max);
    policy.run("binomial bound", |bits| {
        let pi = RInterval::pi(bits);
        let lhs = pi.mul_q(&qi(&lhs_int));
        let r = qi(&rhs);
        if lhs.le_q(&r) {
            Ok(Some(true))
        } else if lhs.gt_q(&r) {
            Ok(Some(false))
        } else {
            Ok(None)
        }
    })
}

/// Sparse bivariate polynomial `sum p_ij x^i y^j` with optional degree caps.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
    /// Declared cap on the x-degree (the `D` of the construction).
    pub x_cap: Option<u32>,
    /// Declared cap on the y-degree.
    pub y_cap: Option<u32>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl BiPoly {
    pub fn new() -> Self {
        BiPoly::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigInt)>>(it: I) -> Self {
        let mut p = BiPoly::new();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn with_caps(mut self, x_cap: u32, y_cap: u32) -> Self {
        self.x_cap = Some(x_cap);
        self.y_cap = Some(y_cap);
        self
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn size(&self) -> BigInt {
        self.terms.values().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn length(&self) -> BigInt {
        self.terms.values().map(|x| x.abs()).sum()
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        for (&(i, j), c) in &o.terms {
            r.add_term(i, j, c.clone());
        }
        r
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut r = BiPoly::new();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                r.add_term(i + k, j + l, a * b);
            }
        }
        r
    }

    /// `(1/l!) d^l/dx^l`, which keeps integer coefficients.
    pub fn partial(&self, l: u32) -> BiPoly {
        let mut r = BiPoly { terms: BTreeMap::new(), x_cap: self.x_cap, y_cap: self.y_cap };
        for (&(i, j), c) in &self.terms {
            if i >= l {
                r.add_term(i - l, j, c * rat::binom(i as u64, l as u64));
            }
        }
        r
    }

    /// One ordinary x-derivative.
    pub fn dx(&self) -> BiPoly {
        let mut r = BiPoly { terms: BTreeMap::new(), x_cap: self.x_cap, y_cap: self.y_cap };
        for (&(i, j), c) in &self.terms {
            if i >= 1 {
                r.add_term(i - 1, j, c * BigInt::from(i));
            }
        }
        r
    }

    pub fn eval_rat(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut s = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            s += qi(c) * rat::pow_i(x, i as i64) * rat::pow_i(y, j as i64);
        }
        s
    }

    pub fn eval_interval(&self, x: &RInterval, y: &RInterval) -> RInterval {
        let bits = x.bits().max(y.bits());
        let mut s = RInterval::zero(bits);
        for (&(i, j), c) in &self.terms {
            let t = x.pow_u(i as u64).mul(&y.pow_u(j as u64)).mul_q(&qi(c));
            s = s.add(&t);
        }
        s
    }

    /// The coefficient polynomials `Q_i(y)` of `x^i`, for `i = 0..=x_degree`.
    pub fn y_columns(&self) -> Vec<IntPoly> {
        let dx = self.x_degree().map_or(0, |d| d as usize + 1);
        let mut cols: Vec<Vec<BigInt>> = vec![Vec::new(); dx];
        for (&(i, j), c) in &self.terms {
            let col = &mut cols[i as usize];
            if col.len() <= j as usize {
                col.resize(j as usize + 1, BigInt::zero());
            }
            col[j as usize] = c.clone();
        }
        cols.into_iter().map(IntPoly::new).collect()
    }

    /// Builds `sum_i x^i Q_i(y)`.
    pub fn from_y_columns(cols: &[IntPoly]) -> BiPoly {
        let mut r = BiPoly::new();
        for (i, q) in cols.iter().enumerate() {
            for (j, c) in q.coeffs().iter().enumerate() {
                r.add_term(i as u32, j as u32, c.clone());
            }
        }
        r
    }

    /// Sparse `{"i,j": "coeff"}` map.
    pub fn to_sparse_map(&self) -> BTreeMap<String, String> {
        self.terms.iter().map(|(&(i, j), c)| (format!("{i},{j}"), format!("{c}"))).collect()
    }

    pub fn from_sparse_map<'a, I: IntoIterator<Item = (&'a str, &'a str)>>(it: I) -> Result<BiPoly> {
        let mut p = BiPoly::new();
        for (k, v) in it {
            let (i, j) = k.split_once(',').ok_or_else(|| Error::Parse(format!("bad key {k:?}")))?;
            let i: u32 = i.trim().parse().map_err(|_| Error::Parse(format!("bad key {k:?}")))?;
            let j: u32 = j.trim().parse().map_err(|_| Error::Parse(format!("bad key {k:?}")))?;
            p.add_term(i, j, rat::parse_bigint(v)?);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn parse_and_print_round_trip() {
        let f = IntPoly::parse("t^3 - 5*t^2 + 1").unwrap();
        assert_eq!(f, p(&[1, 0, -5, 1]));
        assert_eq!(f.to_string(), "t^3 - 5*t^2 + 1");
        assert_eq!(IntPoly::parse(&f.to_string()).unwrap(), f);
        assert_eq!(IntPoly::parse("-x + 2").unwrap(), p(&[2, -1]));
        assert_eq!(IntPoly::parse("[1, 0, -5, 1]").unwrap(), f);
        assert_eq!(IntPoly::parse("2*t^2 - t - 2^3").unwrap(), p(&[-8, -1, 2]));
        assert!(IntPoly::parse("t^").is_err());
    }

    #[test]
    fn size_and_length_examples() {
        let f = p(&[1, -5, 3]);
        assert_eq!(f.size(), BigInt::from(5));
        assert_eq!(f.length(), BigInt::from(9));
        assert_eq!(IntPoly::zero().size(), BigInt::zero());
        assert_eq!(IntPoly::zero().length(), BigInt::zero());
    }

    #[test]
    fn gcd_squarefree_resultant() {
        let a = p(&[-1, 1]).mul(&p(&[1, 1])); // t^2 - 1
        let b = p(&[-1, 1]).mul(&p(&[2, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let f = p(&[-1, 1]).pow(2).mul(&p(&[3, 0, 1]));
        let sf = f.squarefree();
        assert_eq!(sf, vec![(p(&[3, 0, 1]), 1), (p(&[-1, 1]), 2)]);
        // Res(t^2 - 2, t - 1) = 1 - 2 = -1
        assert_eq!(p(&[-2, 0, 1]).resultant(&p(&[-1, 1])), BigInt::from(-1));
        assert!(a.resultant(&b).is_zero());
        assert_eq!(f.div_exact(&p(&[-1, 1])).unwrap().mul(&p(&[-1, 1])), f);
        assert!(p(&[1, 0, 1]).div_exact(&p(&[-1, 1])).is_none());
    }

    #[test]
    fn gelfond_examples() {
        let r = check_gelfond(&p(&[1, 1]), &p(&[-1, 1]));
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.holds), (BigInt::from(1), BigInt::from(4), true));
        let r = check_gelfond(&p(&[1, 1]), &p(&[1, 1]));
        assert_eq!((r.lhs, r.rhs, r.holds), (BigInt::from(1), BigInt::from(8), true));
    }

    #[test]
    fn binomial_bound_small_cases() {
        let pol = Policy::default();
        assert!(check_binom_bound(1, &pol).unwrap());
        assert!(check_binom_bound(4, &pol).unwrap());
        assert!(check_binom_bound(0, &pol).is_err());
    }

    #[test]
    fn partial_derivative_examples() {
        let x2 = BiPoly::from_terms([((2, 0), BigInt::from(1))]);
        assert_eq!(x2.partial(1), BiPoly::from_terms([((1, 0), BigInt::from(2))]));
        let x3 = BiPoly::from_terms([((3, 0), BigInt::from(1))]);
        assert_eq!(x3.partial(2), BiPoly::from_terms([((1, 0), BigInt::from(3))]));
        assert!(x3.partial(4).is_zero());
    }

    #[test]
    fn interval_eval_examples() {
        let sq = p(&[0, 0, 1]);
        let v = sq.eval_interval(&RInterval::new(rat::q(1, 1), rat::q(2, 1), 64));
        assert!(v.le_q(&rat::q(4, 1)) || v.contains(&rat::q(4, 1)));
        assert!(v.contains(&rat::q(1, 1)) && v.contains(&rat::q(4, 1)));
        let xy = BiPoly::from_terms([((1, 0), BigInt::from(1)), ((0, 1), BigInt::from(-1))]);
        let three = RInterval::from_int(3, 64);
        let z = xy.eval_interval(&three, &three);
        assert!(z.contains(&rat::q(0, 1)) && z.width().is_zero());
    }

    #[test]
    fn sparse_map_round_trip() {
        let b = BiPoly::from_terms([((2, 1), BigInt::from(-7)), ((0, 0), BigInt::from(3))]);
        let m = b.to_sparse_map();
        let back = BiPoly::from_sparse_map(m.iter().map(|(k, v)| (k.as_str(), v.as_str()))).unwrap();
        assert_eq!(back, b);
    }
}
