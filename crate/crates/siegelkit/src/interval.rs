//! Rational-endpoint intervals with outward rounding.
//!
//! An [`RInterval`] holds exact rational endpoints. After every operation
//! the endpoints are rounded outward: an endpoint whose numerator and
//! denominator both fit in `bits` bits is kept as is, anything larger is
//! replaced by a dyadic number with `bits` significant bits. Keeping a
//! relative (mantissa) budget rather than an absolute one lets the same type
//! carry numbers like `2^-600000` without losing all information.
//!
//! Transcendental functions are evaluated with fixed-point integer series
//! whose truncation errors are bounded explicitly, so each result encloses
//! the true value.

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, qi};

/// Precision escalation policy: start at `start_bits`, double up to
/// `cap_bits`, then give up with [`Error::UndecidableAtPrecision`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Policy {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for Policy {
    fn default() -> Self {
        Policy { start_bits: 128, cap_bits: 1 << 16 }
    }
}

impl Policy {
    pub fn new(start_bits: u32, cap_bits: u32) -> Self {
        Policy { start_bits: start_bits.max(16), cap_bits: cap_bits.max(start_bits.max(16)) }
    }

    /// Runs `f` at increasing precision until it returns `Some`.
    pub fn run<T>(&self, what: &str, mut f: impl FnMut(u32) -> Result<Option<T>>) -> Result<T> {
        let mut bits = self.start_bits;
        loop {
            if let Some(v) = f(bits)? {
                return Ok(v);
            }
            if bits >= self.cap_bits {
                return Err(Error::UndecidableAtPrecision { what: String::from(what), bits });
            }
            bits = (bits.saturating_mul(2)).min(self.cap_bits);
        }
    }
}

/// A closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RInterval {
    lo: BigRational,
    hi: BigRational,
    bits: u32,
}

// ---------------------------------------------------------------------------
// dyadic helpers

/// If `d` is a power of two, its exponent.
fn pow2_exponent(d: &BigInt) -> Option<u64> {
    let tz = d.trailing_zeros()?;
    if d.bits() == tz + 1 {
        Some(tz)
    } else {
        None
    }
}

/// `x = m * 2^e` when the denominator of `x` is a power of two.
fn dyadic_parts(x: &BigRational) -> Option<(BigInt, i64)> {
    let k = pow2_exponent(x.denom())?;
    if k == 0 {
        // integers: pull out the power of two so that huge dyadic values
        // multiply through their short mantissas
        let tz = x.numer().trailing_zeros().unwrap_or(0);
        return Some((x.numer() >> (tz as usize), tz as i64));
    }
    Some((x.numer().clone(), -(k as i64)))
}

/// Normalized rational `m * 2^e`.
pub(crate) fn from_dyadic(mut m: BigInt, mut e: i64) -> BigRational {
    if m.is_zero() {
        return BigRational::zero();
    }
    let tz = m.trailing_zeros().unwrap_or(0) as i64;
    if e < 0 {
        let s = tz.min(-e);
        m >>= s as usize;
        e += s;
    }
    if e >= 0 {
        BigRational::from_integer(m << (e as usize))
    } else {
        BigRational::new_raw(m, BigInt::one() << ((-e) as usize))
    }
}

fn qmul(a: &BigRational, b: &BigRational) -> BigRational {
    match (dyadic_parts(a), dyadic_parts(b)) {
        (Some((m1, e1)), Some((m2, e2))) => from_dyadic(m1 * m2, e1 + e2),
        _ => a * b,
    }
}

fn qadd(a: &BigRational, b: &BigRational) -> BigRational {
    match (dyadic_parts(a), dyadic_parts(b)) {
        (Some((m1, e1)), Some((m2, e2))) => {
            let e = e1.min(e2);
            let m = (m1 << ((e1 - e) as usize)) + (m2 << ((e2 - e) as usize));
            from_dyadic(m, e)
        }
        _ => a + b,
    }
}

fn shl_signed(n: &BigInt, s: i64) -> (BigInt, BigInt) {
    // returns (numerator, denominator) of n * 2^s
    if s >= 0 {
        (n << (s as usize), BigInt::one())
    } else {
        (n.clone(), BigInt::one() << ((-s) as usize))
    }
}

/// `floor(x * 2^p)` (or ceil when `up`).
pub(crate) fn fixed(x: &BigRational, p: i64, up: bool) -> BigInt {
    if let Some(k) = pow2_exponent(x.denom()) {
        let s = p - k as i64;
        return if s >= 0 {
            x.numer() << (s as usize)
        } else if up {
            -((-x.numer()) >> ((-s) as usize))
        } else {
            x.numer() >> ((-s) as usize)
        };
    }
    let (n, d) = shl_signed(x.numer(), p);
    let d = d * x.denom();
    if up {
        -(-n).div_floor(&d)
    } else {
        n.div_floor(&d)
    }
}

/// Rounds `x` to `bits` significant bits in the given direction, keeping
/// small rationals exact.
pub fn round_rational(x: &BigRational, bits: u32, up: bool) -> BigRational {
    let nb = x.numer().bits();
    let db = x.denom().bits();
    if nb <= bits as u64 && db <= bits as u64 {
        return x.clone();
    }
    if x.is_zero() {
        return BigRational::zero();
    }
    let e = nb as i64 - db as i64;
    let s = bits as i64 - e;
    let m = fixed(x, s, up);
    from_dyadic(m, -s)
}

fn qmin(a: BigRational, b: BigRational) -> BigRational {
    if a <= b {
        a
    } else {
        b
    }
}

fn qmax(a: BigRational, b: BigRational) -> BigRational {
    if a >= b {
        a
    } else {
        b
    }
}

// ---------------------------------------------------------------------------
// fixed-point constants and series

fn div_floor_i(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil_i(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

/// Bounds `(lo, hi)` on `ln 2 * 2^p` from `ln 2 = 2 atanh(1/3)`.
fn ln2_fixed(p: u64) -> (BigInt, BigInt) {
    let g = p + 16;
    let nine = BigInt::from(9u32);
    let mut pw = (BigInt::one() << ((g + 1) as usize)) / BigInt::from(3u32);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !pw.is_zero() {
        sum += &pw / BigInt::from(2 * k + 1);
        pw = &pw / &nine;
        k += 1;
    }
    let lo = sum.clone();
    let hi = sum + BigInt::from(2 * k + 4);
    let sh = BigInt::one() << 16usize;
    (div_floor_i(&lo, &sh), div_ceil_i(&hi, &sh))
}

/// Bounds on `atan(1/x) * 2^g` by the alternating series.
fn atan_inv_fixed(x: u32, g: u64) -> (BigInt, BigInt) {
    let xb = BigInt::from(x);
    let x2 = &xb * &xb;
    let mut pw = (BigInt::one() << (g as usize)) / &xb;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !pw.is_zero() {
        let t = &pw / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        pw = &pw / &x2;
        k += 1;
    }
    let slack = BigInt::from(2 * k + 4);
    (&sum - &slack, sum + slack)
}

/// Bounds on `pi * 2^p` (Machin's formula).
fn pi_fixed(p: u64) -> (BigInt, BigInt) {
    let g = p + 16;
    let (a_lo, a_hi) = atan_inv_fixed(5, g);
    let (b_lo, b_hi) = atan_inv_fixed(239, g);
    let lo = BigInt::from(16) * a_lo - BigInt::from(4) * b_hi;
    let hi = BigInt::from(16) * a_hi - BigInt::from(4) * b_lo;
    let sh = BigInt::one() << 16usize;
    (div_floor_i(&lo, &sh), div_ceil_i(&hi, &sh))
}

/// Bound on `atanh(z/2^g) * 2^g` for `0 <= z/2^g <= 1/3`, rounded in the
/// requested direction.
fn atanh_fixed_nonneg(z: &BigInt, g: u64, up: bool) -> BigInt {
    let scale2 = BigInt::one() << ((2 * g) as usize);
    let z2 = z * z;
    let mut pw = z.clone();
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    loop {
        let den = BigInt::from(2 * j + 1);
        if up {
            sum += div_ceil_i(&pw, &den);
            if pw <= BigInt::one() {
                // remaining tail is at most pw * 9/8 + rounding
                sum += BigInt::from(3u32);
                break;
            }
            pw = div_ceil_i(&(&pw * &z2), &scale2);
        } else {
            sum += div_floor_i(&pw, &den);
            if pw.is_zero() {
                break;
            }
            pw = div_floor_i(&(&pw * &z2), &scale2);
        }
        j += 1;
    }
    sum
}

fn atanh_fixed(z: &BigInt, g: u64, up: bool) -> BigInt {
    if z.is_negative() {
        -atanh_fixed_nonneg(&(-z), g, !up)
    } else {
        atanh_fixed_nonneg(z, g, up)
    }
}

/// Bound on `ln(x) * 2^p` for rational `x > 0`.
fn ln_fixed(x: &BigRational, p: u64, up: bool) -> BigInt {
    let k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let kb = 65 - u64::from(k.unsigned_abs().max(1).leading_zeros());
    let g = p + 16 + kb;
    let m = x * rat::pow2(-k);
    let one = BigInt::one() << (g as usize);
    let mf = fixed(&m, g as i64, up);
    // z = (m - 1)/(m + 1), increasing in m
    let zr = BigRational::new(&mf - &one, &mf + &one);
    let zf = fixed(&zr, g as i64, up);
    let at = atanh_fixed(&zf, g, up);
    let (l2lo, l2hi) = ln2_fixed(g);
    let l2 = match (k >= 0, up) {
        (true, false) | (false, true) => l2lo,
        _ => l2hi,
    };
    let total = BigInt::from(k) * l2 + at * BigInt::from(2u32);
    let sh = BigInt::one() << ((g - p) as usize);
    if up {
        div_ceil_i(&total, &sh)
    } else {
        div_floor_i(&total, &sh)
    }
}

/// Bound on `exp(r) * 2^g` for rational `0 <= r <= 1`.
fn exp_fixed_small(r: &BigRational, g: u64, up: bool) -> BigInt {
    let rf = fixed(r, g as i64, up);
    let scale = BigInt::one() << (g as usize);
    let mut term = scale.clone();
    let mut sum = BigInt::zero();
    let mut i: u64 = 1;
    loop {
        sum += &term;
        let den = &scale * BigInt::from(i);
        if up {
            if term <= BigInt::one() {
                sum += BigInt::from(4u32);
                break;
            }
            term = div_ceil_i(&(&term * &rf), &den);
        } else {
            if term.is_zero() {
                break;
            }
            term = div_floor_i(&(&term * &rf), &den);
        }
        i += 1;
    }
    sum
}

/// Directed bound on `exp(x)` as a rational with about `bits` bits.
fn exp_dir(x: &BigRational, bits: u32, up: bool) -> BigRational {
    if x.is_zero() {
        return BigRational::one();
    }
    // choose k with r = x - k ln 2 small
    let xb = x.numer().bits().max(x.denom().bits()) as u64;
    let ap = 64 + xb.min(4096);
    let (a_lo, _) = ln2_fixed(ap);
    let ln2_approx = BigRational::new(a_lo, BigInt::one() << (ap as usize));
    let k = rat::floor(&(x / &ln2_approx));
    let kb = k.bits() as u64;
    let g = bits as u64 + 24 + kb + (xb.min(64));
    let (l_lo, l_hi) = ln2_fixed(g + kb + 8);
    let sc = BigInt::one() << ((g + kb + 8) as usize);
    let ln2_lo = BigRational::new(l_lo, sc.clone());
    let ln2_hi = BigRational::new(l_hi, sc);
    let kq = qi(&k);
    // exp increasing: lower bound uses smallest r
    let r = if (k >= BigInt::zero()) ^ up { x - &kq * &ln2_hi } else { x - &kq * &ln2_lo };
    let scale = BigInt::one() << (g as usize);
    let e_fixed = if r.is_negative() {
        let nr = -r;
        let inv = exp_fixed_small(&nr, g, !up);
        let s2 = &scale * &scale;
        if up {
            div_ceil_i(&s2, &inv)
        } else {
            div_floor_i(&s2, &inv)
        }
    } else {
        exp_fixed_small(&r, g, up)
    };
    let ki = k.to_i64().expect("exponent fits i64");
    let v = from_dyadic(e_fixed, ki - g as i64);
    round_rational(&v, bits, up)
}

// ---------------------------------------------------------------------------

impl RInterval {
    /// Builds `[lo, hi]`; panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational, bits: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RInterval {
            lo: round_rational(&lo, bits, false),
            hi: round_rational(&hi, bits, true),
            bits,
        }
    }

    /// Interval from endpoints that are already rounded (no copy of the
    /// rounding logic needed).
    fn raw(lo: BigRational, hi: BigRational, bits: u32) -> Self {
        debug_assert!(lo <= hi);
        RInterval { lo: round_rational(&lo, bits, false), hi: round_rational(&hi, bits, true), bits }
    }

    /// The degenerate interval `[x, x]` (rounded outward if `x` is large).
    pub fn point(x: BigRational, bits: u32) -> Self {
        RInterval::raw(x.clone(), x, bits)
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        RInterval::point(BigRational::from_integer(BigInt::from(n)), bits)
    }

    pub fn from_bigint(n: &BigInt, bits: u32) -> Self {
        RInterval::point(qi(n), bits)
    }

    pub fn zero(bits: u32) -> Self {
        RInterval::from_int(0, bits)
    }

    pub fn one(bits: u32) -> Self {
        RInterval::from_int(1, bits)
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Same endpoints, different working precision for later operations.
    pub fn with_bits(&self, bits: u32) -> Self {
        RInterval::raw(self.lo.clone(), self.hi.clone(), bits)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, o: &RInterval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn overlaps(&self, o: &RInterval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Certified sign: `Some(-1|0|1)` when decided, `None` when the interval
    /// straddles zero.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Certified comparison: `Some(Less)` if every point is below every
    /// point of `o`, and so on; `None` if undecided.
    pub fn cmp_certain(&self, o: &RInterval) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if self.lo > o.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && o.lo == o.hi && self.lo == o.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `self < o` certainly.
    pub fn lt(&self, o: &RInterval) -> bool {
        self.hi < o.lo
    }

    /// `self <= o` certainly.
    pub fn le(&self, o: &RInterval) -> bool {
        self.hi <= o.lo
    }

    pub fn lt_q(&self, x: &BigRational) -> bool {
        &self.hi < x
    }

    pub fn le_q(&self, x: &BigRational) -> bool {
        &self.hi <= x
    }

    pub fn gt_q(&self, x: &BigRational) -> bool {
        &self.lo > x
    }

    pub fn ge_q(&self, x: &BigRational) -> bool {
        &self.lo >= x
    }

    fn b(&self, o: &RInterval) -> u32 {
        self.bits.max(o.bits)
    }

    pub fn add(&self, o: &RInterval) -> RInterval {
        RInterval::raw(qadd(&self.lo, &o.lo), qadd(&self.hi, &o.hi), self.b(o))
    }

    pub fn sub(&self, o: &RInterval) -> RInterval {
        RInterval::raw(qadd(&self.lo, &(-&o.hi)), qadd(&self.hi, &(-&o.lo)), self.b(o))
    }

    pub fn neg(&self) -> RInterval {
        RInterval { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    pub fn mul(&self, o: &RInterval) -> RInterval {
        let bits = self.b(o);
        if !self.lo.is_negative() && !o.lo.is_negative() {
            return RInterval::raw(qmul(&self.lo, &o.lo), qmul(&self.hi, &o.hi), bits);
        }
        let c = [qmul(&self.lo, &o.lo), qmul(&self.lo, &o.hi), qmul(&self.hi, &o.lo), qmul(&self.hi, &o.hi)];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if v < &lo {
                lo = v.clone();
            }
            if v > &hi {
                hi = v.clone();
            }
        }
        RInterval::raw(lo, hi, bits)
    }

    pub fn add_q(&self, x: &BigRational) -> RInterval {
        RInterval::raw(qadd(&self.lo, x), qadd(&self.hi, x), self.bits)
    }

    pub fn mul_q(&self, x: &BigRational) -> RInterval {
        let a = qmul(&self.lo, x);
        let b = qmul(&self.hi, x);
        if x.is_negative() {
            RInterval::raw(b, a, self.bits)
        } else {
            RInterval::raw(a, b, self.bits)
        }
    }

    pub fn mul_int(&self, n: i64) -> RInterval {
        self.mul_q(&BigRational::from_integer(BigInt::from(n)))
    }

    /// `1/self`; fails if the interval contains zero.
    pub fn recip(&self) -> Result<RInterval> {
        if self.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let lo = self.hi.recip();
        let hi = self.lo.recip();
        Ok(RInterval::raw(lo, hi, self.bits))
    }

    pub fn div(&self, o: &RInterval) -> Result<RInterval> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn abs(&self) -> RInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let m = qmax(-&self.lo, self.hi.clone());
            RInterval { lo: BigRational::zero(), hi: m, bits: self.bits }
        }
    }

    pub fn sqr(&self) -> RInterval {
        let a = self.abs();
        RInterval::raw(qmul(&a.lo, &a.lo), qmul(&a.hi, &a.hi), self.bits)
    }

    /// `self^n` for a nonnegative integer exponent.
    pub fn pow_u(&self, n: u64) -> RInterval {
        if n == 0 {
            return RInterval::one(self.bits);
        }
        if n % 2 == 0 {
            return self.sqr().pow_u(n / 2);
        }
        let mut base = self.clone();
        let mut acc: Option<RInterval> = None;
        let mut e = n;
        // odd power preserves monotonicity, so square-and-multiply on the
        // interval is safe once the base is split by sign
        if !self.lo.is_negative() || !self.hi.is_positive() {
            while e > 0 {
                if e & 1 == 1 {
                    acc = Some(match acc {
                        None => base.clone(),
                        Some(a) => a.mul(&base),
                    });
                }
                e >>= 1;
                if e > 0 {
                    base = base.mul(&base);
                }
            }
            let r = acc.unwrap();
            // intermediate products of a same-sign base are monotone
            return r;
        }
        let lo = RInterval::point(self.lo.clone(), self.bits).pow_u(n);
        let hi = RInterval::point(self.hi.clone(), self.bits).pow_u(n);
        RInterval::raw(lo.lo, hi.hi, self.bits)
    }

    /// `self^n` for any integer exponent.
    pub fn pow_i(&self, n: i64) -> Result<RInterval> {
        if n >= 0 {
            Ok(self.pow_u(n as u64))
        } else {
            self.pow_u(n.unsigned_abs()).recip()
        }
    }

    pub fn hull(&self, o: &RInterval) -> RInterval {
        RInterval {
            lo: qmin(self.lo.clone(), o.lo.clone()),
            hi: qmax(self.hi.clone(), o.hi.clone()),
            bits: self.b(o),
        }
    }

    pub fn intersect(&self, o: &RInterval) -> Option<RInterval> {
        let lo = qmax(self.lo.clone(), o.lo.clone());
        let hi = qmin(self.hi.clone(), o.hi.clone());
        if lo <= hi {
            Some(RInterval { lo, hi, bits: self.b(o) })
        } else {
            None
        }
    }

    pub fn max(&self, o: &RInterval) -> RInterval {
        RInterval {
            lo: qmax(self.lo.clone(), o.lo.clone()),
            hi: qmax(self.hi.clone(), o.hi.clone()),
            bits: self.b(o),
        }
    }

    pub fn min(&self, o: &RInterval) -> RInterval {
        RInterval {
            lo: qmin(self.lo.clone(), o.lo.clone()),
            hi: qmin(self.hi.clone(), o.hi.clone()),
            bits: self.b(o),
        }
    }

    // -- transcendental ---------------------------------------------------

    /// Enclosure of `sqrt(2)`.
    pub fn sqrt2(bits: u32) -> RInterval {
        RInterval::point(rat::q(2, 1), bits).sqrt().expect("2 >= 0")
    }

    /// Enclosure of `pi`.
    pub fn pi(bits: u32) -> RInterval {
        let p = bits as u64 + 8;
        let (lo, hi) = pi_fixed(p);
        let sc = BigInt::one() << (p as usize);
        RInterval::raw(BigRational::new(lo, sc.clone()), BigRational::new(hi, sc), bits)
    }

    /// Enclosure of `ln 2`.
    pub fn ln2(bits: u32) -> RInterval {
        let p = bits as u64 + 8;
        let (lo, hi) = ln2_fixed(p);
        let sc = BigInt::one() << (p as usize);
        RInterval::raw(BigRational::new(lo, sc.clone()), BigRational::new(hi, sc), bits)
    }

    /// Enclosure of `e = exp(1)`.
    pub fn e(bits: u32) -> RInterval {
        RInterval::one(bits).exp()
    }

    /// Square root; fails on intervals with negative points.
    pub fn sqrt(&self) -> Result<RInterval> {
        if self.lo.is_negative() {
            return Err(Error::ParameterViolation(String::from("sqrt of a negative interval")));
        }
        let lo = sqrt_dir(&self.lo, self.bits, false);
        let hi = sqrt_dir(&self.hi, self.bits, true);
        Ok(RInterval::raw(lo, hi, self.bits))
    }

    /// Natural logarithm; fails unless the interval is positive.
    pub fn ln(&self) -> Result<RInterval> {
        if !self.lo.is_positive() {
            return Err(Error::ParameterViolation(String::from("log of a non-positive interval")));
        }
        let p_lo = self.log_prec(&self.lo);
        let p_hi = self.log_prec(&self.hi);
        let lo = BigRational::new(ln_fixed(&self.lo, p_lo, false), BigInt::one() << (p_lo as usize));
        let hi = BigRational::new(ln_fixed(&self.hi, p_hi, true), BigInt::one() << (p_hi as usize));
        Ok(RInterval::raw(lo, hi, self.bits))
    }

    fn log_prec(&self, _x: &BigRational) -> u64 {
        self.bits as u64 + 8
    }

    /// Base-2 logarithm.
    pub fn log2(&self) -> Result<RInterval> {
        let b = self.bits + 8;
        let l = self.with_bits(b).ln()?;
        Ok(l.div(&RInterval::ln2(b))?.with_bits(self.bits))
    }

    /// Exponential function.
    pub fn exp(&self) -> RInterval {
        let lo = exp_dir(&self.lo, self.bits, false);
        let hi = exp_dir(&self.hi, self.bits, true);
        RInterval::raw(lo, hi, self.bits)
    }

    /// `2^self`.
    pub fn exp2(&self) -> RInterval {
        let b = self.bits + 8;
        self.with_bits(b).mul(&RInterval::ln2(b)).exp().with_bits(self.bits)
    }

    /// `self^t = exp(t ln self)` for positive `self`.
    pub fn powr(&self, t: &RInterval) -> Result<RInterval> {
        let b = self.bits.max(t.bits) + 16;
        let l = self.with_bits(b).ln()?;
        Ok(l.mul(&t.with_bits(b)).exp().with_bits(self.bits.max(t.bits)))
    }

    /// Real `n`-th root of a positive interval.
    pub fn nth_root(&self, n: u64) -> Result<RInterval> {
        let t = RInterval::point(rat::q(1, n as i64), self.bits);
        self.powr(&t)
    }

    // -- rendering --------------------------------------------------------

    pub fn lo_string(&self) -> String {
        rat::rat_to_string(&self.lo)
    }

    pub fn hi_string(&self) -> String {
        rat::rat_to_string(&self.hi)
    }

    /// Human-readable `[lo, hi]` with the given number of decimals.
    pub fn to_decimal(&self, digits: usize) -> String {
        format!("[{}, {}]", rat::to_decimal(&self.lo, digits), decimal_up(&self.hi, digits))
    }
}

/// Decimal string rounded up (for upper endpoints).
fn decimal_up(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let v = rat::ceil(&(x * qi(&scale)));
    rat::to_decimal(&BigRational::new(v, scale), digits)
}

/// Directed square root of a nonnegative rational to about `bits` bits.
fn sqrt_dir(x: &BigRational, bits: u32, up: bool) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let p = bits as i64 + 4 - e.div_euclid(2);
    // value * 4^p
    let v = fixed(x, 2 * p, up);
    let r = v.sqrt();
    let r = if up {
        if &r * &r == v {
            r
        } else {
            r + 1
        }
    } else {
        r
    };
    let out = from_dyadic(r, -p);
    round_rational(&out, bits, up)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn iv(a: i64, b: i64) -> RInterval {
        RInterval::new(q(a, 1), q(b, 1), 128)
    }

    #[test]
    fn constants_bracket_known_digits() {
        let pi = RInterval::pi(128);
        assert!(pi.gt_q(&q(3141592653589793, 1000000000000000)));
        assert!(pi.lt_q(&q(3141592653589794, 1000000000000000)));
        let l2 = RInterval::ln2(128);
        assert!(l2.gt_q(&q(6931471805599453, 10000000000000000)));
        assert!(l2.lt_q(&q(6931471805599454, 10000000000000000)));
        let s2 = RInterval::sqrt2(200);
        assert!(s2.gt_q(&q(14142135623730950, 10000000000000000)));
        assert!(s2.lt_q(&q(14142135623730951, 10000000000000000)));
        assert!(s2.width() < rat::pow2(-190));
    }

    #[test]
    fn exp_and_log_are_inverse_within_width() {
        for (a, b) in [(3, 7), (1, 1000), (12345, 7), (1, 3)] {
            let x = RInterval::point(q(a, b), 160);
            let back = x.ln().unwrap().exp();
            assert!(back.contains(&q(a, b)));
            assert!(back.width() < rat::pow2(-100) * q(a, b).max(q(1, 1)));
        }
        let e = RInterval::e(128);
        assert!(e.gt_q(&q(2718281828459045, 1000000000000000)));
        assert!(e.lt_q(&q(2718281828459046, 1000000000000000)));
        let m = RInterval::point(q(-5, 2), 128).exp();
        assert!(m.gt_q(&q(82084998623898, 1000000000000000)));
        assert!(m.lt_q(&q(82084998623899, 1000000000000000)));
    }

    #[test]
    fn huge_and_tiny_magnitudes_keep_relative_precision() {
        let big = RInterval::point(rat::pow2(600_000) + q(1, 1), 128);
        let l = big.log2().unwrap();
        assert!(l.contains(&q(600_000, 1)) || l.gt_q(&q(600_000, 1)));
        assert!(l.width() < q(1, 1 << 40));
        let tiny = RInterval::point(rat::pow2(-600_000), 128);
        let lt = tiny.log2().unwrap();
        assert!(lt.contains(&q(-600_000, 1)));
        let p = RInterval::point(q(-3000, 1), 128).exp2();
        assert!(p.contains(&rat::pow2(-3000)));
    }

    #[test]
    fn powr_matches_integer_powers() {
        let x = RInterval::point(q(7, 3), 128);
        let t = RInterval::from_int(5, 128);
        let p = x.powr(&t).unwrap();
        assert!(p.contains(&rat::pow_i(&q(7, 3), 5)));
        let r = RInterval::point(q(8, 1), 128).nth_root(3).unwrap();
        assert!(r.contains(&q(2, 1)));
    }

    #[test]
    fn basic_ops_enclose() {
        let a = iv(-2, 3);
        let b = iv(4, 5);
        let p = a.mul(&b);
        assert_eq!(p.lo(), &q(-10, 1));
        assert_eq!(p.hi(), &q(15, 1));
        assert_eq!(a.sqr().lo(), &q(0, 1));
        assert_eq!(a.sqr().hi(), &q(9, 1));
        assert_eq!(a.pow_u(3).lo(), &q(-8, 1));
        assert_eq!(a.pow_u(3).hi(), &q(27, 1));
        assert!(a.recip().is_err());
        let r = b.recip().unwrap();
        assert_eq!(r.lo(), &q(1, 5));
    }

    #[test]
    fn escalation_stops_at_cap() {
        let pol = Policy::new(64, 256);
        let mut seen = alloc::vec::Vec::new();
        let r: Result<()> = pol.run("never", |b| {
            seen.push(b);
            Ok(None)
        });
        assert!(matches!(r, Err(Error::UndecidableAtPrecision { bits: 256, .. })));
        assert_eq!(seen, [64, 128, 256]);
    }

    #[test]
    fn rounding_is_outward_and_keeps_small_rationals() {
        let x = q(1, 3);
        assert_eq!(round_rational(&x, 64, false), x);
        let y = BigRational::new(BigInt::one(), BigInt::from(3) << 300usize);
        let lo = round_rational(&y, 64, false);
        let hi = round_rational(&y, 64, true);
        assert!(lo <= y && y <= hi && lo < hi);
        assert!(&hi - &lo < &y * rat::pow2(-60));
    }
}
