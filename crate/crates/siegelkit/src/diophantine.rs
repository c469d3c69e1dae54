//! Thue equations attached to the two one-parameter families: solution
//! bounds, exhaustive searches and the counting argument for the circular
//! form.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::expform::ExpForm;
use crate::interval::RInterval;
use crate::measure::{self, log2_int, Variant};
use crate::poly::IntPoly;
use crate::rat::q;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// `x^d - a x^{d-1} y + y^d = m`.
    Bombieri,
    /// `(x - a y)(x^2 + y^2)^{(d-1)/2} - y^d = x + y`; `m` is unused.
    Circular,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThueInstance {
    pub form: Form,
    pub d: u64,
    pub a: BigInt,
    pub m: BigInt,
}

pub type Solution = (BigInt, BigInt);

impl ThueInstance {
    pub fn bombieri(d: u64, a: BigInt, m: BigInt) -> ThueInstance {
        ThueInstance { form: Form::Bombieri, d, a, m }
    }

    pub fn circular(d: u64, a: BigInt) -> Result<ThueInstance> {
        if d < 3 || d % 2 == 0 {
            return Err(Error::ParameterViolation("the circular form needs odd d >= 3".into()));
        }
        Ok(ThueInstance { form: Form::Circular, d, a, m: BigInt::zero() })
    }

    /// Left side minus right side as a polynomial in `y` for fixed `x`.
    pub fn poly_in_y(&self, x: &BigInt) -> IntPoly {
        let d = self.d as usize;
        match self.form {
            Form::Bombieri => {
                let mut c = vec![BigInt::zero(); d + 1];
                c[0] = x.pow(self.d as u32) - &self.m;
                c[1] = -&self.a * x.pow(self.d as u32 - 1);
                c[d] += 1;
                IntPoly::new(c)
            }
            Form::Circular => {
                let sq = IntPoly::new(vec![x * x, BigInt::zero(), BigInt::one()]).pow((self.d as u32 - 1) / 2);
                let lin = IntPoly::new(vec![x.clone(), -&self.a]);
                lin.mul(&sq)
                    .sub(&IntPoly::monomial(BigInt::one(), d))
                    .sub(&IntPoly::new(vec![x.clone(), BigInt::one()]))
            }
        }
    }

    /// Left side minus right side as a polynomial in `x` for fixed `y`.
    pub fn poly_in_x(&self, y: &BigInt) -> IntPoly {
        let d = self.d as usize;
        match self.form {
            Form::Bombieri => {
                let mut c = vec![BigInt::zero(); d + 1];
                c[0] = y.pow(self.d as u32) - &self.m;
                c[d - 1] = -&self.a * y;
                c[d] += 1;
                IntPoly::new(c)
            }
            Form::Circular => {
                let sq = IntPoly::new(vec![y * y, BigInt::zero(), BigInt::one()]).pow((self.d as u32 - 1) / 2);
                let lin = IntPoly::new(vec![-&self.a * y, BigInt::one()]);
                lin.mul(&sq).sub(&IntPoly::new(vec![y.pow(self.d as u32) + y, BigInt::one()]))
            }
        }
    }

    pub fn is_solution(&self, x: &BigInt, y: &BigInt) -> bool {
        self.poly_in_y(x).eval_bigint(y).is_zero()
    }
}

// ---------------------------------------------------------------------------
// Bounds.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `|a| >= 2^{1196 d}`: the bound from the effective measure.
    LargeA,
    /// `|a| < 2^{1196 d}`: the bound from linear forms in logarithms.
    SmallA,
}

/// A bound on `max(|x|, |y|)`. A bound of 0 (for `m = 0`) has no
/// logarithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionBound {
    pub branch: Branch,
    pub is_zero: bool,
    /// `log2` of the bound when it is small enough to hold as a number.
    pub log2_bound: Option<RInterval>,
    /// `log2 log2` of the bound; present unless the bound is at most 1.
    pub log2_log2_bound: Option<RInterval>,
    /// The closed form is implied by the estimate it is derived from.
    pub derivation_certified: bool,
}

/// `22.99`.
fn kappa_cap() -> BigRational {
    q(2299, 100)
}

/// Bound for `x^d - a x^{d-1} y + y^d = m` with odd `d >= 23` and `a <= -4`.
pub fn thue_bound(inst: &ThueInstance, bits: u32) -> Result<SolutionBound> {
    if inst.form != Form::Bombieri {
        return Err(Error::ParameterViolation("bounds are available for the first form only".into()));
    }
    let d = inst.d;
    if d < 23 || d % 2 == 0 {
        return Err(Error::ParameterViolation(format!("need odd d >= 23, got {d}")));
    }
    if inst.a > BigInt::from(-4) {
        return Err(Error::ParameterViolation("need a <= -4".into()));
    }
    let abs_a = inst.a.abs();
    let dd = BigRational::from_integer(BigInt::from(d * d));
    let large = abs_a.bits() > 1196 * d;
    if large {
        let den = BigRational::from_integer(BigInt::from(d)) - kappa_cap();
        let ya = q(29, 1) * &dd / &den;
        // 2^{(84d² + 2d)/(d - 22.99)} |a|^{(28d² + d)/(d - 22.99)} <= |a|^{29d²/(d - 22.99)} for log2|a| >= 1196 d
        let dq = BigRational::from_integer(BigInt::from(d));
        let sharp = ExpForm::new((q(84, 1) * &dd + q(2, 1) * &dq) / &den, (q(28, 1) * &dd + &dq) / &den, bits);
        let derivation_certified = sharp.le_given_a_at_least(&ExpForm::a_pow(ya.clone(), bits), &(q(1196, 1) * &dq));
        if inst.m.is_zero() {
            return Ok(SolutionBound { branch: Branch::LargeA, is_zero: true, log2_bound: None, log2_log2_bound: None, derivation_certified });
        }
        let l = log2_int(&abs_a, bits)?.mul_q(&ya).add(&log2_int(&inst.m, bits)?.mul_q(&den.recip()));
        let ll = l.log2()?;
        return Ok(SolutionBound { branch: Branch::LargeA, is_zero: false, log2_bound: Some(l), log2_log2_bound: Some(ll), derivation_certified });
    }
    // d^{40d} (2^{1196d})^{4d} <= 2^{4824 d²} follows from d <= 2^d
    let derivation_certified = BigInt::from(d) <= BigInt::one() << d as usize;
    if inst.m.is_zero() {
        return Ok(SolutionBound { branch: Branch::SmallA, is_zero: true, log2_bound: None, log2_log2_bound: None, derivation_certified });
    }
    // log2 of exp(E)|m|^E is E (log2 e + log2|m|) with E = 2^{4824 d²}
    let inner = RInterval::e(bits).log2()?.add(&log2_int(&inst.m, bits)?);
    let ll = inner.log2()?.add_q(&(q(4824, 1) * &dd));
    Ok(SolutionBound { branch: Branch::SmallA, is_zero: false, log2_bound: None, log2_log2_bound: Some(ll), derivation_certified })
}

/// `d^{40d} ℋ^{4d}`.
pub fn baker_exponent(d: u64, h: &BigInt) -> BigInt {
    BigInt::from(d).pow(40 * d as u32) * h.pow(4 * d as u32)
}

/// `log2` of `exp(E) |m|^E` with `E = d^{40d} ℋ^{4d}`; `None` for `m = 0`,
/// where the bound is 0.
pub fn baker_bound(d: u64, h: &BigInt, m: &BigInt, bits: u32) -> Result<Option<RInterval>> {
    if d < 3 || !h.is_positive() {
        return Err(Error::ParameterViolation("need d >= 3 and ℋ >= 1".into()));
    }
    if m.is_zero() {
        return Ok(None);
    }
    let e = baker_exponent(d, h);
    let inner = RInterval::e(bits).log2()?.add(&log2_int(m, bits)?);
    Ok(Some(inner.mul(&RInterval::from_bigint(&e, bits))))
}

/// Every solution satisfies `max(|x|, |y|) <=` the bound.
pub fn verify_within_bound(solutions: &[Solution], bound: &SolutionBound, bits: u32) -> Result<bool> {
    for (x, y) in solutions {
        let m = x.abs().max(y.abs());
        if bound.is_zero {
            if !m.is_zero() {
                return Ok(false);
            }
            continue;
        }
        // a nonzero bound is at least 1
        if m <= BigInt::one() {
            continue;
        }
        let lm = log2_int(&m, bits)?;
        let ok = match (&bound.log2_bound, &bound.log2_log2_bound) {
            (Some(l), _) => lm.hi() <= l.lo(),
            (None, Some(ll)) => lm.log2()?.hi() <= ll.lo(),
            (None, None) => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Searches.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanOrder {
    /// `x` ascending outside, `y` ascending inside, polynomials in `y`.
    Lex,
    /// `y` descending outside, `x` descending inside, polynomials in `x`.
    AntiLex,
}

/// Solutions with `x` in `[x_lo, x_hi]` and `|y| <= bound`, lexicographic.
pub fn search_shard(inst: &ThueInstance, bound: u64, x_lo: i64, x_hi: i64) -> Vec<Solution> {
    let b = bound as i64;
    let mut out = Vec::new();
    for x in x_lo..=x_hi {
        let xb = BigInt::from(x);
        let g = inst.poly_in_y(&xb);
        for y in -b..=b {
            let yb = BigInt::from(y);
            if g.eval_bigint(&yb).is_zero() {
                out.push((xb.clone(), yb));
            }
        }
    }
    out
}

fn scan_antilex(inst: &ThueInstance, bound: u64) -> Vec<Solution> {
    let b = bound as i64;
    let mut out = Vec::new();
    for y in (-b..=b).rev() {
        let yb = BigInt::from(y);
        let g = inst.poly_in_x(&yb);
        for x in (-b..=b).rev() {
            let xb = BigInt::from(x);
            if g.eval_bigint(&xb).is_zero() {
                out.push((xb, yb.clone()));
            }
        }
    }
    out
}

/// Default cap on the search box.
pub const DEFAULT_BOX_CAP: u64 = 100_000;

/// All solutions with `max(|x|, |y|) <= bound`, returned in lexicographic
/// order whatever the scan order.
pub fn exhaustive_search(inst: &ThueInstance, bound: u64, order: ScanOrder, cap: u64) -> Result<Vec<Solution>> {
    if bound > cap {
        return Err(Error::ParameterViolation(format!("box {bound} exceeds the cap {cap}")));
    }
    let mut s = match order {
        ScanOrder::Lex => search_shard(inst, bound, -(bound as i64), bound as i64),
        ScanOrder::AntiLex => scan_antilex(inst, bound),
    };
    s.sort();
    Ok(s)
}

/// Splits `[-bound, bound]` into `n` contiguous x-ranges.
pub fn shard_ranges(bound: u64, n: usize) -> Vec<(i64, i64)> {
    let b = bound as i64;
    let total = 2 * b + 1;
    let n = (n.max(1) as i64).min(total);
    let mut out = Vec::with_capacity(n as usize);
    let mut lo = -b;
    for i in 0..n {
        let len = total / n + i64::from(i < total % n);
        out.push((lo, lo + len - 1));
        lo += len;
    }
    out
}

/// SHA-256 over the sorted solution list.
pub fn solution_hash(solutions: &[Solution]) -> String {
    let mut h = Sha256::new();
    for (x, y) in solutions {
        h.update(format!("{x},{y};").as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

// ---------------------------------------------------------------------------
// The gap chain and the count.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapChain {
    pub d: u64,
    /// Recursive lower bounds `y_1, y_2, ...` in exponent form.
    pub chain: Vec<ExpForm>,
    /// `4^{(d-4)^{n-1}} (|a|/4)^{(d-2)^{n-1}}` for `n >= 2`.
    pub closed: Vec<ExpForm>,
    /// `log2` of the chain entries at the given `a`.
    pub log2_values: Vec<RInterval>,
    /// Every chain entry from `n = 2` on dominates the closed form for all
    /// `|a| >= 16`.
    pub dominates: bool,
}

/// Lower bounds for an increasing run of large solutions, starting at `y1`.
pub fn gap_chain(d: u64, a: &BigInt, y1: &BigInt, n: usize, bits: u32) -> Result<GapChain> {
    if d < 25 {
        return Err(Error::ParameterViolation("need d >= 25".into()));
    }
    if a.abs() < BigInt::from(16) {
        return Err(Error::ParameterViolation("need |a| >= 16".into()));
    }
    if *y1 < BigInt::from(4) {
        return Err(Error::ParameterViolation("need y1 >= 4".into()));
    }
    if n == 0 {
        return Err(Error::ParameterViolation("n must be positive".into()));
    }
    let dm2 = BigRational::from_integer(BigInt::from(d - 2));
    let dm4 = BigInt::from(d - 4);
    // (1/9)(|a|/4)^{d-2}
    let step = ExpForm::constant(&q(1, 9), bits)?.mul(&ExpForm::new(q(-2, 1), q(1, 1), bits).pow(&dm2));
    let mut chain = vec![ExpForm::constant(&BigRational::from_integer(y1.clone()), bits)?];
    let mut closed = Vec::new();
    for k in 1..n {
        let next = step.mul(&chain[k - 1].pow(&dm2));
        chain.push(next);
        let e4 = BigRational::from_integer(dm4.pow(k as u32));
        let e2 = BigRational::from_integer(BigInt::from(d - 2).pow(k as u32));
        closed.push(ExpForm::pow2(q(2, 1) * e4, bits).mul(&ExpForm::new(q(-2, 1), q(1, 1), bits).pow(&e2)));
    }
    let four = q(4, 1);
    let dominates = closed.iter().zip(&chain[1..]).all(|(c, y)| c.le_given_a_at_least(y, &four));
    let la = log2_int(a, bits)?;
    let log2_values = chain.iter().map(|y| y.log2_at(&la)).collect();
    Ok(GapChain { d, chain, closed, log2_values, dominates })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountLedger {
    pub d: u64,
    /// `d >= 25` odd and `|a| >= 2^{164 d}`.
    pub hypothesis_ok: bool,
    pub entries: Vec<LedgerEntry>,
    /// Pairs `±(x, y)` with `y >= 4` that can exist.
    pub max_large_pairs: u64,
    pub y_zero_solutions: u64,
    /// `2 · max_large_pairs + y_zero_solutions`.
    pub bound: u64,
}

impl CountLedger {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }
}

/// Reproduces the counting argument for the circular form as exponent
/// inequalities valid for every `|a| >= 2^{164 d}`.
pub fn count_bound(d: u64, a: &BigInt, bits: u32) -> CountLedger {
    let hypothesis_ok = d >= 25 && d % 2 == 1 && a.abs().bits() > 164 * d;
    let mut entries = Vec::new();
    let mut push = |name: &'static str, holds: bool| entries.push(LedgerEntry { name, holds });
    let dd = BigRational::from_integer(BigInt::from(d * d));
    let l0 = q(164 * d as i64, 1);
    let sixteen = q(4, 1);

    match measure::corollary_constants(Variant::Circular, d, &q(14, 25), bits) {
        Ok(c) => {
            push("a0_at_most_threshold", c.a0_at_most_pow2(&l0) && c.factor_certified && c.general_a0_within_factor);
            push("kappa_below_23_5", c.kappa_upper < q(47, 2) && c.kappa_hat_below_22_94);
        }
        Err(_) => {
            push("a0_at_most_threshold", false);
            push("kappa_below_23_5", false);
        }
    }
    // y^{1/2} <= y^{d - 24.5}
    push("degree_margin", d >= 25);
    // (9/2 C)^2 <= 2^{189 d²} |a|^{56 d²} with C = 2^{94 d²} |a|^{28 d²}
    let c = ExpForm::new(q(94, 1) * &dd, q(28, 1) * &dd, bits);
    let upper = ExpForm::constant(&q(9, 2), bits).map(|h| h.mul(&c).pow(&q(2, 1)));
    let target_upper = ExpForm::new(q(189, 1) * &dd, q(56, 1) * &dd, bits);
    push("upper_bound_square", upper.map(|u| u.le_given_a_at_least(&target_upper, &q(0, 1))).unwrap_or(false));
    // fifth entry: 4^{(d-4)^4} (|a|/4)^{(d-2)^4} >= 2^{2(d-4)^4} |a|^{(d-2)^4/2} for |a| >= 16
    let e4 = BigRational::from_integer(BigInt::from(d.saturating_sub(4)).pow(4));
    let e2 = BigRational::from_integer(BigInt::from(d.saturating_sub(2)).pow(4));
    let closed5 = ExpForm::pow2(q(2, 1) * &e4, bits).mul(&ExpForm::new(q(-2, 1), q(1, 1), bits).pow(&e2));
    let simple5 = ExpForm::new(q(2, 1) * &e4, &e2 / q(2, 1), bits);
    push("fifth_closed_form", simple5.le_given_a_at_least(&closed5, &sixteen));
    let lower5 = ExpForm::new(q(564, 1) * &dd, q(169, 1) * &dd, bits);
    push("fifth_lower_bound", lower5.lt_given_a_at_least(&simple5, &q(0, 1)));
    push("fifth_contradicts_upper", target_upper.lt_given_a_at_least(&lower5, &q(0, 1)));
    // 0 < |y| <= 3: the shifted polynomial meets the irreducibility hypothesis
    let threshold = BigInt::one() << (164 * d) as usize;
    let small_y = (1..=3u32).all(|y| {
        let yb = BigInt::from(y);
        let lp = BigInt::one() + yb.pow(d as u32) + &yb;
        let rhs = &lp * (&yb + 1u32) + &yb * 2u32 + 2u32;
        rhs <= threshold && rhs <= BigInt::from(4) * BigInt::from(3).pow(d as u32 + 1) + 8u32
    });
    push("small_y_irreducible", small_y);
    // y = 0 leaves x^d = x
    let y0 = ThueInstance { form: Form::Circular, d, a: a.clone(), m: BigInt::zero() };
    let zero_sols = if d % 2 == 1 {
        let g = y0.poly_in_x(&BigInt::zero());
        let expect = IntPoly::monomial(BigInt::one(), d as usize).sub(&IntPoly::x());
        g == expect
    } else {
        false
    };
    push("y_zero_three_solutions", zero_sols);
    CountLedger { d, hypothesis_ok, entries, max_large_pairs: 4, y_zero_solutions: 3, bound: 2 * 4 + 3 }
}

/// The solutions `(0, 0)`, `(±1, 0)`, when `a = -b^{d-1} - 1` also `±(ab, b)`,
/// and for `a = -2` also `(0, ±1)` (with `x = 0` the equation reads
/// `y^{d-1}(-a - 1) = 1`).
pub fn known_circular_solutions(d: u64, a: &BigInt) -> Vec<Solution> {
    let z = BigInt::zero();
    let one = BigInt::one();
    let mut out = vec![(z.clone(), z.clone()), (one.clone(), z.clone()), (-&one, z.clone())];
    // -a - 1 = b^{d-1} with b >= 1
    let t: BigInt = -a - 1;
    if t.is_positive() && d >= 2 {
        let b = t.nth_root(d as u32 - 1);
        if b.pow(d as u32 - 1) == t {
            out.push((a * &b, b.clone()));
            out.push((-(a * &b), -b));
        }
    }
    if *a == BigInt::from(-2) {
        out.push((z.clone(), one.clone()));
        out.push((z, -one));
    }
    out.sort();
    out
}

/// `(a, 1)`, `(1, 0)` and `(0, 1)` solve the first form for `m = 1`.
pub fn known_bombieri_solutions(a: &BigInt) -> Vec<Solution> {
    let mut v = vec![(a.clone(), BigInt::one()), (BigInt::one(), BigInt::zero()), (BigInt::zero(), BigInt::one())];
    v.sort();
    v
}

/// `true` when `d` is odd; used by the pairing `±(x, y)`.
pub fn pairs_are_symmetric(inst: &ThueInstance, solutions: &[Solution]) -> bool {
    inst.d.is_odd() && solutions.iter().all(|(x, y)| solutions.contains(&(-x, -y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn evaluation_paths_agree() {
        let i = ThueInstance::bombieri(5, b(-3), b(7));
        let c = ThueInstance::circular(5, b(-2)).unwrap();
        for x in -4..=4 {
            for y in -4..=4 {
                for inst in [&i, &c] {
                    let v1 = inst.poly_in_y(&b(x)).eval_bigint(&b(y));
                    let v2 = inst.poly_in_x(&b(y)).eval_bigint(&b(x));
                    assert_eq!(v1, v2);
                }
            }
        }
        // direct formula
        assert_eq!(i.poly_in_y(&b(2)).eval_bigint(&b(1)), b(32 + 3 * 16 + 1 - 7));
    }

    #[test]
    fn bombieri_search() {
        let inst = ThueInstance::bombieri(23, b(-4), b(1));
        let s = exhaustive_search(&inst, 100, ScanOrder::Lex, DEFAULT_BOX_CAP).unwrap();
        for k in known_bombieri_solutions(&b(-4)) {
            assert!(s.contains(&k));
        }
        assert_eq!(s, exhaustive_search(&inst, 100, ScanOrder::AntiLex, DEFAULT_BOX_CAP).unwrap());
    }

    #[test]
    fn circular_search() {
        let inst = ThueInstance::circular(25, b(-2)).unwrap();
        let s = exhaustive_search(&inst, 100, ScanOrder::Lex, DEFAULT_BOX_CAP).unwrap();
        let known = known_circular_solutions(25, &b(-2));
        assert_eq!(known.len(), 7);
        assert_eq!(s, known);
        // a = -3 has only the three solutions with y = 0 in the box
        let inst3 = ThueInstance::circular(25, b(-3)).unwrap();
        let s3 = exhaustive_search(&inst3, 30, ScanOrder::Lex, DEFAULT_BOX_CAP).unwrap();
        assert_eq!(s3, known_circular_solutions(25, &b(-3)));
        assert_eq!(s3.len(), 3);
        assert!(pairs_are_symmetric(&inst, &s));
        assert_eq!(s, exhaustive_search(&inst, 100, ScanOrder::AntiLex, DEFAULT_BOX_CAP).unwrap());
    }

    #[test]
    fn empty_search() {
        // x^5 + 3x^4 y + y^5 = 2 has no small solutions
        let inst = ThueInstance::bombieri(5, b(-3), b(2));
        let s = exhaustive_search(&inst, 30, ScanOrder::Lex, DEFAULT_BOX_CAP).unwrap();
        assert!(s.is_empty());
        assert!(exhaustive_search(&inst, 30, ScanOrder::AntiLex, DEFAULT_BOX_CAP).unwrap().is_empty());
        assert!(exhaustive_search(&inst, 30, ScanOrder::Lex, 10).is_err());
    }

    #[test]
    fn shards_cover_the_range() {
        let r = shard_ranges(10, 4);
        assert_eq!(r.first().unwrap().0, -10);
        assert_eq!(r.last().unwrap().1, 10);
        assert!(r.windows(2).all(|w| w[0].1 + 1 == w[1].0));
        let inst = ThueInstance::circular(5, b(-2)).unwrap();
        let mut merged: Vec<Solution> = r.iter().flat_map(|&(lo, hi)| search_shard(&inst, 10, lo, hi)).collect();
        merged.sort();
        let whole = exhaustive_search(&inst, 10, ScanOrder::Lex, 100).unwrap();
        assert_eq!(solution_hash(&merged), solution_hash(&whole));
    }

    #[test]
    fn bound_branches() {
        let big: BigInt = -(BigInt::one() << (1196usize * 23));
        let bd = thue_bound(&ThueInstance::bombieri(23, big, b(1)), 128).unwrap();
        assert_eq!(bd.branch, Branch::LargeA);
        assert!(bd.derivation_certified);
        // (29 · 529 / 0.01) · 1196 · 23
        let expect = q(29 * 529 * 100, 1) * q(1196 * 23, 1);
        assert!(bd.log2_bound.as_ref().unwrap().contains(&expect));
        let small = thue_bound(&ThueInstance::bombieri(23, b(-4), b(1)), 128).unwrap();
        assert_eq!(small.branch, Branch::SmallA);
        let ll = small.log2_log2_bound.as_ref().unwrap();
        // 4824 · 529 + log2 log2 e, with log2 log2 e ≈ 0.5288
        assert!(ll.gt_q(&q(4824 * 529, 1)) && ll.lt_q(&(q(4824 * 529, 1) + q(53, 100))));
        assert!(thue_bound(&ThueInstance::bombieri(24, b(-4), b(1)), 128).is_err());
        assert!(thue_bound(&ThueInstance::bombieri(23, b(4), b(1)), 128).is_err());
        let just_below: BigInt = -((BigInt::one() << (1196usize * 23)) - 1u32);
        assert_eq!(thue_bound(&ThueInstance::bombieri(23, just_below, b(1)), 128).unwrap().branch, Branch::SmallA);
    }

    #[test]
    fn baker_values() {
        let l = baker_bound(3, &b(1), &b(1), 128).unwrap().unwrap();
        let e3 = RInterval::from_bigint(&b(3).pow(120u32), 128);
        assert!(l.overlaps(&e3.mul(&RInterval::e(128).log2().unwrap())));
        assert_eq!(baker_bound(3, &b(1), &b(0), 128).unwrap(), None);
        assert_eq!(baker_exponent(3, &b(2)), baker_exponent(3, &b(1)) << 12usize);
    }

    #[test]
    fn verification_against_bounds() {
        let inst = ThueInstance::bombieri(23, b(-4), b(1));
        let sols = exhaustive_search(&inst, 20, ScanOrder::Lex, 100).unwrap();
        let bd = thue_bound(&inst, 128).unwrap();
        assert!(verify_within_bound(&sols, &bd, 128).unwrap());
        assert!(verify_within_bound(&[], &bd, 128).unwrap());
        // m = 0 forces the bound 0
        let zero = thue_bound(&ThueInstance::bombieri(23, b(-4), b(0)), 128).unwrap();
        assert!(zero.is_zero);
        assert!(verify_within_bound(&[(b(0), b(0))], &zero, 128).unwrap());
        assert!(!verify_within_bound(&[(b(1), b(1))], &zero, 128).unwrap());
        let tight = SolutionBound { log2_bound: Some(RInterval::from_int(10, 128)), ..bd };
        assert!(verify_within_bound(&[(b(1024), b(3))], &tight, 128).unwrap());
        assert!(!verify_within_bound(&[(b(1025), b(3))], &tight, 128).unwrap());
    }

    #[test]
    fn chain_dominates_closed_form() {
        let a = BigInt::one() << (164usize * 25);
        let g = gap_chain(25, &a, &b(4), 3, 128).unwrap();
        assert!(g.dominates && g.chain.len() == 3 && g.closed.len() == 2);
        assert!(g.log2_values.windows(2).all(|w| w[0].lt(&w[1])));
        assert_eq!(gap_chain(25, &a, &b(4), 1, 128).unwrap().chain.len(), 1);
        assert!(gap_chain(25, &a, &b(3), 2, 128).is_err());
        assert!(gap_chain(23, &a, &b(4), 2, 128).is_err());
    }

    #[test]
    fn count_ledger() {
        let a = BigInt::one() << (164usize * 25);
        let l = count_bound(25, &a, 128);
        assert!(l.hypothesis_ok && l.all_hold(), "{:?}", l.entries);
        assert_eq!(l.bound, 11);
        assert!(!count_bound(23, &a, 128).hypothesis_ok);
        assert!(!count_bound(25, &(a - 1), 128).hypothesis_ok);
    }
}
