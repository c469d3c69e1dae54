//! Numbers of the shape `2^c |a|^y` kept as exponents, for bounds far too
//! large to materialize.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::RInterval;
use crate::rat;

/// `2^c · |a|^y` for a symbolic integer `a`. The power of two is an
/// enclosure so that factors like `1/9` can enter as `2^{-log2 9}`; the
/// exponent of `|a|` is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpForm {
    pub c: RInterval,
    pub y: BigRational,
}

impl ExpForm {
    pub fn new(c: BigRational, y: BigRational, bits: u32) -> ExpForm {
        ExpForm { c: RInterval::point(c, bits), y }
    }

    /// `2^c`.
    pub fn pow2(c: BigRational, bits: u32) -> ExpForm {
        ExpForm::new(c, BigRational::zero(), bits)
    }

    /// `|a|^y`.
    pub fn a_pow(y: BigRational, bits: u32) -> ExpForm {
        ExpForm::new(BigRational::zero(), y, bits)
    }

    /// A positive rational constant.
    pub fn constant(x: &BigRational, bits: u32) -> Result<ExpForm> {
        if !x.is_positive() {
            return Err(Error::ParameterViolation("exponent forms are positive".into()));
        }
        Ok(ExpForm { c: RInterval::point(x.clone(), bits).log2()?, y: BigRational::zero() })
    }

    pub fn mul(&self, o: &ExpForm) -> ExpForm {
        ExpForm { c: self.c.add(&o.c), y: &self.y + &o.y }
    }

    pub fn div(&self, o: &ExpForm) -> ExpForm {
        ExpForm { c: self.c.sub(&o.c), y: &self.y - &o.y }
    }

    pub fn pow(&self, t: &BigRational) -> ExpForm {
        ExpForm { c: self.c.mul_q(t), y: &self.y * t }
    }

    /// `log2` of the value for a concrete `log2 |a|`.
    pub fn log2_at(&self, log2_a: &RInterval) -> RInterval {
        self.c.add(&log2_a.mul_q(&self.y))
    }

    /// Certifies `self <= other` for every `a` with `log2 |a| >= l0`.
    ///
    /// The difference of logarithms is `(c₁ - c₂) + (y₁ - y₂) log2 |a|`, which
    /// is nonincreasing in `|a|` when `y₁ <= y₂`, so checking `l0` suffices.
    pub fn le_given_a_at_least(&self, other: &ExpForm, l0: &BigRational) -> bool {
        if self.y > other.y {
            return false;
        }
        let diff = self.c.sub(&other.c).add_q(&((&self.y - &other.y) * l0));
        !diff.hi().is_positive()
    }

    /// Strict version of [`ExpForm::le_given_a_at_least`].
    pub fn lt_given_a_at_least(&self, other: &ExpForm, l0: &BigRational) -> bool {
        if self.y > other.y {
            return false;
        }
        let diff = self.c.sub(&other.c).add_q(&((&self.y - &other.y) * l0));
        diff.hi().is_negative()
    }

    /// The value rounded up to a power of two for a concrete `a`, or `None`
    /// if it would need more than `cap_bits` bits.
    pub fn materialize_upper(&self, a: &BigInt, cap_bits: u64) -> Option<BigInt> {
        if a.is_zero() {
            return None;
        }
        let l = self.log2_at(&crate::measure::log2_int(a, self.c.bits()).ok()?);
        let e = rat::ceil(l.hi()).max(BigInt::zero()).to_u64().filter(|&e| e < cap_bits)?;
        Some(BigInt::from(1u32) << e as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn arithmetic_is_on_exponents() {
        let x = ExpForm::new(q(3, 1), q(2, 1), 64);
        let y = ExpForm::new(q(1, 1), q(1, 2), 64);
        let p = x.mul(&y).pow(&q(2, 1));
        assert_eq!(p, ExpForm::new(q(8, 1), q(5, 1), 64));
        assert_eq!(p.div(&p), ExpForm::new(q(0, 1), q(0, 1), 64));
    }

    #[test]
    fn comparison_with_a_threshold() {
        // 2^10 |a| <= |a|^2 iff |a| >= 2^10
        let l = ExpForm::new(q(10, 1), q(1, 1), 64);
        let r = ExpForm::a_pow(q(2, 1), 64);
        assert!(l.le_given_a_at_least(&r, &q(10, 1)));
        assert!(!l.le_given_a_at_least(&r, &q(9, 1)));
        assert!(!l.lt_given_a_at_least(&r, &q(10, 1)));
        assert!(!r.le_given_a_at_least(&l, &q(100, 1)));
    }

    #[test]
    fn ninth_is_below_a_sixteenth_power() {
        let ninth = ExpForm::constant(&q(1, 9), 64).unwrap();
        assert!(ExpForm::pow2(q(-4, 1), 64).le_given_a_at_least(&ninth, &q(0, 1)));
        assert!(!ExpForm::pow2(q(-3, 1), 64).le_given_a_at_least(&ninth, &q(0, 1)));
    }

    #[test]
    fn materialization_respects_the_cap() {
        let f = ExpForm::new(q(1, 1), q(3, 1), 64);
        assert_eq!(f.materialize_upper(&BigInt::from(4), 100), Some(BigInt::from(128)));
        assert_eq!(f.materialize_upper(&BigInt::from(4), 5), None);
    }
}
