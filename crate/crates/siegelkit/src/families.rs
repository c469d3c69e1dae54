//! The families `A(t) = (t - a) Q(t) + P(t)` with `Q` monic and
//! `deg Q > deg P`: hypotheses, certified root portraits, irreducibility and
//! bounds on `|ξ - a|`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{Policy, RInterval};
use crate::irreducible::{self, Irreducibility};
use crate::poly::IntPoly;
use crate::rat::{self, q, qi};
use crate::roots::{self, Cluster, RootSolver};
use crate::target::{self, ApproxTarget};

/// A member of the family with its certified data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub p: IntPoly,
    pub q: IntPoly,
    pub a: BigInt,
    /// Largest root modulus of `Q`.
    pub r: RInterval,
    /// Length of `P`.
    pub lp: BigInt,
    pub d: usize,
    pub d0: usize,
    /// Leading coefficient of `P`.
    pub b: BigInt,
    /// Largest root modulus of `P` (0 when `P` is constant).
    pub r_prime: RInterval,
}

/// Largest modulus over the roots of `f` (0 for constants).
pub fn max_root_modulus(f: &IntPoly, policy: &Policy) -> Result<RInterval> {
    let bits = policy.start_bits;
    if f.deg0() == 0 {
        return Ok(RInterval::zero(bits));
    }
    let sf = f.squarefree().into_iter().fold(IntPoly::one(), |acc, (g, _)| acc.mul(&g));
    let boxes = roots::isolate_roots(&sf, policy)?;
    let mut r = RInterval::zero(bits);
    for b in boxes {
        let m = b.re.sqr().add(&b.im.sqr()).sqrt()?;
        r = r.max(&m);
    }
    Ok(r)
}

impl FamilySpec {
    pub fn new(p: IntPoly, q: IntPoly, a: BigInt, policy: &Policy) -> Result<FamilySpec> {
        let r = max_root_modulus(&q, policy)?;
        FamilySpec::with_r(p, q, a, r, policy)
    }

    /// As [`FamilySpec::new`] with a precomputed enclosure of `R`.
    pub fn with_r(p: IntPoly, q: IntPoly, a: BigInt, r: RInterval, policy: &Policy) -> Result<FamilySpec> {
        if p.is_zero() {
            return Err(Error::ParameterViolation("P must be nonzero".into()));
        }
        if !q.is_monic() || q.deg0() == 0 {
            return Err(Error::ParameterViolation("Q must be monic of positive degree".into()));
        }
        let d = q.deg0() + 1;
        let d0 = p.deg0();
        if d - 1 <= d0 {
            return Err(Error::ParameterViolation(format!("need deg Q = {} > deg P = {d0}", d - 1)));
        }
        if p.resultant(&q).is_zero() {
            return Err(Error::ParameterViolation("P and Q have a common factor".into()));
        }
        let r_prime = max_root_modulus(&p, policy)?;
        let lp = p.length();
        Ok(FamilySpec { b: p.lead(), p, q, a, r, lp, d, d0, r_prime })
    }

    /// `t^d - a t^{d-1} + sign`.
    pub fn bombieri(d: usize, a: BigInt, sign: i64, policy: &Policy) -> Result<FamilySpec> {
        if d < 2 {
            return Err(Error::ParameterViolation("degree must be at least 2".into()));
        }
        let q = IntPoly::monomial(BigInt::one(), d - 1);
        let bits = policy.start_bits;
        FamilySpec::with_r(IntPoly::constant(BigInt::from(sign.signum())), q, a, RInterval::zero(bits), policy)
    }

    /// `(t - a)(t^2 + 1)^{(d-1)/2} + sign` for odd `d`.
    pub fn circular(d: usize, a: BigInt, sign: i64, policy: &Policy) -> Result<FamilySpec> {
        if d < 3 || d % 2 == 0 {
            return Err(Error::ParameterViolation("degree must be odd and at least 3".into()));
        }
        let q = IntPoly::from_i64(&[1, 0, 1]).pow(((d - 1) / 2) as u32);
        let bits = policy.start_bits;
        FamilySpec::with_r(IntPoly::constant(BigInt::from(sign.signum())), q, a, RInterval::one(bits), policy)
    }

    /// `A = (t - a) Q + P`.
    pub fn poly(&self) -> IntPoly {
        IntPoly::linear_root(&self.a).mul(&self.q).add(&self.p)
    }

    fn bits(&self) -> u32 {
        self.r.bits()
    }

    /// Right side of the root-localization hypothesis:
    /// `max{1, L(P)} max{2^{d0/(d-d0-1)}, (R+1)^{d0}} + 2R + 2`.
    pub fn localization_rhs(&self) -> Result<RInterval> {
        let bits = self.bits();
        let l = RInterval::from_bigint(&self.lp.clone().max(BigInt::one()), bits);
        let e = q(self.d0 as i64, (self.d - self.d0 - 1) as i64);
        let two_pow = RInterval::from_int(2, bits).powr(&RInterval::point(e, bits))?;
        let rp = self.r.add_q(&q(1, 1)).pow_u(self.d0 as u64);
        Ok(l.mul(&two_pow.max(&rp)).add(&self.r.mul_int(2)).add_q(&q(2, 1)))
    }

    /// Right side of the stricter hypothesis used for the measure:
    /// `L(P) max{2, (R+1)^{d0}} + 2R + 2`.
    pub fn measure_rhs(&self) -> RInterval {
        let bits = self.bits();
        let l = RInterval::from_bigint(&self.lp, bits);
        let rp = self.r.add_q(&q(1, 1)).pow_u(self.d0 as u64);
        l.mul(&rp.max(&RInterval::from_int(2, bits))).add(&self.r.mul_int(2)).add_q(&q(2, 1))
    }
}

/// Outcome of a hypothesis evaluation: `margin = |a| - rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub holds: bool,
    pub margin: RInterval,
}

fn decide(a: &BigInt, rhs: &RInterval) -> Result<HypothesisReport> {
    let abs_a = qi(&a.abs());
    let margin = RInterval::point(abs_a, rhs.bits()).sub(rhs);
    match margin.sign() {
        Some(s) => Ok(HypothesisReport { holds: s >= 0, margin }),
        None if margin.lo().is_zero() => Ok(HypothesisReport { holds: true, margin }),
        None => Err(Error::UndecidableAtPrecision { what: "family hypothesis".into(), bits: rhs.bits() }),
    }
}

/// The hypothesis under which the root split and irreducibility hold.
pub fn hypothesis_check(f: &FamilySpec) -> Result<HypothesisReport> {
    decide(&f.a, &f.localization_rhs()?)
}

/// The stricter size condition on `|a|` required by the measure worksheet.
pub fn measure_hypothesis_check(f: &FamilySpec) -> Result<HypothesisReport> {
    decide(&f.a, &f.measure_rhs())
}

/// Certified root decomposition: `d - 1` roots inside `|z| < R + 1` and the
/// real simple root ξ with `|ξ - a| < 1`.
#[derive(Debug, Clone)]
pub struct RootPortrait {
    pub small_roots: Vec<Cluster>,
    /// Real isolating interval of ξ.
    pub xi: RInterval,
    pub xi_height: RInterval,
    /// `|ξ - a|`.
    pub gap: RInterval,
    pub irreducibility: Irreducibility,
    pub bits: u32,
}

impl RootPortrait {
    pub fn small_count(&self) -> usize {
        self.small_roots.iter().map(|c| c.count).sum()
    }

    /// The ξ of the portrait as an approximation target.
    pub fn target(&self, f: &FamilySpec) -> Result<ApproxTarget> {
        ApproxTarget::from_parts(
            &f.poly(),
            self.xi.lo().clone(),
            self.xi.hi().clone(),
            self.small_roots.clone(),
            self.xi_height.clone(),
            self.irreducibility,
            self.bits,
        )
    }

    /// `|ξ|^{1/d} <= H(ξ) <= (R+1) |ξ|^{1/d}`.
    ///
    /// The product formula gives `H^d = |ξ| ∏ max(1, |ξ_i|)` and each small
    /// root is certified inside `|z| < R + 1`, so the sandwich follows; the
    /// enclosures are additionally checked for consistency with it.
    pub fn height_sandwich(&self, f: &FamilySpec) -> Result<bool> {
        let d = f.d as u64;
        let root = self.xi.abs().nth_root(d)?;
        let lower = root.clone();
        let upper = root.mul(&f.r.add_q(&q(1, 1)));
        let r1 = f.r.hi() + q(1, 1);
        let structural = self.small_roots.iter().all(|c| c.inside(&BigRational::zero(), &BigRational::zero(), &r1));
        Ok(structural && self.xi_height.hi() >= lower.lo() && self.xi_height.lo() <= upper.hi())
    }
}

/// Certifies the root portrait of `A`. The clusters of the `d - 1` small
/// roots come from the root solver; ξ is then the only remaining root, real
/// because a non-real one would bring its conjugate along, and located by an
/// exact sign change on `(a - 1, a + 1)`.
pub fn localize_roots(f: &FamilySpec, policy: &Policy) -> Result<RootPortrait> {
    let h = hypothesis_check(f)?;
    if !h.holds {
        return Err(Error::HypothesisViolation(format!("|a| = {} is below the localization bound", f.a.abs())));
    }
    let poly = f.poly();
    let d = f.d;
    let a = qi(&f.a);
    let one = q(1, 1);
    let (sl, sh) = (poly.sign_at(&(&a - &one)), poly.sign_at(&(&a + &one)));
    if sl == 0 || sh == 0 || sl == sh {
        return Err(Error::RoucheMismatch("no sign change of A on (a - 1, a + 1)".into()));
    }
    let r1 = f.r.lo() + &one;
    let zero = BigRational::zero();
    let mut solver = RootSolver::new(&poly)?;
    let irr = irreducibility_certificate(f);
    policy.run("root portrait", |bits| {
        let Some(cl) = solver.clusters(bits) else { return Ok(None) };
        let small: Vec<Cluster> = cl.iter().filter(|c| c.inside(&zero, &zero, &r1)).cloned().collect();
        let count: usize = small.iter().map(|c| c.count).sum();
        if count != d - 1 {
            if count > d - 1 {
                return Err(Error::RoucheMismatch(format!("{count} roots inside |z| < R + 1")));
            }
            return Ok(None);
        }
        // ξ lies on the side of a where A changes sign
        let sa = poly.sign_at(&a);
        let gap = gap_by_product(&poly, &a, &small, bits)?;
        let (lo, hi) = if sa == 0 {
            (a.clone(), a.clone())
        } else if sa == sl {
            (&a + gap.lo(), &a + gap.hi())
        } else {
            (&a - gap.hi(), &a - gap.lo())
        };
        let xi = RInterval::new(lo, hi, bits);
        let mut m = xi.abs();
        let onei = RInterval::one(bits);
        for c in &small {
            m = m.mul(&c.modulus(bits).max(&onei).pow_u(c.count as u64));
        }
        let xi_height = target::height_from_measure(&m, d, bits)?;
        Ok(Some(RootPortrait { small_roots: small, xi, xi_height, gap, irreducibility: irr, bits }))
    })
}

/// `|ξ - a| = |A(a)| / ∏ |a - ξ_i|` from the certified small-root clusters.
fn gap_by_product(poly: &IntPoly, a: &BigRational, small: &[Cluster], bits: u32) -> Result<RInterval> {
    let fa = poly.eval_rat(a).abs();
    let mut den = RInterval::from_bigint(&poly.lead().abs(), bits);
    for c in small {
        let dist = c
            .distance_from(a, bits)
            .ok_or_else(|| Error::RoucheMismatch("a small-root cluster reaches a".into()))?;
        den = den.mul(&dist.pow_u(c.count as u64));
    }
    RInterval::point(fa, bits).div(&den)
}

/// A checkable irreducibility certificate for `A`: the localization
/// hypothesis (integer data, coprime `P` and `Q`) or a prime modulo which
/// `A` is irreducible.
pub fn irreducibility_certificate(f: &FamilySpec) -> Irreducibility {
    if let Ok(h) = hypothesis_check(f) {
        if h.holds {
            return Irreducibility::LemmaGuarantee;
        }
    }
    irreducible::certify_mod_p(&f.poly(), irreducible::DEFAULT_PRIME_LIMIT)
}

/// Two-sided bracket for `|ξ - a|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapBounds {
    /// `L(P) |ξ|^{d0} / (|ξ| - R)^{d-1}`.
    pub upper: RInterval,
    /// `L(P) 2^{d-1} |ξ|^{-(d-d0-1)}`.
    pub upper_simple: RInterval,
    /// `|b| (|ξ| - R')^{d0} / (|ξ| + R)^{d-1}`.
    pub lower: RInterval,
    /// `2^{-(d+d0-1)} |ξ|^{-(d-d0-1)}`.
    pub lower_simple: RInterval,
    /// Nothing certifiably contradicts `lower <= gap <= upper` or the simple
    /// forms bracketing the sharp ones. The sharp bounds are attained when
    /// `R = R' = 0`, so equality has to be tolerated.
    pub consistent: bool,
}

pub fn gap_bounds(f: &FamilySpec, portrait: &RootPortrait) -> Result<GapBounds> {
    let bits = portrait.bits;
    let x = portrait.xi.abs();
    let need = RInterval::one(bits).max(&f.r.mul_int(2)).max(&RInterval::from_bigint(&(&f.lp * 2), bits));
    if !need.lt(&x) {
        return Err(Error::PreconditionXiTooSmall);
    }
    let (d, d0) = (f.d as u64, f.d0 as u64);
    let lp = RInterval::from_bigint(&f.lp, bits);
    let upper = lp.mul(&x.pow_u(d0)).div(&x.sub(&f.r).pow_u(d - 1))?;
    let upper_simple = lp.mul(&RInterval::from_int(2, bits).pow_u(d - 1)).div(&x.pow_u(d - d0 - 1))?;
    let lower = RInterval::from_bigint(&f.b.abs(), bits).mul(&x.sub(&f.r_prime).pow_u(d0)).div(&x.add(&f.r).pow_u(d - 1))?;
    let lower_simple = RInterval::point(rat::pow2(-((d + d0 - 1) as i64)), bits).div(&x.pow_u(d - d0 - 1))?;
    let g = &portrait.gap;
    let consistent = lower.lo() <= g.hi() && g.lo() <= upper.hi() && upper.lo() <= upper_simple.hi() && lower_simple.lo() <= lower.hi();
    Ok(GapBounds { upper, upper_simple, lower, lower_simple, consistent })
}

/// `(t - a) ∏ (t - a_i) ∏ (t^2 + b_j t + c_j) + sign`.
pub fn abc_family(a: BigInt, shifts: &[BigInt], quadratics: &[(BigInt, BigInt)], sign: i64, policy: &Policy) -> Result<FamilySpec> {
    for (i, s) in shifts.iter().enumerate() {
        if shifts[..i].contains(s) {
            return Err(Error::ParameterViolation(format!("repeated shift {s}")));
        }
    }
    for (i, (b, c)) in quadratics.iter().enumerate() {
        if quadratics[..i].contains(&(b.clone(), c.clone())) {
            return Err(Error::ParameterViolation(format!("repeated quadratic ({b}, {c})")));
        }
        if !(b * b - BigInt::from(4) * c).is_negative() {
            return Err(Error::ParameterViolation(format!("t^2 + {b} t + {c} has real roots")));
        }
    }
    if shifts.len() + 2 * quadratics.len() < 22 {
        return Err(Error::ParameterViolation("need m + 2n >= 22".into()));
    }
    if sign.abs() != 1 {
        return Err(Error::ParameterViolation("sign must be ±1".into()));
    }
    let mut q_poly = IntPoly::one();
    let bits = policy.start_bits;
    let mut r = RInterval::zero(bits);
    for s in shifts {
        q_poly = q_poly.mul(&IntPoly::linear_root(s));
        r = r.max(&RInterval::from_bigint(&s.abs(), bits));
    }
    for (b, c) in quadratics {
        q_poly = q_poly.mul(&IntPoly::new(vec![c.clone(), b.clone(), BigInt::one()]));
        // both roots have modulus √c
        r = r.max(&RInterval::from_bigint(c, bits).sqrt()?);
    }
    FamilySpec::with_r(IntPoly::constant(BigInt::from(sign)), q_poly, a, r, policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol() -> Policy {
        Policy::default()
    }

    #[test]
    fn hypothesis_examples() {
        let f = FamilySpec::new(IntPoly::one(), IntPoly::from_i64(&[0, 0, 1]), BigInt::from(5), &pol()).unwrap();
        let h = hypothesis_check(&f).unwrap();
        assert!(h.holds);
        assert_eq!(h.margin, RInterval::point(q(2, 1), 128));
        let f = FamilySpec::new(IntPoly::one(), IntPoly::from_i64(&[0, 0, 1]), BigInt::from(2), &pol()).unwrap();
        assert!(!hypothesis_check(&f).unwrap().holds);
        let q11 = IntPoly::from_i64(&[1, 0, 1]).pow(11);
        let f = FamilySpec::new(IntPoly::from_i64(&[-1]), q11, BigInt::from(6), &pol()).unwrap();
        assert!(f.r.contains(&q(1, 1)) && f.r.width() < q(1, 1_000_000));
        let h = hypothesis_check(&f).unwrap();
        assert!(h.holds && h.margin.contains(&q(1, 1)));
    }

    #[test]
    fn cubic_portrait() {
        let f = FamilySpec::new(IntPoly::one(), IntPoly::from_i64(&[0, 0, 1]), BigInt::from(5), &pol()).unwrap();
        assert_eq!(f.poly(), IntPoly::from_i64(&[1, 0, -5, 1]));
        let p = localize_roots(&f, &pol()).unwrap();
        assert_eq!(p.small_count(), 2);
        assert!(p.xi.gt_q(&q(4, 1)) && p.xi.lt_q(&q(5, 1)));
        // |ξ - 5| ≈ 1/24.6
        assert!(p.gap.gt_q(&q(1, 25)) && p.gap.lt_q(&q(1, 24)));
        assert!(p.height_sandwich(&f).unwrap());
        let g = gap_bounds(&f, &p).unwrap();
        assert!(g.consistent);
        assert!(matches!(irreducibility_certificate(&f), Irreducibility::LemmaGuarantee));
    }

    #[test]
    fn circular_cubic() {
        let f = FamilySpec::new(IntPoly::one(), IntPoly::from_i64(&[1, 0, 1]), BigInt::from(6), &pol()).unwrap();
        let p = localize_roots(&f, &pol()).unwrap();
        assert_eq!(p.small_count(), 2);
        assert!(p.xi.gt_q(&q(5, 1)) && p.xi.lt_q(&q(7, 1)));
        assert!(p.height_sandwich(&f).unwrap());
    }

    #[test]
    fn degree_23_with_small_a() {
        let f = FamilySpec::bombieri(23, BigInt::from(4), 1, &pol()).unwrap();
        let p = localize_roots(&f, &pol()).unwrap();
        assert_eq!(p.small_count(), 22);
        assert!(p.height_sandwich(&f).unwrap());
        assert_eq!(irreducibility_certificate(&f), Irreducibility::LemmaGuarantee);
        let t = p.target(&f).unwrap();
        assert!(t.is_real && t.degree() == 23);
    }

    #[test]
    fn tiny_xi_is_rejected() {
        // a = 3 with L(P) = 2 violates |ξ| > 2 L(P)
        let f = FamilySpec::new(IntPoly::from_i64(&[2]), IntPoly::from_i64(&[0, 0, 1]), BigInt::from(8), &pol()).unwrap();
        let p = localize_roots(&f, &pol()).unwrap();
        assert!(gap_bounds(&f, &p).is_ok());
        let f = FamilySpec::new(IntPoly::from_i64(&[1]), IntPoly::from_i64(&[0, 0, 0, 0, 1]), BigInt::from(3), &pol()).unwrap();
        if let Ok(p) = localize_roots(&f, &pol()) {
            let mut p = p;
            p.xi = RInterval::new(q(3, 2), q(2, 1), 128);
            assert!(matches!(gap_bounds(&f, &p), Err(Error::PreconditionXiTooSmall)));
        }
    }

    #[test]
    fn abc_constructor() {
        let one = BigInt::one();
        let dup: Vec<(BigInt, BigInt)> = (0..11).map(|_| (BigInt::zero(), one.clone())).collect();
        assert!(abc_family(BigInt::from(100), &[], &dup, 1, &pol()).is_err());
        let quads: Vec<(BigInt, BigInt)> = (1..=11).map(|c| (BigInt::zero(), BigInt::from(c))).collect();
        let f = abc_family(BigInt::from(100), &[], &quads, 1, &pol()).unwrap();
        assert_eq!(f.d, 23);
        assert!(f.r.gt_q(&q(3316, 1000)) && f.r.lt_q(&q(3317, 1000)));
        let shifts: Vec<BigInt> = (0..22).map(BigInt::from).collect();
        let f = abc_family(BigInt::from(100), &shifts, &[], -1, &pol()).unwrap();
        assert_eq!(f.r, RInterval::from_int(21, 128));
        assert!(abc_family(BigInt::from(100), &shifts[..20], &[], 1, &pol()).is_err());
    }
}
