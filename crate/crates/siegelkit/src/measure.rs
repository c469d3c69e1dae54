//! Parameters and constants of the effective measure, the worksheet for
//! the families and validation against continued fractions.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::interval::{Policy, RInterval};
use crate::rat::{self, qi};
use crate::target::ApproxTarget;

/// `δ = (d+ε)/(e+1)`, `α = dδ/ε`, `β = dδ + α`, `γ = 1 - ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureParams {
    pub d: u64,
    pub e: u64,
    pub epsilon: RInterval,
    pub delta: RInterval,
    pub alpha: RInterval,
    pub beta: RInterval,
    pub gamma: RInterval,
}

impl MeasureParams {
    /// `α / (2δ) = d / (2ε)`.
    pub fn alpha_over_2delta(&self) -> RInterval {
        self.alpha.div(&self.delta.mul_int(2)).expect("δ > 0")
    }

    /// The exact rational ε when the enclosure is a point.
    pub fn epsilon_exact(&self) -> Option<&BigRational> {
        (self.epsilon.lo() == self.epsilon.hi()).then(|| self.epsilon.lo())
    }
}

/// Derives the parameters for a target of degree `d >= 3`.
pub fn derive_params(d: u64, e: u64, epsilon: &RInterval) -> Result<MeasureParams> {
    if d < 3 {
        return Err(Error::ParameterViolation(format!("degree {d} below 3")));
    }
    params_unchecked(d, e, epsilon)
}

/// As [`derive_params`] but only requiring `1 <= e < d`; the auxiliary
/// construction makes sense from `d = 2` on.
pub fn params_unchecked(d: u64, e: u64, epsilon: &RInterval) -> Result<MeasureParams> {
    if e < 1 || e >= d {
        return Err(Error::ParameterViolation(format!("need 1 <= e < d, got e = {e}, d = {d}")));
    }
    if !(epsilon.gt_q(&BigRational::zero()) && epsilon.lt_q(&rat::q(1, 1))) {
        return Err(Error::ParameterViolation(format!("need 0 < ε < 1, got {}", epsilon.to_decimal(10))));
    }
    let bits = epsilon.bits();
    let dq = RInterval::from_bigint(&BigInt::from(d), bits);
    let delta = dq.add(epsilon).mul_q(&rat::q(1, e as i64 + 1));
    let alpha = dq.mul(&delta).div(epsilon)?;
    let beta = dq.mul(&delta).add(&alpha);
    let gamma = RInterval::one(bits).sub(epsilon);
    Ok(MeasureParams { d, e, epsilon: epsilon.clone(), delta, alpha, beta, gamma })
}

/// Parses ε as a rational (`"1/2"`) or as `"sqrt2-1"`.
pub fn parse_epsilon(s: &str, bits: u32) -> Result<RInterval> {
    let t: alloc::string::String = s.chars().filter(|c| !c.is_whitespace()).collect();
    match t.as_str() {
        "sqrt2-1" | "sqrt(2)-1" | "√2-1" => Ok(RInterval::sqrt2(bits).add_q(&rat::q(-1, 1))),
        _ => Ok(RInterval::point(rat::parse_rational(&t)?, bits)),
    }
}

/// `log2 |n|` for a nonzero integer, exact on powers of two.
pub fn log2_int(n: &BigInt, bits: u32) -> Result<RInterval> {
    let m = n.abs();
    if m.is_positive() && m.trailing_zeros() == Some(m.bits() - 1) {
        return Ok(RInterval::from_int(m.bits() as i64 - 1, bits));
    }
    RInterval::from_bigint(&m, bits).log2()
}

/// The constants of the measure together with the anchor they came from.
/// Large quantities are kept as base-2 logarithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureResult {
    pub params: MeasureParams,
    pub p0: BigInt,
    pub q0: BigInt,
    /// `|θ - p₀/q₀|`.
    pub gap: RInterval,
    pub height: RInterval,
    /// `log2 c` with `c = q₀^δ (2H)^β`.
    pub log2_c: RInterval,
    pub log2_lambda: RInterval,
    /// `log2 c̃`.
    pub log2_c_tilde: RInterval,
    pub kappa: RInterval,
    /// `log2 C` with `C = c c̃^{κ/e} gap^{d(e-κ)}`.
    pub log2_big_c: RInterval,
    pub bits: u32,
}

impl MeasureResult {
    /// The reported exponent: the upper endpoint of κ.
    pub fn kappa_upper(&self) -> &BigRational {
        self.kappa.hi()
    }

    /// The reported constant in log form: the upper endpoint of `log2 C`.
    pub fn log2_big_c_upper(&self) -> &BigRational {
        self.log2_big_c.hi()
    }

    /// `2^{⌈log2 C⌉}` as an integer, or `None` if it would exceed `cap_bits`.
    pub fn big_c_materialized(&self, cap_bits: u64) -> Option<BigInt> {
        let e = rat::ceil(self.log2_big_c.hi()).max(BigInt::zero());
        let e = e.to_u64().filter(|&e| e < cap_bits)?;
        Some(BigInt::one() << e as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureOutcome {
    Applicable(MeasureResult),
    /// `Λ <= 1` was certified.
    NotApplicable { log2_lambda: RInterval, gap: RInterval },
}

/// `log2 c̃ = e + α/(2δ) + 2 + (α/(2δ) + 1) log2(e+1) + (eβ/δ) log2 H`.
pub fn log2_c_tilde(params: &MeasureParams, h: &RInterval) -> Result<RInterval> {
    let bits = params.delta.bits();
    let a2d = params.alpha_over_2delta();
    let e = params.e as i64;
    let l_e1 = RInterval::from_int(e + 1, bits).log2()?;
    let l_h = h.with_bits(bits).log2()?;
    Ok(a2d.add_q(&rat::q(e + 2, 1)).add(&a2d.add_q(&rat::q(1, 1)).mul(&l_e1)).add(&params.beta.mul_int(e).div(&params.delta)?.mul(&l_h)))
}

/// Runs the constants pipeline for the anchor `p₀/q₀`.
pub fn compute_measure(
    target: &ApproxTarget,
    e: u64,
    epsilon: &RInterval,
    p0: &BigInt,
    q0: &BigInt,
    policy: &Policy,
) -> Result<MeasureOutcome> {
    if !target.is_real {
        return Err(Error::ParameterViolation("the target must be real".into()));
    }
    if !q0.is_positive() {
        return Err(Error::ParameterViolation("q0 must be positive".into()));
    }
    let d = target.degree() as u64;
    if target.height.lt_q(&rat::q(1, 1)) {
        return Err(Error::ParameterViolation("height below 1".into()));
    }
    let r0 = BigRational::new(p0.clone(), q0.clone());
    policy.run("Λ > 1", |bits| {
        let eps = rebuild_epsilon(epsilon, bits);
        let params = derive_params(d, e, &eps)?;
        let h = target.height.with_bits(bits);
        let gap = target.gap(&r0, bits)?;
        if gap.contains_zero() {
            return Ok(None);
        }
        let l_gap = gap.log2()?;
        let l_h2 = h.log2()?.add_q(&rat::q(1, 1));
        let log2_c = params.delta.mul(&log2_int(q0, bits)?).add(&params.beta.mul(&l_h2));
        let log2_lambda = log2_c.add(&params.gamma.mul(&l_gap)).neg();
        match log2_lambda.sign() {
            Some(s) if s <= 0 => return Ok(Some(MeasureOutcome::NotApplicable { log2_lambda, gap })),
            Some(_) => {}
            None if log2_lambda.hi().is_zero() => return Ok(Some(MeasureOutcome::NotApplicable { log2_lambda, gap })),
            None => return Ok(None),
        }
        let ei = RInterval::from_int(e as i64, bits);
        let kappa = ei.mul(&log2_c.div(&log2_lambda)?.add_q(&rat::q(1, 1)));
        let log2_c_tilde = log2_c_tilde(&params, &h)?;
        let log2_big_c = log2_c
            .add(&kappa.div(&ei)?.mul(&log2_c_tilde))
            .add(&ei.sub(&kappa).mul_int(d as i64).mul(&l_gap));
        Ok(Some(MeasureOutcome::Applicable(MeasureResult {
            params,
            p0: p0.clone(),
            q0: q0.clone(),
            gap,
            height: h,
            log2_c,
            log2_lambda,
            log2_c_tilde,
            kappa,
            log2_big_c,
            bits,
        })))
    })
}

/// Recomputes `√2 - 1` at the working precision; other values are kept.
pub(crate) fn rebuild_epsilon(eps: &RInterval, bits: u32) -> RInterval {
    if eps.lo() == eps.hi() || eps.bits() >= bits {
        return eps.clone();
    }
    let s = RInterval::sqrt2(bits).add_q(&rat::q(-1, 1));
    if s.overlaps(eps) {
        s
    } else {
        eps.clone()
    }
}

// ---------------------------------------------------------------------------
// The worksheet for the families, with e = 10 and ε = √2 - 1.

/// `f(u) = (3 - 2√2)(u - d₀ - 1)/(u + √2 - 1)`.
pub fn f_u(u: &RInterval, d0: u64) -> Result<RInterval> {
    let bits = u.bits();
    let s2 = RInterval::sqrt2(bits);
    let c = RInterval::from_int(3, bits).sub(&s2.mul_int(2));
    let num = u.add_q(&rat::q(-(d0 as i64) - 1, 1));
    let den = u.add(&s2).add_q(&rat::q(-1, 1));
    c.mul(&num).div(&den)
}

/// `κ̂(u) = 10 (1 + 1/(11 f(u) - 1))`.
pub fn kappa_hat(u: &RInterval, d0: u64) -> Result<RInterval> {
    let l = f_u(u, d0)?.mul_int(11).add_q(&rat::q(-1, 1));
    Ok(RInterval::one(u.bits()).add(&l.recip()?).mul_int(10))
}

/// `55/14 (4 + √2)`, the limit of κ̂ for `d → ∞`.
pub fn kappa_hat_limit(bits: u32) -> RInterval {
    RInterval::sqrt2(bits).add_q(&rat::q(4, 1)).mul_q(&rat::q(55, 14))
}

/// `ε₀(d) = (√(2d(d+1)) - d)/(d + 2)`.
pub fn epsilon0(d: u64, bits: u32) -> Result<RInterval> {
    let dd = BigInt::from(d);
    let rad = RInterval::from_bigint(&(BigInt::from(2) * &dd * (&dd + 1u32)), bits).sqrt()?;
    rad.sub(&RInterval::from_bigint(&dd, bits)).div(&RInterval::from_bigint(&(dd + 2u32), bits))
}

/// `d̂ = 2.13 d₀ + 23`.
pub fn d_hat(d0: u64) -> BigRational {
    rat::q(213, 100) * BigRational::from_integer(BigInt::from(d0)) + rat::q(23, 1)
}

/// One named inequality of the worksheet chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorksheetCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// Check names, in the order they are evaluated.
pub const CHECK_E_EXCEEDS_INVERSE_F: &str = "e_exceeds_inverse_f";
pub const CHECK_LAMBDA_BELOW_TWO: &str = "lambda_below_two";
pub const CHECK_KAPPA_HAT_BELOW_D_HAT: &str = "kappa_hat_below_d_hat";
pub const CHECK_LAMBDA0_ABOVE_ONE: &str = "lambda0_above_one";
pub const CHECK_KAPPA_A_WITHIN_KAPPA: &str = "kappa_a_within_kappa";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Worksheet {
    pub d: u64,
    pub d0: u64,
    pub d_hat: BigRational,
    pub eta: BigRational,
    pub r: RInterval,
    pub r_prime: RInterval,
    pub lp: BigInt,
    pub f_d: RInterval,
    pub f_d_hat: RInterval,
    /// `λ = 11 f(d)`.
    pub lambda: RInterval,
    /// `log2 Λ₀` over `|ξ| ∈ [|a|-1, |a|+1]`.
    pub log2_lambda0: RInterval,
    pub kappa_hat: RInterval,
    /// Equal to κ̂: `10 (1 + 1/(λ - 1))`.
    pub kappa_inf: RInterval,
    /// `κ = κ̂ + η`.
    pub kappa: RInterval,
    /// Upper bound for the size-dependent exponent; `None` when its
    /// denominator is not positive at `|ξ| = |a| - 1`.
    pub kappa_a: Option<RInterval>,
    pub c1_thm: RInterval,
    pub c2_thm: RInterval,
    pub epsilon0_d: RInterval,
    /// `log2(a₀ - 1)`.
    pub log2_a0_minus_1: RInterval,
    /// `s = (d₀ + η + 1) d²`; `C = 2^{42 s} (R+1)^{5 s} |a|^{14 s}`.
    pub c_scale: BigRational,
    pub log2_big_c: RInterval,
    pub a_at_least_a0: bool,
    pub checks: Vec<WorksheetCheck>,
    /// The κ claim is certified only for `|a| >= a₀` with every check passing.
    pub kappa_claim_certified: bool,
}

impl Worksheet {
    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.holds)
    }
}

/// Fills the worksheet for a family member. Structural inequalities that
/// must hold for every admissible `(d, d₀)` raise `HypothesisViolation`
/// when they fail; the size conditions on `|a|` are recorded.
pub fn effective_lower_worksheet(family: &FamilySpec, eta: &BigRational, policy: &Policy) -> Result<Worksheet> {
    if !eta.is_positive() {
        return Err(Error::ParameterViolation("η must be positive".into()));
    }
    let d = family.d as u64;
    let d0 = family.d0 as u64;
    let dh = d_hat(d0);
    if BigRational::from_integer(BigInt::from(d)) < dh {
        return Err(Error::HypothesisViolation(format!("d = {d} is below 2.13 d0 + 23 = {}", rat::rat_to_string(&dh))));
    }
    let h = crate::families::measure_hypothesis_check(family)?;
    if !h.holds {
        return Err(Error::HypothesisViolation(format!("|a| = {} is below L(P) max(2, (R+1)^d0) + 2R + 2", family.a.abs())));
    }
    policy.run("worksheet", |bits| worksheet_at(family, eta, bits))
}

fn worksheet_at(family: &FamilySpec, eta: &BigRational, bits: u32) -> Result<Option<Worksheet>> {
    let d = family.d as u64;
    let d0 = family.d0 as u64;
    let di = d as i64;
    let dh = d_hat(d0);
    let one = rat::q(1, 1);
    let du = RInterval::from_int(di, bits);
    let dhu = RInterval::point(dh.clone(), bits);
    let f_d = f_u(&du, d0)?;
    let f_d_hat = f_u(&dhu, d0)?;
    let lambda = f_d.mul_int(11);
    let kappa_hat_v = kappa_hat(&du, d0)?;
    let kappa_inf = RInterval::one(bits).add(&lambda.add_q(&rat::q(-1, 1)).recip()?).mul_int(10);
    let kappa = kappa_hat_v.add_q(eta);
    let eps = RInterval::sqrt2(bits).add_q(&rat::q(-1, 1));
    let params = derive_params(d, 10, &eps)?;
    let r = family.r.with_bits(bits);
    let r1 = r.add_q(&one);
    let l2_r1 = r1.log2()?;
    let lp = RInterval::from_bigint(&family.lp, bits);
    let l2_lp = lp.log2()?;
    let abs_a = family.a.abs();
    let l2_xi_lo = log2_int(&(&abs_a - 1u32), bits)?;
    let l2_xi = l2_xi_lo.hull(&log2_int(&(&abs_a + 1u32), bits)?);
    let ln2 = RInterval::ln2(bits);
    let m = (d - d0 - 1) as i64;

    let mut checks = Vec::new();
    // 1/f(d) - 1 <= 1/f(d̂) - 1 < 10
    let inv_fd = f_d.recip()?.add_q(&rat::q(-1, 1));
    let inv_fdh = f_d_hat.recip()?.add_q(&rat::q(-1, 1));
    let same = BigRational::from_integer(BigInt::from(d)) == dh;
    let first = if same { Some(true) } else { decide_le(&inv_fd, &inv_fdh) };
    let Some(c1) = first.zip(decide_lt_q(&inv_fdh, &rat::q(10, 1))) else {
        return Ok(None);
    };
    checks.push(WorksheetCheck { name: CHECK_E_EXCEEDS_INVERSE_F, holds: c1.0 && c1.1 });
    // λ <= 33 - 22√2 < 2
    let lam_cap = RInterval::from_int(33, bits).sub(&RInterval::sqrt2(bits).mul_int(22));
    let Some(c2) = decide_le(&lambda, &lam_cap) else { return Ok(None) };
    checks.push(WorksheetCheck { name: CHECK_LAMBDA_BELOW_TWO, holds: c2 && lam_cap.lt_q(&rat::q(2, 1)) });
    // d̂ - κ̂(d̂) > 0
    let Some(c3) = decide_lt(&kappa_hat(&dhu, d0)?, &dhu) else { return Ok(None) };
    checks.push(WorksheetCheck { name: CHECK_KAPPA_HAT_BELOW_D_HAT, holds: c3 });
    if let Some(bad) = checks.iter().find(|c| !c.holds) {
        return Err(Error::HypothesisViolation(format!("worksheet inequality {} failed", bad.name)));
    }

    // Λ₀ = 2^{-β-γ(d-1)} (R+1)^{-β} L(P)^{-γ} |ξ|^{β(λ-1)/d}
    let beta = &params.beta;
    let gamma = &params.gamma;
    let log2_lambda0 = beta
        .neg()
        .sub(&gamma.mul_int(di - 1))
        .sub(&beta.mul(&l2_r1))
        .sub(&gamma.mul(&l2_lp))
        .add(&beta.mul(&lambda.add_q(&rat::q(-1, 1))).div(&du)?.mul(&l2_xi));
    // |ξ|^{λ-1} > 2^{d + λ(d-1)/(d-d0-1)} (R+1)^d L(P)^{λ/(d-d0-1)}, at the smallest |ξ|
    let lm = lambda.mul_q(&rat::q(1, m));
    let jingo_rhs = du.add(&lm.mul_int(di - 1)).add(&l2_r1.mul_int(di)).add(&lm.mul(&l2_lp));
    let jingo_lhs = lambda.add_q(&rat::q(-1, 1)).mul(&l2_xi_lo);
    // the size conditions only count when certified
    checks.push(WorksheetCheck { name: CHECK_LAMBDA0_ABOVE_ONE, holds: decide_lt(&jingo_rhs, &jingo_lhs).unwrap_or(false) });

    let c1_thm = ln2.add(&r1.ln()?);
    let c2_thm = lm.mul_int(di - 1).mul(&ln2).add(&lm.mul(&lp.ln()?));
    // (κ/10)(d c₁ + c₂) <= η(λ-1)/10 ln|ξ|
    let ln_xi_lo = l2_xi_lo.mul(&ln2);
    let thud_l = kappa.mul_q(&rat::q(1, 10)).mul(&c1_thm.mul_int(di).add(&c2_thm));
    let thud_r = lambda.add_q(&rat::q(-1, 1)).mul_q(&(eta * rat::q(1, 10))).mul(&ln_xi_lo);
    checks.push(WorksheetCheck { name: CHECK_KAPPA_A_WITHIN_KAPPA, holds: decide_le(&thud_l, &thud_r).unwrap_or(false) });

    let denom = |ln_xi: &RInterval| c1_thm.mul_int(di).add(&c2_thm).neg().add(&lambda.add_q(&rat::q(-1, 1)).mul(ln_xi));
    let kappa_a = {
        let den = denom(&ln_xi_lo);
        if den.sign() == Some(1) {
            let ln_xi_hi = l2_xi.hi().clone() * ln2.hi();
            let k_at = |lx: &RInterval, den: &RInterval| -> Result<RInterval> {
                Ok(RInterval::one(bits).add(&c1_thm.mul_int(di).add(lx).div(den)?).mul_int(10))
            };
            let hi = k_at(&ln_xi_lo, &den)?;
            let lx_hi = RInterval::point(ln_xi_hi, bits);
            let lo = k_at(&lx_hi, &denom(&lx_hi))?;
            Some(RInterval::new(lo.lo().clone().min(hi.lo().clone()), hi.hi().clone().max(lo.hi().clone()), bits))
        } else {
            None
        }
    };

    // log2(a₀ - 1) = κ/(η(11 f(d̂) - 1)) (2d + d log2(R+1) + 2 log2 L(P))
    let expo = kappa.div(&f_d_hat.mul_int(11).add_q(&rat::q(-1, 1)).mul_q(eta))?;
    let log2_a0_minus_1 = expo.mul(&RInterval::from_int(2 * di, bits).add(&l2_r1.mul_int(di)).add(&l2_lp.mul_int(2)));
    let a_at_least_a0 = match l2_xi_lo.cmp_certain(&log2_a0_minus_1) {
        Some(o) => o != core::cmp::Ordering::Less,
        None => return Ok(None),
    };
    let s = (BigRational::from_integer(BigInt::from(d0 + 1)) + eta) * BigRational::from_integer(BigInt::from(d * d));
    let l2_abs_a = log2_int(&abs_a, bits)?;
    let log2_big_c = RInterval::point(&s * rat::q(42, 1), bits)
        .add(&l2_r1.mul_q(&(&s * rat::q(5, 1))))
        .add(&l2_abs_a.mul_q(&(&s * rat::q(14, 1))));
    let kappa_claim_certified = a_at_least_a0 && checks.iter().all(|c| c.holds);
    Ok(Some(Worksheet {
        d,
        d0,
        d_hat: dh,
        eta: eta.clone(),
        r,
        r_prime: family.r_prime.with_bits(bits),
        lp: family.lp.clone(),
        f_d,
        f_d_hat,
        lambda,
        log2_lambda0,
        kappa_hat: kappa_hat_v,
        kappa_inf,
        kappa,
        kappa_a,
        c1_thm,
        c2_thm,
        epsilon0_d: epsilon0(d, bits)?,
        log2_a0_minus_1,
        c_scale: s,
        log2_big_c,
        a_at_least_a0,
        checks,
        kappa_claim_certified,
    }))
}

/// `Some(a <= b)` when the enclosures decide it.
fn decide_le(a: &RInterval, b: &RInterval) -> Option<bool> {
    if a.hi() <= b.lo() {
        Some(true)
    } else if a.lo() > b.hi() {
        Some(false)
    } else {
        None
    }
}

fn decide_lt(a: &RInterval, b: &RInterval) -> Option<bool> {
    if a.hi() < b.lo() {
        Some(true)
    } else if a.lo() >= b.hi() {
        Some(false)
    } else {
        None
    }
}

fn decide_lt_q(a: &RInterval, x: &BigRational) -> Option<bool> {
    decide_lt(a, &RInterval::point(x.clone(), a.bits()))
}

// ---------------------------------------------------------------------------
// Corollary constants for the two one-parameter families.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `t^d - a t^{d-1} ± 1`.
    Bombieri,
    /// `(t - a)(t^2 + 1)^{(d-1)/2} ± 1`.
    Circular,
}

impl Variant {
    /// The factor in `a₀ = 2^{factor κ d/η} + 1`: 2.6 or 3.9.
    pub fn factor(self) -> BigRational {
        match self {
            Variant::Bombieri => rat::q(13, 5),
            Variant::Circular => rat::q(39, 10),
        }
    }

    /// `log2(R + 1)` of the family: 0 or 1.
    fn log2_r_plus_1(self) -> i64 {
        match self {
            Variant::Bombieri => 0,
            Variant::Circular => 1,
        }
    }

    /// Exponents `(x, y)` with `C = 2^{x d²} |a|^{y d²}`.
    pub fn c_exponents(self) -> (u64, u64) {
        match self {
            Variant::Bombieri => (84, 28),
            Variant::Circular => (94, 28),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryConstants {
    pub variant: Variant,
    pub d: u64,
    pub eta: BigRational,
    pub kappa_hat: RInterval,
    /// Rational upper bound used for κ: upper endpoint of κ̂ plus η.
    pub kappa_upper: BigRational,
    /// Exact `log2(a₀ - 1) = factor · κ · d / η`.
    pub log2_a0_minus_1: BigRational,
    /// `(x d², y d²)` with `C = 2^{x d²} |a|^{y d²}`.
    pub c_pow2: BigInt,
    pub c_pow_a: BigInt,
    /// `κ̂ < 22.94`, certified at `d` and at 23.
    pub kappa_hat_below_22_94: bool,
    /// `11 f(23) - 1 >= 1/1.3`, which turns the general `a₀` into the
    /// factor form.
    pub factor_certified: bool,
    /// The general `a₀` exponent is at most the factor form.
    pub general_a0_within_factor: bool,
}

impl CorollaryConstants {
    /// Certifies `a₀ <= 2^y` through `y - log2(a₀ - 1) >= 1`.
    pub fn a0_at_most_pow2(&self, y: &BigRational) -> bool {
        y - &self.log2_a0_minus_1 >= rat::q(1, 1) && !self.log2_a0_minus_1.is_negative()
    }

    /// `a₀` rounded up to `2^{⌈x⌉} + 1`, or `None` above `cap_bits`.
    pub fn a0_materialized(&self, cap_bits: u64) -> Option<BigInt> {
        let e = rat::ceil(&self.log2_a0_minus_1).to_u64().filter(|&e| e < cap_bits)?;
        Some((BigInt::one() << e as usize) + 1u32)
    }
}

pub fn corollary_constants(variant: Variant, d: u64, eta: &BigRational, bits: u32) -> Result<CorollaryConstants> {
    if d < 23 {
        return Err(Error::ParameterViolation(format!("degree {d} below 23")));
    }
    if variant == Variant::Circular && d % 2 == 0 {
        return Err(Error::ParameterViolation("the circular family needs odd d".into()));
    }
    if !eta.is_positive() || *eta > rat::q(1, 1) {
        return Err(Error::ParameterViolation("need 0 < η <= 1".into()));
    }
    let du = RInterval::from_int(d as i64, bits);
    let kh = kappa_hat(&du, 0)?;
    let kh23 = kappa_hat(&RInterval::from_int(23, bits), 0)?;
    let cap = rat::q(2294, 100);
    let kappa_hat_below_22_94 = kh.lt_q(&cap) && kh23.lt_q(&cap);
    let l = f_u(&RInterval::from_int(23, bits), 0)?.mul_int(11).add_q(&rat::q(-1, 1));
    let factor_certified = l.ge_q(&rat::q(10, 13));
    let kappa_upper = kh.hi() + eta;
    let dq = BigRational::from_integer(BigInt::from(d));
    let log2_a0_minus_1 = variant.factor() * &kappa_upper * &dq / eta;
    // the general exponent κ/(η(11f(23)-1)) (2 + log2(R+1)) d
    let general = RInterval::point(kappa_upper.clone(), bits)
        .div(&l.mul_q(eta))?
        .mul_q(&(rat::q(2 + variant.log2_r_plus_1(), 1) * &dq));
    let general_a0_within_factor = general.le_q(&log2_a0_minus_1);
    let (x, y) = variant.c_exponents();
    Ok(CorollaryConstants {
        variant,
        d,
        eta: eta.clone(),
        kappa_hat: kh,
        kappa_upper,
        log2_a0_minus_1,
        c_pow2: BigInt::from(x * d * d),
        c_pow_a: BigInt::from(y * d * d),
        kappa_hat_below_22_94,
        factor_certified,
        general_a0_within_factor,
    })
}

// ---------------------------------------------------------------------------
// Validation on continued-fraction convergents.

/// Partial quotients of θ, `count` of them, read off an isolating interval
/// fine enough that every number inside shares them.
pub fn continued_fraction(target: &ApproxTarget, count: usize, policy: &Policy) -> Result<Vec<BigInt>> {
    if !target.is_real {
        return Err(Error::ParameterViolation("the target must be real".into()));
    }
    policy.run("continued fraction", |bits| {
        let t = target.refined(bits);
        let (mut x, mut y) = (t.re.lo().clone(), t.re.hi().clone());
        let mut out = Vec::with_capacity(count);
        // one extra quotient must agree so the last one is settled
        while out.len() <= count {
            let (ax, ay) = (rat::floor(&x), rat::floor(&y));
            if ax != ay {
                return Ok(None);
            }
            out.push(ax.clone());
            let (fx, fy) = (&x - qi(&ax), &y - qi(&ax));
            if fx.is_zero() || fy.is_zero() {
                return Ok(None);
            }
            // 1/frac reverses the order
            (x, y) = (fy.recip(), fx.recip());
        }
        out.truncate(count);
        Ok(Some(out))
    })
}

/// Convergents `p_k/q_k` from partial quotients.
pub fn convergents(quotients: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(quotients.len());
    for a in quotients {
        let p = a * &p1 + &p0;
        let q = a * &q1 + &q0;
        out.push((p.clone(), q.clone()));
        (p0, q0, p1, q1) = (p1, q1, p, q);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentCheck {
    pub convergents: Vec<(BigInt, BigInt)>,
    /// `log2(|θ - p/q| C q^κ)` per convergent.
    pub log2_slacks: Vec<RInterval>,
    /// Smallest lower endpoint among the slacks.
    pub min_log2_slack: BigRational,
    /// Every slack is certified `>= 1`.
    pub holds: bool,
}

/// Evaluates `|θ - p/q| C q^κ` on the first `depth` convergents, with `C`
/// given as `log2 C`.
pub fn check_measure_on_convergents(
    target: &ApproxTarget,
    log2_big_c: &BigRational,
    kappa: &BigRational,
    depth: usize,
    policy: &Policy,
) -> Result<ConvergentCheck> {
    if depth == 0 {
        return Err(Error::ParameterViolation("depth must be positive".into()));
    }
    let cf = continued_fraction(target, depth, policy)?;
    let convs = convergents(&cf);
    let bits = policy.start_bits;
    let mut log2_slacks = Vec::with_capacity(depth);
    for (p, q) in &convs {
        let r = BigRational::new(p.clone(), q.clone());
        let g = policy.run("convergent gap", |b| {
            let g = target.gap(&r, b)?;
            Ok((!g.contains_zero()).then_some(g))
        })?;
        let s = g.with_bits(bits).log2()?.add_q(log2_big_c).add(&log2_int(q, bits)?.mul_q(kappa));
        log2_slacks.push(s);
    }
    let min_log2_slack = log2_slacks.iter().map(|s| s.lo().clone()).min().expect("depth > 0");
    let holds = !min_log2_slack.is_negative();
    Ok(ConvergentCheck { convergents: convs, log2_slacks, min_log2_slack, holds })
}

/// The Liouville pair `(C, κ) = (max(1, sup |f'| on [θ-1, θ+1]), d)`.
pub fn liouville_constant(target: &ApproxTarget) -> Result<(BigRational, u64)> {
    if !target.is_real {
        return Err(Error::ParameterViolation("the target must be real".into()));
    }
    let one = rat::q(1, 1);
    let bits = target.re.bits();
    let span = RInterval::new(target.re.lo() - &one, target.re.hi() + &one, bits);
    let dv = target.min_poly().derivative().eval_interval(&span);
    let m = dv.lo().abs().max(dv.hi().abs());
    Ok((m.max(one), target.degree() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn params_are_exact_for_rational_epsilon() {
        let p = derive_params(3, 1, &RInterval::point(q(1, 2), 128)).unwrap();
        assert_eq!(p.delta, RInterval::point(q(7, 4), 128));
        assert_eq!(p.alpha, RInterval::point(q(21, 2), 128));
        assert_eq!(p.beta, RInterval::point(q(63, 4), 128));
        assert_eq!(p.gamma, RInterval::point(q(1, 2), 128));
        assert!(derive_params(3, 3, &RInterval::point(q(1, 2), 128)).is_err());
    }

    #[test]
    fn delta_for_the_standard_choice() {
        let eps = parse_epsilon("sqrt2-1", 256).unwrap();
        let p = derive_params(23, 10, &eps).unwrap();
        assert!(p.delta.gt_q(&q(2128, 1000)) && p.delta.lt_q(&q(2129, 1000)));
    }

    fn pol() -> Policy {
        Policy::default()
    }

    fn target(c: &[i64], near: BigRational) -> ApproxTarget {
        ApproxTarget::real_root_near(&crate::poly::IntPoly::from_i64(c), &near, &pol()).unwrap()
    }

    #[test]
    fn kappa_hat_values() {
        let k = kappa_hat(&RInterval::from_int(23, 256), 0).unwrap();
        assert!(k.gt_q(&q(2293, 100)) && k.lt_q(&q(2294, 100)));
        let lim = kappa_hat_limit(256);
        assert!(lim.gt_q(&q(212701247, 10_000_000)) && lim.lt_q(&q(212701248, 10_000_000)));
        let far = kappa_hat(&RInterval::from_int(1_000_000, 256), 0).unwrap();
        assert!(far.sub(&lim).abs().lt_q(&q(1, 1000)));
        let e0 = epsilon0(1_000_000, 256).unwrap();
        assert!(e0.sub(&RInterval::sqrt2(256).add_q(&q(-1, 1))).abs().lt_q(&q(1, 100_000)));
        assert_eq!(d_hat(1), q(2513, 100));
    }

    #[test]
    fn corollary_bounds() {
        let c = corollary_constants(Variant::Bombieri, 23, &q(1, 20), 256).unwrap();
        assert!(c.kappa_hat_below_22_94 && c.factor_certified && c.general_a0_within_factor);
        assert!(c.kappa_upper < q(2299, 100));
        assert!(c.a0_at_most_pow2(&q(1196 * 23, 1)));
        assert_eq!((c.c_pow2.clone(), c.c_pow_a.clone()), (BigInt::from(84 * 529), BigInt::from(28 * 529)));
        let c = corollary_constants(Variant::Circular, 25, &q(14, 25), 256).unwrap();
        assert!(c.kappa_upper < q(235, 10));
        assert!(c.a0_at_most_pow2(&q(164 * 25, 1)));
        assert!(c.factor_certified && c.general_a0_within_factor);
        assert!(corollary_constants(Variant::Bombieri, 22, &q(1, 20), 256).is_err());
        assert!(corollary_constants(Variant::Circular, 24, &q(1, 20), 256).is_err());
        assert_eq!(c.a0_materialized(64), None);
    }

    #[test]
    fn measure_on_the_cubic_is_not_applicable() {
        let t = target(&[1, 0, -5, 1], q(5, 1));
        let half = RInterval::point(q(1, 2), 128);
        let out = compute_measure(&t, 1, &half, &BigInt::from(5), &BigInt::from(1), &pol()).unwrap();
        assert!(matches!(out, MeasureOutcome::NotApplicable { .. }));
        // an anchor at distance >= 1
        let out = compute_measure(&t, 1, &half, &BigInt::from(0), &BigInt::from(1), &pol()).unwrap();
        assert!(matches!(out, MeasureOutcome::NotApplicable { .. }));
    }

    #[test]
    fn sqrt2_convergents() {
        let t = target(&[-2, 0, 1], q(7, 5));
        let cf = continued_fraction(&t, 20, &pol()).unwrap();
        assert_eq!(cf[0], BigInt::from(1));
        assert!(cf[1..].iter().all(|a| *a == BigInt::from(2)));
        let conv = convergents(&cf);
        assert_eq!(conv[3], (BigInt::from(17), BigInt::from(12)));
        // with κ = 3 and C = 1 only 1/1 and 3/2 fall short
        let c1 = check_measure_on_convergents(&t, &q(0, 1), &q(3, 1), 20, &pol()).unwrap();
        let short: Vec<bool> = c1.log2_slacks.iter().map(|s| s.hi().is_negative()).collect();
        assert!(short[0] && short[1] && short[2..].iter().all(|b| !b));
        let ok = check_measure_on_convergents(&t, &q(2, 1), &q(3, 1), 20, &pol()).unwrap();
        assert!(ok.holds);
        let bad = check_measure_on_convergents(&t, &q(0, 1), &q(19, 10), 20, &pol()).unwrap();
        assert!(!bad.holds);
        let (c, k) = liouville_constant(&t).unwrap();
        assert_eq!(k, 2);
        let l = RInterval::point(c, 128).log2().unwrap();
        assert!(check_measure_on_convergents(&t, l.hi(), &q(2, 1), 20, &pol()).unwrap().holds);
    }

    #[test]
    fn cubic_liouville_on_30_convergents() {
        let t = target(&[1, 0, -5, 1], q(5, 1));
        let (c, k) = liouville_constant(&t).unwrap();
        let l = RInterval::point(c, 128).log2().unwrap();
        let r = check_measure_on_convergents(&t, l.hi(), &q(k as i64, 1), 30, &pol()).unwrap();
        assert!(r.holds && r.convergents.len() == 30);
    }

    #[test]
    fn worksheet_for_the_bombieri_family() {
        let a = BigInt::one() << 27508usize;
        let f = FamilySpec::bombieri(23, a, 1, &pol()).unwrap();
        let w = effective_lower_worksheet(&f, &q(1, 20), &pol()).unwrap();
        assert!(w.checks.iter().all(|c| c.holds), "{:?}", w.checks);
        assert!(w.a_at_least_a0 && w.kappa_claim_certified);
        assert!(w.kappa.lt_q(&q(2299, 100)));
        assert!(w.kappa_a.as_ref().unwrap().le(&w.kappa));
        assert!(w.log2_lambda0.gt_q(&q(0, 1)));
        assert_eq!(w.kappa_hat, w.kappa_inf.intersect(&w.kappa_hat).unwrap());

        let f = FamilySpec::bombieri(23, BigInt::from(1u64 << 40), 1, &pol()).unwrap();
        let w = effective_lower_worksheet(&f, &q(1, 20), &pol()).unwrap();
        assert!(!w.a_at_least_a0 && !w.kappa_claim_certified);
        assert_eq!(w.check(CHECK_E_EXCEEDS_INVERSE_F), Some(true));

        let f = FamilySpec::bombieri(22, BigInt::from(100), 1, &pol()).unwrap();
        assert!(matches!(effective_lower_worksheet(&f, &q(1, 20), &pol()), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn full_pipeline_at_the_corollary_threshold() {
        let a = BigInt::one() << (1196usize * 23);
        let f = FamilySpec::bombieri(23, a.clone(), 1, &pol()).unwrap();
        let portrait = crate::families::localize_roots(&f, &pol()).unwrap();
        let t = portrait.target(&f).unwrap();
        let eps = parse_epsilon("sqrt2-1", 256).unwrap();
        let out = compute_measure(&t, 10, &eps, &a, &BigInt::one(), &pol()).unwrap();
        let MeasureOutcome::Applicable(m) = out else { panic!("Λ <= 1") };
        assert!(m.log2_lambda.gt_q(&q(0, 1)));
        assert!(m.kappa_upper() <= &q(2299, 100));
        let stated_c = q(84 * 529, 1) + q(28 * 529 * 27508, 1);
        assert!(m.log2_big_c_upper() <= &stated_c);
    }
}
