//! Wronskians, the nonvanishing index and the upper estimate for rational
//! points near the target.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::{Policy, RInterval};
use crate::measure::MeasureParams;
use crate::poly::{BiPoly, IntPoly};
use crate::rat::{self, q, qi};
use crate::siegel::AuxPoly;
use crate::target::ApproxTarget;

/// `det (P_j^{(i)})` for `0 <= i, j < n`, by fraction-free elimination over
/// `Z[x]`.
pub fn wronskian(polys: &[IntPoly]) -> IntPoly {
    let n = polys.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut m: Vec<Vec<IntPoly>> = Vec::with_capacity(n);
    let mut row: Vec<IntPoly> = polys.to_vec();
    for _ in 0..n {
        let next = row.iter().map(|p| p.derivative()).collect();
        m.push(row);
        row = next;
    }
    let mut sign = false;
    let mut prev = IntPoly::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return IntPoly::zero();
        };
        if piv != k {
            m.swap(piv, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.div_exact(&prev).expect("fraction-free step is exact");
            }
            m[i][k] = IntPoly::zero();
        }
        prev = m[k][k].clone();
    }
    if sign {
        prev.neg()
    } else {
        prev
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonvanishingCertificate {
    pub l: u32,
    /// The exact nonzero value of the `l`-th normalized x-derivative at `(ξ, η)`.
    pub value: BigRational,
    /// `εk + ed`.
    pub l_cap: RInterval,
}

/// The least `l <= εk + ed` with `P_l(ξ, η) != 0`, for any polynomial that
/// vanishes to order `k` at `(θ, θ)` within the auxiliary degree bounds.
pub fn nonvanishing_index_poly(
    p: &BiPoly,
    k: usize,
    params: &MeasureParams,
    xi: &BigRational,
    eta: &BigRational,
    min_poly: &IntPoly,
) -> Result<NonvanishingCertificate> {
    let e = params.e as usize;
    if k < e {
        return Err(Error::ParameterViolation(format!("need k >= e, got k = {k}, e = {e}")));
    }
    if min_poly.eval_rat(xi).is_zero() {
        return Err(Error::PreconditionXiConjugate);
    }
    let l_cap = params.epsilon.mul_int(k as i64).add_q(&q((params.e * params.d) as i64, 1));
    let top = rat::floor(l_cap.hi()).to_u32().unwrap_or(u32::MAX);
    for l in 0..=top {
        let v = p.partial(l).eval_rat(xi, eta);
        if !v.is_zero() {
            return Ok(NonvanishingCertificate { l, value: v, l_cap });
        }
    }
    Err(Error::TheoremViolation(format!("P_l(ξ, η) = 0 for every l <= {top}")))
}

pub fn nonvanishing_index(aux: &AuxPoly, xi: &BigRational, eta: &BigRational, target: &ApproxTarget) -> Result<NonvanishingCertificate> {
    nonvanishing_index_poly(&aux.p, aux.k, &aux.params, xi, eta, target.min_poly())
}

/// How `q₀` is raised on the left-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LhsExponent {
    /// `q₀^{-δk}` with the real exponent, as an interval power.
    Real,
    /// `q₀^{-D}` with `D = [δk]`, exact. This side is the larger one, so the
    /// resulting inequality is the stronger claim.
    Degree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperEstimateReport {
    pub lhs: RInterval,
    /// Present in [`LhsExponent::Degree`] mode.
    pub lhs_exact: Option<BigRational>,
    pub rhs: RInterval,
    pub c3: RInterval,
    pub mode: LhsExponent,
    pub holds: bool,
    pub bits: u32,
}

/// `c₃ = 2^{e + α/(2δ) + 1} (e+1)^{α/(2δ) + 1} H^{eβ/δ}`.
pub fn c3(params: &MeasureParams, h: &RInterval) -> Result<RInterval> {
    let bits = params.delta.bits().max(h.bits());
    let a2d = params.alpha_over_2delta();
    let e = RInterval::from_int(params.e as i64, bits);
    let t1 = RInterval::from_int(2, bits).powr(&e.add(&a2d).add_q(&q(1, 1)))?;
    let t2 = e.add_q(&q(1, 1)).powr(&a2d.add_q(&q(1, 1)))?;
    let t3 = h.powr(&e.mul(&params.beta).div(&params.delta)?)?;
    Ok(t1.mul(&t2).mul(&t3))
}

/// `(2H)^{βk}`, the k-dependent factor of the right-hand side.
pub fn rhs_growth_factor(params: &MeasureParams, h: &RInterval, k: u64) -> Result<RInterval> {
    h.mul_int(2).powr(&params.beta.mul_int(k as i64))
}

/// Evaluates both sides of the upper estimate with certified enclosures.
/// `holds` compares the upper end of the left side with the lower end of
/// the right side.
#[allow(clippy::too_many_arguments)]
pub fn verify_upper_estimate(
    target: &ApproxTarget,
    params: &MeasureParams,
    p0: &BigInt,
    q0: &BigInt,
    p: &BigInt,
    qq: &BigInt,
    k: u64,
    mode: LhsExponent,
    policy: &Policy,
) -> Result<UpperEstimateReport> {
    if !q0.is_positive() || !qq.is_positive() {
        return Err(Error::ParameterViolation("denominators must be positive".into()));
    }
    let ed = (params.e * params.d) as i64;
    let need = RInterval::from_int(ed, params.gamma.bits()).div(&params.gamma)?;
    if !need.le_q(&q(k as i64, 1)) {
        return Err(Error::ParameterViolation(format!("k = {k} is below ed/γ = {}", need.to_decimal(6))));
    }
    let r0 = BigRational::new(p0.clone(), q0.clone());
    let r1 = BigRational::new(p.clone(), qq.clone());
    let h = target.height.clone();
    policy.run("upper estimate", |bits| {
        let g0 = target.gap(&r0, bits)?;
        let g1 = target.gap(&r1, bits)?;
        for (g, name) in [(&g0, "p0/q0"), (&g1, "p/q")] {
            if g.ge_q(&q(1, 1)) {
                return Err(Error::PreconditionGap(format!("|θ - {name}| >= 1")));
            }
            if !g.lt_q(&q(1, 1)) {
                return Ok(None);
            }
        }
        let params = rescale(params, bits)?;
        let h = h.with_bits(bits);
        let qe = rat::pow_i(&qi(qq), params.e as i64).recip();
        let (lhs, lhs_exact) = match mode {
            LhsExponent::Degree => {
                let dk = rat::floor(params.delta.mul_int(k as i64).lo());
                let dk_hi = rat::floor(params.delta.mul_int(k as i64).hi());
                if dk != dk_hi {
                    return Ok(None);
                }
                let v = rat::pow_i(&qi(q0), dk.to_i64().unwrap_or(i64::MAX)).recip() * qe;
                (RInterval::point(v.clone(), bits), Some(v))
            }
            LhsExponent::Real => {
                let t = params.delta.mul_int(k as i64).neg();
                let v = RInterval::from_bigint(q0, bits).powr(&t)?.mul_q(&qe);
                (v, None)
            }
        };
        let c3v = c3(&params, &h)?;
        let exp0 = params.gamma.mul_int(k as i64).add_q(&q(-ed, 1));
        let g0pow = if g0.contains_zero() { RInterval::zero(bits) } else { g0.powr(&exp0)? };
        let g0pow = RInterval::new(BigRational::zero().max(g0pow.lo().clone()), g0pow.hi().clone(), bits);
        let rhs = c3v.mul(&rhs_growth_factor(&params, &h, k)?).mul(&g0pow.add(&g1));
        if lhs.hi() <= rhs.lo() {
            return Ok(Some(UpperEstimateReport { lhs, lhs_exact, rhs, c3: c3v, mode, holds: true, bits }));
        }
        if lhs.lo() > rhs.hi() {
            return Ok(Some(UpperEstimateReport { lhs, lhs_exact, rhs, c3: c3v, mode, holds: false, bits }));
        }
        Ok(None)
    })
}

/// Re-derives the parameters at the working precision when ε is irrational.
fn rescale(params: &MeasureParams, bits: u32) -> Result<MeasureParams> {
    let eps = crate::measure::rebuild_epsilon(&params.epsilon, bits);
    if eps == params.epsilon {
        return Ok(params.clone());
    }
    crate::measure::params_unchecked(params.d, params.e, &eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::measure;
    use crate::siegel;
    use num_traits::One;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn trivial_wronskians() {
        assert_eq!(wronskian(&[ip(&[1]), ip(&[0, 1])]), IntPoly::one());
        assert!(wronskian(&[ip(&[0, 1]), ip(&[0, 2])]).is_zero());
        // W(1, x, x^2) = 2
        assert_eq!(wronskian(&[ip(&[1]), ip(&[0, 1]), ip(&[0, 0, 1])]), ip(&[2]));
        // W(x^2, x^3) = x^4
        assert_eq!(wronskian(&[ip(&[0, 0, 1]), ip(&[0, 0, 0, 1])]), ip(&[0, 0, 0, 0, 1]));
        // a zero leading entry forces a row swap: W(x, 1) = -1
        assert_eq!(wronskian(&[ip(&[0, 1]), ip(&[1])]), ip(&[-1]));
    }

    #[test]
    fn wronskian_matches_rank() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for trial in 0..30 {
            let mut ps: Vec<IntPoly> = (0..3).map(|_| IntPoly::from_i64(&(0..9).map(|_| next()).collect::<Vec<_>>())).collect();
            if trial % 3 == 0 {
                ps[2] = ps[0].scale(&BigInt::from(2)).sub(&ps[1]);
            }
            let rows: Vec<Vec<BigInt>> = ps.iter().map(|p| (0..9).map(|i| p.coeff(i)).collect()).collect();
            let independent = linalg::rank(&rows) == 3;
            assert_eq!(!wronskian(&ps).is_zero(), independent, "trial {trial}");
        }
    }

    #[test]
    fn index_of_x_minus_y() {
        let p = BiPoly::from_terms([((1, 0), BigInt::one()), ((0, 1), -BigInt::one())]);
        let params = measure::params_unchecked(3, 1, &RInterval::point(q(1, 2), 128)).unwrap();
        let c = nonvanishing_index_poly(&p, 1, &params, &q(0, 1), &q(1, 1), &ip(&[1, 0, -5, 1])).unwrap();
        assert_eq!((c.l, c.value), (0, q(-1, 1)));
        assert_eq!(
            nonvanishing_index_poly(&p, 1, &params, &q(2, 1), &q(1, 1), &ip(&[-2, 1, 0, 0])),
            Err(Error::PreconditionXiConjugate)
        );
    }

    fn cubic_target() -> ApproxTarget {
        ApproxTarget::real_root_near(&ip(&[1, 0, -5, 1]), &q(5, 1), &Policy::default()).unwrap()
    }

    #[test]
    fn index_of_constructed_aux_poly() {
        let t = cubic_target();
        let aux = siegel::construct_aux_poly(&t, 2, 1, &RInterval::point(q(1, 2), 128)).unwrap();
        let c = nonvanishing_index(&aux, &q(5, 1), &q(5, 1), &t).unwrap();
        assert!(!c.value.is_zero() && c.l_cap.ge_q(&q(c.l as i64, 1)));
        for l in 0..c.l {
            assert!(aux.p.partial(l).eval_rat(&q(5, 1), &q(5, 1)).is_zero());
        }
    }

    #[test]
    fn upper_estimate_examples() {
        let t = cubic_target();
        let params = measure::params_unchecked(3, 1, &RInterval::point(q(1, 2), 128)).unwrap();
        let b = BigInt::from;
        for mode in [LhsExponent::Real, LhsExponent::Degree] {
            let r = verify_upper_estimate(&t, &params, &b(5), &b(1), &b(99), &b(20), 6, mode, &Policy::default()).unwrap();
            assert!(r.holds);
            let r = verify_upper_estimate(&t, &params, &b(5), &b(1), &b(5), &b(1), 6, mode, &Policy::default()).unwrap();
            assert!(r.holds);
        }
        assert!(matches!(
            verify_upper_estimate(&t, &params, &b(5), &b(1), &b(7), &b(1), 6, LhsExponent::Real, &Policy::default()),
            Err(Error::PreconditionGap(_))
        ));
        assert!(verify_upper_estimate(&t, &params, &b(5), &b(1), &b(5), &b(1), 5, LhsExponent::Real, &Policy::default()).is_err());
    }

    #[test]
    fn growth_factor_is_multiplicative() {
        let params = measure::params_unchecked(3, 1, &RInterval::point(q(1, 2), 128)).unwrap();
        let h = RInterval::new(q(17, 10), q(171, 100), 128);
        let f6 = rhs_growth_factor(&params, &h, 6).unwrap();
        let f7 = rhs_growth_factor(&params, &h, 7).unwrap();
        let f1 = rhs_growth_factor(&params, &h, 1).unwrap();
        assert!(f6.mul(&f1).overlaps(&f7));
    }
}
