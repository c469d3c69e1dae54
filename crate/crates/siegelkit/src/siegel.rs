//! Auxiliary polynomials: the vanishing system, a small integer solution,
//! and the y-primitive polynomial built from it.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::interval::RInterval;
use crate::linalg;
use crate::measure::{self, MeasureParams};
use crate::poly::{BiPoly, IntPoly};
use crate::rat::{self, qi};
use crate::target::ApproxTarget;

/// `k` linear forms over `Q(θ)` in the `N = (D+1)(e+1)` unknowns `p_ij`,
/// indexed `i (e+1) + j`. Form `l` is multiplied through by `θ^l` so every
/// exponent is non-negative.
#[derive(Debug, Clone)]
pub struct SiegelSystem {
    pub field: NumberField,
    pub forms: Vec<Vec<FieldElement>>,
    pub k: usize,
    pub e: usize,
    pub big_d: usize,
    pub n_unknowns: usize,
    /// `dM / (N - dM)`.
    pub mu: BigRational,
    /// `2^D / √D · H^{D+e}`, an upper bound for the heights of the forms.
    pub height_bound: RInterval,
    pub theta_shifted: bool,
}

impl SiegelSystem {
    pub fn m(&self) -> usize {
        self.forms.len()
    }

    /// `(√N ℋ)^μ`.
    pub fn siegel_bound(&self) -> Result<RInterval> {
        let bits = self.height_bound.bits();
        let n = RInterval::from_int(self.n_unknowns as i64, bits).sqrt()?;
        n.mul(&self.height_bound).powr(&RInterval::point(self.mu.clone(), bits))
    }

    /// Each form expanded over the power basis, denominators cleared row by
    /// row: `d·M` integer rows of length `N`.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        let d = self.field.degree();
        let mut rows = Vec::with_capacity(d * self.m());
        for form in &self.forms {
            for c in 0..d {
                let row: Vec<BigRational> = form.iter().map(|x| x.coords[c].clone()).collect();
                rows.push(clear_denominators(&row));
            }
        }
        rows
    }
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| (x * qi(&l)).to_integer()).collect()
}

/// `[x]` for a positive enclosure, or an error when the enclosure straddles
/// an integer.
fn certified_floor(x: &RInterval) -> Result<BigInt> {
    let lo = rat::floor(x.lo());
    if rat::floor(x.hi()) == lo || (qi(&(&lo + 1)) == *x.hi()) {
        Ok(lo)
    } else {
        Err(Error::UndecidableAtPrecision { what: "floor of δk".into(), bits: x.bits() })
    }
}

pub fn build_vanishing_system(target: &ApproxTarget, k: usize, e: usize, delta: &RInterval) -> Result<SiegelSystem> {
    let d = target.degree();
    if e < 1 || e >= d {
        return Err(Error::ParameterViolation(format!("need 1 <= e < d, got e = {e}, d = {d}")));
    }
    if k < 1 {
        return Err(Error::ParameterViolation("k must be positive".into()));
    }
    let dk = certified_floor(&delta.mul_int(k as i64))?;
    let big_d = dk.to_usize().ok_or_else(|| Error::ParameterViolation("D too large".into()))?;
    if big_d < 1 {
        return Err(Error::ParameterViolation("D = [δk] must be at least 1".into()));
    }
    let n = (big_d + 1) * (e + 1);
    if n <= d * k {
        return Err(Error::ParameterViolation(format!("N = {n} unknowns do not exceed dk = {}", d * k)));
    }
    let field = target.field.clone();
    let powers: Vec<FieldElement> = (0..=big_d + e).map(|m| field.theta_pow(m)).collect();
    let mut forms = Vec::with_capacity(k);
    for l in 0..k {
        let mut form = Vec::with_capacity(n);
        for i in 0..=big_d {
            let b = rat::binom(i as u64, l as u64);
            for j in 0..=e {
                if b.is_zero() {
                    form.push(field.zero());
                } else {
                    form.push(field.scale(&powers[i + j], &qi(&b)));
                }
            }
        }
        forms.push(form);
    }
    let bits = target.bits.max(128);
    let h = RInterval::point(target.height.hi().clone(), bits);
    let dd = RInterval::from_int(big_d as i64, bits);
    let height_bound = RInterval::from_int(2, bits)
        .pow_u(big_d as u64)
        .div(&dd.sqrt()?)?
        .mul(&h.pow_u((big_d + e) as u64));
    let dm = (d * k) as i64;
    Ok(SiegelSystem {
        field,
        forms,
        k,
        e,
        big_d,
        n_unknowns: n,
        mu: rat::q(dm, n as i64 - dm),
        height_bound,
        theta_shifted: true,
    })
}

/// A nonzero kernel vector, with a flag telling whether the enumeration
/// that produced it was complete (so its max-norm is the least possible).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallSolution {
    pub vector: Vec<BigInt>,
    pub max_norm: BigInt,
    pub minimal: bool,
}

/// Enumeration budget (search nodes) for systems with at most 24 unknowns,
/// where the search is meant to be exhaustive.
pub const EXHAUSTIVE_NODES: usize = 200_000;
/// Budget for larger systems: only short combinations of the reduced basis.
pub const SHORT_NODES: usize = 4_000;

pub fn small_solution(system: &SiegelSystem, bound: &RInterval) -> Result<SmallSolution> {
    small_solution_rows(&system.integer_rows(), system.n_unknowns, bound.hi())
}

/// Finds a nonzero integer `x` with `A x = 0` and `max |x_i| <= bound`.
///
/// The integer kernel is LLL-reduced and then searched (Fincke-Pohst) for the
/// vector of least max-norm, ties broken by the lexicographic order of the
/// sign-normalized vector. Failing the bound is reported as
/// [`Error::CertifiedBoundMiss`], with `proven` set when the search was
/// complete.
pub fn small_solution_rows(rows: &[Vec<BigInt>], n: usize, bound: &BigRational) -> Result<SmallSolution> {
    if *bound < BigRational::one() {
        return Err(Error::ParameterViolation("bound must be at least 1".into()));
    }
    let kernel = linalg::integer_kernel(rows, n);
    if kernel.is_empty() {
        return Err(Error::CertifiedBoundMiss { proven: true, detail: "the system has no nonzero solution".into() });
    }
    let basis = linalg::lll(&kernel);
    let budget = if n <= 24 { EXHAUSTIVE_NODES } else { SHORT_NODES };
    let (vector, minimal) = enumerate_short(&basis, n, budget);
    let max_norm = linalg::max_norm(&vector);
    if qi(&max_norm) > *bound {
        return Err(Error::CertifiedBoundMiss {
            proven: minimal,
            detail: format!("least max-norm found {max_norm} exceeds {}", rat::rat_to_string(bound)),
        });
    }
    Ok(SmallSolution { vector, max_norm, minimal })
}

fn better(a: &[BigInt], an: &BigInt, b: &Option<(Vec<BigInt>, BigInt)>) -> bool {
    match b {
        None => true,
        Some((bv, bn)) => an < bn || (an == bn && a < bv.as_slice()),
    }
}

/// Fincke-Pohst enumeration over the lattice spanned by `basis`, within the
/// Euclidean ball that contains every vector of max-norm at most the best
/// one found so far.
fn enumerate_short(basis: &[Vec<BigInt>], n: usize, budget: usize) -> (Vec<BigInt>, bool) {
    let r = basis.len();
    let mut best: Option<(Vec<BigInt>, BigInt)> = None;
    for b in basis {
        let v = linalg::canonical_sign(b.clone());
        let m = linalg::max_norm(&v);
        if better(&v, &m, &best) {
            best = Some((v, m));
        }
    }
    let (mu, norms) = linalg::gram_schmidt_data(basis);
    let nn = BigInt::from(n as u64);
    let radius2 = |best: &Option<(Vec<BigInt>, BigInt)>| {
        let m = &best.as_ref().unwrap().1;
        qi(&(&nn * m * m))
    };
    let mut x = vec![BigInt::zero(); r];
    let mut nodes = 0usize;
    let complete = search(r, &basis, &mu, &norms, &mut x, BigRational::zero(), &mut best, &radius2, &mut nodes, budget);
    (best.unwrap().0, complete)
}

#[allow(clippy::too_many_arguments)]
fn search(
    level: usize,
    basis: &[Vec<BigInt>],
    mu: &[Vec<BigRational>],
    norms: &[BigRational],
    x: &mut [BigInt],
    partial: BigRational,
    best: &mut Option<(Vec<BigInt>, BigInt)>,
    radius2: &dyn Fn(&Option<(Vec<BigInt>, BigInt)>) -> BigRational,
    nodes: &mut usize,
    budget: usize,
) -> bool {
    *nodes += 1;
    if *nodes > budget {
        return false;
    }
    if level == 0 {
        if x.iter().all(|c| c.is_zero()) {
            return true;
        }
        let n = basis[0].len();
        let mut v = vec![BigInt::zero(); n];
        for (c, b) in x.iter().zip(basis) {
            if !c.is_zero() {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += c * bi;
                }
            }
        }
        let v = linalg::canonical_sign(v);
        let m = linalg::max_norm(&v);
        if better(&v, &m, best) {
            *best = Some((v, m));
        }
        return true;
    }
    let i = level - 1;
    let r = x.len();
    let mut c = BigRational::zero();
    for j in i + 1..r {
        if !x[j].is_zero() {
            c -= &mu[j][i] * qi(&x[j]);
        }
    }
    let room = radius2(best) - &partial;
    if room < BigRational::zero() {
        return true;
    }
    // |x_i - c| <= s with s^2 = room / |b*_i|^2; enlarge s to an integer
    let s2 = room / &norms[i];
    let s = rat::ceil(&s2).sqrt() + 1;
    let lo = rat::ceil(&(&c - qi(&s)));
    let hi = rat::floor(&(&c + qi(&s)));
    // visit candidates from the center outwards
    let center = rat::floor(&(&c + rat::q(1, 2)));
    let mut order: Vec<BigInt> = Vec::new();
    let mut step = BigInt::zero();
    loop {
        let a = &center + &step;
        let b = &center - &step - 1;
        let mut any = false;
        if a >= lo && a <= hi {
            order.push(a);
            any = true;
        }
        if b >= lo && b <= hi {
            order.push(b);
            any = true;
        }
        if !any && (&center + &step > hi) && (&center - &step - 1 < lo) {
            break;
        }
        step += 1;
    }
    for xi in order {
        let t = qi(&xi) - &c;
        let p = &partial + &t * &t * &norms[i];
        if p > radius2(best) {
            continue;
        }
        x[i] = xi;
        if !search(i, basis, mu, norms, x, p, best, radius2, nodes, budget) {
            x[i] = BigInt::zero();
            return false;
        }
    }
    x[i] = BigInt::zero();
    true
}

/// The y-primitive auxiliary polynomial with its certificate data.
#[derive(Debug, Clone)]
pub struct AuxPoly {
    pub p: BiPoly,
    pub k: usize,
    pub e: usize,
    pub big_d: usize,
    pub params: MeasureParams,
    pub c1: RInterval,
    /// `c₁ (2H)^{αk}`.
    pub size_bound: RInterval,
    /// The Siegel bound `(√N ℋ)^μ` met by the raw solution.
    pub siegel_bound: RInterval,
    pub raw_max_norm: BigInt,
    pub minimal: bool,
    /// The y-content removed from the raw solution.
    pub removed_factor: IntPoly,
    /// SHA-256 of the polynomial together with its vanishing data.
    pub vanishing_hash: String,
}

impl AuxPoly {
    pub fn size_within_bound(&self) -> bool {
        qi(&self.p.size()) <= *self.size_bound.lo()
    }

    pub fn is_y_primitive(&self) -> bool {
        is_y_primitive(&self.p)
    }
}

/// `c₁ = 2^{e + α/(2δ)} (e+1)^{α/(2δ)} H^{αe/δ}` for an upper bound `h` of
/// the height.
pub fn c1(params: &MeasureParams, h: &RInterval) -> Result<RInterval> {
    let bits = params.delta.bits();
    let a2d = params.alpha_over_2delta();
    let e = RInterval::from_int(params.e as i64, bits);
    let two = RInterval::from_int(2, bits);
    let t1 = two.powr(&e.add(&a2d))?;
    let t2 = e.add_q(&rat::q(1, 1)).powr(&a2d)?;
    let t3 = h.powr(&params.alpha.mul(&e).div(&params.delta)?)?;
    Ok(t1.mul(&t2).mul(&t3))
}

pub fn construct_aux_poly(target: &ApproxTarget, k: usize, e: usize, epsilon: &RInterval) -> Result<AuxPoly> {
    let d = target.degree();
    let params = measure::params_unchecked(d as u64, e as u64, epsilon)?;
    if k < 1 {
        return Err(Error::ParameterViolation("k must be positive".into()));
    }
    let system = build_vanishing_system(target, k, e, &params.delta)?;
    let siegel_bound = system.siegel_bound()?;
    let sol = small_solution(&system, &siegel_bound)?;
    let raw = bipoly_from_vector(&sol.vector, e);
    let (p, removed_factor) = y_primitivize(&raw);
    let data = vanishing_data(&target.field, &p, k);
    if data.iter().any(|x| !x.is_zero()) {
        return Err(Error::TheoremViolation("auxiliary polynomial does not vanish to order k".into()));
    }
    let bits = params.delta.bits();
    let h = RInterval::point(target.height.hi().clone(), bits);
    let c1v = c1(&params, &h)?;
    let size_bound = c1v.mul(&h.mul_int(2).powr(&params.alpha.mul_int(k as i64))?);
    let hash = hash_certificate(&p, k, e, system.big_d, &data);
    Ok(AuxPoly {
        p,
        k,
        e,
        big_d: system.big_d,
        params,
        c1: c1v,
        size_bound,
        siegel_bound,
        raw_max_norm: sol.max_norm,
        minimal: sol.minimal,
        removed_factor,
        vanishing_hash: hash,
    })
}

fn bipoly_from_vector(v: &[BigInt], e: usize) -> BiPoly {
    let mut p = BiPoly::new();
    for (idx, c) in v.iter().enumerate() {
        if !c.is_zero() {
            p.add_term((idx / (e + 1)) as u32, (idx % (e + 1)) as u32, c.clone());
        }
    }
    p
}

/// `P_l(θ, θ)` for `l < k`, in power-basis coordinates.
pub fn vanishing_data(field: &NumberField, p: &BiPoly, k: usize) -> Vec<FieldElement> {
    let top = p.x_degree().unwrap_or(0) as usize + p.y_degree().unwrap_or(0) as usize;
    let powers: Vec<FieldElement> = (0..=top).map(|m| field.theta_pow(m)).collect();
    (0..k)
        .map(|l| {
            let mut acc = field.zero();
            for (&(i, j), c) in p.terms() {
                let (i, j) = (i as usize, j as usize);
                if i < l {
                    continue;
                }
                let w = qi(&(c * rat::binom(i as u64, l as u64)));
                acc = field.add(&acc, &field.scale(&powers[i - l + j], &w));
            }
            acc
        })
        .collect()
}

fn hash_certificate(p: &BiPoly, k: usize, e: usize, big_d: usize, data: &[FieldElement]) -> String {
    let mut h = Sha256::new();
    h.update(format!("k={k};e={e};D={big_d};").as_bytes());
    for ((i, j), c) in p.terms() {
        h.update(format!("{i},{j}:{c};").as_bytes());
    }
    for (l, x) in data.iter().enumerate() {
        h.update(format!("l={l}:").as_bytes());
        for c in &x.coords {
            h.update(rat::rat_to_string(c).as_bytes());
            h.update(b",");
        }
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Splits `P = Q(y) P̃` with `Q` the primitive gcd of the coefficient
/// polynomials of the powers of `x` (positive leading coefficient).
pub fn y_primitivize(p: &BiPoly) -> (BiPoly, IntPoly) {
    let cols = p.y_columns();
    let mut g = IntPoly::zero();
    for c in cols.iter().filter(|c| !c.is_zero()) {
        g = if g.is_zero() { c.primitive_part() } else { g.gcd(c) };
    }
    if g.is_zero() {
        return (p.clone(), IntPoly::one());
    }
    let mut g = g.primitive_part();
    if g.lead().is_negative() {
        g = g.neg();
    }
    let reduced: Vec<IntPoly> =
        cols.iter().map(|c| if c.is_zero() { IntPoly::zero() } else { c.div_exact(&g).expect("gcd divides") }).collect();
    (BiPoly::from_y_columns(&reduced), g)
}

pub fn is_y_primitive(p: &BiPoly) -> bool {
    let (_, g) = y_primitivize(p);
    g.deg0() == 0 && g.lead().abs() == BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Policy;
    use crate::rat::q;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn single_rational_form() {
        let s = small_solution_rows(&[big(&[1, 2])], 2, &q(283, 100)).unwrap();
        assert_eq!(s.vector, big(&[2, -1]));
        assert!(s.minimal);
        // zero row: every unit vector solves it
        let s = small_solution_rows(&[big(&[0, 0, 0])], 3, &q(1, 1)).unwrap();
        assert_eq!(s.max_norm, BigInt::one());
        // bound too small is a proven miss
        let err = small_solution_rows(&[big(&[1, 2])], 2, &q(3, 2)).unwrap_err();
        assert!(matches!(err, Error::CertifiedBoundMiss { proven: true, .. }));
    }

    #[test]
    fn exhaustive_agrees_with_box_scan() {
        // x + 3y - 5z = 0 and 2x - y + 4z + w = 0
        let rows = [big(&[1, 3, -5, 0]), big(&[2, -1, 4, 1])];
        let s = small_solution_rows(&rows, 4, &q(100, 1)).unwrap();
        let mut best: Option<(Vec<BigInt>, BigInt)> = None;
        for a in -8i64..=8 {
            for b in -8i64..=8 {
                for c in -8i64..=8 {
                    for d in -8i64..=8 {
                        let v = big(&[a, b, c, d]);
                        if v.iter().all(|x| x.is_zero()) || rows.iter().any(|r| !linalg::mat_vec(&[r.clone()], &v)[0].is_zero()) {
                            continue;
                        }
                        let v = linalg::canonical_sign(v);
                        let m = linalg::max_norm(&v);
                        if better(&v, &m, &best) {
                            best = Some((v, m));
                        }
                    }
                }
            }
        }
        assert_eq!(Some((s.vector, s.max_norm)), best);
    }

    fn cubic_target() -> ApproxTarget {
        ApproxTarget::real_root_near(&IntPoly::from_i64(&[1, 0, -5, 1]), &q(5, 1), &Policy::default()).unwrap()
    }

    #[test]
    fn system_shape() {
        let t = cubic_target();
        let s = build_vanishing_system(&t, 2, 1, &RInterval::point(q(7, 4), 128)).unwrap();
        assert_eq!((s.big_d, s.n_unknowns, s.m()), (3, 8, 2));
        assert_eq!(s.mu, q(6, 2));
        let err = build_vanishing_system(&t, 4, 1, &RInterval::point(q(1, 1), 128)).unwrap_err();
        assert!(matches!(err, Error::ParameterViolation(_)));
    }

    #[test]
    fn aux_poly_vanishes_and_is_small() {
        let t = cubic_target();
        for k in 1..=3 {
            let a = construct_aux_poly(&t, k, 1, &RInterval::point(q(1, 2), 128)).unwrap();
            assert!(vanishing_data(&t.field, &a.p, k).iter().all(|x| x.is_zero()));
            assert!(a.is_y_primitive());
            assert!(a.size_within_bound());
            assert!(qi(&a.raw_max_norm) <= *a.siegel_bound.hi());
            assert!(a.p.x_degree().unwrap() as usize <= a.big_d && a.p.y_degree().unwrap() <= 1);
        }
    }

    #[test]
    fn deterministic() {
        let t = cubic_target();
        let a = construct_aux_poly(&t, 2, 1, &RInterval::point(q(1, 2), 128)).unwrap();
        let b = construct_aux_poly(&t, 2, 1, &RInterval::point(q(1, 2), 128)).unwrap();
        assert_eq!(a.p, b.p);
        assert_eq!(a.vanishing_hash, b.vanishing_hash);
    }

    #[test]
    fn y_primitive_split() {
        // (y + 1) x
        let p = BiPoly::from_terms([((1, 0), BigInt::from(1)), ((1, 1), BigInt::from(1))]);
        let (pt, g) = y_primitivize(&p);
        assert_eq!(g, IntPoly::from_i64(&[1, 1]));
        assert_eq!(pt, BiPoly::from_terms([((1, 0), BigInt::from(1))]));
        let p = BiPoly::from_terms([((1, 0), BigInt::from(3)), ((0, 1), BigInt::from(2))]);
        let (pt, g) = y_primitivize(&p);
        assert_eq!(g, IntPoly::one());
        assert_eq!(pt, p);
    }
}
