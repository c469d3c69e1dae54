//! Algebraic numbers given by a minimal polynomial and an isolating box.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::interval::{Policy, RInterval};
use crate::irreducible::{self, Irreducibility};
use crate::poly::IntPoly;
use crate::rat::{self, qi};
use crate::roots::{self, Cluster, RootSolver};

/// A designated root θ of an irreducible polynomial with a certified
/// enclosure, its height, and the clusters holding its conjugates.
#[derive(Debug, Clone)]
pub struct ApproxTarget {
    pub field: NumberField,
    /// Real part of the isolating box.
    pub re: RInterval,
    /// Imaginary part; `[0, 0]` for real targets.
    pub im: RInterval,
    pub height: RInterval,
    pub is_real: bool,
    /// Certified clusters of the other `d - 1` roots.
    pub others: Vec<Cluster>,
    pub irreducibility: Irreducibility,
    pub bits: u32,
}

impl ApproxTarget {
    /// The real root of `min_poly` closest to `near`. Irreducibility is
    /// certified modulo small primes; pass a certificate explicitly with
    /// [`ApproxTarget::real_root_with`] when it comes from elsewhere.
    pub fn real_root_near(min_poly: &IntPoly, near: &BigRational, policy: &Policy) -> Result<ApproxTarget> {
        let irr = irreducible::certify_mod_p(min_poly, irreducible::DEFAULT_PRIME_LIMIT);
        if !irr.is_certified() && min_poly.deg0() > 1 {
            return Err(Error::ParameterViolation(format!(
                "irreducibility of {min_poly} could not be certified modulo primes up to {}",
                irreducible::DEFAULT_PRIME_LIMIT
            )));
        }
        ApproxTarget::real_root_with(min_poly, near, irr, policy)
    }

    pub fn real_root_with(min_poly: &IntPoly, near: &BigRational, irr: Irreducibility, policy: &Policy) -> Result<ApproxTarget> {
        let field = NumberField::new(min_poly)?;
        let f = field.min_poly().clone();
        let mut solver = RootSolver::new(&f)?;
        policy.run("real root isolation", |bits| {
            let Some(cl) = solver.clusters(bits) else { return Ok(None) };
            if cl.iter().any(|c| c.count != 1) {
                return Ok(None);
            }
            let mut best: Option<(usize, BigRational, BigRational, BigRational)> = None;
            for (i, c) in cl.iter().enumerate() {
                let d = &c.disks[0];
                if d.im.abs() > d.radius {
                    continue;
                }
                let lo = &d.re - &d.radius;
                let hi = &d.re + &d.radius;
                let (sl, sh) = (f.sign_at(&lo), f.sign_at(&hi));
                let real = sl == 0 || sh == 0 || sl != sh;
                if !real {
                    continue;
                }
                let dist = (&d.re - near).abs();
                if best.as_ref().map_or(true, |b| dist < b.3) {
                    best = Some((i, lo, hi, dist));
                }
            }
            let Some((idx, lo, hi, _)) = best else {
                return Err(Error::ParameterViolation(format!("{f} has no real root")));
            };
            let others: Vec<Cluster> = cl.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, c)| c.clone()).collect();
            let m = roots::mahler_measure(&f, &cl, bits + 16);
            let height = height_from_measure(&m, f.deg0(), bits)?;
            let (lo, hi) = roots::refine_real(&f, &lo, &hi, &rat::pow2(-(bits as i64)));
            Ok(Some(ApproxTarget {
                field: field.clone(),
                re: RInterval::new(lo, hi, bits.max(4 * bits)),
                im: RInterval::zero(bits),
                height,
                is_real: true,
                others,
                irreducibility: irr,
                bits,
            }))
        })
    }

    /// The first non-real root with positive imaginary part.
    pub fn complex_root(min_poly: &IntPoly, policy: &Policy) -> Result<ApproxTarget> {
        let irr = irreducible::certify_mod_p(min_poly, irreducible::DEFAULT_PRIME_LIMIT);
        let field = NumberField::new(min_poly)?;
        let f = field.min_poly().clone();
        let mut solver = RootSolver::new(&f)?;
        policy.run("complex root isolation", |bits| {
            let Some(cl) = solver.clusters(bits) else { return Ok(None) };
            if cl.iter().any(|c| c.count != 1) {
                return Ok(None);
            }
            let Some(idx) = cl.iter().position(|c| c.disks[0].im > c.disks[0].radius) else {
                return Err(Error::ParameterViolation(format!("{f} has no non-real root")));
            };
            let d = &cl[idx].disks[0];
            let others = cl.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, c)| c.clone()).collect();
            let m = roots::mahler_measure(&f, &cl, bits + 16);
            Ok(Some(ApproxTarget {
                field: field.clone(),
                re: d.re_interval(bits),
                im: d.im_interval(bits),
                height: height_from_measure(&m, f.deg0(), bits)?,
                is_real: false,
                others,
                irreducibility: irr,
                bits,
            }))
        })
    }

    /// Assembles a real target from externally certified pieces.
    pub fn from_parts(
        min_poly: &IntPoly,
        lo: BigRational,
        hi: BigRational,
        others: Vec<Cluster>,
        height: RInterval,
        irreducibility: Irreducibility,
        bits: u32,
    ) -> Result<ApproxTarget> {
        let field = NumberField::new(min_poly)?;
        Ok(ApproxTarget {
            field,
            re: RInterval::new(lo, hi, 4 * bits),
            im: RInterval::zero(bits),
            height,
            is_real: true,
            others,
            irreducibility,
            bits,
        })
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn min_poly(&self) -> &IntPoly {
        self.field.min_poly()
    }

    /// A copy whose real isolating interval has width at most `2^-bits`.
    pub fn refined(&self, bits: u32) -> ApproxTarget {
        assert!(self.is_real, "only real targets are refined");
        let w = rat::pow2(-(bits as i64));
        if self.re.width() <= w {
            return self.clone();
        }
        let (lo, hi) = roots::refine_real(self.min_poly(), self.re.lo(), self.re.hi(), &w);
        let mut t = self.clone();
        t.re = RInterval::new(lo, hi, bits.max(self.re.bits()) + 64);
        t
    }

    /// Enclosure of `|θ - r|` for a rational `r`, intersecting the direct
    /// bound from the isolating interval with the product formula
    /// `|f(r)| / (|lead| ∏ |r - θ_j|)` over the conjugates.
    pub fn gap(&self, r: &BigRational, bits: u32) -> Result<RInterval> {
        if !self.is_real {
            return Err(Error::ParameterViolation("gap is defined for real targets".into()));
        }
        let f = self.min_poly();
        let fr = f.eval_rat(r);
        if fr.is_zero() {
            return Ok(RInterval::zero(bits));
        }
        let formula = self.gap_formula(&fr, r, bits);
        let mut t = self.clone();
        let mut extra = 0u32;
        loop {
            let direct = if t.re.gt_q(r) {
                Some(RInterval::new(t.re.lo() - r, t.re.hi() - r, bits))
            } else if t.re.lt_q(r) {
                Some(RInterval::new(r - t.re.hi(), r - t.re.lo(), bits))
            } else {
                None
            };
            match (&formula, direct) {
                (Some(fm), Some(dr)) => return Ok(fm.intersect(&dr).unwrap_or(dr)),
                (Some(fm), None) => return Ok(fm.clone()),
                (None, Some(dr)) => {
                    if dr.width() * rat::pow2(bits as i64 / 2) <= dr.lo().clone() || extra > 4 * bits {
                        return Ok(dr);
                    }
                }
                (None, None) => {}
            }
            extra += 64;
            t = t.refined(t.bits + extra);
        }
    }

    fn gap_formula(&self, fr: &BigRational, r: &BigRational, bits: u32) -> Option<RInterval> {
        let f = self.min_poly();
        let mut den = RInterval::from_bigint(&f.lead().abs(), bits);
        for c in &self.others {
            let d = c.distance_from(r, bits)?;
            den = den.mul(&d.pow_u(c.count as u64));
        }
        RInterval::point(fr.abs(), bits).div(&den).ok()
    }

    /// The lower bound `½ (2 H^2)^{-d^2}` on `|Im θ|` for non-real θ.
    pub fn im_lower_bound(&self) -> Result<BigRational> {
        if self.is_real {
            return Err(Error::NotNonReal);
        }
        let d = self.degree() as i64;
        let h = self.height.hi();
        let base = h * h * BigRational::from_integer(BigInt::from(2));
        Ok(rat::pow_i(&base, -(d * d)) / BigRational::from_integer(BigInt::from(2)))
    }
}

/// `M^{1/d}` clipped below at 1.
pub fn height_from_measure(m: &RInterval, d: usize, bits: u32) -> Result<RInterval> {
    let h = if d == 1 { m.clone() } else { m.nth_root(d as u64)? };
    let one = BigRational::one();
    if h.lo() < &one {
        let hi = if h.hi() < &one { one.clone() } else { h.hi().clone() };
        return Ok(RInterval::new(one, hi, bits));
    }
    Ok(h.with_bits(bits))
}

/// Minimal polynomial of the root of a monic integer polynomial `g` of
/// degree at most 5 lying in the box `(re, im)`.
///
/// Small degree lets us factor completely: a polynomial of degree at most 5
/// without linear or quadratic factors is irreducible.
pub fn minimal_poly_in_box(g: &IntPoly, re: &RInterval, im: &RInterval, policy: &Policy) -> Result<IntPoly> {
    let mut g = squarefree_part(g);
    assert!(g.deg0() <= 5, "small degrees only");
    'outer: loop {
        if g.deg0() <= 1 || irreducible::certify_mod_p(&g, 50).is_certified() {
            return Ok(g);
        }
        let boxes = roots::isolate_roots(&g, policy)?;
        let hit = |b: &roots::RootBox| b.re.overlaps(re) && b.im.overlaps(im);
        let target = boxes.iter().position(hit).ok_or_else(|| Error::ParameterViolation("box holds no root".into()))?;
        // linear factors
        for (i, b) in boxes.iter().enumerate() {
            if !b.is_real {
                continue;
            }
            let k = rat::ceil(b.re.lo());
            if qi(&k) <= *b.re.hi() && g.eval_bigint(&k).is_zero() {
                let lin = IntPoly::linear_root(&k);
                if i == target {
                    return Ok(lin);
                }
                g = g.div_exact(&lin).expect("root divides");
                continue 'outer;
            }
        }
        // monic quadratic factors from pairs of roots
        let bits = boxes[0].re.bits();
        for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                let (a, b) = (&boxes[i], &boxes[j]);
                let s_re = a.re.add(&b.re);
                let p_re = a.re.mul(&b.re).sub(&a.im.mul(&b.im));
                let s = rat::ceil(s_re.lo());
                let p = rat::ceil(p_re.lo());
                if qi(&s) > *s_re.hi() || qi(&p) > *p_re.hi() {
                    continue;
                }
                let quad = IntPoly::new(alloc::vec![p, -s, BigInt::one()]);
                if let Some(rest) = g.div_exact(&quad) {
                    if i == target || j == target {
                        return Ok(quad);
                    }
                    g = rest;
                    continue 'outer;
                }
            }
        }
        let _ = bits;
        return Ok(g);
    }
}

fn squarefree_part(g: &IntPoly) -> IntPoly {
    g.squarefree().into_iter().fold(IntPoly::one(), |acc, (h, _)| acc.mul(&h))
}

/// Outcome of the height-identity checks on a batch of samples.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeightAxiomReport {
    pub rationals_checked: usize,
    pub sums_checked: usize,
    pub lower_bounds_checked: usize,
    /// Cases at equality (roots of unity, say) that enclosures cannot order.
    pub tight: usize,
    pub failures: Vec<String>,
}

impl HeightAxiomReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `H(p/q) = max(|p|, |q|)` on the given rationals.
pub fn check_rational_heights(samples: &[BigRational], policy: &Policy, report: &mut HeightAxiomReport) -> Result<()> {
    for x in samples {
        let f = IntPoly::new(alloc::vec![-x.numer().clone(), x.denom().clone()]);
        let h = roots::height(&f, policy)?;
        let expect = qi(&rat::rational_height(x));
        report.rationals_checked += 1;
        if !h.contains(&expect) {
            report.failures.push(format!("H({}) enclosure misses {}", rat::rat_to_string(x), expect));
        }
        // |x| >= H(x)^{-1}
        if !x.is_zero() && x.abs() < qi(&rat::rational_height(x)).recip() {
            report.failures.push(format!("lower bound fails at {}", rat::rat_to_string(x)));
        }
    }
    Ok(())
}

/// For monic quadratics `f, g` with designated roots α (largest real part of
/// `f`) and β (likewise for `g`): `H(α+β) <= 2 H(α) H(β)` and
/// `|α| >= H(α)^{-2}`.
pub fn check_quadratic_pair(f: &IntPoly, g: &IntPoly, policy: &Policy, report: &mut HeightAxiomReport) -> Result<()> {
    let ra = pick_root(f, policy)?;
    let rb = pick_root(g, policy)?;
    let ha = roots::height(&minimal_poly_in_box(f, &ra.re, &ra.im, policy)?, policy)?;
    let hb = roots::height(&minimal_poly_in_box(g, &rb.re, &rb.im, policy)?, policy)?;
    // the sum's polynomial: Res_y(f(y), g(t - y))
    let sum_poly = sum_resultant(f, g);
    let (sre, sim) = (ra.re.add(&rb.re), ra.im.add(&rb.im));
    let m = minimal_poly_in_box(&sum_poly, &sre, &sim, policy)?;
    let hs = roots::height(&m, policy)?;
    let rhs = ha.mul(&hb).mul_int(2);
    report.sums_checked += 1;
    if !hs.le(&rhs) {
        if !rhs.lt(&hs) {
            report.tight += 1;
            return Ok(());
        }
        report.failures.push(format!("H(α+β) <= 2H(α)H(β) not certified for {f} and {g}"));
    }
    for (r, h, p) in [(&ra, &ha, f), (&rb, &hb, g)] {
        let dmin = minimal_poly_in_box(p, &r.re, &r.im, policy)?.deg0() as u64;
        let abs2 = r.re.sqr().add(&r.im.sqr());
        if abs2.contains_zero() {
            continue;
        }
        let lower = h.pow_u(2 * dmin).recip()?;
        report.lower_bounds_checked += 1;
        if !lower.le(&abs2) {
            if !abs2.lt(&lower) {
                report.tight += 1;
                continue;
            }
            report.failures.push(format!("|α| >= H(α)^-d not certified for {p}"));
        }
    }
    Ok(())
}

fn pick_root(f: &IntPoly, policy: &Policy) -> Result<roots::RootBox> {
    let mut b = roots::isolate_roots(f, policy)?;
    b.sort_by(|x, y| y.re.lo().cmp(x.re.lo()).then(y.im.lo().cmp(x.im.lo())));
    Ok(b.remove(0))
}

/// `Res_y(f(y), g(t - y))`, whose roots are the sums of roots of `f` and
/// `g`. Computed by evaluation at integer points and interpolation.
pub fn sum_resultant(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let n = f.deg0() * g.deg0();
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|t| {
            // g(t - y) as a polynomial in y
            let shifted = g.reflect().shift(&-t);
            f.resultant(&shifted)
        })
        .collect();
    let mut r = interpolate(&xs, &ys);
    if r.lead().is_negative() {
        r = r.neg();
    }
    r
}

/// Lagrange interpolation with integer output (exact by construction).
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPoly {
    let n = xs.len();
    let mut acc: Vec<BigRational> = alloc::vec![BigRational::zero(); n];
    for i in 0..n {
        let mut basis: Vec<BigRational> = alloc::vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut nb = alloc::vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                nb[k + 1] += c;
                nb[k] -= c * qi(&xs[j]);
            }
            basis = nb;
            denom *= qi(&(&xs[i] - &xs[j]));
        }
        let scale = qi(&ys[i]) / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    IntPoly::new(acc.into_iter().map(|c| c.to_integer()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn im_bound_examples() {
        let pol = Policy::default();
        let t = ApproxTarget::complex_root(&IntPoly::from_i64(&[1, 0, 1]), &pol).unwrap();
        let b = t.im_lower_bound().unwrap();
        assert!(b <= q(1, 32) && b > q(1, 33));
        assert!(t.im.gt_q(&b));
        let t = ApproxTarget::complex_root(&IntPoly::from_i64(&[1, -1, 1]), &pol).unwrap();
        assert!(t.im.gt_q(&t.im_lower_bound().unwrap()));
        let r = ApproxTarget::real_root_near(&IntPoly::from_i64(&[-2, 0, 1]), &q(1, 1), &pol).unwrap();
        assert!(matches!(r.im_lower_bound(), Err(Error::NotNonReal)));
    }

    #[test]
    fn gap_by_formula_and_directly() {
        let pol = Policy::default();
        let t = ApproxTarget::real_root_near(&IntPoly::from_i64(&[-2, 0, 1]), &q(1, 1), &pol).unwrap();
        // |sqrt2 - 3/2| = 0.0857864...
        let g = t.gap(&q(3, 2), 128).unwrap();
        assert!(g.gt_q(&q(857864, 10_000_000)) && g.lt_q(&q(857865, 10_000_000)));
        let g = t.gap(&q(99, 70), 128).unwrap();
        // 99/70 - sqrt2 = 7.21519...e-5
        assert!(g.gt_q(&q(721519, 10_000_000_000)) && g.lt_q(&q(721520, 10_000_000_000)));
    }

    #[test]
    fn sum_resultant_of_square_roots() {
        // sqrt2 + sqrt3 has minimal polynomial t^4 - 10t^2 + 1
        let r = sum_resultant(&IntPoly::from_i64(&[-2, 0, 1]), &IntPoly::from_i64(&[-3, 0, 1]));
        assert_eq!(r, IntPoly::from_i64(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn height_axioms_on_a_few_pairs() {
        let pol = Policy::default();
        let mut rep = HeightAxiomReport::default();
        check_rational_heights(&[q(3, 2), q(-5, 7), q(2, 1)], &pol, &mut rep).unwrap();
        check_quadratic_pair(&IntPoly::from_i64(&[-2, 0, 1]), &IntPoly::from_i64(&[-3, 0, 1]), &pol, &mut rep).unwrap();
        check_quadratic_pair(&IntPoly::from_i64(&[-2, 0, 1]), &IntPoly::from_i64(&[-2, 0, 1]), &pol, &mut rep).unwrap();
        check_quadratic_pair(&IntPoly::from_i64(&[1, 1, 1]), &IntPoly::from_i64(&[2, 0, 1]), &pol, &mut rep).unwrap();
        assert!(rep.all_hold(), "{:?}", rep.failures);
        assert_eq!(rep.sums_checked, 3);
    }
}
