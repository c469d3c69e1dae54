//! Certified complex root enclosures.
//!
//! Approximations come from Aberth's iteration in a small multiprecision
//! float type seeded from the Newton polygon, so roots of wildly different
//! magnitudes (a root near `2^27508` next to roots near `2^-1250`) are found
//! quickly. Nothing numeric is trusted: the approximations `z_i` are turned
//! into inclusion disks with the Weierstrass corrections
//! `w_i = f(z_i) / (lead ∏_{j≠i} (z_i - z_j))`. The matrix
//! `diag(z) - 1 w^T` has characteristic polynomial `f / lead`, and the
//! column Gershgorin disks of that matrix sit inside `D(z_i, n |w_i|)`.
//! A connected union of `m` of those disks that avoids all others holds
//! exactly `m` roots counted with multiplicity.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{self, Policy, RInterval};
use crate::poly::IntPoly;
use crate::rat::{self, qi};

// ---------------------------------------------------------------------------
// numeric floats, used for approximations only

/// `m * 2^e` with `m` kept to a fixed number of bits.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Fl {
    m: BigInt,
    e: i64,
}

impl Fl {
    fn zero() -> Fl {
        Fl { m: BigInt::zero(), e: 0 }
    }

    fn norm(m: BigInt, e: i64, p: i64) -> Fl {
        if m.is_zero() {
            return Fl::zero();
        }
        let b = m.bits() as i64;
        if b > p {
            let s = b - p;
            Fl { m: m >> (s as usize), e: e + s }
        } else {
            Fl { m, e }
        }
    }

    fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// `2^(mag-1) <= |x| < 2^mag`.
    fn mag(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 4
        } else {
            self.m.bits() as i64 + self.e
        }
    }

    fn from_int(n: &BigInt, p: i64) -> Fl {
        Fl::norm(n.clone(), 0, p)
    }

    fn from_f64(x: f64, p: i64) -> Fl {
        if x == 0.0 || !x.is_finite() {
            return Fl::zero();
        }
        let bits = x.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        let m = BigInt::from(mant);
        Fl::norm(if x < 0.0 { -m } else { m }, e, p)
    }

    fn to_rat(&self) -> BigRational {
        interval::from_dyadic(self.m.clone(), self.e)
    }

    fn shl(&self, k: i64) -> Fl {
        Fl { m: self.m.clone(), e: self.e + k }
    }

    fn neg(&self) -> Fl {
        Fl { m: -&self.m, e: self.e }
    }

    fn add(&self, o: &Fl, p: i64) -> Fl {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (ma, mb) = (self.mag(), o.mag());
        if ma - mb > p + 2 {
            return self.clone();
        }
        if mb - ma > p + 2 {
            return o.clone();
        }
        let e = self.e.min(o.e);
        let m = (&self.m << ((self.e - e) as usize)) + (&o.m << ((o.e - e) as usize));
        Fl::norm(m, e, p)
    }

    fn sub(&self, o: &Fl, p: i64) -> Fl {
        self.add(&o.neg(), p)
    }

    fn mul(&self, o: &Fl, p: i64) -> Fl {
        Fl::norm(&self.m * &o.m, self.e + o.e, p)
    }

    fn div(&self, o: &Fl, p: i64) -> Fl {
        if self.is_zero() || o.is_zero() {
            return Fl::zero();
        }
        let shift = (p + 2 + o.m.bits() as i64 - self.m.bits() as i64).max(0);
        Fl::norm((&self.m << (shift as usize)) / &o.m, self.e - o.e - shift, p)
    }

    /// Rough `log2 |x|` for seeding.
    fn log2_approx(&self) -> f64 {
        let b = self.m.bits() as i64;
        let top = if b > 53 { &self.m >> ((b - 53) as usize) } else { self.m.clone() };
        let t = top.magnitude().iter_u64_digits().next().unwrap_or(1) as f64;
        libm::log2(t) + (b.max(53) - 53) as f64 + self.e as f64
    }
}

/// A complex number with [`Fl`] parts.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Cx {
    re: Fl,
    im: Fl,
}

impl Cx {
    fn zero() -> Cx {
        Cx { re: Fl::zero(), im: Fl::zero() }
    }

    fn real(x: Fl) -> Cx {
        Cx { re: x, im: Fl::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Cx, p: i64) -> Cx {
        Cx { re: self.re.add(&o.re, p), im: self.im.add(&o.im, p) }
    }

    fn sub(&self, o: &Cx, p: i64) -> Cx {
        Cx { re: self.re.sub(&o.re, p), im: self.im.sub(&o.im, p) }
    }

    fn mul(&self, o: &Cx, p: i64) -> Cx {
        Cx {
            re: self.re.mul(&o.re, p).sub(&self.im.mul(&o.im, p), p),
            im: self.re.mul(&o.im, p).add(&self.im.mul(&o.re, p), p),
        }
    }

    fn abs2(&self, p: i64) -> Fl {
        self.re.mul(&self.re, p).add(&self.im.mul(&self.im, p), p)
    }

    fn div(&self, o: &Cx, p: i64) -> Cx {
        // scale the divisor to unit size first so abs2 stays representable
        let k = o.re.mag().max(o.im.mag());
        let os = Cx { re: o.re.shl(-k), im: o.im.shl(-k) };
        let d = os.abs2(p);
        let conj = Cx { re: os.re.clone(), im: os.im.neg() };
        let n = self.mul(&conj, p);
        Cx { re: n.re.div(&d, p).shl(-k), im: n.im.div(&d, p).shl(-k) }
    }

    fn mag(&self) -> i64 {
        self.re.mag().max(self.im.mag())
    }
}

fn horner_with_derivative(c: &[Fl], z: &Cx, p: i64) -> (Cx, Cx) {
    let n = c.len() - 1;
    let mut b = Cx::real(c[n].clone());
    let mut d = Cx::zero();
    for k in (0..n).rev() {
        d = d.mul(z, p).add(&b, p);
        b = b.mul(z, p).add(&Cx::real(c[k].clone()), p);
    }
    (b, d)
}

/// Initial approximations from the upper convex hull of `(i, log2 |a_i|)`.
fn newton_polygon_seeds(f: &IntPoly, p: i64) -> Vec<Cx> {
    let n = f.deg0();
    let pts: Vec<(usize, f64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| (i, Fl::from_int(a, 64).log2_approx()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (i1, l1) = hull[hull.len() - 2];
            let (i2, l2) = hull[hull.len() - 1];
            // drop the middle point if it lies below the chord
            let cross = (l2 - l1) * (pt.0 - i1) as f64 - (pt.1 - l1) * (i2 - i1) as f64;
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::with_capacity(n);
    let tau = 2.0 * core::f64::consts::PI;
    for w in hull.windows(2) {
        let (i, li) = w[0];
        let (k, lk) = w[1];
        let cnt = k - i;
        let lr = (li - lk) / cnt as f64;
        let ip = libm::floor(lr);
        let frac = libm::exp2(lr - ip);
        for j in 0..cnt {
            let ang = tau * (j as f64) / (cnt as f64) + tau * (i as f64) / (n as f64) + 0.7;
            let re = Fl::from_f64(frac * libm::cos(ang), p).shl(ip as i64);
            let im = Fl::from_f64(frac * libm::sin(ang), p).shl(ip as i64);
            out.push(Cx { re, im });
        }
    }
    out
}

/// Aberth iteration in place. Returns true when the last sweep moved no
/// approximation by more than about `2^-(p-8)` relative.
fn aberth(c: &[Fl], z: &mut [Cx], p: i64, max_iter: usize) -> bool {
    let n = z.len();
    let one = Cx::real(Fl::from_int(&BigInt::one(), p));
    for _ in 0..max_iter {
        let mut done = true;
        for i in 0..n {
            let (v, dv) = horner_with_derivative(c, &z[i], p);
            if v.is_zero() {
                continue;
            }
            let ratio = if dv.is_zero() { Cx::real(Fl::from_int(&BigInt::one(), p).shl(z[i].mag() - 20)) } else { v.div(&dv, p) };
            let mut s = Cx::zero();
            for j in 0..n {
                if j != i {
                    let d = z[i].sub(&z[j], p);
                    if !d.is_zero() {
                        s = s.add(&one.div(&d, p), p);
                    }
                }
            }
            let den = one.sub(&ratio.mul(&s, p), p);
            let w = if den.is_zero() { ratio.clone() } else { ratio.div(&den, p) };
            z[i] = z[i].sub(&w, p);
            let scale = z[i].mag().max(-(p / 2));
            if !w.is_zero() && w.mag() > scale - (p - 8) {
                done = false;
            }
        }
        if done {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// certified disks

/// Closed disk with exact dyadic center and rational radius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disk {
    pub re: BigRational,
    pub im: BigRational,
    pub radius: BigRational,
}

impl Disk {
    fn dist2(&self, o: &Disk) -> BigRational {
        let dr = &self.re - &o.re;
        let di = &self.im - &o.im;
        &dr * &dr + &di * &di
    }

    fn overlaps(&self, o: &Disk) -> bool {
        let s = &self.radius + &o.radius;
        self.dist2(o) <= &s * &s
    }

    /// Enclosure of `|center|`.
    pub fn center_abs(&self, bits: u32) -> RInterval {
        let a2 = &self.re * &self.re + &self.im * &self.im;
        RInterval::point(a2, bits).sqrt().expect("nonnegative")
    }

    /// Enclosure of `{|z| : z in disk}`.
    pub fn modulus(&self, bits: u32) -> RInterval {
        let c = self.center_abs(bits);
        let lo = c.lo() - &self.radius;
        let lo = if lo.is_negative() { BigRational::zero() } else { lo };
        RInterval::new(lo, c.hi() + &self.radius, bits)
    }

    pub fn re_interval(&self, bits: u32) -> RInterval {
        RInterval::new(&self.re - &self.radius, &self.re + &self.radius, bits)
    }

    pub fn im_interval(&self, bits: u32) -> RInterval {
        RInterval::new(&self.im - &self.radius, &self.im + &self.radius, bits)
    }

    /// Does the disk lie in the open disk `|z - c| < r`?
    pub fn inside(&self, c_re: &BigRational, c_im: &BigRational, r: &BigRational) -> bool {
        let slack = r - &self.radius;
        if !slack.is_positive() {
            return false;
        }
        let dr = &self.re - c_re;
        let di = &self.im - c_im;
        &dr * &dr + &di * &di < &slack * &slack
    }

    /// Is the disk disjoint from the closed disk `|z - c| <= r`?
    pub fn outside(&self, c_re: &BigRational, c_im: &BigRational, r: &BigRational) -> bool {
        let s = r + &self.radius;
        let dr = &self.re - c_re;
        let di = &self.im - c_im;
        &dr * &dr + &di * &di > &s * &s
    }

    /// Lower bound on `|x - z|` for a real point `x` and every `z` in the
    /// disk, or `None` if `x` may lie inside.
    pub fn distance_from(&self, x: &BigRational, bits: u32) -> Option<RInterval> {
        let dr = x - &self.re;
        let d2 = &dr * &dr + &self.im * &self.im;
        let d = RInterval::point(d2, bits).sqrt().expect("nonnegative");
        let lo = d.lo() - &self.radius;
        if !lo.is_positive() {
            return None;
        }
        Some(RInterval::new(lo, d.hi() + &self.radius, bits))
    }
}

/// A connected union of inclusion disks holding exactly `count` roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub disks: Vec<Disk>,
    pub count: usize,
}

impl Cluster {
    /// Enclosure of the moduli of the roots in the cluster.
    pub fn modulus(&self, bits: u32) -> RInterval {
        let mut it = self.disks.iter().map(|d| d.modulus(bits));
        let first = it.next().expect("cluster has a disk");
        it.fold(first, |acc, m| acc.hull(&m))
    }

    /// Every disk lies in the open disk `|z - c| < r`.
    pub fn inside(&self, c_re: &BigRational, c_im: &BigRational, r: &BigRational) -> bool {
        self.disks.iter().all(|d| d.inside(c_re, c_im, r))
    }

    pub fn outside(&self, c_re: &BigRational, c_im: &BigRational, r: &BigRational) -> bool {
        self.disks.iter().all(|d| d.outside(c_re, c_im, r))
    }

    /// Largest radius among the disks.
    pub fn max_radius(&self) -> BigRational {
        self.disks.iter().map(|d| d.radius.clone()).max().unwrap_or_default()
    }

    /// Enclosure of `|x - z|` over roots `z` in the cluster, if `x` is
    /// certainly outside.
    pub fn distance_from(&self, x: &BigRational, bits: u32) -> Option<RInterval> {
        let mut acc: Option<RInterval> = None;
        for d in &self.disks {
            let v = d.distance_from(x, bits)?;
            acc = Some(match acc {
                None => v,
                Some(a) => a.hull(&v),
            });
        }
        acc
    }
}

/// `|f(z)|^2` exactly, for a dyadic complex point `z`.
fn abs2_exact(f: &IntPoly, re: &BigRational, im: &BigRational) -> BigRational {
    // z = (x + iy) / 2^s; Horner on the homogenized polynomial keeps
    // everything in Gaussian integers
    let s = re.denom().bits().max(im.denom().bits()).saturating_sub(1) as usize;
    let x = re.numer() * (BigInt::one() << s) / re.denom();
    let y = im.numer() * (BigInt::one() << s) / im.denom();
    let n = f.deg0();
    let (mut ar, mut ai) = (BigInt::zero(), BigInt::zero());
    for (k, a) in f.coeffs().iter().enumerate().rev() {
        let nr = &ar * &x - &ai * &y;
        let ni = &ar * &y + &ai * &x;
        ar = nr + (a << (s * (n - k)));
        ai = ni;
    }
    let num = &ar * &ar + &ai * &ai;
    BigRational::new(num, BigInt::one() << (2 * s * n))
}

/// Inclusion disks `D(z_i, n |w_i|)`; `None` if two approximations
/// coincide.
fn inclusion_disks(f: &IntPoly, z: &[(BigRational, BigRational)], bits: u32) -> Option<Vec<Disk>> {
    let n = z.len();
    let lead = qi(&f.lead());
    let lead2 = &lead * &lead;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let (zr, zi) = &z[i];
        let num = interval::round_rational(&abs2_exact(f, zr, zi), bits, true);
        let mut den = lead2.clone();
        for (j, (wr, wi)) in z.iter().enumerate() {
            if j == i {
                continue;
            }
            let dr = zr - wr;
            let di = zi - wi;
            let d2 = &dr * &dr + &di * &di;
            if d2.is_zero() {
                return None;
            }
            den = interval::round_rational(&(den * d2), bits, false);
        }
        let w2 = interval::round_rational(&(num / den), bits, true);
        let w = RInterval::point(w2, bits).sqrt().expect("nonnegative");
        let radius = w.hi() * qi(&BigInt::from(n));
        out.push(Disk { re: zr.clone(), im: zi.clone(), radius: interval::round_rational(&radius, bits, true) });
    }
    Some(out)
}

fn components(disks: &[Disk]) -> Vec<Vec<usize>> {
    let n = disks.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if disks[i].overlaps(&disks[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if index[r] == usize::MAX {
            index[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index[r]].push(i);
    }
    groups
}

/// Root finder for one polynomial, keeping approximations between
/// precision levels.
#[derive(Debug, Clone)]
pub struct RootSolver {
    f: IntPoly,
    /// `f / t^zeros`.
    core: IntPoly,
    zeros: usize,
    approx: Vec<Cx>,
}

impl RootSolver {
    pub fn new(f: &IntPoly) -> Result<RootSolver> {
        if f.is_zero() {
            return Err(Error::ParameterViolation("the zero polynomial has no isolated roots".into()));
        }
        let zeros = f.coeffs().iter().take_while(|a| a.is_zero()).count();
        let core = IntPoly::new(f.coeffs()[zeros..].to_vec());
        Ok(RootSolver { f: f.clone(), core, zeros, approx: Vec::new() })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.f
    }

    /// Certified clusters at the given working precision.
    pub fn clusters(&mut self, bits: u32) -> Option<Vec<Cluster>> {
        let p = bits as i64;
        let n = self.core.deg0();
        let mut disks = Vec::new();
        if n > 0 {
            if self.approx.len() != n {
                self.approx = newton_polygon_seeds(&self.core, p);
            }
            let c: Vec<Fl> = self.core.coeffs().iter().map(|a| Fl::from_int(a, p)).collect();
            let iters = 100 + 4 * n + bits as usize / 4;
            aberth(&c, &mut self.approx, p, iters);
            let pts: Vec<(BigRational, BigRational)> = self.approx.iter().map(|z| (z.re.to_rat(), z.im.to_rat())).collect();
            disks = inclusion_disks(&self.core, &pts, bits)?;
        }
        let mut counts: Vec<usize> = vec![1; disks.len()];
        if self.zeros > 0 {
            disks.push(Disk { re: BigRational::zero(), im: BigRational::zero(), radius: BigRational::zero() });
            counts.push(self.zeros);
        }
        let comps = components(&disks);
        let mut out: Vec<Cluster> = comps
            .into_iter()
            .map(|g| Cluster { count: g.iter().map(|&i| counts[i]).sum(), disks: g.into_iter().map(|i| disks[i].clone()).collect() })
            .collect();
        out.sort_by(cluster_order);
        Some(out)
    }
}

fn cluster_order(a: &Cluster, b: &Cluster) -> Ordering {
    let (da, db) = (&a.disks[0], &b.disks[0]);
    da.re.cmp(&db.re).then(da.im.cmp(&db.im))
}

/// Clusters of `f` at increasing precision until `accept` is satisfied.
pub fn clusters_until(
    f: &IntPoly,
    policy: &Policy,
    what: &str,
    mut accept: impl FnMut(&[Cluster], u32) -> bool,
) -> Result<(Vec<Cluster>, u32)> {
    let mut solver = RootSolver::new(f)?;
    policy.run(what, |bits| {
        Ok(match solver.clusters(bits) {
            Some(c) if accept(&c, bits) => Some((c, bits)),
            _ => None,
        })
    })
}

// ---------------------------------------------------------------------------
// isolation

/// An isolated root: a box with exactly one distinct root of the given
/// multiplicity. Real roots have `im = [0, 0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBox {
    pub re: RInterval,
    pub im: RInterval,
    pub multiplicity: usize,
    pub is_real: bool,
}

impl RootBox {
    fn disjoint(&self, o: &RootBox) -> bool {
        !(self.re.overlaps(&o.re) && self.im.overlaps(&o.im))
    }
}

/// Classifies a single-root disk of a squarefree real polynomial `g`.
fn classify(g: &IntPoly, d: &Disk, mult: usize, bits: u32) -> RootBox {
    let real_box = |lo: BigRational, hi: BigRational| RootBox {
        re: RInterval::new(lo, hi, bits),
        im: RInterval::zero(bits),
        multiplicity: mult,
        is_real: true,
    };
    if d.im.abs() > d.radius {
        return RootBox { re: d.re_interval(bits), im: d.im_interval(bits), multiplicity: mult, is_real: false };
    }
    let lo = &d.re - &d.radius;
    let hi = &d.re + &d.radius;
    if lo == hi {
        return real_box(lo, hi);
    }
    let (sl, sh) = (g.sign_at(&lo), g.sign_at(&hi));
    if sl == 0 {
        return real_box(lo.clone(), lo);
    }
    if sh == 0 {
        return real_box(hi.clone(), hi);
    }
    if sl != sh {
        return real_box(lo, hi);
    }
    // exactly one root in the disk and no sign change: it is not real
    RootBox { re: d.re_interval(bits), im: d.im_interval(bits), multiplicity: mult, is_real: false }
}

/// Isolates all roots of `f`. Boxes are pairwise disjoint, multiplicities
/// sum to `deg f`, real roots get real boxes.
pub fn isolate_roots(f: &IntPoly, policy: &Policy) -> Result<Vec<RootBox>> {
    if f.is_zero() {
        return Err(Error::ParameterViolation("cannot isolate roots of the zero polynomial".into()));
    }
    let factors = f.squarefree();
    let mut solvers: Vec<(RootSolver, usize)> =
        factors.iter().map(|(g, m)| RootSolver::new(g).map(|s| (s, *m))).collect::<Result<_>>()?;
    policy.run("root isolation", |bits| {
        let mut boxes: Vec<RootBox> = Vec::new();
        for (solver, m) in solvers.iter_mut() {
            let Some(cl) = solver.clusters(bits) else { return Ok(None) };
            if cl.iter().any(|c| c.count != 1) {
                return Ok(None);
            }
            let g = solver.poly().clone();
            for c in &cl {
                boxes.push(classify(&g, &c.disks[0], *m, bits));
            }
        }
        for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                if !boxes[i].disjoint(&boxes[j]) {
                    return Ok(None);
                }
            }
        }
        boxes.sort_by(|a, b| a.re.lo().cmp(b.re.lo()).then(a.im.lo().cmp(b.im.lo())));
        Ok(Some(boxes))
    })
}

/// Shrinks an isolating interval `[lo, hi]` of a simple real root of `g`
/// (with a sign change or an exact root at an endpoint) to width at most
/// `width`.
///
/// Newton steps from the midpoint propose a small bracket, which is kept
/// only if `g` changes sign across it; otherwise the interval is bisected.
/// Trial points are dyadic so the numbers stay short.
pub fn refine_real(g: &IntPoly, lo: &BigRational, hi: &BigRational, width: &BigRational) -> (BigRational, BigRational) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let sl = g.sign_at(&lo);
    if sl == 0 {
        return (lo.clone(), lo);
    }
    if g.sign_at(&hi) == 0 {
        return (hi.clone(), hi);
    }
    let dg = g.derivative();
    let two = qi(&BigInt::from(2));
    let mut shrink = 4i64;
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let sm = g.sign_at(&mid);
        if sm == 0 {
            return (mid.clone(), mid);
        }
        if let Some((a, b)) = newton_bracket(g, &dg, &mid, (&lo, &hi), width, shrink, sl) {
            if a == b {
                return (a.clone(), a);
            }
            (lo, hi) = (a, b);
            shrink = (shrink * 2).min(1 << 20);
            continue;
        }
        shrink = 4;
        if sm == sl {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// A bracket of half-width about `w 2^-shrink` around the Newton iterate,
/// certified by a sign change.
fn newton_bracket(
    g: &IntPoly,
    dg: &IntPoly,
    x: &BigRational,
    (lo, hi): (&BigRational, &BigRational),
    width: &BigRational,
    shrink: i64,
    sl: i32,
) -> Option<(BigRational, BigRational)> {
    let w = &(hi - lo);
    let dv = dg.eval_rat(x);
    if dv.is_zero() {
        return None;
    }
    let y = x - g.eval_rat(x) / dv;
    // grid step: a power of two below the proposed half-width
    let e = (rat::bitlen(w.numer()) as i64 - rat::bitlen(w.denom()) as i64 - shrink).max(
        rat::bitlen(width.numer()) as i64 - rat::bitlen(width.denom()) as i64 - 3,
    );
    let step = rat::pow2(e);
    let yc = qi(&rat::floor(&(&y / &step))) * &step;
    let a = (&yc - &step).max(lo.clone());
    let b = (&yc + &step).min(hi.clone());
    if a >= b || &(&b - &a) >= w {
        return None;
    }
    let (sa, sb) = (g.sign_at(&a), g.sign_at(&b));
    if sa == 0 {
        return Some((a.clone(), a));
    }
    if sb == 0 {
        return Some((b.clone(), b));
    }
    (sa == sl && sb == -sl).then_some((a, b))
}

/// Mahler measure `|lead| ∏ max(1, |z|)` from certified clusters.
pub fn mahler_measure(f: &IntPoly, clusters: &[Cluster], bits: u32) -> RInterval {
    let one = RInterval::one(bits);
    let mut m = RInterval::from_bigint(&f.lead().abs(), bits);
    for c in clusters {
        let r = c.modulus(bits).max(&one);
        m = m.mul(&r.pow_u(c.count as u64));
    }
    m
}

/// Absolute multiplicative height `M(f)^{1/d}` of a root of the primitive
/// irreducible polynomial `f`.
pub fn height(f: &IntPoly, policy: &Policy) -> Result<RInterval> {
    let f = f.primitive_part();
    let d = f.degree().filter(|&d| d >= 1).ok_or_else(|| Error::ParameterViolation("height needs degree at least 1".into()))?;
    let (cl, bits) = clusters_until(&f, policy, "height", |_, _| true)?;
    let m = mahler_measure(&f, &cl, bits + 16);
    let h = if d == 1 { m } else { m.nth_root(d as u64)? };
    let one = rat::q(1, 1);
    // H >= 1 always; tighten the enclosure accordingly
    if h.lo() < &one {
        let hi = if h.hi() < &one { one.clone() } else { h.hi().clone() };
        return Ok(RInterval::new(one, hi, bits));
    }
    Ok(h.with_bits(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn pol() -> Policy {
        Policy::default()
    }

    #[test]
    fn sqrt_two_roots_are_real() {
        let r = isolate_roots(&IntPoly::from_i64(&[-2, 0, 1]), &pol()).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|b| b.is_real && b.multiplicity == 1));
        assert!(r[1].re.gt_q(&q(141421, 100000)) && r[1].re.lt_q(&q(141422, 100000)));
        assert!(r[0].re.lt_q(&q(-141421, 100000)) && r[0].re.gt_q(&q(-141422, 100000)));
    }

    #[test]
    fn double_root_multiplicity() {
        let r = isolate_roots(&IntPoly::from_i64(&[1, -2, 1]), &pol()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 2);
        assert!(r[0].re.contains(&q(1, 1)));
    }

    #[test]
    fn cubic_with_root_near_five() {
        let f = IntPoly::from_i64(&[1, 0, -5, 1]);
        let r = isolate_roots(&f, &pol()).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|b| b.is_real));
        assert!(r.iter().filter(|b| b.re.gt_q(&q(4, 1)) && b.re.lt_q(&q(6, 1))).count() == 1);
    }

    #[test]
    fn complex_roots_and_zero_root() {
        let f = IntPoly::from_i64(&[0, 1, 0, 1]); // t^3 + t
        let r = isolate_roots(&f, &pol()).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r.iter().filter(|b| b.is_real).count(), 1);
        assert!(r.iter().any(|b| !b.is_real && b.im.contains(&q(1, 1))));
    }

    #[test]
    fn heights_of_simple_numbers() {
        let h = height(&IntPoly::from_i64(&[-3, 2]), &pol()).unwrap();
        assert!(h.contains(&q(3, 1)) && h.width() < q(1, 1_000_000_000_000_000_000));
        let h = height(&IntPoly::from_i64(&[0, 1]), &pol()).unwrap();
        assert!(h.contains(&q(1, 1)));
        let h = height(&IntPoly::from_i64(&[-2, 0, 0, 1]), &pol()).unwrap();
        // 2^(1/3) = 1.259921...
        assert!(h.gt_q(&q(1259921, 1000000)) && h.lt_q(&q(1259922, 1000000)));
    }

    #[test]
    fn huge_parameter_family_splits() {
        // t^23 - a t^22 + 1 with a = 2^27508
        let a = BigInt::one() << 27508usize;
        let mut c = vec![BigInt::zero(); 24];
        c[0] = BigInt::one();
        c[22] = -a.clone();
        c[23] = BigInt::one();
        let f = IntPoly::new(c);
        let mut s = RootSolver::new(&f).unwrap();
        let cl = s.clusters(128).unwrap();
        let zero = BigRational::zero();
        let small: usize = cl.iter().filter(|c| c.inside(&zero, &zero, &q(1, 1))).map(|c| c.count).sum();
        assert_eq!(small, 22);
        assert_eq!(cl.iter().map(|c| c.count).sum::<usize>(), 23);
        // the remaining root is the real one with a sign change around a
        assert_ne!(f.sign_at(&(qi(&a) - q(1, 2))), f.sign_at(&(qi(&a) + q(1, 2))));
    }
}
