//! Exact integer linear algebra: fraction-free determinants and ranks,
//! integer kernel lattices and LLL reduction.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rat::qi;

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank of an integer matrix over the rationals (fraction-free).
pub fn rank(m: &[Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[i][j] * &a[r][c] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// A basis of the lattice `{x in Z^n : A x = 0}` obtained by unimodular
/// column operations. Rows of the result are basis vectors.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    // u[c] is column c of the unimodular transform
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|c| (0..n).map(|r| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut p = 0usize;
    for row in 0..m.len() {
        if p >= n {
            break;
        }
        loop {
            // pick the column in p..n with the smallest nonzero entry
            let mut best: Option<usize> = None;
            for c in p..n {
                if !m[row][c].is_zero() && best.map_or(true, |b| m[row][c].abs() < m[row][b].abs()) {
                    best = Some(c);
                }
            }
            let Some(b) = best else { break };
            swap_cols(&mut m, &mut u, p, b);
            let mut done = true;
            for c in p + 1..n {
                if m[row][c].is_zero() {
                    continue;
                }
                let f = m[row][c].div_floor(&m[row][p]);
                col_axpy(&mut m, &mut u, c, p, &f);
                if !m[row][c].is_zero() {
                    done = false;
                }
            }
            if done {
                p += 1;
                break;
            }
        }
    }
    (p..n).map(|c| u[c].clone()).collect()
}

fn swap_cols(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in m.iter_mut() {
        r.swap(a, b);
    }
    u.swap(a, b);
}

/// column c -= f * column p
fn col_axpy(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], c: usize, p: usize, f: &BigInt) {
    for r in m.iter_mut() {
        let t = &r[p] * f;
        r[c] -= t;
    }
    let (lo, hi) = u.split_at_mut(c.max(p));
    let (src, dst) = if c > p { (&lo[p], &mut hi[0]) } else { (&hi[0], &mut lo[c]) };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        *d -= s * f;
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).fold(BigRational::zero(), |s, t| s + t)
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = b.len();
    let mut bs: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<BigRational> = b[i].iter().map(qi).collect();
        for j in 0..i {
            let bi: Vec<BigRational> = b[i].iter().map(qi).collect();
            let m = if norms[j] == BigRational::zero() { BigRational::zero() } else { dot_q(&bi, &bs[j]) / &norms[j] };
            for (x, y) in v.iter_mut().zip(&bs[j]) {
                *x -= &m * y;
            }
            mu[i][j] = m;
        }
        norms.push(dot_q(&v, &v));
        bs.push(v);
    }
    (bs, mu, norms)
}

/// LLL reduction (parameter 3/4) of linearly independent integer rows.
///
/// Integral variant: Gram-Schmidt data is kept as the integers
/// `d_i = prod_{j<=i} |b*_j|^2` and `lambda_ij = d_j mu_ij`, so no rational
/// arithmetic is needed.
pub fn lll(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut b: Vec<Vec<BigInt>> = basis.to_vec();
    let n = b.len();
    if n <= 1 {
        return b;
    }
    // d[i + 1] holds d_i; d[0] = 1
    let mut d = vec![BigInt::zero(); n + 1];
    d[0] = BigInt::one();
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    d[1] = dot(&b[0], &b[0]);
    let mut k = 1usize;
    let mut kmax = 0usize;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "lll needs independent rows");
                    d[k + 1] = u;
                }
            }
        }
        reduce(&mut b, &mut lam, &d, k, k - 1);
        let lhs = BigInt::from(4) * &d[k + 1] * &d[k - 1];
        let rhs = BigInt::from(3) * &d[k] * &d[k] - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
        if lhs < rhs {
            swap(&mut b, &mut lam, &mut d, k, kmax);
            k = k.saturating_sub(1).max(1);
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                reduce(&mut b, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
    b
}

fn reduce(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    let two = BigInt::from(2);
    if (&two * &lam[k][l]).abs() <= d[l + 1] {
        return;
    }
    let q = (&two * &lam[k][l] + &d[l + 1]).div_floor(&(&two * &d[l + 1]));
    let bl = b[l].clone();
    for (x, y) in b[k].iter_mut().zip(&bl) {
        *x -= &q * y;
    }
    lam[k][l] -= &q * &d[l + 1];
    for i in 0..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swap(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &mut [BigInt], k: usize, kmax: usize) {
    b.swap(k, k - 1);
    for j in 0..k - 1 {
        let t = lam[k][j].clone();
        lam[k][j] = core::mem::replace(&mut lam[k - 1][j], t);
    }
    let l = lam[k][k - 1].clone();
    let bb = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
        lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k + 1];
    }
    d[k] = bb;
}

/// Gram-Schmidt coefficients `mu` and squared norms `|b*_i|^2`.
pub fn gram_schmidt_data(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let (_, mu, norms) = gram_schmidt(b);
    (mu, norms)
}

/// Euclidean norm squared.
pub fn norm2(v: &[BigInt]) -> BigInt {
    dot(v, v)
}

/// Max-norm of an integer vector.
pub fn max_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Multiplies `v` by -1 if needed so that its first nonzero entry is
/// positive.
pub fn canonical_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if let Some(f) = v.iter().find(|x| !x.is_zero()) {
        if f.is_negative() {
            for x in v.iter_mut() {
                *x = -core::mem::take(x);
            }
        }
    }
    v
}

/// `A x` for an integer matrix and vector.
pub fn mat_vec(a: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|r| dot(r, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn determinant_and_rank() {
        assert_eq!(det(&m(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(det(&m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])), BigInt::from(-2));
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y + 3z = 0 has kernel lattice of rank 2 and determinant sqrt(14)
        let a = m(&[&[1, 2, 3]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(|x| x.is_zero()));
        }
        let g = vec![
            vec![dot(&k[0], &k[0]), dot(&k[0], &k[1])],
            vec![dot(&k[1], &k[0]), dot(&k[1], &k[1])],
        ];
        assert_eq!(det(&g), BigInt::from(14));
        // 2x + 4y = 0: kernel generated by (2, -1), not (4, -2)
        let k = integer_kernel(&m(&[&[2, 4]]), 2);
        assert_eq!(canonical_sign(k[0].clone()), m(&[&[2, -1]])[0]);
    }

    #[test]
    fn lll_shortens() {
        let b = m(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        let r = lll(&b);
        assert_eq!(det(&r).abs(), det(&b).abs());
        assert!(norm2(&r[0]) <= BigInt::from(3));
    }

    #[test]
    fn lll_recovers_short_vector_from_skewed_basis() {
        // basis of Z^3 disguised by a unimodular transform
        let b = m(&[&[1, 0, 0], &[1000, 1, 0], &[1000 * 37 + 5, 37, 1]]);
        let r = lll(&b);
        assert_eq!(det(&r).abs(), BigInt::one());
        assert!(r.iter().all(|v| norm2(v) == BigInt::one()));
    }
}
