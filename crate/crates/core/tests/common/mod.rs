//! Oracles shared by the integration tests. Nothing here calls the
//! library's formulas or its rank engine.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Mat = Vec<Vec<i64>>;

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![0; c]; r]
}

fn to_q(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

/// Reduced row echelon form over Q; returns the matrix and pivot columns.
fn rref(m: &[Vec<i64>], cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a = to_q(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = BigRational::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    rref(m, cols).1.len()
}

/// Basis of the right kernel, scaled to integers.
pub fn kernel(m: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let (a, pivots) = rref(m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -a[row][f].clone();
            }
            let lcm = v.iter().fold(BigInt::one(), |acc, q| num_integer_lcm(&acc, q.denom()));
            v.iter()
                .map(|q| {
                    let z = q * BigRational::from_integer(lcm.clone());
                    i64::try_from(z.to_integer()).expect("kernel entry fits")
                })
                .collect()
        })
        .collect()
}

fn num_integer_lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let g = gcd(a.clone(), b.clone());
    a / &g * b
}

fn gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    if a < BigInt::zero() {
        -a
    } else {
        a
    }
}

pub fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Rank of the vectors `a v` for `a` running over `maps` (each `d x d`,
/// flattened row-major).
fn image_rank(maps: &[Vec<i64>], d: usize, v: &[i64]) -> usize {
    let images: Mat = maps
        .iter()
        .map(|flat| {
            let a: Mat = flat[..d * d].chunks(d).map(<[i64]>::to_vec).collect();
            apply(&a, v)
        })
        .collect();
    if images.is_empty() {
        0
    } else {
        rank(&images)
    }
}

/// Tangent map `a -> (a v, a x - x a)` of `GL(V)` at `(v, x)`; columns are
/// the entries of `a` in row-major order.
fn enhanced_tangent(v: Option<&[i64]>, x: &[Vec<i64>]) -> Mat {
    let d = x.len();
    let mut rows = Vec::new();
    if let Some(v) = v {
        for i in 0..d {
            let mut row = vec![0; d * d];
            for j in 0..d {
                row[i * d + j] = v[j];
            }
            rows.push(row);
        }
    }
    for i in 0..d {
        for k in 0..d {
            // (a x - x a)_{ik} = sum_j a_ij x_jk - sum_j x_ij a_jk
            let mut row = vec![0; d * d];
            for j in 0..d {
                row[i * d + j] += x[j][k];
                row[j * d + k] -= x[i][j];
            }
            rows.push(row);
        }
    }
    rows
}

pub fn nilpotent_orbit_dim(x: &[Vec<i64>]) -> usize {
    if x.is_empty() {
        return 0;
    }
    rank(&enhanced_tangent(None, x))
}

pub fn enhanced_orbit_dim(v: &[i64], x: &[Vec<i64>]) -> usize {
    if x.is_empty() {
        return 0;
    }
    rank(&enhanced_tangent(Some(v), x))
}

/// `dim E^x v` with `E^x` the centralizer of `x`.
pub fn centralizer_vector_dim(v: &[i64], x: &[Vec<i64>]) -> usize {
    let d = x.len();
    if d == 0 {
        return 0;
    }
    let ker = kernel(&enhanced_tangent(None, x), d * d);
    image_rank(&ker, d, v)
}

/// Tangent map `(a, b) -> (b x - x a, a y - y b [, a v])` for `x: V -> V'`
/// (`d' x d`) and `y: V' -> V`; columns are `a` then `b`, row-major.
fn pair_tangent(x: &[Vec<i64>], y: &[Vec<i64>], v: Option<&[i64]>, d: usize, dp: usize) -> Mat {
    let cols = d * d + dp * dp;
    let a = |i: usize, j: usize| i * d + j;
    let b = |i: usize, j: usize| d * d + i * dp + j;
    let mut rows = Vec::new();
    for k in 0..dp {
        for l in 0..d {
            let mut row = vec![0; cols];
            for j in 0..dp {
                row[b(k, j)] += x[j][l];
            }
            for j in 0..d {
                row[a(j, l)] -= x[k][j];
            }
            rows.push(row);
        }
    }
    for k in 0..d {
        for l in 0..dp {
            let mut row = vec![0; cols];
            for j in 0..d {
                row[a(k, j)] += y[j][l];
            }
            for j in 0..dp {
                row[b(j, l)] -= y[k][j];
            }
            rows.push(row);
        }
    }
    if let Some(v) = v {
        for i in 0..d {
            let mut row = vec![0; cols];
            for j in 0..d {
                row[a(i, j)] = v[j];
            }
            rows.push(row);
        }
    }
    rows
}

pub fn pair_orbit_dim(x: &[Vec<i64>], y: &[Vec<i64>], d: usize, dp: usize) -> usize {
    if d + dp == 0 {
        return 0;
    }
    rank(&pair_tangent(x, y, None, d, dp))
}

pub fn enhanced_pair_orbit_dim(v: &[i64], x: &[Vec<i64>], y: &[Vec<i64>], d: usize, dp: usize) -> usize {
    if d + dp == 0 {
        return 0;
    }
    rank(&pair_tangent(x, y, Some(v), d, dp))
}

/// `dim { a v | (a, b) commutes with (x, y) }`.
pub fn pair_centralizer_vector_dim(v: &[i64], x: &[Vec<i64>], y: &[Vec<i64>], d: usize, dp: usize) -> usize {
    if d == 0 {
        return 0;
    }
    let ker = kernel(&pair_tangent(x, y, None, d, dp), d * d + dp * dp);
    image_rank(&ker, d, v)
}

/// Normal form of a bipartition: one Jordan string per row, `v` hitting
/// the box just left of the wall. Returns `(v, x)` with `x` acting by
/// `e_(r,c) -> e_(r,c-1)`.
pub fn bipartition_point(mu: &[usize], nu: &[usize]) -> (Vec<i64>, Mat) {
    let rows = mu.len().max(nu.len());
    let at = |p: &[usize], i: usize| p.get(i).copied().unwrap_or(0);
    let d: usize = (0..rows).map(|i| at(mu, i) + at(nu, i)).sum();
    let mut x = zeros(d, d);
    let mut v = vec![0; d];
    let mut start = 0;
    for i in 0..rows {
        let len = at(mu, i) + at(nu, i);
        for c in 1..len {
            x[start + c - 1][start + c] = 1;
        }
        if at(mu, i) > 0 {
            v[start + at(mu, i) - 1] = 1;
        }
        start += len;
    }
    (v, x)
}

/// Maps of a signed diagram: rows `(length, first sign)` with `true` for
/// `'+'`, and the column of the wall per row (0 for none). Returns
/// `(v, x, y, d, d')`.
pub fn signed_point(rows: &[(usize, bool)], walls: &[usize]) -> (Vec<i64>, Mat, Mat, usize, usize) {
    let mut idx = Vec::new();
    let (mut d, mut dp) = (0, 0);
    for &(len, plus) in rows {
        let mut row = Vec::new();
        for c in 0..len {
            let is_plus = plus == (c % 2 == 0);
            if is_plus {
                row.push((true, d));
                d += 1;
            } else {
                row.push((false, dp));
                dp += 1;
            }
        }
        idx.push(row);
    }
    let mut x = zeros(dp, d);
    let mut y = zeros(d, dp);
    let mut v = vec![0; d];
    for (r, row) in idx.iter().enumerate() {
        for c in 1..row.len() {
            let (sp, src) = row[c];
            let (_, dst) = row[c - 1];
            if sp {
                x[dst][src] = 1;
            } else {
                y[dst][src] = 1;
            }
        }
        let m = walls.get(r).copied().unwrap_or(0);
        if m > 0 {
            let (sign, i) = row[m - 1];
            assert!(sign, "box left of the wall is '+'");
            v[i] = 1;
        }
    }
    (v, x, y, d, dp)
}

/// Number of partitions of `n` by Euler's pentagonal recurrence.
pub fn partition_count(n: usize) -> u64 {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n as i64 {
        let mut total = 0;
        let mut k = 1i64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[(m - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total += sign * p[(m - g2) as usize];
            }
            k += 1;
        }
        p[m as usize] = total;
    }
    p[n] as u64
}

/// All partitions of `n`, largest part first, by plain recursion.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(acc.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            acc.push(k);
            go(n - k, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn is_quasi(c: &[usize]) -> bool {
    (0..c.len()).all(|i| (i..c.len()).all(|j| c[i] + 1 >= c[j]))
}

/// Membership in SQ, transcribed from the definition; `eps[i]` is `true`
/// for `'+'`. Rows are those of `mu + nu`.
pub fn is_signed_quasibipartition(mu: &[usize], nu: &[usize], eps: &[bool]) -> bool {
    let rows = eps.len();
    if mu.len() != rows || nu.len() != rows || !is_quasi(mu) || !is_quasi(nu) {
        return false;
    }
    let lam: Vec<usize> = (0..rows).map(|i| mu[i] + nu[i]).collect();
    if lam.contains(&0) || lam.windows(2).any(|w| w[0] < w[1]) {
        return false;
    }
    for i in 0..rows {
        for j in i + 1..rows {
            if lam[i] == lam[j] && !eps[i] && eps[j] {
                return false;
            }
        }
    }
    (0..rows).all(|i| {
        let m = mu[i];
        if m >= 1 && m % 2 == 1 {
            eps[i]
        } else if m >= 2 || (0..i).any(|j| nu[j] as i64 == nu[i] as i64 - 1) || (i + 1..rows).any(|j| mu[j] == 1) {
            !eps[i]
        } else {
            true
        }
    })
}

/// `'+'` and `'-'` box counts of a signed row.
pub fn row_signature(len: usize, plus: bool) -> (usize, usize) {
    let p = if plus { len.div_ceil(2) } else { len / 2 };
    (p, len - p)
}

/// Every SQ of signature `(d, d')` as `(mu, nu, eps)` with trailing zero
/// parts trimmed, by brute force over splittings and sign vectors.
pub fn brute_force_sq(d: usize, dp: usize) -> Vec<(Vec<usize>, Vec<usize>, Vec<bool>)> {
    let mut out = Vec::new();
    for lam in partitions(d + dp) {
        let rows = lam.len();
        for mask in 0..(1u32 << rows) {
            let eps: Vec<bool> = (0..rows).map(|i| mask >> i & 1 == 0).collect();
            let (p, m) = lam
                .iter()
                .zip(&eps)
                .map(|(&l, &e)| row_signature(l, e))
                .fold((0, 0), |acc, s| (acc.0 + s.0, acc.1 + s.1));
            if (p, m) != (d, dp) {
                continue;
            }
            let mut mu = vec![0; rows];
            loop {
                let nu: Vec<usize> = (0..rows).map(|i| lam[i] - mu[i]).collect();
                if is_signed_quasibipartition(&mu, &nu, &eps) {
                    out.push((trim(&mu), trim(&nu), eps.clone()));
                }
                // odometer over 0 <= mu_i <= lam_i
                let mut i = 0;
                while i < rows && mu[i] == lam[i] {
                    mu[i] = 0;
                    i += 1;
                }
                if i == rows {
                    break;
                }
                mu[i] += 1;
            }
        }
    }
    out
}

pub fn trim(c: &[usize]) -> Vec<usize> {
    let mut v = c.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Transposed partition.
pub fn conjugate(p: &[usize]) -> Vec<usize> {
    let first = p.first().copied().unwrap_or(0);
    (1..=first).map(|k| p.iter().filter(|&&x| x >= k).count()).collect()
}

/// `n(lambda) = sum (i - 1) lambda_i`.
pub fn n_stat(p: &[usize]) -> usize {
    p.iter().enumerate().map(|(i, &x)| i * x).sum()
}
