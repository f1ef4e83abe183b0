//! Explicit orbit representatives built from diagram normal bases, and the
//! rank computations that recover orbit dimensions and types from them.
//!
//! Boxes are numbered row by row from the top, left to right within a row.
//! For signed diagrams the `'+'` boxes number a basis of `V` and the `'-'`
//! boxes a basis of `V'`, each in that same reading order.

use serde::Serialize;

use crate::bipartition::Bipartition;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::partition::Partition;
use crate::signed::{Sign, SignedPartition, SignedQuasibipartition};

/// A point `(v, x)` of `V x N_V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnhancedPoint {
    pub v: Vec<i64>,
    pub x: IntMatrix,
}

/// A nilpotent pair: `x: V -> V'` (a `d' x d` matrix) and `y: V' -> V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairPoint {
    pub x: IntMatrix,
    pub y: IntMatrix,
}

/// An enhanced nilpotent pair `(v, x, y)` with `v` in `V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnhancedPairPoint {
    pub v: Vec<i64>,
    pub x: IntMatrix,
    pub y: IntMatrix,
}

impl EnhancedPoint {
    pub fn dim(&self) -> usize {
        self.v.len()
    }
}

impl PairPoint {
    pub fn dims(&self) -> (usize, usize) {
        (self.x.cols(), self.x.rows())
    }
}

impl EnhancedPairPoint {
    pub fn dims(&self) -> (usize, usize) {
        (self.x.cols(), self.x.rows())
    }

    pub fn forget_vector(&self) -> PairPoint {
        PairPoint {
            x: self.x.clone(),
            y: self.y.clone(),
        }
    }

    /// `(v, yx)` on `V`.
    pub fn project_v(&self) -> Result<EnhancedPoint> {
        Ok(EnhancedPoint {
            v: self.v.clone(),
            x: self.y.mul(&self.x)?,
        })
    }

    /// `(xv, xy)` on `V'`.
    pub fn project_v_prime(&self) -> Result<EnhancedPoint> {
        Ok(EnhancedPoint {
            v: self.x.apply(&self.v)?,
            x: self.x.mul(&self.y)?,
        })
    }
}

/// Normal-basis point: `x` moves each box one step left, `v` is the sum of
/// the boxes immediately left of the wall.
pub fn point_from_bipartition(b: &Bipartition) -> EnhancedPoint {
    let d = b.size();
    let mut x = IntMatrix::zeros(d, d);
    let mut v = vec![0; d];
    let mut index = 0;
    for r in 0..b.rows() {
        let (m, len) = (b.mu.at(r), b.mu.at(r) + b.nu.at(r));
        for c in 0..len {
            if c > 0 {
                x.set(index + c - 1, index + c, 1);
            }
        }
        if m > 0 {
            v[index + m - 1] = 1;
        }
        index += len;
    }
    EnhancedPoint { v, x }
}

/// Basis indices of a signed diagram: for each row, `(sign, index in V or V')`.
fn signed_layout(rows: &[(usize, Sign)]) -> (Vec<Vec<(Sign, usize)>>, usize, usize) {
    let (mut plus, mut minus) = (0, 0);
    let layout = rows
        .iter()
        .map(|&(len, start)| {
            (0..len)
                .map(|c| {
                    let s = start.at_offset(c);
                    let slot = match s {
                        Sign::Plus => &mut plus,
                        Sign::Minus => &mut minus,
                    };
                    *slot += 1;
                    (s, *slot - 1)
                })
                .collect()
        })
        .collect();
    (layout, plus, minus)
}

fn pair_maps(layout: &[Vec<(Sign, usize)>], d: usize, d_prime: usize) -> (IntMatrix, IntMatrix) {
    let mut x = IntMatrix::zeros(d_prime, d);
    let mut y = IntMatrix::zeros(d, d_prime);
    for row in layout {
        for c in 1..row.len() {
            let (target_sign, target) = row[c - 1];
            let (source_sign, source) = row[c];
            match (source_sign, target_sign) {
                (Sign::Plus, Sign::Minus) => x.set(target, source, 1),
                (Sign::Minus, Sign::Plus) => y.set(target, source, 1),
                _ => unreachable!("signs alternate along a row"),
            }
        }
    }
    (x, y)
}

/// `x` sends each `'+'` box to the `'-'` box on its left and `y` each `'-'`
/// box to the `'+'` box on its left.
pub fn point_from_signed_partition(sp: &SignedPartition) -> PairPoint {
    let rows: Vec<(usize, Sign)> = sp.lambda.parts().iter().copied().zip(sp.eps.iter().copied()).collect();
    let (layout, d, d_prime) = signed_layout(&rows);
    let (x, y) = pair_maps(&layout, d, d_prime);
    PairPoint { x, y }
}

/// As [`point_from_signed_partition`], with `v` the sum of the boxes
/// immediately left of the wall.
pub fn point_from_sq(sq: &SignedQuasibipartition) -> EnhancedPairPoint {
    let rows: Vec<(usize, Sign)> = (0..sq.rows()).map(|i| (sq.mu.at(i) + sq.nu.at(i), sq.eps[i])).collect();
    let (layout, d, d_prime) = signed_layout(&rows);
    let (x, y) = pair_maps(&layout, d, d_prime);
    let mut v = vec![0; d];
    for (i, row) in layout.iter().enumerate() {
        let m = sq.mu.at(i);
        if m > 0 {
            let (sign, idx) = row[m - 1];
            debug_assert_eq!(sign, Sign::Plus, "box left of the wall must be '+'");
            v[idx] = 1;
        }
    }
    EnhancedPairPoint { v, x, y }
}

/// Differential of `g . x = g x g^-1` at `x`, stacked under `g . v = g v`
/// when `v` is given; columns are indexed by the elementary matrices `E_ij`.
fn conjugation_differential(x: &IntMatrix, v: Option<&[i64]>) -> IntMatrix {
    let d = x.rows();
    let offset = if v.is_some() { d } else { 0 };
    let mut m = IntMatrix::zeros(offset + d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let col = i * d + j;
            if let Some(v) = v {
                m.set(i, col, v[j]);
            }
            // E_ij x puts row j of x into row i
            for l in 0..d {
                let r = offset + i * d + l;
                m.set(r, col, m.get(r, col) + x.get(j, l));
            }
            // x E_ij puts column i of x into column j
            for k in 0..d {
                let r = offset + k * d + j;
                m.set(r, col, m.get(r, col) - x.get(k, i));
            }
        }
    }
    m
}

/// Differential of `(g, h) . (x, y) = (h x g^-1, g y h^-1)`:
/// `(a, b) -> (b x - x a, a y - y b)`, optionally followed by `a v`.
fn pair_differential(x: &IntMatrix, y: &IntMatrix, v: Option<&[i64]>) -> IntMatrix {
    let (d, dp) = (x.cols(), x.rows());
    let xs = dp * d;
    let ys = d * dp;
    let rows = xs + ys + if v.is_some() { d } else { 0 };
    let mut m = IntMatrix::zeros(rows, d * d + dp * dp);
    let add = |m: &mut IntMatrix, r: usize, c: usize, val: i64| {
        if val != 0 {
            m.set(r, c, m.get(r, c) + val);
        }
    };
    for i in 0..d {
        for j in 0..d {
            let col = i * d + j;
            // -x E_ij: column i of x into column j of the x-block
            for k in 0..dp {
                add(&mut m, k * d + j, col, -x.get(k, i));
            }
            // E_ij y: row j of y into row i of the y-block
            for l in 0..dp {
                add(&mut m, xs + i * dp + l, col, y.get(j, l));
            }
            if let Some(v) = v {
                add(&mut m, xs + ys + i, col, v[j]);
            }
        }
    }
    for i in 0..dp {
        for j in 0..dp {
            let col = d * d + i * dp + j;
            // E_ij x: row j of x into row i of the x-block
            for l in 0..d {
                add(&mut m, i * d + l, col, x.get(j, l));
            }
            // -y E_ij: column i of y into column j of the y-block
            for k in 0..d {
                add(&mut m, xs + k * dp + j, col, -y.get(k, i));
            }
        }
    }
    m
}

/// Dimension of the `GL(V)`-orbit of a nilpotent `x`.
pub fn orbit_dim_nilpotent(x: &IntMatrix) -> Result<usize> {
    conjugation_differential(x, None).rank()
}

/// Dimension of the `GL(V)`-orbit of `(v, x)`.
pub fn orbit_dim_enhanced(p: &EnhancedPoint) -> Result<usize> {
    conjugation_differential(&p.x, Some(&p.v)).rank()
}

/// Dimension of the `GL(V) x GL(V')`-orbit of `(x, y)`.
pub fn orbit_dim_pair(p: &PairPoint) -> Result<usize> {
    pair_differential(&p.x, &p.y, None).rank()
}

/// Dimension of the `GL(V) x GL(V')`-orbit of `(v, x, y)`.
pub fn orbit_dim_enhanced_pair(p: &EnhancedPairPoint) -> Result<usize> {
    pair_differential(&p.x, &p.y, Some(&p.v)).rank()
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
pub fn jordan_type(x: &IntMatrix) -> Result<Partition> {
    let d = x.rows();
    let mut ranks = vec![d];
    let mut power = IntMatrix::identity(d);
    while *ranks.last().expect("nonempty") > 0 {
        if ranks.len() > d + 1 {
            return Err(Error::Precondition("matrix is not nilpotent".into()));
        }
        power = power.mul(x)?;
        ranks.push(power.rank()?);
    }
    let columns: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(Partition::new(columns)
        .map_err(|_| Error::Precondition("rank sequence is not concave".into()))?
        .transpose())
}

/// Type `(mu; nu)` of `(v, x)`: `lambda` from the ranks of powers of `x`,
/// then `mu_i = min { s | x^s v in im x^(lambda_i) }`.
pub fn type_of_enhanced_point(p: &EnhancedPoint) -> Result<Bipartition> {
    let lambda = jordan_type(&p.x)?;
    let mut mu = Vec::with_capacity(lambda.len());
    for &li in lambda.parts() {
        let image = p.x.pow(li)?;
        let mut w = p.v.clone();
        let mut s = 0;
        while !image.spans(&w)? {
            w = p.x.apply(&w)?;
            s += 1;
        }
        mu.push(s);
    }
    let nu: Vec<usize> = lambda.parts().iter().zip(&mu).map(|(l, m)| l - m).collect();
    let mu = Partition::new(mu).map_err(|_| Error::Precondition("vector levels are not a partition".into()))?;
    let nu = Partition::new(nu).map_err(|_| Error::Precondition("complementary parts are not a partition".into()))?;
    Ok(Bipartition::new(mu, nu))
}

/// Ranks of the alternating words of length `1, 2, ...` that start with
/// `first` (acting on its source), until they vanish.
fn alternating_word_ranks(first: &IntMatrix, second: &IntMatrix) -> Result<Vec<usize>> {
    let mut ranks = vec![first.cols()];
    let mut word = IntMatrix::identity(first.cols());
    let mut k = 0;
    loop {
        let next = if k % 2 == 0 { first } else { second };
        word = next.mul(&word)?;
        let r = word.rank()?;
        ranks.push(r);
        k += 1;
        if r == 0 {
            return Ok(ranks);
        }
        if k > first.rows() + first.cols() + 1 {
            return Err(Error::Precondition("yx is not nilpotent".into()));
        }
    }
}

/// Signed partition of a nilpotent pair, read off from the ranks of the
/// alternating words in `x` and `y`.
///
/// A word of length `k` starting with `x` has rank equal to the number of
/// `'+'` boxes in column `k` or beyond, so column by column one recovers how
/// many rows of each leading sign reach that column.
pub fn type_of_pair(p: &PairPoint) -> Result<SignedPartition> {
    let plus_ranks = alternating_word_ranks(&p.x, &p.y)?;
    let minus_ranks = alternating_word_ranks(&p.y, &p.x)?;
    let at = |r: &[usize], k: usize| r.get(k).copied().unwrap_or(0);
    let plus_in_col = |k: usize| at(&plus_ranks, k) - at(&plus_ranks, k + 1);
    let minus_in_col = |k: usize| at(&minus_ranks, k) - at(&minus_ranks, k + 1);
    // rows starting with each sign that are longer than k
    let reach = |k: usize, start: Sign| {
        let even = k.is_multiple_of(2);
        match (start, even) {
            (Sign::Plus, true) | (Sign::Minus, false) => plus_in_col(k),
            _ => minus_in_col(k),
        }
    };
    let max_len = plus_ranks.len().max(minus_ranks.len());
    let mut rows: Vec<(usize, Sign)> = Vec::new();
    for start in [Sign::Plus, Sign::Minus] {
        for len in 1..=max_len {
            let count = reach(len - 1, start)
                .checked_sub(reach(len, start))
                .ok_or_else(|| Error::Precondition("inconsistent word ranks".into()))?;
            rows.extend(std::iter::repeat_n((len, start), count));
        }
    }
    rows.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let lambda = Partition::new(rows.iter().map(|r| r.0).collect())?;
    SignedPartition::new(lambda, rows.iter().map(|r| r.1).collect())
}

fn rank_of_vectors(n: usize, vectors: &[Vec<i64>]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    IntMatrix::from_columns(n, vectors).rank()
}

fn reshape(flat: &[i64], d: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = flat.chunks(d.max(1)).take(d).map(|c| c.to_vec()).collect();
    if d == 0 {
        return IntMatrix::zeros(0, 0);
    }
    IntMatrix::from_rows(&rows)
}

/// `dim E^x v`, where `E^x` is the centralizer of `x` in `End(V)`.
pub fn commutant_vector_dim(p: &EnhancedPoint) -> Result<usize> {
    let d = p.dim();
    let kernel = conjugation_differential(&p.x, None).kernel()?;
    let images = kernel
        .iter()
        .map(|a| reshape(a, d).apply(&p.v))
        .collect::<Result<Vec<_>>>()?;
    rank_of_vectors(d, &images)
}

/// `dim { a v | (a, b) in End(V) x End(V'), x a = b x, a y = y b }`.
pub fn pair_commutant_vector_dim(p: &EnhancedPairPoint) -> Result<usize> {
    let (d, _) = p.dims();
    let kernel = pair_differential(&p.x, &p.y, None).kernel()?;
    let images = kernel
        .iter()
        .map(|ab| reshape(&ab[..d * d], d).apply(&p.v))
        .collect::<Result<Vec<_>>>()?;
    rank_of_vectors(d, &images)
}

/// Whether `(v, x)`, which must lie in `V x O_lambda` with
/// `lambda = mu + nu`, satisfies `x^(mu_i) v in im x^(lambda_i)` for all `i`.
pub fn membership_u_lambda(p: &EnhancedPoint, b: &Bipartition) -> Result<bool> {
    let lambda = b.sum();
    if jordan_type(&p.x)? != lambda {
        return Err(Error::Precondition(format!("x does not have Jordan type {lambda}")));
    }
    for (i, &li) in lambda.parts().iter().enumerate() {
        let w = p.x.pow(b.mu.at(i))?.apply(&p.v)?;
        if !p.x.pow(li)?.spans(&w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `(v, x)`, which must satisfy `dim F[x]v = mu_1` and have `x` of
/// type `mu[1] + nu` on `V / F[x]v`, satisfies
/// `x^(m + nu_i) ((x^(pi_i))^-1 (F[x]v)) = 0` for all `i`.
pub fn membership_u_mpi(p: &EnhancedPoint, b: &Bipartition) -> Result<bool> {
    let d = p.dim();
    let m = b.mu.first();
    let pi = b.mu.drop_first().add(&b.nu);
    let mut krylov = Vec::new();
    let mut w = p.v.clone();
    while w.iter().any(|&c| c != 0) {
        krylov.push(w.clone());
        w = p.x.apply(&w)?;
        if krylov.len() > d {
            return Err(Error::Precondition("x is not nilpotent".into()));
        }
    }
    if krylov.len() != m {
        return Err(Error::Precondition(format!("dim F[x]v = {} but mu_1 = {m}", krylov.len())));
    }
    let span = IntMatrix::from_columns(d, &krylov);
    // ranks of x^k on V / F[x]v give the quotient Jordan type
    let mut quotient_ranks = Vec::new();
    for k in 0..=d {
        let image = p.x.pow(k)?.hstack(&span);
        quotient_ranks.push(image.rank()? - m);
        if *quotient_ranks.last().expect("nonempty") == 0 {
            break;
        }
    }
    let columns: Vec<usize> = quotient_ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let quotient_type = Partition::new(columns)
        .map_err(|_| Error::Precondition("quotient rank sequence is not concave".into()))?
        .transpose();
    if quotient_type != pi {
        return Err(Error::Precondition(format!("x on V/F[x]v has type {quotient_type}, expected {pi}")));
    }
    for i in 0..pi.len().max(b.nu.len()) {
        let xp = p.x.pow(pi.at(i))?;
        // (x^p)^-1 (F[x]v) = first coordinates of ker [x^p | -span]
        let mut negated = IntMatrix::zeros(d, span.cols());
        for r in 0..d {
            for c in 0..span.cols() {
                negated.set(r, c, -span.get(r, c));
            }
        }
        let kernel = xp.hstack(&negated).kernel()?;
        let killer = p.x.pow(m + b.nu.at(i))?;
        for u in kernel {
            if killer.apply(&u[..d])?.iter().any(|&c| c != 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
