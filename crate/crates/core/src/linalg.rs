//! Dense exact integer matrices.
//!
//! Rank uses fraction-free (Bareiss) elimination in `i128`; kernels use
//! integer Gauss-Jordan elimination with rows kept primitive. Every
//! arithmetic step is checked and overflow surfaces as [`Error::Overflow`].

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    /// A matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Self {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                    let cell = out.get(i, j).checked_add(term).ok_or(Error::Overflow)?;
                    out.set(i, j, cell);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (&a, &b)| {
                    a.checked_mul(b).and_then(|t| acc.checked_add(t)).ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> Result<IntMatrix> {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut out = IntMatrix::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix { data, ..*self })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> Result<usize> {
        rank_exact(self)
    }

    /// An integer basis of the right kernel `{ u | self * u = 0 }`.
    pub fn kernel(&self) -> Result<Vec<Vec<i64>>> {
        kernel_basis(self)
    }

    /// Whether `v` lies in the rational column span.
    pub fn spans(&self, v: &[i64]) -> Result<bool> {
        let with = self.hstack(&IntMatrix::from_columns(self.rows, &[v.to_vec()]));
        Ok(rank_exact(self)? == rank_exact(&with)?)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

/// Rank over the rationals by Bareiss elimination.
#[allow(clippy::needless_range_loop)]
pub fn rank_exact(m: &IntMatrix) -> Result<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<i128>> = (0..rows).map(|i| m.row(i).iter().map(|&v| v as i128).collect()).collect();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col];
        for r in rank + 1..rows {
            let factor = a[r][col];
            for c in col + 1..cols {
                let lhs = a[r][c].checked_mul(pivot).ok_or(Error::Overflow)?;
                let rhs = a[rank][c].checked_mul(factor).ok_or(Error::Overflow)?;
                let num = lhs.checked_sub(rhs).ok_or(Error::Overflow)?;
                // exact by Sylvester's identity
                a[r][c] = num / prev;
            }
            a[r][col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn make_primitive(row: &mut [i128]) {
    let g = row.iter().fold(0, |g, &v| gcd(g, v));
    if g > 1 {
        for v in row.iter_mut() {
            *v /= g;
        }
    }
}

/// Integer basis of the right kernel, one vector per free column, each
/// primitive (entries with gcd 1).
pub fn kernel_basis(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<i128>> = (0..rows).map(|i| m.row(i).iter().map(|&v| v as i128).collect()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let f = row[col];
            let pv = pivot_row[col];
            for c in 0..cols {
                let lhs = row[c].checked_mul(pv).ok_or(Error::Overflow)?;
                let rhs = pivot_row[c].checked_mul(f).ok_or(Error::Overflow)?;
                row[c] = lhs.checked_sub(rhs).ok_or(Error::Overflow)?;
            }
            make_primitive(row);
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    let pivot_set: Vec<Option<usize>> = {
        let mut s = vec![None; cols];
        for (i, &c) in pivots.iter().enumerate() {
            s[c] = Some(i);
        }
        s
    };
    for free in (0..cols).filter(|&c| pivot_set[c].is_none()) {
        // pivot_i * x_{p_i} + a_i,free * x_free = 0 for each pivot row
        let mut scale: i128 = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            if a[i][free] != 0 {
                scale = lcm(scale, a[i][pc])?;
            }
        }
        let mut v = vec![0i128; cols];
        v[free] = scale;
        for (i, &pc) in pivots.iter().enumerate() {
            if a[i][free] != 0 {
                let pv = a[i][pc];
                v[pc] = -a[i][free].checked_mul(scale / pv).ok_or(Error::Overflow)?;
            }
        }
        make_primitive(&mut v);
        basis.push(
            v.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(basis)
}

fn lcm(a: i128, b: i128) -> Result<i128> {
    let g = gcd(a, b);
    (a.abs() / g).checked_mul(b.abs()).ok_or(Error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    /// Plain Gaussian elimination over arbitrary-precision rationals.
    #[allow(clippy::needless_range_loop)]
    fn rational_rank(m: &IntMatrix) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..m.rows())
            .map(|i| m.row(i).iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
            .collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..m.rows()).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = BigRational::one() / a[rank][col].clone();
            for r in 0..m.rows() {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].clone() * inv.clone();
                    for c in 0..m.cols() {
                        let t = a[rank][c].clone() * f.clone();
                        a[r][c] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(rank_exact(&IntMatrix::identity(3)).unwrap(), 3);
        assert_eq!(rank_exact(&IntMatrix::zeros(3, 4)).unwrap(), 0);
        assert_eq!(rank_exact(&IntMatrix::zeros(0, 0)).unwrap(), 0);
    }

    #[test]
    fn kernel_of_small_matrix() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = m.kernel().unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn span_membership() {
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![0, 0], vec![0, 1]]);
        assert!(m.spans(&[3, 0, -2]).unwrap());
        assert!(!m.spans(&[0, 1, 0]).unwrap());
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX / 2;
        let m = IntMatrix::from_rows(&[vec![big, big], vec![big, 3]]);
        assert_eq!(m.mul(&m), Err(Error::Overflow));
    }

    fn sign_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-1i64..=1, r * c).prop_map(move |data| {
                let rows: Vec<Vec<i64>> = data.chunks(c).map(|ch| ch.to_vec()).collect();
                IntMatrix::from_rows(&rows)
            })
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_rational_elimination(m in sign_matrix()) {
            prop_assert_eq!(rank_exact(&m).unwrap(), rational_rank(&m));
        }

        #[test]
        fn kernel_has_complementary_dimension(m in sign_matrix()) {
            let k = m.kernel().unwrap();
            prop_assert_eq!(k.len() + rank_exact(&m).unwrap(), m.cols());
            for v in &k {
                prop_assert!(m.apply(v).unwrap().iter().all(|&x| x == 0));
            }
            let basis = IntMatrix::from_columns(m.cols(), &k);
            prop_assert_eq!(rank_exact(&basis).unwrap(), k.len());
        }
    }
}
