//! Partitions, compositions and the dominance order.
//!
//! Parts are stored without trailing zeros, so every partition of a given
//! size has exactly one representation and the empty partition is the unique
//! partition of zero.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

/// A finite sequence of nonnegative integers with trailing zeros removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// The `i`-th entry (0-based), zero past the end.
    pub fn at(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of entries up to the last nonzero one.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `lambda_i >= lambda_j - 1` whenever `i <= j`.
    pub fn is_quasipartition(&self) -> bool {
        let mut running_min = usize::MAX;
        for &p in &self.0 {
            if running_min != usize::MAX && p > running_min + 1 {
                return false;
            }
            running_min = running_min.min(p);
        }
        true
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl From<Vec<usize>> for Composition {
    fn from(parts: Vec<usize>) -> Self {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Validates and canonicalizes (trailing zeros are dropped).
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let c = Composition::new(parts);
        if !c.is_partition() {
            return Err(Error::NotAPartition(c.0));
        }
        Ok(Partition(c.0))
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(Composition::new(parts).0)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        Partition(if n == 0 { vec![] } else { vec![n] })
    }

    /// The single-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn at(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Length `l(lambda)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.at(0)
    }

    /// Column lengths: `(lambda^t)_i = #{ j | lambda_j >= i }`.
    pub fn transpose(&self) -> Partition {
        let mut cols = Vec::with_capacity(self.first());
        for i in 1..=self.first() {
            cols.push(self.0.iter().take_while(|&&p| p >= i).count());
        }
        Partition(cols)
    }

    /// `n(lambda) = sum (i-1) lambda_i`, cross-checked against the column formula.
    pub fn n_stat(&self) -> usize {
        let by_rows: usize = self.0.iter().enumerate().map(|(i, &p)| i * p).sum();
        debug_assert_eq!(by_rows, self.n_stat_by_columns());
        by_rows
    }

    /// `n(lambda) = sum binom((lambda^t)_i, 2)`.
    pub fn n_stat_by_columns(&self) -> usize {
        self.transpose().0.iter().map(|&c| c * c.saturating_sub(1) / 2).sum()
    }

    /// Dominance order: every prefix sum of `self` is at most that of `other`.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..len {
            a += self.at(i);
            b += other.at(i);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All partitions covered by `self` in dominance order.
    ///
    /// A box leaves the end of row `i` and lands at the end of a lower row
    /// `j`. The move is a cover exactly when `j = i + 1`, or when the rows in
    /// between all have length `lambda_i - 1` and `lambda_j = lambda_i - 2`.
    pub fn covers(&self) -> Vec<Partition> {
        let parts = &self.0;
        let mut out = Vec::new();
        for i in 0..parts.len() {
            let li = parts[i];
            if self.at(i + 1) >= li {
                continue; // not an outside corner
            }
            for j in i + 1..=parts.len() {
                let lj = self.at(j);
                let adjacent = j == i + 1 && li >= lj + 2;
                let two_apart = j > i + 1 && li == lj + 2;
                if !(adjacent || two_apart) {
                    continue;
                }
                let mut next = parts.clone();
                next[i] -= 1;
                if j == next.len() {
                    next.push(0);
                }
                next[j] += 1;
                if let Ok(p) = Partition::new(next) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Termwise sum.
    pub fn add(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        Partition((0..len).map(|i| self.at(i) + other.at(i)).collect())
    }

    /// Nonzero parts of both, rearranged in decreasing order.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }

    /// `self + 1^r`.
    pub fn add_column(&self, r: usize) -> Partition {
        self.add(&Partition::column(r))
    }

    /// The partition `(lambda_2, lambda_3, ...)`.
    pub fn drop_first(&self) -> Partition {
        Partition(self.0.iter().skip(1).copied().collect())
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let body: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,2,1,1`, `[3,2,1,1]`, `(3,2,1,1)`, and `∅`/empty for the
    /// empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches(['[', '('])
            .trim_end_matches([']', ')'])
            .trim();
        if body.is_empty() || body == "∅" || body == "-" {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| parse_err(s, e.to_string()))?;
        Partition::new(parts).map_err(|_| parse_err(s, "parts are not weakly decreasing"))
    }
}

/// All partitions of `n` in reverse-lexicographic order, from `(n)` down to `(1^n)`.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(n, n, &mut current, &mut out);
    out
}

fn fill_partitions(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for first in (1..=remaining.min(max)).rev() {
        current.push(first);
        fill_partitions(remaining - first, first, current, out);
        current.pop();
    }
}

/// `dim O_lambda = d^2 - d - 2 n(lambda)` for a nilpotent orbit in `gl_d`.
pub fn nilpotent_orbit_dim(lambda: &Partition, d: usize) -> Result<usize> {
    if lambda.size() != d {
        return Err(Error::SizeMismatch {
            left: lambda.size(),
            right: d,
        });
    }
    let square = d.checked_mul(d).ok_or(Error::Overflow)?;
    let twice_n = lambda.n_stat().checked_mul(2).ok_or(Error::Overflow)?;
    (square - d).checked_sub(twice_n).ok_or(Error::Overflow)
}

/// `(d^2 - d)/2 - n(lambda)`, i.e. half the nilpotent orbit dimension.
pub(crate) fn half_orbit_dim(lambda: &Partition) -> i64 {
    let d = lambda.size() as i64;
    (d * d - d) / 2 - lambda.n_stat() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Maximal elements among partitions strictly below `lambda`.
    fn brute_covers(lambda: &Partition) -> Vec<Partition> {
        let all = enumerate_partitions(lambda.size());
        let below: Vec<&Partition> = all
            .iter()
            .filter(|q| *q != lambda && q.dominance_leq(lambda).unwrap())
            .collect();
        let mut covers: Vec<Partition> = below
            .iter()
            .filter(|q| {
                !below
                    .iter()
                    .any(|r| r != *q && q.dominance_leq(r).unwrap())
            })
            .map(|q| (*q).clone())
            .collect();
        covers.sort();
        covers
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[3, 2, 1, 1]).transpose(), p(&[4, 2, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
        assert_eq!(p(&[1, 1, 1]).transpose(), p(&[3]));
    }

    #[test]
    fn n_stat_examples() {
        assert_eq!(p(&[3, 1]).n_stat(), 1);
        assert_eq!(p(&[2, 2]).n_stat(), 2);
        assert_eq!(p(&[7]).n_stat(), 0);
        assert_eq!(p(&[3, 1]).n_stat_by_columns(), 1);
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[2, 1, 1]).dominance_leq(&p(&[3, 1])).unwrap());
        assert!(!p(&[3, 1]).dominance_leq(&p(&[2, 2])).unwrap());
        assert!(p(&[2, 2]).dominance_leq(&p(&[2, 2])).unwrap());
        assert!(matches!(
            p(&[2]).dominance_leq(&p(&[2, 1])),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn covers_examples_match_brute_force() {
        assert_eq!(p(&[3, 1]).covers(), vec![p(&[2, 2])]);
        assert_eq!(p(&[2, 2]).covers(), vec![p(&[2, 1, 1])]);
        assert!(p(&[1, 1, 1, 1]).covers().is_empty());
        // the literal "first inside corner below" reading would give (2,2,1)
        assert_eq!(p(&[3, 2]).covers(), vec![p(&[3, 1, 1])]);
        for n in 0..=9 {
            for lambda in enumerate_partitions(n) {
                let mut ours = lambda.covers();
                ours.sort();
                assert_eq!(ours, brute_covers(&lambda), "covers of {lambda}");
            }
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(9).len(), 30);
        let four: Vec<String> = enumerate_partitions(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(four, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
    }

    #[test]
    fn enumeration_matches_brute_force_count() {
        // count weakly decreasing sequences by scanning all compositions
        fn count(n: usize) -> usize {
            fn go(rem: usize, max: usize) -> usize {
                if rem == 0 {
                    return 1;
                }
                (1..=rem).filter(|&k| k <= max).map(|k| go(rem - k, k)).sum()
            }
            go(n, n)
        }
        for n in 0..=12 {
            assert_eq!(enumerate_partitions(n).len(), count(n));
        }
    }

    #[test]
    fn orbit_dim_examples() {
        assert_eq!(nilpotent_orbit_dim(&Partition::column(5), 5).unwrap(), 0);
        assert_eq!(nilpotent_orbit_dim(&p(&[2, 1, 1]), 4).unwrap(), 6);
        assert_eq!(nilpotent_orbit_dim(&p(&[3, 1]), 4).unwrap(), 10);
        assert!(nilpotent_orbit_dim(&p(&[3, 1]), 5).is_err());
    }

    #[test]
    fn parse_and_serialize() {
        assert_eq!("3,2,1,1".parse::<Partition>().unwrap(), p(&[3, 2, 1, 1]));
        assert_eq!("[3,2,1,1]".parse::<Partition>().unwrap(), p(&[3, 2, 1, 1]));
        assert_eq!("∅".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&p(&[3, 2, 1, 1])).unwrap(), "[3,2,1,1]");
        let back: Partition = serde_json::from_str("[3,2,0]").unwrap();
        assert_eq!(back, p(&[3, 2]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn quasipartition_check() {
        assert!(Composition::new(vec![2, 3, 2, 1, 2, 0, 1]).is_quasipartition());
        assert!(!Composition::new(vec![0, 2]).is_quasipartition());
        assert!(Composition::new(vec![1, 0, 1]).is_quasipartition());
    }

    #[test]
    fn transpose_of_sum_is_union_of_transposes() {
        for n in 0..=6 {
            for a in enumerate_partitions(n) {
                for b in enumerate_partitions(6 - n) {
                    assert_eq!(a.add(&b).transpose(), a.transpose().union(&b.transpose()));
                }
            }
        }
    }
}
