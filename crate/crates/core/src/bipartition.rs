//! Bipartitions: labels of enhanced nilpotent orbits, their closure order,
//! covering moves and dimensions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::partition::{enumerate_partitions, Partition};

/// An ordered pair `(mu; nu)` of partitions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub mu: Partition,
    pub nu: Partition,
}

impl Bipartition {
    pub fn new(mu: Partition, nu: Partition) -> Self {
        Bipartition { mu, nu }
    }

    /// Convenience constructor from raw parts; panics on invalid input.
    pub fn from_parts(mu: &[usize], nu: &[usize]) -> Self {
        Bipartition {
            mu: Partition::new(mu.to_vec()).expect("mu is not a partition"),
            nu: Partition::new(nu.to_vec()).expect("nu is not a partition"),
        }
    }

    pub fn empty() -> Self {
        Bipartition::default()
    }

    pub fn size(&self) -> usize {
        self.mu.size() + self.nu.size()
    }

    /// Termwise sum `mu + nu`.
    pub fn sum(&self) -> Partition {
        self.mu.add(&self.nu)
    }

    /// Number of rows of the back-to-back diagram.
    pub fn rows(&self) -> usize {
        self.mu.len().max(self.nu.len())
    }

    /// Closure order: `self <= other` iff for all `k >= 0`
    /// `sum_{i<=k} (rho_i + sigma_i) <= sum_{i<=k} (mu_i + nu_i)` and
    /// `sum_{i<=k} (rho_i + sigma_i) + rho_{k+1} <= sum_{i<=k} (mu_i + nu_i) + mu_{k+1}`.
    pub fn biorder_leq(&self, other: &Bipartition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let rows = self.rows().max(other.rows());
        let (mut a, mut b) = (0usize, 0usize);
        for k in 0..=rows {
            if a > b || a + self.mu.at(k) > b + other.mu.at(k) {
                return Ok(false);
            }
            a += self.mu.at(k) + self.nu.at(k);
            b += other.mu.at(k) + other.nu.at(k);
        }
        Ok(true)
    }

    /// `|mu| - n(mu + nu)`, the quantity compared when one orbit degenerates to another.
    pub fn mu_minus_n(&self) -> i64 {
        self.mu.size() as i64 - self.sum().n_stat() as i64
    }

    /// `d^2 - d - 2 n(mu + nu) + |mu|` with `d = |mu| + |nu|`.
    pub fn enhanced_orbit_dim(&self) -> usize {
        let d = self.size();
        d * d - d - 2 * self.sum().n_stat() + self.mu.size()
    }

    /// All bipartitions reachable by a single covering move.
    pub fn degeneration_moves(&self) -> Vec<MoveRecord> {
        let mut out = Vec::new();
        self.moves_within(&self.mu, &self.nu, true, &mut out);
        self.moves_within(&self.nu, &self.mu, false, &mut out);
        self.column_moves(&mut out);
        out
    }

    /// Types (1) and (2): a single box moves down on one side of the wall.
    ///
    /// On the `mu` side the rows `i-1..=j` of `nu` must be equal (there is
    /// no row above the first, so the first row of `mu` never moves); on the
    /// `nu` side the rows `i..=j+1` of `mu` must be equal.
    fn moves_within(&self, side: &Partition, other: &Partition, on_mu: bool, out: &mut Vec<MoveRecord>) {
        let rows = self.rows();
        for i in 0..side.len() {
            let si = side.at(i);
            if side.at(i + 1) >= si {
                continue;
            }
            for j in i + 1..=rows {
                let sj = side.at(j);
                if !((j == i + 1 && si >= sj + 2) || (j > i + 1 && si == sj + 2)) {
                    continue;
                }
                let guard_ok = if on_mu {
                    i > 0 && (i - 1..=j).all(|r| other.at(r) == other.at(i - 1))
                } else {
                    (i..=j + 1).all(|r| other.at(r) == other.at(i))
                };
                if !guard_ok {
                    continue;
                }
                let mut parts = side.parts().to_vec();
                pad(&mut parts, j + 1);
                parts[i] -= 1;
                parts[j] += 1;
                let Ok(moved) = Partition::new(parts) else {
                    continue;
                };
                let result = if on_mu {
                    Bipartition::new(moved, other.clone())
                } else {
                    Bipartition::new(other.clone(), moved)
                };
                out.push(MoveRecord {
                    move_type: if on_mu { 1 } else { 2 },
                    result,
                    boxes_moved: 1,
                });
            }
        }
    }

    /// Types (3) and (4): a column of boxes crosses the wall.
    ///
    /// Type (3) moves the last boxes of `mu` in rows `k..=e` straight across
    /// into the same rows of `nu`; type (4) moves the last boxes of `nu` in
    /// rows `k..=e` across and one row down into `mu`.
    fn column_moves(&self, out: &mut Vec<MoveRecord>) {
        let (mu, nu) = (&self.mu, &self.nu);
        let block_start = |p: &Partition, e: usize| {
            let mut s = e;
            while s > 0 && p.at(s - 1) == p.at(e) {
                s -= 1;
            }
            s
        };
        for e in 0..self.rows() {
            if mu.at(e) >= 1 && mu.at(e) > mu.at(e + 1) {
                let k = block_start(mu, e).max(block_start(nu, e));
                let mut m = mu.parts().to_vec();
                let mut n = nu.parts().to_vec();
                pad(&mut n, e + 1);
                for r in k..=e {
                    m[r] -= 1;
                    n[r] += 1;
                }
                if let (Ok(m), Ok(n)) = (Partition::new(m), Partition::new(n)) {
                    out.push(MoveRecord {
                        move_type: 3,
                        result: Bipartition::new(m, n),
                        boxes_moved: e - k + 1,
                    });
                }
            }
            if nu.at(e) >= 1 && nu.at(e) > nu.at(e + 1) {
                let start = block_start(mu, e + 1);
                if start == 0 {
                    continue;
                }
                let k = start - 1;
                if k < block_start(nu, e) {
                    continue;
                }
                let mut m = mu.parts().to_vec();
                let mut n = nu.parts().to_vec();
                pad(&mut m, e + 2);
                for r in k..=e {
                    n[r] -= 1;
                    m[r + 1] += 1;
                }
                let (Ok(m), Ok(n)) = (Partition::new(m), Partition::new(n)) else {
                    continue;
                };
                out.push(MoveRecord {
                    move_type: 4,
                    result: Bipartition::new(m, n),
                    boxes_moved: e - k + 1,
                });
            }
        }
    }

    /// `(|mu| - n(mu+nu)) - (|rho| - n(rho+sigma))` for a covering move.
    pub fn degeneration_delta(&self, m: &MoveRecord) -> Result<i64> {
        if !self.degeneration_moves().contains(m) {
            return Err(Error::MoveNotApplicable);
        }
        Ok(self.mu_minus_n() - m.result.mu_minus_n())
    }

    /// Orbits in the closure whose dimension is exactly one less.
    pub fn codim1_boundary(&self) -> Vec<Bipartition> {
        let dim = self.enhanced_orbit_dim();
        enumerate_bipartitions(self.size())
            .into_iter()
            .filter(|q| q.enhanced_orbit_dim() + 1 == dim && q.biorder_leq(self).unwrap_or(false))
            .collect()
    }

    /// `other` lies in `Q_lambda` for `lambda = mu + nu`: same sum.
    pub fn shares_sum(&self, other: &Bipartition) -> bool {
        self.sum() == other.sum()
    }

    /// `other` lies in `Q_{m,pi}` for `m = mu_1` and `pi = mu[1] + nu`,
    /// where `mu[1] = (mu_2, mu_3, ...)`.
    pub fn shares_first_row(&self, other: &Bipartition) -> bool {
        other.mu.first() == self.mu.first()
            && other.mu.drop_first().add(&other.nu) == self.mu.drop_first().add(&self.nu)
    }

    /// The back-to-back diagram, `mu` right-aligned against the wall.
    pub fn diagram(&self) -> String {
        let width = self.mu.first();
        let mut out = String::new();
        for r in 0..self.rows() {
            let left = self.mu.at(r);
            out.push_str(&" ".repeat(width - left));
            out.push_str(&"□".repeat(left));
            out.push('‖');
            out.push_str(&"□".repeat(self.nu.at(r)));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.mu, self.nu)
    }
}

impl FromStr for Bipartition {
    type Err = Error;

    /// Parses `mu;nu`, e.g. `2,1;1` or `∅;1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (mu, nu) = body
            .split_once(';')
            .ok_or_else(|| parse_err(s, "expected 'mu;nu'"))?;
        let mu = mu.parse::<Partition>().map_err(|e| parse_err(s, e.to_string()))?;
        let nu = nu.parse::<Partition>().map_err(|e| parse_err(s, e.to_string()))?;
        Ok(Bipartition { mu, nu })
    }
}

fn pad(parts: &mut Vec<usize>, len: usize) {
    if parts.len() < len {
        parts.resize(len, 0);
    }
}

/// A single covering move and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveRecord {
    pub move_type: u8,
    pub result: Bipartition,
    pub boxes_moved: usize,
}

/// All bipartitions of `n`: `|mu|` descending, then `mu` and `nu` in
/// reverse-lexicographic order.
pub fn enumerate_bipartitions(n: usize) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        let nus = enumerate_partitions(n - k);
        for mu in enumerate_partitions(k) {
            for nu in &nus {
                out.push(Bipartition::new(mu.clone(), nu.clone()));
            }
        }
    }
    out
}

/// Every bipartition of every size up to `n_max`.
pub fn enumerate_bipartitions_upto(n_max: usize) -> Vec<Bipartition> {
    (0..=n_max).flat_map(enumerate_bipartitions).collect()
}
