//! Signed partitions and signed quasibipartitions.
//!
//! Rows are filled with alternating signs starting from `eps(i)` in the
//! leftmost box. `'+'` boxes span `V` and `'-'` boxes span `V'`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bipartition::Bipartition;
use crate::error::{parse_err, Error, Result, SqError};
use crate::partition::{enumerate_partitions, half_orbit_dim, Composition, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '−' => Some(Sign::Minus),
            _ => None,
        }
    }

    /// Sign of the `k`-th box (0-based) of a row whose first box has sign `self`.
    pub fn at_offset(self, k: usize) -> Sign {
        if k.is_multiple_of(2) {
            self
        } else {
            self.flip()
        }
    }
}

/// Number of `'+'` boxes in a row of length `len` starting with `start`.
pub(crate) fn plus_boxes(len: usize, start: Sign) -> usize {
    match start {
        Sign::Plus => len.div_ceil(2),
        Sign::Minus => len / 2,
    }
}

pub fn signs_to_string(eps: &[Sign]) -> String {
    eps.iter().map(|s| s.as_char()).collect()
}

pub fn parse_signs(s: &str) -> Result<Vec<Sign>> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| Sign::from_char(c).ok_or_else(|| parse_err(s, format!("unexpected sign {c:?}"))))
        .collect()
}

mod sign_string {
    use super::{parse_signs, signs_to_string, Sign};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(eps: &[Sign], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&signs_to_string(eps))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Sign>, D::Error> {
        let raw = String::deserialize(d)?;
        parse_signs(&raw).map_err(serde::de::Error::custom)
    }
}

/// Counts of `'+'` and `'-'` boxes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub plus_count: usize,
    pub minus_count: usize,
}

/// A partition with a sign on the first box of each row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPartition {
    pub lambda: Partition,
    #[serde(with = "sign_string")]
    pub eps: Vec<Sign>,
}

impl SignedPartition {
    /// Checks the length of `eps` and that, among rows of equal length,
    /// those starting with `'+'` come first.
    pub fn new(lambda: Partition, eps: Vec<Sign>) -> Result<Self> {
        if eps.len() != lambda.len() {
            return Err(Error::InvalidSignedPartition(format!(
                "{} signs for {} rows",
                eps.len(),
                lambda.len()
            )));
        }
        if let Some((upper, lower)) = ordering_violation(lambda.parts(), &eps) {
            return Err(Error::InvalidSignedPartition(format!(
                "rows {upper} and {lower} have equal length but '-' comes above '+'"
            )));
        }
        Ok(SignedPartition { lambda, eps })
    }

    pub fn signature(&self) -> Signature {
        let plus_count = self
            .lambda
            .parts()
            .iter()
            .zip(&self.eps)
            .map(|(&l, &s)| plus_boxes(l, s))
            .sum();
        Signature {
            plus_count,
            minus_count: self.lambda.size() - plus_count,
        }
    }

    /// `(lambda^(+), lambda^(-), rearranged)`: boxes of each sign per row,
    /// left-justified; the `'-'` counts are sorted when they are not already
    /// weakly decreasing.
    pub fn subordinate_pair(&self) -> (Partition, Partition, bool) {
        let plus: Vec<usize> = self
            .lambda
            .parts()
            .iter()
            .zip(&self.eps)
            .map(|(&l, &s)| plus_boxes(l, s))
            .collect();
        let minus: Vec<usize> = self.lambda.parts().iter().zip(&plus).map(|(l, p)| l - p).collect();
        let rearranged = !minus.windows(2).all(|w| w[0] >= w[1]);
        (
            Partition::new(plus).expect("plus subordinate is always a partition"),
            Partition::from_unsorted(minus),
            rearranged,
        )
    }

    /// `(1/2)(dim O_{lambda^(+)} + dim O_{lambda^(-)}) + d d'`, together with
    /// whether equality is expected (no rearrangement was needed).
    pub fn pair_orbit_dim_bound(&self, d: usize, d_prime: usize) -> Result<(i64, bool)> {
        let sig = self.signature();
        if sig.plus_count != d || sig.minus_count != d_prime {
            return Err(Error::SignatureMismatch {
                expected_plus: d,
                expected_minus: d_prime,
                plus: sig.plus_count,
                minus: sig.minus_count,
            });
        }
        let (plus, minus, rearranged) = self.subordinate_pair();
        let bound = half_orbit_dim(&plus) + half_orbit_dim(&minus) + (d * d_prime) as i64;
        Ok((bound, !rearranged))
    }

    /// Sign of box `col` (0-based) in row `row`.
    pub fn box_sign(&self, row: usize, col: usize) -> Sign {
        self.eps[row].at_offset(col)
    }
}

impl fmt::Display for SignedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.lambda, signs_to_string(&self.eps))
    }
}

impl FromStr for SignedPartition {
    type Err = Error;

    /// Parses `lambda;signs`, e.g. `6,3,3,3,2,1;-+---+`.
    fn from_str(s: &str) -> Result<Self> {
        let (lambda, eps) = s.split_once(';').ok_or_else(|| parse_err(s, "expected 'lambda;signs'"))?;
        SignedPartition::new(lambda.parse()?, parse_signs(eps)?)
    }
}

/// First pair of equal rows `i < j` (1-based) with `eps(i) = -`, `eps(j) = +`.
fn ordering_violation(lambda: &[usize], eps: &[Sign]) -> Option<(usize, usize)> {
    for i in 0..lambda.len() {
        if eps[i] != Sign::Minus {
            continue;
        }
        for j in i + 1..lambda.len() {
            if lambda[j] != lambda[i] {
                break;
            }
            if eps[j] == Sign::Plus {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

/// All signed partitions of `n` boxes, in partition order then sign order.
pub fn enumerate_signed_partitions(n: usize) -> Vec<SignedPartition> {
    let mut out = Vec::new();
    for lambda in enumerate_partitions(n) {
        let rows = lambda.len();
        for mask in 0..(1u64 << rows) {
            let eps: Vec<Sign> = (0..rows)
                .map(|i| if mask >> (rows - 1 - i) & 1 == 0 { Sign::Plus } else { Sign::Minus })
                .collect();
            if let Ok(sp) = SignedPartition::new(lambda.clone(), eps) {
                out.push(sp);
            }
        }
    }
    out
}

/// How a diagram sits in a chain `U_j`, `U_{j+1}`: whether the `'+'` boxes
/// span the smaller space (`j` not in `I`) or the larger one (`j` in `I`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    PlusIsSmaller,
    PlusIsLarger,
}

/// A signed quasibipartition `(mu; nu, eps)`, with a sign recorded on every row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedQuasibipartition {
    pub mu: Composition,
    pub nu: Composition,
    #[serde(with = "sign_string")]
    pub eps: Vec<Sign>,
}

/// Sign a row is forced to carry, if any.
fn forced_sign(mu: &Composition, nu: &Composition, i: usize) -> Option<Sign> {
    let m = mu.at(i);
    if m % 2 == 1 {
        return Some(Sign::Plus);
    }
    if m >= 2 {
        return Some(Sign::Minus);
    }
    let above = nu.at(i) >= 1 && (0..i).any(|j| nu.at(j) + 1 == nu.at(i));
    let below = (i + 1..mu.len()).any(|j| mu.at(j) == 1);
    if above || below {
        Some(Sign::Minus)
    } else {
        None
    }
}

/// Validates a candidate triple.
pub fn validate_sq(mu: Vec<usize>, nu: Vec<usize>, eps: Vec<Sign>) -> std::result::Result<SignedQuasibipartition, SqError> {
    let mu = Composition::new(mu);
    let nu = Composition::new(nu);
    let rows = mu.len().max(nu.len());
    if eps.len() != rows {
        return Err(SqError::Malformed { rows, got: eps.len() });
    }
    if !mu.is_quasipartition() {
        return Err(SqError::NotQuasipartition { side: "mu" });
    }
    if !nu.is_quasipartition() {
        return Err(SqError::NotQuasipartition { side: "nu" });
    }
    let sum: Vec<usize> = (0..rows).map(|i| mu.at(i) + nu.at(i)).collect();
    if sum.contains(&0) || !sum.windows(2).all(|w| w[0] >= w[1]) {
        return Err(SqError::SumNotPartition);
    }
    if let Some((upper, lower)) = ordering_violation(&sum, &eps) {
        return Err(SqError::SignedOrderViolated { upper, lower });
    }
    for (i, &sign) in eps.iter().enumerate() {
        if let Some(forced) = forced_sign(&mu, &nu, i) {
            if forced != sign {
                return Err(SqError::ForcedSignContradicted {
                    row: i + 1,
                    expected: forced.as_char(),
                });
            }
        }
    }
    Ok(SignedQuasibipartition { mu, nu, eps })
}

impl SignedQuasibipartition {
    pub fn empty() -> Self {
        SignedQuasibipartition {
            mu: Composition::default(),
            nu: Composition::default(),
            eps: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.eps.len()
    }

    pub fn size(&self) -> usize {
        self.mu.size() + self.nu.size()
    }

    /// Signs of row `i` from left to right across the wall.
    pub fn row_signs(&self, i: usize) -> Vec<Sign> {
        let len = self.mu.at(i) + self.nu.at(i);
        (0..len).map(|k| self.eps[i].at_offset(k)).collect()
    }

    pub fn signature(&self) -> Signature {
        self.forget_vector().signature()
    }

    /// `(mu + nu, eps)`.
    pub fn forget_vector(&self) -> SignedPartition {
        let lambda = Partition::new((0..self.rows()).map(|i| self.mu.at(i) + self.nu.at(i)).collect())
            .expect("mu + nu is a partition");
        SignedPartition {
            lambda,
            eps: self.eps.clone(),
        }
    }

    /// Per-row counts of boxes of each sign on each side of the wall:
    /// `(mu~+, nu~+, mu~-, nu~-)`.
    pub fn tilde_counts(&self) -> [Vec<usize>; 4] {
        let rows = self.rows();
        let mut mp = Vec::with_capacity(rows);
        let mut np = Vec::with_capacity(rows);
        let mut mm = Vec::with_capacity(rows);
        let mut nm = Vec::with_capacity(rows);
        for i in 0..rows {
            let (m, n) = (self.mu.at(i), self.nu.at(i));
            let m_plus = m.div_ceil(2);
            let n_plus = if m == 0 && self.eps[i] == Sign::Plus { n.div_ceil(2) } else { n / 2 };
            mp.push(m_plus);
            np.push(n_plus);
            mm.push(m - m_plus);
            nm.push(n - n_plus);
        }
        [mp, np, mm, nm]
    }

    /// Subordinate bipartitions `(mu^(+); nu^(+))` and `(mu^(-); nu^(-))`,
    /// and whether the `'-'` rows had to be permuted.
    pub fn subordinates(&self) -> (Bipartition, Bipartition, bool) {
        let [mp, np, mm, nm] = self.tilde_counts();
        let plus = rectify(&mp, &np);
        let mut order: Vec<usize> = (0..self.rows()).collect();
        order.sort_by(|&a, &b| (mm[b] + nm[b]).cmp(&(mm[a] + nm[a])));
        let rearranged = order.iter().enumerate().any(|(k, &i)| k != i);
        let mm_sorted: Vec<usize> = order.iter().map(|&i| mm[i]).collect();
        let nm_sorted: Vec<usize> = order.iter().map(|&i| nm[i]).collect();
        (plus, rectify(&mm_sorted, &nm_sorted), rearranged)
    }

    /// Subordinates computed with the `'-'` rows put in the given order.
    pub fn subordinates_with_permutation(&self, order: &[usize]) -> (Bipartition, Bipartition) {
        let [mp, np, mm, nm] = self.tilde_counts();
        let mm_p: Vec<usize> = order.iter().map(|&i| mm[i]).collect();
        let nm_p: Vec<usize> = order.iter().map(|&i| nm[i]).collect();
        (rectify(&mp, &np), rectify(&mm_p, &nm_p))
    }

    /// Every simultaneous permutation of the `'-'` rows that makes the row
    /// sums weakly decreasing and keeps both sides quasipartitions.
    pub fn valid_minus_permutations(&self) -> Vec<Vec<usize>> {
        let [_, _, mm, nm] = self.tilde_counts();
        let mut sorted: Vec<usize> = (0..self.rows()).collect();
        sorted.sort_by(|&a, &b| (mm[b] + nm[b]).cmp(&(mm[a] + nm[a])));
        // a valid order must list the rows by decreasing sum, so only rows
        // with equal sums can be exchanged
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &i in &sorted {
            match blocks.last_mut() {
                Some(b) if mm[b[0]] + nm[b[0]] == mm[i] + nm[i] => b.push(i),
                _ => blocks.push(vec![i]),
            }
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        extend_block_orders(&blocks, 0, &mut current, &mut out);
        out.retain(|order| {
            let m = Composition::new(order.iter().map(|&i| mm[i]).collect());
            let n = Composition::new(order.iter().map(|&i| nm[i]).collect());
            m.is_quasipartition() && n.is_quasipartition()
        });
        out
    }

    /// Diagram predicate for the generic stratum.
    ///
    /// With `'+'` on the smaller space every row begins and ends with `'-'`.
    /// With `'+'` on the larger space every row begins and ends with `'+'`,
    /// and some box immediately left of the wall ends its row.
    pub fn generic_predicate(&self, orientation: Orientation) -> bool {
        match orientation {
            Orientation::PlusIsSmaller => self.all_begin(Sign::Minus) && self.all_end(Sign::Minus),
            Orientation::PlusIsLarger => {
                self.all_begin(Sign::Plus) && self.all_end(Sign::Plus) && self.wall_box_ends_row()
            }
        }
    }

    /// Diagram predicate for strata of codimension one.
    ///
    /// With `'+'` on the smaller space: every row begins with `'-'`, or
    /// every row ends with `'-'`. With `'+'` on the larger space: every row
    /// begins with `'+'` and some wall-adjacent box ends its row, or every
    /// row ends with `'+'`.
    pub fn codim1_predicate(&self, orientation: Orientation) -> bool {
        match orientation {
            Orientation::PlusIsSmaller => self.all_begin(Sign::Minus) || self.all_end(Sign::Minus),
            Orientation::PlusIsLarger => {
                (self.all_begin(Sign::Plus) && self.wall_box_ends_row()) || self.all_end(Sign::Plus)
            }
        }
    }

    fn all_begin(&self, s: Sign) -> bool {
        self.eps.iter().all(|&e| e == s)
    }

    fn all_end(&self, s: Sign) -> bool {
        (0..self.rows()).all(|i| {
            let len = self.mu.at(i) + self.nu.at(i);
            self.eps[i].at_offset(len - 1) == s
        })
    }

    fn wall_box_ends_row(&self) -> bool {
        (0..self.rows()).any(|i| self.mu.at(i) >= 1 && self.nu.at(i) == 0)
    }

    /// Back-to-back picture with the signs in the cells and `‖` as the wall.
    pub fn diagram(&self) -> String {
        let width = (0..self.rows()).map(|i| self.mu.at(i)).max().unwrap_or(0);
        let mut out = String::new();
        for i in 0..self.rows() {
            let signs = self.row_signs(i);
            let m = self.mu.at(i);
            out.push_str(&" ".repeat(width - m));
            out.extend(signs[..m].iter().map(|s| s.as_char()));
            out.push('‖');
            out.extend(signs[m..].iter().map(|s| s.as_char()));
            out.push('\n');
        }
        out
    }
}

fn extend_block_orders(blocks: &[Vec<usize>], k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k == blocks.len() {
        out.push(current.clone());
        return;
    }
    let mut perm = blocks[k].clone();
    permutations(&mut perm, 0, &mut |p| {
        let mark = current.len();
        current.extend_from_slice(p);
        extend_block_orders(blocks, k + 1, current, out);
        current.truncate(mark);
    });
}

fn permutations(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Rectification: `mu_i` gains a box when some lower row of `mu~` is one
/// longer, or some higher row of `nu~` is one shorter; `nu` absorbs the rest
/// of `mu~ + nu~`.
pub(crate) fn rectify(mu_t: &[usize], nu_t: &[usize]) -> Bipartition {
    let rows = mu_t.len();
    let mut mu = Vec::with_capacity(rows);
    let mut nu = Vec::with_capacity(rows);
    for i in 0..rows {
        let bump = (i + 1..rows).any(|j| mu_t[j] == mu_t[i] + 1)
            || (0..i).any(|j| nu_t[j] + 1 == nu_t[i]);
        let m = mu_t[i] + usize::from(bump);
        mu.push(m);
        nu.push(mu_t[i] + nu_t[i] - m);
    }
    Bipartition::new(
        Partition::new(mu).expect("rectified mu is a partition"),
        Partition::new(nu).expect("rectified nu is a partition"),
    )
}

impl fmt::Display for SignedQuasibipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &Composition| {
            if c.is_empty() {
                "∅".to_string()
            } else {
                c.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
            }
        };
        write!(f, "{};{};{}", show(&self.mu), show(&self.nu), signs_to_string(&self.eps))
    }
}

impl FromStr for SignedQuasibipartition {
    type Err = Error;

    /// Parses `mu;nu;signs`, e.g. `1,0;1,1;+-`.
    fn from_str(s: &str) -> Result<Self> {
        let pieces: Vec<&str> = s.trim().split(';').collect();
        if pieces.len() != 3 {
            return Err(parse_err(s, "expected 'mu;nu;signs'"));
        }
        let comp = |t: &str| -> Result<Vec<usize>> {
            let t = t.trim();
            if t.is_empty() || t == "∅" || t == "-" {
                return Ok(Vec::new());
            }
            t.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|e| parse_err(s, e.to_string())))
                .collect()
        };
        Ok(validate_sq(comp(pieces[0])?, comp(pieces[1])?, parse_signs(pieces[2])?)?)
    }
}

type SqCache = Mutex<HashMap<(usize, usize), Arc<Vec<SignedQuasibipartition>>>>;

fn sq_cache() -> &'static SqCache {
    static CACHE: OnceLock<SqCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All signed quasibipartitions of signature `(d, d')`, free signs counted
/// as distinct diagrams, in depth-first row order. Results are memoized.
pub fn enumerate_sq(d: usize, d_prime: usize) -> Arc<Vec<SignedQuasibipartition>> {
    if let Some(hit) = sq_cache().lock().expect("sq cache poisoned").get(&(d, d_prime)) {
        return Arc::clone(hit);
    }
    let mut out = Vec::new();
    let mut state = SqSearch {
        d,
        d_prime,
        mu: Vec::new(),
        nu: Vec::new(),
        eps: Vec::new(),
    };
    state.extend(0, 0, &mut out);
    let list = Arc::new(out);
    sq_cache()
        .lock()
        .expect("sq cache poisoned")
        .entry((d, d_prime))
        .or_insert_with(|| Arc::clone(&list));
    list
}

struct SqSearch {
    d: usize,
    d_prime: usize,
    mu: Vec<usize>,
    nu: Vec<usize>,
    eps: Vec<Sign>,
}

impl SqSearch {
    fn extend(&mut self, plus: usize, minus: usize, out: &mut Vec<SignedQuasibipartition>) {
        if plus == self.d && minus == self.d_prime {
            if let Ok(sq) = validate_sq(self.mu.clone(), self.nu.clone(), self.eps.clone()) {
                out.push(sq);
            }
            return;
        }
        let remaining = self.d + self.d_prime - plus - minus;
        let prev_sum = self
            .mu
            .last()
            .zip(self.nu.last())
            .map(|(m, n)| m + n)
            .unwrap_or(usize::MAX);
        let max_len = remaining.min(prev_sum);
        let mu_cap = self.mu.iter().min().map(|m| m + 1).unwrap_or(usize::MAX);
        let nu_cap = self.nu.iter().min().map(|n| n + 1).unwrap_or(usize::MAX);
        for len in (1..=max_len).rev() {
            for m in (0..=len.min(mu_cap)).rev() {
                let n = len - m;
                if n > nu_cap {
                    continue;
                }
                for sign in [Sign::Plus, Sign::Minus] {
                    if m % 2 == 1 && sign != Sign::Plus || m >= 2 && m % 2 == 0 && sign != Sign::Minus {
                        continue;
                    }
                    if len == prev_sum && self.eps.last() == Some(&Sign::Minus) && sign == Sign::Plus {
                        continue;
                    }
                    let p = plus_boxes(len, sign);
                    if plus + p > self.d || minus + (len - p) > self.d_prime {
                        continue;
                    }
                    self.mu.push(m);
                    self.nu.push(n);
                    self.eps.push(sign);
                    self.extend(plus + p, minus + len - p, out);
                    self.mu.pop();
                    self.nu.pop();
                    self.eps.pop();
                }
            }
        }
    }
}

/// Direction of a transfer between `V` and `V'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferDirection {
    EnlargeNu,
    EnlargeMu,
}

/// Image of an enhanced orbit closure on `V` transferred to `V'` of
/// dimension `d'`: `(mu; nu + 1^r)` or `(mu + 1^r; nu)` with `r = d' - d`.
pub fn transfer_image(b: &Bipartition, d: usize, d_prime: usize, direction: TransferDirection) -> Result<Bipartition> {
    if b.size() != d {
        return Err(Error::SizeMismatch { left: b.size(), right: d });
    }
    let r = d_prime
        .checked_sub(d)
        .ok_or_else(|| Error::Precondition(format!("d' = {d_prime} is smaller than d = {d}")))?;
    let rows = b.sum().len();
    if r < rows {
        return Err(Error::Precondition(format!("r = {r} is smaller than l(mu+nu) = {rows}")));
    }
    match direction {
        TransferDirection::EnlargeNu => Ok(Bipartition::new(b.mu.clone(), b.nu.add_column(r))),
        TransferDirection::EnlargeMu => {
            if r <= b.nu.len() {
                return Err(Error::Precondition(format!("r = {r} must exceed l(nu) = {}", b.nu.len())));
            }
            Ok(Bipartition::new(b.mu.add_column(r), b.nu.clone()))
        }
    }
}

/// The transferred closure computed from the diagrams themselves: the set of
/// subordinates on the far side of all diagrams whose near-side
/// subordinate lies below `b`, and its unique maximum if it has one.
pub fn transfer_maximum_by_enumeration(
    b: &Bipartition,
    d_prime: usize,
    direction: TransferDirection,
) -> Option<Bipartition> {
    let d = b.size();
    let candidates: Vec<Bipartition> = match direction {
        TransferDirection::EnlargeNu => enumerate_sq(d, d_prime)
            .iter()
            .filter_map(|sq| {
                let (plus, minus, _) = sq.subordinates();
                plus.biorder_leq(b).unwrap_or(false).then_some(minus)
            })
            .collect(),
        TransferDirection::EnlargeMu => enumerate_sq(d_prime, d)
            .iter()
            .filter_map(|sq| {
                let (plus, minus, _) = sq.subordinates();
                minus.biorder_leq(b).unwrap_or(false).then_some(plus)
            })
            .collect(),
    };
    let top = candidates
        .iter()
        .find(|c| candidates.iter().all(|o| o.biorder_leq(c).unwrap_or(false)))?;
    Some(top.clone())
}
