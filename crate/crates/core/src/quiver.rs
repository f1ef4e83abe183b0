//! Enhanced quiver varieties `Lambda_{(r_i), I}`: the chain data attached to
//! a bipartition, the stratification by compatible sequences of signed
//! quasibipartitions, exact stratum dimensions and the generic chain point.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bipartition::Bipartition;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::matrix_models::{orbit_dim_enhanced_pair, point_from_bipartition, point_from_sq};
use crate::par;
use crate::partition::Partition;
use crate::signed::{enumerate_sq, Orientation, SignedQuasibipartition};

/// At most this many failing strata are attached to each part of a report.
pub const WITNESS_LIMIT: usize = 8;

/// Chain data `(r_i)`, `I` and `dim U_i` for a bipartition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuiverData {
    pub r: Vec<usize>,
    #[serde(rename = "I")]
    pub i_set: Vec<usize>,
    pub t: usize,
    pub dims_u: Vec<usize>,
}

impl QuiverData {
    /// Columns of `mu` and `nu` sorted by length, `mu` columns first among
    /// equal lengths; `I` records where the `mu` columns land.
    pub fn from_bipartition(b: &Bipartition) -> Result<Self> {
        if b.size() == 0 {
            return Err(Error::Precondition("quiver data needs a nonempty bipartition".into()));
        }
        let mut columns: Vec<(usize, u8)> = b
            .mu
            .transpose()
            .parts()
            .iter()
            .map(|&c| (c, 0))
            .chain(b.nu.transpose().parts().iter().map(|&c| (c, 1)))
            .collect();
        columns.sort();
        let r: Vec<usize> = columns.iter().map(|c| c.0).collect();
        let i_set = columns.iter().enumerate().filter(|(_, c)| c.1 == 0).map(|(i, _)| i).collect();
        let t = r.len();
        let mut dims_u = vec![0];
        for &ri in &r {
            dims_u.push(dims_u.last().unwrap() + ri);
        }
        Ok(QuiverData { r, i_set, t, dims_u })
    }

    pub fn in_i(&self, j: usize) -> bool {
        self.i_set.binary_search(&j).is_ok()
    }

    /// `'+'` spans `U_j` for `j` outside `I` and `U_{j+1}` for `j` in `I`.
    pub fn orientation(&self, j: usize) -> Orientation {
        if self.in_i(j) {
            Orientation::PlusIsLarger
        } else {
            Orientation::PlusIsSmaller
        }
    }

    /// `(d, d')` of the diagrams labelling the `j`-th slice.
    pub fn signature(&self, j: usize) -> (usize, usize) {
        let (lo, hi) = (self.dims_u[j], self.dims_u[j + 1]);
        if self.in_i(j) {
            (hi, lo)
        } else {
            (lo, hi)
        }
    }

    /// The partition `mu + nu`, recovered from its columns.
    pub fn lambda(&self) -> Partition {
        Partition::from_unsorted(self.r.clone()).transpose()
    }

    /// `(d_(r_i), d_(r_i),I)`.
    pub fn naive_dims(&self) -> (i64, i64) {
        let squares: usize = self.dims_u[1..self.t].iter().map(|u| u * u).sum();
        let mut cross = 0;
        for i in 0..self.t {
            for j in i + 1..self.t {
                cross += self.r[i] * self.r[j];
            }
        }
        let d_r = (squares + 2 * cross) as i64;
        let extra: usize = self.i_set.iter().map(|&i| self.r[i]).sum();
        (d_r, d_r + extra as i64)
    }

    /// `I = {s, ..., t-1}` for some `s`: every `mu` column is at least as
    /// long as every `nu` column.
    pub fn i_is_final_segment(&self) -> bool {
        self.i_set.iter().enumerate().all(|(k, &i)| i == self.t - self.i_set.len() + k)
    }

    /// `I = {0, ..., s-1}` for some `s`.
    pub fn i_is_initial_segment(&self) -> bool {
        self.i_set.iter().enumerate().all(|(k, &i)| i == k)
    }
}

pub fn quiver_data(b: &Bipartition) -> Result<QuiverData> {
    QuiverData::from_bipartition(b)
}

pub fn naive_dims(q: &QuiverData) -> (i64, i64) {
    q.naive_dims()
}

/// One slice `xi_j` of a stratum label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct XiLink {
    pub sq: SignedQuasibipartition,
    pub orientation: Orientation,
}

/// A stratum `Lambda^xi` with its dimension data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub xi: Vec<XiLink>,
    /// `(rho^(j); sigma^(j))` for `0 <= j <= t`.
    pub subordinates: Vec<Bipartition>,
    pub dim_exact: i64,
    pub dim_bound: i64,
    pub corollary_bound: i64,
    pub generic: bool,
    pub codim1_predicate: bool,
    pub phi_image: Bipartition,
}

impl StratumRecord {
    /// Compact label `xi_0 | xi_1 | ...`.
    pub fn label(&self) -> String {
        self.xi.iter().map(|l| l.sq.to_string()).collect::<Vec<_>>().join(" | ")
    }
}

struct SqEntry {
    sq: SignedQuasibipartition,
    plus: Bipartition,
    minus: Bipartition,
    orbit_dim: OnceLock<usize>,
}

impl SqEntry {
    fn orbit_dim(&self) -> Result<usize> {
        if let Some(&d) = self.orbit_dim.get() {
            return Ok(d);
        }
        let d = orbit_dim_enhanced_pair(&point_from_sq(&self.sq))?;
        // a concurrent writer stores the same value
        let _ = self.orbit_dim.set(d);
        Ok(d)
    }

    fn upper(&self, o: Orientation) -> &Bipartition {
        match o {
            Orientation::PlusIsSmaller => &self.minus,
            Orientation::PlusIsLarger => &self.plus,
        }
    }
}

/// `SQ_{d,d'}` grouped by each subordinate.
struct SqIndex {
    entries: Vec<SqEntry>,
    by_plus: HashMap<Bipartition, Vec<usize>>,
    by_minus: HashMap<Bipartition, Vec<usize>>,
}

impl SqIndex {
    fn build(d: usize, d_prime: usize) -> Self {
        let mut by_plus: HashMap<Bipartition, Vec<usize>> = HashMap::new();
        let mut by_minus: HashMap<Bipartition, Vec<usize>> = HashMap::new();
        let entries: Vec<SqEntry> = enumerate_sq(d, d_prime)
            .iter()
            .map(|sq| {
                let (plus, minus, _) = sq.subordinates();
                SqEntry {
                    sq: sq.clone(),
                    plus,
                    minus,
                    orbit_dim: OnceLock::new(),
                }
            })
            .collect();
        for (k, e) in entries.iter().enumerate() {
            by_plus.entry(e.plus.clone()).or_default().push(k);
            by_minus.entry(e.minus.clone()).or_default().push(k);
        }
        SqIndex { entries, by_plus, by_minus }
    }

    fn with_lower(&self, o: Orientation, lower: &Bipartition) -> &[usize] {
        let map = match o {
            Orientation::PlusIsSmaller => &self.by_plus,
            Orientation::PlusIsLarger => &self.by_minus,
        };
        map.get(lower).map(Vec::as_slice).unwrap_or(&[])
    }
}

type IndexCache = Mutex<HashMap<(usize, usize), Arc<SqIndex>>>;

fn sq_index(d: usize, d_prime: usize) -> Arc<SqIndex> {
    static CACHE: OnceLock<IndexCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("index cache poisoned").get(&(d, d_prime)) {
        return Arc::clone(hit);
    }
    let built = Arc::new(SqIndex::build(d, d_prime));
    Arc::clone(cache.lock().expect("index cache poisoned").entry((d, d_prime)).or_insert(built))
}

/// Every stratum of `Lambda_{(r_i),I}`, in depth-first order.
pub fn enumerate_strata(q: &QuiverData) -> Result<Vec<StratumRecord>> {
    enumerate_strata_upto(q, usize::MAX)
}

/// The first `limit` strata in depth-first order.
pub fn enumerate_strata_upto(q: &QuiverData, limit: usize) -> Result<Vec<StratumRecord>> {
    let indices: Vec<Arc<SqIndex>> = (0..q.t)
        .map(|j| {
            let (d, dp) = q.signature(j);
            sq_index(d, dp)
        })
        .collect();
    let mut paths = Vec::new();
    let mut path = Vec::with_capacity(q.t);
    collect_paths(q, &indices, &Bipartition::empty(), limit, &mut path, &mut paths);
    let lambda = q.lambda();
    par::map(&paths, |p| build_record(q, &lambda, &indices, p)).into_iter().collect()
}

fn collect_paths(q: &QuiverData, indices: &[Arc<SqIndex>], lower: &Bipartition, limit: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let j = path.len();
    if out.len() >= limit {
        return;
    }
    if j == q.t {
        out.push(path.clone());
        return;
    }
    let o = q.orientation(j);
    let index = &indices[j];
    for &k in index.with_lower(o, lower) {
        path.push(k);
        collect_paths(q, indices, index.entries[k].upper(o), limit, path, out);
        path.pop();
    }
}

fn build_record(q: &QuiverData, lambda: &Partition, indices: &[Arc<SqIndex>], path: &[usize]) -> Result<StratumRecord> {
    let mut xi = Vec::with_capacity(q.t);
    let mut subordinates = vec![Bipartition::empty()];
    let mut dim_exact = 0i64;
    let (mut generic, mut codim1) = (true, true);
    for (j, &k) in path.iter().enumerate() {
        let o = q.orientation(j);
        let entry = &indices[j].entries[k];
        dim_exact += entry.orbit_dim()? as i64 - subordinates[j].enhanced_orbit_dim() as i64;
        generic &= entry.sq.generic_predicate(o);
        codim1 &= entry.sq.codim1_predicate(o);
        subordinates.push(entry.upper(o).clone());
        xi.push(XiLink {
            sq: entry.sq.clone(),
            orientation: o,
        });
    }
    let mut record = StratumRecord {
        xi,
        phi_image: subordinates[q.t].clone(),
        subordinates,
        dim_exact,
        dim_bound: 0,
        corollary_bound: 0,
        generic,
        codim1_predicate: codim1,
    };
    let (bound, corollary) = bounds(q, lambda, &record);
    record.dim_bound = bound;
    record.corollary_bound = corollary;
    Ok(record)
}

/// Coefficient of `|rho^(i)|` in the dimension bound: `-1` for `i` in `I`
/// after a gap, `+1` for `i` outside `I` (or `i = t`) right after `I`.
fn bound_coefficient(q: &QuiverData, i: usize) -> i64 {
    let (here, before) = (i < q.t && q.in_i(i), q.in_i(i - 1));
    match (here, before) {
        (true, false) => -1,
        (false, true) => 1,
        _ => 0,
    }
}

fn bounds(q: &QuiverData, lambda: &Partition, s: &StratumRecord) -> (i64, i64) {
    let (d_r, _) = q.naive_dims();
    let mut corollary = d_r;
    for i in 1..=q.t {
        corollary += bound_coefficient(q, i) * s.subordinates[i].mu.size() as i64;
    }
    let top = &s.subordinates[q.t];
    let n_shift = lambda.n_stat() as i64 - top.mu.add(&top.nu).n_stat() as i64;
    (corollary + n_shift, corollary)
}

/// `sum_j (dim C_j - dim O_j)`, recomputed from the diagrams.
pub fn stratum_dim_exact(s: &StratumRecord) -> Result<i64> {
    let mut total = 0i64;
    for (link, lower) in s.xi.iter().zip(&s.subordinates) {
        total += orbit_dim_enhanced_pair(&point_from_sq(&link.sq))? as i64 - lower.enhanced_orbit_dim() as i64;
    }
    Ok(total)
}

/// The upper bound with the `n(lambda) - n(rho^(t) + sigma^(t))` term.
pub fn stratum_dim_bound(q: &QuiverData, s: &StratumRecord) -> i64 {
    bounds(q, &q.lambda(), s).0
}

/// The weaker bound without the `n` terms.
pub fn stratum_corollary_bound(q: &QuiverData, s: &StratumRecord) -> i64 {
    bounds(q, &q.lambda(), s).1
}

/// `(rho^(t); sigma^(t))`, the orbit `Phi(Lambda^xi)`.
pub fn phi_image(s: &StratumRecord) -> Bipartition {
    s.subordinates.last().cloned().unwrap_or_default()
}

/// Outcome of one part of the conjecture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartOutcome {
    pub passed: bool,
    pub witnesses: Vec<StratumRecord>,
}

impl PartOutcome {
    fn from_witnesses(all: Vec<&StratumRecord>) -> Self {
        PartOutcome {
            passed: all.is_empty(),
            witnesses: all.into_iter().take(WITNESS_LIMIT).cloned().collect(),
        }
    }
}

/// Result of checking the three parts for one bipartition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub bipartition: Bipartition,
    pub quiver: QuiverData,
    pub d_r: i64,
    pub d_ri: i64,
    pub stratum_count: u64,
    pub max_dim: i64,
    /// Every stratum has dimension at most `d_(r_i),I`.
    pub part1: PartOutcome,
    /// Exactly one stratum has full dimension, and it is the generic one.
    pub part2: PartOutcome,
    /// Strata of codimension one satisfy the codimension-one predicates.
    pub part3: PartOutcome,
    pub unique_maximum: bool,
    pub maximum_is_generic: bool,
    pub generic_is_unique: bool,
}

impl ConjectureReport {
    pub fn parts_passed(&self) -> [bool; 3] {
        [self.part1.passed, self.part2.passed, self.part3.passed]
    }

    pub fn all_passed(&self) -> bool {
        self.parts_passed().iter().all(|&p| p)
    }
}

/// Checks the three parts of the conjecture on the strata of `b`.
///
/// Stratum dimensions add up along the chain, so the strata are never listed:
/// a dynamic program over the layered graph of subordinates counts them per
/// dimension, and failing strata are recovered from its tables.
pub fn verify_conjecture(b: &Bipartition) -> Result<ConjectureReport> {
    let q = QuiverData::from_bipartition(b)?;
    let graph = StrataGraph::build(&q)?;
    graph.report(b)
}

/// Same report computed from the full list of strata. Only practical for
/// small sizes; kept as a cross-check of [`verify_conjecture`].
pub fn verify_conjecture_exhaustive(b: &Bipartition) -> Result<ConjectureReport> {
    let q = QuiverData::from_bipartition(b)?;
    let strata = enumerate_strata(&q)?;
    Ok(evaluate(b, q, &strata))
}

/// Number of strata of `Lambda_{(r_i),I}`.
pub fn count_strata(q: &QuiverData) -> Result<u64> {
    StrataGraph::build(q)?.count()
}

/// Every orbit `Phi(Lambda^xi)` that occurs.
pub fn phi_images(q: &QuiverData) -> Result<Vec<Bipartition>> {
    Ok(StrataGraph::build(q)?.levels.pop().unwrap_or_default())
}

/// Largest `dim_exact - dim_bound` over all strata; the bound holds iff
/// this is at most zero.
pub fn max_bound_excess(q: &QuiverData) -> Result<i64> {
    StrataGraph::build(q)?.max_bound_excess()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Tally {
    total: u128,
    generic: u128,
    codim1: u128,
}

/// Suffix dimension to the number of suffixes with that dimension.
type Table = BTreeMap<i64, Tally>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Want {
    Any,
    Generic,
    NotCodim1,
}

/// Layered graph: level `j` holds the possible `(rho^(j); sigma^(j))`,
/// and the edges out of a node are the diagrams `xi_j` with that lower
/// subordinate.
struct StrataGraph<'q> {
    q: &'q QuiverData,
    indices: Vec<Arc<SqIndex>>,
    levels: Vec<Vec<Bipartition>>,
    tables: Vec<HashMap<Bipartition, Table>>,
}

impl<'q> StrataGraph<'q> {
    fn build(q: &'q QuiverData) -> Result<Self> {
        let indices: Vec<Arc<SqIndex>> = (0..q.t)
            .map(|j| {
                let (d, dp) = q.signature(j);
                sq_index(d, dp)
            })
            .collect();
        let mut levels = vec![vec![Bipartition::empty()]];
        for j in 0..q.t {
            let o = q.orientation(j);
            let next: BTreeSet<Bipartition> = levels[j]
                .iter()
                .flat_map(|node| indices[j].with_lower(o, node).iter().map(|&k| indices[j].entries[k].upper(o).clone()))
                .collect();
            levels.push(next.into_iter().collect());
        }

        // orbit dimensions of every reachable diagram, computed once
        let mut seen = HashSet::new();
        let mut edges = Vec::new();
        for j in 0..q.t {
            let o = q.orientation(j);
            for node in &levels[j] {
                for &k in indices[j].with_lower(o, node) {
                    if seen.insert((q.signature(j), k)) {
                        edges.push((j, k));
                    }
                }
            }
        }
        par::map(&edges, |&(j, k)| indices[j].entries[k].orbit_dim())
            .into_iter()
            .collect::<Result<Vec<_>>>()?;

        let mut tables: Vec<HashMap<Bipartition, Table>> = vec![HashMap::new(); q.t + 1];
        let leaf = Table::from([(0, Tally { total: 1, generic: 1, codim1: 1 })]);
        tables[q.t] = levels[q.t].iter().map(|n| (n.clone(), leaf.clone())).collect();
        for j in (0..q.t).rev() {
            let below = &tables[j + 1];
            let built = par::map(&levels[j], |node| node_table(q, &indices, j, node, below));
            let mut level = HashMap::new();
            for (node, table) in levels[j].iter().zip(built) {
                level.insert(node.clone(), table?);
            }
            tables[j] = level;
        }
        Ok(StrataGraph { q, indices, levels, tables })
    }

    /// Largest `dim_exact - dim_bound` over all strata.
    fn max_bound_excess(&self) -> Result<i64> {
        let q = self.q;
        // best suffix value of sum(w_i) - sum(c_i |rho^(i)|) + n(rho^(t) + sigma^(t))
        let mut best: HashMap<&Bipartition, i64> = self.levels[q.t].iter().map(|n| (n, n.sum().n_stat() as i64)).collect();
        for j in (0..q.t).rev() {
            let o = q.orientation(j);
            let c = bound_coefficient(q, j + 1);
            let mut level = HashMap::new();
            for node in &self.levels[j] {
                let mut top = i64::MIN;
                for &k in self.indices[j].with_lower(o, node) {
                    let entry = &self.indices[j].entries[k];
                    let child = entry.upper(o);
                    top = top.max(edge_weight(entry, node)? - c * child.mu.size() as i64 + best[child]);
                }
                level.insert(node, top);
            }
            best = level;
        }
        let (d_r, _) = q.naive_dims();
        Ok(best[&Bipartition::empty()] - d_r - q.lambda().n_stat() as i64)
    }

    fn root(&self) -> &Table {
        &self.tables[0][&Bipartition::empty()]
    }

    fn count(&self) -> Result<u64> {
        let total: u128 = self.root().values().map(|t| t.total).sum();
        u64::try_from(total).map_err(|_| Error::Overflow)
    }

    /// Up to `limit` strata of dimension `dim` of the wanted kind.
    fn find(&self, dim: i64, want: Want, limit: usize) -> Result<Vec<StratumRecord>> {
        let mut paths = Vec::new();
        let mut path = Vec::with_capacity(self.q.t);
        self.descend(&Bipartition::empty(), dim, want, limit, &mut path, &mut paths)?;
        let lambda = self.q.lambda();
        paths.iter().map(|p| build_record(self.q, &lambda, &self.indices, p)).collect()
    }

    fn descend(&self, node: &Bipartition, need: i64, want: Want, limit: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let j = path.len();
        if j == self.q.t {
            if need == 0 {
                out.push(path.clone());
            }
            return Ok(());
        }
        let o = self.q.orientation(j);
        let index = &self.indices[j];
        for &k in index.with_lower(o, node) {
            if out.len() >= limit {
                break;
            }
            let entry = &index.entries[k];
            let rest = need - edge_weight(entry, node)?;
            let child = entry.upper(o);
            let Some(tally) = self.tables[j + 1][child].get(&rest) else {
                continue;
            };
            let next = match want {
                Want::Any => (tally.total > 0).then_some(Want::Any),
                Want::Generic => (entry.sq.generic_predicate(o) && tally.generic > 0).then_some(Want::Generic),
                Want::NotCodim1 if !entry.sq.codim1_predicate(o) => (tally.total > 0).then_some(Want::Any),
                Want::NotCodim1 => (tally.total > tally.codim1).then_some(Want::NotCodim1),
            };
            if let Some(next) = next {
                path.push(k);
                self.descend(child, rest, next, limit, path, out)?;
                path.pop();
            }
        }
        Ok(())
    }

    fn report(&self, b: &Bipartition) -> Result<ConjectureReport> {
        let q = self.q;
        let (d_r, d_ri) = q.naive_dims();
        let root = self.root();
        let at = |d: i64| root.get(&d).copied().unwrap_or_default();

        let mut over = Vec::new();
        for &d in root.range(d_ri + 1..).map(|(d, _)| d) {
            over.extend(self.find(d, Want::Any, WITNESS_LIMIT - over.len())?);
            if over.len() >= WITNESS_LIMIT {
                break;
            }
        }
        let part1 = PartOutcome {
            passed: root.range(d_ri + 1..).next().is_none(),
            witnesses: over,
        };

        let full = at(d_ri);
        let generic_total: u128 = root.values().map(|t| t.generic).sum();
        let unique_maximum = full.total == 1;
        let maximum_is_generic = unique_maximum && full.generic == 1;
        let generic_is_unique = generic_total == 1;
        let part2 = if unique_maximum && maximum_is_generic && generic_is_unique {
            PartOutcome {
                passed: true,
                witnesses: Vec::new(),
            }
        } else {
            let mut w = self.find(d_ri, Want::Any, WITNESS_LIMIT)?;
            for (&d, t) in root {
                if d != d_ri && t.generic > 0 && w.len() < WITNESS_LIMIT {
                    w.extend(self.find(d, Want::Generic, WITNESS_LIMIT - w.len())?);
                }
            }
            PartOutcome {
                passed: false,
                witnesses: w,
            }
        };

        let near = at(d_ri - 1);
        let part3 = PartOutcome {
            passed: near.total == near.codim1,
            witnesses: self.find(d_ri - 1, Want::NotCodim1, WITNESS_LIMIT)?,
        };

        Ok(ConjectureReport {
            bipartition: b.clone(),
            quiver: q.clone(),
            d_r,
            d_ri,
            stratum_count: self.count()?,
            max_dim: root.keys().next_back().copied().unwrap_or(i64::MIN),
            part1,
            part2,
            part3,
            unique_maximum,
            maximum_is_generic,
            generic_is_unique,
        })
    }
}

/// `dim C_j - dim O_j` for the diagram `entry` over the orbit `lower`.
fn edge_weight(entry: &SqEntry, lower: &Bipartition) -> Result<i64> {
    Ok(entry.orbit_dim()? as i64 - lower.enhanced_orbit_dim() as i64)
}

fn node_table(q: &QuiverData, indices: &[Arc<SqIndex>], j: usize, node: &Bipartition, below: &HashMap<Bipartition, Table>) -> Result<Table> {
    let o = q.orientation(j);
    let mut table = Table::new();
    for &k in indices[j].with_lower(o, node) {
        let entry = &indices[j].entries[k];
        let w = edge_weight(entry, node)?;
        let (generic, codim1) = (entry.sq.generic_predicate(o), entry.sq.codim1_predicate(o));
        for (&d, t) in &below[entry.upper(o)] {
            let slot = table.entry(d + w).or_default();
            slot.total += t.total;
            if generic {
                slot.generic += t.generic;
            }
            if codim1 {
                slot.codim1 += t.codim1;
            }
        }
    }
    Ok(table)
}

/// Builds the report from already enumerated strata.
pub fn evaluate(b: &Bipartition, q: QuiverData, strata: &[StratumRecord]) -> ConjectureReport {
    let (d_r, d_ri) = q.naive_dims();
    let max_dim = strata.iter().map(|s| s.dim_exact).max().unwrap_or(i64::MIN);

    let part1 = PartOutcome::from_witnesses(strata.iter().filter(|s| s.dim_exact > d_ri).collect());

    let full: Vec<&StratumRecord> = strata.iter().filter(|s| s.dim_exact == d_ri).collect();
    let generic: Vec<&StratumRecord> = strata.iter().filter(|s| s.generic).collect();
    let unique_maximum = full.len() == 1;
    let maximum_is_generic = unique_maximum && full[0].generic;
    let generic_is_unique = generic.len() == 1;
    let part2 = if unique_maximum && maximum_is_generic && generic_is_unique {
        PartOutcome::from_witnesses(Vec::new())
    } else {
        let mut w = full.clone();
        w.extend(generic.iter().filter(|s| s.dim_exact != d_ri));
        PartOutcome {
            passed: false,
            witnesses: w.into_iter().take(WITNESS_LIMIT).cloned().collect(),
        }
    };

    let part3 = PartOutcome::from_witnesses(
        strata
            .iter()
            .filter(|s| s.dim_exact == d_ri - 1 && !s.codim1_predicate)
            .collect(),
    );

    ConjectureReport {
        bipartition: b.clone(),
        quiver: q,
        d_r,
        d_ri,
        stratum_count: strata.len() as u64,
        max_dim,
        part1,
        part2,
        part3,
        unique_maximum,
        maximum_is_generic,
        generic_is_unique,
    }
}

/// Explicit point `(u_i, A_i, B_i)` of `Lambda_{(r_i),I}` over a normal
/// basis point of the orbit.
#[derive(Clone, Debug, Serialize)]
pub struct GenericChain {
    pub dims_u: Vec<usize>,
    pub u: Vec<Vec<i64>>,
    pub a: Vec<IntMatrix>,
    pub b: Vec<IntMatrix>,
}

/// The generic chain with its defining equations, open-locus test and the
/// rank of the differential of the defining map.
#[derive(Clone, Debug, Serialize)]
pub struct JacobianReport {
    pub chain: GenericChain,
    pub equations_hold: bool,
    pub in_open_locus: bool,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub corank: usize,
    pub tangent_dim: usize,
}

/// Builds the chain `U_i = im x^(t-i)` and checks it.
pub fn generic_point_jacobian(b: &Bipartition) -> Result<JacobianReport> {
    let q = QuiverData::from_bipartition(b)?;
    let chain = generic_chain(b, &q)?;
    let equations_hold = chain_equations_hold(&q, &chain)?;
    let in_open_locus = chain_in_open_locus(&q, &chain)?;
    let jac = jacobian(&q, &chain);
    let rank = jac.rank()?;
    Ok(JacobianReport {
        chain,
        equations_hold,
        in_open_locus,
        rows: jac.rows(),
        cols: jac.cols(),
        rank,
        corank: jac.rows() - rank,
        tangent_dim: jac.cols() - rank,
    })
}

fn generic_chain(bp: &Bipartition, q: &QuiverData) -> Result<GenericChain> {
    let p = point_from_bipartition(bp);
    let t = q.t;
    // global basis index of each box, and the subspace basis of each U_i
    let mut boxes = Vec::new();
    for row in 0..bp.rows() {
        let len = bp.mu.at(row) + bp.nu.at(row);
        for c in 0..len {
            boxes.push((c, len));
        }
    }
    let basis: Vec<Vec<usize>> = (0..=t)
        .map(|i| {
            (0..boxes.len())
                .filter(|&g| {
                    let (c, len) = boxes[g];
                    c + (t - i) < len
                })
                .collect()
        })
        .collect();
    let dims_u: Vec<usize> = basis.iter().map(Vec::len).collect();
    debug_assert_eq!(dims_u, q.dims_u);
    let position = |i: usize, g: usize| basis[i].binary_search(&g).ok();

    let mut a = Vec::with_capacity(t);
    let mut b = Vec::with_capacity(t);
    for i in 0..t {
        let mut ai = IntMatrix::zeros(dims_u[i + 1], dims_u[i]);
        for (k, &g) in basis[i].iter().enumerate() {
            ai.set(position(i + 1, g).expect("U_i lies in U_(i+1)"), k, 1);
        }
        let mut bi = IntMatrix::zeros(dims_u[i], dims_u[i + 1]);
        for (k, &g) in basis[i + 1].iter().enumerate() {
            for target in 0..boxes.len() {
                let val = p.x.get(target, g);
                if val != 0 {
                    let row = position(i, target).expect("x maps U_(i+1) into U_i");
                    bi.set(row, k, val);
                }
            }
        }
        a.push(ai);
        b.push(bi);
    }

    let mut u = vec![Vec::new(); t + 1];
    u[t] = p.v.clone();
    for i in (0..t).rev() {
        if q.in_i(i) {
            u[i] = b[i].apply(&u[i + 1])?;
        } else {
            let mut down = vec![0; dims_u[i]];
            for (k, &g) in basis[i + 1].iter().enumerate() {
                let val = u[i + 1][k];
                if val != 0 {
                    match position(i, g) {
                        Some(pos) => down[pos] = val,
                        None => return Err(Error::ChainMembership { index: i + 1 }),
                    }
                }
            }
            u[i] = down;
        }
    }
    Ok(GenericChain { dims_u, u, a, b })
}

fn chain_equations_hold(q: &QuiverData, c: &GenericChain) -> Result<bool> {
    for i in 0..q.t {
        let ok = if q.in_i(i) {
            c.b[i].apply(&c.u[i + 1])? == c.u[i]
        } else {
            c.a[i].apply(&c.u[i])? == c.u[i + 1]
        };
        if !ok {
            return Ok(false);
        }
    }
    for i in 1..q.t {
        if c.b[i].mul(&c.a[i])? != c.a[i - 1].mul(&c.b[i - 1])? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn chain_in_open_locus(q: &QuiverData, c: &GenericChain) -> Result<bool> {
    for j in 0..q.t {
        let (a, b) = (&c.a[j], &c.b[j]);
        let injective = a.rank()? == a.cols();
        let surjective = b.rank()? == b.rows();
        let ok = if q.in_i(j) {
            (injective && !a.spans(&c.u[j + 1])?) || surjective
        } else {
            injective || surjective
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Differential of `(u_i, A_i, B_i) -> (B_i u_(i+1) - u_i, A_i u_i - u_(i+1), B_i A_i - A_(i-1) B_(i-1))`.
fn jacobian(q: &QuiverData, c: &GenericChain) -> IntMatrix {
    let t = q.t;
    let dims = &c.dims_u;
    // column offsets: all u_i, then A_i and B_i for each i
    let mut u_off = Vec::with_capacity(t + 1);
    let mut next = 0;
    for &d in dims {
        u_off.push(next);
        next += d;
    }
    let (mut a_off, mut b_off) = (Vec::with_capacity(t), Vec::with_capacity(t));
    for i in 0..t {
        a_off.push(next);
        next += dims[i + 1] * dims[i];
        b_off.push(next);
        next += dims[i] * dims[i + 1];
    }
    let cols = next;
    let a_col = |i: usize, p: usize, k: usize| a_off[i] + p * dims[i] + k;
    let b_col = |i: usize, p: usize, k: usize| b_off[i] + p * dims[i + 1] + k;

    let rows: usize = (0..t).map(|i| if q.in_i(i) { dims[i] } else { dims[i + 1] }).sum::<usize>()
        + (1..t).map(|i| dims[i] * dims[i]).sum::<usize>();
    let mut m = IntMatrix::zeros(rows, cols);
    let add = |m: &mut IntMatrix, r: usize, col: usize, v: i64| {
        if v != 0 {
            m.set(r, col, m.get(r, col) + v);
        }
    };
    let mut row = 0;
    for i in 0..t {
        if q.in_i(i) {
            for p in 0..dims[i] {
                for k in 0..dims[i + 1] {
                    add(&mut m, row, b_col(i, p, k), c.u[i + 1][k]);
                    add(&mut m, row, u_off[i + 1] + k, c.b[i].get(p, k));
                }
                add(&mut m, row, u_off[i] + p, -1);
                row += 1;
            }
        } else {
            for p in 0..dims[i + 1] {
                for k in 0..dims[i] {
                    add(&mut m, row, a_col(i, p, k), c.u[i][k]);
                    add(&mut m, row, u_off[i] + k, c.a[i].get(p, k));
                }
                add(&mut m, row, u_off[i + 1] + p, -1);
                row += 1;
            }
        }
    }
    for i in 1..t {
        for p in 0..dims[i] {
            for s in 0..dims[i] {
                // B_i' A_i + B_i A_i'
                for k in 0..dims[i + 1] {
                    add(&mut m, row, b_col(i, p, k), c.a[i].get(k, s));
                    add(&mut m, row, a_col(i, k, s), c.b[i].get(p, k));
                }
                // - A_(i-1)' B_(i-1) - A_(i-1) B_(i-1)'
                for k in 0..dims[i - 1] {
                    add(&mut m, row, a_col(i - 1, p, k), -c.b[i - 1].get(k, s));
                    add(&mut m, row, b_col(i - 1, k, s), -c.a[i - 1].get(p, k));
                }
                row += 1;
            }
        }
    }
    debug_assert_eq!(row, rows);
    m
}
