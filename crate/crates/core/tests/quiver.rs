mod common;

use enorb_core::quiver::{count_strata, max_bound_excess, phi_images};
use enorb_core::{
    enumerate_bipartitions, enumerate_strata, enumerate_strata_upto, generic_point_jacobian, quiver_data, verify_conjecture,
    verify_conjecture_exhaustive, Bipartition, IntMatrix, Sign, StratumRecord,
};

fn bp(s: &str) -> Bipartition {
    s.parse().unwrap()
}

fn oracle_bipartition_dim(b: &Bipartition) -> i64 {
    let (v, x) = common::bipartition_point(b.mu.parts(), b.nu.parts());
    common::enhanced_orbit_dim(&v, &x) as i64
}

/// `sum_j (dim C_j - dim O_(rho^(j)))` with every dimension from the rank oracle.
fn oracle_stratum_dim(s: &StratumRecord) -> i64 {
    s.xi.iter()
        .zip(&s.subordinates)
        .map(|(link, lower)| {
            let sq = &link.sq;
            let rows: Vec<(usize, bool)> = (0..sq.rows()).map(|i| (sq.mu.at(i) + sq.nu.at(i), sq.eps[i] == Sign::Plus)).collect();
            let walls: Vec<usize> = (0..sq.rows()).map(|i| sq.mu.at(i)).collect();
            let (v, x, y, d, dp) = common::signed_point(&rows, &walls);
            common::enhanced_pair_orbit_dim(&v, &x, &y, d, dp) as i64 - oracle_bipartition_dim(lower)
        })
        .sum()
}

#[test]
fn quiver_data_of_the_example() {
    let q = quiver_data(&bp("2,1;1")).unwrap();
    assert_eq!(q.r, [1, 1, 2]);
    assert_eq!(q.i_set, [0, 2]);
    assert_eq!(q.naive_dims(), (15, 18));
    let json = serde_json::to_value(&q).unwrap();
    assert_eq!(json, serde_json::json!({"r": [1, 1, 2], "I": [0, 2], "t": 3, "dims_u": [0, 1, 2, 4]}));
    assert!(quiver_data(&Bipartition::empty()).is_err());
}

#[test]
fn naive_dimension_difference_is_the_boundary_sum() {
    // coordinates minus equations: arrows both ways, commutation relations
    // on U_1..U_(t-1), vectors u_1..u_t, one vector relation per step
    for n in 1..=7 {
        for b in enumerate_bipartitions(n) {
            let q = quiver_data(&b).unwrap();
            let u = &q.dims_u;
            let (d_r, d_ri) = q.naive_dims();
            let arrows: i64 = (0..q.t).map(|i| 2 * (u[i] * u[i + 1]) as i64).sum();
            let commutation: i64 = (1..q.t).map(|i| (u[i] * u[i]) as i64).sum();
            let vectors: i64 = (1..=q.t).map(|i| u[i] as i64).sum();
            let relations: i64 = (0..q.t).map(|i| if q.in_i(i) { u[i] } else { u[i + 1] } as i64).sum();
            assert_eq!(d_ri, arrows - commutation + vectors - relations, "{b}");
            assert_eq!(d_r, arrows - commutation, "{b}");
        }
    }
}

#[test]
fn counterexample_stratum() {
    let b = bp("2,1;1");
    let q = quiver_data(&b).unwrap();
    let strata = enumerate_strata(&q).unwrap();
    let s = strata.iter().find(|s| s.label() == "1;∅;+ | 1;1,1;+- | 1,1;2,2;++").unwrap();
    let (_, d_ri) = q.naive_dims();
    assert_eq!(d_ri - oracle_stratum_dim(s), 1);
    assert_eq!(s.phi_image, bp("1,1;1,1"));
    assert_eq!(oracle_bipartition_dim(&b) - oracle_bipartition_dim(&s.phi_image), 3);
    assert!(s.codim1_predicate);
    assert!(verify_conjecture(&b).unwrap().all_passed());
}

#[test]
fn exact_dimensions_against_rank() {
    for n in 1..=3 {
        for b in enumerate_bipartitions(n) {
            let q = quiver_data(&b).unwrap();
            for s in enumerate_strata(&q).unwrap() {
                assert_eq!(s.dim_exact, oracle_stratum_dim(&s), "{b}: {}", s.label());
            }
        }
    }
}

#[test]
fn stratum_counts() {
    let expected = [3u64, 26, 378, 10306];
    for (n, &want) in (1..=4).zip(&expected) {
        let mut dp_total = 0;
        let mut listed = 0;
        for b in enumerate_bipartitions(n) {
            let q = quiver_data(&b).unwrap();
            let count = count_strata(&q).unwrap();
            assert_eq!(count as usize, enumerate_strata(&q).unwrap().len(), "{b}");
            dp_total += count;
            listed += count;
        }
        assert_eq!((dp_total, listed), (want, want), "n = {n}");
    }
    let five: u64 = enumerate_bipartitions(5).iter().map(|b| count_strata(&quiver_data(b).unwrap()).unwrap()).sum();
    assert_eq!(five, 489_978);
}

#[test]
fn dynamic_programme_agrees_with_listing() {
    for n in 1..=4 {
        for b in enumerate_bipartitions(n) {
            let fast = verify_conjecture(&b).unwrap();
            let slow = verify_conjecture_exhaustive(&b).unwrap();
            assert_eq!(fast.parts_passed(), slow.parts_passed(), "{b}");
            assert_eq!(
                (fast.stratum_count, fast.max_dim, fast.d_r, fast.d_ri),
                (slow.stratum_count, slow.max_dim, slow.d_r, slow.d_ri),
                "{b}"
            );
            assert_eq!(
                (fast.unique_maximum, fast.maximum_is_generic, fast.generic_is_unique),
                (slow.unique_maximum, slow.maximum_is_generic, slow.generic_is_unique),
                "{b}"
            );
            let q = quiver_data(&b).unwrap();
            let strata = enumerate_strata(&q).unwrap();
            let excess = strata.iter().map(|s| s.dim_exact - s.dim_bound).max().unwrap();
            assert_eq!(max_bound_excess(&q).unwrap(), excess, "{b}");
            let mut images: Vec<Bipartition> = strata.iter().map(|s| s.phi_image.clone()).collect();
            images.sort();
            images.dedup();
            let mut fast_images = phi_images(&q).unwrap();
            fast_images.sort();
            assert_eq!(fast_images, images, "{b}");
        }
    }
}

#[test]
fn images_lie_in_the_closure_and_bounds_hold() {
    for n in 1..=4 {
        for b in enumerate_bipartitions(n) {
            let q = quiver_data(&b).unwrap();
            for s in enumerate_strata(&q).unwrap() {
                assert!(s.phi_image.biorder_leq(&b).unwrap(), "{b}: {}", s.label());
                assert!(s.dim_exact <= s.dim_bound, "{b}: {}", s.label());
                assert!(s.dim_bound <= s.corollary_bound, "{b}: {}", s.label());
            }
        }
    }
}

#[test]
fn limited_listing() {
    let q = quiver_data(&bp("2,1;1")).unwrap();
    let all = enumerate_strata(&q).unwrap();
    let some = enumerate_strata_upto(&q, 5).unwrap();
    assert_eq!(some.len(), 5);
    assert_eq!(&all[..5], &some[..]);
}

#[test]
fn stratum_json_shape() {
    let q = quiver_data(&bp("1;∅")).unwrap();
    let s = &enumerate_strata(&q).unwrap()[0];
    let json = serde_json::to_value(s).unwrap();
    let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["xi", "subordinates", "dim_exact", "dim_bound", "corollary_bound", "generic", "codim1_predicate", "phi_image"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(json["xi"][0]["orientation"], "plus_is_larger");
}

fn mat(m: &IntMatrix) -> common::Mat {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>], inner: usize, cols: usize) -> common::Mat {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

/// Chain coordinates `u_1..u_t, (A_i, B_i)_i` flattened, and the defining
/// equations evaluated on such a vector.
struct Chain {
    dims: Vec<usize>,
    in_i: Vec<bool>,
}

impl Chain {
    fn unpack(&self, z: &[i64]) -> (Vec<Vec<i64>>, Vec<common::Mat>, Vec<common::Mat>) {
        let t = self.in_i.len();
        let mut it = z.iter().copied();
        let mut take = |n: usize| -> Vec<i64> { (&mut it).take(n).collect() };
        let mut u = vec![Vec::new()];
        for i in 1..=t {
            u.push(take(self.dims[i]));
        }
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for i in 0..t {
            let (lo, hi) = (self.dims[i], self.dims[i + 1]);
            let flat = take(hi * lo);
            a.push((0..hi).map(|r| flat[r * lo..(r + 1) * lo].to_vec()).collect());
            let flat = take(lo * hi);
            b.push((0..lo).map(|r| flat[r * hi..(r + 1) * hi].to_vec()).collect());
        }
        (u, a, b)
    }

    fn equations(&self, z: &[i64]) -> Vec<i64> {
        let t = self.in_i.len();
        let (u, a, b) = self.unpack(z);
        let mut out = Vec::new();
        for i in 0..t {
            let (lhs, rhs) = if self.in_i[i] {
                (common::apply(&b[i], &u[i + 1]), u[i].clone())
            } else {
                (common::apply(&a[i], &u[i]), u[i + 1].clone())
            };
            out.extend(lhs.iter().zip(&rhs).map(|(x, y)| x - y));
        }
        for i in 1..t {
            let d = self.dims[i];
            let ba = mul(&b[i], &a[i], self.dims[i + 1], d);
            let ab = mul(&a[i - 1], &b[i - 1], self.dims[i - 1], d);
            out.extend(ba.iter().flatten().zip(ab.iter().flatten()).map(|(x, y)| x - y));
        }
        out
    }
}

#[test]
fn generic_chain_against_finite_differences() {
    for n in 1..=4 {
        for b in enumerate_bipartitions(n) {
            let q = quiver_data(&b).unwrap();
            let r = generic_point_jacobian(&b).unwrap();
            assert!(r.equations_hold && r.in_open_locus, "{b}");
            let chain = Chain {
                dims: q.dims_u.clone(),
                in_i: (0..q.t).map(|i| q.in_i(i)).collect(),
            };
            let mut z: Vec<i64> = r.chain.u[1..].iter().flatten().copied().collect();
            for i in 0..q.t {
                z.extend(mat(&r.chain.a[i]).into_iter().flatten());
                z.extend(mat(&r.chain.b[i]).into_iter().flatten());
            }
            assert!(chain.equations(&z).iter().all(|&e| e == 0), "{b}");
            // equations are at most quadratic, so central differences are exact
            let columns: Vec<Vec<i64>> = (0..z.len())
                .map(|k| {
                    let (mut up, mut down) = (z.clone(), z.clone());
                    up[k] += 1;
                    down[k] -= 1;
                    let (f, g) = (chain.equations(&up), chain.equations(&down));
                    f.iter().zip(&g).map(|(x, y)| (x - y) / 2).collect()
                })
                .collect();
            let rows = columns[0].len();
            let jac: common::Mat = (0..rows).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
            let rank = common::rank(&jac);
            assert_eq!((r.rows, r.cols, r.rank), (rows, z.len(), rank), "{b}");
            assert_eq!(r.corank, 0, "{b}");
            assert_eq!(r.tangent_dim as i64, q.naive_dims().1, "{b}");
        }
    }
}
