mod common;

use std::collections::BTreeSet;

use enorb_core::{enumerate_partitions, nilpotent_orbit_dim, Error, Partition};
use proptest::prelude::*;

fn arb_partition() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..10, 0..10).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

#[test]
fn counts_follow_pentagonal_recurrence() {
    for n in 0..=25 {
        assert_eq!(enumerate_partitions(n).len() as u64, common::partition_count(n), "n = {n}");
    }
    assert_eq!(common::partition_count(20), 627);
}

#[test]
fn enumeration_is_reverse_lexicographic() {
    for n in 0..=10 {
        let got: Vec<Vec<usize>> = enumerate_partitions(n).iter().map(|l| l.parts().to_vec()).collect();
        assert_eq!(got, common::partitions(n), "n = {n}");
    }
    let five: Vec<String> = enumerate_partitions(5).iter().map(|l| l.to_string()).collect();
    assert_eq!(five, ["5", "4,1", "3,2", "3,1,1", "2,2,1", "2,1,1,1", "1,1,1,1,1"]);
}

proptest! {
    #[test]
    fn transpose_is_conjugation(v in arb_partition()) {
        let lam = p(&v);
        prop_assert_eq!(lam.transpose().parts().to_vec(), common::conjugate(&v));
        prop_assert_eq!(lam.transpose().transpose(), lam.clone());
        prop_assert_eq!(lam.transpose().size(), lam.size());
    }

    #[test]
    fn n_stat_by_rows_and_columns(v in arb_partition()) {
        let lam = p(&v);
        let by_columns: usize = common::conjugate(&v).iter().map(|c| c * c.saturating_sub(1) / 2).sum();
        prop_assert_eq!(lam.n_stat(), common::n_stat(&v));
        prop_assert_eq!(lam.n_stat_by_columns(), by_columns);
    }

    #[test]
    fn display_parse_round_trip(v in arb_partition()) {
        let lam = p(&v);
        prop_assert_eq!(lam.to_string().parse::<Partition>().unwrap(), lam);
    }
}

fn dominated(a: &[usize], b: &[usize]) -> bool {
    let len = a.len().max(b.len());
    let (mut sa, mut sb) = (0, 0);
    (0..len).all(|i| {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        sa <= sb
    })
}

#[test]
fn dominance_matches_prefix_sums() {
    for n in 0..=8 {
        let all = common::partitions(n);
        for a in &all {
            for b in &all {
                assert_eq!(p(a).dominance_leq(&p(b)).unwrap(), dominated(a, b), "{a:?} <= {b:?}");
            }
        }
    }
    assert!(matches!(p(&[2]).dominance_leq(&p(&[1])), Err(Error::SizeMismatch { .. })));
}

#[test]
fn covers_are_the_hasse_diagram() {
    for n in 0..=8 {
        let all = common::partitions(n);
        for top in &all {
            let below: Vec<&Vec<usize>> = all.iter().filter(|b| *b != top && dominated(b, top)).collect();
            let expected: BTreeSet<Vec<usize>> = below
                .iter()
                .filter(|b| !below.iter().any(|m| m != *b && dominated(b, m)))
                .map(|b| (*b).clone())
                .collect();
            let got: BTreeSet<Vec<usize>> = p(top).covers().iter().map(|c| c.parts().to_vec()).collect();
            assert_eq!(got, expected, "covers of {top:?}");
        }
    }
}

#[test]
fn nilpotent_dimension_matches_rank() {
    for n in 0..=6 {
        for lam in common::partitions(n) {
            let (_, x) = common::bipartition_point(&[], &lam);
            assert_eq!(nilpotent_orbit_dim(&p(&lam), n).unwrap(), common::nilpotent_orbit_dim(&x), "{lam:?}");
        }
    }
    assert!(nilpotent_orbit_dim(&p(&[2, 1]), 4).is_err());
}

#[test]
fn parse_rejects_bad_input() {
    assert!("1,2".parse::<Partition>().is_err());
    assert!("a".parse::<Partition>().is_err());
    assert_eq!("3,1,1".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
    assert_eq!(Partition::empty().to_string().parse::<Partition>().unwrap(), Partition::empty());
}
