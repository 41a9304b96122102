use cyclicover_core::classify::{
    enumerate_ball_types, enumerate_partitions, half_twist, is_ball_type,
};
use cyclicover_core::dm::{all_weights, derive_weights, valid_projections, WEIGHT_TOTAL};
use cyclicover_core::hodge::git_dimension;
use cyclicover_core::multidegree::parse_parts;
use cyclicover_core::PartitionType;
use itertools::Itertools;
use std::collections::BTreeSet;

fn lt(s: &str) -> PartitionType {
    PartitionType::on_lines(parse_parts(s).unwrap()).unwrap()
}

#[test]
fn weights_sum_and_count_points() {
    for n in 2..=4 {
        for c in enumerate_partitions(n).unwrap() {
            let t = c.partition();
            for (_, w) in all_weights(t).unwrap() {
                assert_eq!(w.total(), WEIGHT_TOTAL, "{t}");
                if is_ball_type(t).unwrap() {
                    assert_eq!(w.ball_dimension(), git_dimension(t), "{t}");
                }
            }
        }
    }
}

#[test]
fn valid_projection_implies_ball_type() {
    for n in 3..=4 {
        for c in enumerate_partitions(n).unwrap() {
            if !valid_projections(c.partition()).is_empty() {
                assert!(is_ball_type(c.partition()).unwrap(), "{c}");
            }
        }
    }
}

#[test]
fn surfaces_have_both_projections() {
    for c in enumerate_ball_types(2).unwrap() {
        assert_eq!(valid_projections(c.partition()), vec![0, 1]);
    }
}

#[test]
fn half_twist_inherits_weights() {
    for base in ["(3,2)+(0,1)", "(3,1)+(0,2)", "(3,3)", "(2,1)+(1,1)+(0,1)"] {
        let t = lt(base);
        let h = half_twist(&t).unwrap();
        let from_base: BTreeSet<_> = all_weights(&t)
            .unwrap()
            .into_iter()
            .map(|(_, w)| w)
            .collect();
        let from_twist: BTreeSet<_> = all_weights(&h)
            .unwrap()
            .into_iter()
            .map(|(_, w)| w)
            .collect();
        assert!(from_base.is_subset(&from_twist), "{base}");
    }
}

#[test]
fn weights_ignore_symmetries_fixing_the_projection() {
    for c in enumerate_ball_types(4).unwrap() {
        let t = c.partition();
        for i in valid_projections(t) {
            let w = derive_weights(t, i).unwrap();
            for perm in (0..4).permutations(4).filter(|p| p[i] == i) {
                assert_eq!(derive_weights(&t.permuted(&perm).unwrap(), i).unwrap(), w);
            }
            let mut rev = t.parts().to_vec();
            rev.reverse();
            let r = PartitionType::new(t.cover().clone(), rev).unwrap();
            assert_eq!(derive_weights(&r, i).unwrap(), w);
        }
    }
}
