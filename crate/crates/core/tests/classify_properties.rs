use cyclicover_core::classify::{
    canonical_key, enumerate_ball_types, enumerate_partitions, half_twist, is_ball_type,
    is_complete, is_complete_by_genus, is_half_twist, is_refinement, maximal_ball_types,
    merge_fibres, one_step_refinements, refines_up_to_symmetry, CanonicalType, DegenerationPoset,
};
use cyclicover_core::hodge::git_dimension;
use cyclicover_core::multidegree::parse_parts;
use cyclicover_core::PartitionType;
use itertools::Itertools;
use proptest::prelude::*;

fn lt(s: &str) -> PartitionType {
    PartitionType::on_lines(parse_parts(s).unwrap()).unwrap()
}

#[test]
fn refinements_of_ball_types_are_ball_types() {
    for c in enumerate_partitions(3).unwrap() {
        let t = c.partition();
        if !is_ball_type(t).unwrap() {
            continue;
        }
        for r in one_step_refinements(t).unwrap() {
            assert!(is_ball_type(&r).unwrap(), "{r} refines {t}");
            assert!(is_refinement(&r, t).unwrap());
        }
    }
}

#[test]
fn half_twist_keeps_ball_type_and_dimension() {
    for n in 2..=3 {
        for c in enumerate_partitions(n).unwrap() {
            let t = c.partition();
            if !is_ball_type(t).unwrap() {
                continue;
            }
            let h = half_twist(t).unwrap();
            assert!(is_ball_type(&h).unwrap(), "{t}");
            assert_eq!(git_dimension(&h), git_dimension(t), "{t}");
            let base = is_half_twist(&h).expect("half-twist is recognised");
            assert_eq!(
                CanonicalType::new(&base).unwrap(),
                CanonicalType::new(t).unwrap()
            );
        }
    }
}

#[test]
fn merging_fibres_keeps_invariants() {
    for c in enumerate_partitions(3).unwrap() {
        let t = c.partition();
        let m = merge_fibres(t).unwrap();
        assert_eq!(is_ball_type(&m).unwrap(), is_ball_type(t).unwrap(), "{t}");
        assert_eq!(git_dimension(&m), git_dimension(t), "{t}");
        assert!(is_refinement(t, &m).unwrap() && is_refinement(&m, t).unwrap());
    }
}

#[test]
fn higher_dimensional_ball_types_are_half_twists() {
    for n in 5..=6 {
        for c in enumerate_ball_types(n).unwrap() {
            assert!(is_half_twist(c.partition()).is_some(), "{c}");
        }
    }
}

#[test]
fn four_fold_ball_types() {
    let ball = enumerate_ball_types(4).unwrap();
    let fresh: Vec<_> = ball
        .iter()
        .filter(|c| is_half_twist(c.partition()).is_none())
        .collect();
    assert_eq!(fresh.len(), 10);
    let three = enumerate_ball_types(3).unwrap();
    assert_eq!(ball.len(), fresh.len() + three.len());
    for c in &ball {
        assert!(is_complete(c.partition()).unwrap(), "{c}");
    }
}

#[test]
fn maximal_types_cover_everything() {
    let ball = enumerate_ball_types(3).unwrap();
    let maximal = maximal_ball_types(3).unwrap();
    assert_eq!(maximal.len(), 4);
    for c in &ball {
        assert!(
            maximal
                .iter()
                .any(|m| refines_up_to_symmetry(c.partition(), m.partition()).unwrap()),
            "{c}"
        );
    }
}

#[test]
fn poset_edges_are_acyclic_and_grow_parts() {
    let poset = DegenerationPoset::new(enumerate_ball_types(3).unwrap()).unwrap();
    let nodes = poset.nodes();
    for &(i, j) in poset.edges() {
        assert!(!poset.coarsenings(j).contains(&i));
        assert!(refines_up_to_symmetry(nodes[i].partition(), nodes[j].partition()).unwrap());
        assert_ne!(nodes[i].key().len(), 0);
    }
    assert_eq!(poset.maximal().len(), 4);
}

/// The componentwise completeness test and the genus test disagree on exactly
/// one three-fold ball type, where a (2,2,0)-surface meets a fibre in a genus
/// one curve.
#[test]
fn completeness_tests_compared() {
    let mismatched: Vec<String> = enumerate_ball_types(3)
        .unwrap()
        .into_iter()
        .filter(|c| {
            is_complete(c.partition()).unwrap() != is_complete_by_genus(c.partition()).unwrap()
        })
        .map(|c| c.to_string())
        .collect();
    let expected = CanonicalType::new(&lt("(2,2,0)+(1,0,1)+(0,1,1)+(0,0,1)")).unwrap();
    assert_eq!(mismatched, vec![expected.to_string()]);
}

fn sample_types() -> Vec<PartitionType> {
    enumerate_partitions(4)
        .unwrap()
        .into_iter()
        .step_by(11)
        .map(|c| c.partition().clone())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_key_ignores_symmetries(
        idx in 0usize..10_000,
        perm_idx in 0usize..24,
        shuffle in prop::collection::vec(any::<u32>(), 12),
    ) {
        let types = sample_types();
        let t = &types[idx % types.len()];
        let perms: Vec<Vec<usize>> = (0..4).permutations(4).collect();
        let p = t.permuted(&perms[perm_idx % perms.len()]).unwrap();
        let mut parts: Vec<_> = p.parts().iter().cloned().zip(shuffle).collect();
        parts.sort_by_key(|(_, k)| *k);
        let q = PartitionType::new(p.cover().clone(), parts.into_iter().map(|(m, _)| m).collect()).unwrap();
        prop_assert_eq!(canonical_key(t).unwrap(), canonical_key(&q).unwrap());
    }
}
