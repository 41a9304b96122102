use cyclicover_core::classify::{enumerate_partitions, is_ball_type};
use cyclicover_core::cover::primitive_betti;
use cyclicover_core::hodge::{
    defect, git_dimension, h_chi_top, hodge_summary, projective_space_invariants,
    projective_space_type,
};

/// Multisets of positive integers summing to `total`, descending.
fn degree_multisets(total: u32) -> Vec<Vec<u32>> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rem.min(max)).rev() {
            cur.push(k);
            rec(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

#[test]
fn set_partition_formula_matches_chow_integral() {
    for n in 2..=3 {
        for c in enumerate_partitions(n).unwrap() {
            let t = c.partition();
            assert_eq!(
                2 * h_chi_top(t).unwrap(),
                primitive_betti(t).unwrap(),
                "{t}"
            );
        }
    }
}

#[test]
fn defect_identity_and_support_criterion() {
    for n in 3..=5 {
        for c in enumerate_partitions(n).unwrap() {
            let t = c.partition();
            let def = defect(t).unwrap();
            assert_eq!(def, h_chi_top(t).unwrap() - 1 - git_dimension(t), "{t}");
            assert!(def >= 0, "{t}");
            assert_eq!(def == 0, is_ball_type(t).unwrap(), "{t}");
        }
    }
}

#[test]
fn surfaces_satisfy_betti_git_relation() {
    for c in enumerate_partitions(2).unwrap() {
        let t = c.partition();
        assert_eq!(primitive_betti(t).unwrap(), 2 * git_dimension(t) + 2, "{t}");
        assert_eq!(defect(t).unwrap(), 0, "{t}");
    }
}

#[test]
fn summaries_are_self_consistent() {
    for c in enumerate_partitions(3).unwrap() {
        let s = hodge_summary(c.partition()).unwrap();
        assert_eq!(s.primitive_betti, -(s.euler_cover - s.euler_ambient));
        assert_eq!(s.h_chi_top, 1 + s.h_chi_next + s.defect);
        assert_eq!(s.is_ball, s.defect == 0);
    }
}

#[test]
fn projective_space_formula_matches_chow_integral() {
    for (d, total) in [(3u32, 6u32), (5, 5)] {
        for degrees in degree_multisets(total) {
            let v = projective_space_invariants(3, d, &degrees).unwrap();
            let t = projective_space_type(3, d, &degrees).unwrap();
            assert_eq!(
                v.primitive_betti,
                primitive_betti(&t).unwrap(),
                "{d} {degrees:?}"
            );
            assert_eq!(v.git_dimension, git_dimension(&t), "{d} {degrees:?}");
        }
    }
}

#[test]
fn projective_space_closed_forms() {
    for degrees in degree_multisets(6) {
        let s2: i64 = degrees.iter().map(|&l| (l * l) as i64).sum();
        let s3: i64 = degrees.iter().map(|&l| (l * l * l) as i64).sum();
        let v = projective_space_invariants(3, 3, &degrees).unwrap();
        assert_eq!(3 * v.primitive_betti, 2 * s3 + 6 * s2 - 24, "{degrees:?}");
        assert_eq!(6 * v.git_dimension, s3 + 6 * s2 - 24, "{degrees:?}");
        assert_eq!(6 * v.defect, s3 - 6, "{degrees:?}");
    }
}
