//! Closed-form Hodge numbers of the tautological eigenspace.
//!
//! On `(P^1)^n` with `d = 3` the middle Hodge number is a sum over set
//! partitions of the coordinates; the GIT dimension counts moduli of the branch
//! divisor; their difference measures how far the Hodge structure is from
//! ball type.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chow::{to_integer, Ambient};
use crate::cover::{self, CoverData, PartitionType};
use crate::error::{Error, Result};
use crate::multidegree::Multidegree;

pub const MAX_SET_PARTITION_SIZE: usize = 12;

/// A partition of `{0, …, n−1}` into nonempty blocks, each block sorted and
/// blocks ordered by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `∏ (|A| − 1)!`.
    pub fn sign_weight(&self) -> i64 {
        self.blocks
            .iter()
            .map(|b| (1..b.len() as i64).product::<i64>())
            .product()
    }

    /// Whether exactly one block has more than one element.
    pub fn has_single_big_block(&self) -> bool {
        self.blocks.iter().filter(|b| b.len() >= 2).count() == 1
    }
}

/// All set partitions of an `n`-element set, in restricted-growth-string order.
pub fn set_partitions(n: usize) -> Result<Vec<SetPartition>> {
    if !(1..=MAX_SET_PARTITION_SIZE).contains(&n) {
        return Err(Error::range("set size", n, "1..=12"));
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(pos: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        let n = labels.len();
        if pos == n {
            let mut blocks = vec![Vec::new(); max + 1];
            for (i, &l) in labels.iter().enumerate() {
                blocks[l].push(i);
            }
            out.push(SetPartition { blocks });
            return;
        }
        for l in 0..=max + 1 {
            labels[pos] = l;
            rec(pos + 1, max.max(l), labels, out);
        }
    }
    // element 0 always carries label 0
    rec(1, 0, &mut labels, &mut out);
    Ok(out)
}

fn block_product(parts: &[Multidegree], block: &[usize]) -> i64 {
    parts
        .iter()
        .map(|p| block.iter().map(|&i| p.entries()[i]).product::<i64>())
        .sum()
}

fn big_block_product(parts: &[Multidegree], sp: &SetPartition) -> i64 {
    sp.blocks()
        .iter()
        .filter(|b| b.len() >= 2)
        .map(|b| block_product(parts, b))
        .product()
}

fn require_triple_lines(t: &PartitionType) -> Result<()> {
    if !t.cover().is_triple_lines() {
        return Err(Error::Domain(format!(
            "formula needs d = 3 on a product of lines, got d = {} on {}",
            t.cover().degree(),
            t.ambient()
        )));
    }
    Ok(())
}

/// `h^n_χ` on `(P^1)^n` with `d = 3`, from the set-partition expansion.
pub fn h_chi_top(t: &PartitionType) -> Result<i64> {
    require_triple_lines(t)?;
    let n = t.ambient().factors();
    Ok(set_partitions(n)?
        .iter()
        .map(|sp| sp.sign_weight() * big_block_product(t.parts(), sp))
        .sum())
}

/// Dimension of the GIT moduli of normal-crossing divisors of this type:
/// `Σ_j (h^0(L_j) − 1) − dim Aut(Z)`.
pub fn git_dimension(t: &PartitionType) -> i64 {
    let dims = t.ambient().factor_dims();
    let sections: i64 = t
        .parts()
        .iter()
        .map(|p| {
            p.entries()
                .iter()
                .zip(dims)
                .map(|(&a, &n)| binomial(n as i64 + a, n as i64))
                .product::<i64>()
                - 1
        })
        .sum();
    let automorphisms: i64 = dims.iter().map(|&n| (n as i64 + 1).pow(2) - 1).sum();
    sections - automorphisms
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `Σ_{1≤p≤n−2} h^{p,n−p}_χ` on `(P^1)^n` with `d = 3`. Singleton blocks carry
/// no factor.
pub fn defect(t: &PartitionType) -> Result<i64> {
    require_triple_lines(t)?;
    let n = t.ambient().factors();
    if n < 2 {
        return Err(Error::range("ambient dimension", n, "n >= 2"));
    }
    Ok(set_partitions(n)?
        .iter()
        .filter(|sp| sp.len() < n)
        .map(|sp| {
            let delta = i64::from(sp.has_single_big_block());
            (sp.sign_weight() - delta) * big_block_product(t.parts(), sp)
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeSummary {
    pub euler_ambient: i64,
    pub euler_branch: i64,
    pub euler_cover: i64,
    pub primitive_betti: i64,
    /// `h^n_χ`; on general ambients the per-character share `b'/(d−1)`.
    pub h_chi_top: i64,
    /// `h^{n−1,1}_χ`, taken to be the GIT dimension.
    pub h_chi_next: i64,
    pub defect: i64,
    pub is_ball: bool,
}

/// All invariants of `t`, computed by the Chow integrals and, on `(P^1)^n`
/// with `d = 3`, also by the combinatorial formulas, which must agree.
pub fn hodge_summary(t: &PartitionType) -> Result<HodgeSummary> {
    let euler_cover = cover::euler_cover(t)?;
    let euler_branch = cover::euler_branch(t)?;
    let euler_ambient = t.ambient().euler();
    let d = t.cover().degree() as i64;
    if euler_cover != d * euler_ambient - (d - 1) * euler_branch {
        return Err(Error::Consistency(format!(
            "e(Y) = {euler_cover} but d e(Z) - (d-1) e(D) = {}",
            d * euler_ambient - (d - 1) * euler_branch
        )));
    }
    let primitive_betti = cover::primitive_betti(t)?;
    let per_character = cover::betti_per_character(t)?;
    let git = git_dimension(t);

    let (h_top, defect) = if t.cover().is_triple_lines() && t.ambient().factors() >= 2 {
        let h = h_chi_top(t)?;
        if 2 * h != primitive_betti {
            return Err(Error::Consistency(format!(
                "2 h_chi = {} but b' = {primitive_betti}",
                2 * h
            )));
        }
        let def = defect(t)?;
        if def != h - 1 - git {
            return Err(Error::Consistency(format!(
                "defect {def} differs from h_chi - 1 - git = {}",
                h - 1 - git
            )));
        }
        (h, def)
    } else {
        (per_character, per_character - 1 - git)
    };

    Ok(HodgeSummary {
        euler_ambient,
        euler_branch,
        euler_cover,
        primitive_betti,
        h_chi_top: h_top,
        h_chi_next: git,
        defect,
        is_ball: defect == 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveSpaceInvariants {
    pub primitive_betti: i64,
    pub git_dimension: i64,
    /// `b'/(d−1) − 1 − git`.
    pub defect: i64,
    pub is_ball: bool,
}

/// Integer partitions of `n` as descending part lists.
fn integer_partitions(n: u32) -> Vec<Vec<u32>> {
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
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Invariants of the degree-`d` cover of `P^n` branched along hypersurfaces of
/// the given degrees, from the power-sum expansion over integer partitions.
pub fn projective_space_invariants(
    n: u32,
    d: u32,
    degrees: &[u32],
) -> Result<ProjectiveSpaceInvariants> {
    if !(1..=MAX_SET_PARTITION_SIZE as u32).contains(&n) {
        return Err(Error::range("projective dimension", n as usize, "1..=12"));
    }
    if d < 2 {
        return Err(Error::InvalidCover(format!("degree {d} < 2")));
    }
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::InvalidPartition(
            "hypersurface degrees must be positive".into(),
        ));
    }
    let total: u64 = degrees.iter().map(|&l| l as u64).sum();
    if d as u64 * (n as u64 + 1) != (d as u64 - 1) * total {
        return Err(Error::InvalidCover(format!(
            "Calabi-Yau condition fails: {d}*{} != {}*{total}",
            n + 1,
            d - 1
        )));
    }
    let power_sum = |t: u32| -> BigInt { degrees.iter().map(|&l| BigInt::from(l).pow(t)).sum() };
    let shift = BigInt::from(n + 1);

    let mut sum = BigRational::zero();
    for pi in integer_partitions(n) {
        let mut term = BigRational::one();
        let mut k = 0;
        while k < pi.len() {
            let t = pi[k];
            let mult = pi[k..].iter().take_while(|&&x| x == t).count();
            let base = BigRational::new(power_sum(t) - &shift, BigInt::from(t));
            let mut factorial = BigInt::one();
            for r in 1..=mult {
                factorial *= r;
            }
            term = term * num_traits::pow(base, mult) / BigRational::from_integer(factorial);
            k += mult;
        }
        sum += term;
    }
    let per_character = to_integer(&sum, "b'/(d-1)")?;
    let primitive_betti = (d as i64 - 1) * per_character;

    let git_dimension = degrees
        .iter()
        .map(|&l| binomial(n as i64 + l as i64, n as i64) - 1)
        .sum::<i64>()
        - (n as i64 + 1).pow(2)
        + 1;
    let defect = per_character - 1 - git_dimension;
    Ok(ProjectiveSpaceInvariants {
        primitive_betti,
        git_dimension,
        defect,
        is_ball: defect == 0,
    })
}

/// The same cover as a [`PartitionType`] on `P^n`, for cross-checks against the
/// Chow integrals.
pub fn projective_space_type(n: u32, d: u32, degrees: &[u32]) -> Result<PartitionType> {
    let cover = CoverData::calabi_yau(Ambient::projective(n)?, d)?;
    PartitionType::new(
        cover,
        degrees
            .iter()
            .map(|&l| Multidegree::from(vec![l as i64]))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multidegree::parse_parts;

    fn lines_type(s: &str) -> PartitionType {
        PartitionType::on_lines(parse_parts(s).unwrap()).unwrap()
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=6).map(|n| set_partitions(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203]);
        assert_eq!(set_partitions(1).unwrap()[0].blocks(), &[vec![0]]);
        assert!(set_partitions(0).is_err());
        assert!(set_partitions(13).is_err());
    }

    #[test]
    fn set_partitions_are_partitions() {
        for sp in set_partitions(5).unwrap() {
            let mut all: Vec<usize> = sp.blocks().iter().flatten().copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..5).collect::<Vec<_>>());
        }
    }

    #[test]
    fn middle_hodge_numbers() {
        assert_eq!(h_chi_top(&lines_type("(3,3,0)+(0,0,3)")), Ok(10));
        assert_eq!(h_chi_top(&lines_type("(3,3,3)")), Ok(82));
        assert_eq!(h_chi_top(&lines_type("(3,3)")), Ok(10));
        let p3 = projective_space_type(3, 3, &[1, 1, 1, 1, 1, 1]).unwrap();
        assert!(matches!(h_chi_top(&p3), Err(Error::Domain(_))));
    }

    #[test]
    fn git_dimensions() {
        assert_eq!(git_dimension(&lines_type("(3,3,0)+(0,0,3)")), 9);
        assert_eq!(git_dimension(&lines_type("(2,2,0)+(1,0,2)+(0,1,1)")), 7);
        let p3 = projective_space_type(3, 3, &[1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(git_dimension(&p3), 3);
    }

    #[test]
    fn defects() {
        assert_eq!(defect(&lines_type("(3,3,0)+(0,0,3)")), Ok(0));
        assert_eq!(defect(&lines_type("(3,3,3)")), Ok(27));
        assert_eq!(defect(&lines_type("(3,3,3,3)")), Ok(756));
        assert_eq!(h_chi_top(&lines_type("(3,3,3,3)")), Ok(1000));
        assert_eq!(git_dimension(&lines_type("(3,3,3,3)")), 243);
    }

    #[test]
    fn summaries() {
        let s = hodge_summary(&lines_type("(3,2,0)+(0,1,3)")).unwrap();
        assert_eq!((s.h_chi_next, s.defect, s.is_ball), (9, 0, true));
        let s = hodge_summary(&lines_type("(2,1,0)+(1,0,2)+(0,2,1)")).unwrap();
        assert_eq!((s.h_chi_next, s.is_ball), (6, true));
        let s = hodge_summary(&lines_type("(3,3,3)")).unwrap();
        assert!(!s.is_ball);
        assert_eq!(s.primitive_betti, 164);
        assert_eq!(s.h_chi_top, 1 + s.h_chi_next + s.defect);
    }

    #[test]
    fn projective_space_cases() {
        let v = projective_space_invariants(3, 3, &[1; 6]).unwrap();
        assert!(v.is_ball);
        assert_eq!(v.git_dimension, 3);
        let v = projective_space_invariants(3, 5, &[1, 2, 2]).unwrap();
        assert!(v.is_ball);
        assert_eq!(v.git_dimension, 6);
        let v = projective_space_invariants(3, 3, &[2, 2, 2]).unwrap();
        assert!(!v.is_ball);
        // b' = (2/3)s3 + 2 s2 - 8 and git = s3/6 + s2 - 4 with s2 = 12, s3 = 24
        assert_eq!(v.primitive_betti, 16 + 24 - 8);
        assert_eq!(v.git_dimension, 4 + 12 - 4);
        assert_eq!(v.defect, 3);
        assert!(projective_space_invariants(3, 3, &[1, 1]).is_err());
    }

    #[test]
    fn projective_space_summary_matches() {
        let t = projective_space_type(3, 5, &[1, 1, 1, 2]).unwrap();
        let s = hodge_summary(&t).unwrap();
        let v = projective_space_invariants(3, 5, &[1, 1, 1, 2]).unwrap();
        assert_eq!(s.primitive_betti, v.primitive_betti);
        assert_eq!(s.h_chi_next, v.git_dimension);
        assert_eq!(s.is_ball, v.is_ball);
        assert_eq!(s.h_chi_next, 3);
    }
}
