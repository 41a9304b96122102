//! Partition types of `(3,…,3)` on `(P^1)^n` up to coordinate permutation:
//! enumeration, the ball-type support criterion, refinements, half-twists and
//! completeness.
//!
//! Parts supported on a single coordinate are unions of fibres of that factor.
//! Listings of ball types merge all such parts on the same coordinate into one,
//! so `(0,1,0)+(0,2,0)` and `(0,3,0)` name the same case; refinement checks
//! split them back into single fibres.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use rayon::prelude::*;

use crate::chow::{to_integer, Ambient, ChowClass};
use crate::cover::PartitionType;
use crate::error::{Error, Result};
use crate::multidegree::Multidegree;

/// Largest `n` accepted by the enumerators.
pub const MAX_LINES: usize = 6;

type Row = [u8; MAX_LINES];

/// A partition type together with its canonical key, the lexicographically
/// smallest descending-sorted part list over all coordinate permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalType {
    partition: PartitionType,
}

impl CanonicalType {
    pub fn new(t: &PartitionType) -> Result<Self> {
        require_lines(t)?;
        let n = t.ambient().factors();
        let rows = to_rows(t.parts())?;
        Ok(CanonicalType::from_rows(&canon(&rows, &permutations(n)), n))
    }

    fn from_rows(rows: &[Row], n: usize) -> Self {
        let parts = rows.iter().map(|r| row_to_degree(r, n)).collect();
        let partition = PartitionType::on_lines(parts).expect("canonical rows form a valid type");
        CanonicalType { partition }
    }

    /// The canonical representative, whose parts are the key.
    pub fn partition(&self) -> &PartitionType {
        &self.partition
    }

    pub fn key(&self) -> &[Multidegree] {
        self.partition.parts()
    }

    pub fn n(&self) -> usize {
        self.partition.ambient().factors()
    }
}

impl Ord for CanonicalType {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n(), self.key()).cmp(&(other.n(), other.key()))
    }
}

impl PartialOrd for CanonicalType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for CanonicalType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.partition.fmt(f)
    }
}

pub fn canonical_key(t: &PartitionType) -> Result<Vec<Multidegree>> {
    Ok(CanonicalType::new(t)?.key().to_vec())
}

fn require_lines(t: &PartitionType) -> Result<()> {
    if !t.cover().is_triple_lines() {
        return Err(Error::Domain(format!(
            "classification needs d = 3 on a product of lines, got d = {} on {}",
            t.cover().degree(),
            t.ambient()
        )));
    }
    if t.ambient().factors() > MAX_LINES {
        return Err(Error::range(
            "number of factors",
            t.ambient().factors(),
            "1..=6",
        ));
    }
    Ok(())
}

fn to_rows(parts: &[Multidegree]) -> Result<Vec<Row>> {
    parts
        .iter()
        .map(|p| {
            let mut r = [0u8; MAX_LINES];
            for (i, &a) in p.entries().iter().enumerate() {
                r[i] = u8::try_from(a)
                    .map_err(|_| Error::InvalidPartition(format!("entry {a} of {p}")))?;
            }
            Ok(r)
        })
        .collect()
}

fn row_to_degree(r: &Row, n: usize) -> Multidegree {
    Multidegree::new(r[..n].iter().map(|&x| x as i64).collect())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

fn permute_row(r: &Row, perm: &[usize]) -> Row {
    let mut out = [0u8; MAX_LINES];
    for (i, &j) in perm.iter().enumerate() {
        out[i] = r[j];
    }
    out
}

fn canon(rows: &[Row], perms: &[Vec<usize>]) -> Vec<Row> {
    let mut best: Option<Vec<Row>> = None;
    let mut buf = Vec::with_capacity(rows.len());
    for perm in perms {
        buf.clear();
        buf.extend(rows.iter().map(|r| permute_row(r, perm)));
        buf.sort_unstable_by(|a, b| b.cmp(a));
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    best.expect("at least one permutation")
}

fn nonzero(r: &Row) -> usize {
    r.iter().filter(|&&x| x != 0).count()
}

fn rows_are_ball(rows: &[Row]) -> bool {
    if rows.iter().any(|r| nonzero(r) > 2) {
        return false;
    }
    for (a, b) in rows.iter().tuple_combinations() {
        let s = a.iter().zip(b).filter(|(x, y)| **x + **y != 0).count();
        if s > 3 {
            return false;
        }
    }
    true
}

/// Support criterion: every part has at most two nonzero entries and every
/// sum of two parts at most three.
pub fn is_ball_type(t: &PartitionType) -> Result<bool> {
    require_lines(t)?;
    Ok(rows_are_ball(&to_rows(t.parts())?))
}

fn merge_rows(rows: &[Row], n: usize) -> Vec<Row> {
    let mut out: Vec<Row> = rows.iter().filter(|r| nonzero(r) > 1).copied().collect();
    for c in 0..n {
        let s: u8 = rows.iter().filter(|r| nonzero(r) == 1).map(|r| r[c]).sum();
        if s > 0 {
            let mut r = [0u8; MAX_LINES];
            r[c] = s;
            out.push(r);
        }
    }
    out
}

/// Merges all parts supported on the same single coordinate.
pub fn merge_fibres(t: &PartitionType) -> Result<PartitionType> {
    require_lines(t)?;
    let n = t.ambient().factors();
    let rows = merge_rows(&to_rows(t.parts())?, n);
    PartitionType::on_lines(rows.iter().map(|r| row_to_degree(r, n)).collect())
}

fn integer_splits(r: u8) -> Vec<Vec<u8>> {
    match r {
        0 => vec![vec![]],
        1 => vec![vec![1]],
        2 => vec![vec![2], vec![1, 1]],
        _ => vec![vec![3], vec![2, 1], vec![1, 1, 1]],
    }
}

/// Every type on `n` columns arises from a type on `n−1` columns by
/// distributing the last column over the old rows and new pure rows.
fn extend_column(
    rows: &[Row],
    col: usize,
    keep: &(dyn Fn(&[Row]) -> bool + Sync),
) -> Vec<Vec<Row>> {
    let mut out = Vec::new();
    let mut cur = rows.to_vec();
    fn rec(
        j: usize,
        left: u8,
        col: usize,
        cur: &mut Vec<Row>,
        keep: &(dyn Fn(&[Row]) -> bool + Sync),
        out: &mut Vec<Vec<Row>>,
    ) {
        let m = cur.len();
        if j == m {
            for split in integer_splits(left) {
                let mut cand = cur.clone();
                for k in split {
                    let mut r = [0u8; MAX_LINES];
                    r[col] = k;
                    cand.push(r);
                }
                if keep(&cand) {
                    out.push(cand);
                }
            }
            return;
        }
        for x in 0..=left {
            cur[j][col] = x;
            rec(j + 1, left - x, col, cur, keep, out);
        }
        cur[j][col] = 0;
    }
    rec(0, 3, col, &mut cur, keep, &mut out);
    out
}

fn enumerate_rows(n: usize, keep: &(dyn Fn(&[Row]) -> bool + Sync)) -> Vec<Vec<Row>> {
    let mut level: Vec<Vec<Row>> = integer_splits(3)
        .into_iter()
        .map(|split| {
            split
                .iter()
                .map(|&k| {
                    let mut r = [0u8; MAX_LINES];
                    r[0] = k;
                    r
                })
                .collect()
        })
        .collect();
    for col in 1..n {
        let perms = permutations(col + 1);
        let found: HashSet<Vec<Row>> = level
            .par_iter()
            .flat_map_iter(|rows| {
                extend_column(rows, col, keep)
                    .into_iter()
                    .map(|c| canon(&c, &perms))
                    .collect::<HashSet<_>>()
            })
            .collect();
        level = found.into_iter().collect();
    }
    level.sort();
    level
}

fn check_range(n: usize) -> Result<()> {
    if !(2..=MAX_LINES).contains(&n) {
        return Err(Error::range("n", n, "2..=6"));
    }
    Ok(())
}

fn to_types(rows: Vec<Vec<Row>>, n: usize) -> Vec<CanonicalType> {
    let mut out: Vec<CanonicalType> = rows
        .iter()
        .map(|r| CanonicalType::from_rows(r, n))
        .collect();
    out.sort();
    out
}

/// All partitions of `(3,…,3)` into nonzero effective parts, one per symmetry
/// class, sorted by canonical key.
pub fn enumerate_partitions(n: usize) -> Result<Vec<CanonicalType>> {
    check_range(n)?;
    Ok(to_types(enumerate_rows(n, &|_| true), n))
}

/// Ball-type classes with fibre parts merged, sorted by canonical key.
pub fn enumerate_ball_types(n: usize) -> Result<Vec<CanonicalType>> {
    check_range(n)?;
    // deleting a coordinate keeps the support criterion, so prune while building
    let raw = enumerate_rows(n, &rows_are_ball);
    let perms = permutations(n);
    let merged: BTreeSet<Vec<Row>> = raw
        .iter()
        .map(|r| canon(&merge_rows(r, n), &perms))
        .collect();
    Ok(to_types(merged.into_iter().collect(), n))
}

/// Appends a factor `P^1` and the part `(0,…,0,3)`.
pub fn half_twist(t: &PartitionType) -> Result<PartitionType> {
    require_lines(t)?;
    let n = t.ambient().factors();
    let mut parts: Vec<Multidegree> = t.parts().iter().map(|p| p.extended(0)).collect();
    parts.push(Multidegree::pure(n + 1, n, 3));
    PartitionType::on_lines(parts)
}

/// If some coordinate carries a single part equal to `3` times its generator,
/// the type with that coordinate and part removed.
pub fn is_half_twist(t: &PartitionType) -> Option<PartitionType> {
    let n = t.ambient().factors();
    if !t.cover().is_triple_lines() || n < 2 {
        return None;
    }
    for c in 0..n {
        let touching: Vec<&Multidegree> =
            t.parts().iter().filter(|p| p.entries()[c] != 0).collect();
        if let [only] = touching[..] {
            if *only == Multidegree::pure(n, c, 3) {
                let parts = t
                    .parts()
                    .iter()
                    .filter(|p| p.entries()[c] == 0)
                    .map(|p| p.without(c))
                    .collect();
                return PartitionType::on_lines(parts).ok();
            }
        }
    }
    None
}

/// Splits every part supported on one coordinate into single fibres.
fn expand_fibres(parts: &[Multidegree]) -> Vec<Multidegree> {
    let mut out = Vec::new();
    for p in parts {
        match p.pure_coordinate() {
            Some(c) => {
                for _ in 0..p.entries()[c] {
                    out.push(Multidegree::pure(p.len(), c, 1));
                }
            }
            None => out.push(p.clone()),
        }
    }
    out
}

fn can_group(fine: &[Multidegree], used: &mut [bool], coarse: &[Multidegree], k: usize) -> bool {
    if k == coarse.len() {
        return used.iter().all(|&u| u);
    }
    let target = &coarse[k];
    let zero = Multidegree::zero(target.len());
    fn pick(
        fine: &[Multidegree],
        used: &mut [bool],
        start: usize,
        rem: &Multidegree,
        zero: &Multidegree,
        coarse: &[Multidegree],
        k: usize,
    ) -> bool {
        if rem == zero {
            return can_group(fine, used, coarse, k + 1);
        }
        for j in start..fine.len() {
            if used[j] {
                continue;
            }
            // skip duplicates of an element already tried at this depth
            if (start..j).any(|i| !used[i] && fine[i] == fine[j]) {
                continue;
            }
            let left: Vec<i64> = rem
                .entries()
                .iter()
                .zip(fine[j].entries())
                .map(|(a, b)| a - b)
                .collect();
            if left.iter().any(|&x| x < 0) {
                continue;
            }
            used[j] = true;
            if pick(fine, used, j + 1, &Multidegree::new(left), zero, coarse, k) {
                used[j] = false;
                return true;
            }
            used[j] = false;
        }
        false
    }
    pick(fine, used, 0, target, &zero, coarse, k)
}

/// Whether the parts of `fine`, with fibre parts split into single fibres,
/// can be grouped so that the group sums are exactly the parts of `coarse`.
pub fn is_refinement(fine: &PartitionType, coarse: &PartitionType) -> Result<bool> {
    if fine.cover() != coarse.cover() {
        return Err(Error::AmbientMismatch);
    }
    let f = expand_fibres(fine.parts());
    let mut c = coarse.parts().to_vec();
    // large targets first prunes earlier
    c.sort_by(|a, b| b.cmp(a));
    let mut used = vec![false; f.len()];
    Ok(can_group(&f, &mut used, &c, 0))
}

/// Refinement after some coordinate permutation of `fine`.
pub fn refines_up_to_symmetry(fine: &PartitionType, coarse: &PartitionType) -> Result<bool> {
    let n = fine.ambient().factors();
    if coarse.ambient().factors() != n {
        return Err(Error::AmbientMismatch);
    }
    for perm in permutations(n) {
        if is_refinement(&fine.permuted(&perm)?, coarse)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Symmetry classes ordered by refinement. An edge `(i, j)` says node `i` is
/// a proper refinement of node `j` with nothing strictly between.
#[derive(Debug, Clone)]
pub struct DegenerationPoset {
    nodes: Vec<CanonicalType>,
    edges: Vec<(usize, usize)>,
}

impl DegenerationPoset {
    pub fn new(nodes: Vec<CanonicalType>) -> Result<Self> {
        let m = nodes.len();
        let sizes: Vec<usize> = nodes.iter().map(|t| expand_fibres(t.key()).len()).collect();
        let rel: Vec<Vec<bool>> = (0..m)
            .into_par_iter()
            .map(|i| {
                (0..m)
                    .map(|j| {
                        // a proper refinement has strictly more fibre-split parts
                        i != j
                            && sizes[i] > sizes[j]
                            && refines_up_to_symmetry(nodes[i].partition(), nodes[j].partition())
                                .unwrap_or(false)
                    })
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if rel[i][j] && !(0..m).any(|k| rel[i][k] && rel[k][j]) {
                    edges.push((i, j));
                }
            }
        }
        Ok(DegenerationPoset { nodes, edges })
    }

    pub fn nodes(&self) -> &[CanonicalType] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Nodes that refine no other node.
    pub fn maximal(&self) -> Vec<&CanonicalType> {
        let below: HashSet<usize> = self.edges.iter().map(|&(i, _)| i).collect();
        (0..self.nodes.len())
            .filter(|i| !below.contains(i))
            .map(|i| &self.nodes[i])
            .collect()
    }

    /// Indices of the nodes that node `i` refines, directly or not.
    pub fn coarsenings(&self, i: usize) -> BTreeSet<usize> {
        let mut up: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(a, b) in &self.edges {
            up.entry(a).or_default().push(b);
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![i];
        while let Some(x) = stack.pop() {
            for &y in up.get(&x).into_iter().flatten() {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// Ball types that are not proper refinements of another ball type.
pub fn maximal_ball_types(n: usize) -> Result<Vec<CanonicalType>> {
    if !(3..=4).contains(&n) {
        return Err(Error::range("n", n, "3..=4"));
    }
    let poset = DegenerationPoset::new(enumerate_ball_types(n)?)?;
    Ok(poset.maximal().into_iter().cloned().collect())
}

fn require_ball(t: &PartitionType) -> Result<()> {
    if t.ambient().factors() < 3 {
        return Err(Error::Domain("completeness is defined for n >= 3".into()));
    }
    if !is_ball_type(t)? {
        return Err(Error::Domain(format!("{t} is not of ball type")));
    }
    Ok(())
}

/// Componentwise criterion: every sum of two parts has an entry at most 1.
pub fn is_complete(t: &PartitionType) -> Result<bool> {
    require_ball(t)?;
    Ok(t.parts()
        .iter()
        .tuple_combinations()
        .all(|(p, q)| p.add(q).entries().iter().any(|&x| x <= 1)))
}

/// Arithmetic genus of the curve cut out by two divisors on `(P^1)^3`,
/// `1 + ½ D_p D_q (K_Z + D_p + D_q)`.
pub fn intersection_genus(p: &Multidegree, q: &Multidegree) -> Result<i64> {
    if p.len() != 3 || q.len() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            got: if p.len() != 3 { p.len() } else { q.len() },
        });
    }
    if !p.is_effective() || !q.is_effective() {
        return Err(Error::Domain("genus needs effective divisors".into()));
    }
    let z = Ambient::lines(3)?;
    let canonical_twist = p.add(q).add(&Multidegree::from([-2, -2, -2]));
    let prod = ChowClass::class_of(&z, p)?
        .mul(&ChowClass::class_of(&z, q)?)?
        .mul(&ChowClass::class_of(&z, &canonical_twist)?)?;
    let twice = to_integer(&prod.integrate(), "D_p D_q (K + D_p + D_q)")?;
    if twice % 2 != 0 {
        return Err(Error::Consistency(format!(
            "odd intersection number {twice}"
        )));
    }
    Ok(1 + twice / 2)
}

/// Completeness read off the genus: every pairwise intersection on `(P^1)^3`
/// has arithmetic genus at most 0.
pub fn is_complete_by_genus(t: &PartitionType) -> Result<bool> {
    require_ball(t)?;
    if t.ambient().factors() != 3 {
        return Err(Error::Domain("the genus test is for (P^1)^3".into()));
    }
    for (p, q) in t.parts().iter().tuple_combinations() {
        if intersection_genus(p, q)? > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Complete ball types that refine no other complete ball type.
pub fn maximal_complete_types(n: usize) -> Result<Vec<CanonicalType>> {
    if !(3..=4).contains(&n) {
        return Err(Error::range("n", n, "3..=4"));
    }
    let complete: Vec<CanonicalType> = enumerate_ball_types(n)?
        .into_iter()
        .filter(|t| is_complete(t.partition()).unwrap_or(false))
        .collect();
    let poset = DegenerationPoset::new(complete)?;
    Ok(poset.maximal().into_iter().cloned().collect())
}

/// All types obtained by splitting one part of `t` into two nonzero effective
/// parts.
pub fn one_step_refinements(t: &PartitionType) -> Result<Vec<PartitionType>> {
    let mut out = Vec::new();
    for (j, p) in t.parts().iter().enumerate() {
        let ranges: Vec<std::ops::RangeInclusive<i64>> =
            p.entries().iter().map(|&a| 0..=a).collect();
        for first in ranges.into_iter().multi_cartesian_product() {
            let a = Multidegree::new(first);
            let b = Multidegree::new(
                p.entries()
                    .iter()
                    .zip(a.entries())
                    .map(|(x, y)| x - y)
                    .collect(),
            );
            if a.is_zero() || b.is_zero() || a > b {
                continue;
            }
            let mut parts = t.parts().to_vec();
            parts.remove(j);
            parts.push(a);
            parts.push(b);
            out.push(PartitionType::new(t.cover().clone(), parts)?);
        }
    }
    Ok(out)
}
