//! Deligne–Mostow weight data from isotrivial fibrations `Y → P_i`.
//!
//! Weights are in units of 1/6: type II fibres give 1, type IV give 2,
//! type IV* give 4 and a type II point merged into a IV* fibre gives 5.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::cover::PartitionType;
use crate::error::{Error, Result};

/// Every weight multiset sums to this (`Σ μ = 2`).
pub const WEIGHT_TOTAL: u32 = 12;

/// Role of a branch component relative to the projection to factor `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MemberKind {
    /// A curve in `P_i × P_k` mapping onto `P_i`, of bidegree
    /// `(over_base, along_fibre)`.
    Dominant {
        direction: usize,
        over_base: i64,
        along_fibre: i64,
    },
    /// `degree` whole fibres over points of `P_i`.
    Vertical { degree: i64 },
    /// Constant in `P_i`, of degree `degree` in factor `direction`.
    Horizontal { direction: usize, degree: i64 },
}

impl MemberKind {
    fn direction(&self) -> Option<usize> {
        match *self {
            MemberKind::Dominant { direction, .. } | MemberKind::Horizontal { direction, .. } => {
                Some(direction)
            }
            MemberKind::Vertical { .. } => None,
        }
    }
}

/// Sorted multiset of weights in `{1,…,5}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DmWeights(Vec<u8>);

impl DmWeights {
    pub fn new(mut weights: Vec<u8>) -> Result<Self> {
        if let Some(&w) = weights.iter().find(|&&w| w == 0 || w >= 6) {
            return Err(Error::Consistency(format!("weight {w} outside 1..=5")));
        }
        weights.sort_unstable();
        let out = DmWeights(weights);
        if out.total() != WEIGHT_TOTAL {
            return Err(Error::Consistency(format!(
                "weights {out} sum to {}, not {WEIGHT_TOTAL}",
                out.total()
            )));
        }
        Ok(out)
    }

    pub fn weights(&self) -> &[u8] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&w| w as u32).sum()
    }

    /// Number of marked points on the line.
    pub fn points(&self) -> usize {
        self.0.len()
    }

    /// Dimension of the corresponding ball, points minus three.
    pub fn ball_dimension(&self) -> i64 {
        self.0.len() as i64 - 3
    }
}

/// Exponent notation, e.g. `(1^8,4)`.
impl fmt::Display for DmWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups: Vec<String> = self
            .0
            .iter()
            .dedup_with_count()
            .map(|(c, w)| {
                if c > 1 {
                    format!("{w}^{c}")
                } else {
                    w.to_string()
                }
            })
            .collect();
        write!(f, "({})", groups.join(","))
    }
}

impl FromStr for DmWeights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("weights {s:?} need parentheses")))?;
        let mut out = Vec::new();
        for item in inner.split(',') {
            let item = item.trim();
            let (w, c) = match item.split_once('^') {
                Some((w, c)) => (w, c),
                None => (item, "1"),
            };
            let w: u8 = w
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("weight {item:?} in {s:?}")))?;
            let c: usize = c
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("multiplicity {item:?} in {s:?}")))?;
            out.extend(std::iter::repeat_n(w, c));
        }
        DmWeights::new(out).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    }
}

/// A non-transverse configuration on `(P^1)^2`, indices into the part list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degeneration {
    /// The curve of this part acquires a node.
    Node(usize),
    /// The curves of these two parts become tangent.
    Tangency(usize, usize),
}

fn require_lines(t: &PartitionType) -> Result<()> {
    if !t.cover().is_triple_lines() {
        return Err(Error::Domain(format!(
            "weights need d = 3 on a product of lines, got d = {} on {}",
            t.cover().degree(),
            t.ambient()
        )));
    }
    Ok(())
}

/// The factor, other than `i`, that a part touches; `None` for parts
/// supported on `i` alone, an error when there are two.
fn fibre_direction(support: &[usize], i: usize) -> std::result::Result<Option<usize>, ()> {
    match support.iter().filter(|&&c| c != i).collect::<Vec<_>>()[..] {
        [] => Ok(None),
        [&k] => Ok(Some(k)),
        _ => Err(()),
    }
}

/// Coordinates `i` for which every part lives on `P_i × P_k` for a single
/// `k ≠ i`.
pub fn valid_projections(t: &PartitionType) -> Vec<usize> {
    if require_lines(t).is_err() {
        return Vec::new();
    }
    (0..t.ambient().factors())
        .filter(|&i| {
            t.parts()
                .iter()
                .all(|p| fibre_direction(&p.support(), i).is_ok())
        })
        .collect()
}

pub fn classify_members(t: &PartitionType, i: usize) -> Result<Vec<MemberKind>> {
    require_lines(t)?;
    if i >= t.ambient().factors() {
        return Err(Error::InvalidProjection(i));
    }
    t.parts()
        .iter()
        .map(|p| {
            let e = p.entries();
            match fibre_direction(&p.support(), i) {
                Err(()) => Err(Error::InvalidProjection(i)),
                Ok(None) => Ok(MemberKind::Vertical { degree: e[i] }),
                Ok(Some(k)) if e[i] == 0 => Ok(MemberKind::Horizontal {
                    direction: k,
                    degree: e[k],
                }),
                Ok(Some(k)) => Ok(MemberKind::Dominant {
                    direction: k,
                    over_base: e[i],
                    along_fibre: e[k],
                }),
            }
        })
        .collect()
}

/// Singular-fibre counts of a normal-crossing configuration, keyed by weight.
fn fibre_counts(kinds: &[MemberKind]) -> BTreeMap<u8, i64> {
    let mut w: BTreeMap<u8, i64> = BTreeMap::new();
    for m in kinds {
        match *m {
            // branch points of the projection, by Hurwitz
            MemberKind::Dominant {
                over_base,
                along_fibre,
                ..
            } => *w.entry(1).or_default() += 2 * over_base * (along_fibre - 1),
            MemberKind::Vertical { degree } => *w.entry(4).or_default() += degree,
            MemberKind::Horizontal { .. } => {}
        }
    }
    for (a, b) in kinds.iter().tuple_combinations() {
        if a.direction().is_none() || a.direction() != b.direction() {
            continue;
        }
        let crossings = match (*a, *b) {
            (
                MemberKind::Dominant {
                    over_base: i1,
                    along_fibre: k1,
                    ..
                },
                MemberKind::Dominant {
                    over_base: i2,
                    along_fibre: k2,
                    ..
                },
            ) => i1 * k2 + i2 * k1,
            (MemberKind::Dominant { over_base, .. }, MemberKind::Horizontal { degree, .. })
            | (MemberKind::Horizontal { degree, .. }, MemberKind::Dominant { over_base, .. }) => {
                over_base * degree
            }
            _ => 0,
        };
        *w.entry(2).or_default() += crossings;
    }
    w.retain(|_, c| *c != 0);
    w
}

fn from_counts(counts: &BTreeMap<u8, i64>) -> Result<DmWeights> {
    let mut v = Vec::new();
    for (&w, &c) in counts {
        if c < 0 {
            return Err(Error::Consistency(format!("negative count of weight {w}")));
        }
        v.extend(std::iter::repeat_n(w, c as usize));
    }
    DmWeights::new(v)
}

/// Weight data of the fibration over `P_i` for a normal-crossing divisor.
pub fn derive_weights(t: &PartitionType, i: usize) -> Result<DmWeights> {
    let kinds = classify_members(t, i)?;
    from_counts(&fibre_counts(&kinds))
}

/// Weight data for every valid projection.
pub fn all_weights(t: &PartitionType) -> Result<Vec<(usize, DmWeights)>> {
    valid_projections(t)
        .into_iter()
        .map(|i| Ok((i, derive_weights(t, i)?)))
        .collect()
}

fn take(counts: &mut BTreeMap<u8, i64>, w: u8, k: i64, why: &str) -> Result<()> {
    let have = counts.get(&w).copied().unwrap_or(0);
    if have < k {
        return Err(Error::Descriptor(format!(
            "{why} needs {k} point(s) of weight {w}, only {have} left"
        )));
    }
    counts.insert(w, have - k);
    Ok(())
}

/// Weight data over `P_i` after nodes and tangencies on `(P^1)^2`.
pub fn apply_degenerations(
    t: &PartitionType,
    i: usize,
    descriptors: &[Degeneration],
) -> Result<DmWeights> {
    require_lines(t)?;
    if t.ambient().factors() != 2 {
        return Err(Error::Domain(
            "degenerations are only modelled on (P^1)^2".into(),
        ));
    }
    let kinds = classify_members(t, i)?;
    let mut counts = fibre_counts(&kinds);
    let kind = |j: usize| {
        kinds
            .get(j)
            .copied()
            .ok_or_else(|| Error::Descriptor(format!("no part with index {j}")))
    };
    for d in descriptors {
        match *d {
            Degeneration::Node(j) => {
                if !matches!(kind(j)?, MemberKind::Dominant { .. }) {
                    return Err(Error::Descriptor(format!(
                        "part {j} does not map onto factor {i}, a node there is invisible"
                    )));
                }
                take(&mut counts, 1, 2, "a node")?;
                *counts.entry(2).or_default() += 1;
            }
            Degeneration::Tangency(a, b) => {
                if a == b {
                    return Err(Error::Descriptor(
                        "tangency needs two distinct parts".into(),
                    ));
                }
                let (ka, kb) = (kind(a)?, kind(b)?);
                use MemberKind::*;
                match (ka, kb) {
                    (Dominant { .. }, Dominant { .. })
                    | (Dominant { .. }, Horizontal { .. })
                    | (Horizontal { .. }, Dominant { .. }) => {
                        take(&mut counts, 2, 2, "a tangency along the fibre direction")?;
                        *counts.entry(4).or_default() += 1;
                    }
                    (Dominant { .. }, Vertical { .. }) | (Vertical { .. }, Dominant { .. }) => {
                        take(&mut counts, 1, 1, "a tangency with a fibre")?;
                        take(&mut counts, 4, 1, "a tangency with a fibre")?;
                        *counts.entry(5).or_default() += 1;
                    }
                    _ => {
                        return Err(Error::Descriptor(format!(
                            "parts {a} and {b} are lines that cannot be tangent"
                        )))
                    }
                }
            }
        }
    }
    counts.retain(|_, c| *c != 0);
    from_counts(&counts)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.parent[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Groups labels that are linked through shared weight multisets. Groups keep
/// the input order of their first label; labels keep input order within a group.
pub fn commensurability_classes(entries: &[(String, Vec<DmWeights>)]) -> Vec<Vec<String>> {
    let mut uf = UnionFind::new(entries.len());
    let mut owner: HashMap<&DmWeights, usize> = HashMap::new();
    for (k, (_, ws)) in entries.iter().enumerate() {
        for w in ws {
            match owner.get(w) {
                Some(&j) => uf.union(j, k),
                None => {
                    owner.insert(w, k);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (k, (label, _)) in entries.iter().enumerate() {
        groups.entry(uf.find(k)).or_default().push(label.clone());
    }
    groups.into_values().collect()
}

/// The distinct weight multisets carried by each group of
/// [`commensurability_classes`].
pub fn commensurable_weight_sets(entries: &[(String, Vec<DmWeights>)]) -> Vec<BTreeSet<DmWeights>> {
    let by_label: HashMap<&str, &Vec<DmWeights>> =
        entries.iter().map(|(l, w)| (l.as_str(), w)).collect();
    commensurability_classes(entries)
        .iter()
        .map(|g| {
            g.iter()
                .flat_map(|l| by_label[l.as_str()].iter().cloned())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multidegree::parse_parts;

    fn lt(s: &str) -> PartitionType {
        PartitionType::on_lines(parse_parts(s).unwrap()).unwrap()
    }

    fn w(s: &str) -> DmWeights {
        s.parse().unwrap()
    }

    #[test]
    fn notation() {
        assert_eq!(w("(1^8,4)").weights(), &[1, 1, 1, 1, 1, 1, 1, 1, 4]);
        assert_eq!(w("(4, 1^8)").to_string(), "(1^8,4)");
        assert_eq!(w("(1^12)").to_string(), "(1^12)");
        assert!("(1^8)".parse::<DmWeights>().is_err());
        assert!("1^12".parse::<DmWeights>().is_err());
        assert!("(6,6)".parse::<DmWeights>().is_err());
    }

    #[test]
    fn projections() {
        assert!(valid_projections(&lt("(2,2,0)+(1,0,2)+(0,1,1)")).is_empty());
        assert_eq!(valid_projections(&lt("(3,2,0)+(0,1,3)")), vec![1]);
        assert_eq!(valid_projections(&lt("(3,3)")), vec![0, 1]);
    }

    #[test]
    fn member_kinds() {
        use MemberKind::*;
        assert_eq!(
            classify_members(&lt("(3,2,0)+(0,1,3)"), 1).unwrap(),
            vec![
                Dominant {
                    direction: 0,
                    over_base: 2,
                    along_fibre: 3
                },
                Dominant {
                    direction: 2,
                    over_base: 1,
                    along_fibre: 3
                },
            ]
        );
        assert_eq!(
            classify_members(&lt("(3,1,0)+(0,1,0)+(0,1,3)"), 1).unwrap()[1],
            Vertical { degree: 1 }
        );
        assert_eq!(
            classify_members(&lt("(3,0)+(0,3)"), 0).unwrap(),
            vec![
                Vertical { degree: 3 },
                Horizontal {
                    direction: 1,
                    degree: 3
                }
            ]
        );
        assert_eq!(
            classify_members(&lt("(3,2,0)+(0,1,3)"), 0),
            Err(Error::InvalidProjection(0))
        );
    }

    #[test]
    fn weights_from_types() {
        assert_eq!(derive_weights(&lt("(3,1)+(0,2)"), 0).unwrap(), w("(2^6)"));
        assert_eq!(
            derive_weights(&lt("(3,1)+(0,2)"), 1).unwrap(),
            w("(1^4,4^2)")
        );
        assert_eq!(
            derive_weights(&lt("(3,2,0)+(0,1,3)"), 1).unwrap(),
            w("(1^12)")
        );
    }

    #[test]
    fn degenerations() {
        use Degeneration::*;
        let t = lt("(3,2)+(0,1)");
        assert_eq!(
            apply_degenerations(&t, 1, &[Tangency(0, 1)]).unwrap(),
            w("(1^7,5)")
        );
        assert_eq!(
            apply_degenerations(&t, 0, &[Node(0)]).unwrap(),
            w("(1^4,2^4)")
        );
        let t = lt("(2,2)+(1,0)+(0,1)");
        assert_eq!(
            apply_degenerations(&t, 0, &[Node(0), Tangency(0, 1)]).unwrap(),
            w("(1,2^3,5)")
        );
        assert!(matches!(
            apply_degenerations(&t, 0, &[Tangency(1, 2)]),
            Err(Error::Descriptor(_))
        ));
        assert!(matches!(
            apply_degenerations(&lt("(3,0)+(0,3)"), 0, &[Node(1)]),
            Err(Error::Descriptor(_))
        ));
    }

    #[test]
    fn grouping() {
        let e = |l: &str, ws: &[&str]| (l.to_string(), ws.iter().map(|s| w(s)).collect());
        let entries = vec![
            e("a", &["(1^3,4,5)", "(2^4,4)"]),
            e("b", &["(1^12)"]),
            e("c", &["(1,2^3,5)", "(2^4,4)"]),
            e("d", &["(1^2,2,4^2)", "(1,2^3,5)"]),
        ];
        let g = commensurability_classes(&entries);
        assert_eq!(g, vec![vec!["a", "c", "d"], vec!["b"]]);
        let sets = commensurable_weight_sets(&entries);
        assert_eq!(sets[0].len(), 4);
    }
}
