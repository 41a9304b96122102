//! The four published weight tables, shipped verbatim as data, and their
//! regeneration from the classification and weight derivation.
//!
//! Golden rows are only read to compare against; every value shown as
//! "derived" is computed from the partition type alone.

use std::collections::{BTreeMap, BTreeSet};

use cyclicover_core::classify::{enumerate_ball_types, is_half_twist, CanonicalType};
use cyclicover_core::dm::{
    all_weights, apply_degenerations, derive_weights, Degeneration, DmWeights,
};
use cyclicover_core::hodge::git_dimension;
use cyclicover_core::multidegree::{parse_parts, Multidegree};
use cyclicover_core::{Error, PartitionType, Result};

pub const TABLE1: &str = include_str!("../golden/table1.txt");
pub const TABLE2: &str = include_str!("../golden/table2.txt");
pub const TABLE3: &str = include_str!("../golden/table3.txt");
pub const TABLE4: &str = include_str!("../golden/table4.txt");

fn fields(line: &str) -> Vec<&str> {
    line.split(" | ").map(str::trim).collect()
}

fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().filter(|l| !l.trim().is_empty())
}

fn parse_type(s: &str) -> Result<PartitionType> {
    PartitionType::on_lines(parse_parts(s)?)
}

fn expect_fields(line: &str, k: usize) -> Result<Vec<&str>> {
    let f = fields(line);
    if f.len() != k {
        return Err(Error::Parse(format!(
            "expected {k} fields in golden row {line:?}"
        )));
    }
    Ok(f)
}

/// A row of the surface table: one type and the weights of both projections.
#[derive(Debug, Clone)]
pub struct SurfaceRow {
    pub partition: PartitionType,
    pub first: DmWeights,
    pub second: DmWeights,
}

pub fn table1_rows() -> Result<Vec<SurfaceRow>> {
    lines(TABLE1)
        .map(|l| {
            let f = expect_fields(l, 3)?;
            Ok(SurfaceRow {
                partition: parse_type(f[0])?,
                first: f[1].parse()?,
                second: f[2].parse()?,
            })
        })
        .collect()
}

/// A non-transverse surface configuration.
#[derive(Debug, Clone)]
pub struct DegenerationRow {
    pub partition: PartitionType,
    /// 0-based part indices.
    pub descriptors: Vec<Degeneration>,
    pub first: DmWeights,
    pub second: DmWeights,
}

/// Parses `node(1)` and `tangent(1,2)` with 1-based part numbers.
pub fn parse_descriptor(s: &str) -> Result<Degeneration> {
    let bad = || Error::Parse(format!("degeneration {s:?}"));
    let (name, rest) = s.trim().split_once('(').ok_or_else(bad)?;
    let args = rest.strip_suffix(')').ok_or_else(bad)?;
    let nums: Vec<usize> = args
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    if nums.contains(&0) {
        return Err(bad());
    }
    match (name, &nums[..]) {
        ("node", [j]) => Ok(Degeneration::Node(j - 1)),
        ("tangent", [a, b]) => Ok(Degeneration::Tangency(a - 1, b - 1)),
        _ => Err(bad()),
    }
}

pub fn format_descriptor(d: &Degeneration) -> String {
    match *d {
        Degeneration::Node(j) => format!("node({})", j + 1),
        Degeneration::Tangency(a, b) => format!("tangent({},{})", a + 1, b + 1),
    }
}

pub fn table2_rows() -> Result<Vec<DegenerationRow>> {
    lines(TABLE2)
        .map(|l| {
            let f = expect_fields(l, 4)?;
            Ok(DegenerationRow {
                partition: parse_type(f[0])?,
                descriptors: f[1]
                    .split_whitespace()
                    .map(parse_descriptor)
                    .collect::<Result<_>>()?,
                first: f[2].parse()?,
                second: f[3].parse()?,
            })
        })
        .collect()
}

/// A numbered row of the three- or four-fold tables; `weights` is `None`
/// where the table has no weight data.
#[derive(Debug, Clone)]
pub struct NumberedRow {
    pub number: usize,
    pub partition: PartitionType,
    pub dimension: i64,
    pub weights: Option<Vec<DmWeights>>,
}

fn numbered_rows(text: &str) -> Result<Vec<NumberedRow>> {
    lines(text)
        .map(|l| {
            let f = expect_fields(l, 4)?;
            let weights = if f[3] == "NA" {
                None
            } else {
                Some(f[3].split("; ").map(str::parse).collect::<Result<_>>()?)
            };
            Ok(NumberedRow {
                number: f[0]
                    .parse()
                    .map_err(|_| Error::Parse(format!("row number {:?}", f[0])))?,
                partition: parse_type(f[1])?,
                dimension: f[2]
                    .parse()
                    .map_err(|_| Error::Parse(format!("dimension {:?}", f[2])))?,
                weights,
            })
        })
        .collect()
}

pub fn table3_rows() -> Result<Vec<NumberedRow>> {
    numbered_rows(TABLE3)
}

pub fn table4_rows() -> Result<Vec<NumberedRow>> {
    numbered_rows(TABLE4)
}

/// One golden row next to its regenerated counterpart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowComparison {
    pub label: String,
    pub parts: Vec<Multidegree>,
    pub expected: String,
    pub derived: String,
    pub matched: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableComparison {
    pub which: u8,
    pub rows: Vec<RowComparison>,
    /// Derived classes with no golden row.
    pub unlisted: Vec<String>,
}

impl TableComparison {
    pub fn matched(&self) -> bool {
        self.unlisted.is_empty() && self.rows.iter().all(|r| r.matched)
    }

    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| !r.matched).count() + self.unlisted.len()
    }
}

fn weight_list(ws: &[DmWeights]) -> String {
    if ws.is_empty() {
        return "NA".into();
    }
    ws.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Matches golden rows to enumerated classes by canonical key; returns the
/// class of each row (if any) and the classes left over.
fn match_classes(
    rows: &[&PartitionType],
    classes: &[CanonicalType],
) -> Result<(Vec<bool>, Vec<String>)> {
    let mut remaining: BTreeSet<&CanonicalType> = classes.iter().collect();
    let mut found = Vec::with_capacity(rows.len());
    for t in rows {
        let key = CanonicalType::new(t)?;
        found.push(remaining.remove(&key));
    }
    Ok((
        found,
        remaining.into_iter().map(|c| c.to_string()).collect(),
    ))
}

pub fn compare_table1() -> Result<TableComparison> {
    let rows = table1_rows()?;
    let classes = enumerate_ball_types(2)?;
    let (found, unlisted) = match_classes(
        &rows.iter().map(|r| &r.partition).collect::<Vec<_>>(),
        &classes,
    )?;
    let mut out = Vec::new();
    for (r, present) in rows.iter().zip(found) {
        let a = derive_weights(&r.partition, 0)?;
        let b = derive_weights(&r.partition, 1)?;
        let matched = present && a == r.first && b == r.second;
        out.push(RowComparison {
            label: r.partition.to_string(),
            parts: r.partition.parts().to_vec(),
            expected: format!("{} | {}", r.first, r.second),
            derived: format!("{a} | {b}"),
            matched,
            note: if present {
                String::new()
            } else {
                "not a ball-type class".into()
            },
        });
    }
    Ok(TableComparison {
        which: 1,
        rows: out,
        unlisted,
    })
}

pub fn compare_table2() -> Result<TableComparison> {
    let mut out = Vec::new();
    for r in table2_rows()? {
        let a = apply_degenerations(&r.partition, 0, &r.descriptors)?;
        let b = apply_degenerations(&r.partition, 1, &r.descriptors)?;
        let desc: Vec<String> = r.descriptors.iter().map(format_descriptor).collect();
        out.push(RowComparison {
            label: format!("{} {}", r.partition, desc.join(" ")),
            parts: r.partition.parts().to_vec(),
            expected: format!("{} | {}", r.first, r.second),
            derived: format!("{a} | {b}"),
            matched: a == r.first && b == r.second,
            note: String::new(),
        });
    }
    Ok(TableComparison {
        which: 2,
        rows: out,
        unlisted: Vec::new(),
    })
}

/// Weight data of a numbered row: the listed multisets must all be derived
/// from some valid projection, and "NA" means no valid projection.
fn compare_numbered(
    which: u8,
    rows: &[NumberedRow],
    classes: &[CanonicalType],
) -> Result<TableComparison> {
    let (found, unlisted) = match_classes(
        &rows.iter().map(|r| &r.partition).collect::<Vec<_>>(),
        classes,
    )?;
    let mut out = Vec::new();
    for (r, present) in rows.iter().zip(found) {
        let dim = git_dimension(&r.partition);
        let derived: BTreeSet<DmWeights> = all_weights(&r.partition)?
            .into_iter()
            .map(|(_, w)| w)
            .collect();
        let derived: Vec<DmWeights> = derived.into_iter().collect();
        let weights_ok = match &r.weights {
            None => derived.is_empty(),
            Some(listed) => listed.iter().all(|w| derived.contains(w)),
        };
        let mut notes = Vec::new();
        if !present {
            notes.push("not an enumerated ball-type class".to_string());
        }
        if dim != r.dimension {
            notes.push(format!("dimension {dim} != {}", r.dimension));
        }
        if !weights_ok {
            notes.push("listed weights not derived".to_string());
        }
        out.push(RowComparison {
            label: format!("{} {}", r.number, r.partition),
            parts: r.partition.parts().to_vec(),
            expected: format!(
                "{} | {}",
                r.dimension,
                r.weights.as_deref().map_or("NA".to_string(), weight_list)
            ),
            derived: format!("{dim} | {}", weight_list(&derived)),
            matched: present && dim == r.dimension && weights_ok,
            note: notes.join("; "),
        });
    }
    Ok(TableComparison {
        which,
        rows: out,
        unlisted,
    })
}

pub fn compare_table3() -> Result<TableComparison> {
    compare_numbered(3, &table3_rows()?, &enumerate_ball_types(3)?)
}

pub fn compare_table4() -> Result<TableComparison> {
    let fresh: Vec<CanonicalType> = enumerate_ball_types(4)?
        .into_iter()
        .filter(|c| is_half_twist(c.partition()).is_none())
        .collect();
    compare_numbered(4, &table4_rows()?, &fresh)
}

pub fn compare_table(which: u8) -> Result<TableComparison> {
    match which {
        1 => compare_table1(),
        2 => compare_table2(),
        3 => compare_table3(),
        4 => compare_table4(),
        _ => Err(Error::Parse(format!("table {which}; expected 1 to 4"))),
    }
}

/// Labelled weight data derived for every row of the surface, degeneration and
/// three-fold tables, for commensurability grouping.
pub fn weight_entries() -> Result<Vec<(String, Vec<DmWeights>)>> {
    let mut out = Vec::new();
    for (k, r) in table1_rows()?.iter().enumerate() {
        out.push((
            format!("T1.{}", k + 1),
            vec![
                derive_weights(&r.partition, 0)?,
                derive_weights(&r.partition, 1)?,
            ],
        ));
    }
    for (k, r) in table2_rows()?.iter().enumerate() {
        out.push((
            format!("T2.{}", k + 1),
            vec![
                apply_degenerations(&r.partition, 0, &r.descriptors)?,
                apply_degenerations(&r.partition, 1, &r.descriptors)?,
            ],
        ));
    }
    for r in table3_rows()? {
        let ws: Vec<DmWeights> = all_weights(&r.partition)?
            .into_iter()
            .map(|(_, w)| w)
            .collect();
        if !ws.is_empty() {
            out.push((format!("T3.{}", r.number), ws));
        }
    }
    Ok(out)
}

/// Groups of distinct weight multisets linked through shared rows, keeping
/// only groups with more than one multiset, keyed by number of points.
pub fn commensurable_lists() -> Result<Vec<(usize, BTreeSet<DmWeights>)>> {
    let entries = weight_entries()?;
    let mut out: Vec<(usize, BTreeSet<DmWeights>)> =
        cyclicover_core::dm::commensurable_weight_sets(&entries)
            .into_iter()
            .filter(|s| s.len() > 1)
            .map(|s| (s.iter().next().map_or(0, DmWeights::points), s))
            .collect();
    out.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    Ok(out)
}

/// Regenerated rows in golden-file layout, for display.
pub fn regenerated_lines(c: &TableComparison) -> Vec<String> {
    let mut out: Vec<String> = c
        .rows
        .iter()
        .map(|r| format!("{} | {}", r.label, r.derived))
        .collect();
    out.extend(c.unlisted.iter().map(|u| format!("unlisted | {u}")));
    out
}

/// The partition types of a golden table, keyed by row label.
pub fn golden_types(which: u8) -> Result<BTreeMap<String, PartitionType>> {
    let rows: Vec<(String, PartitionType)> = match which {
        1 => table1_rows()?
            .into_iter()
            .enumerate()
            .map(|(k, r)| ((k + 1).to_string(), r.partition))
            .collect(),
        2 => table2_rows()?
            .into_iter()
            .enumerate()
            .map(|(k, r)| ((k + 1).to_string(), r.partition))
            .collect(),
        3 => table3_rows()?
            .into_iter()
            .map(|r| (r.number.to_string(), r.partition))
            .collect(),
        4 => table4_rows()?
            .into_iter()
            .map(|r| (r.number.to_string(), r.partition))
            .collect(),
        _ => return Err(Error::Parse(format!("table {which}; expected 1 to 4"))),
    };
    Ok(rows.into_iter().collect())
}
