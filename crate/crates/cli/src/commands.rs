//! The four subcommands. Each builds a [`Report`] and a [`Status`]; rendering
//! and exit handling live in the binary.

use clap::Args;
use serde_json::{json, Value};

use cyclicover_core::classify::{
    enumerate_ball_types, is_ball_type, is_complete, is_complete_by_genus, is_half_twist,
    maximal_ball_types, maximal_complete_types, CanonicalType,
};
use cyclicover_core::dm::{
    apply_degenerations, derive_weights, valid_projections, Degeneration, DmWeights,
};
use cyclicover_core::hodge::{defect, git_dimension, hodge_summary, projective_space_invariants};
use cyclicover_core::multidegree::parse_parts;
use cyclicover_core::{Ambient, CoverData, Multidegree, PartitionType};

use crate::report::{Report, TextTable};
use crate::tables::{commensurable_lists, compare_table, format_descriptor, TableComparison};
use crate::{CliError, Outcome, Status};

type CmdResult = std::result::Result<Outcome, CliError>;

fn parts_json(parts: &[Multidegree]) -> Value {
    Value::Array(parts.iter().map(|p| json!(p.entries())).collect())
}

fn weights_json(w: &DmWeights) -> Value {
    json!(w.weights())
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

#[derive(Debug, Clone, Args)]
pub struct HodgeArgs {
    /// Factor dimensions of the ambient product, e.g. "1,1,1" or "3".
    #[arg(long)]
    pub ambient: String,
    /// Degree of the cyclic cover.
    #[arg(long)]
    pub d: u32,
    /// Branch parts as comma vectors separated by ';', e.g. "3,3,0;0,0,3".
    #[arg(long)]
    pub parts: String,
}

fn parse_ambient(s: &str) -> std::result::Result<Ambient, CliError> {
    let dims = s
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Validation(format!("ambient dimension {x:?} in {s:?}")))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Ambient::new(dims)?)
}

pub fn hodge(args: &HodgeArgs) -> CmdResult {
    let ambient = parse_ambient(&args.ambient)?;
    let cover = CoverData::calabi_yau(ambient.clone(), args.d)?;
    let t = PartitionType::new(cover, parse_parts(&args.parts)?)?;
    let s = hodge_summary(&t)?;

    let mut r = Report::new("hodge");
    r.input("ambient", json!(ambient.factor_dims()));
    r.input("d", args.d);
    r.input("parts", parts_json(t.parts()));
    let ball_dimension = if s.is_ball {
        json!(s.h_chi_next)
    } else {
        Value::Null
    };
    r.results = json!({
        "euler_ambient": s.euler_ambient,
        "euler_branch": s.euler_branch,
        "euler_cover": s.euler_cover,
        "primitive_betti": s.primitive_betti,
        "h_chi_top": s.h_chi_top,
        "h_chi_next": s.h_chi_next,
        "defect": s.defect,
        "is_ball": s.is_ball,
        "ball_dimension": ball_dimension,
    });

    let mut table = TextTable::new(&["quantity", "value"]);
    let n = ambient.dimension();
    for (k, v) in [
        ("e(Z)".to_string(), s.euler_ambient.to_string()),
        ("e(D)".to_string(), s.euler_branch.to_string()),
        ("e(Y)".to_string(), s.euler_cover.to_string()),
        ("b'".to_string(), s.primitive_betti.to_string()),
        (format!("h^{n}_chi"), s.h_chi_top.to_string()),
        (format!("h^{{{},1}}_chi", n - 1), s.h_chi_next.to_string()),
        ("defect".to_string(), s.defect.to_string()),
        ("ball".to_string(), s.is_ball.to_string()),
    ] {
        table.push(vec![k, v]);
    }
    r.table = table;

    let d = i64::from(args.d);
    let hurwitz = d * s.euler_ambient - (d - 1) * s.euler_branch;
    r.check(
        "hurwitz",
        hurwitz == s.euler_cover,
        format!("d e(Z) - (d-1) e(D) = {hurwitz}, e(Y) = {}", s.euler_cover),
    );
    if t.cover().is_triple_lines() && ambient.factors() >= 2 {
        let support = is_ball_type(&t)?;
        r.check(
            "support criterion",
            support == s.is_ball,
            format!("support criterion {support}, defect {}", s.defect),
        );
    }
    if ambient.factors() == 1 {
        let degrees: Vec<u32> = t.parts().iter().map(|p| p.entries()[0] as u32).collect();
        let p = projective_space_invariants(n, args.d, &degrees)?;
        r.check(
            "power-sum formula",
            p.primitive_betti == s.primitive_betti
                && p.git_dimension == s.h_chi_next
                && p.defect == s.defect,
            format!(
                "b' {} vs {}, git {} vs {}, defect {} vs {}",
                p.primitive_betti,
                s.primitive_betti,
                p.git_dimension,
                s.h_chi_next,
                p.defect,
                s.defect
            ),
        );
    }
    Ok(Outcome::from_checks(r))
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    /// Number of P^1 factors, 2 to 6.
    #[arg(long)]
    pub n: usize,
    /// Only types that refine no other listed type.
    #[arg(long)]
    pub maximal: bool,
    /// Only types with complete ball quotients.
    #[arg(long)]
    pub complete: bool,
    /// Drop types obtained from n - 1 factors by a half-twist.
    #[arg(long)]
    pub no_half_twist: bool,
    /// Add the intersection-genus completeness test.
    #[arg(long)]
    pub verbose: bool,
}

fn listing(args: &ClassifyArgs) -> std::result::Result<Vec<CanonicalType>, CliError> {
    let types = match (args.maximal, args.complete) {
        (true, true) => maximal_complete_types(args.n)?,
        (true, false) => maximal_ball_types(args.n)?,
        (false, complete) => {
            let all = enumerate_ball_types(args.n)?;
            if complete {
                let mut kept = Vec::new();
                for c in all {
                    if is_complete(c.partition())? {
                        kept.push(c);
                    }
                }
                kept
            } else {
                all
            }
        }
    };
    Ok(if args.no_half_twist {
        types
            .into_iter()
            .filter(|c| is_half_twist(c.partition()).is_none())
            .collect()
    } else {
        types
    })
}

pub fn classify(args: &ClassifyArgs) -> CmdResult {
    let types = listing(args)?;
    let mut r = Report::new("classify");
    r.input("n", args.n);
    r.input("maximal", args.maximal);
    r.input("complete", args.complete);
    r.input("no_half_twist", args.no_half_twist);

    let mut header = vec!["no", "type", "dim", "half-twist", "complete"];
    if args.verbose {
        header.push("genus-complete");
    }
    let mut table = TextTable::new(&header);
    let mut rows = Vec::new();
    let mut all_ball = true;
    for (k, c) in types.iter().enumerate() {
        let t = c.partition();
        let dim = git_dimension(t);
        let twist = is_half_twist(t).is_some();
        let complete = if args.n >= 3 {
            Some(is_complete(t)?)
        } else {
            None
        };
        let genus = if args.verbose && args.n == 3 {
            Some(is_complete_by_genus(t)?)
        } else {
            None
        };
        all_ball &= is_ball_type(t)? && defect(t)? == 0;
        let mut row = vec![
            (k + 1).to_string(),
            c.to_string(),
            dim.to_string(),
            yes_no(twist),
            complete.map_or("-".to_string(), yes_no),
        ];
        if args.verbose {
            row.push(genus.map_or("-".to_string(), yes_no));
        }
        table.push(row);
        let mut entry = json!({
            "parts": parts_json(t.parts()),
            "dimension": dim,
            "half_twist": twist,
            "complete": complete,
        });
        if let Some(g) = genus {
            entry["genus_complete"] = json!(g);
        }
        rows.push(entry);
    }
    r.table = table;
    r.notes.push(format!("{} types", types.len()));
    r.results = json!({ "count": types.len(), "types": rows });
    r.check(
        "ball type",
        all_ball,
        "every listed type meets the support criterion and has zero defect",
    );
    Ok(Outcome::from_checks(r))
}

#[derive(Debug, Clone, Args)]
pub struct DmArgs {
    /// Branch parts on a product of lines, e.g. "3,1;0,2".
    #[arg(long)]
    pub parts: String,
    /// Projection factor, 1-based; all valid projections when omitted.
    #[arg(long)]
    pub projection: Option<usize>,
    /// Part j (1-based) acquires a node; surfaces only.
    #[arg(long = "node")]
    pub nodes: Vec<usize>,
    /// Parts j,k (1-based) become tangent; surfaces only.
    #[arg(long = "tangent")]
    pub tangents: Vec<String>,
}

fn parse_tangent(s: &str) -> std::result::Result<Degeneration, CliError> {
    let bad = || CliError::Validation(format!("tangency {s:?}; expected j,k with 1-based parts"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok(Degeneration::Tangency(a - 1, b - 1))
}

pub fn dm(args: &DmArgs) -> CmdResult {
    let t = PartitionType::on_lines(parse_parts(&args.parts)?)?;
    let n = t.ambient().factors();
    let mut descriptors = Vec::new();
    for &j in &args.nodes {
        if j == 0 {
            return Err(CliError::Validation("node part numbers are 1-based".into()));
        }
        descriptors.push(Degeneration::Node(j - 1));
    }
    for s in &args.tangents {
        descriptors.push(parse_tangent(s)?);
    }
    let projections: Vec<usize> = match args.projection {
        Some(0) => return Err(CliError::Validation("projections are 1-based".into())),
        Some(p) if p > n => {
            return Err(CliError::Validation(format!(
                "projection {p} outside 1..={n}"
            )))
        }
        Some(p) => vec![p - 1],
        None if descriptors.is_empty() => valid_projections(&t),
        None => (0..n).collect(),
    };

    let git = git_dimension(&t);
    let expected_points = git - descriptors.len() as i64 + 3;
    let mut r = Report::new("dm");
    r.input("parts", parts_json(t.parts()));
    r.input("projection", json!(args.projection));
    r.input(
        "degenerations",
        json!(descriptors
            .iter()
            .map(format_descriptor)
            .collect::<Vec<_>>()),
    );

    let mut table = TextTable::new(&["projection", "weights", "points"]);
    let mut derived = Vec::new();
    for &i in &projections {
        let w = if descriptors.is_empty() {
            derive_weights(&t, i)?
        } else {
            apply_degenerations(&t, i, &descriptors)?
        };
        r.notes.push(format!("p{}: {w}", i + 1));
        table.push(vec![
            format!("p{}", i + 1),
            w.to_string(),
            w.points().to_string(),
        ]);
        r.check(
            &format!("p{} weight sum", i + 1),
            w.total() == cyclicover_core::dm::WEIGHT_TOTAL,
            format!("{} = {}", w, w.total()),
        );
        if is_ball_type(&t)? {
            r.check(
                &format!("p{} dimension", i + 1),
                w.points() as i64 == expected_points,
                format!("{} points, expected {expected_points}", w.points()),
            );
        }
        derived.push(json!({
            "projection": i + 1,
            "weights": weights_json(&w),
            "notation": w.to_string(),
        }));
    }
    if projections.is_empty() {
        r.notes.push("no valid projection".into());
    } else {
        r.table = table;
    }
    r.results = json!({
        "valid_projections": valid_projections(&t).iter().map(|i| i + 1).collect::<Vec<_>>(),
        "derived": derived,
    });
    Ok(Outcome::from_checks(r))
}

#[derive(Debug, Clone, Args)]
pub struct TablesArgs {
    /// Table number 1 to 4; all four when omitted.
    #[arg(long)]
    pub which: Option<u8>,
    /// Also list the commensurability groups linked through tables 1 to 3.
    #[arg(long)]
    pub commensurability: bool,
}

fn comparison_json(c: &TableComparison) -> Value {
    json!({
        "which": c.which,
        "matched": c.matched(),
        "rows": c.rows.iter().map(|r| json!({
            "label": r.label,
            "parts": parts_json(&r.parts),
            "expected": r.expected,
            "derived": r.derived,
            "matched": r.matched,
            "note": r.note,
        })).collect::<Vec<_>>(),
        "unlisted": c.unlisted,
    })
}

pub fn tables(args: &TablesArgs) -> CmdResult {
    let which: Vec<u8> = match args.which {
        Some(w) if (1..=4).contains(&w) => vec![w],
        Some(w) => return Err(CliError::Validation(format!("table {w}; expected 1 to 4"))),
        None => vec![1, 2, 3, 4],
    };
    let mut r = Report::new("tables");
    r.input("which", json!(args.which));
    r.input("commensurability", args.commensurability);
    let mut table = TextTable::new(&["table", "row", "expected", "derived", "status"]);
    let mut out = Vec::new();
    let mut all = true;
    for &w in &which {
        let c = compare_table(w)?;
        for row in &c.rows {
            let status = if row.matched {
                "ok".to_string()
            } else if row.note.is_empty() {
                "MISMATCH".to_string()
            } else {
                format!("MISMATCH ({})", row.note)
            };
            table.push(vec![
                w.to_string(),
                row.label.clone(),
                row.expected.clone(),
                row.derived.clone(),
                status,
            ]);
        }
        for u in &c.unlisted {
            r.notes
                .push(format!("table {w}: derived class without a row: {u}"));
        }
        let matched = c.rows.iter().filter(|x| x.matched).count();
        r.check(
            &format!("table {w}"),
            c.matched(),
            format!(
                "{matched}/{} rows match, {} unlisted derived classes",
                c.rows.len(),
                c.unlisted.len()
            ),
        );
        all &= c.matched();
        out.push(comparison_json(&c));
    }
    r.table = table;
    let mut results = json!({ "tables": out });
    if args.commensurability {
        let lists = commensurable_lists()?;
        for (points, set) in &lists {
            let shown: Vec<String> = set.iter().map(ToString::to_string).collect();
            r.notes
                .push(format!("{points} points: {}", shown.join(" ")));
        }
        results["commensurability"] = Value::Array(
            lists
                .iter()
                .map(|(p, set)| {
                    json!({
                        "points": p,
                        "weights": set.iter().map(weights_json).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        );
    }
    r.results = results;
    let status = if all {
        Status::Success
    } else {
        Status::GoldenMismatch
    };
    Ok(Outcome { report: r, status })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ambient_parsing() {
        assert_eq!(parse_ambient("1,1,1").unwrap().factor_dims(), &[1, 1, 1]);
        assert_eq!(parse_ambient("(3)").unwrap().factor_dims(), &[3]);
        assert!(parse_ambient("1,x").is_err());
        assert!(parse_ambient("0").is_err());
    }

    #[test]
    fn tangent_parsing() {
        assert_eq!(parse_tangent("1,2").unwrap(), Degeneration::Tangency(0, 1));
        assert!(parse_tangent("0,2").is_err());
        assert!(parse_tangent("12").is_err());
    }
}
