//! Side-by-side comparison of search results with the appendix tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use heron_core::lattice::{integer_embedding, verify_embedding, LatticePointSet};
use heron_core::search::{
    build_isosceles_face, search_generic_tetrahedra, search_right_angled_face, search_semi_regular, HeronTetrahedron, Provenance,
    RightAngledFaceLegs,
};
use heron_core::simplex::{canonical_tetra, SquaredDistanceMatrix};

use crate::error::Result;
use crate::golden::{self, GenericExpectation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Table {
    A1,
    A2,
    A3,
}

impl Table {
    pub fn name(self) -> &'static str {
        match self {
            Self::A1 => "a1",
            Self::A2 => "a2",
            Self::A3 => "a3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    Missing,
    Unexpected,
}

/// One line of the comparison. Embedding columns report whether the
/// coordinates reproduce the distances, not whether they coincide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffRow {
    pub table: &'static str,
    /// 1-based position in the golden table.
    pub golden_row: Option<usize>,
    pub edges: String,
    pub status: Status,
    pub golden_embedding: String,
    pub found_embedding: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproduceReport {
    pub table: Table,
    pub max_edge: u64,
    pub golden_in_range: usize,
    pub found: usize,
    pub rows: Vec<DiffRow>,
}

impl ReproduceReport {
    pub fn matched(&self) -> bool {
        self.rows.iter().all(|r| r.status == Status::Match)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "table {}, max edge {}: {} golden rows in range, {} found",
            self.table.name(),
            self.max_edge,
            self.golden_in_range,
            self.found
        );
        let _ = writeln!(s, "{:>4}  {:<58} {:<10} {:<10} {:<10} detail", "row", "edges", "status", "golden", "found");
        for r in &self.rows {
            let row = r.golden_row.map_or("-".into(), |i| i.to_string());
            let status = serde_json::to_value(r.status).expect("serialisable");
            let _ = writeln!(
                s,
                "{row:>4}  {:<58} {:<10} {:<10} {:<10} {}",
                r.edges,
                status.as_str().unwrap_or_default(),
                r.golden_embedding,
                r.found_embedding,
                r.detail
            );
        }
        let _ = writeln!(s, "result: {}", if self.matched() { "match" } else { "MISMATCH" });
        s
    }

    pub fn write_csv(&self, out: impl std::io::Write) -> std::result::Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn verdict(ok: bool) -> String {
    if ok { "verified" } else { "failed" }.into()
}

fn coordinates_realise(edges: [u64; 6], points: &[[i64; 3]; 3]) -> bool {
    let rows: Vec<&[i64]> = std::iter::once(&[0i64; 3]).chain(points.iter()).map(|p| p.as_slice()).collect();
    let m = SquaredDistanceMatrix::from_edges(3, &edges).expect("positive edges");
    LatticePointSet::from_i64(3, &rows).is_ok_and(|p| verify_embedding(&p, &m))
}

fn embeds(t: &HeronTetrahedron) -> bool {
    let m = t.matrix();
    integer_embedding(&m).is_ok_and(|p| verify_embedding(&p, &m))
}

fn fmt_edges(e: &[u64]) -> String {
    e.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// A golden row in range, already compared against the found object with
/// the same canonical form (if any).
struct Expected {
    row: usize,
    key: [u64; 6],
    label: String,
    golden_embedding: String,
    check: Box<dyn Fn(&HeronTetrahedron) -> Vec<String>>,
}

fn compare(table: Table, max_edge: u64, expected: Vec<Expected>, found: Vec<HeronTetrahedron>) -> ReproduceReport {
    let total_found = found.len();
    let mut by_key: BTreeMap<[u64; 6], HeronTetrahedron> = found.into_iter().map(|t| (t.edges, t)).collect();
    let golden_in_range = expected.len();
    let mut rows = Vec::new();
    for e in expected {
        let (status, found_embedding, detail) = match by_key.remove(&e.key) {
            None => (Status::Missing, "-".into(), "not found by the search".into()),
            Some(t) => {
                let mut problems = (e.check)(&t);
                let emb = embeds(&t);
                if !emb {
                    problems.push("integer embedding failed".into());
                }
                if e.golden_embedding == "failed" {
                    problems.push("golden coordinates do not reproduce the distances".into());
                }
                let status = if problems.is_empty() { Status::Match } else { Status::Mismatch };
                (status, verdict(emb), problems.join("; "))
            }
        };
        rows.push(DiffRow {
            table: table.name(),
            golden_row: Some(e.row),
            edges: e.label,
            status,
            golden_embedding: e.golden_embedding,
            found_embedding,
            detail,
        });
    }
    for t in by_key.into_values() {
        rows.push(DiffRow {
            table: table.name(),
            golden_row: None,
            edges: fmt_edges(&t.display_edges()),
            status: Status::Unexpected,
            golden_embedding: "-".into(),
            found_embedding: verdict(embeds(&t)),
            detail: format!("tags {}", t.tags.names().join(",")),
        });
    }
    ReproduceReport { table, max_edge, golden_in_range, found: total_found, rows }
}

fn has_tag(t: &HeronTetrahedron, tag: &str) -> Vec<String> {
    if t.tags.names().contains(&tag) {
        Vec::new()
    } else {
        vec![format!("tags {} lack {tag}", t.tags.names().join(","))]
    }
}

fn reproduce_a1(max_edge: u64) -> Result<ReproduceReport> {
    let expected = golden::semi_regular()?
        .into_iter()
        .enumerate()
        .filter(|(_, r)| r.abc.iter().all(|&e| e <= max_edge))
        .map(|(i, r)| {
            let [a, b, c] = r.abc;
            let edges = [a, b, c, c, b, a];
            Expected {
                row: i + 1,
                key: canonical_tetra(&edges),
                label: fmt_edges(&r.abc),
                golden_embedding: verdict(coordinates_realise(edges, &r.points)),
                check: Box::new(|t| has_tag(t, "semi-regular")),
            }
        })
        .collect();
    Ok(compare(Table::A1, max_edge, expected, search_semi_regular(max_edge)?))
}

fn reproduce_a2(max_edge: u64) -> Result<ReproduceReport> {
    let found = search_right_angled_face(max_edge)?;
    let legs_of: BTreeMap<[u64; 6], RightAngledFaceLegs> = found.iter().map(|(l, t)| (t.edges, *l)).collect();
    let expected = golden::right_angled_face()?
        .into_iter()
        .enumerate()
        .filter(|(_, r)| r.edges.iter().all(|&e| e <= max_edge))
        .map(|(i, r)| {
            let label = format!("{} | {} | {}", fmt_edges(&r.edges), fmt_edges(&r.legs), fmt_edges(&r.isosceles));
            let key = canonical_tetra(&r.edges);
            let golden = r.oriented();
            let legs_of = legs_of.clone();
            let check = move |t: &HeronTetrahedron| {
                let mut problems = has_tag(t, "right-angled-face");
                let [a1, a2, a3] = golden.legs;
                match RightAngledFaceLegs::new(a1, a2, a3) {
                    Ok(l) if canonical_tetra(&l.edges()) == key => {}
                    _ => problems.push("golden legs do not span the golden edges".into()),
                }
                let Some(l) = legs_of.get(&t.edges) else {
                    return problems;
                };
                if [l.a1, l.a2, l.a3] != golden.legs {
                    problems.push(format!("legs {:?}", [l.a1, l.a2, l.a3]));
                }
                match build_isosceles_face(l) {
                    Ok(f) => {
                        if [2 * f.a, f.x, 2 * f.b] != golden.isosceles {
                            problems.push(format!("isosceles-face columns {:?}", [2 * f.a, f.x, 2 * f.b]));
                        }
                        match HeronTetrahedron::from_edges(f.edges(), Provenance::IsoscelesFaceConstruction) {
                            Ok(iso) => problems.extend(has_tag(&iso, "isosceles-face")),
                            Err(e) => problems.push(format!("glued tetrahedron: {e}")),
                        }
                    }
                    Err(e) => problems.push(format!("glued tetrahedron: {e}")),
                }
                problems
            };
            Expected { row: i + 1, key, label, golden_embedding: "-".into(), check: Box::new(check) }
        })
        .collect();
    Ok(compare(Table::A2, max_edge, expected, found.into_iter().map(|p| p.1).collect()))
}

fn reproduce_a3(max_edge: u64) -> Result<ReproduceReport> {
    let expected = golden::generic()?
        .into_iter()
        .enumerate()
        .filter(|(_, r)| r.edges.iter().all(|&e| e <= max_edge))
        .map(|(i, r)| {
            let (golden_embedding, tags) = match &r.expectation {
                GenericExpectation::Coordinates(p) => (verdict(coordinates_realise(r.edges, p)), vec!["generic".to_string()]),
                GenericExpectation::Tags { tags, .. } => ("tags-only".into(), tags.clone()),
            };
            let check = move |t: &HeronTetrahedron| {
                let got: Vec<String> = t.tags.names().iter().map(|s| s.to_string()).collect();
                if got == tags {
                    Vec::new()
                } else {
                    vec![format!("tags {} instead of {}", got.join(","), tags.join(","))]
                }
            };
            Expected {
                row: i + 1,
                key: canonical_tetra(&r.edges),
                label: fmt_edges(&r.edges),
                golden_embedding,
                check: Box::new(check),
            }
        })
        .collect();
    Ok(compare(Table::A3, max_edge, expected, search_generic_tetrahedra(max_edge, true)?))
}

/// Runs the search behind `table` at `max_edge` and diffs it against the
/// golden rows with every edge in range.
pub fn reproduce(table: Table, max_edge: u64) -> Result<ReproduceReport> {
    match table {
        Table::A1 => reproduce_a1(max_edge),
        Table::A2 => reproduce_a2(max_edge),
        Table::A3 => reproduce_a3(max_edge),
    }
}
