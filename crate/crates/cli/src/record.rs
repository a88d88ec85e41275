//! The JSON-lines record schema.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use heron_core::lattice::{verify_embedding, AssertionReport, Dim4Report, LatticePointSet};
use heron_core::modular::{ClaimReport, DivisibilityClaim, ScalingReport};
use heron_core::search::{HeronTetrahedron, HeronTriangle, IsoscelesFaceTetra, Provenance, RightAngledFaceLegs};
use heron_core::simplex::{SquaredDistanceMatrix, TriangleSides};

use crate::error::{CliError, Result};

pub const SCHEMA: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordKind {
    Triangle,
    Tetrahedron,
    Embedding,
    Verdict,
    Witness,
}

/// What a verdict or witness record is about; enough to rerun it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Subject {
    Claim { claim: DivisibilityClaim },
    Scaling { t: u64 },
    Assertion { p: u64 },
    Dim4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Report {
    Claim(ClaimReport),
    Scaling(ScalingReport),
    Assertion(AssertionReport),
    Dim4(Dim4Report),
}

impl Report {
    pub fn holds(&self) -> bool {
        match self {
            Self::Claim(r) => r.verified,
            Self::Scaling(r) => r.verified,
            Self::Assertion(r) => r.holds,
            Self::Dim4(r) => r.squared_distances == [4; 6] && !r.side_one_embeds,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordProvenance {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_edge: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive_only: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shard: Option<u64>,
    /// Key of the record this one was derived from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub version: String,
}

/// One output line. Geometry records carry their edges so that every
/// other field can be recomputed from them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub schema: u32,
    pub kind: RecordKind,
    /// Canonical-form key, for deduplication.
    pub key: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub display_edges: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face_areas: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub legs: Option<RightAngledFaceLegs>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isosceles_face: Option<IsoscelesFaceTetra>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub divisibility_violations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<Subject>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
    pub provenance: RecordProvenance,
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn triangle_key(sides: &[u64]) -> String {
    format!("triangle:{}", join(sides))
}

pub fn tetra_key(canonical: &[u64]) -> String {
    format!("tetrahedron:{}", join(canonical))
}

fn triangle_tags(t: &HeronTriangle) -> Vec<String> {
    let angle = serde_json::to_value(t.angle).expect("serialisable").as_str().expect("unit variant").to_string();
    let mut tags = vec![angle];
    if t.pythagorean {
        tags.push("pythagorean".into());
    }
    if t.isosceles {
        tags.push("isosceles".into());
    }
    tags
}

impl Record {
    fn bare(kind: RecordKind, key: String, provenance: RecordProvenance) -> Self {
        Self {
            schema: SCHEMA,
            kind,
            key,
            edges: None,
            display_edges: None,
            area: None,
            face_areas: None,
            volume: None,
            tags: None,
            primitive: None,
            legs: None,
            isosceles_face: None,
            divisibility_violations: Vec::new(),
            coordinates: None,
            verified: None,
            subject: None,
            report: None,
            provenance,
        }
    }

    pub fn triangle(t: &HeronTriangle, provenance: RecordProvenance) -> Self {
        let sides = t.sides.sides().to_vec();
        let mut r = Self::bare(RecordKind::Triangle, triangle_key(&sides), provenance);
        r.edges = Some(sides);
        r.area = Some(t.area);
        r.tags = Some(triangle_tags(t));
        r.primitive = Some(t.primitive);
        r
    }

    pub fn tetrahedron(t: &HeronTetrahedron, provenance: RecordProvenance) -> Self {
        let mut r = Self::bare(RecordKind::Tetrahedron, tetra_key(&t.edges), provenance);
        r.edges = Some(t.edges.to_vec());
        r.display_edges = Some(t.display_edges().to_vec());
        r.face_areas = Some(t.face_areas.to_vec());
        r.volume = Some(t.volume);
        r.tags = Some(t.tags.names().iter().map(|s| s.to_string()).collect());
        r.primitive = Some(t.primitive);
        r.divisibility_violations = t.divisibility_violations();
        r
    }

    pub fn embedding(source: &Record, points: &LatticePointSet, verified: bool, provenance: RecordProvenance) -> Result<Self> {
        let mut r = Self::bare(RecordKind::Embedding, source.key.clone(), provenance);
        r.edges = source.edges.clone();
        r.coordinates = Some(coordinates_to_i64(points)?);
        r.verified = Some(verified);
        Ok(r)
    }

    pub fn verdict(key: String, subject: Subject, report: Report, provenance: RecordProvenance) -> Self {
        let kind = if report.holds() { RecordKind::Verdict } else { RecordKind::Witness };
        let mut r = Self::bare(kind, key, provenance);
        r.subject = Some(subject);
        r.report = Some(report);
        r
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialise")
    }

    /// The distance matrix spanned by `edges`: a segment, a triangle or a
    /// tetrahedron in `01,02,03,12,13,23` order.
    pub fn distance_matrix(&self) -> std::result::Result<SquaredDistanceMatrix, String> {
        let edges = self.edges.as_ref().ok_or("record has no edges")?;
        let n = match edges.len() {
            1 => 1,
            3 => 2,
            6 => 3,
            k => return Err(format!("{k} edges do not describe a simplex of dimension 1 to 3")),
        };
        SquaredDistanceMatrix::from_edges(n, edges).map_err(|e| e.to_string())
    }
}

pub fn coordinates_to_i64(points: &LatticePointSet) -> Result<Vec<Vec<i64>>> {
    points
        .points
        .iter()
        .map(|p| p.iter().map(|c| i64::try_from(c).map_err(|_| CliError::Io(format!("coordinate {c} exceeds 64 bits")))).collect())
        .collect()
}

/// Reads JSON-lines records; blank lines are skipped. Errors name the
/// offending line.
pub fn read_records(input: impl BufRead) -> Result<Vec<(usize, Record)>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| CliError::Input { line: line_no, message: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        let record: Record =
            serde_json::from_str(&line).map_err(|e| CliError::Input { line: line_no, message: format!("malformed record: {e}") })?;
        if record.schema != SCHEMA {
            return Err(CliError::Input { line: line_no, message: format!("unsupported schema {}", record.schema) });
        }
        out.push((line_no, record));
    }
    Ok(out)
}

pub fn write_records<'a>(mut out: impl Write, records: impl IntoIterator<Item = &'a Record>) -> std::io::Result<()> {
    for r in records {
        writeln!(out, "{}", r.to_line())?;
    }
    Ok(())
}

/// Recomputes a record from its edges (or reruns its check) and lists every
/// field that disagrees.
pub fn recheck(record: &Record) -> Vec<String> {
    let mut bad = Vec::new();
    let mut expect = |field: &str, ok: bool| {
        if !ok {
            bad.push(format!("{}: {field} does not match a recomputation", record.key));
        }
    };
    match record.kind {
        RecordKind::Triangle => match recheck_triangle(record) {
            Ok(fresh) => {
                expect("key", fresh.key == record.key);
                expect("area", fresh.area == record.area);
                expect("tags", fresh.tags == record.tags);
                expect("primitive", fresh.primitive == record.primitive);
            }
            Err(e) => return vec![format!("{}: {e}", record.key)],
        },
        RecordKind::Tetrahedron => match recheck_tetra(record) {
            Ok(fresh) => {
                expect("key", fresh.key == record.key);
                expect("edges", fresh.edges == record.edges);
                expect("display_edges", record.display_edges.is_none() || fresh.display_edges == record.display_edges);
                expect("face_areas", fresh.face_areas == record.face_areas);
                expect("volume", fresh.volume == record.volume);
                expect("tags", fresh.tags == record.tags);
                expect("primitive", fresh.primitive == record.primitive);
                expect("divisibility_violations", fresh.divisibility_violations == record.divisibility_violations);
                let canonical = |e: [u64; 6]| heron_core::simplex::canonical_tetra(&e).to_vec();
                if let Some(l) = record.legs {
                    let ok = RightAngledFaceLegs::new(l.a1, l.a2, l.a3).map(|l| canonical(l.edges()));
                    expect("legs", ok.ok() == fresh.edges);
                }
                if let Some(f) = record.isosceles_face {
                    let ok = IsoscelesFaceTetra::new(f.a, f.b, f.x, f.m).map(|f| canonical(f.edges()));
                    expect("isosceles_face", ok.ok() == fresh.edges);
                }
            }
            Err(e) => return vec![format!("{}: {e}", record.key)],
        },
        RecordKind::Embedding => {
            let verified = record.distance_matrix().ok().zip(record.coordinates.as_ref()).is_some_and(|(m, c)| {
                let rows: Vec<&[i64]> = c.iter().map(Vec::as_slice).collect();
                LatticePointSet::from_i64(m.dimension(), &rows).is_ok_and(|p| verify_embedding(&p, &m))
            });
            expect("coordinates", verified);
            expect("verified", record.verified == Some(verified));
        }
        RecordKind::Verdict | RecordKind::Witness => match &record.subject {
            None => expect("subject", false),
            Some(s) => match crate::commands::run_subject(s) {
                Ok(report) => {
                    expect("report", Some(&report) == record.report.as_ref());
                    let kind = if report.holds() { RecordKind::Verdict } else { RecordKind::Witness };
                    expect("kind", kind == record.kind);
                }
                Err(e) => return vec![format!("{}: {e}", record.key)],
            },
        },
    }
    bad
}

fn recheck_triangle(record: &Record) -> std::result::Result<Record, String> {
    let e = record.edges.as_ref().ok_or("record has no edges")?;
    let [a, b, c]: [u64; 3] = e.as_slice().try_into().map_err(|_| "a triangle needs three edges")?;
    let sides = TriangleSides::new(a, b, c).map_err(|e| e.to_string())?;
    let t = HeronTriangle::new(sides).ok_or("not a Heron triangle")?;
    Ok(Record::triangle(&t, record.provenance.clone()))
}

fn recheck_tetra(record: &Record) -> std::result::Result<Record, String> {
    let e = record.edges.as_ref().ok_or("record has no edges")?;
    let edges: [u64; 6] = e.as_slice().try_into().map_err(|_| "a tetrahedron needs six edges")?;
    let t = HeronTetrahedron::from_edges(edges, Provenance::Input).map_err(|e| e.to_string())?;
    Ok(Record::tetrahedron(&t, record.provenance.clone()))
}
