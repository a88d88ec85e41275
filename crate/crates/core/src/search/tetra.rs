//! Heron tetrahedra, their class tags and the semi-regular property checks.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::big_to_u64;
use crate::error::{Error, Result};
use crate::simplex::{canonical_tetra, display_tetra, heron_measure_report, SquaredDistanceMatrix, TETRA_FACES};

/// Opposite edge pairs in the `01,02,03,12,13,23` order.
pub const OPPOSITE_EDGES: [(usize, usize); 3] = [(0, 5), (1, 4), (2, 3)];

/// The special classes a tetrahedron can belong to. A tetrahedron without
/// any of them is generic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassTags {
    pub semi_regular: bool,
    pub right_angled_vertex: bool,
    pub right_angled_face: bool,
    pub isosceles_face: bool,
}

/// Pairs that cannot occur together for Heron tetrahedra. Semi-regular with
/// isosceles-face is absent on purpose: that case is open.
const FORBIDDEN: [(&str, &str); 5] = [
    ("right-angled-vertex", "right-angled-face"),
    ("right-angled-vertex", "semi-regular"),
    ("right-angled-face", "semi-regular"),
    ("right-angled-vertex", "isosceles-face"),
    ("right-angled-face", "isosceles-face"),
];

impl ClassTags {
    pub fn is_generic(&self) -> bool {
        !(self.semi_regular || self.right_angled_vertex || self.right_angled_face || self.isosceles_face)
    }

    pub fn has(&self, class: TetraClass) -> bool {
        match class {
            TetraClass::SemiRegular => self.semi_regular,
            TetraClass::RightAngledVertex => self.right_angled_vertex,
            TetraClass::RightAngledFace => self.right_angled_face,
            TetraClass::IsoscelesFace => self.isosceles_face,
            TetraClass::Generic => self.is_generic(),
        }
    }

    /// Tag names in a fixed order; `["generic"]` when there are none.
    pub fn names(&self) -> Vec<&'static str> {
        let tags = [
            (self.semi_regular, "semi-regular"),
            (self.right_angled_vertex, "right-angled-vertex"),
            (self.right_angled_face, "right-angled-face"),
            (self.isosceles_face, "isosceles-face"),
        ];
        let names: Vec<_> = tags.iter().filter(|t| t.0).map(|t| t.1).collect();
        if names.is_empty() {
            vec!["generic"]
        } else {
            names
        }
    }

    /// The first forbidden pair present, if any.
    pub fn conflict(&self) -> Option<(&'static str, &'static str)> {
        let names = self.names();
        FORBIDDEN.iter().copied().find(|(x, y)| names.contains(x) && names.contains(y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TetraClass {
    SemiRegular,
    RightAngledVertex,
    RightAngledFace,
    IsoscelesFace,
    Generic,
}

impl TetraClass {
    pub const ALL: [TetraClass; 5] = [
        Self::SemiRegular,
        Self::RightAngledVertex,
        Self::RightAngledFace,
        Self::IsoscelesFace,
        Self::Generic,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::SemiRegular => "semi-regular",
            Self::RightAngledVertex => "right-angled-vertex",
            Self::RightAngledFace => "right-angled-face",
            Self::IsoscelesFace => "isosceles-face",
            Self::Generic => "generic",
        }
    }
}

impl std::str::FromStr for TetraClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown tetrahedron class `{s}`")))
    }
}

/// Which search produced a tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    SemiRegularSearch,
    RightAngledVertexSearch,
    RightAngledFaceSearch,
    IsoscelesFaceConstruction,
    GenericSearch,
    Input,
}

fn sq(e: u64) -> u128 {
    e as u128 * e as u128
}

fn is_right(face: [u64; 3]) -> bool {
    let mut f = face.map(sq);
    f.sort_unstable();
    f[0] + f[1] == f[2]
}

/// Class tags from the six edges in `01,02,03,12,13,23` order.
pub fn classify_edges(e: &[u64; 6]) -> ClassTags {
    use crate::simplex::tetra_edge_index as idx;
    let semi_regular = OPPOSITE_EDGES.iter().all(|&(i, j)| e[i] == e[j]);
    let right_angled_vertex = (0..4).any(|v| {
        let others: Vec<usize> = (0..4).filter(|&u| u != v).collect();
        [(0, 1), (0, 2), (1, 2)].iter().all(|&(i, j)| {
            let (ui, uj) = (others[i], others[j]);
            sq(e[idx(ui, uj)]) == sq(e[idx(v, ui)]) + sq(e[idx(v, uj)])
        })
    });
    let right_angled_face = TETRA_FACES.iter().all(|f| is_right(f.map(|k| e[k])));
    let isosceles_face = OPPOSITE_EDGES.iter().any(|&(i, j)| {
        let rest: Vec<u64> = (0..6).filter(|&k| k != i && k != j).map(|k| e[k]).collect();
        rest.iter().all(|&x| x == rest[0])
    });
    ClassTags { semi_regular, right_angled_vertex, right_angled_face, isosceles_face }
}

/// A verified Heron tetrahedron.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeronTetrahedron {
    /// Canonical (lexicographically smallest) labelling.
    pub edges: [u64; 6],
    /// Face areas, in the face order of the canonical labelling.
    pub face_areas: [u64; 4],
    pub volume: u64,
    pub tags: ClassTags,
    pub primitive: bool,
    pub provenance: Provenance,
}

impl HeronTetrahedron {
    /// Runs the full Heron test and the tag-consistency check on edges given
    /// in any labelling. Divisibility is reported separately, by
    /// [`Self::divisibility_violations`].
    pub fn from_edges(edges: [u64; 6], provenance: Provenance) -> Result<Self> {
        let edges = canonical_tetra(&edges);
        let m = SquaredDistanceMatrix::tetrahedron(edges)?;
        let report = heron_measure_report(&m).map_err(Error::NotHeron)?;
        let too_big = || Error::EdgeOutOfRange(*edges.iter().max().unwrap());
        let volume = big_to_u64(report.volume().expect("Heron report has a volume")).ok_or_else(too_big)?;
        let mut face_areas = [0u64; 4];
        for (slot, face) in TETRA_FACES.iter().enumerate() {
            let t = crate::simplex::TriangleSides::new(edges[face[0]], edges[face[1]], edges[face[2]])?;
            face_areas[slot] = crate::simplex::heron_area(&t)?.expect("faces of a Heron tetrahedron are Heron");
        }
        let tags = classify_edges(&edges);
        if let Some((x, y)) = tags.conflict() {
            return Err(Error::InconsistentTags(x, y));
        }
        let primitive = edges.iter().fold(0u64, |g, e| g.gcd(e)) == 1;
        Ok(Self { edges, face_areas, volume, tags, primitive, provenance })
    }

    /// Failures of `336 | V` and `6 | A` for each face.
    pub fn divisibility_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.volume % 336 != 0 {
            out.push(format!("volume {} is not divisible by 336", self.volume));
        }
        for a in self.face_areas.iter().filter(|&&a| a % 6 != 0) {
            out.push(format!("face area {a} is not divisible by 6"));
        }
        out
    }

    pub fn check_divisibility(&self) -> Result<()> {
        match self.divisibility_violations().first() {
            None => Ok(()),
            Some(v) => Err(Error::DivisibilityViolation(format!("{:?}: {v}", self.display_edges()))),
        }
    }

    /// Labelling with the longest edge first, as in printed tables.
    pub fn display_edges(&self) -> [u64; 6] {
        display_tetra(&self.edges)
    }

    pub fn max_edge(&self) -> u64 {
        *self.edges.iter().max().unwrap()
    }

    pub fn matrix(&self) -> SquaredDistanceMatrix {
        SquaredDistanceMatrix::tetrahedron(self.edges).expect("validated edges")
    }
}

/// Outcome of the computable semi-regularity characterisations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiRegularReport {
    pub opposite_edges_equal: bool,
    pub face_areas_equal: bool,
    pub face_perimeters_equal: bool,
    pub congruent_acute_faces: bool,
}

impl SemiRegularReport {
    pub fn all(&self) -> bool {
        self.opposite_edges_equal && self.face_areas_equal && self.face_perimeters_equal && self.congruent_acute_faces
    }

    pub fn any(&self) -> bool {
        self.opposite_edges_equal || self.face_areas_equal || self.face_perimeters_equal || self.congruent_acute_faces
    }
}

/// Evaluates the equivalent characterisations of semi-regularity and
/// asserts that they agree.
pub fn semi_regular_property_check(t: &HeronTetrahedron) -> SemiRegularReport {
    let e = t.edges;
    let faces: Vec<[u64; 3]> = TETRA_FACES
        .iter()
        .map(|f| {
            let mut s = f.map(|k| e[k]);
            s.sort_unstable();
            s
        })
        .collect();
    let acute = |f: &[u64; 3]| sq(f[2]) < sq(f[0]) + sq(f[1]);
    let report = SemiRegularReport {
        opposite_edges_equal: OPPOSITE_EDGES.iter().all(|&(i, j)| e[i] == e[j]),
        face_areas_equal: t.face_areas.iter().all(|&a| a == t.face_areas[0]),
        face_perimeters_equal: faces.iter().all(|f| f.iter().sum::<u64>() == faces[0].iter().sum::<u64>()),
        congruent_acute_faces: faces.iter().all(|f| f == &faces[0] && acute(f)),
    };
    assert!(report.all() || !report.any(), "semi-regular characterisations disagree for {e:?}: {report:?}");
    report
}
