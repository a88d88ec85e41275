//! Heron triangle enumeration and the isosceles split.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::{heron_area_small, TriangleSides};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AngleKind {
    Acute,
    Right,
    Obtuse,
}

/// Optional restriction for [`enumerate_heron_triangles`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriangleFilter {
    Pythagorean,
    Isosceles,
    Acute,
}

impl std::str::FromStr for TriangleFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pythagorean" => Ok(Self::Pythagorean),
            "isosceles" => Ok(Self::Isosceles),
            "acute" => Ok(Self::Acute),
            other => Err(Error::Precondition(format!("unknown triangle class `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeronTriangle {
    pub sides: TriangleSides,
    pub area: u64,
    pub pythagorean: bool,
    pub isosceles: bool,
    pub angle: AngleKind,
    pub primitive: bool,
}

impl HeronTriangle {
    /// Classifies the triangle, or returns `None` if it is not Heron.
    pub fn new(sides: TriangleSides) -> Option<Self> {
        let [a, b, c] = sides.sides();
        let area = heron_area_small(a, b, c)?;
        Some(Self::with_area(sides, area))
    }

    fn with_area(sides: TriangleSides, area: u64) -> Self {
        let [a, b, c] = sides.sides().map(|s| s as u128);
        let angle = match (a * a).cmp(&(b * b + c * c)) {
            std::cmp::Ordering::Less => AngleKind::Acute,
            std::cmp::Ordering::Equal => AngleKind::Right,
            std::cmp::Ordering::Greater => AngleKind::Obtuse,
        };
        let [a, b, c] = sides.sides();
        Self {
            sides,
            area,
            pythagorean: angle == AngleKind::Right,
            isosceles: a == b || b == c,
            angle,
            primitive: a.gcd(&b).gcd(&c) == 1,
        }
    }

    pub fn matches(&self, filter: Option<TriangleFilter>) -> bool {
        match filter {
            None => true,
            Some(TriangleFilter::Pythagorean) => self.pythagorean,
            Some(TriangleFilter::Isosceles) => self.isosceles,
            Some(TriangleFilter::Acute) => self.angle == AngleKind::Acute,
        }
    }
}

/// Candidate third sides `c ≤ b` for a triangle with largest sides `a ≥ b`.
/// A Heron triangle has even perimeter, so only one parity class is tried.
fn third_sides(a: u64, b: u64) -> impl Iterator<Item = u64> {
    let mut lo = a - b + 1;
    if (a + b + lo) % 2 == 1 {
        lo += 1;
    }
    (lo..=b).step_by(2)
}

fn triangles_with_largest_side(a: u64) -> impl Iterator<Item = HeronTriangle> {
    (1..=a).flat_map(move |b| {
        third_sides(a, b).filter_map(move |c| {
            let area = heron_area_small(a, b, c)?;
            let sides = TriangleSides::new(a, b, c).expect("positive sides");
            Some(HeronTriangle::with_area(sides, area))
        })
    })
}

/// Every Heron triangle with largest side at most `max_edge`, once each,
/// ordered by `(a, b, c)` ascending with `a ≥ b ≥ c`.
pub fn enumerate_heron_triangles(max_edge: u64, filter: Option<TriangleFilter>) -> impl Iterator<Item = HeronTriangle> {
    (1..=max_edge).flat_map(triangles_with_largest_side).filter(move |t| t.matches(filter))
}

/// Parallel, order-preserving version of [`enumerate_heron_triangles`].
pub fn collect_heron_triangles(max_edge: u64, filter: Option<TriangleFilter>) -> Vec<HeronTriangle> {
    let per_side: Vec<Vec<HeronTriangle>> = (1..=max_edge)
        .into_par_iter()
        .map(|a| triangles_with_largest_side(a).filter(|t| t.matches(filter)).collect())
        .collect();
    per_side.into_iter().flatten().collect()
}

/// Splits an isosceles Heron triangle along its center line into the leg
/// triple `(half_basis, height, arm)` of the congruent Pythagorean halves.
pub fn isosceles_split(t: &HeronTriangle) -> Result<(u64, u64, u64)> {
    let [a, b, c] = t.sides.sides();
    let (basis, arm) = if a == b && b == c {
        return Err(Error::Precondition("equilateral triangles have no integer height".into()));
    } else if a == b {
        (c, a)
    } else if b == c {
        (a, b)
    } else {
        return Err(Error::Precondition(format!("({a},{b},{c}) is not isosceles")));
    };
    assert!(basis % 2 == 0, "the perimeter of a Heron triangle is even");
    let half = basis / 2;
    let height = 2 * t.area / basis;
    assert_eq!(half * half + height * height, arm * arm);
    Ok((half, height, arm))
}
