//! Dedicated searches and constructions for the special tetrahedron classes.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::isqrt;
#[cfg(test)]
use crate::arith::isqrt_u64;
use crate::error::{Error, Result};
use crate::search::tetra::{HeronTetrahedron, Provenance};
use crate::search::triangles::{collect_heron_triangles, TriangleFilter};
use crate::simplex::SquaredDistanceMatrix;

/// Semi-regular tetrahedra: opposite edges `(a, b, c)` with `a ≤ max_edge`.
///
/// Each face is the acute triangle `(a, b, c)`, and
/// `72·V² = (b²+c²−a²)(a²+c²−b²)(a²+b²−c²)`.
pub fn search_semi_regular(max_edge: u64) -> Result<Vec<HeronTetrahedron>> {
    let candidates: Vec<[u64; 3]> = collect_heron_triangles(max_edge, Some(TriangleFilter::Acute))
        .into_par_iter()
        .filter(|t| t.primitive)
        .map(|t| t.sides.sides())
        .filter(|&[a, b, c]| {
            let (a2, b2, c2) = ((a * a) as u128, (b * b) as u128, (c * c) as u128);
            let v72 = BigInt::from(b2 + c2 - a2) * (a2 + c2 - b2) * (a2 + b2 - c2);
            v72.is_multiple_of(&BigInt::from(72)) && crate::arith::isqrt_big(&(v72 / 72)).is_some()
        })
        .collect();
    candidates
        .into_iter()
        .map(|[a, b, c]| HeronTetrahedron::from_edges([a, b, c, c, b, a], Provenance::SemiRegularSearch))
        .collect()
}

/// Edges of a box, `u ≥ v ≥ w ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxTriple {
    u: u64,
    v: u64,
    w: u64,
}

impl BoxTriple {
    pub fn new(x: u64, y: u64, z: u64) -> Result<Self> {
        if x == 0 || y == 0 || z == 0 {
            return Err(Error::EdgeOutOfRange(0));
        }
        let mut s = [x, y, z];
        s.sort_unstable_by(|l, r| r.cmp(l));
        Ok(Self { u: s[0], v: s[1], w: s[2] })
    }

    pub fn edges(&self) -> [u64; 3] {
        [self.u, self.v, self.w]
    }

    /// Squared face diagonals `v²+w², u²+w², u²+v²`.
    pub fn face_diagonals_sq(&self) -> [u128; 3] {
        let [u, v, w] = self.edges().map(|x| x as u128 * x as u128);
        [v + w, u + w, u + v]
    }

    pub fn body_diagonal_sq(&self) -> u128 {
        self.edges().iter().map(|&x| x as u128 * x as u128).sum()
    }

    /// An integer box has integer face and body diagonals.
    pub fn is_perfect(&self) -> bool {
        self.face_diagonals_sq().iter().all(|&d| isqrt(d).is_some()) && isqrt(self.body_diagonal_sq()).is_some()
    }
}

/// Right-angled-vertex tetrahedron with legs `(x, y, z)` at vertex 0, as a
/// squared-distance matrix.
pub fn rav_matrix(x: &BigInt, y: &BigInt, z: &BigInt) -> SquaredDistanceMatrix {
    let (x2, y2, z2) = (x * x, y * y, z * z);
    let upper = [x2.clone(), y2.clone(), z2.clone(), &x2 + &y2, &x2 + &z2, &y2 + &z2];
    SquaredDistanceMatrix::from_squared_upper(3, &upper).expect("positive legs")
}

/// The legs `(v·w, u·w, u·v)` of the right-angled-vertex tetrahedron dual
/// to a box, together with its squared-distance matrix.
pub fn box_to_rav(b: &BoxTriple) -> ([BigInt; 3], SquaredDistanceMatrix) {
    let [u, v, w] = b.edges().map(BigInt::from);
    let legs = [&v * &w, &u * &w, &u * &v];
    let m = rav_matrix(&legs[0], &legs[1], &legs[2]);
    (legs, m)
}

/// The box `(y·z, x·z, x·y)` dual to a right-angled-vertex tetrahedron.
pub fn rav_to_box(x: u64, y: u64, z: u64) -> Result<BoxTriple> {
    let prod = |a: u64, b: u64| a.checked_mul(b).ok_or(Error::EdgeOutOfRange(a.max(b)));
    BoxTriple::new(prod(y, z)?, prod(x, z)?, prod(x, y)?)
}

/// Index of Pythagorean leg pairs: each leg maps to its partner legs and
/// hypotenuses, for hypotenuses up to the bound.
#[derive(Debug, Clone, Default)]
pub struct PythagoreanIndex {
    partners: HashMap<u64, Vec<(u64, u64)>>,
}

impl PythagoreanIndex {
    pub fn new(max_hypotenuse: u64) -> Self {
        let mut index = Self::default();
        let mut m = 2u64;
        while m * m + 1 <= max_hypotenuse {
            for n in 1..m {
                if (m - n) % 2 == 0 || m.gcd(&n) != 1 {
                    continue;
                }
                let (a, b, c) = (m * m - n * n, 2 * m * n, m * m + n * n);
                if c > max_hypotenuse {
                    break;
                }
                let mut k = 1;
                while k * c <= max_hypotenuse {
                    index.insert(k * a, k * b, k * c);
                    k += 1;
                }
            }
            m += 1;
        }
        for list in index.partners.values_mut() {
            list.sort_unstable();
        }
        index
    }

    fn insert(&mut self, a: u64, b: u64, c: u64) {
        self.partners.entry(a).or_default().push((b, c));
        self.partners.entry(b).or_default().push((a, c));
    }

    /// `(other_leg, hypotenuse)` pairs for a leg, ascending.
    pub fn partners(&self, leg: u64) -> &[(u64, u64)] {
        self.partners.get(&leg).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn legs(&self) -> impl Iterator<Item = u64> + '_ {
        self.partners.keys().copied()
    }

    pub fn hypotenuse(&self, a: u64, b: u64) -> Option<u64> {
        self.partners(a).iter().find(|p| p.0 == b).map(|p| p.1)
    }
}

/// Right-angled-vertex Heron tetrahedra with all edges ≤ `max_edge`. Their
/// existence is equivalent to that of a perfect integer box, so this is
/// expected to be empty; it runs bounded and reports whatever it finds.
pub fn search_right_angled_vertex(max_edge: u64) -> Result<Vec<HeronTetrahedron>> {
    let index = PythagoreanIndex::new(max_edge);
    let mut legs: Vec<u64> = index.legs().collect();
    legs.sort_unstable();
    let found: Vec<[u64; 3]> = legs
        .par_iter()
        .flat_map_iter(|&x| {
            let index = &index;
            index.partners(x).iter().filter(move |p| p.0 > x).flat_map(move |&(y, _)| {
                index
                    .partners(y)
                    .iter()
                    .filter(move |q| q.0 > y && index.hypotenuse(x, q.0).is_some())
                    .map(move |q| [x, y, q.0])
            })
        })
        .collect();
    let mut out = BTreeSet::new();
    for [x, y, z] in found {
        let m = rav_matrix(&x.into(), &y.into(), &z.into());
        if crate::simplex::heron_measure_report(&m).is_ok() && x.gcd(&y).gcd(&z) == 1 {
            let e = m.edge_lengths().expect("integer edges").iter().map(|b| crate::arith::big_to_u64(b).unwrap()).collect::<Vec<_>>();
            out.insert(HeronTetrahedron::from_edges(e.try_into().unwrap(), Provenance::RightAngledVertexSearch)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// Staircase legs `A0=(0,0,0), A1=(a1,0,0), A2=(a1,a2,0), A3=(a1,a2,a3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RightAngledFaceLegs {
    pub a1: u64,
    pub a2: u64,
    pub a3: u64,
}

impl RightAngledFaceLegs {
    /// Fails unless `a1²+a2²`, `a2²+a3²` and `a1²+a2²+a3²` are all squares.
    pub fn new(a1: u64, a2: u64, a3: u64) -> Result<Self> {
        let r = Self { a1, a2, a3 };
        if a1 == 0 || a2 == 0 || a3 == 0 {
            return Err(Error::EdgeOutOfRange(0));
        }
        let [s12, s23, s123] = r.sums();
        if isqrt(s12).is_none() || isqrt(s23).is_none() || isqrt(s123).is_none() {
            return Err(Error::Precondition(format!("({a1},{a2},{a3}) is not a right-angled-face triple")));
        }
        Ok(r)
    }

    fn sums(&self) -> [u128; 3] {
        let [a1, a2, a3] = [self.a1, self.a2, self.a3].map(|x| x as u128 * x as u128);
        [a1 + a2, a2 + a3, a1 + a2 + a3]
    }

    /// The edge `A0A3`, the only one not parallel to an axis or face diagonal.
    pub fn diagonal(&self) -> u64 {
        isqrt(self.sums()[2]).unwrap() as u64
    }

    /// Edges in the order `01,02,03,12,13,23` of the staircase labelling.
    pub fn edges(&self) -> [u64; 6] {
        let [s12, s23, s123] = self.sums().map(|s| isqrt(s).unwrap() as u64);
        [self.a1, s12, s123, self.a2, s23, self.a3]
    }

    pub fn volume(&self) -> u128 {
        self.a1 as u128 * self.a2 as u128 * self.a3 as u128 / 6
    }

    pub fn reversed(&self) -> Self {
        Self { a1: self.a3, a2: self.a2, a3: self.a1 }
    }
}

/// Primitive right-angled-face triples with every edge ≤ `max_edge`,
/// oriented so that `a1 ≥ a3`, sorted by diagonal then legs.
pub fn search_right_angled_face(max_edge: u64) -> Result<Vec<(RightAngledFaceLegs, HeronTetrahedron)>> {
    let index = PythagoreanIndex::new(max_edge);
    let mut middles: Vec<u64> = index.legs().collect();
    middles.sort_unstable();
    let mut triples: Vec<RightAngledFaceLegs> = middles
        .par_iter()
        .flat_map_iter(|&a2| {
            let partners = index.partners(a2);
            partners.iter().flat_map(move |&(a1, _)| {
                partners.iter().filter(move |&&(a3, _)| a3 <= a1).filter_map(move |&(a3, _)| {
                    if a1.gcd(&a2).gcd(&a3) != 1 {
                        return None;
                    }
                    let r = RightAngledFaceLegs::new(a1, a2, a3).ok()?;
                    (r.diagonal() <= max_edge).then_some(r)
                })
            })
        })
        .collect();
    triples.sort_by_key(|r| (r.diagonal(), r.a1, r.a2, r.a3));
    triples
        .into_iter()
        .map(|r| Ok((r, HeronTetrahedron::from_edges(r.edges(), Provenance::RightAngledFaceSearch)?)))
        .collect()
}

/// Tetrahedron `ABCD` with `AC = 2a`, `BD = 2b` and the four other edges
/// equal to `x`; `m` is the length of the common perpendicular of `AC` and
/// `BD` through their midpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsoscelesFaceTetra {
    pub a: u64,
    pub b: u64,
    pub x: u64,
    pub m: u64,
}

impl IsoscelesFaceTetra {
    pub fn new(a: u64, b: u64, x: u64, m: u64) -> Result<Self> {
        let sq = |v: u64| v as u128 * v as u128;
        if sq(a) + sq(m) + sq(b) != sq(x) {
            return Err(Error::Precondition(format!("a²+m²+b² ≠ x² for (a,b,x,m)=({a},{b},{x},{m})")));
        }
        Ok(Self { a, b, x, m })
    }

    /// Edges in the order `AB, AC, AD, BC, BD, CD`.
    pub fn edges(&self) -> [u64; 6] {
        let x = self.x;
        [x, 2 * self.a, x, x, 2 * self.b, x]
    }

    /// Four congruent right-angled-face pieces, each of volume `a·m·b/6`.
    pub fn volume(&self) -> u128 {
        4 * (self.a as u128 * self.m as u128 * self.b as u128) / 6
    }

    /// The right-angled-face piece cut out by the center line.
    pub fn decompose(&self) -> Result<RightAngledFaceLegs> {
        RightAngledFaceLegs::new(self.a, self.m, self.b)
    }
}

/// Glues four copies of a right-angled-face tetrahedron around its middle
/// leg into an isosceles-face tetrahedron.
pub fn build_isosceles_face(r: &RightAngledFaceLegs) -> Result<IsoscelesFaceTetra> {
    IsoscelesFaceTetra::new(r.a1, r.a3, r.diagonal(), r.a2)
}

/// Isosceles-face tetrahedra built from right-angled-face triples, keeping
/// those with every edge ≤ `max_edge`.
pub fn search_isosceles_face(max_edge: u64) -> Result<Vec<(IsoscelesFaceTetra, HeronTetrahedron)>> {
    search_right_angled_face(max_edge)?
        .into_iter()
        .filter_map(|(r, _)| {
            let t = build_isosceles_face(&r).ok()?;
            (t.edges().iter().all(|&e| e <= max_edge)).then_some(t)
        })
        .map(|t| Ok((t, HeronTetrahedron::from_edges(t.edges(), Provenance::IsoscelesFaceConstruction)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{simplex_volume_sq, tetra_cm_det};

    fn is_square_u64(n: u64) -> bool {
        isqrt_u64(n).is_some()
    }

    #[test]
    fn semi_regular_examples() {
        let at = |n| search_semi_regular(n).unwrap().iter().map(|t| {
            let e = t.display_edges();
            [e[0], e[1], e[2]]
        }).collect::<Vec<_>>();
        assert!(at(100).is_empty());
        assert_eq!(at(300), vec![[203, 195, 148]]);
        let mut big = at(2000);
        big.sort();
        assert_eq!(big, vec![[203, 195, 148], [888, 875, 533], [1804, 1479, 1183]]);
    }

    #[test]
    fn semi_regular_volume_oracle() {
        // /72 formula, independently of the Cayley–Menger determinant
        let (a, b, c) = (203u128, 195u128, 148u128);
        let v72 = (b * b + c * c - a * a) * (a * a + c * c - b * b) * (a * a + b * b - c * c);
        assert_eq!(v72 / 72, 611_520 * 611_520);
        let t = search_semi_regular(300).unwrap();
        assert_eq!(t[0].volume, 611_520);
    }

    #[test]
    fn box_round_trip() {
        for (x, y, z) in [(1u64, 1, 1), (3, 4, 12), (7, 11, 13), (240, 117, 44)] {
            let b = rav_to_box(x, y, z).unwrap();
            let (legs, _) = box_to_rav(&b);
            let xyz = BigInt::from(x * y * z);
            let mut got: Vec<_> = legs.to_vec();
            got.sort();
            let mut want = vec![&xyz * x, &xyz * y, &xyz * z];
            want.sort();
            assert_eq!(got, want);
        }
        assert_eq!(rav_to_box(1, 1, 1).unwrap().edges(), [1, 1, 1]);
        assert!(!rav_to_box(1, 1, 1).unwrap().is_perfect());
    }

    #[test]
    fn euler_brick_is_not_perfect() {
        let b = BoxTriple::new(240, 117, 44).unwrap();
        assert!(b.face_diagonals_sq().iter().all(|&d| isqrt(d).is_some()));
        assert_eq!(b.body_diagonal_sq(), 73_225);
        assert!(isqrt(73_225).is_none());
        let (_, m) = box_to_rav(&b);
        assert!(crate::simplex::heron_measure_report(&m).is_err());
    }

    #[test]
    fn no_small_right_angled_vertex() {
        assert!(search_right_angled_vertex(2000).unwrap().is_empty());
    }

    #[test]
    fn right_angled_face_examples() {
        assert!(search_right_angled_face(100).unwrap().is_empty());
        let at700 = search_right_angled_face(700).unwrap();
        assert_eq!(at700.len(), 1);
        assert_eq!(at700[0].0, RightAngledFaceLegs { a1: 672, a2: 104, a3: 153 });
        let mut e = at700[0].1.display_edges();
        e.sort();
        assert_eq!(e, [104, 153, 185, 672, 680, 697]);
        let at1000: Vec<_> = search_right_angled_face(1000).unwrap().into_iter().map(|p| p.0).collect();
        assert_eq!(at1000.len(), 2);
        assert_eq!(at1000[1], RightAngledFaceLegs { a1: 756, a2: 117, a3: 520 });
    }

    #[test]
    fn right_angled_face_small_bound_oracle() {
        // direct triple loop at a tiny bound
        for n in [100u64, 200] {
            let mut brute = 0;
            for a1 in 1..=n {
                for a2 in 1..=n {
                    for a3 in 1..=a1 {
                        let d = a1 * a1 + a2 * a2 + a3 * a3;
                        if is_square_u64(a1 * a1 + a2 * a2) && is_square_u64(a2 * a2 + a3 * a3) && is_square_u64(d) && isqrt_u64(d).unwrap() <= n && a1.gcd(&a2).gcd(&a3) == 1 {
                            brute += 1;
                        }
                    }
                }
            }
            assert_eq!(search_right_angled_face(n).unwrap().len(), brute);
        }
    }

    #[test]
    fn right_angled_face_invariants() {
        for (r, t) in search_right_angled_face(1105).unwrap() {
            assert_eq!(t.volume as u128, r.volume());
            assert_eq!((r.a1 as u128 * r.a2 as u128 * r.a3 as u128) % 6, 0);
            assert!(t.tags.right_angled_face);
        }
    }

    #[test]
    fn isosceles_face_examples() {
        let t = build_isosceles_face(&RightAngledFaceLegs::new(672, 104, 153).unwrap()).unwrap();
        assert_eq!((2 * t.a, t.x, 2 * t.b), (1344, 697, 306));
        assert_eq!(t.volume(), 7_128_576);
        let sq: [i128; 6] = t.edges().map(|e| e as i128 * e as i128);
        assert_eq!(tetra_cm_det(&sq), 288 * 7_128_576i128 * 7_128_576);
        let m = SquaredDistanceMatrix::tetrahedron(t.edges()).unwrap();
        assert_eq!(*simplex_volume_sq(&m).numer(), BigInt::from(7_128_576u64) * 7_128_576u64);
        assert_eq!(t.decompose().unwrap(), RightAngledFaceLegs { a1: 672, a2: 104, a3: 153 });

        let t = build_isosceles_face(&RightAngledFaceLegs::new(756, 117, 520).unwrap()).unwrap();
        assert_eq!((2 * t.a, t.x, 2 * t.b), (1512, 925, 1040));
        let found = search_isosceles_face(1400).unwrap();
        // (672,104,153) and (495,840,448) glue to tetrahedra within the bound
        assert_eq!(found.iter().map(|f| (2 * f.0.a, f.0.x, 2 * f.0.b)).collect::<Vec<_>>(), vec![(1344, 697, 306), (990, 1073, 896)]);
        assert!(found.iter().all(|f| f.1.tags.names() == vec!["isosceles-face"]));
    }
}
