//! Exhaustive Heron tetrahedron search by joining Heron faces.
//!
//! Every Heron triangle with sides up to the bound goes into an index. A
//! tetrahedron is assembled from a base face `(p, q, r)` holding its longest
//! edge `p` and three apex edges `(s, t, u)`, where each of the three side
//! faces must itself be an indexed Heron triangle. Only then is the
//! Cayley–Menger determinant evaluated.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_integer::Integer;

use crate::arith::isqrt;
use crate::error::{Error, Result};
use crate::search::tetra::{HeronTetrahedron, Provenance};
use crate::search::triangles::collect_heron_triangles;
use crate::search::{run_all, ShardedSearch};
use crate::simplex::{canonical_tetra, tetra_cm_det};

/// Largest bound for which the determinant fits comfortably in `i128`.
pub const MAX_GENERIC_EDGE: u64 = 1 << 16;

fn sorted3(x: u32, y: u32, z: u32) -> [u32; 3] {
    let mut s = [x, y, z];
    s.sort_unstable();
    s
}

/// Heron triangles keyed for the face join.
#[derive(Debug, Default)]
pub struct TriangleIndex {
    /// Sides listed largest first, grouped by largest side.
    by_largest: HashMap<u32, Vec<[u32; 3]>>,
    /// For an edge, the ordered pairs completing it to a Heron triangle.
    by_edge: HashMap<u32, Vec<(u32, u32)>>,
    /// For an ordered pair of edges, the possible third edges.
    by_pair: HashMap<(u32, u32), Vec<u32>>,
    all: HashSet<[u32; 3]>,
}

impl TriangleIndex {
    pub fn new(max_edge: u64) -> Self {
        let mut index = Self::default();
        for t in collect_heron_triangles(max_edge, None) {
            let [a, b, c] = t.sides.sides().map(|s| s as u32);
            index.by_largest.entry(a).or_default().push([a, b, c]);
            for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                index.by_edge.entry(x).or_default().push((y, z));
                index.by_pair.entry((x, y)).or_default().push(z);
            }
            index.all.insert(sorted3(a, b, c));
        }
        for v in index.by_edge.values_mut() {
            v.sort_unstable();
            v.dedup();
        }
        for v in index.by_pair.values_mut() {
            v.sort_unstable();
            v.dedup();
        }
        index
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    pub fn contains(&self, x: u32, y: u32, z: u32) -> bool {
        self.all.contains(&sorted3(x, y, z))
    }

    /// Largest sides that occur, ascending.
    pub fn largest_sides(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.by_largest.keys().map(|&k| k as u64).collect();
        v.sort_unstable();
        v
    }
}

/// The face-join search; one shard per value of the longest edge.
#[derive(Debug)]
pub struct GenericSearch {
    max_edge: u64,
    primitive_only: bool,
    index: TriangleIndex,
}

impl GenericSearch {
    pub fn new(max_edge: u64, primitive_only: bool) -> Result<Self> {
        if max_edge == 0 || max_edge > MAX_GENERIC_EDGE {
            return Err(Error::BoundOutOfRange(max_edge));
        }
        Ok(Self { max_edge, primitive_only, index: TriangleIndex::new(max_edge) })
    }

    pub fn max_edge(&self) -> u64 {
        self.max_edge
    }

    pub fn index(&self) -> &TriangleIndex {
        &self.index
    }

    /// Converts shard output to verified tetrahedra.
    pub fn finish(edges: &[[u64; 6]]) -> Result<Vec<HeronTetrahedron>> {
        edges.iter().map(|&e| HeronTetrahedron::from_edges(e, Provenance::GenericSearch)).collect()
    }
}

impl ShardedSearch for GenericSearch {
    type Item = [u64; 6];

    fn shards(&self) -> Vec<u64> {
        self.index.largest_sides()
    }

    /// Canonical edge tuples of all Heron tetrahedra whose longest edge is
    /// `shard`, ascending.
    fn run_shard(&self, shard: u64) -> Vec<[u64; 6]> {
        let p = shard as u32;
        let idx = &self.index;
        let mut found = BTreeSet::new();
        let (Some(bases), Some(apex)) = (idx.by_largest.get(&p), idx.by_edge.get(&p)) else {
            return Vec::new();
        };
        let sq = |x: u32| x as i128 * x as i128;
        for &[_, q, r] in bases {
            for &(s, t) in apex.iter().filter(|&&(s, t)| s <= p && t <= p) {
                let Some(us) = idx.by_pair.get(&(q, s)) else { continue };
                for &u in us.iter().filter(|&&u| u <= p) {
                    if !idx.contains(r, t, u) {
                        continue;
                    }
                    // A0A1 = p, A0A2 = q, A0A3 = s, A1A2 = r, A1A3 = t, A2A3 = u
                    let edges = [p, q, s, r, t, u].map(|e| e as u64);
                    if self.primitive_only && edges.iter().fold(0u64, |g, e| g.gcd(e)) != 1 {
                        continue;
                    }
                    let det = tetra_cm_det(&[p, q, s, r, t, u].map(sq));
                    if det <= 0 || det % 288 != 0 || isqrt((det / 288) as u128).is_none() {
                        continue;
                    }
                    found.insert(canonical_tetra(&edges));
                }
            }
        }
        found.into_iter().collect()
    }
}

/// Every Heron tetrahedron with all edges ≤ `max_edge`, in canonical order.
pub fn search_all_tetrahedra(max_edge: u64, primitive_only: bool) -> Result<Vec<HeronTetrahedron>> {
    let search = GenericSearch::new(max_edge, primitive_only)?;
    let edges: Vec<[u64; 6]> = run_all(&search).into_iter().flat_map(|(_, v)| v).collect();
    GenericSearch::finish(&edges)
}

/// The Heron tetrahedra with all edges ≤ `max_edge` that belong to no
/// special class.
pub fn search_generic_tetrahedra(max_edge: u64, primitive_only: bool) -> Result<Vec<HeronTetrahedron>> {
    Ok(search_all_tetrahedra(max_edge, primitive_only)?.into_iter().filter(|t| t.tags.is_generic()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn display(ts: &[HeronTetrahedron]) -> Vec<[u64; 6]> {
        let mut v: Vec<_> = ts.iter().map(|t| t.display_edges()).collect();
        v.sort();
        v
    }

    #[test]
    fn small_bounds() {
        assert!(search_generic_tetrahedra(50, true).unwrap().is_empty());
        assert_eq!(display(&search_generic_tetrahedra(120, true).unwrap()), vec![[117, 84, 80, 51, 53, 52]]);
    }

    #[test]
    fn appendix_rows_up_to_500() {
        let mut want = vec![
            [117, 84, 80, 51, 53, 52],
            [160, 153, 120, 25, 56, 39],
            [225, 200, 87, 65, 156, 119],
            [318, 221, 221, 203, 175, 42],
            [319, 318, 221, 175, 210, 175],
            [319, 318, 221, 175, 252, 203],
            [429, 300, 176, 261, 275, 140],
            [468, 340, 297, 232, 225, 65],
        ];
        // rows are printed in some labelling; compare canonical forms
        let canon = |v: &[[u64; 6]]| {
            let mut c: Vec<_> = v.iter().map(canonical_tetra).collect();
            c.sort();
            c
        };
        let got: Vec<[u64; 6]> = search_generic_tetrahedra(500, true).unwrap().iter().map(|t| t.edges).collect();
        assert_eq!(canon(&got), canon(&want));

        let all = search_all_tetrahedra(500, true).unwrap();
        want.push([203, 195, 148, 148, 195, 203]);
        let all_edges: Vec<[u64; 6]> = all.iter().map(|t| t.edges).collect();
        assert_eq!(canon(&all_edges), canon(&want));
    }

    #[test]
    fn non_primitive_multiples_appear() {
        let all = search_all_tetrahedra(240, false).unwrap();
        assert!(all.iter().any(|t| t.edges == canonical_tetra(&[234, 168, 160, 102, 106, 104])));
        assert!(all.iter().any(|t| !t.primitive));
    }

    #[test]
    fn bound_checked() {
        assert!(GenericSearch::new(0, true).is_err());
        assert!(GenericSearch::new(MAX_GENERIC_EDGE + 1, true).is_err());
    }
}
