//! Heron triangle and tetrahedron searches.

pub mod diophantine;
pub mod generic;
pub mod special;
pub mod tetra;
pub mod triangles;

use rayon::prelude::*;

pub use diophantine::{isosceles_face_type2_refuter, search_square_chain, search_x4y4_2z2};
pub use generic::{search_all_tetrahedra, search_generic_tetrahedra, GenericSearch, TriangleIndex};
pub use special::{
    box_to_rav, build_isosceles_face, rav_to_box, search_isosceles_face, search_right_angled_face,
    search_right_angled_vertex, search_semi_regular, BoxTriple, IsoscelesFaceTetra, PythagoreanIndex,
    RightAngledFaceLegs,
};
pub use tetra::{classify_edges, semi_regular_property_check, ClassTags, HeronTetrahedron, Provenance, TetraClass};
pub use triangles::{collect_heron_triangles, enumerate_heron_triangles, isosceles_split, HeronTriangle, TriangleFilter};

/// A search split into independent shards. Shard outputs never overlap, so
/// merging is plain concatenation in shard order.
pub trait ShardedSearch: Sync {
    type Item: Send;

    /// Shard identifiers, ascending.
    fn shards(&self) -> Vec<u64>;

    fn run_shard(&self, shard: u64) -> Vec<Self::Item>;
}

/// Runs the given shards in parallel; results come back in input order.
pub fn run_shards<S: ShardedSearch>(search: &S, shards: &[u64]) -> Vec<(u64, Vec<S::Item>)> {
    shards.par_iter().map(|&s| (s, search.run_shard(s))).collect()
}

pub fn run_all<S: ShardedSearch>(search: &S) -> Vec<(u64, Vec<S::Item>)> {
    run_shards(search, &search.shards())
}
