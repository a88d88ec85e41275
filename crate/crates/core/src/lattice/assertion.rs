//! Exhaustive residue check behind the spatial reduction step, and the
//! four-dimensional obstruction.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ortho::{scaled_orthogonal_matrices, signed_permutations, Mat3, ScaledOrthoMatrix};

/// Why the check failed for a residue class `x (mod p²)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AssertionWitness {
    /// No `A` with `p² | A·x`.
    NoMatrix { x: [i64; 3] },
    /// The matrices with `p² | A·x` are not a single signed-permutation orbit.
    NotUnique { x: [i64; 3], count: usize },
    /// `y` is at distance ≡ 0 from `x` but `p² ∤ A·y`.
    Propagation { x: [i64; 3], y: [i64; 3], a: Mat3 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssertionReport {
    pub p: u64,
    /// Residue classes `x` examined.
    pub classes: usize,
    /// Size of the full set of matrices with `A·Aᵀ = p²I`.
    pub matrices: usize,
    pub holds: bool,
    pub witness: Option<AssertionWitness>,
}

fn dot(x: &[i64; 3], y: &[i64; 3], q: i64) -> i64 {
    (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]).rem_euclid(q)
}

/// All `y (mod q)` with `‖y‖² ≡ 0`.
fn null_vectors(q: i64) -> Vec<[i64; 3]> {
    let mut roots: HashMap<i64, Vec<i64>> = HashMap::new();
    for z in 0..q {
        roots.entry(z * z % q).or_default().push(z);
    }
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            let need = (-(a * a + b * b)).rem_euclid(q);
            if let Some(zs) = roots.get(&need) {
                out.extend(zs.iter().map(|&c| [a, b, c]));
            }
        }
    }
    out
}

fn not_divisible(x: &[i64; 3], p: i64) -> bool {
    x.iter().any(|c| c % p != 0)
}

/// The first coordinate not divisible by `p` is 1. Every class with `p ∤ x`
/// is a unit multiple of exactly one such representative, and all three
/// conditions are invariant under multiplication by units.
fn is_normalised(x: &[i64; 3], p: i64) -> bool {
    x.iter().find(|&&c| c % p != 0) == Some(&1)
}

struct Check<'a> {
    q: i64,
    matrices: &'a [ScaledOrthoMatrix],
    group: Vec<Mat3>,
    null: &'a [[i64; 3]],
}

impl Check<'_> {
    fn matching(&self, x: &[i64; 3]) -> Vec<&ScaledOrthoMatrix> {
        self.matrices.iter().filter(|a| a.apply_mod(x, self.q) == [0; 3]).collect()
    }

    /// Existence and uniqueness for `x`; returns a representative `A`.
    fn unique(&self, x: &[i64; 3]) -> Result<ScaledOrthoMatrix, AssertionWitness> {
        let s = self.matching(x);
        let Some(&a0) = s.first() else {
            return Err(AssertionWitness::NoMatrix { x: *x });
        };
        let orbit: BTreeSet<Mat3> = self.group.iter().map(|g| a0.left_mul(g).m).collect();
        let found: BTreeSet<Mat3> = s.iter().map(|a| a.m).collect();
        if found != orbit {
            return Err(AssertionWitness::NotUnique { x: *x, count: s.len() });
        }
        Ok(*a0)
    }

    fn propagation(&self, x: &[i64; 3], a: &ScaledOrthoMatrix, related: impl Fn(&[i64; 3]) -> bool) -> Result<(), AssertionWitness> {
        match self.null.iter().find(|y| related(y) && a.apply_mod(y, self.q) != [0; 3]) {
            Some(y) => Err(AssertionWitness::Propagation { x: *x, y: *y, a: a.m }),
            None => Ok(()),
        }
    }
}

fn run(p: u64, normalised: bool) -> crate::Result<AssertionReport> {
    let matrices = scaled_orthogonal_matrices(p)?;
    let pi = p as i64;
    let q = pi * pi;
    let null = null_vectors(q);
    let check = Check { q, matrices: &matrices, group: signed_permutations(), null: &null };
    let xs: Vec<&[i64; 3]> = null
        .iter()
        .filter(|x| not_divisible(x, pi) && (!normalised || is_normalised(x, pi)))
        .collect();
    let witness = xs
        .par_iter()
        .map(|x| {
            let a = check.unique(x)?;
            if normalised {
                // ‖x − y‖² ≡ −2·x·y when ‖x‖² ≡ ‖y‖² ≡ 0 and p is odd
                check.propagation(x, &a, |y| dot(x, y, q) == 0)
            } else {
                check.propagation(x, &a, |y| {
                    let d: i64 = (0..3).map(|k| (x[k] - y[k]) * (x[k] - y[k])).sum();
                    d % q == 0
                })
            }
        })
        .find_first(|r| r.is_err())
        .and_then(|r| r.err());
    Ok(AssertionReport { p, classes: xs.len(), matrices: matrices.len(), holds: witness.is_none(), witness })
}

/// Exhaustive check over the residue classes `x (mod p²)` with
/// `p² | ‖x‖²` and `p ∤ x`, for an odd prime `p`:
///
/// * some `A` with `A·Aᵀ = p²I` has `p² | A·x`;
/// * those `A` form a single orbit under signed permutations;
/// * such an `A` also has `p² | A·y` for every `y` with `p² | ‖y‖²` and
///   `p² | ‖x − y‖²`.
///
/// Classes are taken up to multiplication by units.
pub fn verify_assertion(p: u64) -> crate::Result<AssertionReport> {
    run(p, true)
}

/// [`verify_assertion`] without the unit normalisation and with distances
/// computed directly. Much slower; used to cross-check the reduction.
pub fn verify_assertion_unnormalised(p: u64) -> crate::Result<AssertionReport> {
    run(p, false)
}

/// The facts showing that integer distances need not admit integer
/// coordinates in dimension 4.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dim4Report {
    pub points: [[i64; 4]; 4],
    /// Squared distances of the pairs `01, 02, 03, 12, 13, 23`.
    pub squared_distances: [i64; 6],
    /// Number of integer 4-vectors of squared norm 1.
    pub unit_vectors: usize,
    /// Squared distances occurring between distinct unit vectors.
    pub unit_distances: Vec<i64>,
    /// Whether a regular tetrahedron of side 1 has an integer embedding.
    pub side_one_embeds: bool,
}

/// A regular tetrahedron of side 2 sits in `ℤ⁴`, but one of side 1 cannot.
/// With one vertex at the origin the other three would be unit vectors at
/// mutual distance 1, and distinct unit vectors are at distance √2 or 2.
pub fn dim4_counterexample() -> Dim4Report {
    let points = [[0, 0, 0, 0], [1, 1, 1, 1], [2, 0, 0, 0], [1, 1, 1, -1]];
    let sq = |a: &[i64; 4], b: &[i64; 4]| (0..4).map(|k| (a[k] - b[k]) * (a[k] - b[k])).sum::<i64>();
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let squared_distances = pairs.map(|(i, j)| sq(&points[i], &points[j]));

    let mut units = Vec::new();
    for v in 0..81 {
        let c: [i64; 4] = std::array::from_fn(|k| (v / 3i64.pow(k as u32)) % 3 - 1);
        if c.iter().map(|x| x * x).sum::<i64>() == 1 {
            units.push(c);
        }
    }
    let unit_distances: BTreeSet<i64> =
        units.iter().enumerate().flat_map(|(i, a)| units[i + 1..].iter().map(move |b| sq(a, b))).collect();
    let side_one_embeds = units.iter().enumerate().any(|(i, a)| {
        units[i + 1..].iter().enumerate().any(|(j, b)| {
            sq(a, b) == 1 && units[i + j + 2..].iter().any(|c| sq(a, c) == 1 && sq(b, c) == 1)
        })
    });
    Dim4Report {
        points,
        squared_distances,
        unit_vectors: units.len(),
        unit_distances: unit_distances.into_iter().collect(),
        side_one_embeds,
    }
}
