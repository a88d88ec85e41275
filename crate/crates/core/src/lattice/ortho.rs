//! Integer 3×3 matrices with `A·Aᵀ = p²·I`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

pub type Mat3 = [[i64; 3]; 3];

fn mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

fn det(a: &Mat3) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// An integer matrix `A` with `A·Aᵀ = p²·I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScaledOrthoMatrix {
    pub p: u64,
    pub m: Mat3,
}

impl ScaledOrthoMatrix {
    pub fn new(p: u64, m: Mat3) -> Result<Self> {
        let t: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| m[j][i]));
        let p2 = (p * p) as i64;
        let prod = mul(&m, &t);
        let ok = (0..3).all(|i| (0..3).all(|j| prod[i][j] == if i == j { p2 } else { 0 }));
        if !ok {
            return Err(Error::MalformedMatrix(format!("{m:?} is not p²-orthogonal for p = {p}")));
        }
        Ok(Self { p, m })
    }

    pub fn det(&self) -> i64 {
        det(&self.m)
    }

    /// `A·x` with coordinates reduced modulo `modulus`.
    pub fn apply_mod(&self, x: &[i64; 3], modulus: i64) -> [i64; 3] {
        std::array::from_fn(|i| (0..3).map(|k| self.m[i][k] * x[k]).sum::<i64>().rem_euclid(modulus))
    }

    pub fn left_mul(&self, s: &Mat3) -> Self {
        Self { p: self.p, m: mul(s, &self.m) }
    }
}

/// The 48 signed permutation matrices, i.e. the integer orthogonal group.
pub fn signed_permutations() -> Vec<Mat3> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for perm in perms {
        for signs in 0..8 {
            let mut m = [[0i64; 3]; 3];
            for (row, &col) in perm.iter().enumerate() {
                m[row][col] = if signs >> row & 1 == 1 { -1 } else { 1 };
            }
            out.push(m);
        }
    }
    out
}

/// Rotation matrix of the quaternion `a + bi + cj + dk`, scaled by its norm.
pub fn rotation_from_quaternion(q: [i64; 4]) -> Mat3 {
    let [a, b, c, d] = q;
    [
        [a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)],
        [2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)],
        [2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d],
    ]
}

fn quaternions_of_norm(p: u64) -> Vec<[i64; 4]> {
    let r = (p as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    if (a * a + b * b + c * c + d * d) as u64 == p {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        Err(Error::UnsupportedPrime(p))
    } else {
        Ok(())
    }
}

/// Rotations from the integer quaternions of norm `p`, one representative
/// (the smallest) per class `S₁·A·S₂` for signed permutations `S₁, S₂`.
pub fn quaternion_rotations(p: u64) -> Result<Vec<ScaledOrthoMatrix>> {
    odd_prime(p)?;
    let group = signed_permutations();
    let reps: BTreeSet<Mat3> = quaternions_of_norm(p)
        .into_iter()
        .map(|q| {
            let r = rotation_from_quaternion(q);
            group.iter().flat_map(|s1| group.iter().map(move |s2| mul(&mul(s1, &r), s2))).min().unwrap()
        })
        .collect();
    reps.into_iter().map(|m| ScaledOrthoMatrix::new(p, m)).collect()
}

/// Every integer matrix with `A·Aᵀ = p²·I`: the signed-permutation orbits of
/// the quaternion rotations, plus `p` times each signed permutation. Sorted.
pub fn scaled_orthogonal_matrices(p: u64) -> Result<Vec<ScaledOrthoMatrix>> {
    odd_prime(p)?;
    let group = signed_permutations();
    let mut all = BTreeSet::new();
    for q in quaternions_of_norm(p) {
        let r = rotation_from_quaternion(q);
        for s1 in &group {
            let left = mul(s1, &r);
            for s2 in &group {
                all.insert(mul(&left, s2));
            }
        }
    }
    let pi = p as i64;
    for s in &group {
        all.insert(s.map(|row| row.map(|v| v * pi)));
    }
    all.into_iter().map(|m| ScaledOrthoMatrix::new(p, m)).collect()
}
