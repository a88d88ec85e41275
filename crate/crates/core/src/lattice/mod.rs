//! Embeddings of integer-distance point sets: exact rational coordinates,
//! reduction to lattice coordinates, and the checks behind the reduction.

mod assertion;
mod embed;
mod gaussian;
mod ortho;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Counterexample, Error, Result};
use crate::simplex::SquaredDistanceMatrix;

pub use assertion::{dim4_counterexample, verify_assertion, verify_assertion_unnormalised, AssertionReport, AssertionWitness, Dim4Report};
pub use embed::{integer_embedding, rational_embedding, reduce_3d, reduce_3d_with};
pub use gaussian::{gaussian_reduce_2d, GaussianInteger};
pub use ortho::{quaternion_rotations, rotation_from_quaternion, scaled_orthogonal_matrices, signed_permutations, ScaledOrthoMatrix};

/// Anything with exact pairwise squared distances.
pub trait PointSet {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn squared_distance(&self, i: usize, j: usize) -> BigRational;
}

/// Points with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPointSet {
    pub dimension: usize,
    pub points: Vec<Vec<BigRational>>,
}

impl RationalPointSet {
    /// Least common multiple of all coordinate denominators.
    pub fn common_denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.points.iter().flatten().fold(BigInt::from(1), |k, c| k.lcm(c.denom()))
    }

    /// The points multiplied by `k`, which must clear every denominator.
    pub fn scaled_to_lattice(&self, k: &BigInt) -> LatticePointSet {
        let points = self
            .points
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| {
                        let v = c * BigRational::from_integer(k.clone());
                        assert!(v.is_integer(), "scale does not clear denominators");
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        LatticePointSet { dimension: self.dimension, points }
    }
}

impl PointSet for RationalPointSet {
    fn len(&self) -> usize {
        self.points.len()
    }

    fn squared_distance(&self, i: usize, j: usize) -> BigRational {
        self.points[i].iter().zip(&self.points[j]).map(|(a, b)| (a - b) * (a - b)).sum()
    }
}

/// Points with integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePointSet {
    pub dimension: usize,
    pub points: Vec<Vec<BigInt>>,
}

impl LatticePointSet {
    pub fn new(dimension: usize, points: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dimension) {
            return Err(Error::MalformedMatrix(format!("point with {} coordinates in dimension {dimension}", p.len())));
        }
        Ok(Self { dimension, points })
    }

    pub fn from_i64(dimension: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(dimension, points.iter().map(|p| p.iter().map(|&c| BigInt::from(c)).collect()).collect())
    }

    pub fn squared_distance_int(&self, i: usize, j: usize) -> BigInt {
        self.points[i].iter().zip(&self.points[j]).map(|(a, b)| (a - b) * (a - b)).sum()
    }

    /// Translates so that the first point is the origin.
    pub fn translated_to_origin(&self) -> Self {
        let Some(origin) = self.points.first().cloned() else { return self.clone() };
        let points = self.points.iter().map(|p| p.iter().zip(&origin).map(|(a, o)| a - o).collect()).collect();
        Self { dimension: self.dimension, points }
    }

    pub fn all_divisible_by(&self, p: &BigInt) -> bool {
        self.points.iter().flatten().all(|c| (c % p).is_zero())
    }

    /// Divides every coordinate by `p`, which must divide all of them.
    pub fn divided_by(&self, p: &BigInt) -> Self {
        assert!(self.all_divisible_by(p));
        let points = self.points.iter().map(|v| v.iter().map(|c| c / p).collect()).collect();
        Self { dimension: self.dimension, points }
    }

    pub fn scaled_by(&self, t: &BigInt) -> Self {
        let points = self.points.iter().map(|v| v.iter().map(|c| c * t).collect()).collect();
        Self { dimension: self.dimension, points }
    }

    /// Same pairwise squared distances as `other`.
    pub fn is_isometric_to(&self, other: &Self) -> bool {
        self.len() == other.len()
            && (0..self.len()).all(|i| (i + 1..self.len()).all(|j| self.squared_distance_int(i, j) == other.squared_distance_int(i, j)))
    }

    pub(crate) fn counterexample(&self, prime: u64, pivot: Option<usize>, failing: Option<usize>, reason: impl Into<String>) -> Error {
        Error::Counterexample(Box::new(Counterexample {
            dimension: self.dimension,
            prime,
            points: self.points.iter().map(|p| p.iter().map(|c| c.to_string()).collect()).collect(),
            pivot,
            failing,
            reason: reason.into(),
        }))
    }

    pub(crate) fn check_origin(&self) -> Result<()> {
        match self.points.first() {
            Some(o) if o.iter().any(|c| !c.is_zero()) => Err(Error::Precondition("the first point must be the origin".into())),
            _ => Ok(()),
        }
    }

    /// Checks that all squared distances are divisible by `p²`.
    pub(crate) fn check_distances_divisible(&self, p: u64) -> Result<()> {
        let p2 = BigInt::from(p) * p;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if !(self.squared_distance_int(i, j) % &p2).is_zero() {
                    return Err(Error::Precondition(format!("distance between points {i} and {j} is not divisible by {p}")));
                }
            }
        }
        Ok(())
    }
}

impl PointSet for LatticePointSet {
    fn len(&self) -> usize {
        self.points.len()
    }

    fn squared_distance(&self, i: usize, j: usize) -> BigRational {
        BigRational::from_integer(self.squared_distance_int(i, j))
    }
}

/// True iff the points realise exactly the squared distances of `m`.
pub fn verify_embedding<P: PointSet>(points: &P, m: &SquaredDistanceMatrix) -> bool {
    let v = m.vertex_count();
    points.len() == v
        && (0..v).all(|i| (i + 1..v).all(|j| points.squared_distance(i, j) == BigRational::from_integer(m.get(i, j).clone())))
}

/// Exact rational square root, if one exists.
pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = crate::arith::isqrt_big(q.numer())?;
    let d = crate::arith::isqrt_big(q.denom())?;
    Some(BigRational::new(n, d))
}
