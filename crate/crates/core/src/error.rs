use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::simplex::NotHeron;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge length {0} is outside the supported range")]
    EdgeOutOfRange(u64),

    #[error("the given lengths do not form a triangle")]
    NotATriangle,

    #[error("distance matrix is malformed: {0}")]
    MalformedMatrix(String),

    #[error("simplex does not exist (a sub-simplex has non-positive squared measure)")]
    NonexistentSimplex,

    #[error("simplex has an irrational height; no rational embedding exists")]
    IrrationalHeight,

    #[error("search bound {0} is outside the supported range")]
    BoundOutOfRange(u64),

    #[error("{0} is not a supported prime here")]
    UnsupportedPrime(u64),

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed claim: {0}")]
    MalformedClaim(String),

    #[error("class tags {0} and {1} cannot occur together")]
    InconsistentTags(&'static str, &'static str),

    #[error("not a Heron simplex: {0:?}")]
    NotHeron(NotHeron),

    #[error("divisibility invariant violated: {0}")]
    DivisibilityViolation(String),

    #[error("embedding counterexample: {0}")]
    Counterexample(Box<Counterexample>),
}

/// A point set for which a lattice reduction step failed. Should one ever
/// be produced in dimension 3 it refutes the integer-embedding conjecture for
/// that prime, so it carries everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub dimension: usize,
    pub prime: u64,
    /// Coordinates as decimal strings.
    pub points: Vec<Vec<String>>,
    /// Index of the point the reduction was pivoted on.
    pub pivot: Option<usize>,
    /// Index of a point that the chosen transformation fails to reduce.
    pub failing: Option<usize>,
    pub reason: String,
}

impl std::fmt::Display for Counterexample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "dimension {}, p = {}: {} (points {:?})", self.dimension, self.prime, self.reason, self.points)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
