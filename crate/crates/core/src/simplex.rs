//! Exact simplex kernel: Heron's formula, the Cayley–Menger determinant and
//! Heron-simplex testing.
//!
//! Everything here is exact. Squared measures are carried in their integral
//! form (`16·A²` for triangles, `288·V²` for tetrahedra, `(−1)^{n+1}·det` in
//! general) so that rationals only appear at the public boundary of
//! [`simplex_volume_sq`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{isqrt, isqrt_big};
use crate::error::{Error, Result};

/// Largest edge length accepted by [`TriangleSides`].
pub const MAX_TRIANGLE_EDGE: u64 = 1 << 32;

/// Side lengths of a triangle, stored in canonical order `a ≥ b ≥ c ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleSides {
    a: u64,
    b: u64,
    c: u64,
}

impl TriangleSides {
    pub fn new(x: u64, y: u64, z: u64) -> Result<Self> {
        for s in [x, y, z] {
            if s == 0 || s > MAX_TRIANGLE_EDGE {
                return Err(Error::EdgeOutOfRange(s));
            }
        }
        let mut s = [x, y, z];
        s.sort_unstable_by(|l, r| r.cmp(l));
        Ok(Self { a: s[0], b: s[1], c: s[2] })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    /// Sides as `[a, b, c]`, largest first.
    pub fn sides(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn perimeter(&self) -> u64 {
        self.a + self.b + self.c
    }

    /// `16·A² = (a+b+c)(−a+b+c)(a−b+c)(a+b−c)`, positive iff the triangle
    /// inequality holds strictly.
    pub fn heron16(&self) -> BigInt {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let factors = [a + b + c, -a + b + c, a - b + c, a + b - c];
        factors
            .iter()
            .try_fold(1i128, |acc, &f| acc.checked_mul(f))
            .map(BigInt::from)
            .unwrap_or_else(|| factors.iter().map(|&f| BigInt::from(f)).product())
    }
}

/// Integer area of a triangle, or `None` if the area is not an integer.
///
/// Fails with [`Error::NotATriangle`] when the triangle inequality does not
/// hold strictly.
pub fn heron_area(t: &TriangleSides) -> Result<Option<u64>> {
    let p = t.heron16();
    if !p.is_positive() {
        return Err(Error::NotATriangle);
    }
    // 16·A² = (4A)²
    Ok(isqrt_big(&p)
        .filter(|r| r.is_multiple_of(&BigInt::from(4)))
        .and_then(|r| (r / BigInt::from(4)).to_u64()))
}

/// `16·A²` for a triangle given by its squared sides.
#[inline]
pub fn heron16_squared(p: i128, q: i128, r: i128) -> i128 {
    2 * (p * q + q * r + r * p) - (p * p + q * q + r * r)
}

/// Integer area of a triangle given by its side lengths, `None` if the
/// triangle is degenerate, impossible, or not Heron. Hot-path variant of
/// [`heron_area`] for sides below 2³⁰.
#[inline]
pub fn heron_area_small(a: u64, b: u64, c: u64) -> Option<u64> {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let p = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
    if p <= 0 || p % 16 != 0 {
        return None;
    }
    isqrt((p / 16) as u128).map(|r| r as u64)
}

/// Cayley–Menger determinant of a tetrahedron, `288·V²`, from the squared
/// edges in the order `01, 02, 03, 12, 13, 23`.
#[inline]
pub fn tetra_cm_det(d: &[i128; 6]) -> i128 {
    let [d01, d02, d03, d12, d13, d23] = *d;
    let s = d01 + d02 + d03 + d12 + d13 + d23;
    let opposite = d01 * d23 * (s - 2 * (d01 + d23))
        + d02 * d13 * (s - 2 * (d02 + d13))
        + d03 * d12 * (s - 2 * (d03 + d12));
    let faces = d01 * d02 * d12 + d01 * d03 * d13 + d02 * d03 * d23 + d12 * d13 * d23;
    2 * (opposite - faces)
}

/// Index of the edge `{i, j}` of a tetrahedron in the order `01,02,03,12,13,23`.
#[inline]
pub const fn tetra_edge_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    match (i, j) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        _ => 5,
    }
}

/// The four faces of a tetrahedron, each as three edge indices.
pub const TETRA_FACES: [[usize; 3]; 4] = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];

/// All 24 vertex permutations, expressed as permutations of the six edges.
pub fn tetra_edge_permutations() -> [[usize; 6]; 24] {
    let mut out = [[0usize; 6]; 24];
    let mut k = 0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let sigma = [a, b, c, d];
                    if a == b || a == c || a == d || b == c || b == d || c == d {
                        continue;
                    }
                    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
                    for (slot, &(i, j)) in pairs.iter().enumerate() {
                        out[k][slot] = tetra_edge_index(sigma[i], sigma[j]);
                    }
                    k += 1;
                }
            }
        }
    }
    out
}

fn relabelled<T: Copy>(edges: &[T; 6], perm: &[usize; 6]) -> [T; 6] {
    std::array::from_fn(|slot| edges[perm[slot]])
}

/// Canonical labelling of a tetrahedron: the lexicographically smallest edge
/// tuple over all 24 vertex relabellings.
pub fn canonical_tetra<T: Copy + Ord>(edges: &[T; 6]) -> [T; 6] {
    tetra_edge_permutations()
        .iter()
        .map(|p| relabelled(edges, p))
        .min()
        .expect("24 permutations")
}

/// Display labelling: the lexicographically largest edge tuple, which puts
/// the longest edge first.
pub fn display_tetra<T: Copy + Ord>(edges: &[T; 6]) -> [T; 6] {
    tetra_edge_permutations()
        .iter()
        .map(|p| relabelled(edges, p))
        .max()
        .expect("24 permutations")
}

/// Symmetric matrix of squared pairwise distances between the `n + 1`
/// vertices of an `n`-simplex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquaredDistanceMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl SquaredDistanceMatrix {
    /// Builds the matrix from the upper triangle `(0,1), (0,2), …, (0,n),
    /// (1,2), …` of squared distances.
    pub fn from_squared_upper(n: usize, upper: &[BigInt]) -> Result<Self> {
        let v = n + 1;
        if n == 0 || upper.len() != v * (v - 1) / 2 {
            return Err(Error::MalformedMatrix(format!(
                "expected {} squared distances for dimension {n}, got {}",
                v * (v.max(1) - 1) / 2,
                upper.len()
            )));
        }
        let mut entries = vec![BigInt::zero(); v * v];
        let mut k = 0;
        for i in 0..v {
            for j in i + 1..v {
                if !upper[k].is_positive() {
                    return Err(Error::MalformedMatrix(format!(
                        "squared distance ({i},{j}) must be at least 1"
                    )));
                }
                entries[i * v + j] = upper[k].clone();
                entries[j * v + i] = upper[k].clone();
                k += 1;
            }
        }
        Ok(Self { n, entries })
    }

    /// Builds the matrix from integer edge lengths in upper-triangle order.
    pub fn from_edges(n: usize, edges: &[u64]) -> Result<Self> {
        let sq: Vec<BigInt> = edges.iter().map(|&e| BigInt::from(e) * e).collect();
        Self::from_squared_upper(n, &sq)
    }

    /// Full-matrix constructor; checks symmetry, zero diagonal and positive
    /// off-diagonal entries.
    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let v = rows.len();
        if v < 2 || rows.iter().any(|r| r.len() != v) {
            return Err(Error::MalformedMatrix("matrix must be square with at least two rows".into()));
        }
        for i in 0..v {
            if !rows[i][i].is_zero() {
                return Err(Error::MalformedMatrix(format!("diagonal entry {i} is not zero")));
            }
            for j in 0..v {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::MalformedMatrix(format!("entry ({i},{j}) breaks symmetry")));
                }
            }
        }
        let upper: Vec<BigInt> = (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).map(|(i, j)| rows[i][j].clone()).collect();
        Self::from_squared_upper(v - 1, &upper)
    }

    /// Triangle with vertices `0, 1, 2` opposite to the sides `a, b, c`.
    pub fn triangle(t: &TriangleSides) -> Self {
        Self::from_edges(2, &[t.c(), t.b(), t.a()]).expect("valid sides")
    }

    /// Tetrahedron from edges in the order `01, 02, 03, 12, 13, 23`.
    pub fn tetrahedron(edges: [u64; 6]) -> Result<Self> {
        Self::from_edges(3, &edges)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.n + 1
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * (self.n + 1) + j]
    }

    /// Upper-triangle squared distances, `(0,1), (0,2), …`.
    pub fn upper(&self) -> Vec<BigInt> {
        let v = self.n + 1;
        (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).map(|(i, j)| self.get(i, j).clone()).collect()
    }

    /// Edge lengths in upper-triangle order, if every squared distance is a
    /// perfect square.
    pub fn edge_lengths(&self) -> Option<Vec<BigInt>> {
        self.upper().iter().map(isqrt_big).collect()
    }

    /// The sub-simplex spanned by the given vertices (in the given order).
    pub fn sub_simplex(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::MalformedMatrix("a sub-simplex needs at least two vertices".into()));
        }
        let mut upper = Vec::new();
        for (a, &i) in vertices.iter().enumerate() {
            for &j in &vertices[a + 1..] {
                upper.push(self.get(i, j).clone());
            }
        }
        Self::from_squared_upper(vertices.len() - 1, &upper)
    }

    /// Applies a vertex relabelling: vertex `k` of the result is vertex
    /// `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        self.sub_simplex(perm)
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[size - 1][size - 1]
}

/// Determinant of the bordered Cayley–Menger matrix.
pub fn cayley_menger_det(m: &SquaredDistanceMatrix) -> BigInt {
    let v = m.vertex_count();
    let mut rows = vec![vec![BigInt::zero(); v + 1]; v + 1];
    for i in 0..v {
        for j in 0..v {
            rows[i][j] = m.get(i, j).clone();
        }
        rows[i][v] = BigInt::one();
        rows[v][i] = BigInt::one();
    }
    bareiss_det(rows)
}

/// `2ⁿ·(n!)²`, the denominator relating the Cayley–Menger determinant to
/// the squared volume.
pub fn volume_denominator(n: usize) -> BigInt {
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    (BigInt::one() << n) * &fact * &fact
}

/// `(−1)^{n+1}·det`, the integral multiple `2ⁿ(n!)²·V²` of the squared
/// volume.
pub fn scaled_volume_sq(m: &SquaredDistanceMatrix) -> BigInt {
    let det = cayley_menger_det(m);
    if m.dimension() % 2 == 0 {
        -det
    } else {
        det
    }
}

/// Exact squared volume; negative values signal that no such simplex exists.
pub fn simplex_volume_sq(m: &SquaredDistanceMatrix) -> BigRational {
    BigRational::new(scaled_volume_sq(m), volume_denominator(m.dimension()))
}

fn subsets_of_size(v: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1u32 << v))
        .filter(move |mask| mask.count_ones() as usize == size)
        .map(move |mask| (0..v).filter(|&i| mask & (1 << i) != 0).collect())
}

/// True iff every sub-simplex of dimension ≥ 2, including the whole simplex,
/// has strictly positive squared measure. Degenerate simplices do not exist.
pub fn simplex_exists(m: &SquaredDistanceMatrix) -> bool {
    let v = m.vertex_count();
    (3..=v).all(|size| {
        subsets_of_size(v, size).all(|vs| {
            let sub = m.sub_simplex(&vs).expect("valid subset");
            scaled_volume_sq(&sub).is_positive()
        })
    })
}

/// The measure of one sub-simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsimplexMeasure {
    pub vertices: Vec<usize>,
    pub squared: BigRational,
    /// Present iff `squared` is the square of an integer.
    pub measure: Option<BigInt>,
}

impl SubsimplexMeasure {
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Exact measures of every sub-simplex with at least three vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureReport {
    pub dimension: usize,
    pub edges: Vec<Option<BigInt>>,
    pub measures: Vec<SubsimplexMeasure>,
}

impl MeasureReport {
    pub fn of_dimension(&self, d: usize) -> impl Iterator<Item = &SubsimplexMeasure> {
        self.measures.iter().filter(move |m| m.dimension() == d)
    }

    /// Measure of the full simplex.
    pub fn volume(&self) -> Option<&BigInt> {
        self.measures.last().and_then(|m| m.measure.as_ref())
    }

    pub fn is_heron(&self) -> bool {
        self.edges.iter().all(Option::is_some) && self.measures.iter().all(|m| m.measure.is_some())
    }
}

/// Why a simplex failed the Heron test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotHeron {
    Nonexistent,
    NonIntegerEdge { vertices: [usize; 2] },
    NonIntegerMeasure { vertices: Vec<usize> },
}

fn rational_isqrt(q: &BigRational) -> Option<BigInt> {
    if !q.is_integer() {
        return None;
    }
    isqrt_big(q.numer())
}

/// All sub-simplex measures, or `None` if the simplex does not exist.
pub fn measure_report(m: &SquaredDistanceMatrix) -> Option<MeasureReport> {
    if !simplex_exists(m) {
        return None;
    }
    let v = m.vertex_count();
    let edges = m.upper().iter().map(isqrt_big).collect();
    let mut measures = Vec::new();
    for size in 3..=v {
        for vs in subsets_of_size(v, size) {
            let squared = simplex_volume_sq(&m.sub_simplex(&vs).expect("valid subset"));
            let measure = rational_isqrt(&squared);
            measures.push(SubsimplexMeasure { vertices: vs, squared, measure });
        }
    }
    Some(MeasureReport { dimension: m.dimension(), edges, measures })
}

/// Full Heron test: the simplex exists and every edge and sub-simplex
/// measure is an integer.
pub fn heron_measure_report(m: &SquaredDistanceMatrix) -> std::result::Result<MeasureReport, NotHeron> {
    let report = measure_report(m).ok_or(NotHeron::Nonexistent)?;
    let v = m.vertex_count();
    let mut k = 0;
    for i in 0..v {
        for j in i + 1..v {
            if report.edges[k].is_none() {
                return Err(NotHeron::NonIntegerEdge { vertices: [i, j] });
            }
            k += 1;
        }
    }
    if let Some(bad) = report.measures.iter().find(|s| s.measure.is_none()) {
        return Err(NotHeron::NonIntegerMeasure { vertices: bad.vertices.clone() });
    }
    Ok(report)
}
