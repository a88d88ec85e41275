//! Rational triangular embeddings and their reduction to lattice points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gaussian::gaussian_reduce_2d;
use super::ortho::{scaled_orthogonal_matrices, ScaledOrthoMatrix};
use super::{rational_sqrt, LatticePointSet, PointSet, RationalPointSet};
use crate::arith::{big_to_u64, is_prime, prime_factors};
use crate::error::{Error, Result};
use crate::simplex::{simplex_exists, SquaredDistanceMatrix};

/// Triangular coordinates: `A₀` at the origin and `Aᵢ` supported on the
/// first `i` axes, with positive last coordinate. This is the Cholesky
/// factor of the Gram matrix `Gᵢⱼ = (d₀ᵢ + d₀ⱼ − dᵢⱼ)/2`, and the diagonal
/// entries are the successive heights, `Lᵢᵢ = i·Vᵢ/Vᵢ₋₁`.
pub fn rational_embedding(m: &SquaredDistanceMatrix) -> Result<RationalPointSet> {
    if !simplex_exists(m) {
        return Err(Error::NonexistentSimplex);
    }
    let n = m.dimension();
    let d = |i: usize, j: usize| BigRational::from_integer(m.get(i, j).clone());
    let two = BigRational::from_integer(2.into());
    let gram = |i: usize, j: usize| (d(0, i) + d(0, j) - d(i, j)) / &two;

    let mut l = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: BigRational = (0..j).map(|k| &l[i][k] * &l[j][k]).sum();
            let g = gram(i + 1, j + 1) - s;
            if i == j {
                l[i][i] = rational_sqrt(&g).ok_or(Error::IrrationalHeight)?;
            } else {
                l[i][j] = g / &l[j][j];
            }
        }
    }
    let mut points = vec![vec![BigRational::zero(); n]];
    points.extend(l);
    let out = RationalPointSet { dimension: n, points };
    debug_assert!(super::verify_embedding(&out, m));
    Ok(out)
}

fn apply(a: &ScaledOrthoMatrix, v: &[BigInt]) -> Vec<BigInt> {
    (0..3).map(|i| (0..3).map(|k| &v[k] * a.m[i][k]).sum()).collect()
}

/// Applies `z ↦ A·z/p` after checking that `p² | A·z` for every point.
pub fn reduce_3d_with(points: &LatticePointSet, a: &ScaledOrthoMatrix) -> Result<LatticePointSet> {
    if points.dimension != 3 {
        return Err(Error::UnsupportedDimension(points.dimension));
    }
    let p = BigInt::from(a.p);
    let p2 = &p * &p;
    let mut out = Vec::with_capacity(points.len());
    for (i, v) in points.points.iter().enumerate() {
        let w = apply(a, v);
        if w.iter().any(|c| !(c % &p2).is_zero()) {
            return Err(points.counterexample(a.p, None, Some(i), format!("p² ∤ A·y for A = {:?}", a.m)));
        }
        out.push(w.into_iter().map(|c| c / &p).collect());
    }
    let out = LatticePointSet::new(3, out)?;
    assert!(out.is_isometric_to(points));
    Ok(out)
}

/// Spatial analogue of [`super::gaussian_reduce_2d`]: an isometric copy with
/// all coordinates divisible by `p`, via a matrix `A` with `A·Aᵀ = p²I` and
/// `p² | A·x` for the first point `x` not divisible by `p`.
pub fn reduce_3d(points: &LatticePointSet, p: u64) -> Result<LatticePointSet> {
    if points.dimension != 3 {
        return Err(Error::UnsupportedDimension(points.dimension));
    }
    if !is_prime(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    points.check_origin()?;
    points.check_distances_divisible(p)?;
    let pb = BigInt::from(p);
    if points.all_divisible_by(&pb) {
        return Ok(points.clone());
    }
    assert!(p != 2, "x² + y² + z² ≡ 0 (mod 4) forces even coordinates");
    let pivot = points.points.iter().position(|v| v.iter().any(|c| !(c % &pb).is_zero())).unwrap();
    let p2 = (p * p) as i64;
    let x: [i64; 3] = std::array::from_fn(|k| {
        let r: BigInt = ((&points.points[pivot][k] % p2) + p2) % p2;
        big_to_u64(&r).unwrap() as i64
    });
    let candidates: Vec<ScaledOrthoMatrix> =
        scaled_orthogonal_matrices(p)?.into_iter().filter(|a| a.apply_mod(&x, p2) == [0; 3]).collect();
    if candidates.is_empty() {
        return Err(points.counterexample(p, Some(pivot), None, "no A with A·Aᵀ = p²I has p² | A·x"));
    }
    let mut last_err = None;
    for a in &candidates {
        match reduce_3d_with(points, a) {
            Ok(out) => return Ok(out),
            Err(e) => last_err = Some(e),
        }
    }
    let failing = match last_err {
        Some(Error::Counterexample(c)) => c.failing,
        _ => None,
    };
    Err(points.counterexample(p, Some(pivot), failing, "every A with p² | A·x fails on another point"))
}

/// Integer coordinates realising the squared distances of a Heron simplex of
/// dimension at most 3.
///
/// The rational embedding is scaled by the common denominator `k`, after
/// which all distances are divisible by `k`. The prime factors of `k` are
/// then removed one at a time, smallest first, by rotating onto a set
/// divisible by that prime and dividing it out.
pub fn integer_embedding(m: &SquaredDistanceMatrix) -> Result<LatticePointSet> {
    let n = m.dimension();
    if n > 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    let rational = rational_embedding(m)?;
    let mut k = rational.common_denominator();
    let mut points = rational.scaled_to_lattice(&k);
    let primes = prime_factors(big_to_u64(&k).ok_or_else(|| Error::Precondition(format!("denominator {k} too large")))?);
    for p in primes {
        let reduced = match n {
            1 => points.clone(),
            2 => gaussian_reduce_2d(&points, p)?,
            _ => reduce_3d(&points, p)?,
        };
        let pb = BigInt::from(p);
        points = reduced.divided_by(&pb);
        let next = &k / &pb;
        assert!(next < k, "the denominator must shrink at every step");
        k = next;
    }
    assert!(k.is_one());
    if !super::verify_embedding(&points, m) {
        return Err(points.counterexample(0, None, None, "reduced coordinates do not reproduce the distances"));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{heron_measure_report, TriangleSides};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_examples() {
        let m = SquaredDistanceMatrix::from_edges(2, &[30, 29, 5]).unwrap();
        let e = rational_embedding(&m).unwrap();
        assert_eq!(e.points[1], vec![q(30, 1), q(0, 1)]);
        assert_eq!(e.points[2], vec![q(143, 5), q(24, 5)]);
        // c_a = (−a² + b² + c²)/(2c), h = 2A/c
        assert_eq!(q(-25 + 841 + 900, 60), q(143, 5));
        assert_eq!(q(2 * 72, 30), q(24, 5));

        let m = SquaredDistanceMatrix::from_edges(2, &[4, 3, 5]).unwrap();
        assert_eq!(rational_embedding(&m).unwrap().points[2], vec![q(0, 1), q(3, 1)]);

        let flat = SquaredDistanceMatrix::triangle(&TriangleSides::new(1, 2, 3).unwrap());
        assert_eq!(rational_embedding(&flat), Err(Error::NonexistentSimplex));
        let unit = SquaredDistanceMatrix::from_edges(2, &[1, 1, 1]).unwrap();
        assert_eq!(rational_embedding(&unit), Err(Error::IrrationalHeight));
    }

    #[test]
    fn last_coordinate_is_the_height() {
        let m = SquaredDistanceMatrix::tetrahedron([117, 84, 80, 51, 53, 52]).unwrap();
        let e = rational_embedding(&m).unwrap();
        let report = heron_measure_report(&m).unwrap();
        let base = report.measures.iter().find(|s| s.vertices == vec![0, 1, 2]).unwrap().measure.clone().unwrap();
        assert_eq!(e.points[3][2], BigRational::new(BigInt::from(3 * 18144), base));
    }

    #[test]
    fn reduce_3d_examples() {
        let pts = LatticePointSet::from_i64(3, &[&[0, 0, 0], &[3, 4, 0]]).unwrap();
        let a = ScaledOrthoMatrix::new(5, [[3, 4, 0], [4, -3, 0], [0, 0, 5]]).unwrap();
        assert_eq!(reduce_3d_with(&pts, &a).unwrap(), LatticePointSet::from_i64(3, &[&[0, 0, 0], &[5, 0, 0]]).unwrap());
        let auto = reduce_3d(&pts, 5).unwrap();
        assert!(auto.all_divisible_by(&5.into()) && auto.is_isometric_to(&pts));

        let even = LatticePointSet::from_i64(3, &[&[0, 0, 0], &[5, 10, 0]]).unwrap();
        assert_eq!(reduce_3d(&even, 5).unwrap(), even);

        let row = LatticePointSet::from_i64(3, &[&[0, 0, 0], &[108, 36, 27], &[84, 0, 0], &[64, 48, 0]]).unwrap();
        let scaled = row.scaled_by(&3.into());
        let back = reduce_3d(&scaled, 3).unwrap().divided_by(&3.into());
        assert!(back.is_isometric_to(&row));
    }

    #[test]
    fn integer_examples() {
        let m = SquaredDistanceMatrix::from_edges(2, &[30, 29, 5]).unwrap();
        let e = integer_embedding(&m).unwrap();
        assert_eq!(e, LatticePointSet::from_i64(2, &[&[0, 0], &[18, -24], &[21, -20]]).unwrap());

        let m = SquaredDistanceMatrix::tetrahedron([117, 84, 80, 51, 53, 52]).unwrap();
        assert!(super::super::verify_embedding(&integer_embedding(&m).unwrap(), &m));

        let pyth = SquaredDistanceMatrix::from_edges(2, &[4, 3, 5]).unwrap();
        assert_eq!(integer_embedding(&pyth).unwrap(), LatticePointSet::from_i64(2, &[&[0, 0], &[4, 0], &[0, 3]]).unwrap());

        let segment = SquaredDistanceMatrix::from_edges(1, &[7]).unwrap();
        assert_eq!(integer_embedding(&segment).unwrap().points[1], vec![BigInt::from(7)]);
        assert!(integer_embedding(&SquaredDistanceMatrix::from_edges(4, &[1; 10]).unwrap()).is_err());
    }
}
