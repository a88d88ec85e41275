//! Planar reduction by Gaussian integers.

use num_bigint::BigInt;
use num_traits::Zero;

use super::LatticePointSet;
use crate::arith::{is_prime, two_squares};
use crate::error::{Error, Result};

/// `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianInteger {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInteger {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self { re: re.into(), im: im.into() }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let t = self.mul(&d.conj());
        ((&t.re % &n).is_zero() && (&t.im % &n).is_zero()).then(|| Self { re: t.re / &n, im: t.im / n })
    }

    pub fn divides(&self, z: &Self) -> bool {
        z.div_exact(self).is_some()
    }
}

/// Rotates a planar point set, given with its first point at the origin and
/// all distances divisible by the prime `p`, onto one whose coordinates are
/// all divisible by `p`.
///
/// For `p = 2` and `p ≡ 3 (mod 4)` this is automatic. Otherwise, with
/// `p = ππ̄`, every point is divisible by one of `π²`, `p` or `π̄²`. A common
/// choice always exists, and multiplying by the unit-modulus factor `π̄²/p` or
/// `π²/p` moves the `π²` or `π̄²` factor onto a factor of `p`.
pub fn gaussian_reduce_2d(points: &LatticePointSet, p: u64) -> Result<LatticePointSet> {
    if points.dimension != 2 {
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
    if p == 2 || p % 4 == 3 {
        unreachable!("x² + y² ≡ 0 (mod p²) forces p | x, y for p = 2 or p ≡ 3 (mod 4)");
    }
    let (a, b) = two_squares(p).expect("p ≡ 1 (mod 4)");
    let pi = GaussianInteger::new(a, b);
    let pi2 = pi.mul(&pi);
    let pibar2 = pi2.conj();
    let zs: Vec<GaussianInteger> = points.points.iter().map(|v| GaussianInteger::new(v[0].clone(), v[1].clone())).collect();
    let factor = if zs.iter().all(|z| pi2.divides(z)) {
        pibar2
    } else if zs.iter().all(|z| pibar2.divides(z)) {
        pi2
    } else {
        let failing = zs.iter().position(|z| !pi2.divides(z));
        return Err(points.counterexample(p, None, failing, "no divisor among π², p, π̄² is common to all points"));
    };
    let rotated: Vec<Vec<BigInt>> = zs
        .iter()
        .map(|z| {
            let w = z.mul(&factor);
            vec![w.re / &pb, w.im / &pb]
        })
        .collect();
    let out = LatticePointSet::new(2, rotated)?;
    assert!(out.all_divisible_by(&pb) && out.is_isometric_to(points));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pts: &[&[i64]]) -> LatticePointSet {
        LatticePointSet::from_i64(2, pts).unwrap()
    }

    #[test]
    fn worked_example() {
        let input = set(&[&[0, 0], &[150, 0], &[143, 24]]);
        let out = gaussian_reduce_2d(&input, 5).unwrap();
        assert_eq!(out, set(&[&[0, 0], &[90, -120], &[105, -100]]));
        // oracle: (143+24i)(3−4i)/5
        let z = GaussianInteger::new(143, 24).mul(&GaussianInteger::new(3, -4));
        assert_eq!((z.re / 5, z.im / 5), (BigInt::from(105), BigInt::from(-100)));
    }

    #[test]
    fn trivial_cases() {
        let input = set(&[&[0, 0], &[10, 0], &[5, 15]]);
        assert_eq!(gaussian_reduce_2d(&input, 5).unwrap(), input);
        let input = set(&[&[0, 0], &[9, 0], &[0, 3]]);
        assert_eq!(gaussian_reduce_2d(&input, 3).unwrap(), input);
        let input = set(&[&[0, 0], &[4, 6]]);
        assert_eq!(gaussian_reduce_2d(&input, 2).unwrap(), input);
    }

    #[test]
    fn conjugate_branch() {
        // mirror image of the worked example needs π² rather than π̄²
        let input = set(&[&[0, 0], &[150, 0], &[143, -24]]);
        let out = gaussian_reduce_2d(&input, 5).unwrap();
        assert!(out.all_divisible_by(&BigInt::from(5)) && out.is_isometric_to(&input));
    }

    #[test]
    fn preconditions() {
        assert!(gaussian_reduce_2d(&set(&[&[0, 0], &[3, 4]]), 7).is_err());
        assert!(gaussian_reduce_2d(&set(&[&[1, 0], &[6, 0]]), 5).is_err());
        assert!(gaussian_reduce_2d(&set(&[&[0, 0], &[5, 0]]), 4).is_err());
    }

    #[test]
    fn division() {
        let pi = GaussianInteger::new(2, 1);
        assert!(pi.divides(&GaussianInteger::new(5, 0)));
        assert!(!pi.divides(&GaussianInteger::new(1, 0)));
        assert_eq!(GaussianInteger::new(3, 4).div_exact(&pi), Some(GaussianInteger::new(2, 1)));
    }
}
