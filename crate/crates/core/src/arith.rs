//! Integer helpers: exact square roots, factorisation and sums of two squares.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

const fn residue_table<const M: usize>() -> [bool; M] {
    let mut table = [false; M];
    let mut x = 0;
    while x < M {
        table[(x * x) % M] = true;
        x += 1;
    }
    table
}

// Quadratic residue tables; 64·63·65·11 rejects about 99% of non-squares.
static QR64: [bool; 64] = residue_table::<64>();
static QR63: [bool; 63] = residue_table::<63>();
static QR65: [bool; 65] = residue_table::<65>();
static QR11: [bool; 11] = residue_table::<11>();

#[inline]
fn maybe_square(n: u128) -> bool {
    QR64[(n % 64) as usize]
        && QR63[(n % 63) as usize]
        && QR65[(n % 65) as usize]
        && QR11[(n % 11) as usize]
}

/// Returns `r` with `r * r == n`, or `None` when `n` is not a perfect square.
#[inline]
pub fn isqrt(n: u128) -> Option<u128> {
    if !maybe_square(n) {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

#[inline]
pub fn isqrt_u64(n: u64) -> Option<u64> {
    isqrt(n as u128).map(|r| r as u64)
}

/// Exact square root of a signed integer; negative inputs have none.
#[inline]
pub fn isqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    isqrt(n as u128).map(|r| r as i128)
}

/// Exact square root of a big integer.
pub fn isqrt_big(n: &BigInt) -> Option<BigInt> {
    match n.sign() {
        Sign::Minus => None,
        Sign::NoSign => Some(BigInt::zero()),
        Sign::Plus => {
            let residue = big_to_u64(&(n % 2_882_880u32)).unwrap_or(0) as u128;
            if !maybe_square(residue) {
                return None;
            }
            let r = n.sqrt();
            (&r * &r == *n).then_some(r)
        }
    }
}

pub fn gcd_all(values: &[u64]) -> u64 {
    values.iter().fold(0u64, |g, &v| g.gcd(&v))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factors in ascending order, with multiplicity.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            out.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// A square root of −1 modulo a prime `p ≡ 1 (mod 4)`.
fn sqrt_minus_one(p: u64) -> u64 {
    (2..p)
        .map(|c| pow_mod(c, (p - 1) / 4, p))
        .find(|&r| (r as u128 * r as u128) % p as u128 == (p - 1) as u128)
        .expect("p ≡ 1 (mod 4) has a square root of -1")
}

/// Writes a prime `p ≡ 1 (mod 4)` (or 2) as `a² + b²` with `a ≥ b > 0`,
/// by Cornacchia's descent on `(p, √−1 mod p)`.
pub fn two_squares(p: u64) -> Option<(u64, u64)> {
    if p == 2 {
        return Some((1, 1));
    }
    if p % 4 != 1 || !is_prime(p) {
        return None;
    }
    let mut r0 = p;
    let mut r1 = sqrt_minus_one(p);
    if r1 > p / 2 {
        r1 = p - r1;
    }
    while r1 * r1 > p {
        let r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    let a = r1;
    let b = isqrt_u64(p - a * a)?;
    debug_assert_eq!(a * a + b * b, p);
    Some((a.max(b), a.min(b)))
}

/// Absolute value of a big integer as `u64`, if it fits.
pub fn big_to_u64(n: &BigInt) -> Option<u64> {
    if n.is_negative() {
        return None;
    }
    let mut digits = n.magnitude().iter_u64_digits();
    let low = digits.next().unwrap_or(0);
    digits.next().is_none().then_some(low)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(0), Some(0));
        assert_eq!(isqrt(485_809), Some(697));
        assert_eq!(isqrt(2), None);
        assert_eq!(isqrt(u64::MAX as u128 * u64::MAX as u128), Some(u64::MAX as u128));
    }

    #[test]
    fn prefilter_is_invisible() {
        for n in 0u128..200_000 {
            let brute = (0..=n).take_while(|r| r * r <= n).last().filter(|r| r * r == n);
            if n < 2_000 {
                assert_eq!(isqrt(n), brute, "n = {n}");
            }
            let r = n.isqrt();
            assert_eq!(isqrt(n).is_some(), r * r == n, "n = {n}");
        }
    }

    #[test]
    fn big_sqrt_matches_native() {
        for n in (0u64..50_000).chain([1 << 40, (1 << 40) + 1, 999_999_000_000_001]) {
            let want = isqrt_u64(n).map(BigInt::from);
            assert_eq!(isqrt_big(&BigInt::from(n)), want, "n = {n}");
        }
        let big = BigInt::from(10u8).pow(40) + 7u8;
        assert_eq!(isqrt_big(&(&big * &big)), Some(big.clone()));
        assert_eq!(isqrt_big(&(&big * &big + 1u8)), None);
        assert_eq!(isqrt_big(&BigInt::from(-4)), None);
    }

    #[test]
    fn two_squares_small_primes() {
        assert_eq!(two_squares(5), Some((2, 1)));
        assert_eq!(two_squares(13), Some((3, 2)));
        assert_eq!(two_squares(3), None);
        for p in (5..2000).filter(|&p| is_prime(p) && p % 4 == 1) {
            let (a, b) = two_squares(p).unwrap();
            assert_eq!(a * a + b * b, p);
            assert!(a >= b && b > 0);
        }
    }

    #[test]
    fn factorisation() {
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(360), vec![2, 2, 2, 3, 3, 5]);
        assert_eq!(prime_factors(97), vec![97]);
    }
}
