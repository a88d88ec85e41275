//! Bounded searches for the diophantine problems left open by the class
//! analysis.

use std::collections::{HashMap, HashSet};

use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::isqrt;
use crate::error::{Error, Result};

/// Nontrivial solutions of `x⁴ + y⁴ = 2z²` with `1 ≤ x < y ≤ bound`. The
/// family `x = y`, `z = x²` is excluded.
pub fn search_x4y4_2z2(bound: u64) -> Vec<(u64, u64, u64)> {
    (1..=bound)
        .into_par_iter()
        .flat_map_iter(|y| {
            // x ≡ y (mod 2), otherwise x⁴ + y⁴ is odd
            (1..y).filter(move |x| (y - x) % 2 == 0).filter_map(move |x| {
                let s = (x as u128).pow(4) + (y as u128).pow(4);
                isqrt(s / 2).map(|z| (x, y, z as u64))
            })
        })
        .collect()
}

/// Sequences `(a1, …, an)` in which every window `a_s² + … + a_t²` with
/// `s < t` is a perfect square.
///
/// Pairs come from Euclid's parametrisation with generator `m ≤
/// generator_bound`, so legs are at most `generator_bound²`. Only primitive
/// sequences are returned, oriented so that the sequence is at least its
/// reversal, sorted ascending.
pub fn search_square_chain(n: usize, generator_bound: u64) -> Result<Vec<Vec<u64>>> {
    if n < 2 {
        return Err(Error::Precondition(format!("chains need at least two terms, got {n}")));
    }
    let max_leg = generator_bound * generator_bound;
    let mut adjacency: HashMap<u64, HashSet<u64>> = HashMap::new();
    for m in 2..=generator_bound {
        for k in 1..m {
            if (m - k) % 2 == 0 || m.gcd(&k) != 1 {
                continue;
            }
            let (a, b) = (m * m - k * k, 2 * m * k);
            let mut t = 1;
            while t * a.max(b) <= max_leg {
                adjacency.entry(t * a).or_default().insert(t * b);
                adjacency.entry(t * b).or_default().insert(t * a);
                t += 1;
            }
        }
    }
    let adjacency: HashMap<u64, Vec<u64>> = adjacency
        .into_iter()
        .map(|(k, v)| {
            let mut v: Vec<u64> = v.into_iter().collect();
            v.sort_unstable();
            (k, v)
        })
        .collect();
    let mut starts: Vec<u64> = adjacency.keys().copied().collect();
    starts.sort_unstable();

    let mut out: Vec<Vec<u64>> = starts
        .par_iter()
        .flat_map_iter(|&a1| {
            let mut found = Vec::new();
            extend(&adjacency, &mut vec![a1], n, &mut found);
            found
        })
        .filter(|seq| {
            let rev: Vec<u64> = seq.iter().rev().copied().collect();
            seq.iter().fold(0u64, |g, x| g.gcd(x)) == 1 && *seq >= rev
        })
        .collect();
    out.sort();
    Ok(out)
}

fn extend(adjacency: &HashMap<u64, Vec<u64>>, seq: &mut Vec<u64>, n: usize, found: &mut Vec<Vec<u64>>) {
    if seq.len() == n {
        found.push(seq.clone());
        return;
    }
    let last = *seq.last().unwrap();
    let Some(next) = adjacency.get(&last) else { return };
    for &a in next {
        // windows ending at `a` that start before `last`
        let mut sum = a as u128 * a as u128;
        let mut ok = true;
        for &x in seq.iter().rev() {
            sum += x as u128 * x as u128;
            if isqrt(sum).is_none() {
                ok = false;
                break;
            }
        }
        if ok {
            seq.push(a);
            extend(adjacency, seq, n, found);
            seq.pop();
        }
    }
}

/// Witnesses `(a, b, u, v)` with `a, b ≤ bound`, not both zero, such that
/// `a² + u² = (2b)²` and `b² + v² = (2a)²`. There are none: summing gives
/// `u² + v² = 3(a² + b²)`, which forces everything to be divisible by 3.
pub fn isosceles_face_type2_refuter(bound: u64) -> Vec<(u64, u64, u64, u64)> {
    (0..=bound)
        .into_par_iter()
        .flat_map_iter(|a| {
            (0..=bound).filter_map(move |b| {
                if a == 0 && b == 0 {
                    return None;
                }
                let (a2, b2) = (a as u128 * a as u128, b as u128 * b as u128);
                let u = isqrt((4 * b2).checked_sub(a2)?)?;
                let v = isqrt((4 * a2).checked_sub(b2)?)?;
                debug_assert_eq!(u * u + v * v, 3 * (a2 + b2));
                Some((a, b, u as u64, v as u64))
            })
        })
        .collect()
}
