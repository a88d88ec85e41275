//! Exhaustive residue-class verification of divisibility claims.
//!
//! A claim says that `d` divides the area of every Heron triangle, or the
//! volume of every Heron tetrahedron, possibly under a premise on the edges.
//! It is checked modulo `m` by enumerating every residue configuration
//! that an actual Heron object could reduce to, and looking for one whose
//! determinant is compatible with a measure not divisible by `gcd(d, m)`.
//! Finding none verifies the claim modulo `m`.
//!
//! Tetrahedra are enumerated by the residues of their six squared edges.
//! Each face must have `16·A² ≡ 16·a²` for some `a`, and the claim is refuted
//! by a configuration with Cayley–Menger determinant `D ≡ K·v²` for some `v`
//! with `v ≢ 0 (mod gcd(d, m))`. Normally `K = 288`.
//!
//! Triangles are enumerated by `x, y, z = s − a, s − b, s − c`, so that
//! `A² = xyz(x + y + z)` and `K = 1`. The perimeter of a Heron triangle is
//! even, so `s` is an integer.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplex::{canonical_tetra, heron16_squared, tetra_cm_det, TETRA_FACES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectKind {
    Triangle,
    Tetrahedron,
}

/// `d` divides the measure of every Heron object of the given kind whose
/// edges are all divisible by `premise`, checked modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityClaim {
    pub id: String,
    pub kind: ObjectKind,
    pub modulus: u64,
    /// Multiplier `K` in `D ≡ K·v²`.
    pub multiplier: u64,
    pub divisor: u64,
    /// Edges ≡ 0 modulo this, if present.
    pub premise: Option<u64>,
    pub statement: String,
}

impl DivisibilityClaim {
    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::MalformedClaim(format!("{}: {why}", self.id)));
        if self.modulus < 2 {
            return bad(format!("modulus {} must be at least 2", self.modulus));
        }
        if self.divisor < 2 {
            return bad(format!("divisor {} must be at least 2", self.divisor));
        }
        if self.modulus.gcd(&self.divisor) == 1 {
            return bad(format!("modulus {} carries no information about divisor {}", self.modulus, self.divisor));
        }
        if self.multiplier == 0 {
            return bad("multiplier must be positive".into());
        }
        if let Some(t) = self.premise {
            if t < 2 || self.modulus % t != 0 {
                return bad(format!("premise modulus {t} must divide {}", self.modulus));
            }
        }
        if self.modulus > 1 << 16 {
            return bad(format!("modulus {} is too large", self.modulus));
        }
        Ok(())
    }

    /// The largest part of the divisor visible modulo `m`.
    pub fn effective_divisor(&self) -> u64 {
        self.modulus.gcd(&self.divisor)
    }
}

/// A residue configuration that no check rules out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimWitness {
    /// Squared-edge residues `01,02,03,12,13,23` for tetrahedra; `(x, y, z)`
    /// for triangles.
    pub residues: Vec<u64>,
    /// Edge residues `(a, b, c) = (y + z, x + z, x + y)`; triangles only.
    pub edges: Option<Vec<u64>>,
    /// `D (mod m)`, or `A² (mod m)` for triangles.
    pub determinant: u64,
    /// A measure residue `v` with `D ≡ K·v²` not divisible by `gcd(d, m)`.
    pub measure: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub modulus: u64,
    pub verified: bool,
    /// Configurations passing the premise and face checks.
    pub configurations: u64,
    pub witness: Option<ClaimWitness>,
}

/// Membership tables for residues modulo `m`.
#[derive(Debug, Clone)]
pub struct ResidueTables {
    pub m: u64,
    /// `x² mod m` over all `x`, sorted and deduplicated.
    pub squares: Vec<u64>,
    /// Whether `r ≡ 16·a²` for some `a`.
    face_ok: Vec<bool>,
    /// Some `v` with `r ≡ K·v²` and `v ≢ 0 (mod g)`.
    bad: Vec<Option<u64>>,
}

impl ResidueTables {
    pub fn new(m: u64, multiplier: u64, g: u64) -> Self {
        let mut squares: Vec<u64> = (0..m).map(|x| x * x % m).collect();
        squares.sort_unstable();
        squares.dedup();
        let mut face_ok = vec![false; m as usize];
        let mut bad = vec![None; m as usize];
        for v in 0..m {
            let sq = v * v % m;
            face_ok[(16 * sq % m) as usize] = true;
            let r = (multiplier % m) * sq % m;
            if v % g != 0 && bad[r as usize].is_none() {
                bad[r as usize] = Some(v);
            }
        }
        Self { m, squares, face_ok, bad }
    }

    pub fn is_square(&self, r: u64) -> bool {
        self.squares.binary_search(&(r % self.m)).is_ok()
    }

    pub fn face_ok(&self, r: u64) -> bool {
        self.face_ok[r as usize]
    }

    pub fn bad(&self, r: u64) -> Option<u64> {
        self.bad[r as usize]
    }
}

/// Verifies a claim with symmetry pruning.
pub fn verify_claim(claim: &DivisibilityClaim) -> Result<ClaimReport> {
    verify_claim_with(claim, true)
}

/// Verifies a claim; `prune` restricts the enumeration to one configuration
/// per orbit of the vertex symmetry group. The verdict and the witness do
/// not depend on it.
pub fn verify_claim_with(claim: &DivisibilityClaim, prune: bool) -> Result<ClaimReport> {
    claim.validate()?;
    let tables = ResidueTables::new(claim.modulus, claim.multiplier, claim.effective_divisor());
    let (configurations, witness) = match claim.kind {
        ObjectKind::Triangle => triangles(claim, &tables, prune),
        ObjectKind::Tetrahedron => tetrahedra(claim, &tables, prune),
    };
    Ok(ClaimReport {
        claim: claim.id.clone(),
        modulus: claim.modulus,
        verified: witness.is_none(),
        configurations,
        witness,
    })
}

fn merge(results: Vec<(u64, Option<ClaimWitness>)>) -> (u64, Option<ClaimWitness>) {
    let count = results.iter().map(|r| r.0).sum();
    let witness = results.into_iter().filter_map(|r| r.1).min_by(|a, b| a.residues.cmp(&b.residues));
    (count, witness)
}

fn triangles(claim: &DivisibilityClaim, t: &ResidueTables, prune: bool) -> (u64, Option<ClaimWitness>) {
    let m = t.m;
    let shards: Vec<(u64, u64)> = (0..m).flat_map(|x| (0..m).map(move |y| (x, y))).filter(|&(x, y)| !prune || x <= y).collect();
    let results = shards
        .par_iter()
        .map(|&(x, y)| {
            let mut count = 0;
            let mut witness: Option<ClaimWitness> = None;
            for z in if prune { y..m } else { 0..m } {
                if let Some(tp) = claim.premise {
                    if (y + z) % tp != 0 || (x + z) % tp != 0 || (x + y) % tp != 0 {
                        continue;
                    }
                }
                count += 1;
                let area_sq = x * y % m * z % m * ((x + y + z) % m) % m;
                if let Some(v) = t.bad(area_sq) {
                    witness = Some(ClaimWitness {
                        residues: vec![x, y, z],
                        edges: Some(vec![(y + z) % m, (x + z) % m, (x + y) % m]),
                        determinant: area_sq,
                        measure: v,
                    });
                    break;
                }
            }
            (count, witness)
        })
        .collect();
    merge(results)
}

fn tetrahedra(claim: &DivisibilityClaim, t: &ResidueTables, prune: bool) -> (u64, Option<ClaimWitness>) {
    let m = t.m;
    let mi = m as i128;
    // squared-edge residues allowed by the premise
    let allowed: Vec<u64> = match claim.premise {
        None => t.squares.clone(),
        Some(tp) => {
            let mut v: Vec<u64> = (0..m).filter(|e| e % tp == 0).map(|e| e * e % m).collect();
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    let face = |p: u64, q: u64, r: u64| {
        let f = heron16_squared(p as i128, q as i128, r as i128).rem_euclid(mi) as u64;
        t.face_ok(f)
    };
    let shards: Vec<(u64, u64)> = allowed.iter().flat_map(|&a| allowed.iter().map(move |&b| (a, b))).collect();
    let results = shards
        .par_iter()
        .map(|&(e0, e1)| {
            let mut count = 0;
            let mut witness: Option<ClaimWitness> = None;
            for &e3 in &allowed {
                if !face(e0, e1, e3) {
                    continue;
                }
                for &e2 in &allowed {
                    for &e4 in &allowed {
                        if !face(e0, e2, e4) {
                            continue;
                        }
                        for &e5 in &allowed {
                            if !face(e1, e2, e5) || !face(e3, e4, e5) {
                                continue;
                            }
                            let e = [e0, e1, e2, e3, e4, e5];
                            debug_assert!(TETRA_FACES.iter().all(|f| face(e[f[0]], e[f[1]], e[f[2]])));
                            if prune && canonical_tetra(&e) != e {
                                continue;
                            }
                            count += 1;
                            let det = tetra_cm_det(&e.map(|x| x as i128)).rem_euclid(mi) as u64;
                            if let Some(v) = t.bad(det) {
                                if witness.as_ref().is_none_or(|w| e.as_slice() < w.residues.as_slice()) {
                                    witness = Some(ClaimWitness { residues: e.to_vec(), edges: None, determinant: det, measure: v });
                                }
                            }
                        }
                    }
                }
            }
            (count, witness)
        })
        .collect();
    merge(results)
}

fn claim(id: &str, kind: ObjectKind, m: u64, k: u64, d: u64, premise: Option<u64>, statement: &str) -> DivisibilityClaim {
    DivisibilityClaim {
        id: id.into(),
        kind,
        modulus: m,
        multiplier: k,
        divisor: d,
        premise,
        statement: statement.into(),
    }
}

/// Named claims, in the order listed by the CLI.
pub const PRESETS: [&str; 11] = [
    "area-mod4",
    "area-mod3",
    "scale2-mod16",
    "scale3-mod9",
    "vol7-mod7",
    "vol3-mod27",
    "vol2-mod4096",
    "scale2-mod16-original",
    "scale3-mod9-original",
    "triangle-scale2-mod4",
    "area5-mod5",
];

/// Presets that are not desk-feasible.
pub const LONG_RUNNING: [&str; 1] = ["vol2-mod4096"];

pub fn preset(name: &str) -> Result<DivisibilityClaim> {
    use ObjectKind::*;
    Ok(match name {
        "area-mod4" => claim(name, Triangle, 4, 1, 2, None, "every Heron area is even"),
        "area-mod3" => claim(name, Triangle, 3, 1, 3, None, "every Heron area is divisible by 3"),
        "vol7-mod7" => claim(name, Tetrahedron, 7, 288, 7, None, "every Heron volume is divisible by 7"),
        "vol3-mod27" => claim(name, Tetrahedron, 27, 288, 3, None, "every Heron volume is divisible by 3"),
        "vol2-mod4096" => claim(name, Tetrahedron, 4096, 288, 16, None, "every Heron volume is divisible by 16"),
        // edges of the scaled-down tetrahedron: its determinant is 288·V²/t⁶ = 2·(12V/t³)²,
        // and t³ | V iff 12 | 12V/t³
        "scale2-mod16" => claim(name, Tetrahedron, 16, 2, 4, None, "halving a Heron tetrahedron with even edges gives a Heron tetrahedron"),
        "scale3-mod9" => claim(name, Tetrahedron, 9, 2, 3, None, "dividing a Heron tetrahedron with edges divisible by 3 by 3 gives a Heron tetrahedron"),
        // the same statement with residues of the original edges
        "scale2-mod16-original" => claim(name, Tetrahedron, 16, 288, 8, Some(2), "even edges force 8 | V, original edges"),
        "scale3-mod9-original" => claim(name, Tetrahedron, 9, 288, 9, Some(3), "edges divisible by 3 force 27 | V, original edges"),
        "triangle-scale2-mod4" => claim(name, Triangle, 4, 1, 2, Some(2), "a Heron triangle with even sides has even area"),
        "area5-mod5" => claim(name, Triangle, 5, 1, 5, None, "every Heron area is divisible by 5 (false)"),
        other => return Err(Error::MalformedClaim(format!("unknown preset `{other}`"))),
    })
}

/// Both readings of the scaling statement for `t ∈ {2, 3}`. The first, on
/// scaled-down edges, is the verdict; the second is reported alongside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub t: u64,
    pub verified: bool,
    pub scaled_down: ClaimReport,
    pub original_edges: ClaimReport,
}

pub fn verify_scaling_claim(t: u64) -> Result<ScalingReport> {
    let (a, b) = match t {
        2 => ("scale2-mod16", "scale2-mod16-original"),
        3 => ("scale3-mod9", "scale3-mod9-original"),
        _ => return Err(Error::MalformedClaim(format!("scaling claims exist for t = 2 and t = 3, not {t}"))),
    };
    let scaled_down = verify_claim(&preset(a)?)?;
    let original_edges = verify_claim(&preset(b)?)?;
    Ok(ScalingReport { t, verified: scaled_down.verified, scaled_down, original_edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(name: &str) -> ClaimReport {
        verify_claim(&preset(name).unwrap()).unwrap()
    }

    #[test]
    fn square_tables_match_direct_squaring() {
        for m in [3u64, 4, 7, 9, 16, 27, 4096] {
            let t = ResidueTables::new(m, 288, 2);
            for r in 0..m {
                assert_eq!(t.is_square(r), (0..m).any(|x| x * x % m == r), "m = {m}, r = {r}");
            }
        }
    }

    #[test]
    fn paper_claims_verify() {
        for name in ["area-mod4", "area-mod3", "vol7-mod7", "vol3-mod27", "triangle-scale2-mod4"] {
            let r = run(name);
            assert!(r.verified, "{name}: {:?}", r.witness);
            assert!(r.configurations > 0);
        }
    }

    #[test]
    fn scaling_claims() {
        for t in [2, 3] {
            let r = verify_scaling_claim(t).unwrap();
            assert!(r.verified, "t = {t}: {:?}", r.scaled_down.witness);
        }
        assert!(verify_scaling_claim(5).is_err());
    }

    #[test]
    fn false_claim_has_minimal_witness() {
        let r = run("area5-mod5");
        assert!(!r.verified);
        let w = r.witness.unwrap();
        assert_eq!(w.residues, vec![1, 1, 4]);
        assert_eq!(w.edges, Some(vec![0, 0, 2]));
        // the (3,4,5) triangle itself: s = 6, x,y,z = 3,2,1, area 6 ≢ 0 (mod 5)
        assert_eq!((3 * 2 * 1 * 6) % 5, 36 % 5);
    }

    #[test]
    fn pruning_is_invisible() {
        let claims = [
            preset("vol7-mod7").unwrap(),
            preset("scale3-mod9").unwrap(),
            preset("scale2-mod16-original").unwrap(),
            preset("area5-mod5").unwrap(),
            preset("area-mod3").unwrap(),
            claim("vol3-mod9", ObjectKind::Tetrahedron, 9, 288, 9, None, ""),
            claim("vol-false", ObjectKind::Tetrahedron, 5, 288, 5, None, ""),
        ];
        for c in &claims {
            let a = verify_claim_with(c, true).unwrap();
            let b = verify_claim_with(c, false).unwrap();
            assert_eq!(a.verified, b.verified, "{}", c.id);
            assert_eq!(a.witness, b.witness, "{}", c.id);
        }
    }

    #[test]
    fn malformed_claims() {
        let mut c = preset("vol7-mod7").unwrap();
        c.modulus = 1;
        assert!(verify_claim(&c).is_err());
        c.modulus = 7;
        c.divisor = 3;
        assert!(verify_claim(&c).is_err());
        c.divisor = 7;
        c.premise = Some(2);
        assert!(verify_claim(&c).is_err());
        assert!(preset("nope").is_err());
    }
}
