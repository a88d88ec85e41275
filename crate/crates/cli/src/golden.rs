//! The appendix tables, as shipped in `data/`.

use crate::error::{CliError, Result};

pub const A1: &str = include_str!("../data/a1.txt");
pub const A2: &str = include_str!("../data/a2.txt");
pub const A3: &str = include_str!("../data/a3.txt");

/// Semi-regular row: opposite-edge lengths and coordinates of `A1..A3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiRegularRow {
    pub abc: [u64; 3],
    pub points: [[i64; 3]; 3],
}

/// Right-angled-face row with its glued isosceles-face columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightAngledFaceRow {
    /// `AB, AC, AD, BC, BD, CD`.
    pub edges: [u64; 6],
    pub legs: [u64; 3],
    /// `(2a, x, 2b)`.
    pub isosceles: [u64; 3],
}

impl RightAngledFaceRow {
    /// The same row with the legs read in the opposite direction, `a1 ≥ a3`.
    pub fn oriented(&self) -> Self {
        let [a1, a2, a3] = self.legs;
        if a1 >= a3 {
            return self.clone();
        }
        let [two_a, x, two_b] = self.isosceles;
        Self { edges: self.edges, legs: [a3, a2, a1], isosceles: [two_b, x, two_a] }
    }
}

/// What a generic row asserts beyond its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenericExpectation {
    Coordinates([[i64; 3]; 3]),
    Tags { tags: Vec<String>, note: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericRow {
    /// `A0A1, A0A2, A0A3, A1A2, A1A3, A2A3`.
    pub edges: [u64; 6],
    pub expectation: GenericExpectation,
}

fn rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('|').map(str::trim).collect()))
}

fn bad(line: usize, message: impl Into<String>) -> CliError {
    CliError::Input { line, message: message.into() }
}

fn numbers<const N: usize>(line: usize, s: &str) -> Result<[u64; N]> {
    let v: Vec<u64> = s.split_whitespace().map(str::parse).collect::<std::result::Result<_, _>>().map_err(|e| bad(line, format!("{e}")))?;
    v.try_into().map_err(|_| bad(line, format!("expected {N} numbers in `{s}`")))
}

fn points(line: usize, s: &str) -> Result<[[i64; 3]; 3]> {
    let pts: Vec<[i64; 3]> = s
        .split_whitespace()
        .map(|p| {
            let c: Vec<i64> = p.split(',').map(str::parse).collect::<std::result::Result<_, _>>().map_err(|e| bad(line, format!("{e}")))?;
            c.try_into().map_err(|_| bad(line, format!("`{p}` is not a 3-vector")))
        })
        .collect::<Result<_>>()?;
    pts.try_into().map_err(|_| bad(line, "expected three points"))
}

pub fn semi_regular() -> Result<Vec<SemiRegularRow>> {
    rows(A1)
        .map(|(line, cols)| match cols.as_slice() {
            [abc, pts] => Ok(SemiRegularRow { abc: numbers(line, abc)?, points: points(line, pts)? }),
            _ => Err(bad(line, "expected `a b c | A1 A2 A3`")),
        })
        .collect()
}

pub fn right_angled_face() -> Result<Vec<RightAngledFaceRow>> {
    rows(A2)
        .map(|(line, cols)| match cols.as_slice() {
            [e, l, i] => Ok(RightAngledFaceRow { edges: numbers(line, e)?, legs: numbers(line, l)?, isosceles: numbers(line, i)? }),
            _ => Err(bad(line, "expected `edges | legs | 2a x 2b`")),
        })
        .collect()
}

pub fn generic() -> Result<Vec<GenericRow>> {
    rows(A3)
        .map(|(line, cols)| {
            let [e, rest] = cols.as_slice() else {
                return Err(bad(line, "expected `edges | coordinates` or `edges | tags: ...`"));
            };
            let expectation = match rest.strip_prefix("tags:") {
                Some(t) => {
                    let (tags, note) = t.split_once(';').unwrap_or((t, ""));
                    GenericExpectation::Tags { tags: tags.split_whitespace().map(String::from).collect(), note: note.trim().into() }
                }
                None => GenericExpectation::Coordinates(points(line, rest)?),
            };
            Ok(GenericRow { edges: numbers(line, e)?, expectation })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        assert_eq!(semi_regular().unwrap().len(), 8);
        assert_eq!(right_angled_face().unwrap().len(), 15);
        let g = generic().unwrap();
        assert_eq!(g.len(), 23);
        assert_eq!(g.iter().filter(|r| matches!(r.expectation, GenericExpectation::Tags { .. })).count(), 5);
    }

    #[test]
    fn orientation() {
        let rows = right_angled_face().unwrap();
        assert_eq!(rows[2].oriented().legs, [495, 840, 448]);
        assert_eq!(rows[2].oriented().isosceles, [990, 1073, 896]);
        assert_eq!(rows[0].oriented(), rows[0]);
    }
}
