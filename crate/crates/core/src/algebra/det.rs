//! Determinants over the polynomial ring.
//!
//! Three independent algorithms: first-row cofactor expansion (the oracle),
//! a division-free subset dynamic program, and fraction-free Bareiss
//! elimination. They must agree exactly on every input.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::SquareMatrix;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

pub const LAPLACE_MAX_N: usize = 9;
pub const DIVISION_FREE_MAX_N: usize = 20;
/// Hard ceiling for any user override of the caps.
pub const ABSOLUTE_MAX_N: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetAlgorithm {
    Laplace,
    #[serde(rename = "dfree")]
    DivisionFree,
    Bareiss,
}

impl FromStr for DetAlgorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laplace" => Ok(DetAlgorithm::Laplace),
            "dfree" | "division-free" => Ok(DetAlgorithm::DivisionFree),
            "bareiss" => Ok(DetAlgorithm::Bareiss),
            _ => Err(Error::parse(format!("unknown determinant algorithm `{s}`"))),
        }
    }
}

impl fmt::Display for DetAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetAlgorithm::Laplace => "laplace",
            DetAlgorithm::DivisionFree => "dfree",
            DetAlgorithm::Bareiss => "bareiss",
        })
    }
}

/// Size caps for the exponential-time algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeCaps {
    pub laplace: usize,
    pub division_free: usize,
}

impl Default for SizeCaps {
    fn default() -> Self {
        SizeCaps {
            laplace: LAPLACE_MAX_N,
            division_free: DIVISION_FREE_MAX_N,
        }
    }
}

impl SizeCaps {
    /// Both caps raised (or lowered) to `n`, clamped to [`ABSOLUTE_MAX_N`].
    pub fn uniform(n: usize) -> Self {
        let n = n.min(ABSOLUTE_MAX_N);
        SizeCaps {
            laplace: n,
            division_free: n,
        }
    }
}

pub fn determinant_with(m: &SquareMatrix, algo: DetAlgorithm, caps: SizeCaps) -> Result<Polynomial> {
    match algo {
        DetAlgorithm::Laplace => det_laplace_capped(m, caps.laplace),
        DetAlgorithm::DivisionFree => det_division_free_capped(m, caps.division_free),
        DetAlgorithm::Bareiss => Ok(det_bareiss(m)),
    }
}

/// Default determinant: the subset dynamic program up to its cap, Bareiss beyond.
/// Bareiss intermediates grow badly on sparse matrices in many variables, so it
/// is only the fallback.
pub fn determinant(m: &SquareMatrix) -> Polynomial {
    if m.size() <= DIVISION_FREE_MAX_N {
        det_division_free(m).expect("within cap")
    } else {
        det_bareiss(m)
    }
}

pub fn det_laplace(m: &SquareMatrix) -> Result<Polynomial> {
    det_laplace_capped(m, LAPLACE_MAX_N)
}

pub fn det_laplace_capped(m: &SquareMatrix, cap: usize) -> Result<Polynomial> {
    let n = m.size();
    if n > cap {
        return Err(Error::SizeCap {
            what: "cofactor expansion",
            size: n,
            cap,
        });
    }
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor(m, 0, &cols))
}

fn cofactor(m: &SquareMatrix, row: usize, cols: &[usize]) -> Polynomial {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut total = Polynomial::zero();
    let mut rest = Vec::with_capacity(cols.len() - 1);
    for (k, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(cols.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x));
        let minor = cofactor(m, row + 1, &rest);
        let term = a * &minor;
        if k % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

pub fn det_division_free(m: &SquareMatrix) -> Result<Polynomial> {
    det_division_free_capped(m, DIVISION_FREE_MAX_N)
}

/// Laplace expansion along successive rows with memoized minors keyed by column subset.
///
/// After processing rows `0..k`, `level[S]` holds the minor on those rows and the
/// `k` columns in bitmask `S`. Uses only ring addition and multiplication.
pub fn det_division_free_capped(m: &SquareMatrix, cap: usize) -> Result<Polynomial> {
    let n = m.size();
    let cap = cap.min(ABSOLUTE_MAX_N);
    if n > cap {
        return Err(Error::SizeCap {
            what: "division-free determinant",
            size: n,
            cap,
        });
    }
    let mut level: HashMap<u32, Polynomial> = HashMap::from([(0u32, Polynomial::one())]);
    for row in 0..n {
        let mut next: HashMap<u32, Polynomial> = HashMap::new();
        for (&mask, minor) in &level {
            for col in 0..n {
                let bit = 1u32 << col;
                if mask & bit != 0 {
                    continue;
                }
                let a = m.get(row, col);
                if a.is_zero() {
                    continue;
                }
                // columns of the new set to the right of `col` count the transpositions
                let above = (mask >> col).count_ones();
                let term = a * minor;
                let slot = next.entry(mask | bit).or_default();
                if above % 2 == 0 {
                    *slot += &term;
                } else {
                    *slot -= &term;
                }
            }
        }
        next.retain(|_, p| !p.is_zero());
        level = next;
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok(level.remove(&full).unwrap_or_default())
}

/// Fraction-free Gaussian elimination. Each step divides exactly by the previous pivot.
pub fn det_bareiss(m: &SquareMatrix) -> Polynomial {
    let n = m.size();
    if n == 0 {
        return Polynomial::one();
    }
    let mut a = m.rows();
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Polynomial::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss step divides exactly by the previous pivot");
            }
            a[i][k] = Polynomial::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::polynomial::poly;

    fn mat(rows: &[&[&str]]) -> SquareMatrix {
        SquareMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| poly(s)).collect()).collect())
            .unwrap()
    }

    fn all(m: &SquareMatrix) -> [Polynomial; 3] {
        [
            det_laplace(m).unwrap(),
            det_division_free(m).unwrap(),
            det_bareiss(m),
        ]
    }

    #[test]
    fn identity_is_one() {
        for d in all(&SquareMatrix::identity(5)) {
            assert_eq!(d, Polynomial::one());
        }
    }

    #[test]
    fn two_by_two() {
        let m = mat(&[&["a1", "1"], &["1", "a2"]]);
        for d in all(&m) {
            assert_eq!(d, poly("a1*a2 - 1"));
        }
    }

    #[test]
    fn zero_row() {
        let m = mat(&[&["1", "x", "2"], &["0", "0", "0"], &["y", "3", "4"]]);
        for d in all(&m) {
            assert!(d.is_zero());
        }
    }

    #[test]
    fn three_cycle_permutation() {
        let m = mat(&[&["0", "1", "0"], &["0", "0", "1"], &["1", "0", "0"]]);
        for d in all(&m) {
            assert_eq!(d, Polynomial::one());
        }
        let swap = mat(&[&["0", "1"], &["1", "0"]]);
        for d in all(&swap) {
            assert_eq!(d, Polynomial::int(-1));
        }
    }

    #[test]
    fn diagonal() {
        let m = mat(&[&["q", "0", "0"], &["0", "1 - q", "0"], &["0", "0", "1 + 2*q"]]);
        let expected = &(&poly("q") * &poly("1 - q")) * &poly("1 + 2*q");
        for d in all(&m) {
            assert_eq!(d, expected);
        }
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = mat(&[&["0", "x", "1"], &["y", "0", "1"], &["1", "1", "0"]]);
        // -x*(0 - 1) + 1*(y - 0) = x + y
        for d in all(&m) {
            assert_eq!(d, poly("x + y"));
        }
    }

    #[test]
    fn caps() {
        let big = SquareMatrix::identity(10);
        assert!(matches!(det_laplace(&big), Err(Error::SizeCap { .. })));
        assert_eq!(det_division_free(&big).unwrap(), Polynomial::one());
        assert!(det_division_free(&SquareMatrix::identity(21)).is_err());
        assert_eq!(det_bareiss(&SquareMatrix::identity(25)), Polynomial::one());
        assert_eq!(
            det_laplace_capped(&big, SizeCaps::uniform(12).laplace).unwrap(),
            Polynomial::one()
        );
        assert_eq!(SizeCaps::uniform(99).division_free, ABSOLUTE_MAX_N);
    }

    #[test]
    fn empty_matrix() {
        let m = SquareMatrix::identity(0);
        for d in all(&m) {
            assert_eq!(d, Polynomial::one());
        }
    }
}
