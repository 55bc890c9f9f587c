//! Exact linear algebra over Q: fraction-free rank and reduced row echelon
//! forms. Pivots are the first nonzero entry in column order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// Scales a rational row to a primitive integer row.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

/// Rank by Bareiss fraction-free elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else { return 0 };
    let mut m: Vec<Vec<BigInt>> =
        rows.iter().map(|r| integer_row(r)).filter(|r| r.iter().any(|c| !c.is_zero())).collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in col + 1..ncols {
                let v = &m[i][j] * &m[r][col] - &m[i][col] * &m[r][j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form: returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let Some(ncols) = rows.first().map(Vec::len) else { return (Vec::new(), Vec::new()) };
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for c in m[r].iter_mut() {
            *c *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..ncols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Reduces `v` modulo the row space of an rref matrix.
pub fn reduce_mod_rowspace(v: &[Rational], echelon: &[Vec<Rational>], pivots: &[usize]) -> Vec<Rational> {
    let mut out = v.to_vec();
    for (row, &p) in echelon.iter().zip(pivots) {
        if !out[p].is_zero() {
            let factor = out[p].clone();
            for (o, c) in out.iter_mut().zip(row) {
                *o -= &factor * c;
            }
        }
    }
    out
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let augmented: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (e, pivots) = rref(&augmented);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(e.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `a * b` for dense rational matrices.
pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

/// Coordinates of `rows` in the quotient of `Q^n` by the row space of an
/// rref matrix, against the basis of non-pivot unit vectors.
pub fn quotient_coordinates(rows: &[Vec<Rational>], echelon: &[Vec<Rational>], pivots: &[usize]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|v| {
            let r = reduce_mod_rowspace(v, echelon, pivots);
            r.into_iter().enumerate().filter(|(k, _)| !pivots.contains(k)).map(|(_, c)| c).collect()
        })
        .collect()
}
