//! Small exact linear algebra over ℚ.

use num_traits::{One, Zero};

use crate::exact::Rational;

/// Row echelon form in place; returns pivot columns.
fn echelon(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Rational::one() / m[row][c];
        for x in m[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c];
                for k in 0..cols {
                    let v = m[row][k];
                    m[r][k] -= f * v;
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m).len()
}

/// Unique solution of a square system, if nonsingular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.iter().zip(b).map(|(row, &bi)| {
        let mut r = row.clone();
        r.push(bi);
        r
    }).collect();
    let piv = echelon(&mut m);
    if piv.len() != n || piv.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(m.iter().map(|r| r[n]).collect())
}

/// Indices of a maximal linearly independent prefix-greedy subset.
pub fn independent_subset(vectors: &[Vec<Rational>]) -> Vec<usize> {
    let mut chosen: Vec<Vec<Rational>> = Vec::new();
    let mut idx = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        chosen.push(v.clone());
        if rank(&chosen) == chosen.len() {
            idx.push(i);
        } else {
            chosen.pop();
        }
    }
    idx
}

pub fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x)).collect()
}

pub fn dot_int(n: &[i64], y: &[Rational]) -> Rational {
    n.iter().zip(y).fold(Rational::zero(), |acc, (&a, b)| acc + *b * a)
}
