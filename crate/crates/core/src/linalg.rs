//! Dense exact linear algebra for the small matrices arising between vertex pairs.

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

/// Row-reduces in place; returns the pivot columns.
fn row_reduce(m: &mut Matrix, mut track: Option<&mut Matrix>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        if let Some(t) = track.as_deref_mut() {
            t.swap(r, p);
        }
        let inv = Scalar::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        if let Some(t) = track.as_deref_mut() {
            for x in t[r].iter_mut() {
                *x *= &inv;
            }
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..cols {
                let d = &f * &m[r][j];
                m[i][j] -= d;
            }
            if let Some(t) = track.as_deref_mut() {
                for j in 0..t[r].len() {
                    let d = &f * &t[r][j];
                    t[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut m = m.clone();
    row_reduce(&mut m, None).len()
}

pub fn is_invertible(m: &Matrix) -> bool {
    m.len() == m.first().map_or(0, Vec::len) && rank(m) == m.len()
}

/// Invertible `L`, `R` and the rank `r` with `L · C · R` equal to the
/// identity on the first `r` diagonal positions and zero elsewhere.
pub fn two_sided_normal_form(c: &Matrix) -> (Matrix, Matrix, usize) {
    let rows = c.len();
    let cols = c.first().map_or(0, Vec::len);
    let mut m = c.clone();
    let mut l = identity(rows);
    let pivots = row_reduce(&mut m, Some(&mut l));
    let mut r = identity(cols);
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..cols {
            if j == p || m[i][j].is_zero() {
                continue;
            }
            let f = m[i][j].clone();
            for row in r.iter_mut() {
                let d = &f * &row[p];
                row[j] -= d;
            }
            for row in m.iter_mut() {
                let d = &f * &row[p];
                row[j] -= d;
            }
        }
    }
    for (i, &p) in pivots.iter().enumerate() {
        if i != p {
            for row in r.iter_mut() {
                row.swap(i, p);
            }
        }
    }
    (l, r, pivots.len())
}

#[cfg(test)]
fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Scalar::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}
