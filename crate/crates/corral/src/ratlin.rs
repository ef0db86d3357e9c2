//! Exact rational Gaussian elimination: rank, solving, nullspaces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type RatVec = Vec<BigRational>;

pub fn from_int_rows(rows: &[Vec<BigInt>]) -> Vec<RatVec> {
    rows.iter()
        .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect()
}

/// Reduced row echelon form in place; returns pivot column indices.
pub fn rref(m: &mut Vec<RatVec>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in col..cols {
            let v = &m[row][c] * &inv;
            m[row][c] = v;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in col..cols {
                    let v = &m[i][c] - &f * &m[row][c];
                    m[i][c] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[RatVec]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    rank(&from_int_rows(rows))
}

/// Basis of the right nullspace of the matrix given by `rows`.
pub fn nullspace(rows: &[RatVec], cols: usize) -> Vec<RatVec> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve `A x = b`; returns any solution if consistent.
pub fn solve(a: &[RatVec], b: &[BigRational]) -> Option<RatVec> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<RatVec> = a
        .iter()
        .zip(b)
        .map(|(r, bv)| {
            let mut row = r.clone();
            row.push(bv.clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&cols) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][cols].clone();
    }
    Some(x)
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
