use std::collections::HashMap;

use super::Poly;
use crate::error::{Error, Result};

/// Determinant of a square matrix of polynomials.
///
/// Laplace expansion down the rows, memoized on the set of columns still
/// available. Entries here are single variables or zero, so skipping zero
/// entries makes this far cheaper than elimination over a polynomial ring.
pub fn determinant(m: &[Vec<Poly>]) -> Result<Poly> {
    let n = m.len();
    if let Some(row) = m.iter().find(|row| row.len() != n) {
        return Err(Error::NonSquare {
            rows: n,
            cols: row.len(),
        });
    }
    if n == 0 {
        return Ok(Poly::one());
    }
    assert!(n < 64, "determinant of a {n}x{n} matrix is out of reach");
    let full: u64 = if n == 63 { u64::MAX >> 1 } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    Ok(minor(m, full, &mut memo))
}

fn minor(m: &[Vec<Poly>], cols: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
    if cols == 0 {
        return Poly::one();
    }
    if let Some(hit) = memo.get(&cols) {
        return hit.clone();
    }
    let row = m.len() - cols.count_ones() as usize;
    let mut acc = Poly::zero();
    let mut position = 0;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let rest = minor(m, cols & !(1 << c), memo);
            if !rest.is_zero() {
                let term = entry * &rest;
                if position % 2 == 0 {
                    acc.add_assign_ref(&term);
                } else {
                    acc = &acc - &term;
                }
            }
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Rebuilds a matrix from its columns.
pub fn from_columns(columns: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = columns.first().map_or(0, Vec::len);
    (0..n)
        .map(|r| columns.iter().map(|col| col[r].clone()).collect())
        .collect()
}
