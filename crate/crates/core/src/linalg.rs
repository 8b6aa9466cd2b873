//! Fraction-free sparse Gaussian elimination over the integers.
//!
//! Rows are sparse `(column, coefficient)` lists with coprime integer
//! coefficients. Eliminating row `r` against pivot row `p` at column `c`
//! computes `p[c]/g * r - r[c]/g * p` with `g = gcd(p[c], r[c])` and then
//! divides out the content, so no fractions ever appear and coefficient
//! growth stays bounded. The pivot of a row is always its first nonzero
//! column, which makes insertion order fully determine the echelon form.

use std::collections::{HashMap, HashSet};

use num::{BigInt, Integer, One, Signed, Zero};

use crate::poly::{Monomial, Poly, Rational};

pub type SparseRow = Vec<(usize, BigInt)>;

/// Builds a primitive integer row from rational entries in any order.
pub fn integer_row<I: IntoIterator<Item = (usize, Rational)>>(entries: I) -> SparseRow {
    let mut merged: HashMap<usize, Rational> = HashMap::new();
    for (c, v) in entries {
        *merged.entry(c).or_insert_with(Rational::zero) += v;
    }
    let mut entries: Vec<(usize, Rational)> =
        merged.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    entries.sort_by_key(|&(c, _)| c);
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let row: SparseRow = entries
        .into_iter()
        .map(|(c, v)| (c, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(row)
}

fn make_primitive(mut row: SparseRow) -> SparseRow {
    let content = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if content.is_zero() {
        return Vec::new();
    }
    let negate = row[0].1.is_negative();
    if !content.is_one() || negate {
        let divisor = if negate { -content } else { content };
        for (_, v) in row.iter_mut() {
            *v = &*v / &divisor;
        }
    }
    row
}

/// `a_scale * a - b_scale * b`, merged by column.
fn combine(a: &[(usize, BigInt)], a_scale: &BigInt, b: &[(usize, BigInt)], b_scale: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, &a[i].1 * a_scale));
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(&b[j].1 * b_scale)));
            j += 1;
        } else {
            let v = &a[i].1 * a_scale - &b[j].1 * b_scale;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry(row: &[(usize, BigInt)], col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |&(c, _)| c)
        .ok()
        .map(|pos| &row[pos].1)
}

/// Clears `col` from `row` using `pivot`, whose leading column is `col`.
fn eliminate(row: &[(usize, BigInt)], pivot: &[(usize, BigInt)], col: usize) -> SparseRow {
    let a = entry(row, col).expect("column present in row");
    let p = &pivot[0].1;
    let g = a.gcd(p);
    let reduced = combine(row, &(p / &g), pivot, &(a / &g));
    make_primitive(reduced)
}

/// Row echelon form built incrementally.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Reduces until the leading column is not a pivot (or the row vanishes).
    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        while let Some(&(lead, _)) = row.first() {
            match self.pivots.get(&lead) {
                Some(&pi) => row = eliminate(&row, &self.rows[pi], lead),
                None => break,
            }
        }
        row
    }

    /// Adds a row; returns `true` if it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let residual = self.reduce(row);
        match residual.first() {
            None => false,
            Some(&(lead, _)) => {
                self.pivots.insert(lead, self.rows.len());
                self.rows.push(residual);
                true
            }
        }
    }

    pub fn contains(&self, row: &[(usize, BigInt)]) -> bool {
        self.reduce(row.to_vec()).is_empty()
    }

    /// Basis of `{v : row · v = 0 for every row}` over columns `0..ncols`.
    ///
    /// One vector per free column, in increasing column order, with a `1`
    /// at its free column.
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<(usize, Rational)>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        let mut reduced: HashMap<usize, SparseRow> = HashMap::new();
        for i in order {
            let mut row = self.rows[i].clone();
            let lead = row[0].0;
            loop {
                let next = row
                    .iter()
                    .skip(1)
                    .map(|&(c, _)| c)
                    .find(|c| reduced.contains_key(c));
                match next {
                    Some(c) => row = eliminate(&row, &reduced[&c], c),
                    None => break,
                }
            }
            debug_assert_eq!(row[0].0, lead);
            reduced.insert(lead, row);
        }

        let pivot_set: HashSet<usize> = reduced.keys().copied().collect();
        let free: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
        let free_pos: HashMap<usize, usize> =
            free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut basis: Vec<Vec<(usize, Rational)>> = free
            .iter()
            .map(|&c| vec![(c, Rational::one())])
            .collect();
        let mut leads: Vec<&usize> = reduced.keys().collect();
        leads.sort();
        for lead in leads {
            let row = &reduced[lead];
            let p = &row[0].1;
            for (c, v) in row.iter().skip(1) {
                if let Some(&fi) = free_pos.get(c) {
                    basis[fi].push((*lead, Rational::new(-v.clone(), p.clone())));
                }
            }
        }
        for v in basis.iter_mut() {
            v.sort_by_key(|&(c, _)| c);
        }
        basis
    }
}

/// Rank of a family of rows.
pub fn rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Incremental span of polynomials, columns indexed by monomial.
#[derive(Clone, Debug, Default)]
pub struct PolySpan {
    columns: HashMap<Monomial, usize>,
    echelon: Echelon,
}

impl PolySpan {
    pub fn new() -> Self {
        PolySpan::default()
    }

    pub fn from_polys<'a, I: IntoIterator<Item = &'a Poly>>(polys: I) -> Self {
        let mut span = PolySpan::new();
        for p in polys {
            span.insert(p);
        }
        span
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    fn row_for(&mut self, p: &Poly) -> SparseRow {
        let mut entries = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let next = self.columns.len();
            let col = *self.columns.entry(m.clone()).or_insert(next);
            entries.push((col, c.clone()));
        }
        integer_row(entries)
    }

    /// Adds `p`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, p: &Poly) -> bool {
        let row = self.row_for(p);
        self.echelon.insert(row)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        let mut entries = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            match self.columns.get(m) {
                Some(&col) => entries.push((col, c.clone())),
                None => return false,
            }
        }
        self.echelon.contains(&integer_row(entries))
    }
}

/// Rank of a family of polynomials.
pub fn poly_rank<'a, I: IntoIterator<Item = &'a Poly>>(polys: I) -> usize {
    PolySpan::from_polys(polys).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat, VarId};

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        integer_row(entries.iter().map(|&(c, v)| (c, int(v))))
    }

    fn dense(v: &[(usize, Rational)], n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        for (c, x) in v {
            out[*c] = x.clone();
        }
        out
    }

    #[test]
    fn rows_are_primitive() {
        let r = integer_row([(3, rat(2, 3)), (1, rat(-4, 9))]);
        assert_eq!(r, vec![(1, BigInt::from(2)), (3, BigInt::from(-3))]);
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(row(&[(0, 1), (1, 2), (2, 3)])));
        assert!(e.insert(row(&[(0, 2), (1, 4), (2, 7)])));
        assert!(!e.insert(row(&[(0, 3), (1, 6), (2, 10)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&row(&[(2, 5)])));
        assert!(!e.contains(&row(&[(1, 1)])));
    }

    #[test]
    fn nullspace_annihilates_rows() {
        let rows = vec![
            row(&[(0, 1), (1, 1), (3, -2)]),
            row(&[(1, 3), (2, -1), (4, 5)]),
            row(&[(0, 2), (2, 1), (3, 1), (4, 1)]),
        ];
        let mut e = Echelon::new();
        for r in &rows {
            e.insert(r.clone());
        }
        let ker = e.nullspace(5);
        assert_eq!(ker.len(), 5 - e.rank());
        for v in &ker {
            let v = dense(v, 5);
            for r in &rows {
                let dot: Rational = r
                    .iter()
                    .map(|(c, a)| Rational::from_integer(a.clone()) * &v[*c])
                    .sum();
                assert!(dot.is_zero());
            }
        }
        let mut span = Echelon::new();
        for v in &ker {
            assert!(span.insert(integer_row(v.clone())));
        }
    }

    #[test]
    fn nullspace_of_empty_system_is_standard_basis() {
        let ker = Echelon::new().nullspace(3);
        assert_eq!(ker.len(), 3);
        assert_eq!(ker[1], vec![(1, Rational::one())]);
    }

    #[test]
    fn poly_span() {
        let z = |i| Poly::var(VarId::z(i));
        let mut span = PolySpan::new();
        assert!(span.insert(&(&z(1) + &z(2))));
        assert!(span.insert(&(&z(1) - &z(2))));
        assert!(span.contains(&z(1)));
        assert!(!span.contains(&z(3)));
        assert!(!span.insert(&z(2).scale(&rat(7, 2))));
        assert_eq!(span.rank(), 2);
        assert!(span.contains(&Poly::zero()));
    }
}
