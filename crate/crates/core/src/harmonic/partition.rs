use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poly::{determinant, Poly, VarId};

/// A partition of `d`, stored as `d` non-decreasing parts padded with zeros.
///
/// Diagrams are drawn with rows of lengths `μ_1 <= … <= μ_d` from top to
/// bottom, so the longest row sits at the bottom and column `j` has length
/// `μ'_j`. `dk[i-1]` is the total length of the last `i` columns of the
/// diagram padded to `d` columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
    conjugate: Vec<usize>,
    dk: Vec<usize>,
}

impl Partition {
    /// Builds the partition of `d` with the given parts (any order, zeros allowed).
    pub fn new(parts: &[usize], d: usize) -> Result<Self> {
        let mut nonzero: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
        let total: usize = nonzero.iter().sum();
        if total != d || nonzero.len() > d {
            return Err(Error::InvalidIndex(format!(
                "parts {parts:?} do not form a partition of {d}"
            )));
        }
        nonzero.sort_unstable();
        let mut padded = vec![0; d - nonzero.len()];
        padded.extend(nonzero);
        let largest = padded.last().copied().unwrap_or(0);
        let mut conjugate: Vec<usize> = (1..=largest)
            .map(|j| padded.iter().filter(|&&p| p >= j).count())
            .collect();
        conjugate.sort_unstable();
        let mut conj_padded = vec![0; d - conjugate.len()];
        conj_padded.extend(conjugate);
        let dk = conj_padded
            .iter()
            .scan(0, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect();
        Ok(Partition {
            parts: padded,
            conjugate: conj_padded,
            dk,
        })
    }

    pub fn size(&self) -> usize {
        self.parts.len()
    }

    /// All `d` parts, non-decreasing, zero-padded.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn nonzero_parts(&self) -> &[usize] {
        let zeros = self.parts.iter().take_while(|&&p| p == 0).count();
        &self.parts[zeros..]
    }

    /// Number of nonzero rows.
    pub fn length(&self) -> usize {
        self.nonzero_parts().len()
    }

    /// The conjugate partition, non-decreasing and zero-padded to `d` parts.
    pub fn conjugate(&self) -> &[usize] {
        &self.conjugate
    }

    pub fn conjugate_partition(&self) -> Partition {
        Partition::new(&self.conjugate, self.size()).expect("conjugate partitions d")
    }

    /// `d_i(μ)` for `1 <= i <= d`; `d_0 = 0`.
    pub fn d_i(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.dk[i - 1]
        }
    }

    /// Row lengths from the bottom (longest) row up, zero rows omitted.
    pub fn rows_bottom_up(&self) -> Vec<usize> {
        self.nonzero_parts().iter().rev().copied().collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nonzero_parts().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `μ_k = (q, …, q, q+1, …, q+1)` from `d = q(k+1) + r`, with `k+1-r`
/// copies of `q` followed by `r` copies of `q+1`.
pub fn mu_k(d: usize, k: usize) -> Partition {
    let q = d / (k + 1);
    let r = d % (k + 1);
    let mut parts = vec![q; k + 1 - r];
    parts.extend(std::iter::repeat_n(q + 1, r));
    Partition::new(&parts, d).expect("euclidean division gives a partition of d")
}

/// A filling of a diagram with `1..=d`, rows listed bottom-up, each left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YoungTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl YoungTableau {
    /// An injective filling of `shape`; rows are given bottom-up.
    pub fn new(shape: Partition, rows: Vec<Vec<usize>>) -> Result<Self> {
        let lengths: Vec<usize> = rows.iter().map(Vec::len).collect();
        if lengths != shape.rows_bottom_up() {
            return Err(Error::InvalidIndex(format!(
                "row lengths {lengths:?} do not match shape {shape}"
            )));
        }
        let d = shape.size();
        let mut seen = vec![false; d + 1];
        for &e in rows.iter().flatten() {
            if e == 0 || e > d || seen[e] {
                return Err(Error::InvalidIndex(format!(
                    "filling {rows:?} is not a bijection onto 1..={d}"
                )));
            }
            seen[e] = true;
        }
        Ok(YoungTableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Columns left to right, each listed bottom to top.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|c| {
                self.rows
                    .iter()
                    .take_while(|r| r.len() > c)
                    .map(|r| r[c])
                    .collect()
            })
            .collect()
    }

    /// Rows increase left to right and columns increase bottom to top.
    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self
            .columns()
            .iter()
            .all(|c| c.windows(2).all(|w| w[0] < w[1]));
        rows_ok && cols_ok
    }
}

impl fmt::Display for YoungTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .rev()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        f.write_str(&rows.join(" / "))
    }
}

/// Number of standard fillings, by the hook length formula. Saturates at
/// `usize::MAX` beyond `d = 30`.
pub fn hook_count(shape: &Partition) -> usize {
    let rows = shape.rows_bottom_up();
    let d = shape.size();
    if d > 30 {
        return usize::MAX;
    }
    let mut num: u128 = (1..=d as u128).product();
    let mut den: u128 = 1;
    for (r, &len) in rows.iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = rows[r + 1..].iter().filter(|&&l| l > c).count();
            den *= (arm + leg + 1) as u128;
        }
    }
    num /= den;
    usize::try_from(num).unwrap_or(usize::MAX)
}

/// All partitions of `d`, parts listed in non-increasing lexicographic order.
pub fn partitions(d: usize) -> Vec<Partition> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|parts| Partition::new(&parts, d).expect("parts sum to d"))
        .collect()
}

/// Standard tableaux of shape `μ`, by backtracking: `1, 2, …, d` are placed
/// in turn, each in a cell whose left neighbour and lower neighbour are
/// already filled. Candidate rows are tried bottom row first.
pub fn enum_standard_tableaux(shape: &Partition, limits: &Limits) -> Result<Vec<YoungTableau>> {
    limits.check_enumeration(hook_count(shape))?;
    let target = shape.rows_bottom_up();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); target.len()];
    let mut out = Vec::new();
    fill(1, shape.size(), &target, &mut rows, &mut out);
    Ok(out
        .into_iter()
        .map(|rows| YoungTableau {
            shape: shape.clone(),
            rows,
        })
        .collect())
}

fn fill(n: usize, d: usize, target: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    if n > d {
        out.push(rows.clone());
        return;
    }
    for r in 0..target.len() {
        let c = rows[r].len();
        if c == target[r] || (r > 0 && rows[r - 1].len() <= c) {
            continue;
        }
        rows[r].push(n);
        fill(n + 1, d, target, rows, out);
        rows[r].pop();
    }
}

/// Vandermonde determinant `det(Z_{c_i}^{j})_{i, j < m}` of a column `c` of length `m`.
pub fn vandermonde(column: &[usize]) -> Poly {
    let m = column.len();
    let matrix: Vec<Vec<Poly>> = column
        .iter()
        .map(|&e| (0..m).map(|j| Poly::var(VarId::z(e)).pow(j as u32)).collect())
        .collect();
    determinant(&matrix).expect("square by construction")
}

/// `Δ(T)`: product of the Vandermonde determinants of the columns of `T`.
pub fn delta_t(t: &YoungTableau) -> Poly {
    t.columns().iter().map(|c| vandermonde(c)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(i: usize) -> Poly {
        Poly::var(VarId::z(i))
    }
    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts, parts.iter().sum()).unwrap()
    }

    #[test]
    fn mu_k_examples() {
        assert_eq!(mu_k(4, 1).nonzero_parts(), &[2, 2]);
        assert_eq!(mu_k(5, 1).nonzero_parts(), &[2, 3]);
        assert_eq!(mu_k(3, 2).nonzero_parts(), &[1, 1, 1]);
        // conjugate is (r, k+1, …, k+1)
        assert_eq!(mu_k(5, 1).conjugate(), &[0, 0, 1, 2, 2]);
        assert_eq!(mu_k(7, 2).conjugate().iter().filter(|&&c| c > 0).collect::<Vec<_>>(), [&1, &3, &3]);
    }

    #[test]
    fn conjugation_and_dk() {
        let mu = p(&[1, 1]);
        assert_eq!(mu.conjugate(), &[0, 2]);
        assert_eq!((mu.d_i(1), mu.d_i(2)), (0, 2));
        let mu = p(&[2]);
        assert_eq!(mu.conjugate(), &[1, 1]);
        assert_eq!((mu.d_i(1), mu.d_i(2)), (1, 2));
        let mu = p(&[3, 1, 2]);
        assert_eq!(mu.conjugate_partition().conjugate_partition(), mu);
        assert_eq!(mu.d_i(6), 6);
        assert!(Partition::new(&[2, 2], 5).is_err());
    }

    #[test]
    fn tableau_counts() {
        let lim = Limits::default();
        assert_eq!(enum_standard_tableaux(&p(&[1, 1]), &lim).unwrap().len(), 1);
        assert_eq!(enum_standard_tableaux(&p(&[2, 2]), &lim).unwrap().len(), 2);
        assert_eq!(enum_standard_tableaux(&p(&[4]), &lim).unwrap().len(), 1);
        assert_eq!(enum_standard_tableaux(&p(&[1, 2, 3]), &lim).unwrap().len(), 16);
    }

    /// Filter all `d!` fillings for standardness.
    fn brute_force_count(mu: &Partition) -> usize {
        fn perms(v: Vec<usize>) -> Vec<Vec<usize>> {
            if v.is_empty() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for i in 0..v.len() {
                let mut rest = v.clone();
                let x = rest.remove(i);
                for mut p in perms(rest) {
                    p.insert(0, x);
                    out.push(p);
                }
            }
            out
        }
        let lengths = mu.rows_bottom_up();
        perms((1..=mu.size()).collect())
            .into_iter()
            .filter(|perm| {
                let mut it = perm.iter().copied();
                let rows = lengths.iter().map(|&l| it.by_ref().take(l).collect()).collect();
                YoungTableau::new(mu.clone(), rows).unwrap().is_standard()
            })
            .count()
    }

    #[test]
    fn backtracking_matches_brute_force() {
        for parts in [&[2, 2][..], &[1, 2, 2], &[1, 1, 3], &[2, 3], &[1, 1, 1, 2]] {
            let mu = p(parts);
            let listed = enum_standard_tableaux(&mu, &Limits::default()).unwrap();
            assert!(listed.iter().all(YoungTableau::is_standard));
            assert_eq!(listed.len(), brute_force_count(&mu), "{mu}");
            assert_eq!(listed.len(), hook_count(&mu));
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(vandermonde(&[1, 2]), &z(2) - &z(1));
        let t = YoungTableau::new(p(&[2, 2]), vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert!(t.is_standard());
        assert_eq!(t.columns(), vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(delta_t(&t), &(&z(3) - &z(1)) * &(&z(4) - &z(2)));
        let col = YoungTableau::new(p(&[1, 1]), vec![vec![1], vec![2]]).unwrap();
        assert_eq!(delta_t(&col), &z(2) - &z(1));
        assert_eq!(vandermonde(&[]), Poly::one());
    }

    #[test]
    fn rejects_bad_fillings() {
        assert!(YoungTableau::new(p(&[2, 2]), vec![vec![1, 2], vec![2, 4]]).is_err());
        assert!(YoungTableau::new(p(&[2, 2]), vec![vec![1, 2, 3], vec![4]]).is_err());
    }
}
