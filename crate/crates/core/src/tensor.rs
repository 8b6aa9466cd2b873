//! The nilpotent model `(F_k, J)` and invariant tensors in `F_k^{⊗d}`.
//!
//! `F_k` has basis `f_0..f_k` with `J f_i = i f_{i-1}`. Tensors are stored in
//! the `f` basis. A multilinear polynomial `Π_s Y_s^(t_s)` (one variable per
//! slot `s = 1..d`) is identified with `f_{t_1} ⊗ … ⊗ f_{t_d}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigInt, One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::{saturating_pow, Limits};
use crate::linalg::{integer_row, Echelon};
use crate::poly::{determinant, from_columns, render_rational, Monomial, Poly, Rational, VarId};

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `n!/(n-a)!`, zero when `a > n`.
fn falling(n: usize, a: usize) -> BigInt {
    if a > n {
        return BigInt::zero();
    }
    ((n - a + 1)..=n).map(BigInt::from).product()
}

/// The space `F_k` with its maximal-index nilpotent endomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NilpotentModel {
    pub k: usize,
}

impl NilpotentModel {
    pub fn new(k: usize) -> Self {
        NilpotentModel { k }
    }

    pub fn dim(&self) -> usize {
        self.k + 1
    }

    /// `J f_i` as `(index, coefficient)`, or `None` for `f_0`.
    pub fn apply(&self, i: usize) -> Option<(usize, usize)> {
        (i > 0).then(|| (i - 1, i))
    }

    /// Matrix of `J`: entry `[i][j]` is the coefficient of `f_i` in `J f_j`.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for j in 1..n {
            m[j - 1][j] = Rational::from_integer(j.into());
        }
        m
    }
}

/// Element of `F_k^{⊗d}` in the basis `f_{a_1} ⊗ … ⊗ f_{a_d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    k: usize,
    d: usize,
    coords: BTreeMap<Vec<usize>, Rational>,
}

impl Tensor {
    pub fn zero(k: usize, d: usize) -> Self {
        Tensor {
            k,
            d,
            coords: BTreeMap::new(),
        }
    }

    /// The pure tensor `f_{a_1} ⊗ … ⊗ f_{a_d}`.
    pub fn basis(k: usize, index: &[usize]) -> Result<Self> {
        let mut t = Tensor::zero(k, index.len());
        t.add_coord(index.to_vec(), Rational::one())?;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn power(&self) -> usize {
        self.d
    }

    pub fn coords(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.coords
    }

    pub fn coordinate(&self, index: &[usize]) -> Rational {
        self.coords.get(index).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_coord(&mut self, index: Vec<usize>, c: Rational) -> Result<()> {
        if index.len() != self.d || index.iter().any(|&a| a > self.k) {
            return Err(Error::IndexOutOfRange(format!(
                "tensor index {index:?} outside {{0..{}}}^{}",
                self.k, self.d
            )));
        }
        self.add_unchecked(index, c);
        Ok(())
    }

    fn add_unchecked(&mut self, index: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coords.entry(index) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        let mut out = Tensor::zero(self.k, self.d);
        if !c.is_zero() {
            for (i, v) in &self.coords {
                out.coords.insert(i.clone(), v * c);
            }
        }
        out
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (i, v) in &other.coords {
            out.add_unchecked(i.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.scale(&-Rational::one()))
    }

    /// The same coordinates viewed in `F_k'^{⊗d}` for `k' >= k`.
    pub fn widen(&self, k: usize) -> Tensor {
        assert!(k >= self.k, "cannot narrow a tensor");
        Tensor {
            k,
            d: self.d,
            coords: self.coords.clone(),
        }
    }

    /// Sparse row over the coordinate box, columns in mixed radix `k+1`.
    pub(crate) fn row(&self) -> Vec<(usize, Rational)> {
        self.coords
            .iter()
            .map(|(i, v)| (box_index(i, self.k), v.clone()))
            .collect()
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        for (n, (idx, c)) in self.coords.iter().enumerate() {
            let negative = c < &Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{}*", render_rational(&abs))?;
            }
            let parts: Vec<String> = idx.iter().map(|a| a.to_string()).collect();
            write!(f, "f({})", parts.join(","))?;
        }
        Ok(())
    }
}

fn box_index(index: &[usize], k: usize) -> usize {
    index.iter().fold(0, |acc, &a| acc * (k + 1) + a)
}

/// All `ℓ`-element subsets of `0..d` in lexicographic order.
pub(crate) fn subsets(d: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=(d - left) {
            cur.push(i);
            rec(i + 1, d, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if l <= d {
        rec(0, d, l, &mut Vec::new(), &mut out);
    }
    out
}

fn check_ell(d: usize, l: usize) -> Result<()> {
    if l == 0 || l > d {
        return Err(Error::IndexOutOfRange(format!("J^({l}) needs 1 <= l <= d = {d}")));
    }
    Ok(())
}

/// `J^(ℓ)`: `J` applied in `ℓ` distinct slots, summed over ordered choices
/// of slots, so each unordered choice contributes `ℓ!` times.
pub fn apply_j_ell(t: &Tensor, l: usize) -> Result<Tensor> {
    check_ell(t.d, l)?;
    let weight = Rational::from_integer(factorial(l));
    let mut out = Tensor::zero(t.k, t.d);
    for (idx, c) in &t.coords {
        for s in subsets(t.d, l) {
            if s.iter().any(|&i| idx[i] == 0) {
                continue;
            }
            let mut next = idx.clone();
            let mut coeff = c * &weight;
            for &i in &s {
                coeff *= Rational::from_integer(idx[i].into());
                next[i] -= 1;
            }
            out.add_unchecked(next, coeff);
        }
    }
    Ok(out)
}

/// `J^(ℓ)` with `J` replaced by an arbitrary endomorphism `m` of `F_k`
/// (`m[i][j]` = coefficient of `f_i` in the image of `f_j`).
pub fn apply_j_ell_with(t: &Tensor, l: usize, m: &[Vec<Rational>]) -> Result<Tensor> {
    check_ell(t.d, l)?;
    if m.len() != t.k + 1 || m.iter().any(|r| r.len() != t.k + 1) {
        return Err(Error::NonSquare {
            rows: m.len(),
            cols: m.first().map_or(0, Vec::len),
        });
    }
    let weight = Rational::from_integer(factorial(l));
    let mut out = Tensor::zero(t.k, t.d);
    for (idx, c) in &t.coords {
        for s in subsets(t.d, l) {
            // expand the image slot by slot
            let mut partial: Vec<(Vec<usize>, Rational)> = vec![(idx.clone(), c * &weight)];
            for &slot in &s {
                let col = idx[slot];
                let mut next = Vec::new();
                for (cur, v) in &partial {
                    for (row, entry) in m.iter().enumerate() {
                        let e = &entry[col];
                        if !e.is_zero() {
                            let mut n = cur.clone();
                            n[slot] = row;
                            next.push((n, v * e));
                        }
                    }
                }
                partial = next;
            }
            for (i, v) in partial {
                out.add_unchecked(i, v);
            }
        }
    }
    Ok(out)
}

/// `m^{⊗d} t`, the same endomorphism applied in every slot.
pub fn apply_in_every_slot(t: &Tensor, m: &[Vec<Rational>]) -> Tensor {
    let mut out = Tensor::zero(t.k, t.d);
    for (idx, c) in &t.coords {
        let mut partial: Vec<(Vec<usize>, Rational)> = vec![(Vec::with_capacity(t.d), c.clone())];
        for &col in idx {
            let mut next = Vec::new();
            for (cur, v) in &partial {
                for (row, entry) in m.iter().enumerate() {
                    let e = &entry[col];
                    if !e.is_zero() {
                        let mut n = cur.clone();
                        n.push(row);
                        next.push((n, v * e));
                    }
                }
            }
            partial = next;
        }
        for (i, v) in partial {
            out.add_unchecked(i, v);
        }
    }
    out
}

/// Every index tuple of `{0..k}^d` in lexicographic order.
pub(crate) fn box_tuples(k: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

/// Basis of `⋂_ℓ Ker J^(ℓ)` with default caps.
pub fn invariant_tensor_basis(k: usize, d: usize) -> Result<Vec<Tensor>> {
    invariant_tensor_basis_with(k, d, &Limits::default())
}

/// Basis of `⋂_{ℓ=1..d} Ker J^(ℓ)` inside `F_k^{⊗d}`.
///
/// Each `J^(ℓ)` lowers the weight `Σ a_s` by `ℓ`, so the kernel is computed
/// weight by weight; blocks are concatenated in increasing weight.
pub fn invariant_tensor_basis_with(k: usize, d: usize, limits: &Limits) -> Result<Vec<Tensor>> {
    limits.check_box(saturating_pow(k + 1, d))?;
    let mut blocks: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for idx in box_tuples(k, d) {
        blocks.entry(idx.iter().sum()).or_default().push(idx);
    }
    let blocks: Vec<Vec<Vec<usize>>> = blocks.into_values().collect();
    let kernels: Vec<Vec<Tensor>> = blocks
        .par_iter()
        .map(|cols| {
            let images: Vec<Vec<Tensor>> = cols
                .iter()
                .map(|idx| {
                    let t = Tensor::basis(k, idx).expect("index in box");
                    (1..=d).map(|l| apply_j_ell(&t, l).expect("l in range")).collect()
                })
                .collect();
            kernel_of_images(k, d, cols, &images)
        })
        .collect();
    Ok(kernels.into_iter().flatten().collect())
}

/// Sparse rows keyed by `(ℓ, output index)`.
type ImageRows = HashMap<(usize, Vec<usize>), Vec<(usize, Rational)>>;

/// Kernel of the linear map sending column `c` to the family `images[c]`.
fn kernel_of_images(k: usize, d: usize, cols: &[Vec<usize>], images: &[Vec<Tensor>]) -> Vec<Tensor> {
    let mut rows: ImageRows = HashMap::new();
    for (c, family) in images.iter().enumerate() {
        for (l, img) in family.iter().enumerate() {
            for (idx, v) in img.coords() {
                rows.entry((l, idx.clone()))
                    .or_default()
                    .push((c, v.clone()));
            }
        }
    }
    let mut keys: Vec<_> = rows.keys().cloned().collect();
    keys.sort();
    let mut ech = Echelon::new();
    for key in keys {
        ech.insert(integer_row(rows.remove(&key).unwrap()));
    }
    ech.nullspace(cols.len())
        .into_iter()
        .map(|v| {
            let mut t = Tensor::zero(k, d);
            let row = integer_row(v);
            for (c, x) in row {
                t.add_unchecked(cols[c].clone(), Rational::from_integer(x));
            }
            t
        })
        .collect()
}

/// Dimension of `⋂_ℓ Ker J^(ℓ)` with `J` replaced by the endomorphism `m`.
pub fn kernel_dimension_with(k: usize, d: usize, m: &[Vec<Rational>], limits: &Limits) -> Result<usize> {
    limits.check_box(saturating_pow(k + 1, d))?;
    let cols = box_tuples(k, d);
    let mut images = Vec::with_capacity(cols.len());
    for idx in &cols {
        let t = Tensor::basis(k, idx)?;
        let family = (1..=d)
            .map(|l| apply_j_ell_with(&t, l, m))
            .collect::<Result<Vec<_>>>()?;
        images.push(family);
    }
    Ok(kernel_of_images(k, d, &cols, &images).len())
}

fn check_alpha(alpha: &[usize], d: usize, k: usize) -> Result<()> {
    if alpha.len() != d {
        return Err(Error::IndexOutOfRange(format!(
            "index {alpha:?} has length {} but d = {d}",
            alpha.len()
        )));
    }
    if let Some(a) = alpha.iter().find(|&&a| a > k || a >= d) {
        return Err(Error::IndexOutOfRange(format!(
            "entry {a} of {alpha:?} exceeds k = {k} or d-1 = {}",
            d.saturating_sub(1)
        )));
    }
    Ok(())
}

/// Column `(J^T)^a v` where `v = (entry(0), …, entry(d-1))`:
/// position `i` holds `i!/(i-a)! · entry(i-a)`.
pub(crate) fn shifted_column<F: Fn(usize) -> Poly>(a: usize, d: usize, entry: F) -> Vec<Poly> {
    (0..d)
        .map(|i| {
            if i < a {
                Poly::zero()
            } else {
                entry(i - a).scale(&Rational::from_integer(falling(i, a)))
            }
        })
        .collect()
}

/// `W_α = det((J^T)^{α_1} v_1, …, (J^T)^{α_d} v_d)` with `v_s = (Y_s^(0), …, Y_s^(d-1))`.
pub fn wronskian_w(alpha: &[usize], d: usize, k: usize) -> Result<Poly> {
    check_alpha(alpha, d, k)?;
    let columns: Vec<Vec<Poly>> = alpha
        .iter()
        .enumerate()
        .map(|(s, &a)| shifted_column(a, d, |t| Poly::var(VarId::y(s + 1, t))))
        .collect();
    determinant(&from_columns(&columns))
}

/// The indices `(α_1..α_d)` with `0 <= α_i <= i-1`, in lexicographic order.
pub fn canonical_wronskian_indices(d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for i in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=i).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

/// The tensor of a multilinear polynomial in `Y_1..Y_d`.
pub fn from_multilinear(p: &Poly, k: usize, d: usize) -> Result<Tensor> {
    let mut t = Tensor::zero(k, d);
    for (m, c) in p.terms() {
        let mut idx = vec![usize::MAX; d];
        for &(v, e) in m.exponents() {
            match v {
                VarId::TensorY { slot, order }
                    if e == 1
                        && (1..=d).contains(&(slot as usize))
                        && idx[slot as usize - 1] == usize::MAX =>
                {
                    idx[slot as usize - 1] = order as usize;
                }
                other => {
                    return Err(Error::InvalidIndex(format!(
                        "{other} in {m} is not a multilinear slot variable"
                    )))
                }
            }
        }
        if idx.contains(&usize::MAX) {
            return Err(Error::InvalidIndex(format!("{m} misses a slot")));
        }
        t.add_coord(idx, c.clone())?;
    }
    Ok(t)
}

/// The multilinear polynomial `Σ c_a Π_s Y_s^(a_s)` of a tensor.
pub fn to_multilinear(t: &Tensor) -> Poly {
    Poly::from_terms(t.coords.iter().map(|(idx, c)| {
        let m = Monomial::from_pairs(idx.iter().enumerate().map(|(s, &a)| (VarId::y(s + 1, a), 1)));
        (m, c.clone())
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WronskianReport {
    pub d: usize,
    pub count: usize,
    pub rank: usize,
    pub invariant_dimension: usize,
    /// Indices whose `W_α` fell outside the invariant span.
    pub outside: Vec<Vec<usize>>,
    pub passed: bool,
}

/// Checks that the `d!` Wronskians `W_α`, `0 <= α_i <= i-1`, lie in
/// `(F_{d-1}^{⊗d})^U` and are linearly independent.
pub fn verify_wronskian_basis(d: usize, limits: &Limits) -> Result<WronskianReport> {
    let k = d.saturating_sub(1);
    let inv = invariant_tensor_basis_with(k, d, limits)?;
    let mut span = Echelon::new();
    for t in &inv {
        span.insert(integer_row(t.row()));
    }
    let mut outside = Vec::new();
    let mut family = Echelon::new();
    let indices = canonical_wronskian_indices(d);
    for alpha in &indices {
        let t = from_multilinear(&wronskian_w(alpha, d, k)?, k, d)?;
        let row = integer_row(t.row());
        if !span.contains(&row) {
            outside.push(alpha.clone());
        }
        family.insert(row);
    }
    let count = indices.len();
    let rank = family.rank();
    Ok(WronskianReport {
        d,
        count,
        rank,
        invariant_dimension: inv.len(),
        passed: outside.is_empty() && rank == count && rank == inv.len(),
        outside,
    })
}

/// `g(f_{b_1} ⊗ … ⊗ f_{b_d}) = Π Z_i^{b_i} / (k!)^d`, extended linearly.
pub fn to_harmonic(t: &Tensor) -> Poly {
    let denom = Rational::from_integer(factorial(t.k).pow(t.d as u32));
    Poly::from_terms(t.coords.iter().map(|(idx, c)| {
        let m = Monomial::from_pairs(idx.iter().enumerate().map(|(i, &b)| (VarId::z(i + 1), b as u32)));
        (m, c / &denom)
    }))
}

/// The tensor `J^{α_1} f_k ⊗ … ⊗ J^{α_d} f_k` in the `f` basis.
pub fn from_j_basis(alpha: &[usize], k: usize) -> Result<Tensor> {
    if let Some(a) = alpha.iter().find(|&&a| a > k) {
        return Err(Error::IndexOutOfRange(format!("J^{a} f_{k} with {a} > {k}")));
    }
    let coeff: BigInt = alpha.iter().map(|&a| falling(k, a)).product();
    let idx: Vec<usize> = alpha.iter().map(|&a| k - a).collect();
    Ok(Tensor::basis(k, &idx)?.scale(&Rational::from_integer(coeff)))
}

/// `D_ℓ = Σ over ordered distinct slots ∂^ℓ/∂Z_{i_1}…∂Z_{i_ℓ}` applied to `p`.
pub fn d_ell(p: &Poly, d: usize, l: usize) -> Poly {
    let weight = Rational::from_integer(factorial(l));
    let mut out = Poly::zero();
    for s in subsets(d, l) {
        let mut q = p.clone();
        for i in s {
            q = q.partial_derivative(VarId::z(i + 1));
        }
        out.add_assign_ref(&q.scale(&weight));
    }
    out
}

/// Reads `t` as a multilinear polynomial and substitutes
/// `Y_s^(t) ↦ X_{assignment[s-1]}^(t)`.
pub fn project_to_symmetric(t: &Tensor, assignment: &[usize]) -> Result<Poly> {
    if assignment.len() != t.d {
        return Err(Error::InvalidIndex(format!(
            "slot assignment of length {} for d = {}",
            assignment.len(),
            t.d
        )));
    }
    let map: HashMap<VarId, Poly> = assignment
        .iter()
        .enumerate()
        .flat_map(|(s, &var)| (0..=t.k).map(move |o| (VarId::y(s + 1, o), Poly::var(VarId::x(var, o)))))
        .collect();
    to_multilinear(t).substitute(&map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{is_diff_homogeneous, JetContext};
    use crate::poly::int;

    fn y(s: usize, t: usize) -> Poly {
        Poly::var(VarId::y(s, t))
    }
    fn x(i: usize, j: usize) -> Poly {
        Poly::var(VarId::x(i, j))
    }
    fn z(i: usize) -> Poly {
        Poly::var(VarId::z(i))
    }
    fn f(k: usize, idx: &[usize]) -> Tensor {
        Tensor::basis(k, idx).unwrap()
    }

    #[test]
    fn model_is_maximally_nilpotent() {
        for k in 0..5 {
            let top = f(k, &[k]);
            let mut t = top.clone();
            for _ in 0..k {
                t = apply_j_ell(&t, 1).unwrap();
            }
            assert_eq!(t, f(k, &[0]).scale(&Rational::from_integer(factorial(k))));
            assert!(apply_j_ell(&t, 1).unwrap().is_zero());
        }
    }

    #[test]
    fn j_ell_examples() {
        assert_eq!(apply_j_ell(&f(1, &[1, 0]), 1).unwrap(), f(1, &[0, 0]));
        assert_eq!(
            apply_j_ell(&f(1, &[1, 1]), 2).unwrap(),
            f(1, &[0, 0]).scale(&int(2))
        );
        assert!(apply_j_ell(&f(1, &[0, 0]), 1).unwrap().is_zero());
        assert!(apply_j_ell(&f(1, &[0, 0]), 3).is_err());
        assert!(apply_j_ell(&f(1, &[0, 0]), 0).is_err());
    }

    #[test]
    fn general_matrix_agrees_with_model() {
        let m = NilpotentModel::new(2).matrix();
        for idx in box_tuples(2, 3) {
            let t = f(2, &idx);
            for l in 1..=3 {
                assert_eq!(apply_j_ell(&t, l).unwrap(), apply_j_ell_with(&t, l, &m).unwrap());
            }
        }
    }

    #[test]
    fn invariant_dimensions() {
        assert_eq!(invariant_tensor_basis(1, 2).unwrap().len(), 2);
        assert_eq!(invariant_tensor_basis(2, 3).unwrap().len(), 6);
        assert_eq!(invariant_tensor_basis(1, 4).unwrap().len(), 6);
        // d = 1: only f_0 survives
        let b = invariant_tensor_basis(3, 1).unwrap();
        assert_eq!(b, vec![f(3, &[0])]);
    }

    #[test]
    fn box_cap() {
        let limits = Limits {
            max_box: 7,
            ..Limits::default()
        };
        assert!(invariant_tensor_basis_with(1, 3, &limits)
            .unwrap_err()
            .is_resource_limit());
    }

    #[test]
    fn wronskian_examples() {
        assert_eq!(
            wronskian_w(&[0, 0], 2, 1).unwrap(),
            &(&y(1, 0) * &y(2, 1)) - &(&y(2, 0) * &y(1, 1))
        );
        assert_eq!(wronskian_w(&[0, 1], 2, 1).unwrap(), &y(1, 0) * &y(2, 0));
        assert!(wronskian_w(&[0, 2], 2, 1).is_err());
        // equal columns after substitution vanish
        let t = from_multilinear(&wronskian_w(&[0, 0], 2, 1).unwrap(), 1, 2).unwrap();
        assert!(project_to_symmetric(&t, &[0, 0]).unwrap().is_zero());
    }

    #[test]
    fn wronskian_family_is_a_basis() {
        for d in 1..=4 {
            let r = verify_wronskian_basis(d, &Limits::default()).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.rank, (1..=d).product::<usize>());
        }
    }

    #[test]
    fn multilinear_round_trip() {
        let w = wronskian_w(&[0, 0, 1], 3, 2).unwrap();
        let t = from_multilinear(&w, 2, 3).unwrap();
        assert_eq!(to_multilinear(&t), w);
        assert!(from_multilinear(&(&y(1, 0) * &y(1, 1)), 1, 2).is_err());
    }

    #[test]
    fn harmonic_map_examples() {
        let g = |alpha: &[usize]| to_harmonic(&from_j_basis(alpha, 1).unwrap());
        assert_eq!(g(&[0, 1]), z(1));
        assert_eq!(g(&[1, 1]), Poly::one());
        assert_eq!(g(&[0, 0]), &z(1) * &z(2));
        // k = 2: J^1 f_2 = 2 f_1, so g = 2 Z1 / 2! = Z1
        assert_eq!(to_harmonic(&from_j_basis(&[1], 2).unwrap()), z(1));
    }

    #[test]
    fn intertwining_on_basis() {
        for (k, d) in [(1, 2), (1, 3), (2, 3)] {
            for idx in box_tuples(k, d) {
                let t = f(k, &idx);
                for l in 1..=d {
                    let lhs = to_harmonic(&apply_j_ell(&t, l).unwrap());
                    let rhs = d_ell(&to_harmonic(&t), d, l);
                    assert_eq!(lhs, rhs, "k={k} d={d} idx={idx:?} l={l}");
                }
            }
        }
    }

    #[test]
    fn projection_examples() {
        let w00 = from_multilinear(&wronskian_w(&[0, 0], 2, 1).unwrap(), 1, 2).unwrap();
        assert_eq!(
            project_to_symmetric(&w00, &[0, 1]).unwrap(),
            &(&x(0, 0) * &x(1, 1)) - &(&x(1, 0) * &x(0, 1))
        );
        let w01 = from_multilinear(&wronskian_w(&[0, 1], 2, 1).unwrap(), 1, 2).unwrap();
        assert_eq!(project_to_symmetric(&w01, &[0, 1]).unwrap(), &x(0, 0) * &x(1, 0));
    }

    #[test]
    fn projections_of_invariants_are_homogeneous() {
        let ctx = JetContext::new(2, 3, 2).unwrap();
        for t in invariant_tensor_basis(2, 3).unwrap() {
            for assignment in box_tuples(2, 3) {
                let p = project_to_symmetric(&t, &assignment).unwrap();
                assert!(is_diff_homogeneous(&p, 3, &ctx), "{t} via {assignment:?}");
            }
        }
    }

    #[test]
    fn rendering() {
        let t = f(1, &[0, 1]).sub(&f(1, &[1, 0]).scale(&int(2)));
        assert_eq!(t.to_string(), "f(0,1) - 2*f(1,0)");
    }
}
