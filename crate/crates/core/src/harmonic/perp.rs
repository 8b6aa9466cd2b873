use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::ideal::{dcp_generators, ideal_membership, IdealPresentation};
use super::partition::{delta_t, enum_standard_tableaux, mu_k, Partition};
use crate::error::Result;
use crate::limits::{saturating_pow, Limits};
use crate::linalg::{integer_row, Echelon, PolySpan};
use crate::poly::{Monomial, Poly, Rational, VarId};
use crate::tensor::{
    apply_j_ell, box_tuples, canonical_wronskian_indices, from_multilinear, invariant_tensor_basis_with,
    wronskian_w, Tensor,
};

/// Monomials `Z_1^{a_1}…Z_n^{a_n}` with every `a_i <= bound`, lexicographic in `a`.
pub fn box_monomials(n: usize, bound: usize) -> Vec<Monomial> {
    box_tuples(bound, n)
        .into_iter()
        .map(|a| Monomial::from_pairs(a.into_iter().enumerate().map(|(i, e)| (VarId::z(i + 1), e as u32))))
        .collect()
}

fn within_box(m: &Monomial, bound: usize) -> bool {
    m.exponents().iter().all(|&(_, e)| e as usize <= bound)
}

/// Common solutions of `Q(∂) f = 0`, `Q` ranging over the generators, among
/// polynomials of degree at most `bound` in each variable.
///
/// This is the whole perp space as soon as the ideal contains every
/// `Z_i^{bound+1}`. For homogeneous generators the system splits by degree;
/// the basis lists degree blocks in increasing order.
pub fn perp_basis(ideal: &IdealPresentation, bound: usize, limits: &Limits) -> Result<Vec<Poly>> {
    limits.check_box(saturating_pow(bound + 1, ideal.nvars))?;
    let columns = box_monomials(ideal.nvars, bound);
    let blocks: Vec<Vec<Monomial>> = if ideal.is_homogeneous() {
        let mut by_degree: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
        for m in columns {
            by_degree.entry(m.degree()).or_default().push(m);
        }
        by_degree.into_values().collect()
    } else {
        vec![columns]
    };
    let mut basis = Vec::new();
    for cols in blocks {
        let mut rows: BTreeMap<(usize, Monomial), Vec<(usize, Rational)>> = BTreeMap::new();
        for (c, m) in cols.iter().enumerate() {
            let target = Poly::term(Rational::from_integer(1.into()), m.clone());
            for (g, q) in ideal.generators.iter().enumerate() {
                for (mono, v) in q.apply_as_operator(&target).terms() {
                    rows.entry((g, mono.clone())).or_default().push((c, v.clone()));
                }
            }
        }
        let mut ech = Echelon::new();
        for (_, r) in rows {
            ech.insert(integer_row(r));
        }
        for v in ech.nullspace(cols.len()) {
            basis.push(Poly::from_terms(v.into_iter().map(|(c, x)| (cols[c].clone(), x))).primitive());
        }
    }
    Ok(basis)
}

/// `dim Q[Z]/J` for an ideal `J` containing every `Z_i^{bound+1}`: the box
/// dimension minus the rank of the products `m·g` truncated to the box.
pub fn quotient_dimension_of(ideal: &IdealPresentation, bound: usize, limits: &Limits) -> Result<usize> {
    let size = saturating_pow(bound + 1, ideal.nvars);
    limits.check_box(size)?;
    let monomials = box_monomials(ideal.nvars, bound);
    let mut span = PolySpan::new();
    for g in &ideal.generators {
        for m in &monomials {
            let reduced = Poly::from_terms(
                g.mul_monomial(m)
                    .terms()
                    .filter(|(mono, _)| within_box(mono, bound))
                    .map(|(mono, c)| (mono.clone(), c.clone())),
            );
            if !reduced.is_zero() {
                span.insert(&reduced);
            }
        }
    }
    Ok(size - span.rank())
}

/// `dim Q[Z_1..Z_d] / (e_1, …, e_d, Z_1^{k+1}, …, Z_d^{k+1})`.
pub fn quotient_dimension(d: usize, k: usize, limits: &Limits) -> Result<usize> {
    quotient_dimension_of(&IdealPresentation::ik(d, k), k, limits)
}

/// `d! / ((q!)^{k+1-r} ((q+1)!)^r)` with `d = q(k+1) + r`.
pub fn closed_form_dimension(d: usize, k: usize) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    let q = d / (k + 1);
    let r = d % (k + 1);
    fact(d) / (fact(q).pow((k + 1 - r) as u32) * fact(q + 1).pow(r as u32))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpanningReport {
    pub mu: String,
    pub d: usize,
    pub tableaux: usize,
    /// Rank of all derivatives of all `Δ(T)`.
    pub rank: usize,
    /// `dim I_μ^⊥`.
    pub dimension: usize,
    pub dimension_method: String,
    pub bound_certified: bool,
    /// Every `Δ(T)` is killed by every generator of `I_μ`.
    pub in_perp: bool,
    pub passed: bool,
}

/// Checks that the `Δ(T)`, `T` standard of shape `μ`, and all their
/// derivatives span `I_μ^⊥`.
pub fn verify_spanning(mu: &Partition, limits: &Limits) -> Result<SpanningReport> {
    let d = mu.size();
    let bound = mu.length().saturating_sub(1);
    let dcp = dcp_generators(mu);
    let (dimension, method, bound_certified) = if *mu == mu_k(d, bound) {
        let ik = IdealPresentation::ik(d, bound);
        (perp_basis(&ik, bound, limits)?.len(), format!("perp of I_k, k={bound}"), true)
    } else {
        // the box truncation is exact only if Z_i^{bound+1} lies in the ideal
        let power = Poly::var(VarId::z(1)).pow(bound as u32 + 1);
        let certified = ideal_membership(&power, &dcp, bound as u32 + 1, limits)?;
        let dim = quotient_dimension_of(&dcp, bound, limits)?;
        (dim, "quotient by C_mu".to_string(), certified)
    };

    let tableaux = enum_standard_tableaux(mu, limits)?;
    let mut in_perp = true;
    let mut span = PolySpan::new();
    for t in &tableaux {
        let delta = delta_t(t);
        in_perp &= dcp.generators.iter().all(|g| g.apply_as_operator(&delta).is_zero());
        let degree = delta.total_degree().unwrap_or(0) as usize;
        let bounds: Vec<usize> = (1..=d).map(|i| delta.degree_in(VarId::z(i)) as usize).collect();
        let top = bounds.iter().copied().max().unwrap_or(0);
        for beta in box_tuples(top, d) {
            if beta.iter().sum::<usize>() > degree || beta.iter().zip(&bounds).any(|(b, m)| b > m) {
                continue;
            }
            let op = Monomial::from_pairs(beta.iter().enumerate().map(|(i, &b)| (VarId::z(i + 1), b as u32)));
            let image = delta.apply_monomial_operator(&op);
            if !image.is_zero() {
                span.insert(&image);
            }
        }
    }
    Ok(SpanningReport {
        mu: mu.to_string(),
        d,
        tableaux: tableaux.len(),
        rank: span.rank(),
        dimension,
        dimension_method: method,
        bound_certified,
        in_perp,
        passed: bound_certified && in_perp && span.rank() == dimension,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockReport {
    pub d: usize,
    pub k: usize,
    pub q: usize,
    pub r: usize,
    /// Block decompositions (or permutations, after escalation) visited.
    pub arrangements: usize,
    pub products: usize,
    pub escalated: bool,
    pub all_invariant: bool,
    pub rank: usize,
    /// `quotient_dimension(d, k)`.
    pub target: usize,
    /// Dimension of the invariant tensors computed directly.
    pub invariant_dimension: usize,
    pub passed: bool,
}

/// Set partitions of `items` into blocks of size `size`, each block led by
/// its smallest element.
fn equal_blocks(items: &[usize], size: usize) -> Vec<Vec<Vec<usize>>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let head = items[0];
    let rest = &items[1..];
    let mut out = Vec::new();
    for pick in crate::tensor::subsets(rest.len(), size - 1) {
        let mut block = vec![head];
        block.extend(pick.iter().map(|&i| rest[i]));
        let remaining: Vec<usize> = rest
            .iter()
            .enumerate()
            .filter(|(i, _)| !pick.contains(i))
            .map(|(_, &x)| x)
            .collect();
        for mut tail in equal_blocks(&remaining, size) {
            tail.insert(0, block.clone());
            out.push(tail);
        }
    }
    out
}

/// Decompositions of `1..=d` into `q` unordered blocks of size `k+1` followed
/// by one block of size `r`.
fn block_decompositions(d: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    let r = d % (k + 1);
    let all: Vec<usize> = (1..=d).collect();
    let mut out = Vec::new();
    for pick in crate::tensor::subsets(d, r) {
        let small: Vec<usize> = pick.iter().map(|&i| all[i]).collect();
        let rest: Vec<usize> = all.iter().copied().filter(|x| !small.contains(x)).collect();
        for mut blocks in equal_blocks(&rest, k + 1) {
            if r > 0 {
                blocks.push(small.clone());
            }
            out.push(blocks);
        }
    }
    out
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for n in 1..=d {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=p.len()).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, n);
                    q
                })
            })
            .collect();
    }
    out
}

/// Relabels slot `s` of a multilinear polynomial to `slots[s-1]`.
fn relabel(p: &Poly, slots: &[usize], max_order: usize) -> Result<Poly> {
    let map: HashMap<VarId, Poly> = slots
        .iter()
        .enumerate()
        .flat_map(|(s, &target)| (0..=max_order).map(move |t| (VarId::y(s + 1, t), Poly::var(VarId::y(target, t)))))
        .collect();
    p.substitute(&map)
}

/// Products of block Wronskian bases span `(F_k^{⊗d})^U`.
///
/// With `d = q(k+1) + r`, each block of size `m` carries the `m!` Wronskians
/// `W_α` of size `m`. Unordered block decompositions are tried first; if the
/// rank falls short, every permutation of the slots is tried as well.
pub fn verify_block_surjectivity(d: usize, k: usize, limits: &Limits) -> Result<BlockReport> {
    let q = d / (k + 1);
    let r = d % (k + 1);
    let target = quotient_dimension(d, k, limits)?;
    let invariant_dimension = invariant_tensor_basis_with(k, d, limits)?.len();
    let basis_of = |m: usize| -> Result<Vec<Poly>> {
        canonical_wronskian_indices(m)
            .iter()
            .map(|alpha| wronskian_w(alpha, m, m.saturating_sub(1)))
            .collect()
    };
    let big = basis_of(k + 1)?;
    let small = basis_of(r)?;

    let mut ech = Echelon::new();
    let mut all_invariant = true;
    let mut arrangements = 0;
    let mut products = 0;
    let mut visit = |blocks: &[Vec<usize>], ech: &mut Echelon| -> Result<()> {
        arrangements += 1;
        let mut partial: Vec<Poly> = vec![Poly::one()];
        for block in blocks {
            let family = if block.len() == k + 1 { &big } else { &small };
            let moved: Vec<Poly> = family
                .iter()
                .map(|w| relabel(w, block, k))
                .collect::<Result<_>>()?;
            partial = partial
                .iter()
                .flat_map(|acc| moved.iter().map(move |w| acc * w))
                .collect();
        }
        for p in partial {
            products += 1;
            let t: Tensor = from_multilinear(&p, k, d)?;
            for l in 1..=d {
                all_invariant &= apply_j_ell(&t, l)?.is_zero();
            }
            ech.insert(integer_row(t.row()));
        }
        Ok(())
    };

    for blocks in block_decompositions(d, k) {
        if ech.rank() >= target {
            break;
        }
        visit(&blocks, &mut ech)?;
    }
    let mut escalated = false;
    if ech.rank() < target {
        escalated = true;
        limits.check_enumeration((1..=d).product())?;
        for sigma in permutations(d) {
            if ech.rank() >= target {
                break;
            }
            let mut blocks: Vec<Vec<usize>> = sigma[..q * (k + 1)].chunks(k + 1).map(<[usize]>::to_vec).collect();
            if r > 0 {
                blocks.push(sigma[q * (k + 1)..].to_vec());
            }
            visit(&blocks, &mut ech)?;
        }
    }
    let rank = ech.rank();
    Ok(BlockReport {
        d,
        k,
        q,
        r,
        arrangements,
        products,
        escalated,
        all_invariant,
        rank,
        target,
        invariant_dimension,
        passed: all_invariant && rank == target && target == invariant_dimension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::partition::{delta_t, YoungTableau};

    fn z(i: usize) -> Poly {
        Poly::var(VarId::z(i))
    }
    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts, parts.iter().sum()).unwrap()
    }
    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn perp_examples() {
        let b = perp_basis(&IdealPresentation::ik(2, 1), 1, &lim()).unwrap();
        assert_eq!(b.len(), 2);
        let mut span = PolySpan::new();
        for q in &b {
            span.insert(q);
        }
        assert!(span.contains(&Poly::one()));
        assert!(span.contains(&(&z(1) - &z(2))));
        assert_eq!(perp_basis(&IdealPresentation::ik(4, 1), 1, &lim()).unwrap().len(), 6);
        assert_eq!(perp_basis(&IdealPresentation::ik(3, 2), 2, &lim()).unwrap().len(), 6);
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(quotient_dimension(2, 1, &lim()).unwrap(), 2);
        assert_eq!(quotient_dimension(4, 1, &lim()).unwrap(), 6);
        assert_eq!(quotient_dimension(5, 2, &lim()).unwrap(), 30);
    }

    #[test]
    fn closed_form_values() {
        let got: Vec<u128> = [(2, 1), (3, 1), (4, 1), (3, 2), (5, 2)]
            .iter()
            .map(|&(d, k)| closed_form_dimension(d, k))
            .collect();
        assert_eq!(got, [2, 3, 6, 6, 30]);
    }

    #[test]
    fn spanning() {
        for parts in [&[1, 1][..], &[1, 1, 1], &[2, 2], &[2, 3]] {
            let r = verify_spanning(&p(parts), &lim()).unwrap();
            assert!(r.passed, "{r:?}");
        }
        let r = verify_spanning(&p(&[2, 2]), &lim()).unwrap();
        assert_eq!((r.rank, r.dimension, r.tableaux), (6, 6, 2));
    }

    #[test]
    fn spanning_for_shape_outside_the_mu_k_family() {
        // (1,3) is not μ_k(4, 1) = (2,2); its dimension is 4!/(1!·3!) = 4.
        let r = verify_spanning(&p(&[1, 3]), &lim()).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.dimension, 4);
        assert!(r.dimension_method.starts_with("quotient"));
    }

    #[test]
    fn deltas_are_harmonic() {
        let t = YoungTableau::new(p(&[2, 2]), vec![vec![1, 2], vec![3, 4]]).unwrap();
        let delta = delta_t(&t);
        for g in IdealPresentation::ik(4, 1).generators {
            assert!(g.apply_as_operator(&delta).is_zero());
        }
    }

    #[test]
    fn block_decomposition_counts() {
        assert_eq!(block_decompositions(4, 1).len(), 3);
        assert_eq!(block_decompositions(3, 1).len(), 3);
        assert_eq!(block_decompositions(2, 1).len(), 1);
        assert_eq!(block_decompositions(6, 2).len(), 10);
    }

    #[test]
    fn block_surjectivity() {
        for (d, k, rank) in [(4, 1, 6), (3, 1, 3), (2, 1, 2), (5, 2, 30)] {
            let r = verify_block_surjectivity(d, k, &lim()).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.rank, rank);
            assert!(!r.escalated);
        }
    }
}
