use std::collections::BTreeMap;
use std::fmt;

use num::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::{binomial, saturating_pow, Limits};
use crate::tensor::subsets;

/// An element of `Σ_d` together with its membership witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexTuple {
    pub alpha: Vec<usize>,
    /// Largest 1-based position `i` with `α_i = 0` whose deletion leaves
    /// `α̂_j <= j-1` for every `j`.
    pub witness: usize,
}

impl IndexTuple {
    /// Last 1-based position holding a zero: the class `k` with `α ∈ Σ_d^k`.
    pub fn class(&self) -> usize {
        last_zero(&self.alpha).expect("members of Σ_d contain a zero")
    }
}

fn last_zero(alpha: &[usize]) -> Option<usize> {
    alpha.iter().rposition(|&a| a == 0).map(|p| p + 1)
}

/// Whether deleting 1-based slot `i` leaves a tuple with `α̂_j <= j-1`.
fn deletion_ok(alpha: &[usize], i: usize) -> bool {
    alpha
        .iter()
        .enumerate()
        .filter(|&(p, _)| p + 1 != i)
        .map(|(_, &a)| a)
        .enumerate()
        .all(|(j, a)| a <= j)
}

/// Largest valid witness, or `None` if `α ∉ Σ_d`.
pub fn sigma_witness(alpha: &[usize]) -> Option<usize> {
    (1..=alpha.len())
        .rev()
        .find(|&i| alpha[i - 1] == 0 && deletion_ok(alpha, i))
}

/// `|Σ_d^k| = (d-1)!·(k-1)/(d-1)` for `d >= 2`.
pub fn sigma_class_formula(d: usize, k: usize) -> usize {
    if d < 2 {
        return usize::from(k == 1 && d == 1);
    }
    let f: usize = (1..d).product();
    f * (k - 1) / (d - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SigmaEnumeration {
    pub d: usize,
    pub elements: Vec<IndexTuple>,
    /// `k ↦ |Σ_d^k|` for `1 <= k <= d`.
    pub classes: BTreeMap<usize, usize>,
    /// Members whose largest witness differs from their last zero.
    pub witness_mismatches: Vec<Vec<usize>>,
}

/// `Σ_d`, searched in the box `{0..d-1}^d` in lexicographic order.
pub fn enum_sigma_d(d: usize, limits: &Limits) -> Result<SigmaEnumeration> {
    limits.check_enumeration(saturating_pow(d, d))?;
    let mut elements = Vec::new();
    let mut classes: BTreeMap<usize, usize> = (1..=d).map(|k| (k, 0)).collect();
    let mut witness_mismatches = Vec::new();
    for alpha in crate::tensor::box_tuples(d.saturating_sub(1), d) {
        if let Some(witness) = sigma_witness(&alpha) {
            let t = IndexTuple { alpha, witness };
            if t.class() != witness {
                witness_mismatches.push(t.alpha.clone());
            }
            *classes.entry(t.class()).or_default() += 1;
            elements.push(t);
        }
    }
    Ok(SigmaEnumeration {
        d,
        elements,
        classes,
        witness_mismatches,
    })
}

/// `(α_0, …, α_N)`, each `α_i` empty or strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NestedIndex {
    pub uples: Vec<Vec<usize>>,
}

impl NestedIndex {
    pub fn new(uples: Vec<Vec<usize>>) -> Self {
        NestedIndex { uples }
    }

    /// `m(α) = (r_0, …, r_N)`.
    pub fn lengths(&self) -> Vec<usize> {
        self.uples.iter().map(Vec::len).collect()
    }

    pub fn degree(&self) -> usize {
        self.uples.iter().map(Vec::len).sum()
    }

    /// `(α_{0,1}, …, α_{0,r_0}, α_{1,1}, …, α_{N,r_N})`.
    pub fn flatten(&self) -> Vec<usize> {
        self.uples.iter().flatten().copied().collect()
    }

    /// `R_i = r_0 + … + r_i`.
    fn partial_sums(&self) -> Vec<usize> {
        self.lengths()
            .iter()
            .scan(0, |acc, &r| {
                *acc += r;
                Some(*acc)
            })
            .collect()
    }

    /// Conditions (1) to (3): strictly increasing entries below `R_i`, total length `d`.
    pub fn is_admissible(&self, d: usize) -> bool {
        let sums = self.partial_sums();
        self.degree() == d
            && self.uples.iter().zip(&sums).all(|(u, &bound)| {
                u.windows(2).all(|w| w[0] < w[1]) && u.last().is_none_or(|&last| last < bound)
            })
    }

    /// Indices `i` at which the existential condition (4) holds.
    pub fn condition4_witnesses(&self) -> Vec<usize> {
        let sums = self.partial_sums();
        // tail_ok[i]: every j > i has α_{j,r_j} < R_j - 1 (or α_j empty)
        let n = self.uples.len();
        let mut tail_ok = vec![true; n];
        for i in (0..n.saturating_sub(1)).rev() {
            let j = i + 1;
            let here = self.uples[j]
                .last()
                .is_none_or(|&last| last + 1 < sums[j]);
            tail_ok[i] = tail_ok[j] && here;
        }
        (0..n)
            .filter(|&i| {
                let u = &self.uples[i];
                u.first() == Some(&0)
                    && (u.len() <= 1 || u[u.len() - 1] + 1 < sums[i])
                    && tail_ok[i]
            })
            .collect()
    }

    /// Membership in `Σ̄_d`: conditions (1) to (4).
    pub fn is_in_sigma_bar(&self, d: usize) -> bool {
        self.is_admissible(d) && !self.condition4_witnesses().is_empty()
    }

    /// The last `ℓ` with `α_{ℓ,1} = 0`.
    pub fn class(&self) -> Option<usize> {
        self.uples.iter().rposition(|u| u.first() == Some(&0))
    }
}

impl fmt::Display for NestedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .uples
            .iter()
            .map(|u| {
                let inner: Vec<String> = u.iter().map(|a| a.to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `|Σ̄_d|`: `N+1` for `d = 1`, `N(N+1)/2 · (N+1)^{d-2}` for `d >= 2`.
pub fn sigma_bar_count(n: usize, d: usize) -> u128 {
    let n = n as u128;
    match d {
        0 => 0,
        1 => n + 1,
        _ => n * (n + 1) / 2 * (n + 1).pow(d as u32 - 2),
    }
}

/// The count stated with `N^{d-2}` in place of `(N+1)^{d-2}`; kept to
/// compare against the literal generator counts.
pub fn final_theorem_count(n: usize, d: usize) -> u128 {
    let n = n as u128;
    match d {
        0 => 0,
        1 => n + 1,
        _ => n * (n + 1) / 2 * n.pow(d as u32 - 2),
    }
}

/// Compositions `(r_0, …, r_N)` of `d`, lexicographically decreasing in `r_0`.
pub fn compositions(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(parts: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for r in (0..=left).rev() {
            cur.push(r);
            rec(parts - 1, left - r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n + 1, d, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SigmaBarEnumeration {
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    pub elements: Vec<NestedIndex>,
    /// `ℓ ↦ |Σ̄_d^ℓ|`.
    pub classes: BTreeMap<usize, usize>,
    /// Members whose class differs from the last index satisfying (4).
    pub class_mismatches: Vec<NestedIndex>,
    /// For `d = 1`: whether the enumeration equals the `N+1` singletons.
    pub singleton_check: Option<bool>,
}

/// The `N+1` indices with one `(0)` and all other entries empty.
pub fn sigma_bar_one(n: usize) -> Vec<NestedIndex> {
    (0..=n)
        .map(|i| {
            let mut uples = vec![Vec::new(); n + 1];
            uples[i] = vec![0];
            NestedIndex::new(uples)
        })
        .collect()
}

/// `Σ̄_d`: compositions first, then strictly increasing tuples below the
/// partial sums, filtered by condition (4).
pub fn enum_sigma_bar(n: usize, d: usize, limits: &Limits) -> Result<SigmaBarEnumeration> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("N must be at least 1".into()));
    }
    let comps = compositions(n, d);
    let mut candidates: usize = 0;
    for m in &comps {
        let mut sum = 0;
        let mut prod: usize = 1;
        for &r in m {
            sum += r;
            prod = prod.saturating_mul(binomial(sum, r));
        }
        candidates = candidates.saturating_add(prod);
    }
    limits.check_enumeration(candidates)?;

    let mut elements = Vec::new();
    for m in comps {
        let mut partial: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        let mut sum = 0;
        for &r in &m {
            sum += r;
            let choices = subsets(sum, r);
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    choices.iter().map(move |c| {
                        let mut q = p.clone();
                        q.push(c.clone());
                        q
                    })
                })
                .collect();
        }
        elements.extend(
            partial
                .into_iter()
                .map(NestedIndex::new)
                .filter(|idx| !idx.condition4_witnesses().is_empty()),
        );
    }
    let mut classes: BTreeMap<usize, usize> = (0..=n).map(|l| (l, 0)).collect();
    let mut class_mismatches = Vec::new();
    for idx in &elements {
        let class = idx.class().expect("condition (4) forces a zero head");
        *classes.entry(class).or_default() += 1;
        if idx.condition4_witnesses().last() != Some(&class) {
            class_mismatches.push(idx.clone());
        }
    }
    let singleton_check = (d == 1).then(|| {
        let mut expected = sigma_bar_one(n);
        let mut got = elements.clone();
        expected.sort();
        got.sort();
        expected == got
    });
    Ok(SigmaBarEnumeration {
        n,
        d,
        elements,
        classes,
        class_mismatches,
        singleton_check,
    })
}

/// `m(f) = (|f^{-1}(0)|, …, |f^{-1}(N)|)` for a non-decreasing `f`, given as
/// the list `f(1), …, f(d)`.
pub fn composition_of(f: &[usize], n: usize) -> Result<Vec<usize>> {
    if f.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidComposition(format!("{f:?} is not non-decreasing")));
    }
    if let Some(v) = f.iter().find(|&&v| v > n) {
        return Err(Error::InvalidComposition(format!("value {v} exceeds N = {n}")));
    }
    let mut m = vec![0; n + 1];
    for &v in f {
        m[v] += 1;
    }
    Ok(m)
}

/// The non-decreasing function with fibre sizes `m`, as `f(1), …, f(d)`.
pub fn function_of(m: &[usize]) -> Result<Vec<usize>> {
    if m.is_empty() {
        return Err(Error::InvalidComposition("empty composition".into()));
    }
    Ok(m.iter()
        .enumerate()
        .flat_map(|(i, &r)| std::iter::repeat_n(i, r))
        .collect())
}

fn multinomial(total: usize, parts: &[usize]) -> BigInt {
    let fact = |n: usize| (1..=n).map(BigInt::from).product::<BigInt>();
    parts.iter().fold(fact(total), |acc, &p| acc / fact(p))
}

/// `Σ_{|m|=d} multinom(d-2; m - e_j - e_l)`, skipping `m` where a part goes negative.
pub fn multinomial_shift_sum(n: usize, d: usize, j: usize, l: usize) -> BigInt {
    compositions(n, d)
        .into_iter()
        .filter_map(|mut m| {
            if m[j] == 0 || m[l] == 0 {
                return None;
            }
            m[j] -= 1;
            m[l] -= 1;
            Some(multinomial(d - 2, &m))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn sigma_examples() {
        let s2 = enum_sigma_d(2, &lim()).unwrap();
        assert_eq!(s2.elements.iter().map(|t| t.alpha.clone()).collect::<Vec<_>>(), [vec![0, 0]]);
        let s3 = enum_sigma_d(3, &lim()).unwrap();
        let mut got: Vec<Vec<usize>> = s3.elements.iter().map(|t| t.alpha.clone()).collect();
        got.sort();
        assert_eq!(got, [vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
        assert_eq!(enum_sigma_d(4, &lim()).unwrap().elements.len(), 12);
    }

    #[test]
    fn sigma_counts_and_classes() {
        for d in 2..=6 {
            let s = enum_sigma_d(d, &lim()).unwrap();
            let fact: usize = (1..=d).product();
            assert_eq!(s.elements.len(), fact / 2);
            assert!(s.witness_mismatches.is_empty());
            assert_eq!(s.classes[&1], 0);
            for (&k, &count) in &s.classes {
                assert_eq!(count, sigma_class_formula(d, k), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn sigma_bar_examples() {
        let e = enum_sigma_bar(1, 2, &lim()).unwrap();
        assert_eq!(e.elements, vec![NestedIndex::new(vec![vec![0], vec![0]])]);
        assert_eq!(enum_sigma_bar(2, 2, &lim()).unwrap().elements.len(), 3);
        assert_eq!(enum_sigma_bar(1, 3, &lim()).unwrap().elements.len(), 2);
    }

    #[test]
    fn sigma_bar_counts() {
        for n in 1..=3 {
            for d in 1..=5 {
                let e = enum_sigma_bar(n, d, &lim()).unwrap();
                assert_eq!(e.elements.len() as u128, sigma_bar_count(n, d), "N={n} d={d}");
                assert!(e.class_mismatches.is_empty());
                assert!(e.elements.iter().all(|i| i.is_in_sigma_bar(d)));
            }
            assert_eq!(enum_sigma_bar(n, 1, &lim()).unwrap().singleton_check, Some(true));
        }
    }

    #[test]
    fn multinomial_identity() {
        for n in 1..=3 {
            for d in 2..=5 {
                for l in 1..=n {
                    for j in 0..l {
                        let expected = BigInt::from(n + 1).pow(d as u32 - 2);
                        assert_eq!(multinomial_shift_sum(n, d, j, l), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(composition_of(&[0, 0, 0], 2).unwrap(), [3, 0, 0]);
        assert_eq!(function_of(&[1, 1]).unwrap(), [0, 1]);
        assert!(composition_of(&[1, 0], 1).is_err());
        assert!(composition_of(&[0, 3], 2).is_err());
        for m in compositions(2, 4) {
            let f = function_of(&m).unwrap();
            assert_eq!(composition_of(&f, 2).unwrap(), m);
        }
    }

    #[test]
    fn rendering() {
        let idx = NestedIndex::new(vec![vec![0, 2], vec![], vec![1]]);
        assert_eq!(idx.to_string(), "((0,2),(),(1))");
        assert_eq!(idx.flatten(), [0, 2, 1]);
    }
}
