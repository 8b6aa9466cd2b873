//! Seeded randomized checks of the algebraic identities the library relies on.
//!
//! Each check draws its instances from a `ChaCha8Rng`, so a report is a pure
//! function of `(seed, instances)`. Failures carry a rendering of the
//! offending instance.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::enum_sigma_d;
use crate::error::Result;
use crate::harmonic::elementary;
use crate::jet::{act_numeric, diff_homog_basis_with, identity_specialization, act_series, product_lemma_check, JetContext};
use crate::limits::Limits;
use crate::linalg::{integer_row, Echelon};
use crate::poly::{determinant, Monomial, Poly, Rational, VarId};
use crate::tensor::{
    apply_in_every_slot, apply_j_ell, d_ell, invariant_tensor_basis_with, kernel_dimension_with,
    to_harmonic, wronskian_w, NilpotentModel, Tensor,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    report: PropertyReport,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            report: PropertyReport {
                name: name.to_string(),
                instances: 0,
                failures: Vec::new(),
            },
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.report.instances += 1;
        // keep reports small when something is badly broken
        if !ok && self.report.failures.len() < 5 {
            self.report.failures.push(describe());
        }
    }
}

/// Sub-seeds keep checks independent of each other's draw counts.
fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    let num: i64 = rng.gen_range(-5..=5);
    let den: i64 = rng.gen_range(1..=3);
    Rational::new(num.into(), den.into())
}

fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != Rational::default() {
            return r;
        }
    }
}

/// A random polynomial with at most `terms` terms of degree at most `deg`.
pub fn random_poly(rng: &mut impl Rng, vars: &[VarId], terms: usize, deg: u32) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let d = rng.gen_range(0..=deg);
        let m = Monomial::from_pairs((0..d).map(|_| (*vars.choose(rng).expect("variables"), 1)));
        p.add_term(m, small_rational(rng));
    }
    p
}

/// A random homogeneous polynomial of degree `deg`.
fn random_homogeneous(rng: &mut impl Rng, vars: &[VarId], terms: usize, deg: u32) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..terms {
        let m = Monomial::from_pairs((0..deg).map(|_| (*vars.choose(rng).expect("variables"), 1)));
        p.add_term(m, nonzero_rational(rng));
    }
    p
}

fn z_vars(n: usize) -> Vec<VarId> {
    (1..=n).map(VarId::z).collect()
}

pub fn ring_axioms(seed: u64, instances: usize) -> PropertyReport {
    let mut rng = rng_for(seed, 1);
    let mut tally = Tally::new("ring-axioms");
    let vars = z_vars(3);
    for _ in 0..instances {
        let a = random_poly(&mut rng, &vars, 4, 3);
        let b = random_poly(&mut rng, &vars, 4, 3);
        let c = random_poly(&mut rng, &vars, 4, 3);
        let ok = &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && &a * &b == &b * &a
            && &a + &b == &b + &a
            && (&(&a + &b) - &b) == a;
        tally.record(ok, || format!("a = {a}, b = {b}, c = {c}"));
    }
    tally.report
}

pub fn substitute_homomorphism(seed: u64, instances: usize) -> PropertyReport {
    let mut rng = rng_for(seed, 2);
    let mut tally = Tally::new("substitute-homomorphism");
    let vars = z_vars(3);
    for _ in 0..instances {
        let p = random_poly(&mut rng, &vars, 3, 3);
        let q = random_poly(&mut rng, &vars, 3, 3);
        let map: HashMap<VarId, Poly> = vars
            .iter()
            .map(|&v| (v, random_poly(&mut rng, &vars, 2, 2)))
            .collect();
        let lhs = (&p * &q).substitute(&map);
        let rhs = p.substitute(&map).and_then(|sp| Ok(&sp * &q.substitute(&map)?));
        let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
        tally.record(ok, || format!("p = {p}, q = {q}"));
    }
    tally.report
}

pub fn leibniz_rule(seed: u64, instances: usize) -> PropertyReport {
    let mut rng = rng_for(seed, 3);
    let mut tally = Tally::new("leibniz-rule");
    let vars = z_vars(3);
    for _ in 0..instances {
        let p = random_poly(&mut rng, &vars, 4, 3);
        let q = random_poly(&mut rng, &vars, 4, 3);
        let v = *vars.choose(&mut rng).expect("variables");
        let lhs = (&p * &q).partial_derivative(v);
        let rhs = &(&p * &q.partial_derivative(v)) + &(&q * &p.partial_derivative(v));
        tally.record(lhs == rhs, || format!("p = {p}, q = {q}, v = {v}"));
    }
    tally.report
}

/// Column swaps negate, repeated columns vanish, and scaling one column
/// scales the determinant, on random 3×3 and 4×4 matrices.
pub fn determinant_alternation(seed: u64, instances: usize) -> PropertyReport {
    let mut rng = rng_for(seed, 4);
    let mut tally = Tally::new("determinant-alternation");
    let vars = z_vars(3);
    for i in 0..instances {
        let n = 3 + i % 2;
        let m: Vec<Vec<Poly>> = (0..n)
            .map(|_| (0..n).map(|_| random_poly(&mut rng, &vars, 2, 1)).collect())
            .collect();
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        let swapped: Vec<Vec<Poly>> = m
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.swap(a, b);
                r
            })
            .collect();
        let repeated: Vec<Vec<Poly>> = m
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r[b] = r[a].clone();
                r
            })
            .collect();
        let c = random_poly(&mut rng, &vars, 2, 1);
        let scaled: Vec<Vec<Poly>> = m
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r[a] = &r[a] * &c;
                r
            })
            .collect();
        let ok = (|| -> Result<bool> {
            let det = determinant(&m)?;
            Ok(determinant(&swapped)? == -&det
                && determinant(&repeated)?.is_zero()
                && determinant(&scaled)? == &det * &c)
        })()
        .unwrap_or(false);
        tally.record(ok, || format!("{n}x{n} matrix, columns {a} and {b}"));
    }
    tally.report
}

fn random_series(rng: &mut impl Rng, k: usize) -> Vec<Rational> {
    let mut s: Vec<Rational> = (0..=k).map(|_| small_rational(rng)).collect();
    s[0] = nonzero_rational(rng);
    s
}

fn series_product(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    (0..a.len())
        .map(|m| (0..=m).map(|i| &a[i] * &b[m - i]).sum())
        .collect()
}

fn random_jet_poly(rng: &mut impl Rng, ctx: &JetContext) -> Poly {
    random_poly(rng, &ctx.jet_vars(), 3, 3)
}

fn random_context(rng: &mut impl Rng) -> JetContext {
    JetContext::new(rng.gen_range(1..=2), 3, rng.gen_range(0..=2)).expect("positive dimension")
}

/// `β·(α·P) = (αβ)·P` with numeric series truncated at order `k`.
pub fn action_group_law(seed: u64, instances: usize) -> PropertyReport {
    let mut rng = rng_for(seed, 5);
    let mut tally = Tally::new("action-group-law");
    for _ in 0..instances {
        let ctx = random_context(&mut rng);
        let p = random_jet_poly(&mut rng, &ctx);
        let alpha = random_series(&mut rng, ctx.order);
        let beta = random_series(&mut rng, ctx.order);
        let ok = (|| -> Result<bool> {
            let twice = act_numeric(&act_numeric(&p, &alpha, &ctx)?, &beta, &ctx)?;
            Ok(twice == act_numeric(&p, &series_product(&alpha, &beta), &ctx)?)
        })()
        .unwrap_or(false);
        tally.record(ok, || format!("P = {p}, N = {}, k = {}", ctx.dim, ctx.order));
    }
    tally.report
}

/// Linearity of the action and triviality of the identity series.
pub fn action_linearity(seed: u64, instances: usize) -> PropertyReport {
    let mut rng = rng_for(seed, 6);
    let mut tally = Tally::new("action-linearity");
    for _ in 0..instances {
        let ctx = random_context(&mut rng);
        let p = random_jet_poly(&mut rng, &ctx);
        let q = random_jet_poly(&mut rng, &ctx);
        let a = small_rational(&mut rng);
        let b = small_rational(&mut rng);
        let ok = (|| -> Result<bool> {
            let combo = &p.scale(&a) + &q.scale(&b);
            let lhs = act_series(&combo, &ctx)?;
            let ap = act_series(&p, &ctx)?;
            let rhs = &ap.scale(&a) + &act_series(&q, &ctx)?.scale(&b);
            Ok(lhs == rhs && identity_specialization(&ap, ctx.order) == p)
        })()
        .unwrap_or(false);
        tally.record(ok, || format!("P = {p}, Q = {q}"));
    }
    tally.report
}

fn random_tensor(rng: &mut impl Rng, k: usize, d: usize, terms: usize) -> Tensor {
    let mut t = Tensor::zero(k, d);
    for _ in 0..terms {
        let idx: Vec<usize> = (0..d).map(|_| rng.gen_range(0..=k)).collect();
        t.add_coord(idx, small_rational(rng)).expect("index inside the box");
    }
    t
}

fn identity_plus(k: usize, alpha: &Rational) -> Vec<Vec<Rational>> {
    let j = NilpotentModel::new(k).matrix();
    (0..=k)
        .map(|r| {
            (0..=k)
                .map(|c| {
                    let id = if r == c { Rational::from_integer(1.into()) } else { Rational::default() };
                    id + alpha * &j[r][c]
                })
                .collect()
        })
        .collect()
}

/// `(I + αJ)^{⊗d} t = t + Σ_ℓ α^ℓ J^(ℓ)t / ℓ!` for `d <= 4`; the `1/ℓ!`
/// undoes the ordered-slot weighting of `J^(ℓ)`.
pub fn one_parameter_expansion(seed: u64, instances: usize) -> PropertyReport {
    let mut rng = rng_for(seed, 7);
    let mut tally = Tally::new("one-parameter-expansion");
    for _ in 0..instances {
        let k = rng.gen_range(1..=3);
        let d = rng.gen_range(1..=4);
        let t = random_tensor(&mut rng, k, d, 4);
        let alpha = small_rational(&mut rng);
        let lhs = apply_in_every_slot(&t, &identity_plus(k, &alpha));
        let mut rhs = t.clone();
        let mut power = Rational::from_integer(1.into());
        let mut fact = Rational::from_integer(1.into());
        for l in 1..=d {
            power *= &alpha;
            fact *= Rational::from_integer(l.into());
            let term = apply_j_ell(&t, l).expect("1 <= l <= d");
            rhs = rhs.add(&term.scale(&(&power / &fact)));
        }
        tally.record(lhs == rhs, || format!("t = {t}, α = {alpha}"));
    }
    tally.report
}

/// `g ∘ J^(ℓ) = D_ℓ ∘ g` on random tensors for `(k, d) ∈ {(1,2), (1,3), (2,3)}`.
pub fn intertwining(seed: u64, instances: usize) -> PropertyReport {
    let mut rng = rng_for(seed, 8);
    let mut tally = Tally::new("intertwining");
    let shapes = [(1, 2), (1, 3), (2, 3)];
    for _ in 0..instances {
        let (k, d) = *shapes.choose(&mut rng).expect("shapes");
        let t = random_tensor(&mut rng, k, d, 5);
        let l = rng.gen_range(1..=d);
        let lhs = to_harmonic(&apply_j_ell(&t, l).expect("1 <= l <= d"));
        let rhs = d_ell(&to_harmonic(&t), d, l);
        tally.record(lhs == rhs, || format!("t = {t}, ℓ = {l}"));
    }
    tally.report
}

/// `t` lies in the invariant span iff every `J^(ℓ)` kills it.
pub fn kernel_characterization(seed: u64, instances: usize, limits: &Limits) -> Result<PropertyReport> {
    let mut rng = rng_for(seed, 9);
    let mut tally = Tally::new("kernel-characterization");
    let shapes = [(1, 2), (1, 3), (2, 2), (2, 3)];
    let mut bases = HashMap::new();
    for &(k, d) in &shapes {
        let basis = invariant_tensor_basis_with(k, d, limits)?;
        let mut ech = Echelon::new();
        for t in &basis {
            ech.insert(integer_row(t.row()));
        }
        bases.insert((k, d), (basis, ech));
    }
    for i in 0..instances {
        let (k, d) = *shapes.choose(&mut rng).expect("shapes");
        let (basis, ech) = &bases[&(k, d)];
        let mut t = Tensor::zero(k, d);
        for b in basis {
            t = t.add(&b.scale(&small_rational(&mut rng)));
        }
        // every other instance is perturbed off the kernel (or not, by chance)
        if i % 2 == 1 {
            t = t.add(&random_tensor(&mut rng, k, d, 1));
        }
        let in_span = ech.contains(&integer_row(t.row()));
        let killed = (1..=d).all(|l| apply_j_ell(&t, l).expect("1 <= l <= d").is_zero());
        tally.record(in_span == killed, || format!("t = {t}"));
    }
    Ok(tally.report)
}

fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let one = Rational::from_integer(1.into());
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { Rational::default() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != Rational::default())?;
        a.swap(col, pivot);
        let inv = &one / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && a[r][col] != Rational::default() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|l| &a[i][l] * &b[l][j]).sum()).collect())
        .collect()
}

/// The kernel dimension is unchanged when `J` is replaced by `SJS^{-1}`.
pub fn conjugation_independence(seed: u64, instances: usize, limits: &Limits) -> Result<PropertyReport> {
    let mut rng = rng_for(seed, 10);
    let mut tally = Tally::new("conjugation-independence");
    let mut reference = HashMap::new();
    for i in 0..instances {
        let k = 1 + i % 2;
        let d = 1 + (i / 2) % 3;
        let expected = match reference.get(&(k, d)) {
            Some(&e) => e,
            None => {
                let e = kernel_dimension_with(k, d, &NilpotentModel::new(k).matrix(), limits)?;
                reference.insert((k, d), e);
                e
            }
        };
        let (s, s_inv) = loop {
            let s: Vec<Vec<Rational>> = (0..=k)
                .map(|_| (0..=k).map(|_| small_rational(&mut rng)).collect())
                .collect();
            if let Some(inv) = invert(&s) {
                break (s, inv);
            }
        };
        let conj = mat_mul(&mat_mul(&s, &NilpotentModel::new(k).matrix()), &s_inv);
        let got = kernel_dimension_with(k, d, &conj, limits)?;
        tally.record(got == expected, || format!("k = {k}, d = {d}, S = {s:?}: {got} vs {expected}"));
    }
    Ok(tally.report)
}

/// On constructed pairs: products of invariants are invariant, and a product
/// with a non-invariant homogeneous factor is never reported invariant.
pub fn product_implication(seed: u64, instances: usize, limits: &Limits) -> Result<PropertyReport> {
    let mut rng = rng_for(seed, 11);
    let mut tally = Tally::new("product-implication");
    let ctx1 = JetContext::new(1, 1, 1)?;
    let ctx2 = JetContext::new(1, 2, 1)?;
    let deg1: Vec<Poly> = diff_homog_basis_with(&ctx1, limits)?.polys().cloned().collect();
    let deg2: Vec<Poly> = diff_homog_basis_with(&ctx2, limits)?.polys().cloned().collect();
    let combo = |rng: &mut ChaCha8Rng, basis: &[Poly]| -> Poly {
        loop {
            let p: Poly = basis.iter().map(|b| b.scale(&small_rational(rng))).sum();
            if !p.is_zero() {
                return p;
            }
        }
    };
    let base: Vec<VarId> = (0..=1).map(|v| VarId::x(v, 0)).collect();
    for i in 0..instances {
        let p = if rng.gen_bool(0.5) { combo(&mut rng, &deg1) } else { combo(&mut rng, &deg2) };
        let (q, q_invariant) = if i % 2 == 0 {
            let basis = if rng.gen_bool(0.5) { &deg1 } else { &deg2 };
            (combo(&mut rng, basis), true)
        } else {
            // a derivative variable forces non-invariance in degree one
            let q = &random_homogeneous(&mut rng, &base, 2, 1) + &Poly::var(VarId::x(rng.gen_range(0..=1), 1));
            (q, false)
        };
        let ctx = JetContext::new(1, 4, 1)?;
        let r = product_lemma_check(&p, &q, &ctx);
        let ok = r.consistent()
            && r.p_homogeneous
            && r.q_homogeneous == q_invariant
            && r.pq_homogeneous == q_invariant;
        tally.record(ok, || format!("P = {p}, Q = {q}: {r:?}"));
    }
    Ok(tally.report)
}

/// `e_j(S ⊔ {x}) = e_j(S) + Z_x·e_{j-1}(S)` on random subsets of `{1..6}`.
pub fn elementary_recurrence(seed: u64, instances: usize) -> PropertyReport {
    let mut rng = rng_for(seed, 12);
    let mut tally = Tally::new("elementary-recurrence");
    for _ in 0..instances {
        let mut pool: Vec<usize> = (1..=6).collect();
        pool.shuffle(&mut rng);
        let size = rng.gen_range(0..=5);
        let mut s: Vec<usize> = pool[..size].to_vec();
        let x = pool[size];
        s.sort_unstable();
        let mut s2 = s.clone();
        s2.push(x);
        s2.sort_unstable();
        let j = rng.gen_range(1..=size + 1);
        let lhs = elementary(&s2, j);
        let rhs = &elementary(&s, j) + &(&Poly::var(VarId::z(x)) * &elementary(&s, j - 1));
        tally.record(lhs == rhs, || format!("S = {s:?}, x = {x}, j = {j}"));
    }
    tally.report
}

/// For `α ∈ Σ_d^k`, the coefficient of `Y_k^(d-1)` in `W_α` is `±W_α̂` with
/// slot `k` deleted and later slots shifted down. Exhaustive over `Σ_d`.
pub fn triangularity(d: usize, limits: &Limits) -> Result<PropertyReport> {
    let mut tally = Tally::new("triangularity");
    for tuple in enum_sigma_d(d, limits)?.elements {
        let k = tuple.class();
        let w = wronskian_w(&tuple.alpha, d, d - 1)?;
        let coeff = w.coefficient_of(VarId::y(k, d - 1))?;
        let reduced: Vec<usize> = tuple
            .alpha
            .iter()
            .enumerate()
            .filter(|&(p, _)| p + 1 != k)
            .map(|(_, &a)| a)
            .collect();
        let minor = wronskian_w(&reduced, d - 1, d.saturating_sub(2))?;
        let relabel: HashMap<VarId, Poly> = (1..d)
            .flat_map(|s| {
                let target = if s < k { s } else { s + 1 };
                (0..d).map(move |o| (VarId::y(s, o), Poly::var(VarId::y(target, o))))
            })
            .collect();
        let minor = minor.substitute(&relabel)?;
        let ok = !coeff.is_zero() && (coeff == minor || coeff == -&minor);
        tally.record(ok, || format!("α = {:?}, k = {k}", tuple.alpha));
    }
    Ok(tally.report)
}

/// The checks required at the exit gate, in a fixed order.
pub fn core_properties(seed: u64, instances: usize, limits: &Limits) -> Result<Vec<PropertyReport>> {
    Ok(vec![
        action_group_law(seed, instances),
        one_parameter_expansion(seed, instances),
        intertwining(seed, instances),
        product_implication(seed, instances, limits)?,
        determinant_alternation(seed, instances),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_property_holds() {
        let lim = Limits::default();
        let mut reports = core_properties(7, 40, &lim).unwrap();
        reports.extend([
            ring_axioms(7, 40),
            substitute_homomorphism(7, 40),
            leibniz_rule(7, 40),
            action_linearity(7, 40),
            elementary_recurrence(7, 40),
            kernel_characterization(7, 40, &lim).unwrap(),
            conjugation_independence(7, 12, &lim).unwrap(),
        ]);
        for d in 1..=4 {
            reports.push(triangularity(d, &lim).unwrap());
        }
        for r in &reports {
            assert!(r.passed(), "{r:?}");
            assert!(r.instances > 0, "{}", r.name);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        assert_eq!(ring_axioms(3, 10), ring_axioms(3, 10));
        assert_eq!(action_group_law(3, 5), action_group_law(3, 5));
    }

    #[test]
    fn inverse_round_trip() {
        let m = NilpotentModel::new(2).matrix();
        assert!(invert(&m).is_none());
        let s = identity_plus(2, &Rational::from_integer(3.into()));
        let inv = invert(&s).unwrap();
        assert_eq!(mat_mul(&s, &inv), identity_plus(2, &Rational::default()));
    }
}
