//! Action of invertible formal series on differential polynomials.
//!
//! A series `α = Σ λ_m T^m` acts on the jet variable `X_i^(j)` by the
//! Leibniz rule, `(αX_i)^(j) = Σ_s C(j,s) (j-s)! λ_{j-s} X_i^(s)`, extended
//! multiplicatively. A polynomial `P` of degree `d` is differentially
//! homogeneous when `α·P = λ_0^d P` holds identically in the `λ_m`, which is
//! tested here as an exact polynomial identity rather than by sampling.
//!
//! Only `λ_0..λ_k` are introduced for a polynomial of order `k`: higher
//! coefficients never appear in the images of `X^(j)` with `j <= k`.

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, One};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::{binomial, Limits};
use crate::linalg::{integer_row, Echelon};
use crate::poly::{Monomial, Poly, Rational, VarId};

/// Number of projective variables minus one (`dim`), maximal derivation
/// order (`order`) and homogeneity degree (`degree`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct JetContext {
    pub dim: usize,
    pub order: usize,
    pub degree: usize,
}

impl JetContext {
    pub fn new(dim: usize, degree: usize, order: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::IndexOutOfRange(
                "projective dimension N must be at least 1".into(),
            ));
        }
        Ok(JetContext { dim, order, degree })
    }

    /// The jet variables `X_i^(j)`, `0 <= i <= N`, `0 <= j <= k`, in variable order.
    pub fn jet_vars(&self) -> Vec<VarId> {
        (0..=self.dim)
            .flat_map(|i| (0..=self.order).map(move |j| VarId::x(i, j)))
            .collect()
    }

    pub fn with_order(&self, order: usize) -> Self {
        JetContext { order, ..*self }
    }

    /// Number of degree-`d` monomials in the jet variables.
    pub fn monomial_count(&self) -> usize {
        let vars = (self.dim + 1) * (self.order + 1);
        if vars == 0 {
            return usize::from(self.degree == 0);
        }
        binomial(vars + self.degree - 1, self.degree)
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binom_big(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(αX_i)^(j)` as a polynomial in jet and `λ` variables.
pub fn leibniz_image(var: usize, order: usize, ctx: &JetContext) -> Result<Poly> {
    if var > ctx.dim || order > ctx.order {
        return Err(Error::IndexOutOfRange(format!(
            "X{var}^({order}) outside N={}, k={}",
            ctx.dim, ctx.order
        )));
    }
    Ok(leibniz_unchecked(var, order))
}

fn leibniz_unchecked(var: usize, order: usize) -> Poly {
    let mut out = Poly::zero();
    for s in 0..=order {
        let coeff = binom_big(order, s) * factorial(order - s);
        let m = Monomial::from_pairs([(VarId::lambda(order - s), 1), (VarId::x(var, s), 1)]);
        out.add_term(m, Rational::from_integer(coeff));
    }
    out
}

fn check_jet_poly(p: &Poly, ctx: &JetContext) -> Result<()> {
    for v in p.variables() {
        match v {
            VarId::JetX { var, order } => {
                if var as usize > ctx.dim || order as usize > ctx.order {
                    return Err(Error::IndexOutOfRange(format!(
                        "{v} outside N={}, k={}",
                        ctx.dim, ctx.order
                    )));
                }
            }
            other => return Err(Error::UnsupportedVariable(other)),
        }
    }
    Ok(())
}

/// Images of every jet variable of `ctx`.
fn leibniz_table(ctx: &JetContext) -> HashMap<VarId, Poly> {
    ctx.jet_vars()
        .into_iter()
        .map(|v| match v {
            VarId::JetX { var, order } => (v, leibniz_unchecked(var as usize, order as usize)),
            _ => unreachable!(),
        })
        .collect()
}

/// `α·P` with the series coefficients kept as formal variables `λ_m`.
pub fn act_series(p: &Poly, ctx: &JetContext) -> Result<Poly> {
    check_jet_poly(p, ctx)?;
    p.substitute(&leibniz_table(ctx))
}

/// `α·P` for a concrete truncated series with Taylor coefficients `series`
/// (`series[m] = α^(m)(0)/m!`, missing entries are zero).
pub fn act_numeric(p: &Poly, series: &[Rational], ctx: &JetContext) -> Result<Poly> {
    let symbolic = act_series(p, ctx)?;
    let values: HashMap<VarId, Rational> = (0..=ctx.order)
        .map(|m| {
            let v = series.get(m).cloned().unwrap_or_default();
            (VarId::lambda(m), v)
        })
        .collect();
    Ok(symbolic.specialize(&values))
}

/// Exact test of `α·P = λ_0^d P`.
///
/// Returns `false` without further work when `P` is not homogeneous of
/// degree `d` or involves non-jet variables. The zero polynomial passes.
/// The order bound of `ctx` is widened to cover `P` if necessary.
pub fn is_diff_homogeneous(p: &Poly, degree: usize, ctx: &JetContext) -> bool {
    if p.is_zero() {
        return true;
    }
    if p.homogeneous_degree() != Some(degree as u32) {
        return false;
    }
    if p.variables().iter().any(|v| !v.is_jet()) {
        return false;
    }
    let max_var = p
        .variables()
        .iter()
        .filter_map(|v| match v {
            VarId::JetX { var, .. } => Some(*var as usize),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let wide = JetContext {
        dim: ctx.dim.max(max_var).max(1),
        order: ctx.order.max(p.max_order().unwrap_or(0)),
        degree,
    };
    let acted = match act_series(p, &wide) {
        Ok(a) => a,
        Err(_) => return false,
    };
    let scaled = p.mul_monomial(&Monomial::pow(VarId::lambda(0), degree as u32));
    (&acted - &scaled).is_zero()
}

/// Where a basis element came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// Position among the kernel vectors of the invariance system.
    KernelVector(usize),
    /// Label of a catalogued generator or product of generators.
    Generator(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub poly: Poly,
    pub provenance: Provenance,
}

/// Basis of the differentially homogeneous polynomials of degree `d` and order `<= k`.
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    pub context: JetContext,
    pub elements: Vec<BasisElement>,
}

impl InvariantBasis {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    pub fn polys(&self) -> impl Iterator<Item = &Poly> {
        self.elements.iter().map(|e| &e.poly)
    }
}

/// Grading preserved by the action: number of factors per projective
/// variable (reversed, so blocks rich in `X_0` come first), and total
/// derivation weight.
type BlockKey = (std::cmp::Reverse<Vec<usize>>, usize);

fn block_key(m: &Monomial, dim: usize) -> BlockKey {
    let mut multideg = vec![0; dim + 1];
    let mut weight = 0;
    for &(v, e) in m.exponents() {
        if let VarId::JetX { var, order } = v {
            multideg[var as usize] += e as usize;
            weight += (order * e) as usize;
        }
    }
    (std::cmp::Reverse(multideg), weight)
}

/// All degree-`d` monomials in `vars`, in lexicographic order of variable choices.
pub(crate) fn monomials_of_degree(vars: &[VarId], d: usize) -> Vec<Monomial> {
    fn rec(vars: &[VarId], start: usize, left: usize, cur: &mut Vec<VarId>, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::from_pairs(cur.iter().map(|&v| (v, 1))));
            return;
        }
        for i in start..vars.len() {
            cur.push(vars[i]);
            rec(vars, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, 0, d, &mut Vec::with_capacity(d), &mut out);
    out
}

fn act_monomial(m: &Monomial, table: &HashMap<VarId, Poly>) -> Poly {
    let mut acc = Poly::one();
    for &(v, e) in m.exponents() {
        let image = &table[&v];
        for _ in 0..e {
            acc = &acc * image;
        }
    }
    acc
}

/// Kernel of the invariance system restricted to one block of monomials.
fn block_kernel(columns: &[Monomial], degree: usize, table: &HashMap<VarId, Poly>) -> Vec<Poly> {
    let lambda0 = Monomial::pow(VarId::lambda(0), degree as u32);
    let mut row_index: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    for (c, m) in columns.iter().enumerate() {
        let mut defect = act_monomial(m, table);
        defect.add_term(m.mul(&lambda0), -Rational::one());
        for (mono, coeff) in defect.terms() {
            let next = rows.len();
            let r = *row_index.entry(mono.clone()).or_insert(next);
            if r == rows.len() {
                rows.push(Vec::new());
            }
            rows[r].push((c, coeff.clone()));
        }
    }
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(integer_row(r));
        if ech.rank() == columns.len() {
            break;
        }
    }
    ech.nullspace(columns.len())
        .into_iter()
        .map(|v| {
            Poly::from_terms(v.into_iter().map(|(c, x)| (columns[c].clone(), x))).primitive()
        })
        .collect()
}

/// Basis of `(V_d^(k))^Diff` with default resource caps.
pub fn diff_homog_basis(ctx: &JetContext) -> Result<InvariantBasis> {
    diff_homog_basis_with(ctx, &Limits::default())
}

/// Basis of `(V_d^(k))^Diff`: the exact kernel of "all coefficients of
/// `α·P - λ_0^d P` vanish" over the degree-`d` jet monomials.
///
/// The system is block diagonal for the grading by variable multidegree and
/// derivation weight, so blocks are solved independently (in parallel) and
/// concatenated in block order. Within a block, vectors follow the free
/// columns of the echelon form; each is scaled to a primitive integer
/// polynomial with positive leading coefficient.
pub fn diff_homog_basis_with(ctx: &JetContext, limits: &Limits) -> Result<InvariantBasis> {
    limits.check_monomials(ctx.monomial_count())?;
    let vars = ctx.jet_vars();
    let mut blocks: BTreeMap<BlockKey, Vec<Monomial>> = BTreeMap::new();
    for m in monomials_of_degree(&vars, ctx.degree) {
        blocks.entry(block_key(&m, ctx.dim)).or_default().push(m);
    }
    let table = leibniz_table(ctx);
    let blocks: Vec<Vec<Monomial>> = blocks.into_values().collect();
    let kernels: Vec<Vec<Poly>> = blocks
        .par_iter()
        .map(|cols| block_kernel(cols, ctx.degree, &table))
        .collect();
    let elements = kernels
        .into_iter()
        .flatten()
        .enumerate()
        .map(|(i, poly)| BasisElement {
            poly,
            provenance: Provenance::KernelVector(i),
        })
        .collect();
    Ok(InvariantBasis {
        context: *ctx,
        elements,
    })
}

/// Flags for the product implication `PQ homogeneous ⟹ P and Q homogeneous`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    pub p_homogeneous: bool,
    pub q_homogeneous: bool,
    pub pq_homogeneous: bool,
}

impl ProductReport {
    /// Whether the observed flags are compatible with the implication.
    pub fn consistent(&self) -> bool {
        !self.pq_homogeneous || (self.p_homogeneous && self.q_homogeneous)
    }
}

/// Checks each factor and the product for differential homogeneity, each at
/// its own total degree.
pub fn product_lemma_check(p: &Poly, q: &Poly, ctx: &JetContext) -> ProductReport {
    let test = |f: &Poly| match f.homogeneous_degree() {
        Some(d) => is_diff_homogeneous(f, d as usize, ctx),
        None => false,
    };
    let pq = p * q;
    ProductReport {
        p_homogeneous: test(p),
        q_homogeneous: test(q),
        pq_homogeneous: test(&pq),
    }
}

/// Evaluation `λ_0 = 1`, `λ_m = 0` for `m > 0`.
pub fn identity_specialization(p: &Poly, order: usize) -> Poly {
    let values: HashMap<VarId, Rational> = (0..=order)
        .map(|m| {
            let v = if m == 0 { Rational::one() } else { Rational::default() };
            (VarId::lambda(m), v)
        })
        .collect();
    p.specialize(&values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PolySpan;
    use crate::poly::int;

    fn x(i: usize, j: usize) -> Poly {
        Poly::var(VarId::x(i, j))
    }
    fn l(m: usize) -> Poly {
        Poly::var(VarId::lambda(m))
    }
    fn wronskian() -> Poly {
        &(&x(0, 0) * &x(1, 1)) - &(&x(1, 0) * &x(0, 1))
    }
    fn ctx(n: usize, d: usize, k: usize) -> JetContext {
        JetContext::new(n, d, k).unwrap()
    }

    #[test]
    fn leibniz_examples() {
        let c = ctx(1, 1, 2);
        assert_eq!(leibniz_image(0, 0, &c).unwrap(), &l(0) * &x(0, 0));
        assert_eq!(
            leibniz_image(0, 1, &c).unwrap(),
            &(&l(0) * &x(0, 1)) + &(&l(1) * &x(0, 0))
        );
        // s=2: λ0 X''; s=1: C(2,1)·1!·λ1 X'; s=0: C(2,0)·2!·λ2 X.
        let expected = &(&(&l(0) * &x(0, 2)) + &(&l(1) * &x(0, 1)).scale(&int(2)))
            + &(&l(2) * &x(0, 0)).scale(&int(2));
        assert_eq!(leibniz_image(0, 2, &c).unwrap(), expected);
        assert!(matches!(
            leibniz_image(0, 3, &c),
            Err(Error::IndexOutOfRange(_))
        ));
        assert!(leibniz_image(2, 0, &c).is_err());
    }

    #[test]
    fn act_series_examples() {
        let c = ctx(1, 2, 1);
        assert_eq!(act_series(&x(0, 0), &c).unwrap(), &l(0) * &x(0, 0));
        // λ0λ1 cross terms cancel: X0 X1' ↦ λ0²X0X1' + λ0λ1X0X1, X1 X0' likewise.
        assert_eq!(
            act_series(&wronskian(), &c).unwrap(),
            &(&l(0) * &l(0)) * &wronskian()
        );
        assert_eq!(
            act_series(&x(0, 1), &c).unwrap(),
            &(&l(0) * &x(0, 1)) + &(&l(1) * &x(0, 0))
        );
    }

    #[test]
    fn act_series_rejects_foreign_variables() {
        let c = ctx(1, 1, 1);
        let err = act_series(&Poly::var(VarId::z(1)), &c).unwrap_err();
        assert!(matches!(err, Error::UnsupportedVariable(_)));
    }

    #[test]
    fn homogeneity_examples() {
        let c = ctx(1, 2, 1);
        assert!(is_diff_homogeneous(&(&x(0, 0) * &x(0, 0)), 2, &c));
        assert!(is_diff_homogeneous(&wronskian(), 2, &c));
        // leaves λ0λ1·X0X1 behind
        assert!(!is_diff_homogeneous(&(&x(0, 0) * &x(1, 1)), 2, &c));
        // degree mismatch
        assert!(!is_diff_homogeneous(&x(0, 0), 2, &c));
    }

    #[test]
    fn basis_n1_d2_k1() {
        let b = diff_homog_basis(&ctx(1, 2, 1)).unwrap();
        assert_eq!(b.dimension(), 4);
        let mut span = PolySpan::new();
        for p in b.polys() {
            span.insert(p);
        }
        for p in [
            &x(0, 0) * &x(0, 0),
            &x(0, 0) * &x(1, 0),
            &x(1, 0) * &x(1, 0),
            wronskian(),
        ] {
            assert!(span.contains(&p), "{p} not in span");
        }
        assert!(b.polys().all(|p| is_diff_homogeneous(p, 2, &b.context)));
    }

    #[test]
    fn basis_degree_one() {
        let b = diff_homog_basis(&ctx(1, 1, 3)).unwrap();
        let rendered: Vec<String> = b.polys().map(|p| p.to_string()).collect();
        assert_eq!(rendered, ["X0^(0)", "X1^(0)"]);
    }

    #[test]
    fn basis_n2_d2_k1() {
        assert_eq!(diff_homog_basis(&ctx(2, 2, 1)).unwrap().dimension(), 9);
    }

    #[test]
    fn monomial_cap() {
        let limits = Limits {
            max_monomials: 9,
            ..Limits::default()
        };
        let err = diff_homog_basis_with(&ctx(1, 2, 1), &limits).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn product_examples() {
        let c = ctx(1, 3, 1);
        let r = product_lemma_check(&x(0, 0), &wronskian(), &c);
        assert_eq!((r.p_homogeneous, r.q_homogeneous, r.pq_homogeneous), (true, true, true));
        let r = product_lemma_check(&x(0, 1), &x(1, 0), &c);
        assert!(!r.p_homogeneous && !r.pq_homogeneous && r.consistent());
        let r = product_lemma_check(&x(0, 0), &x(0, 0), &c);
        assert!(r.p_homogeneous && r.q_homogeneous && r.pq_homogeneous);
    }

    #[test]
    fn identity_series_acts_trivially() {
        let c = ctx(1, 3, 2);
        let p = &(&x(0, 2) * &x(1, 0)) + &(&x(0, 1) * &x(1, 1)).scale(&int(3));
        let acted = act_series(&p, &c).unwrap();
        assert_eq!(identity_specialization(&acted, c.order), p);
    }

    #[test]
    fn numeric_action_matches_symbolic() {
        let c = ctx(1, 2, 1);
        let series = [int(2), int(3)];
        let acted = act_numeric(&x(0, 1), &series, &c).unwrap();
        assert_eq!(acted, &x(0, 1).scale(&int(2)) + &x(0, 0).scale(&int(3)));
    }
}
