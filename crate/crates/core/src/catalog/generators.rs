use serde::Serialize;
use serde_json::{json, Value};

use super::index::{enum_sigma_bar, enum_sigma_d, function_of, sigma_bar_count, NestedIndex};
use crate::error::{Error, Result};
use crate::jet::{diff_homog_basis_with, is_diff_homogeneous, JetContext};
use crate::limits::Limits;
use crate::linalg::PolySpan;
use crate::poly::{determinant, from_columns, Poly, VarId};
use crate::tensor::{
    from_multilinear, invariant_tensor_basis_with, shifted_column, wronskian_w, Tensor,
};

/// `sub_{f(m(α))}(W_α)`: the determinant whose column `s` is `(J^T)^{a_s}`
/// applied to `(X_{f(s)}^(0), …, X_{f(s)}^(d-1))`, `a` the flattened index.
///
/// The result is sign-normalized. Indices in `Σ̄_d` must give a nonzero
/// polynomial; a zero there is reported as an integrity failure.
pub fn build_generator(idx: &NestedIndex, n: usize, d: usize) -> Result<Poly> {
    if idx.uples.len() != n + 1 || !idx.is_admissible(d) {
        return Err(Error::InvalidIndex(format!(
            "{idx} does not satisfy conditions (1)-(3) for N = {n}, d = {d}"
        )));
    }
    let flat = idx.flatten();
    let assignment = function_of(&idx.lengths())?;
    let columns: Vec<Vec<Poly>> = flat
        .iter()
        .zip(&assignment)
        .map(|(&a, &var)| shifted_column(a, d, |t| Poly::var(VarId::x(var, t))))
        .collect();
    let w = determinant(&from_columns(&columns))?.sign_normalized();
    if w.is_zero() && idx.is_in_sigma_bar(d) {
        return Err(Error::Integrity(format!("generator {idx} vanishes identically")));
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub index: NestedIndex,
    pub poly: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFamily {
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<Generator>,
}

/// `G_1, …, G_{k+1}` for `N+1` projective variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCatalog {
    pub n: usize,
    pub k: usize,
    pub families: Vec<GeneratorFamily>,
}

impl GeneratorCatalog {
    pub fn build(n: usize, k: usize, limits: &Limits) -> Result<Self> {
        let mut families = Vec::with_capacity(k + 1);
        for degree in 1..=k + 1 {
            let generators = enum_sigma_bar(n, degree, limits)?
                .elements
                .into_iter()
                .map(|index| {
                    let poly = build_generator(&index, n, degree)?;
                    Ok(Generator { index, poly })
                })
                .collect::<Result<Vec<_>>>()?;
            families.push(GeneratorFamily {
                degree,
                order: degree - 1,
                generators,
            });
        }
        Ok(GeneratorCatalog { n, k, families })
    }

    pub fn counts(&self) -> Vec<usize> {
        self.families.iter().map(|f| f.generators.len()).collect()
    }

    pub fn all(&self) -> impl Iterator<Item = (usize, &Generator)> {
        self.families
            .iter()
            .flat_map(|f| f.generators.iter().map(move |g| (f.degree, g)))
    }

    /// `{N, k, families: [{degree, order, count, generators: [{index, poly}]}]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n,
            "k": self.k,
            "families": self.families.iter().map(|f| json!({
                "degree": f.degree,
                "order": f.order,
                "count": f.generators.len(),
                "generators": f.generators.iter().map(|g| json!({
                    "index": g.index.to_string(),
                    "poly": g.poly.to_string(),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Rows `(degree, formula, computed)`.
    pub fn count_table(&self) -> Vec<CountRow> {
        self.families
            .iter()
            .map(|f| CountRow {
                degree: f.degree,
                formula: sigma_bar_count(self.n, f.degree),
                computed: f.generators.len(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub degree: usize,
    pub formula: u128,
    pub computed: usize,
}

/// `[(1, N+1)] ++ [(i, |G_i|) for 2 <= i <= k+1]`, from the closed-form counts.
pub fn weighted_signature(n: usize, k: usize) -> Vec<(usize, u128)> {
    (1..=k + 1).map(|i| (i, sigma_bar_count(n, i))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    /// `dim (V_d^(d-1))^Diff`.
    pub full_dimension: usize,
    /// `dim (V_d^(d-2))^Diff` (zero for `d = 1`).
    pub low_dimension: usize,
    pub generators: usize,
    pub all_homogeneous: bool,
    /// `span(B_low ∪ G_d) = span(B_full)`.
    pub spans_full: bool,
    /// `G_d` independent modulo `span(B_low)`.
    pub independent_mod_low: bool,
    pub count_matches: bool,
    pub passed: bool,
}

/// `G_d` induces a basis of `V_d^Diff / (V_d^Diff)^(d-2)`.
pub fn verify_quotient_basis(n: usize, d: usize, limits: &Limits) -> Result<QuotientReport> {
    let generators: Vec<Poly> = GeneratorCatalog::build(n, d - 1, limits)?
        .families
        .pop()
        .expect("degree-d family")
        .generators
        .into_iter()
        .map(|g| g.poly)
        .collect();
    let full_ctx = JetContext::new(n, d, d - 1)?;
    let full = diff_homog_basis_with(&full_ctx, limits)?;
    let low: Vec<Poly> = if d >= 2 {
        diff_homog_basis_with(&JetContext::new(n, d, d - 2)?, limits)?
            .polys()
            .cloned()
            .collect()
    } else {
        Vec::new()
    };
    let all_homogeneous = generators.iter().all(|g| is_diff_homogeneous(g, d, &full_ctx));
    let full_span = PolySpan::from_polys(full.polys());
    let mut combined = PolySpan::from_polys(&low);
    let low_rank = combined.rank();
    for g in &generators {
        combined.insert(g);
    }
    let inside = low.iter().chain(&generators).all(|p| full_span.contains(p));
    let spans_full = inside && combined.rank() == full_span.rank();
    let independent_mod_low = combined.rank() == low_rank + generators.len();
    let count_matches = generators.len() + low.len() == full.dimension();
    Ok(QuotientReport {
        n,
        d,
        full_dimension: full.dimension(),
        low_dimension: low.len(),
        generators: generators.len(),
        all_homogeneous,
        spans_full,
        independent_mod_low,
        count_matches,
        passed: all_homogeneous && spans_full && independent_mod_low && count_matches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModelQuotientReport {
    pub d: usize,
    pub family: usize,
    pub low_dimension: usize,
    pub full_dimension: usize,
    pub passed: bool,
}

/// `(W_α)_{α ∈ Σ_d}` induces a basis of `(F_{d-1}^{⊗d})^U / (F_{d-2}^{⊗d})^U`,
/// checked in tensor coordinates.
pub fn verify_model_quotient_basis(d: usize, limits: &Limits) -> Result<ModelQuotientReport> {
    use crate::linalg::{integer_row, Echelon};
    let k = d - 1;
    let full = invariant_tensor_basis_with(k, d, limits)?;
    let low: Vec<Tensor> = if d >= 2 {
        invariant_tensor_basis_with(d - 2, d, limits)?
            .into_iter()
            .map(|t| t.widen(k))
            .collect()
    } else {
        Vec::new()
    };
    let family: Vec<Tensor> = enum_sigma_d(d, limits)?
        .elements
        .iter()
        .map(|t| from_multilinear(&wronskian_w(&t.alpha, d, k)?, k, d))
        .collect::<Result<_>>()?;
    let mut full_span = Echelon::new();
    for t in &full {
        full_span.insert(integer_row(t.row()));
    }
    let mut ech = Echelon::new();
    for t in &low {
        ech.insert(integer_row(t.row()));
    }
    let low_rank = ech.rank();
    let mut inside = true;
    for t in &family {
        let row = integer_row(t.row());
        inside &= full_span.contains(&row);
        ech.insert(row);
    }
    let passed = inside && ech.rank() == low_rank + family.len() && ech.rank() == full.len();
    Ok(ModelQuotientReport {
        d,
        family: family.len(),
        low_dimension: low_rank,
        full_dimension: full.len(),
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeCheck {
    pub d: usize,
    pub products: usize,
    pub span_rank: usize,
    pub invariant_dimension: usize,
    pub contained: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FiniteGenerationReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub counts: Vec<usize>,
    pub degrees: Vec<DegreeCheck>,
    pub passed: bool,
}

/// All products of catalog generators with total degree `d`, by multisets
/// of generator positions in non-decreasing order.
fn generator_products(gens: &[(usize, &Poly)], d: usize) -> Vec<Poly> {
    fn rec(gens: &[(usize, &Poly)], start: usize, left: usize, acc: &Poly, out: &mut Vec<Poly>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..gens.len() {
            let (deg, g) = gens[i];
            if deg <= left {
                rec(gens, i, left - deg, &(acc * g), out);
            }
        }
    }
    let mut out = Vec::new();
    rec(gens, 0, d, &Poly::one(), &mut out);
    out
}

/// Degree by degree, monomials in `G_1..G_{k+1}` span `(V_d^(k))^Diff`.
pub fn verify_finite_generation(n: usize, k: usize, d_max: usize, limits: &Limits) -> Result<FiniteGenerationReport> {
    let catalog = GeneratorCatalog::build(n, k, limits)?;
    let gens: Vec<(usize, &Poly)> = catalog.all().map(|(deg, g)| (deg, &g.poly)).collect();
    let mut degrees = Vec::new();
    for d in 1..=d_max {
        let basis = diff_homog_basis_with(&JetContext::new(n, d, k)?, limits)?;
        let target = PolySpan::from_polys(basis.polys());
        let products = generator_products(&gens, d);
        limits.check_enumeration(products.len())?;
        let contained = products.iter().all(|p| target.contains(p));
        let span_rank = PolySpan::from_polys(&products).rank();
        degrees.push(DegreeCheck {
            d,
            products: products.len(),
            span_rank,
            invariant_dimension: basis.dimension(),
            contained,
            passed: contained && span_rank == basis.dimension(),
        });
    }
    Ok(FiniteGenerationReport {
        n,
        k,
        counts: catalog.counts(),
        passed: degrees.iter().all(|c| c.passed),
        degrees,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimalityRow {
    pub degree: usize,
    pub count: usize,
    /// Every generator of this degree has order exactly `degree - 1`.
    pub exact_order: bool,
    /// Independent modulo order `degree - 2` invariants.
    pub independent_mod_lower: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimalityReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub rows: Vec<MinimalityRow>,
    pub passed: bool,
}

/// Products of at least two generators of total degree `i` have order at
/// most `i-2` because each factor of degree `j` has order `j-1`; so no
/// degree-`i` generator is redundant once `G_i` is independent modulo
/// `(V_i^(i-2))^Diff`. Both facts are checked.
pub fn verify_minimality(n: usize, k: usize, limits: &Limits) -> Result<MinimalityReport> {
    let catalog = GeneratorCatalog::build(n, k, limits)?;
    let mut rows = Vec::new();
    for family in &catalog.families {
        let exact_order = family
            .generators
            .iter()
            .all(|g| g.poly.max_order() == Some(family.order));
        let independent_mod_lower = if family.degree == 1 {
            PolySpan::from_polys(family.generators.iter().map(|g| &g.poly)).rank() == family.generators.len()
        } else {
            verify_quotient_basis(n, family.degree, limits)?.independent_mod_low
        };
        rows.push(MinimalityRow {
            degree: family.degree,
            count: family.generators.len(),
            exact_order,
            independent_mod_lower,
        });
    }
    Ok(MinimalityReport {
        n,
        k,
        passed: rows.iter().all(|r| r.exact_order && r.independent_mod_lower),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::project_to_symmetric;

    fn x(i: usize, j: usize) -> Poly {
        Poly::var(VarId::x(i, j))
    }
    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn generator_examples() {
        let w = build_generator(&NestedIndex::new(vec![vec![0], vec![0]]), 1, 2).unwrap();
        assert_eq!(w, &(&x(0, 0) * &x(1, 1)) - &(&x(1, 0) * &x(0, 1)));
        assert_eq!(w.to_string(), "X0^(0)*X1^(1) - X0^(1)*X1^(0)");
        let g = build_generator(&NestedIndex::new(vec![vec![0], vec![]]), 1, 1).unwrap();
        assert_eq!(g, x(0, 0));
        assert!(build_generator(&NestedIndex::new(vec![vec![0, 0], vec![]]), 1, 2).is_err());
        assert!(build_generator(&NestedIndex::new(vec![vec![0]]), 1, 1).is_err());
    }

    #[test]
    fn degree_three_generators_are_new() {
        let low = diff_homog_basis_with(&JetContext::new(1, 3, 1).unwrap(), &lim()).unwrap();
        let mut span = PolySpan::from_polys(low.polys());
        let base = span.rank();
        let gens = GeneratorCatalog::build(1, 2, &lim()).unwrap();
        for g in &gens.families[2].generators {
            assert_eq!(g.poly.max_order(), Some(2));
            span.insert(&g.poly);
        }
        assert_eq!(span.rank(), base + 2);
    }

    #[test]
    fn two_construction_paths_agree() {
        for (n, d) in [(1, 2), (1, 3), (2, 3), (2, 2), (1, 4)] {
            for idx in enum_sigma_bar(n, d, &lim()).unwrap().elements {
                let direct = build_generator(&idx, n, d).unwrap();
                let w = wronskian_w(&idx.flatten(), d, d - 1).unwrap();
                let t = from_multilinear(&w, d - 1, d).unwrap();
                let assignment = function_of(&idx.lengths()).unwrap();
                let via = project_to_symmetric(&t, &assignment).unwrap().sign_normalized();
                assert_eq!(direct, via, "{idx}");
            }
        }
    }

    #[test]
    fn quotient_bases() {
        for (n, d, full, low) in [(1, 2, 4, 3), (1, 3, 8, 6), (2, 2, 9, 6), (1, 1, 2, 0)] {
            let r = verify_quotient_basis(n, d, &lim()).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!((r.full_dimension, r.low_dimension), (full, low));
        }
    }

    #[test]
    fn model_quotient() {
        for d in 1..=4 {
            let r = verify_model_quotient_basis(d, &lim()).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn finite_generation() {
        let r = verify_finite_generation(1, 1, 4, &lim()).unwrap();
        assert!(r.passed, "{r:?}");
        let r = verify_finite_generation(1, 2, 3, &lim()).unwrap();
        assert!(r.passed);
        assert_eq!(r.degrees[2].invariant_dimension, 8);
        let r = verify_finite_generation(2, 1, 2, &lim()).unwrap();
        assert_eq!(r.degrees[1].span_rank, 9);
    }

    #[test]
    fn minimality() {
        let r = verify_minimality(1, 1, &lim()).unwrap();
        assert!(r.passed);
        let r = verify_minimality(1, 2, &lim()).unwrap();
        assert!(r.passed);
        assert_eq!(r.rows[2].count, 2);
    }

    #[test]
    fn signatures() {
        assert_eq!(weighted_signature(1, 1), [(1, 2), (2, 1)]);
        assert_eq!(weighted_signature(1, 0), [(1, 2)]);
        assert_eq!(weighted_signature(2, 2), [(1, 3), (2, 3), (3, 9)]);
    }

    #[test]
    fn catalog_json_shape() {
        let c = GeneratorCatalog::build(1, 1, &lim()).unwrap();
        let v = c.to_json();
        assert_eq!(v["N"], 1);
        assert_eq!(v["families"][1]["count"], 1);
        assert_eq!(v["families"][1]["generators"][0]["poly"], "X0^(0)*X1^(1) - X0^(1)*X1^(0)");
        assert_eq!(v["families"][0]["generators"][0]["index"], "((0),())");
    }
}
