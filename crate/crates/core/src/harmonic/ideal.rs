use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::partition::{mu_k, Partition};
use crate::error::Result;
use crate::jet::monomials_of_degree;
use crate::limits::Limits;
use crate::linalg::PolySpan;
use crate::poly::{Poly, VarId};
use crate::tensor::subsets;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IdealLabel {
    /// `(e_1, …, e_d, Z_1^{k+1}, …, Z_d^{k+1})`.
    Ik { d: usize, k: usize },
    /// The ideal generated by `C_μ`.
    Dcp(Partition),
    Custom(String),
}

impl fmt::Display for IdealLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealLabel::Ik { d, k } => write!(f, "I_k(d={d}, k={k})"),
            IdealLabel::Dcp(mu) => write!(f, "I_mu{mu}"),
            IdealLabel::Custom(name) => f.write_str(name),
        }
    }
}

/// An ideal of `Q[Z_1..Z_n]` given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    pub nvars: usize,
    pub generators: Vec<Poly>,
    pub label: IdealLabel,
}

/// `e_j` of the variables `Z_s`, `s ∈ set` (1-based indices); `e_0 = 1`.
pub fn elementary(set: &[usize], j: usize) -> Poly {
    if j > set.len() {
        return Poly::zero();
    }
    subsets(set.len(), j)
        .into_iter()
        .map(|s| s.into_iter().map(|i| Poly::var(VarId::z(set[i]))).product::<Poly>())
        .sum()
}

impl IdealPresentation {
    pub fn custom(nvars: usize, generators: Vec<Poly>, name: &str) -> Self {
        IdealPresentation {
            nvars,
            generators,
            label: IdealLabel::Custom(name.to_string()),
        }
    }

    /// `I_k`: the full elementary symmetric polynomials and the powers `Z_i^{k+1}`.
    pub fn ik(d: usize, k: usize) -> Self {
        let all: Vec<usize> = (1..=d).collect();
        let mut generators: Vec<Poly> = (1..=d).map(|j| elementary(&all, j)).collect();
        generators.extend((1..=d).map(|i| Poly::var(VarId::z(i)).pow(k as u32 + 1)));
        IdealPresentation {
            nvars: d,
            generators,
            label: IdealLabel::Ik { d, k },
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.homogeneous_degree().is_some())
    }
}

/// `C_μ = { e_j(S) : S ⊂ {Z_1..Z_d}, |S| = i, i - d_i(μ) < j <= i }`, listed
/// by `i`, then `S` in lexicographic order, then `j`. Nothing is removed.
pub fn dcp_generators(mu: &Partition) -> IdealPresentation {
    let d = mu.size();
    let mut generators = Vec::new();
    for i in 1..=d {
        let low = i - mu.d_i(i);
        for s in subsets(d, i) {
            let set: Vec<usize> = s.into_iter().map(|x| x + 1).collect();
            for j in (low + 1)..=i {
                generators.push(elementary(&set, j));
            }
        }
    }
    IdealPresentation {
        nvars: d,
        generators,
        label: IdealLabel::Dcp(mu.clone()),
    }
}

/// Bounded-degree membership test with spans cached per degree.
///
/// `p` is certified when it is a linear combination of products `m·g`
/// (`m` a monomial, `g` a generator) of total degree at most `cap`. When
/// `p` and all generators are homogeneous only products of degree `deg p`
/// can contribute, and only those are built.
pub struct MembershipOracle<'a> {
    ideal: &'a IdealPresentation,
    cap: u32,
    limits: Limits,
    spans: HashMap<Option<u32>, PolySpan>,
}

impl<'a> MembershipOracle<'a> {
    pub fn new(ideal: &'a IdealPresentation, cap: u32, limits: &Limits) -> Self {
        MembershipOracle {
            ideal,
            cap,
            limits: limits.clone(),
            spans: HashMap::new(),
        }
    }

    fn vars(&self) -> Vec<VarId> {
        (1..=self.ideal.nvars).map(VarId::z).collect()
    }

    fn build(&self, degree: Option<u32>) -> Result<PolySpan> {
        let vars = self.vars();
        let mut products: Vec<Poly> = Vec::new();
        for g in &self.ideal.generators {
            let Some(gd) = g.total_degree() else { continue };
            let mdegs: Vec<u32> = match degree {
                Some(e) if e >= gd => vec![e - gd],
                Some(_) => vec![],
                None if self.cap >= gd => (0..=self.cap - gd).collect(),
                None => vec![],
            };
            for md in mdegs {
                for m in monomials_of_degree(&vars, md as usize) {
                    products.push(g.mul_monomial(&m));
                }
                self.limits.check_enumeration(products.len())?;
            }
        }
        let mut span = PolySpan::new();
        for p in &products {
            span.insert(p);
        }
        Ok(span)
    }

    pub fn contains(&mut self, p: &Poly) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        if p.variables().iter().any(|v| !matches!(v, VarId::Z(i) if (1..=self.ideal.nvars as u32).contains(i))) {
            return Ok(false);
        }
        let key = match p.homogeneous_degree() {
            Some(e) if self.ideal.is_homogeneous() => {
                if e > self.cap {
                    return Ok(false);
                }
                Some(e)
            }
            _ => None,
        };
        if !self.spans.contains_key(&key) {
            let span = self.build(key)?;
            self.spans.insert(key, span);
        }
        Ok(self.spans[&key].contains(p))
    }
}

/// Whether `p` is certified to lie in the ideal using products of degree
/// at most `cap`. `false` means "not certified", not a disproof.
pub fn ideal_membership(p: &Poly, ideal: &IdealPresentation, cap: u32, limits: &Limits) -> Result<bool> {
    MembershipOracle::new(ideal, cap, limits).contains(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DcpReport {
    pub d: usize,
    pub k: usize,
    pub mu: String,
    pub cap: u32,
    pub ik_generators: usize,
    pub dcp_generators: usize,
    /// Generators of `I_k` not certified in `I_{μ_k}`.
    pub ik_not_certified: Vec<String>,
    /// Generators of `I_{μ_k}` not certified in `I_k`.
    pub dcp_not_certified: Vec<String>,
    pub passed: bool,
}

/// Both inclusions between `I_k` and `I_{μ_k}`, generator by generator.
pub fn verify_dcp_equality(d: usize, k: usize, cap: u32, limits: &Limits) -> Result<DcpReport> {
    let mu = mu_k(d, k);
    let ik = IdealPresentation::ik(d, k);
    let dcp = dcp_generators(&mu);
    let mut in_dcp = MembershipOracle::new(&dcp, cap, limits);
    let mut in_ik = MembershipOracle::new(&ik, cap, limits);
    let mut ik_not_certified = Vec::new();
    for g in &ik.generators {
        if !in_dcp.contains(g)? {
            ik_not_certified.push(g.to_string());
        }
    }
    let mut dcp_not_certified = Vec::new();
    for g in &dcp.generators {
        if !in_ik.contains(g)? {
            dcp_not_certified.push(g.to_string());
        }
    }
    Ok(DcpReport {
        d,
        k,
        mu: mu.to_string(),
        cap,
        ik_generators: ik.generators.len(),
        dcp_generators: dcp.generators.len(),
        passed: ik_not_certified.is_empty() && dcp_not_certified.is_empty(),
        ik_not_certified,
        dcp_not_certified,
    })
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
    fn rendered(ideal: &IdealPresentation) -> Vec<String> {
        ideal.generators.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn elementary_symmetric() {
        assert_eq!(elementary(&[1, 2, 3], 2).to_string(), "Z1*Z2 + Z1*Z3 + Z2*Z3");
        assert_eq!(elementary(&[2], 0), Poly::one());
        assert!(elementary(&[2], 2).is_zero());
    }

    #[test]
    fn dcp_generator_sets() {
        // μ' = (2), d_1 = 0: singletons give nothing
        assert_eq!(rendered(&dcp_generators(&p(&[1, 1]))), ["Z1 + Z2", "Z1*Z2"]);
        // μ' = (1,1), d_1 = 1: every Z_i appears
        assert_eq!(
            rendered(&dcp_generators(&p(&[2]))),
            ["Z1", "Z2", "Z1 + Z2", "Z1*Z2"]
        );
        for mu in [p(&[1, 2]), p(&[2, 2]), p(&[1, 1, 2])] {
            let gens = dcp_generators(&mu).generators;
            let d = mu.size();
            let all: Vec<usize> = (1..=d).collect();
            for j in 1..=d {
                assert!(gens.contains(&elementary(&all, j)), "{mu} misses e_{j}");
            }
        }
    }

    #[test]
    fn membership_examples() {
        let lim = Limits::default();
        let ik = IdealPresentation::ik(2, 1);
        assert!(ideal_membership(&(&z(1) + &z(2)), &ik, 2, &lim).unwrap());
        let dcp = dcp_generators(&mu_k(2, 1));
        assert!(ideal_membership(&z(2).pow(2), &dcp, 3, &lim).unwrap());
        assert!(!ideal_membership(&Poly::one(), &ik, 4, &lim).unwrap());
        assert!(!ideal_membership(&z(1), &ik, 4, &lim).unwrap());
    }

    #[test]
    fn nonhomogeneous_membership() {
        let lim = Limits::default();
        let ideal = IdealPresentation::custom(1, vec![&z(1) - &Poly::one()], "(Z1 - 1)");
        assert!(ideal_membership(&(&z(1).pow(2) - &Poly::one()), &ideal, 2, &lim).unwrap());
        assert!(!ideal_membership(&z(1), &ideal, 3, &lim).unwrap());
    }

    #[test]
    fn dcp_equality() {
        let lim = Limits::default();
        for (d, k) in [(2, 1), (3, 1), (4, 1), (4, 2), (3, 2)] {
            let r = verify_dcp_equality(d, k, (d * (k + 1)) as u32, &lim).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }
}
