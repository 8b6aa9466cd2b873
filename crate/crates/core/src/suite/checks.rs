//! The check catalogue, grouped into stages that run in dependency order.

use std::collections::BTreeSet;

use super::config::SuiteConfig;
use super::{Outcome, Provenance};
use crate::catalog::{
    build_generator, composition_of, compositions, enum_sigma_bar, enum_sigma_d, function_of,
    multinomial_shift_sum, sigma_bar_count, sigma_class_formula, verify_finite_generation,
    verify_minimality, verify_model_quotient_basis, verify_quotient_basis, weighted_signature,
    GeneratorCatalog,
};
use crate::error::Result;
use crate::harmonic::{
    closed_form_dimension, enum_standard_tableaux, hook_count, mu_k, partitions, perp_basis,
    quotient_dimension, verify_block_surjectivity, verify_dcp_equality, verify_spanning,
    IdealPresentation,
};
use crate::jet::{diff_homog_basis_with, is_diff_homogeneous, JetContext};
use crate::limits::Limits;
use crate::linalg::PolySpan;
use crate::props::{self, PropertyReport};
use crate::tensor::{
    box_tuples, from_multilinear, invariant_tensor_basis_with, project_to_symmetric, to_harmonic,
    verify_wronskian_basis, wronskian_w, Tensor,
};

type Runner = Box<dyn Fn(&Limits) -> Result<Outcome> + Send + Sync>;

pub(crate) struct Check {
    pub id: String,
    pub paper_ref: &'static str,
    pub inputs: String,
    pub provenance: Provenance,
    pub run: Runner,
}

fn check(
    id: String,
    paper_ref: &'static str,
    inputs: String,
    provenance: Provenance,
    run: impl Fn(&Limits) -> Result<Outcome> + Send + Sync + 'static,
) -> Check {
    Check {
        id,
        paper_ref,
        inputs,
        provenance,
        run: Box::new(run),
    }
}

fn property(
    stage: &str,
    name: &str,
    paper_ref: &'static str,
    cfg: &SuiteConfig,
    run: impl Fn(u64, usize, &Limits) -> Result<PropertyReport> + Send + Sync + 'static,
) -> Check {
    let (seed, n) = (cfg.seed, cfg.instances);
    check(
        format!("{stage}.{name}"),
        paper_ref,
        format!("seed={seed}, instances={n}"),
        Provenance::Structural,
        move |limits| {
            let r = run(seed, n, limits)?;
            Ok(Outcome {
                expected: format!("{n} of {n} instances hold"),
                computed: if r.passed() {
                    format!("{} of {n} instances hold", r.instances)
                } else {
                    format!("{} failures: {}", r.failures.len(), r.failures.join("; "))
                },
                passed: r.passed() && r.instances == n,
            })
        },
    )
}

fn eq_outcome<T: PartialEq + ToString>(expected: T, computed: T) -> Outcome {
    Outcome {
        passed: expected == computed,
        expected: expected.to_string(),
        computed: computed.to_string(),
    }
}

fn flag_outcome(expected: &str, passed: bool, computed: String) -> Outcome {
    Outcome {
        expected: expected.to_string(),
        computed,
        passed,
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn pow(base: usize, e: usize) -> u128 {
    (base as u128).pow(e as u32)
}

fn poly_stage(cfg: &SuiteConfig) -> Vec<Check> {
    let s = "1-poly";
    vec![
        property(s, "ring-axioms", "ring axioms", cfg, |seed, n, _| Ok(props::ring_axioms(seed, n))),
        property(s, "substitute-homomorphism", "substitution homomorphism", cfg, |seed, n, _| {
            Ok(props::substitute_homomorphism(seed, n))
        }),
        property(s, "leibniz-rule", "Leibniz rule", cfg, |seed, n, _| Ok(props::leibniz_rule(seed, n))),
        property(s, "determinant-alternation", "determinant alternation", cfg, |seed, n, _| {
            Ok(props::determinant_alternation(seed, n))
        }),
    ]
}

fn jet_stage(cfg: &SuiteConfig) -> Vec<Check> {
    let s = "2-jet";
    let mut out = vec![
        property(s, "action-group-law", "action group law", cfg, |seed, n, _| Ok(props::action_group_law(seed, n))),
        property(s, "action-linearity", "action linearity and identity", cfg, |seed, n, _| {
            Ok(props::action_linearity(seed, n))
        }),
        property(s, "product-implication", "product lemma", cfg, props::product_implication),
    ];
    for n in cfg.n.iter() {
        for d in cfg.d.iter() {
            out.push(check(
                format!("{s}.schmidt-kolchin[N={n},d={d}]"),
                "Schmidt-Kolchin dimension",
                format!("N={n}, d={d}, k={}", d - 1),
                Provenance::ClosedForm,
                move |limits| {
                    let dim = diff_homog_basis_with(&JetContext::new(n, d, d - 1)?, limits)?.dimension();
                    Ok(eq_outcome(pow(n + 1, d), dim as u128))
                },
            ));
            if d <= 3 {
                out.push(check(
                    format!("{s}.stabilization[N={n},d={d}]"),
                    "stabilization in the order",
                    format!("N={n}, d={d}, k={d}"),
                    Provenance::IndependentComputation,
                    move |limits| {
                        let low = diff_homog_basis_with(&JetContext::new(n, d, d - 1)?, limits)?;
                        let high = diff_homog_basis_with(&JetContext::new(n, d, d)?, limits)?;
                        Ok(eq_outcome(low.dimension(), high.dimension()))
                    },
                ));
            }
            for k in cfg.k.iter() {
                out.push(check(
                    format!("{s}.filtration[N={n},d={d},k={k}]"),
                    "order filtration",
                    format!("N={n}, d={d}, k={k}"),
                    Provenance::Structural,
                    move |limits| {
                        let ctx = JetContext::new(n, d, k)?;
                        let basis = diff_homog_basis_with(&ctx, limits)?;
                        let homogeneous = basis.polys().all(|p| is_diff_homogeneous(p, d, &ctx));
                        let span = PolySpan::from_polys(basis.polys());
                        let (nested, low_dim) = if k == 0 {
                            (true, 0)
                        } else {
                            let low = diff_homog_basis_with(&ctx.with_order(k - 1), limits)?;
                            let nested = low.polys().all(|p| span.contains(p));
                            (nested, low.dimension())
                        };
                        let mut expected = "basis elements diff-homogeneous; order k-1 space contained".to_string();
                        let mut passed = homogeneous && nested && low_dim <= basis.dimension();
                        if k + 1 >= d {
                            expected.push_str(&format!("; dim = {}", pow(n + 1, d)));
                            passed &= basis.dimension() as u128 == pow(n + 1, d);
                        }
                        Ok(flag_outcome(
                            &expected,
                            passed,
                            format!(
                                "dim = {} (order k-1: {low_dim}), homogeneous = {homogeneous}, nested = {nested}",
                                basis.dimension()
                            ),
                        ))
                    },
                ));
            }
        }
    }
    out
}

fn tensor_stage(cfg: &SuiteConfig) -> Vec<Check> {
    let s = "3-tensor";
    let mut out = vec![
        property(s, "one-parameter-expansion", "one-parameter expansion", cfg, |seed, n, _| {
            Ok(props::one_parameter_expansion(seed, n))
        }),
        property(s, "intertwining", "intertwining of J^(l) and D_l", cfg, |seed, n, _| Ok(props::intertwining(seed, n))),
        property(s, "kernel-characterization", "kernel characterization", cfg, props::kernel_characterization),
        property(s, "conjugation-independence", "conjugation independence", cfg, |seed, n, limits| {
            props::conjugation_independence(seed, n, limits)
        }),
    ];
    for d in cfg.d.iter() {
        out.push(check(
            format!("{s}.wronskian-basis[d={d}]"),
            "Wronskian basis of unipotent invariants",
            format!("d={d}"),
            Provenance::ClosedForm,
            move |limits| {
                let r = verify_wronskian_basis(d, limits)?;
                Ok(flag_outcome(
                    &format!("d! = {} independent invariant Wronskians", factorial(d)),
                    r.passed && r.rank as u128 == factorial(d),
                    format!("rank {} of {}, invariant dim {}, outside {:?}", r.rank, r.count, r.invariant_dimension, r.outside),
                ))
            },
        ));
        for k in cfg.k.iter() {
            out.push(check(
                format!("{s}.invariant-dim[d={d},k={k}]"),
                "harmonic dimension formula",
                format!("d={d}, k={k}"),
                Provenance::ClosedForm,
                move |limits| {
                    let dim = invariant_tensor_basis_with(k, d, limits)?.len();
                    Ok(eq_outcome(closed_form_dimension(d, k), dim as u128))
                },
            ));
            out.push(check(
                format!("{s}.g-injective[d={d},k={k}]"),
                "harmonic reformulation",
                format!("d={d}, k={k}"),
                Provenance::Structural,
                move |limits| {
                    limits.check_box(pow(k + 1, d).try_into().unwrap_or(usize::MAX))?;
                    let tuples = box_tuples(k, d);
                    let images: BTreeSet<String> = tuples
                        .iter()
                        .map(|idx| Ok(to_harmonic(&Tensor::basis(k, idx)?).to_string()))
                        .collect::<Result<_>>()?;
                    Ok(eq_outcome(tuples.len(), images.len()))
                },
            ));
            out.push(check(
                format!("{s}.bridge[d={d},k={k}]"),
                "harmonic reformulation",
                format!("d={d}, k={k}"),
                Provenance::IndependentComputation,
                move |limits| {
                    let images: Vec<_> = invariant_tensor_basis_with(k, d, limits)?
                        .iter()
                        .map(to_harmonic)
                        .collect();
                    let perp = perp_basis(&IdealPresentation::ik(d, k), k, limits)?;
                    let a = PolySpan::from_polys(images.iter());
                    let b = PolySpan::from_polys(perp.iter());
                    let same = a.rank() == b.rank() && images.iter().all(|p| b.contains(p));
                    Ok(flag_outcome(
                        "g-images of the invariants span the perp space of I_k",
                        same,
                        format!("image rank {}, perp dim {}", a.rank(), b.rank()),
                    ))
                },
            ));
            if d <= 3 {
                for n in cfg.n.iter() {
                    out.push(check(
                        format!("{s}.projection[N={n},d={d},k={k}]"),
                        "invariants to differential polynomials",
                        format!("N={n}, d={d}, k={k}"),
                        Provenance::Structural,
                        move |limits| {
                            let ctx = JetContext::new(n, d, k)?;
                            let mut total = 0;
                            let mut bad = Vec::new();
                            for t in invariant_tensor_basis_with(k, d, limits)? {
                                for assignment in box_tuples(n, d) {
                                    total += 1;
                                    let p = project_to_symmetric(&t, &assignment)?;
                                    if !is_diff_homogeneous(&p, d, &ctx) {
                                        bad.push(p.to_string());
                                    }
                                }
                            }
                            Ok(flag_outcome(
                                "every projection diff-homogeneous",
                                bad.is_empty(),
                                format!("{} of {total} diff-homogeneous; failing: {}", total - bad.len(), bad.join("; ")),
                            ))
                        },
                    ));
                }
            }
        }
    }
    out
}

fn harmonic_stage(cfg: &SuiteConfig) -> Vec<Check> {
    let s = "4-harmonic";
    let mut out = vec![property(s, "elementary-recurrence", "elementary symmetric recurrence", cfg, |seed, n, _| {
        Ok(props::elementary_recurrence(seed, n))
    })];
    for d in cfg.d.iter() {
        out.push(check(
            format!("{s}.conjugation[d={d}]"),
            "partition conjugation",
            format!("d={d}"),
            Provenance::Structural,
            move |_| {
                let all = partitions(d);
                let bad: Vec<String> = all
                    .iter()
                    .filter(|mu| mu.conjugate_partition().conjugate_partition() != **mu || mu.d_i(d) != d)
                    .map(|mu| mu.to_string())
                    .collect();
                Ok(flag_outcome(
                    "conjugation is an involution and d_d = d",
                    bad.is_empty(),
                    format!("{} partitions, violations: {bad:?}", all.len()),
                ))
            },
        ));
        out.push(check(
            format!("{s}.tableaux[d={d}]"),
            "standard tableaux",
            format!("d={d}"),
            Provenance::IndependentComputation,
            move |limits| {
                let mut expected = Vec::new();
                let mut computed = Vec::new();
                for mu in partitions(d) {
                    expected.push(hook_count(&mu));
                    computed.push(enum_standard_tableaux(&mu, limits)?.len());
                }
                Ok(eq_outcome(format!("{expected:?}"), format!("{computed:?}")))
            },
        ));
        for k in cfg.k.iter() {
            let inputs = format!("d={d}, k={k}");
            out.push(check(
                format!("{s}.perp-dim[d={d},k={k}]"),
                "harmonic dimension formula",
                inputs.clone(),
                Provenance::ClosedForm,
                move |limits| {
                    let dim = perp_basis(&IdealPresentation::ik(d, k), k, limits)?.len();
                    Ok(eq_outcome(closed_form_dimension(d, k), dim as u128))
                },
            ));
            out.push(check(
                format!("{s}.oberst[d={d},k={k}]"),
                "Oberst duality",
                inputs.clone(),
                Provenance::IndependentComputation,
                move |limits| {
                    let perp = perp_basis(&IdealPresentation::ik(d, k), k, limits)?.len();
                    Ok(eq_outcome(quotient_dimension(d, k, limits)?, perp))
                },
            ));
            out.push(check(
                format!("{s}.dcp[d={d},k={k}]"),
                "DeConcini-Procesi identification",
                inputs.clone(),
                Provenance::IndependentComputation,
                move |limits| {
                    let cap = limits.membership_cap.unwrap_or((d * (k + 1)) as u32);
                    let r = verify_dcp_equality(d, k, cap, limits)?;
                    Ok(flag_outcome(
                        &format!("I_k = I_mu for mu = {} up to degree {cap}", r.mu),
                        r.passed,
                        format!(
                            "uncertified in I_mu: {:?}; uncertified in I_k: {:?}",
                            r.ik_not_certified, r.dcp_not_certified
                        ),
                    ))
                },
            ));
            out.push(check(
                format!("{s}.spanning[d={d},k={k}]"),
                "spanning by Vandermonde products",
                inputs.clone(),
                Provenance::IndependentComputation,
                move |limits| {
                    let r = verify_spanning(&mu_k(d, k), limits)?;
                    Ok(flag_outcome(
                        &format!("rank = dim perp of I_mu ({})", r.dimension_method),
                        r.passed,
                        format!(
                            "mu = {}, {} tableaux, rank {} of {}, in perp = {}, bound certified = {}",
                            r.mu, r.tableaux, r.rank, r.dimension, r.in_perp, r.bound_certified
                        ),
                    ))
                },
            ));
            out.push(check(
                format!("{s}.block-surjectivity[d={d},k={k}]"),
                "block products of Wronskians",
                inputs,
                Provenance::IndependentComputation,
                move |limits| {
                    let r = verify_block_surjectivity(d, k, limits)?;
                    Ok(flag_outcome(
                        "block products are invariant and reach full rank",
                        r.passed,
                        format!(
                            "{} products over {} arrangements, rank {} of {}, invariant = {}, escalated = {}",
                            r.products, r.arrangements, r.rank, r.target, r.all_invariant, r.escalated
                        ),
                    ))
                },
            ));
        }
    }
    out
}

fn catalog_stage(cfg: &SuiteConfig) -> Vec<Check> {
    let s = "5-catalog";
    let mut out = Vec::new();
    let d_max = cfg.d.max;
    for d in cfg.d.iter() {
        out.push(check(
            format!("{s}.sigma[d={d}]"),
            "counting lemma for Sigma_d",
            format!("d={d}"),
            Provenance::ClosedForm,
            move |limits| {
                let e = enum_sigma_d(d, limits)?;
                let expected: Vec<usize> = (1..=d)
                    .map(|c| sigma_class_formula(d, c))
                    .collect();
                let computed: Vec<usize> = (1..=d).map(|c| e.classes.get(&c).copied().unwrap_or(0)).collect();
                let total = if d >= 2 { factorial(d) / 2 } else { 1 };
                Ok(flag_outcome(
                    &format!("|Sigma_d| = {total}, classes {expected:?}"),
                    e.elements.len() as u128 == total && expected == computed && e.witness_mismatches.is_empty(),
                    format!("|Sigma_d| = {}, classes {computed:?}, witness mismatches {}", e.elements.len(), e.witness_mismatches.len()),
                ))
            },
        ));
        out.push(check(
            format!("{s}.model-quotient[d={d}]"),
            "independence of the Wronskian family",
            format!("d={d}"),
            Provenance::IndependentComputation,
            move |limits| {
                let r = verify_model_quotient_basis(d, limits)?;
                Ok(flag_outcome(
                    "Sigma_d Wronskians complete the order d-2 invariants to a basis",
                    r.passed,
                    format!("{} + {} vs {}", r.low_dimension, r.family, r.full_dimension),
                ))
            },
        ));
        out.push(check(
            format!("{s}.triangularity[d={d}]"),
            "coefficient extraction",
            format!("d={d}"),
            Provenance::Structural,
            move |limits| {
                let r = props::triangularity(d, limits)?;
                Ok(flag_outcome(
                    "coefficient of Y_k^(d-1) is a signed smaller Wronskian",
                    r.passed(),
                    format!("{} tuples, failures: {:?}", r.instances, r.failures),
                ))
            },
        ));
        for n in cfg.n.iter() {
            let inputs = format!("N={n}, d={d}");
            out.push(check(
                format!("{s}.sigma-bar[N={n},d={d}]"),
                "counting lemma for nested indices",
                inputs.clone(),
                Provenance::ClosedForm,
                move |limits| {
                    let e = enum_sigma_bar(n, d, limits)?;
                    let consistent = e.class_mismatches.is_empty() && e.singleton_check != Some(false);
                    Ok(flag_outcome(
                        &sigma_bar_count(n, d).to_string(),
                        consistent && e.elements.len() as u128 == sigma_bar_count(n, d),
                        format!("{} (class mismatches {})", e.elements.len(), e.class_mismatches.len()),
                    ))
                },
            ));
            out.push(check(
                format!("{s}.bijection[N={n},d={d}]"),
                "compositions and non-decreasing functions",
                inputs.clone(),
                Provenance::Structural,
                move |limits| {
                    let all = compositions(n, d);
                    limits.check_enumeration(all.len())?;
                    let bad = all
                        .iter()
                        .filter(|m| {
                            function_of(m)
                                .and_then(|f| composition_of(&f, n))
                                .map_or(true, |back| back != **m)
                        })
                        .count();
                    Ok(eq_outcome(0, bad))
                },
            ));
            if d >= 2 {
                out.push(check(
                    format!("{s}.multinomial[N={n},d={d}]"),
                    "multinomial identity",
                    inputs.clone(),
                    Provenance::ClosedForm,
                    move |_| {
                        let target = num::BigInt::from(pow(n + 1, d - 2));
                        let ok = (0..=n).all(|j| (j + 1..=n).all(|l| multinomial_shift_sum(n, d, j, l) == target));
                        Ok(flag_outcome(&format!("(N+1)^(d-2) = {target} for all j < l"), ok, format!("all equal = {ok}")))
                    },
                ));
            }
            out.push(check(
                format!("{s}.two-paths[N={n},d={d}]"),
                "substituted Wronskians",
                inputs.clone(),
                Provenance::IndependentComputation,
                move |limits| {
                    let mut expected = Vec::new();
                    let mut computed = Vec::new();
                    for idx in enum_sigma_bar(n, d, limits)?.elements {
                        computed.push(build_generator(&idx, n, d)?.to_string());
                        let t = from_multilinear(&wronskian_w(&idx.flatten(), d, d - 1)?, d - 1, d)?;
                        let p = project_to_symmetric(&t, &function_of(&idx.lengths())?)?;
                        expected.push(p.sign_normalized().to_string());
                    }
                    Ok(eq_outcome(expected.join("; "), computed.join("; ")))
                },
            ));
            if cfg.k.contains(d - 1) {
                out.push(check(
                    format!("{s}.quotient-basis[N={n},d={d}]"),
                    "generators as a quotient basis",
                    inputs,
                    Provenance::IndependentComputation,
                    move |limits| {
                        let r = verify_quotient_basis(n, d, limits)?;
                        Ok(flag_outcome(
                            &format!("{} - {} = {}", r.full_dimension, r.low_dimension, sigma_bar_count(n, d)),
                            r.passed && r.generators as u128 == sigma_bar_count(n, d),
                            format!(
                                "{} generators, homogeneous = {}, spans = {}, independent = {}",
                                r.generators, r.all_homogeneous, r.spans_full, r.independent_mod_low
                            ),
                        ))
                    },
                ));
            }
        }
    }
    for n in cfg.n.iter() {
        for k in cfg.k.iter() {
            let inputs = format!("N={n}, k={k}");
            out.push(check(
                format!("{s}.signature[N={n},k={k}]"),
                "weighted projective signature",
                inputs.clone(),
                Provenance::ClosedForm,
                move |limits| {
                    let catalog = GeneratorCatalog::build(n, k, limits)?;
                    let computed: Vec<(usize, u128)> = catalog
                        .families
                        .iter()
                        .map(|f| (f.degree, f.generators.len() as u128))
                        .collect();
                    Ok(eq_outcome(format!("{:?}", weighted_signature(n, k)), format!("{computed:?}")))
                },
            ));
            if k < d_max {
                out.push(check(
                    format!("{s}.minimality[N={n},k={k}]"),
                    "minimal generating set",
                    inputs.clone(),
                    Provenance::IndependentComputation,
                    move |limits| {
                        let r = verify_minimality(n, k, limits)?;
                        Ok(flag_outcome(
                            "each G_i has exact order i-1 and is independent modulo lower order",
                            r.passed,
                            format!("{:?}", r.rows.iter().map(|r| (r.degree, r.count, r.exact_order, r.independent_mod_lower)).collect::<Vec<_>>()),
                        ))
                    },
                ));
            }
            if k >= 1 {
                out.push(check(
                    format!("{s}.finite-generation[N={n},k={k}]"),
                    "finite generation",
                    format!("N={n}, k={k}, dMax={d_max}"),
                    Provenance::IndependentComputation,
                    move |limits| {
                        let r = verify_finite_generation(n, k, d_max, limits)?;
                        let dims: Vec<(usize, usize, usize)> =
                            r.degrees.iter().map(|c| (c.d, c.span_rank, c.invariant_dimension)).collect();
                        Ok(flag_outcome(
                            "generator monomials span every degree",
                            r.passed,
                            format!("(d, rank, dim) = {dims:?}"),
                        ))
                    },
                ));
            }
        }
    }
    out
}

pub(crate) fn stages(cfg: &SuiteConfig) -> Vec<Vec<Check>> {
    vec![
        poly_stage(cfg),
        jet_stage(cfg),
        tensor_stage(cfg),
        harmonic_stage(cfg),
        catalog_stage(cfg),
    ]
}
