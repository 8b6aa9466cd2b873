use diffhom::catalog::{composition_of, function_of};
use diffhom::harmonic::{partitions, Partition};
use diffhom::jet::{act_series, identity_specialization, JetContext};
use diffhom::poly::{Monomial, Poly, Rational, VarId};
use diffhom::tensor::{apply_j_ell, d_ell, to_harmonic, Tensor};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Polynomials in `X_i^(j)`, `i <= n`, `j <= k`.
fn jet_poly(n: usize, k: usize) -> impl Strategy<Value = Poly> {
    let var = (0..=n, 0..=k).prop_map(|(i, j)| VarId::x(i, j));
    let mono = prop::collection::vec(var, 0..=3).prop_map(|vs| Monomial::from_pairs(vs.into_iter().map(|v| (v, 1))));
    prop::collection::vec((mono, rational()), 0..=4).prop_map(Poly::from_terms)
}

fn tensor(k: usize, d: usize) -> impl Strategy<Value = Tensor> {
    prop::collection::vec((prop::collection::vec(0..=k, d), rational()), 0..=5).prop_map(move |entries| {
        let mut t = Tensor::zero(k, d);
        for (idx, c) in entries {
            t.add_coord(idx, c).unwrap();
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn action_is_linear_and_identity_acts_trivially(
        p in jet_poly(1, 2),
        q in jet_poly(1, 2),
        a in rational(),
        b in rational(),
    ) {
        let ctx = JetContext::new(1, 3, 2).unwrap();
        let combo = &p.scale(&a) + &q.scale(&b);
        let lhs = act_series(&combo, &ctx).unwrap();
        let rhs = &act_series(&p, &ctx).unwrap().scale(&a) + &act_series(&q, &ctx).unwrap().scale(&b);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(identity_specialization(&act_series(&p, &ctx).unwrap(), 2), p);
    }

    #[test]
    fn harmonic_map_intertwines(t in tensor(2, 3), l in 1usize..=3) {
        let lhs = to_harmonic(&apply_j_ell(&t, l).unwrap());
        prop_assert_eq!(lhs, d_ell(&to_harmonic(&t), 3, l));
    }

    #[test]
    fn composition_round_trip(m in prop::collection::vec(0usize..4, 1..=4)) {
        prop_assume!(m.iter().sum::<usize>() > 0);
        let f = function_of(&m).unwrap();
        prop_assert_eq!(f.len(), m.iter().sum::<usize>());
        prop_assert!(f.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(composition_of(&f, m.len() - 1).unwrap(), m);
    }

    #[test]
    fn conjugation_is_an_involution(d in 1usize..=9, pick in any::<prop::sample::Index>()) {
        let all = partitions(d);
        let mu: &Partition = pick.get(&all);
        prop_assert_eq!(&mu.conjugate_partition().conjugate_partition(), mu);
        prop_assert_eq!(mu.d_i(d), d);
    }
}
