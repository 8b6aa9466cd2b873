//! Exact sparse multivariate polynomials over the rationals.
//!
//! Variables come in four families (see [`VarId`]): jet coordinates
//! `X_i^(j)`, tensor-slot coordinates `Y_s^(t)`, auxiliary `Z_i`, and the
//! series coefficients `λ_m` (rendered `l0`, `l1`, ...). The textual rendering
//! produced by `Display` is the canonical form used by reports and goldens.

mod det;
mod monomial;
mod polynomial;
mod var;

pub use det::{determinant, from_columns};
pub use monomial::Monomial;
pub use polynomial::{render_rational, Poly};
pub use var::VarId;

/// Exact rational, always in lowest terms with positive denominator.
pub type Rational = num::BigRational;

/// `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;

    fn x(i: usize, j: usize) -> Poly {
        Poly::var(VarId::x(i, j))
    }
    fn y(s: usize, t: usize) -> Poly {
        Poly::var(VarId::y(s, t))
    }
    fn z(i: usize) -> Poly {
        Poly::var(VarId::z(i))
    }

    /// Determinant by summing over all permutations; used to check the
    /// memoized Laplace expansion.
    fn permutation_det(m: &[Vec<Poly>]) -> Poly {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.len();
        let mut acc = Poly::zero();
        for p in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let term: Poly = (0..n).map(|r| m[r][p[r]].clone()).product();
            if inversions % 2 == 0 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        acc
    }

    #[test]
    fn arith_examples() {
        assert!((&x(0, 0) + &(-x(0, 0))).is_zero());
        let lhs = &(&x(0, 0) + &x(1, 0)) * &(&x(0, 0) - &x(1, 0));
        let rhs = &(&x(0, 0) * &x(0, 0)) - &(&x(1, 0) * &x(1, 0));
        assert_eq!(lhs, rhs);
        let p = (&x(0, 0) * &x(1, 0)).scale(&int(3));
        assert_eq!(p.scale(&rat(2, 3)), (&x(0, 0) * &x(1, 0)).scale(&int(2)));
    }

    #[test]
    fn derivative_examples() {
        let p = &(&z(1) * &z(1)) * &z(2);
        assert_eq!(p.partial_derivative(VarId::z(1)), (&z(1) * &z(2)).scale(&int(2)));
        assert!(z(2).partial_derivative(VarId::z(1)).is_zero());
        let q = &(&x(0, 0) * &x(0, 1)) + &x(1, 0);
        assert_eq!(q.partial_derivative(VarId::x(0, 0)), x(0, 1));
    }

    fn wronskian_y() -> Poly {
        &(&y(1, 0) * &y(2, 1)) - &(&y(1, 1) * &y(2, 0))
    }

    #[test]
    fn substitute_examples() {
        let map: HashMap<VarId, Poly> = (0..2)
            .flat_map(|t| [(VarId::y(1, t), x(0, t)), (VarId::y(2, t), x(1, t))])
            .collect();
        let w = wronskian_y().substitute(&map).unwrap();
        assert_eq!(w, &(&x(0, 0) * &x(1, 1)) - &(&x(1, 0) * &x(0, 1)));

        let collapse: HashMap<VarId, Poly> = (0..2)
            .flat_map(|t| [(VarId::y(1, t), x(0, t)), (VarId::y(2, t), x(0, t))])
            .collect();
        assert!(wronskian_y().substitute(&collapse).unwrap().is_zero());

        let zmap: HashMap<VarId, Poly> =
            [(VarId::z(1), z(1)), (VarId::z(2), z(1))].into_iter().collect();
        assert_eq!((&z(1) + &z(2)).substitute(&zmap).unwrap(), z(1).scale(&int(2)));
    }

    #[test]
    fn substitute_rejects_unmapped() {
        let map: HashMap<VarId, Poly> = [(VarId::z(1), z(1))].into_iter().collect();
        let err = (&z(1) + &z(2)).substitute(&map).unwrap_err();
        assert!(matches!(err, crate::Error::UnmappedVariable(v) if v == VarId::z(2)));
    }

    #[test]
    fn determinant_examples() {
        let m = vec![vec![y(1, 0), y(2, 0)], vec![y(1, 1), y(2, 1)]];
        assert_eq!(
            determinant(&m).unwrap(),
            &(&y(1, 0) * &y(2, 1)) - &(&y(2, 0) * &y(1, 1))
        );
        let eq = vec![
            vec![z(1), z(1), z(2)],
            vec![z(2), z(2), z(3)],
            vec![z(3), z(3), Poly::one()],
        ];
        assert!(determinant(&eq).unwrap().is_zero());
        let vdm = vec![vec![Poly::one(), z(1)], vec![Poly::one(), z(2)]];
        assert_eq!(determinant(&vdm).unwrap(), &z(2) - &z(1));
    }

    #[test]
    fn determinant_rejects_non_square() {
        let m = vec![vec![z(1), z(2)], vec![z(3)]];
        assert!(matches!(
            determinant(&m),
            Err(crate::Error::NonSquare { .. })
        ));
    }

    #[test]
    fn determinant_matches_permutation_sum() {
        let m: Vec<Vec<Poly>> = (0..4)
            .map(|r| {
                (0..4)
                    .map(|c| {
                        if (r + 2 * c) % 5 == 0 {
                            Poly::zero()
                        } else {
                            &y(c + 1, r) + &Poly::from_int((r * c) as i64 - 2)
                        }
                    })
                    .collect()
            })
            .collect();
        assert_eq!(determinant(&m).unwrap(), permutation_det(&m));
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(wronskian_y().coefficient_of(VarId::y(2, 1)).unwrap(), y(1, 0));
        assert!((&z(1) * &z(2)).coefficient_of(VarId::z(3)).unwrap().is_zero());
        assert!(matches!(
            (&z(1) * &z(1)).coefficient_of(VarId::z(1)),
            Err(crate::Error::NotLinear { .. })
        ));
    }

    #[test]
    fn coefficient_of_three_by_three_wronskian() {
        // W_(0,0,0): columns v_s = (Y_s^(0), Y_s^(1), Y_s^(2)).
        let m: Vec<Vec<Poly>> = (0..3)
            .map(|r| (1..=3).map(|s| y(s, r)).collect())
            .collect();
        let w = permutation_det(&m);
        assert_eq!(w, determinant(&m).unwrap());
        assert_eq!(w.coefficient_of(VarId::y(3, 2)).unwrap(), wronskian_y());
    }

    #[test]
    fn rendering() {
        let p = &(&x(0, 0) * &x(1, 1)) - &(&x(1, 0) * &x(0, 1));
        assert_eq!(p.to_string(), "X0^(0)*X1^(1) - X0^(1)*X1^(0)");
        let q = &(&z(1) * &z(1)).scale(&rat(-1, 2)) + &Poly::from_int(3);
        assert_eq!(q.to_string(), "3 - 1/2*Z1^2");
        assert_eq!(Poly::zero().to_string(), "0");
        let l = &Poly::var(VarId::lambda(0)) * &x(0, 2);
        assert_eq!(l.to_string(), "X0^(2)*l0");
    }

    #[test]
    fn primitive_normalization() {
        let p = &z(1).scale(&rat(-2, 3)) + &z(2).scale(&rat(4, 9));
        assert_eq!(p.primitive().to_string(), "3*Z1 - 2*Z2");
    }

    #[test]
    fn operator_application() {
        // e_1(∂) applied to Z1 - Z2 vanishes, applied to Z1*Z2 gives Z1 + Z2.
        let e1 = &z(1) + &z(2);
        assert!(e1.apply_as_operator(&(&z(1) - &z(2))).is_zero());
        assert_eq!(e1.apply_as_operator(&(&z(1) * &z(2))), &z(1) + &z(2));
        let cube = z(1).pow(3);
        assert_eq!(
            cube.partial_derivative_n(VarId::z(1), 2),
            z(1).scale(&int(6))
        );
    }
}
