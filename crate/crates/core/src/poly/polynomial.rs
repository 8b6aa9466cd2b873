use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};

use super::{Monomial, Rational, VarId};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so equal polynomials
/// have identical term maps and iteration follows the monomial order. No
/// stored coefficient is ever zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: VarId) -> Self {
        Poly::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` if every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// Largest derivation order of a jet or tensor variable present.
    pub fn max_order(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_order).max()
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial_derivative(&self, v: VarId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(v);
            if e == 0 {
                continue;
            }
            let reduced = m.reduce_var(v, 1).expect("exponent checked above");
            out.add_term(reduced, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// `∂^e/∂v^e` applied `e` times.
    pub fn partial_derivative_n(&self, v: VarId, e: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let have = m.degree_in(v);
            if have < e {
                continue;
            }
            let falling: BigInt = ((have - e + 1)..=have).map(BigInt::from).product();
            let reduced = m.reduce_var(v, e).expect("exponent checked above");
            out.add_term(reduced, c * Rational::from_integer(falling));
        }
        out
    }

    /// Applies the constant-coefficient operator `∂^m` for a monomial `m`.
    pub fn apply_monomial_operator(&self, m: &Monomial) -> Poly {
        let mut out = Poly::zero();
        'terms: for (n, c) in &self.terms {
            let mut coeff = c.clone();
            let mut reduced = n.clone();
            for &(v, e) in m.exponents() {
                let have = reduced.degree_in(v);
                if have < e {
                    continue 'terms;
                }
                let falling: BigInt = ((have - e + 1)..=have).map(BigInt::from).product();
                coeff *= Rational::from_integer(falling);
                reduced = reduced.reduce_var(v, e).expect("exponent checked above");
            }
            out.add_term(reduced, coeff);
        }
        out
    }

    /// Applies the differential operator `Q(∂)` obtained from `self` to `target`.
    pub fn apply_as_operator(&self, target: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let image = target.apply_monomial_operator(m);
            out.add_assign_ref(&image.scale(c));
        }
        out
    }

    /// Ring homomorphism sending each variable to its image in `map`.
    ///
    /// Every variable of `self` must be mapped; a missing one is an error,
    /// never an implicit identity.
    pub fn substitute(&self, map: &HashMap<VarId, Poly>) -> Result<Poly> {
        let mut powers: HashMap<(VarId, u32), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            for &(v, e) in m.exponents() {
                let image = map.get(&v).ok_or(Error::UnmappedVariable(v))?;
                let power = powers
                    .entry((v, e))
                    .or_insert_with(|| image.pow(e))
                    .clone();
                acc = &acc * &power;
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign_ref(&acc);
        }
        Ok(out)
    }

    /// Replaces the listed variables by rational values, leaving the rest untouched.
    pub fn specialize(&self, values: &HashMap<VarId, Rational>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept = Vec::new();
            for &(v, e) in m.exponents() {
                match values.get(&v) {
                    Some(val) => coeff *= num::pow(val.clone(), e as usize),
                    None => kept.push((v, e)),
                }
            }
            out.add_term(Monomial::from_pairs(kept), coeff);
        }
        out
    }

    /// The polynomial `q` with `self = q*v + (terms free of v)`.
    pub fn coefficient_of(&self, v: VarId) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            match m.degree_in(v) {
                0 => {}
                1 => out.add_term(m.without(v), c.clone()),
                degree => return Err(Error::NotLinear { var: v, degree }),
            }
        }
        Ok(out)
    }

    /// Scales so that the coefficients are coprime integers and the first
    /// term in monomial order has a positive coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            gcd = gcd.gcd(&n);
        }
        let first_negative = self
            .terms
            .values()
            .next()
            .map(|c| c.is_negative())
            .unwrap_or(false);
        let mut factor = Rational::new(lcm, gcd);
        if first_negative {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Flips the sign if needed so that the first term has a positive coefficient.
    pub fn sign_normalized(&self) -> Poly {
        match self.terms.values().next() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                f.write_str(&render_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", render_rational(&abs))?;
            }
        }
        Ok(())
    }
}

/// `p/q` for proper fractions, plain integer otherwise.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc.add_assign_ref(&p);
        }
        acc
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |acc, p| &acc * &p)
    }
}
