use std::cmp::Ordering;
use std::fmt;

use super::VarId;

/// A monomial stored as sorted `(variable, exponent)` pairs with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial::pow(v, 1)
    }

    pub fn pow(v: VarId, e: u32) -> Self {
        if e == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: vec![(v, e)],
            degree: e,
        }
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (VarId, u32)>>(pairs: I) -> Self {
        let mut exps: Vec<(VarId, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        exps.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        let degree = merged.iter().map(|&(_, e)| e).sum();
        Monomial {
            exps: merged,
            degree,
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        match self.exps.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(pos) => self.exps[pos].1,
            Err(_) => 0,
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, ea) = self.exps[i];
            let (b, eb) = other.exps[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    exps.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    /// Lowers the exponent of `v` by `times`; `None` if the exponent is too small.
    pub fn reduce_var(&self, v: VarId, times: u32) -> Option<Monomial> {
        let pos = self.exps.binary_search_by_key(&v, |&(w, _)| w).ok()?;
        let e = self.exps[pos].1;
        if e < times {
            return None;
        }
        let mut exps = self.exps.clone();
        if e == times {
            exps.remove(pos);
        } else {
            exps[pos].1 = e - times;
        }
        Some(Monomial {
            exps,
            degree: self.degree - times,
        })
    }

    /// Drops every occurrence of `v`.
    pub fn without(&self, v: VarId) -> Monomial {
        Monomial::from_pairs(self.exps.iter().copied().filter(|&(w, _)| w != v))
    }

    /// Whether `other` divides `self`.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        other.exps.iter().all(|&(v, e)| self.degree_in(v) >= e)
    }

    /// Largest derivation order among jet/tensor variables.
    pub fn max_order(&self) -> Option<usize> {
        self.vars().filter_map(|v| v.order()).max()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded first, then lexicographic on the sorted exponent list.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
