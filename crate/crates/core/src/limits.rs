//! Resource caps shared by the enumeration and linear-algebra routines.
//!
//! Every routine whose work grows combinatorially checks its problem size
//! against these caps up front and returns [`Error::ResourceLimit`] instead
//! of starting a computation that cannot finish at desk scale.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ENV_MAX_MONOMIALS: &str = "DIFFHOM_MAX_MONOMIALS";
pub const ENV_MAX_BOX: &str = "DIFFHOM_MAX_BOX";
pub const ENV_MAX_ENUMERATION: &str = "DIFFHOM_MAX_ENUMERATION";
pub const ENV_MEMBERSHIP_CAP: &str = "DIFFHOM_MEMBERSHIP_CAP";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, rename_all = "camelCase")]
pub struct Limits {
    /// Largest number of candidate monomials in a jet-space linear system.
    pub max_monomials: usize,
    /// Largest coordinate box: `(k+1)^d` for tensors and harmonic spaces.
    pub max_box: usize,
    /// Largest search space for index-set and tableau enumeration.
    pub max_enumeration: usize,
    /// Default degree cap for bounded ideal membership; `None` means `d(k+1)`.
    pub membership_cap: Option<u32>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_monomials: 40_000,
            max_box: 20_000,
            max_enumeration: 5_000_000,
            membership_cap: None,
        }
    }
}

impl Limits {
    /// Defaults overridden by the `DIFFHOM_*` environment variables.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        limits.apply_env()?;
        Ok(limits)
    }

    pub fn apply_env(&mut self) -> Result<()> {
        if let Some(v) = read_env(ENV_MAX_MONOMIALS)? {
            self.max_monomials = v;
        }
        if let Some(v) = read_env(ENV_MAX_BOX)? {
            self.max_box = v;
        }
        if let Some(v) = read_env(ENV_MAX_ENUMERATION)? {
            self.max_enumeration = v;
        }
        if let Some(v) = read_env(ENV_MEMBERSHIP_CAP)? {
            self.membership_cap = Some(v as u32);
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_monomials == 0 || self.max_box == 0 || self.max_enumeration == 0 {
            return Err(Error::Config("resource caps must be positive".into()));
        }
        if self.membership_cap == Some(0) {
            return Err(Error::Config("membership cap must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn check_monomials(&self, size: usize) -> Result<()> {
        check("jet monomial count", size, self.max_monomials)
    }

    pub(crate) fn check_box(&self, size: usize) -> Result<()> {
        check("coordinate box", size, self.max_box)
    }

    pub(crate) fn check_enumeration(&self, size: usize) -> Result<()> {
        check("enumeration", size, self.max_enumeration)
    }
}

fn check(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::ResourceLimit { what, size, cap })
    } else {
        Ok(())
    }
}

fn read_env(name: &str) -> Result<Option<usize>> {
    match std::env::var(name) {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::Config(format!("{name}={raw:?} is not a non-negative integer"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Error::Config(format!("{name}: {e}"))),
    }
}

/// `base^exp`, saturating at `usize::MAX`.
pub(crate) fn saturating_pow(base: usize, exp: usize) -> usize {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// Binomial coefficient, saturating.
pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(16, 5), 4368);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn zero_caps_rejected() {
        let limits = Limits {
            max_box: 0,
            ..Limits::default()
        };
        assert!(matches!(limits.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn over_cap_is_resource_limit() {
        let limits = Limits {
            max_box: 8,
            ..Limits::default()
        };
        assert!(limits.check_box(8).is_ok());
        assert!(limits.check_box(9).unwrap_err().is_resource_limit());
    }
}
