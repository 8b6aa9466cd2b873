//! Index sets `Σ_d`, `Σ̄_d` and the generator catalog for `Diff`-homogeneous
//! polynomials in `N+1` variables.

mod generators;
mod index;

pub use generators::*;
pub use index::*;
