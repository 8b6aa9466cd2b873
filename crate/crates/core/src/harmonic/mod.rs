//! Partitions and tableaux, DeConcini–Procesi ideals, perp spaces of
//! differential operators and the harmonic-polynomial dimension checks.
//!
//! Auxiliary variables are `Z_1..Z_d`. A polynomial `Q` acts as the
//! constant-coefficient operator `Q(∂)`; the perp space of an ideal is the
//! set of polynomials killed by all of its elements.

mod ideal;
mod partition;
mod perp;

pub use ideal::{
    dcp_generators, elementary, ideal_membership, verify_dcp_equality, DcpReport, IdealLabel,
    IdealPresentation, MembershipOracle,
};
pub use partition::{
    delta_t, enum_standard_tableaux, hook_count, mu_k, partitions, vandermonde, Partition, YoungTableau,
};
pub use perp::{
    box_monomials, closed_form_dimension, perp_basis, quotient_dimension, quotient_dimension_of,
    verify_block_surjectivity, verify_spanning, BlockReport, SpanningReport,
};
