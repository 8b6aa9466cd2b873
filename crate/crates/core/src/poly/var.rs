use std::fmt;

use serde::{Deserialize, Serialize};

/// A polynomial variable, tagged by family.
///
/// The derived order compares the family tag first (jet, tensor, auxiliary,
/// series coefficient) and then the indices lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VarId {
    /// `X_var^(order)`: the `order`-th derivative of the projective coordinate `var`.
    JetX { var: u32, order: u32 },
    /// `Y_slot^(order)`: basis vector `f_order` of tensor slot `slot` (1-based).
    TensorY { slot: u32, order: u32 },
    /// `Z_i` (1-based), the harmonic-side variables.
    Z(u32),
    /// `λ_m = α^(m)(0)/m!`, the `m`-th Taylor coefficient of a formal series.
    Lambda(u32),
}

impl VarId {
    pub fn x(var: usize, order: usize) -> Self {
        VarId::JetX {
            var: var as u32,
            order: order as u32,
        }
    }

    pub fn y(slot: usize, order: usize) -> Self {
        VarId::TensorY {
            slot: slot as u32,
            order: order as u32,
        }
    }

    pub fn z(i: usize) -> Self {
        VarId::Z(i as u32)
    }

    pub fn lambda(m: usize) -> Self {
        VarId::Lambda(m as u32)
    }

    /// Derivation order of a jet or tensor variable.
    pub fn order(&self) -> Option<usize> {
        match *self {
            VarId::JetX { order, .. } | VarId::TensorY { order, .. } => Some(order as usize),
            _ => None,
        }
    }

    pub fn is_jet(&self) -> bool {
        matches!(self, VarId::JetX { .. })
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarId::JetX { var, order } => write!(f, "X{var}^({order})"),
            VarId::TensorY { slot, order } => write!(f, "Y{slot}^({order})"),
            VarId::Z(i) => write!(f, "Z{i}"),
            VarId::Lambda(m) => write!(f, "l{m}"),
        }
    }
}
