//! Invariant tensors of the unipotent group on F_k^{⊗d} and the Wronskian basis.

use diffhom::tensor::{
    canonical_wronskian_indices, invariant_tensor_basis, verify_wronskian_basis, wronskian_w,
};
use diffhom::Limits;

fn main() -> diffhom::Result<()> {
    for t in invariant_tensor_basis(1, 2)? {
        println!("k=1 d=2 invariant: {t}");
    }
    for alpha in canonical_wronskian_indices(3) {
        println!("W{alpha:?} = {}", wronskian_w(&alpha, 3, 2)?);
    }
    for d in 1..=4 {
        let r = verify_wronskian_basis(d, &Limits::default())?;
        println!("d={d}: {} Wronskians, rank {}, invariant dim {}", r.count, r.rank, r.invariant_dimension);
    }
    Ok(())
}
