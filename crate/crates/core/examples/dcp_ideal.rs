//! The DeConcini-Procesi generators of μ_k and the equality with I_k.

use diffhom::harmonic::{dcp_generators, ideal_membership, mu_k, verify_dcp_equality, IdealPresentation};
use diffhom::poly::{Poly, VarId};
use diffhom::Limits;

fn main() -> diffhom::Result<()> {
    let limits = Limits::default();
    let mu = mu_k(3, 1);
    println!("mu_1(3) = {mu}, conjugate {:?}", mu.conjugate());
    for g in dcp_generators(&mu).generators {
        println!("  {g}");
    }
    let ik = IdealPresentation::ik(3, 1);
    let z1sq = Poly::var(VarId::z(1)).pow(2);
    println!("Z1^2 in I_1: {}", ideal_membership(&z1sq, &ik, 4, &limits)?);
    for (d, k) in [(3, 1), (4, 1), (4, 2)] {
        let r = verify_dcp_equality(d, k, (d * (k + 1)) as u32, &limits)?;
        println!("d={d} k={k}: equal = {}", r.passed);
    }
    Ok(())
}
