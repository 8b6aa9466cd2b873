//! Standard tableaux, their Vandermonde products and the spanning check.

use diffhom::harmonic::{delta_t, enum_standard_tableaux, mu_k, verify_spanning, Partition};
use diffhom::Limits;

fn main() -> diffhom::Result<()> {
    let limits = Limits::default();
    let shape = Partition::new(&[1, 2], 3)?;
    for t in enum_standard_tableaux(&shape, &limits)? {
        println!("{t}: {}", delta_t(&t));
    }
    for mu in [Partition::new(&[2, 2], 4)?, mu_k(5, 1), Partition::new(&[1, 3], 4)?] {
        let r = verify_spanning(&mu, &limits)?;
        println!("{}: {} tableaux, rank {} of {}", r.mu, r.tableaux, r.rank, r.dimension);
    }
    Ok(())
}
