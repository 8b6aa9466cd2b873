//! dim I_k^⊥ three ways: kernel of the generator operators, monomial count
//! of the quotient, closed form.

use diffhom::harmonic::{closed_form_dimension, mu_k, perp_basis, quotient_dimension, IdealPresentation};
use diffhom::Limits;

fn main() -> diffhom::Result<()> {
    let limits = Limits::default();
    println!(" d  k  mu_k          perp  quotient  formula");
    for d in 1..=5 {
        for k in 1..=3 {
            let perp = perp_basis(&IdealPresentation::ik(d, k), k, &limits)?.len();
            let quotient = quotient_dimension(d, k, &limits)?;
            let mu = mu_k(d, k).to_string();
            println!("{d:>2} {k:>2}  {mu:<12} {perp:>5} {quotient:>9} {:>8}", closed_form_dimension(d, k));
        }
    }
    let basis = perp_basis(&IdealPresentation::ik(3, 1), 1, &limits)?;
    for p in basis {
        println!("  {p}");
    }
    Ok(())
}
