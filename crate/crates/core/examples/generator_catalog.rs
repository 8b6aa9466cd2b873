//! Generators G_1..G_{k+1}, their quotient-basis property and finite generation.

use diffhom::catalog::{verify_finite_generation, verify_minimality, verify_quotient_basis, GeneratorCatalog};
use diffhom::Limits;

fn main() -> diffhom::Result<()> {
    let limits = Limits::default();
    let catalog = GeneratorCatalog::build(1, 2, &limits)?;
    println!("{}", serde_json::to_string_pretty(&catalog.to_json())?);
    for row in catalog.count_table() {
        println!("degree {}: {} (formula {})", row.degree, row.computed, row.formula);
    }
    let q = verify_quotient_basis(2, 3, &limits)?;
    println!("N=2 d=3: {} - {} = {} generators, passed {}", q.full_dimension, q.low_dimension, q.generators, q.passed);
    let g = verify_finite_generation(1, 1, 4, &limits)?;
    println!("finite generation N=1 k=1 up to degree 4: {}", g.passed);
    println!("minimality N=1 k=2: {}", verify_minimality(1, 2, &limits)?.passed);
    Ok(())
}
