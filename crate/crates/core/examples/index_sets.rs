//! The index sets Σ_d and Σ̄_d with their counts.

use diffhom::catalog::{enum_sigma_bar, enum_sigma_d, function_of, sigma_bar_count};
use diffhom::Limits;

fn main() -> diffhom::Result<()> {
    let limits = Limits::default();
    for t in enum_sigma_d(4, &limits)?.elements {
        println!("{:?} witness {}", t.alpha, t.witness);
    }
    let e = enum_sigma_bar(2, 3, &limits)?;
    for idx in &e.elements {
        println!("{idx}  slots {:?}", function_of(&idx.lengths())?);
    }
    for n in 1..=3 {
        let counts: Vec<u128> = (1..=5).map(|d| sigma_bar_count(n, d)).collect();
        println!("N={n}: {counts:?}");
    }
    Ok(())
}
