//! Dimensions of diff-homogeneous polynomials of degree d and order k,
//! against (N+1)^d once k >= d-1.

use diffhom::jet::{diff_homog_basis, JetContext};

fn main() -> diffhom::Result<()> {
    println!(" N  d  k   dim  (N+1)^d");
    for n in 1..=2 {
        for d in 1..=4 {
            for k in 0..d {
                if n == 2 && d == 4 && k == 3 {
                    continue;
                }
                let dim = diff_homog_basis(&JetContext::new(n, d, k)?)?.dimension();
                let target = if k + 1 >= d { format!("{}", (n + 1).pow(d as u32)) } else { "-".into() };
                println!("{n:>2} {d:>2} {k:>2} {dim:>5}  {target}");
            }
        }
    }
    Ok(())
}
