//! The action of an invertible series on a Wronskian: only λ0^d survives.

use diffhom::jet::{act_series, is_diff_homogeneous, leibniz_image, product_lemma_check, JetContext};
use diffhom::poly::{Poly, VarId};

fn main() -> diffhom::Result<()> {
    let ctx = JetContext::new(1, 2, 1)?;
    let x = |i, j| Poly::var(VarId::x(i, j));
    println!("(alpha X0)' = {}", leibniz_image(0, 1, &ctx)?);

    let w = &(&x(0, 0) * &x(1, 1)) - &(&x(1, 0) * &x(0, 1));
    println!("W = {w}");
    println!("alpha.W = {}", act_series(&w, &ctx)?);
    println!("diff-homogeneous: {}", is_diff_homogeneous(&w, 2, &ctx));

    let p = x(0, 1);
    println!("alpha.{p} = {}", act_series(&p, &ctx)?);
    let r = product_lemma_check(&w, &p, &ctx.with_order(1));
    println!("W * {p}: {r:?}");
    Ok(())
}
