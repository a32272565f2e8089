//! How closely the eccentric inner sum reproduces the cylinder-plane kernel
//! as the radii grow at fixed gap.

use eccentric_casimir::kernel::{addition_theorem_residual, SumKind};

fn main() -> eccentric_casimir::Result<()> {
    let h = 1.0;
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "x", "(0,0)", "(1,-1)", "(2,2)", "(0,0)'"
    );
    for x in [10.0, 30.0, 50.0, 100.0, 300.0, 1000.0] {
        let cut = (25.0 * x + 200.0) as usize;
        let r = |n, p, k| addition_theorem_residual(x, h, n, p, cut, k);
        println!(
            "{x:>8} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e}",
            r(0, 0, SumKind::Unprimed)?,
            r(1, -1, SumKind::Unprimed)?,
            r(2, 2, SumKind::Unprimed)?,
            r(0, 0, SumKind::Primed)?
        );
    }
    Ok(())
}
