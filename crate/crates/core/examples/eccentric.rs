//! Exact interaction energy of eccentric cylinders and its shift away from
//! the concentric position.

use eccentric_casimir::energy::{exact_delta_e, exact_energy, NumericsPolicy};
use eccentric_casimir::geometry::Geometry;

fn main() -> eccentric_casimir::Result<()> {
    let policy = NumericsPolicy::with_rel_tol(1e-7);
    let alpha = 2.0;
    println!("alpha = {alpha}");
    println!(
        "{:>6} {:>16} {:>16} {:>16} {:>5} {:>6}",
        "delta", "E", "dE", "err", "N", "inner"
    );
    for delta in [0.0, 0.1, 0.2, 0.4, 0.6, 0.8] {
        let g = Geometry::new(alpha, delta)?;
        let e = exact_energy(&g, &policy)?;
        let d = exact_delta_e(&g, &policy)?;
        println!(
            "{delta:>6} {:>16.9e} {:>16.9e} {:>16.2e} {:>5} {:>6}",
            e.em, d.em, e.err_estimate, e.diagnostics.order_cut, e.diagnostics.inner_cut
        );
    }
    // the energy is largest at delta = 0: the centred position is unstable
    Ok(())
}
