//! Energy against the order cut at several radius ratios.

use eccentric_casimir::energy::{exact_energy, exact_energy_at_cut, NumericsPolicy};
use eccentric_casimir::geometry::Geometry;

fn main() -> eccentric_casimir::Result<()> {
    let policy = NumericsPolicy::with_rel_tol(1e-9);
    for alpha in [1.2, 1.5, 3.0] {
        let g = Geometry::new(alpha, 0.25 * (alpha - 1.0))?;
        let reference = exact_energy(&g, &policy)?;
        println!(
            "alpha = {alpha}, delta = {}: E = {:.12e}",
            g.delta, reference.em
        );
        for n in [2, 4, 8, 16, 32, 64, 128] {
            let e = exact_energy_at_cut(&g, &policy, n)?;
            println!(
                "  N = {n:>4}  rel. change {:.3e}",
                (e.em / reference.em - 1.0).abs()
            );
        }
    }
    Ok(())
}
