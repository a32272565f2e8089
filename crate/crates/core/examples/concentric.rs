//! Concentric cylinders: the diagonal mode sum against the proximity-force
//! estimate.

use eccentric_casimir::energy::{concentric_energy, NumericsPolicy};
use eccentric_casimir::geometry::{pfa_concentric_energy, Geometry};

fn main() -> eccentric_casimir::Result<()> {
    let policy = NumericsPolicy::with_rel_tol(1e-8);
    println!(
        "{:>6} {:>16} {:>16} {:>16} {:>10}",
        "alpha", "tm", "te", "em", "em/pfa"
    );
    for alpha in [1.02, 1.05, 1.1, 1.5, 2.0, 4.0, 10.0] {
        let e = concentric_energy(alpha, &policy)?;
        let pfa = pfa_concentric_energy(&Geometry::new(alpha, 0.0)?);
        println!(
            "{alpha:>6} {:>16.9e} {:>16.9e} {:>16.9e} {:>10.5}",
            e.tm,
            e.te,
            e.em,
            e.em / pfa
        );
    }
    Ok(())
}
