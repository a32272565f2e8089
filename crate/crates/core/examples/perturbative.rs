//! Small-eccentricity coefficient dE/delta^2 per polarization, as a ratio to
//! the proximity-force value.

use eccentric_casimir::energy::{perturbative_delta_e, NumericsPolicy};
use eccentric_casimir::geometry::{pfa_eccentric_delta_e, Channel, Geometry};

fn main() -> eccentric_casimir::Result<()> {
    let policy = NumericsPolicy::with_rel_tol(1e-7);
    println!(
        "{:>8} {:>14} {:>9} {:>9} {:>9} {:>6}",
        "alpha", "dE/d^2 (em)", "tm/pfa", "te/pfa", "em/pfa", "n_max"
    );
    for alpha in [1.01, 1.02, 1.05, 1.1, 1.2, 1.5, 2.0, 3.0, 5.0, 10.0] {
        let e = perturbative_delta_e(alpha, &policy)?;
        // PFA at unit delta gives the coefficient directly
        let g = Geometry::new(alpha, 0.0)?;
        let unit = Geometry { delta: 1.0, ..g };
        let pfa = |c| pfa_eccentric_delta_e(&unit, c);
        println!(
            "{alpha:>8} {:>14.6e} {:>9.5} {:>9.5} {:>9.5} {:>6}",
            e.em,
            e.tm / pfa(Channel::Tm),
            e.te / pfa(Channel::Te),
            e.em / pfa(Channel::Em),
            e.diagnostics.order_cut
        );
    }
    Ok(())
}
