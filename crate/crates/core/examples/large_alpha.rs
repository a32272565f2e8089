//! Widely separated radii: the perturbative coefficient against the
//! (alpha^4 ln alpha)^-1 law.

use eccentric_casimir::energy::{perturbative_delta_e, NumericsPolicy};
use eccentric_casimir::geometry::{asymptotic_constant, asymptotic_delta_e, Geometry};

fn main() -> eccentric_casimir::Result<()> {
    println!("C = {:.6}", asymptotic_constant());
    let policy = NumericsPolicy::with_rel_tol(1e-7);
    println!(
        "{:>10} {:>14} {:>14} {:>10} {:>10}",
        "ln alpha", "dE/d^2", "asymptotic", "ratio", "tm/te"
    );
    for l in [1.0, 2.0, 3.0, 5.0, 10.0, 20.0, 40.0] {
        let alpha = f64::exp(l);
        let e = perturbative_delta_e(alpha, &policy)?;
        let asym = asymptotic_delta_e(&Geometry::new(alpha, 1.0)?)?;
        println!(
            "{l:>10} {:>14.6e} {:>14.6e} {:>10.5} {:>10.3e}",
            e.em,
            asym,
            e.em / asym,
            e.tm / e.te
        );
    }
    Ok(())
}
