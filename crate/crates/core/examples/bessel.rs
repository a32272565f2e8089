//! Exponentially scaled modified Bessel functions, including orders and
//! arguments where the unscaled values leave the f64 range.

use eccentric_casimir::specfun::{
    bessel_i_prime_scaled, bessel_i_scaled, bessel_k_prime_scaled, bessel_k_scaled, ScaledBessel,
};

fn main() -> eccentric_casimir::Result<()> {
    println!(
        "{:>6} {:>8} {:>22} {:>22}",
        "n", "x", "e^-x I_n(x)", "e^x K_n(x)"
    );
    for (n, x) in [(0, 1.0), (1, 1.0), (5, 0.5), (0, 50.0), (3, 1e4)] {
        println!(
            "{n:>6} {x:>8} {:>22.15e} {:>22.15e}",
            bessel_i_scaled(n, x)?,
            bessel_k_scaled(n, x)?
        );
    }

    let d = (
        bessel_i_prime_scaled(2, 3.0)?,
        bessel_k_prime_scaled(2, 3.0)?,
    );
    println!("\nI'_2(3) e^-3 = {:.15e}, K'_2(3) e^3 = {:.15e}", d.0, d.1);

    // I_2000(1) ~ 1e-6000 and K_2000(1) ~ 1e6000, but the product is tame
    let b = ScaledBessel::new(2000, 1.0)?;
    println!(
        "\nn = 2000, x = 1: ln I = {:.3}, ln K = {:.3}, I*K = {:.15e} (1/2n = {:.15e})",
        b.i_wide().ln_abs() + 1.0,
        b.k_wide().ln_abs() - 1.0,
        b.ik_product(),
        1.0 / 4000.0
    );
    Ok(())
}
