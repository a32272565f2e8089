//! Converting reduced energies to joules for a concrete pair of wires.

use eccentric_casimir::energy::{exact_energy, NumericsPolicy};
use eccentric_casimir::geometry::{to_physical, Geometry, ReducedEnergy};

fn main() -> eccentric_casimir::Result<()> {
    // 1 um inner radius, 1.5 um outer, 1 mm long
    let (a, length) = (1e-6, 1e-3);
    let g = Geometry::new(1.5, 0.1)?.with_scales(a, length);
    let e = exact_energy(&g, &NumericsPolicy::default())?;
    println!("E = {:.6e} E0", e.em);
    println!("E = {:.6e} J", to_physical(ReducedEnergy(e.em), &g)?);
    println!(
        "  tm {:.6e} J, te {:.6e} J",
        to_physical(ReducedEnergy(e.tm), &g)?,
        to_physical(ReducedEnergy(e.te), &g)?
    );
    Ok(())
}
