//! A cylinder facing a plane, and the eccentric pair approaching it as the
//! outer radius grows with the narrowest gap held fixed.

use eccentric_casimir::energy::{cylinder_plane_energy, exact_energy, NumericsPolicy};
use eccentric_casimir::geometry::{CylinderPlaneGeometry, Geometry};

fn main() -> eccentric_casimir::Result<()> {
    let policy = NumericsPolicy::default();
    println!("{:>6} {:>16} {:>16}", "H/a", "tm", "te");
    for h in [1.2, 1.5, 2.0, 3.0, 5.0] {
        let e = cylinder_plane_energy(&CylinderPlaneGeometry::new(h)?, &policy)?;
        println!("{h:>6} {:>16.9e} {:>16.9e}", e.tm, e.te);
    }

    let gap = 1.0;
    let plane = cylinder_plane_energy(&CylinderPlaneGeometry::new(1.0 + gap)?, &policy)?;
    println!("\ngap = {gap}: plane em = {:.9e}", plane.em);
    for alpha in [3.0, 5.0, 10.0, 30.0] {
        let e = exact_energy(&Geometry::new(alpha, alpha - 1.0 - gap)?, &policy)?;
        println!(
            "alpha = {alpha:>5}: em = {:.9e}  ratio = {:.5}  flags = {}",
            e.em,
            e.em / plane.em,
            e.diagnostics.flag_label()
        );
    }
    Ok(())
}
