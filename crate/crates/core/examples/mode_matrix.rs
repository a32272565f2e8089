//! Building the TM and TE mode matrices at one frequency and taking the
//! log-determinant.

use eccentric_casimir::geometry::Geometry;
use eccentric_casimir::kernel::{build_eccentric, default_inner_cut, log_det_detail, Polarization};

fn main() -> eccentric_casimir::Result<()> {
    let g = Geometry::new(1.5, 0.2)?;
    let (beta, n) = (2.0, 6);
    for pol in Polarization::BOTH {
        let m = build_eccentric(pol, &g, beta, n, default_inner_cut(n, beta, g.delta))?;
        println!(
            "{pol:?}: dim {}, inner cut {}, converged {}",
            m.dim(),
            m.inner_cut(),
            m.inner_cut_sufficient()
        );
        for row in -2..=2 {
            let cells: Vec<String> = (-2..=2)
                .map(|col| format!("{:>11.3e}", m.entry(row, col)))
                .collect();
            println!("  {}", cells.join(" "));
        }
        let ld = log_det_detail(&m);
        println!(
            "  log det(I - A) = {:.12e} (sign {})\n",
            ld.log_abs, ld.sign
        );
    }
    Ok(())
}
