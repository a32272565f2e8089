//! Casimir interaction energy of two perfectly conducting cylinders with
//! parallel, offset axes.
//!
//! Lengths are in units of the inner radius `a`; `alpha = b/a` is the radius
//! ratio and `delta = epsilon/a` the offset between axes. Energies are in
//! units of `ħ c L / (4π a²)`.
//!
//! ```no_run
//! use eccentric_casimir::energy::{exact_energy, NumericsPolicy};
//! use eccentric_casimir::geometry::Geometry;
//!
//! let e = exact_energy(&Geometry::new(2.0, 0.3)?, &NumericsPolicy::default())?;
//! println!("{} = {} + {}", e.em, e.tm, e.te);
//! # Ok::<(), eccentric_casimir::Error>(())
//! ```
//!
//! * [`specfun`]: scaled modified Bessel functions.
//! * [`geometry`]: configurations, units and closed-form limits.
//! * [`kernel`]: mode matrices and their determinants.
//! * [`energy`]: frequency integrals with convergence control.
//! * [`cli`]: the `casimir` command.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod energy;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod specfun;

pub use error::{Error, Result};
