//! Problem description and closed-form limits.
//!
//! Energies are reduced: they are measured in units of `E0 = ħ c L / (4π a²)`
//! where `a` is the inner radius and `L` the cylinder length.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::energy::{self, NumericsPolicy};
use crate::error::{Error, Result};
use crate::specfun::BesselLadder;

/// `ħ c` in J·m.
pub const HBAR_C: f64 = 3.161_526_77e-26;

const TOUCH_TOL: f64 = 1e-12;

/// Two eccentric cylinders: inner radius `a`, outer radius `b = alpha * a`,
/// axis offset `epsilon = delta * a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    pub alpha: f64,
    pub delta: f64,
    /// Inner radius in meters.
    pub a: Option<f64>,
    /// Cylinder length in meters.
    pub length: Option<f64>,
}

impl Geometry {
    /// Dimensionless geometry, validated.
    pub fn new(alpha: f64, delta: f64) -> Result<Geometry> {
        Geometry {
            alpha,
            delta,
            a: None,
            length: None,
        }
        .validate()
    }

    /// Same configuration with physical scales attached.
    pub fn with_scales(mut self, a: f64, length: f64) -> Geometry {
        self.a = Some(a);
        self.length = Some(length);
        self
    }

    /// Returns the geometry unchanged when the inner cylinder sits strictly
    /// inside the outer one.
    pub fn validate(self) -> Result<Geometry> {
        if !(self.alpha > 1.0) || !self.alpha.is_finite() {
            return Err(Error::InvalidRadiusRatio(self.alpha));
        }
        if !(self.delta >= 0.0) || !self.delta.is_finite() {
            return Err(Error::InvalidEccentricity(self.delta));
        }
        let gap = self.alpha - 1.0;
        // touching within rounding of alpha - 1
        if self.delta >= gap - TOUCH_TOL * self.alpha {
            return Err(Error::GeometryOverlap {
                delta: self.delta,
                gap,
            });
        }
        Ok(self)
    }

    /// Narrowest surface-to-surface distance in units of `a`.
    pub fn min_gap(&self) -> f64 {
        self.alpha - 1.0 - self.delta
    }

    pub fn is_concentric(&self) -> bool {
        self.delta == 0.0
    }
}

/// Free-standing form of [`Geometry::validate`].
pub fn validate(geometry: Geometry) -> Result<Geometry> {
    geometry.validate()
}

/// A cylinder of radius `a` whose axis is a distance `H` from a plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderPlaneGeometry {
    pub h_over_a: f64,
}

impl CylinderPlaneGeometry {
    pub fn new(h_over_a: f64) -> Result<CylinderPlaneGeometry> {
        if h_over_a > 1.0 && h_over_a.is_finite() {
            Ok(CylinderPlaneGeometry { h_over_a })
        } else {
            Err(Error::InvalidPlaneDistance(h_over_a))
        }
    }

    /// The plane configuration an eccentric pair tends to when `b` and
    /// `epsilon` grow with the narrowest gap held fixed: `H = a + gap`.
    pub fn limit_of(geometry: &Geometry) -> Result<CylinderPlaneGeometry> {
        CylinderPlaneGeometry::new(1.0 + geometry.min_gap())
    }

    pub fn gap(&self) -> f64 {
        self.h_over_a - 1.0
    }
}

/// Electromagnetic channel of a reported energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Tm,
    Te,
    Em,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::Tm, Channel::Te, Channel::Em];

    pub fn as_str(&self) -> &'static str {
        match self {
            Channel::Tm => "tm",
            Channel::Te => "te",
            Channel::Em => "em",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Channel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Channel, String> {
        match s.to_ascii_lowercase().as_str() {
            "tm" => Ok(Channel::Tm),
            "te" => Ok(Channel::Te),
            "em" => Ok(Channel::Em),
            other => Err(format!(
                "unknown polarization '{other}' (expected tm, te or em)"
            )),
        }
    }
}

/// Energy in units of `ħ c L / (4π a²)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ReducedEnergy(pub f64);

impl ReducedEnergy {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Converts a reduced energy to joules.
pub fn to_physical(reduced: ReducedEnergy, geometry: &Geometry) -> Result<f64> {
    match (geometry.a, geometry.length) {
        (Some(a), Some(length)) => Ok(reduced.0 * HBAR_C * length / (4.0 * PI * a * a)),
        _ => Err(Error::MissingPhysicalScale),
    }
}

/// Leading-order proximity-force estimate of `E(delta) - E(0)` for nearly
/// touching, nearly concentric cylinders. The electromagnetic value is split
/// equally between TM and TE.
pub fn pfa_eccentric_delta_e(geometry: &Geometry, channel: Channel) -> f64 {
    let em = -(PI.powi(4) / 30.0) * geometry.delta.powi(2) / (geometry.alpha - 1.0).powi(5);
    match channel {
        Channel::Em => em,
        Channel::Tm | Channel::Te => 0.5 * em,
    }
}

/// Proximity-force estimate of the concentric interaction energy.
pub fn pfa_concentric_energy(geometry: &Geometry) -> f64 {
    -(PI.powi(4) / 90.0) / (geometry.alpha - 1.0).powi(3)
}

/// `∫_0^∞ β³ [K_0(β)/I_0(β) + K_1(β)/I_1(β)] dβ`, evaluated on first use.
pub fn asymptotic_constant() -> f64 {
    static CONSTANT: OnceLock<f64> = OnceLock::new();
    *CONSTANT.get_or_init(|| {
        compute_asymptotic_constant(1e-10).expect("asymptotic constant quadrature failed")
    })
}

/// Evaluates the asymptotic constant at the requested relative tolerance.
pub fn compute_asymptotic_constant(rel_tol: f64) -> Result<f64> {
    let policy = NumericsPolicy {
        rel_tol,
        ..NumericsPolicy::default()
    };
    let integrand = |beta: f64| -> Result<f64> {
        let l = BesselLadder::new(beta, 1)?;
        let damp = (-2.0 * beta).exp();
        let r0 = (l.k(0) / l.i(0)).to_f64();
        let r1 = (l.k(1) / l.i(1)).to_f64();
        Ok(beta.powi(3) * (r0 + r1) * damp)
    };
    Ok(energy::integrate(integrand, &policy, 2.0)?.value)
}

/// Large-`alpha` form of `E(delta) - E(0)`, dominated by the lowest TM
/// mode; meaningful when `ln(alpha) >> 1`.
pub fn asymptotic_delta_e(geometry: &Geometry) -> Result<f64> {
    let ln_alpha = geometry.alpha.ln();
    if !(ln_alpha > 0.0) {
        return Err(Error::AsymptoticUndefined(geometry.alpha));
    }
    if geometry.delta == 0.0 {
        return Ok(0.0);
    }
    Ok(-asymptotic_constant() * geometry.delta.powi(2) / (2.0 * geometry.alpha.powi(4) * ln_alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Geometry::new(2.0, 0.5).is_ok());
        assert!(Geometry::new(2.0, 0.0).is_ok());
        assert_eq!(
            Geometry::new(1.1, 0.1).unwrap_err().name(),
            "GeometryOverlap"
        );
        assert_eq!(
            Geometry::new(0.9, 0.0).unwrap_err().name(),
            "InvalidRadiusRatio"
        );
        assert_eq!(
            Geometry::new(1.0, 0.0).unwrap_err().name(),
            "InvalidRadiusRatio"
        );
        assert_eq!(
            Geometry::new(2.0, -0.1).unwrap_err().name(),
            "InvalidEccentricity"
        );
        assert!(Geometry::new(f64::NAN, 0.0).is_err());
        assert!(Geometry::new(2.0, f64::NAN).is_err());
        assert!(CylinderPlaneGeometry::new(1.0).is_err());
        assert!(CylinderPlaneGeometry::new(1.5).is_ok());
    }

    #[test]
    fn pfa_eccentric_values() {
        let pi4_over_30 = {
            let pi = 4.0 * (1.0f64).atan();
            pi * pi * pi * pi / 30.0
        };
        let g = Geometry::new(1.1, 0.01).unwrap();
        let em = pfa_eccentric_delta_e(&g, Channel::Em);
        assert!((em - (-pi4_over_30 * 10.0)).abs() < 1e-10);
        assert!((em + 32.4697).abs() < 1e-4);

        let g0 = Geometry::new(1.3, 0.0).unwrap();
        for c in Channel::ALL {
            assert_eq!(pfa_eccentric_delta_e(&g0, c), 0.0);
        }

        let g = Geometry::new(1.2, 0.05).unwrap();
        let tm = pfa_eccentric_delta_e(&g, Channel::Tm);
        let te = pfa_eccentric_delta_e(&g, Channel::Te);
        assert_eq!(tm, te);
        assert_eq!(tm + te, pfa_eccentric_delta_e(&g, Channel::Em));
    }

    #[test]
    fn pfa_concentric_values() {
        let v = pfa_concentric_energy(&Geometry::new(1.1, 0.0).unwrap());
        assert!((v + 1082.323).abs() < 1e-3, "{v}");
        let v2 = pfa_concentric_energy(&Geometry::new(2.0, 0.0).unwrap());
        assert!((v2 + 1.082_323_2).abs() < 1e-6);
        let v3 = pfa_concentric_energy(&Geometry::new(1.5, 0.0).unwrap());
        assert!((v3 / v2 - (1.0f64 / 0.5).powi(3)).abs() < 1e-12);
    }

    #[test]
    fn asymptotic_constant_value() {
        let c = asymptotic_constant();
        assert!((c - 3.3348).abs() < 5e-4, "{c}");
    }

    #[test]
    fn asymptotic_delta_e_values() {
        let g = Geometry::new(100.0, 0.1).unwrap();
        let v = asymptotic_delta_e(&g).unwrap();
        let expected = -asymptotic_constant() * 0.01 / (2.0 * 1e8 * 100f64.ln());
        assert!(((v - expected) / expected).abs() < 1e-15);
        assert!((v + 3.62e-11).abs() < 0.01e-11, "{v}");
        assert_eq!(
            asymptotic_delta_e(&Geometry::new(100.0, 0.0).unwrap()).unwrap(),
            0.0
        );
        let bad = Geometry {
            alpha: 1.0,
            delta: 0.0,
            a: None,
            length: None,
        };
        assert_eq!(
            asymptotic_delta_e(&bad).unwrap_err().name(),
            "AsymptoticUndefined"
        );
    }

    #[test]
    fn physical_units() {
        let g = Geometry::new(2.0, 0.0).unwrap();
        assert_eq!(
            to_physical(ReducedEnergy(1.0), &g).unwrap_err(),
            Error::MissingPhysicalScale
        );
        let g = g.with_scales(1e-6, 1e-2);
        assert_eq!(to_physical(ReducedEnergy(0.0), &g).unwrap(), 0.0);
        let one = to_physical(ReducedEnergy(1.0), &g).unwrap();
        let expected = 3.161_526_77e-26 * 0.01 / (4.0 * PI * 1e-12);
        assert!((one - expected).abs() < 1e-12 * expected);
        assert!((one - 2.516e-17).abs() < 0.001e-17);
        let two = to_physical(ReducedEnergy(2.0), &g).unwrap();
        assert_eq!(two, 2.0 * one);
    }

    #[test]
    fn closed_forms_are_negative_for_positive_delta() {
        for (alpha, delta) in [(1.05, 0.01), (1.5, 0.2), (3.0, 1.0), (50.0, 10.0)] {
            let g = Geometry::new(alpha, delta).unwrap();
            assert!(pfa_eccentric_delta_e(&g, Channel::Em) < 0.0);
            assert!(pfa_concentric_energy(&g) < 0.0);
            assert!(asymptotic_delta_e(&g).unwrap() < 0.0);
        }
    }
}
