//! Interaction energies as integrals over the imaginary frequency `β`.
//!
//! Every routine returns a [`PolarizedEnergy`] in units of
//! `E0 = ħ c L / (4π a²)`:
//!
//! * [`exact_energy`]: `∫ β log det(I - A(β)) dβ` per polarization with the
//!   full eccentric matrices, escalating the order cut until stable.
//! * [`exact_delta_e`]: the same integral for `E(δ) - E(0)`, taken as one
//!   integrand so the concentric part cancels before quadrature.
//! * [`concentric_energy`]: the diagonal `δ = 0` case as a plain mode sum.
//! * [`perturbative_delta_e`]: the `O(δ²)` coefficient from the tridiagonal
//!   expansion of the determinant.
//! * [`cylinder_plane_energy`]: a cylinder facing a plane.

mod quadrature;

pub use quadrature::{integrate, GaussLegendre, Integral};

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Channel, CylinderPlaneGeometry, Geometry};
use crate::kernel::{self, Polarization};
use crate::specfun::{BesselLadder, Wide, MAX_ORDER};

/// Truncation and quadrature controls shared by all energy evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericsPolicy {
    /// Target relative accuracy of each energy.
    pub rel_tol: f64,
    /// Starting order cut `N`; `None` picks `ceil(8 + 4/gap)`.
    pub initial_order_cut: Option<usize>,
    pub max_order_cut: usize,
    /// The `β` range starts as `beta_max_factor / decay_scale`.
    pub beta_max_factor: f64,
    pub max_panels: usize,
    /// Gauss–Legendre nodes per half panel.
    pub quad_order: usize,
}

impl Default for NumericsPolicy {
    fn default() -> Self {
        NumericsPolicy {
            rel_tol: 1e-6,
            initial_order_cut: None,
            max_order_cut: 256,
            beta_max_factor: 30.0,
            max_panels: 400,
            quad_order: 12,
        }
    }
}

impl NumericsPolicy {
    pub fn with_rel_tol(rel_tol: f64) -> NumericsPolicy {
        NumericsPolicy {
            rel_tol,
            ..NumericsPolicy::default()
        }
    }

    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPolicy(m));
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return bad(format!("rel_tol {} outside (0, 1e-2]", self.rel_tol));
        }
        if let Some(n0) = self.initial_order_cut {
            if n0 > self.max_order_cut {
                return bad(format!(
                    "initial order cut {n0} exceeds maximum {}",
                    self.max_order_cut
                ));
            }
        }
        if !(self.beta_max_factor > 0.0 && self.beta_max_factor.is_finite()) {
            return bad(format!(
                "beta_max_factor {} must be positive",
                self.beta_max_factor
            ));
        }
        if self.quad_order < 2 {
            return bad(format!("quad_order {} below 2", self.quad_order));
        }
        if self.max_panels < 6 {
            return bad(format!(
                "max_panels {} below the 6 initial panels",
                self.max_panels
            ));
        }
        Ok(())
    }

    /// Starting order cut for a configuration whose narrowest gap is
    /// `gap` (in units of `a`).
    pub fn start_order_cut(&self, gap: f64) -> usize {
        self.initial_order_cut
            .unwrap_or_else(|| (8.0 + 4.0 / gap).ceil() as usize)
            .min(self.max_order_cut)
    }
}

/// Conditions worth reporting alongside a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flag {
    /// Some inner `m`-sum hit its cap before converging.
    InnerCutInsufficient,
    /// Some mode sum hit the order cap before its tail was negligible.
    ModeSumCapped,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::InnerCutInsufficient => "inner_cut_insufficient",
            Flag::ModeSumCapped => "mode_sum_capped",
        })
    }
}

/// How an energy was obtained.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Final order cut (largest `|n|` kept in mode sums).
    pub order_cut: usize,
    /// Largest inner-sum cut used by any matrix.
    pub inner_cut: usize,
    pub panels: usize,
    pub evaluations: usize,
    pub flags: Vec<Flag>,
}

impl Diagnostics {
    fn merge(a: &Diagnostics, b: &Diagnostics) -> Diagnostics {
        let mut flags: Vec<Flag> = a.flags.iter().chain(&b.flags).copied().collect();
        flags.sort();
        flags.dedup();
        Diagnostics {
            order_cut: a.order_cut.max(b.order_cut),
            inner_cut: a.inner_cut.max(b.inner_cut),
            panels: a.panels.max(b.panels),
            evaluations: a.evaluations + b.evaluations,
            flags,
        }
    }

    /// `ok`, or the flag names joined with `|`.
    pub fn flag_label(&self) -> String {
        if self.flags.is_empty() {
            "ok".to_string()
        } else {
            self.flags
                .iter()
                .map(Flag::to_string)
                .collect::<Vec<_>>()
                .join("|")
        }
    }
}

/// TM, TE and their sum, in units of `E0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarizedEnergy {
    pub tm: f64,
    pub te: f64,
    /// Always `tm + te`.
    pub em: f64,
    pub err_estimate: f64,
    pub diagnostics: Diagnostics,
}

impl PolarizedEnergy {
    fn from_channels(tm: ChannelEnergy, te: ChannelEnergy) -> PolarizedEnergy {
        PolarizedEnergy {
            tm: tm.value,
            te: te.value,
            em: tm.value + te.value,
            err_estimate: tm.err + te.err,
            diagnostics: Diagnostics::merge(&tm.diagnostics, &te.diagnostics),
        }
    }

    pub fn channel(&self, channel: Channel) -> f64 {
        match channel {
            Channel::Tm => self.tm,
            Channel::Te => self.te,
            Channel::Em => self.em,
        }
    }
}

#[derive(Debug, Clone)]
struct ChannelEnergy {
    value: f64,
    err: f64,
    diagnostics: Diagnostics,
}

/// Records the largest inner cut and any truncation trouble seen by
/// concurrently evaluated integrand points.
#[derive(Default)]
struct Tracker {
    order: AtomicUsize,
    inner: AtomicUsize,
    inner_flag: AtomicBool,
    capped: AtomicBool,
}

impl Tracker {
    fn finish(&self, integral: &Integral, order_cut: usize) -> ChannelEnergy {
        let mut flags = Vec::new();
        if self.inner_flag.load(Ordering::Relaxed) {
            flags.push(Flag::InnerCutInsufficient);
        }
        if self.capped.load(Ordering::Relaxed) {
            flags.push(Flag::ModeSumCapped);
        }
        ChannelEnergy {
            value: integral.value,
            err: integral.err,
            diagnostics: Diagnostics {
                order_cut: order_cut.max(self.order.load(Ordering::Relaxed)),
                inner_cut: self.inner.load(Ordering::Relaxed),
                panels: integral.panels,
                evaluations: integral.evaluations,
                flags,
            },
        }
    }
}

/// Doubles the order cut from `start` until the energy moves by less than
/// `rel_tol / 2`; the final shift is added to the error estimate.
fn escalate<F>(policy: &NumericsPolicy, start: usize, eval: F) -> Result<ChannelEnergy>
where
    F: Fn(usize) -> Result<ChannelEnergy>,
{
    let mut cut = start;
    let mut prev = eval(cut)?;
    loop {
        if cut >= policy.max_order_cut {
            return Err(Error::TruncationLimitExceeded {
                order_cut: cut,
                change: f64::NAN,
            });
        }
        let next_cut = (2 * cut).max(1).min(policy.max_order_cut);
        let cur = eval(next_cut)?;
        let change = (cur.value - prev.value).abs();
        if change <= 0.5 * policy.rel_tol * cur.value.abs() || change == 0.0 {
            let mut out = cur;
            out.err += change;
            return Ok(out);
        }
        if next_cut >= policy.max_order_cut {
            return Err(Error::TruncationLimitExceeded {
                order_cut: next_cut,
                change: change / cur.value.abs(),
            });
        }
        prev = cur;
        cut = next_cut;
    }
}

fn eccentric_log_det(
    pol: Polarization,
    g: &Geometry,
    beta: f64,
    order_cut: usize,
    tracker: &Tracker,
) -> Result<f64> {
    let inner = kernel::default_inner_cut(order_cut, beta, g.delta);
    let m = kernel::build_eccentric(pol, g, beta, order_cut, inner)?;
    tracker.inner.fetch_max(m.inner_cut(), Ordering::Relaxed);
    if !m.inner_cut_sufficient() {
        tracker.inner_flag.store(true, Ordering::Relaxed);
    }
    kernel::log_det_i_minus_a(&m)
}

fn eccentric_at_cut(
    pol: Polarization,
    g: &Geometry,
    order_cut: usize,
    policy: &NumericsPolicy,
) -> Result<ChannelEnergy> {
    let tracker = Tracker::default();
    let integral = integrate(
        |beta| Ok(beta * eccentric_log_det(pol, g, beta, order_cut, &tracker)?),
        policy,
        2.0 * g.min_gap(),
    )?;
    Ok(tracker.finish(&integral, order_cut))
}

/// Exact interaction energy `E12(α, δ)` in units of `E0`.
pub fn exact_energy(geometry: &Geometry, policy: &NumericsPolicy) -> Result<PolarizedEnergy> {
    let g = geometry.validate()?;
    policy.check()?;
    let start = policy.start_order_cut(g.alpha - 1.0);
    let run = |pol| escalate(policy, start, |cut| eccentric_at_cut(pol, &g, cut, policy));
    Ok(PolarizedEnergy::from_channels(
        run(Polarization::Tm)?,
        run(Polarization::Te)?,
    ))
}

/// Exact energy with a fixed order cut and no escalation; the building
/// block of convergence studies.
pub fn exact_energy_at_cut(
    geometry: &Geometry,
    policy: &NumericsPolicy,
    order_cut: usize,
) -> Result<PolarizedEnergy> {
    let g = geometry.validate()?;
    policy.check()?;
    Ok(PolarizedEnergy::from_channels(
        eccentric_at_cut(Polarization::Tm, &g, order_cut, policy)?,
        eccentric_at_cut(Polarization::Te, &g, order_cut, policy)?,
    ))
}

fn delta_at_cut(
    pol: Polarization,
    g: &Geometry,
    order_cut: usize,
    policy: &NumericsPolicy,
) -> Result<ChannelEnergy> {
    let tracker = Tracker::default();
    let concentric = Geometry { delta: 0.0, ..*g };
    let integral = integrate(
        |beta| {
            let shifted = eccentric_log_det(pol, g, beta, order_cut, &tracker)?;
            let base = eccentric_log_det(pol, &concentric, beta, order_cut, &tracker)?;
            Ok(beta * (shifted - base))
        },
        policy,
        2.0 * g.min_gap(),
    )?;
    Ok(tracker.finish(&integral, order_cut))
}

/// `ΔE = E12(α, δ) - E12(α, 0)` from the exact matrices, integrated as a
/// single difference.
pub fn exact_delta_e(geometry: &Geometry, policy: &NumericsPolicy) -> Result<PolarizedEnergy> {
    let g = geometry.validate()?;
    policy.check()?;
    if g.delta == 0.0 {
        let zero = ChannelEnergy {
            value: 0.0,
            err: 0.0,
            diagnostics: Diagnostics::default(),
        };
        return Ok(PolarizedEnergy::from_channels(zero.clone(), zero));
    }
    let start = policy.start_order_cut(g.alpha - 1.0);
    let run = |pol| escalate(policy, start, |cut| delta_at_cut(pol, &g, cut, policy));
    Ok(PolarizedEnergy::from_channels(
        run(Polarization::Tm)?,
        run(Polarization::Te)?,
    ))
}

/// Scaled ratios `|t_n| = |I_n(β)/K_n(β)| e^{-2β}` and
/// `|c_n| = |K_n(αβ)/I_n(αβ)| e^{2αβ}` for `n = 0..=max_n + 1`.
struct RatioTable {
    t: Vec<Wide>,
    c: Vec<Wide>,
}

impl RatioTable {
    fn new(pol: Polarization, alpha: f64, beta: f64, max_n: usize) -> Result<RatioTable> {
        let inner = BesselLadder::new(beta, max_n + 1)?;
        let outer = BesselLadder::new(alpha * beta, max_n + 1)?;
        let (t, c) = (0..=(max_n + 1) as i64)
            .map(|n| match pol {
                Polarization::Tm => (inner.i(n) / inner.k(n), outer.k(n) / outer.i(n)),
                Polarization::Te => (
                    (inner.i_prime(n) / inner.k_prime(n)).abs(),
                    (outer.k_prime(n) / outer.i_prime(n)).abs(),
                ),
            })
            .unzip();
        Ok(RatioTable { t, c })
    }
}

/// Sums `shell(table, k)` over `k = 0, 1, ...` until three consecutive
/// shells each fall below `tol` times the running total. Returns the sum
/// and the last shell index used.
fn shell_sum<F>(
    pol: Polarization,
    alpha: f64,
    beta: f64,
    tol: f64,
    tracker: &Tracker,
    shell: F,
) -> Result<f64>
where
    F: Fn(&RatioTable, usize) -> f64,
{
    let cap = (MAX_ORDER as usize) / 2;
    let mut max_n = (32.0 + 2.0 * alpha * beta).ceil() as usize;
    let mut table = RatioTable::new(pol, alpha, beta, max_n)?;
    let mut total = 0.0;
    let mut quiet = 0;
    let mut k = 0;
    loop {
        if k > max_n {
            if max_n >= cap {
                tracker.capped.store(true, Ordering::Relaxed);
                break;
            }
            max_n = (2 * max_n).min(cap);
            table = RatioTable::new(pol, alpha, beta, max_n)?;
        }
        let s = shell(&table, k);
        total += s;
        if s.abs() <= tol * total.abs() {
            quiet += 1;
            if quiet == 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        k += 1;
    }
    tracker.order.fetch_max(k, Ordering::Relaxed);
    Ok(total)
}

/// `Σ_n log(1 - D^cc_n(β))` over all integer `n`.
fn concentric_log_det(
    pol: Polarization,
    alpha: f64,
    beta: f64,
    tol: f64,
    tracker: &Tracker,
) -> Result<f64> {
    let damping = (-2.0 * beta * (alpha - 1.0)).exp();
    shell_sum(pol, alpha, beta, tol, tracker, |tab, k| {
        let d = (tab.t[k] * tab.c[k]).to_f64() * damping;
        let v = (-d).ln_1p();
        if k == 0 {
            v
        } else {
            2.0 * v
        }
    })
}

/// Concentric interaction energy from the diagonal mode sum.
pub fn concentric_energy(alpha: f64, policy: &NumericsPolicy) -> Result<PolarizedEnergy> {
    let g = Geometry::new(alpha, 0.0)?;
    policy.check()?;
    let tol = 1e-3 * policy.rel_tol;
    let run = |pol| -> Result<ChannelEnergy> {
        let tracker = Tracker::default();
        let integral = integrate(
            |beta| Ok(beta * concentric_log_det(pol, g.alpha, beta, tol, &tracker)?),
            policy,
            2.0 * (g.alpha - 1.0),
        )?;
        Ok(tracker.finish(&integral, 0))
    };
    Ok(PolarizedEnergy::from_channels(
        run(Polarization::Tm)?,
        run(Polarization::Te)?,
    ))
}

/// `Σ_n [𝒟_n + 𝒩_n / (1 - D_{n+1})] / (1 - D_n)` at one `β`.
fn perturbative_kernel_sum(
    pol: Polarization,
    alpha: f64,
    beta: f64,
    tol: f64,
    tracker: &Tracker,
) -> Result<f64> {
    let damping = (-2.0 * beta * (alpha - 1.0)).exp();
    shell_sum(pol, alpha, beta, tol, tracker, |tab, k| {
        let (t, c) = (&tab.t, &tab.c);
        let cc = |n: usize| (t[n] * c[n]).to_f64() * damping;
        let c_below = if k == 0 { c[1] } else { c[k - 1] };
        let d_k = cc(k);
        let d_next = cc(k + 1);
        let diag = 0.5 * d_k + 0.25 * (t[k] * (c_below + c[k + 1])).to_f64() * damping;
        let pair_sum = c[k] + c[k + 1];
        let off = 0.25 * (t[k] * t[k + 1] * pair_sum * pair_sum).to_f64() * damping * damping;
        let diag_term = diag / (1.0 - d_k);
        let pair_term = off / ((1.0 - d_k) * (1.0 - d_next));
        // n and -n share the diagonal term; pairs (n, n+1) and (-n-1, -n) agree
        if k == 0 {
            diag_term + 2.0 * pair_term
        } else {
            2.0 * (diag_term + pair_term)
        }
    })
}

/// Coefficient of `δ²` in `E12(α, δ) - E12(α, 0)` for small eccentricity.
pub fn perturbative_delta_e(alpha: f64, policy: &NumericsPolicy) -> Result<PolarizedEnergy> {
    let g = Geometry::new(alpha, 0.0)?;
    policy.check()?;
    let tol = 0.1 * policy.rel_tol;
    let run = |pol| -> Result<ChannelEnergy> {
        let tracker = Tracker::default();
        let integral = integrate(
            |beta| Ok(-beta.powi(3) * perturbative_kernel_sum(pol, g.alpha, beta, tol, &tracker)?),
            policy,
            2.0 * (g.alpha - 1.0),
        )?;
        Ok(tracker.finish(&integral, 0))
    };
    Ok(PolarizedEnergy::from_channels(
        run(Polarization::Tm)?,
        run(Polarization::Te)?,
    ))
}

fn plane_at_cut(
    pol: Polarization,
    cp: &CylinderPlaneGeometry,
    order_cut: usize,
    policy: &NumericsPolicy,
) -> Result<ChannelEnergy> {
    let tracker = Tracker::default();
    let integral = integrate(
        |beta| {
            let m = kernel::build_cylinder_plane(pol, cp, beta, order_cut)?;
            Ok(beta * kernel::log_det_i_minus_a(&m)?)
        },
        policy,
        2.0 * cp.gap(),
    )?;
    Ok(tracker.finish(&integral, order_cut))
}

/// Interaction energy of a cylinder and a plane, in units of `E0`.
pub fn cylinder_plane_energy(
    cp: &CylinderPlaneGeometry,
    policy: &NumericsPolicy,
) -> Result<PolarizedEnergy> {
    let cp = CylinderPlaneGeometry::new(cp.h_over_a)?;
    policy.check()?;
    let start = policy.start_order_cut(cp.gap());
    let run = |pol| escalate(policy, start, |cut| plane_at_cut(pol, &cp, cut, policy));
    Ok(PolarizedEnergy::from_channels(
        run(Polarization::Tm)?,
        run(Polarization::Te)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_validation() {
        assert!(NumericsPolicy::default().check().is_ok());
        assert!(NumericsPolicy::with_rel_tol(0.0).check().is_err());
        assert!(NumericsPolicy::with_rel_tol(0.1).check().is_err());
        let p = NumericsPolicy {
            initial_order_cut: Some(10),
            max_order_cut: 5,
            ..NumericsPolicy::default()
        };
        assert_eq!(p.check().unwrap_err().name(), "InvalidPolicy");
        assert_eq!(NumericsPolicy::default().start_order_cut(0.5), 16);
        assert_eq!(NumericsPolicy::default().start_order_cut(1.0), 12);
    }

    #[test]
    fn em_is_sum_of_channels() {
        let e = concentric_energy(2.0, &NumericsPolicy::default()).unwrap();
        assert_eq!(e.em, e.tm + e.te);
        assert!(e.tm < 0.0 && e.te < 0.0);
    }

    #[test]
    fn escalation_stops_at_limit() {
        let g = Geometry::new(1.2, 0.1).unwrap();
        let p = NumericsPolicy {
            initial_order_cut: Some(1),
            max_order_cut: 2,
            rel_tol: 1e-8,
            ..NumericsPolicy::default()
        };
        assert_eq!(
            exact_energy(&g, &p).unwrap_err().name(),
            "TruncationLimitExceeded"
        );
    }

    #[test]
    fn concentric_delta_is_zero() {
        let g = Geometry::new(1.5, 0.0).unwrap();
        let d = exact_delta_e(&g, &NumericsPolicy::default()).unwrap();
        assert_eq!((d.tm, d.te, d.em), (0.0, 0.0, 0.0));
    }

    #[test]
    fn perturbative_is_negative() {
        let e = perturbative_delta_e(2.0, &NumericsPolicy::default()).unwrap();
        assert!(e.tm < 0.0 && e.te < 0.0);
        assert_eq!(e.em, e.tm + e.te);
    }
}
