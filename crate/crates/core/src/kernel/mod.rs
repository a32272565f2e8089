//! Truncated mode matrices at imaginary frequency and `log det(I - A)`.
//!
//! For the eccentric pair
//!
//! ```text
//! A_np = t_n Σ_m c_m I_{m-n}(βδ) I_{m-p}(βδ)
//! ```
//!
//! with `t_n = I_n(β)/K_n(β)`, `c_m = K_m(αβ)/I_m(αβ)` for TM and the same
//! ratios of derivatives for TE. Only the similarity transform
//! `Ã = D^{-1} A D` with `D = diag(sqrt|t_n|)` is stored. It factors as
//! `Ã = Wᵀ W` with
//!
//! ```text
//! W_mn = sqrt|c_m| sqrt|t_n| I_{m-n}(βδ)
//! ```
//!
//! whose entries are bounded by one, while `t_n` and `c_m` on their own span
//! hundreds of decades. The exponential factors of the scaled Bessel values
//! combine to `exp(-β(α - 1 - δ))` per `W` entry, which never exceeds one
//! inside the admissible region `δ < α - 1`.

pub mod linalg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CylinderPlaneGeometry, Geometry};
use crate::specfun::{BesselLadder, Wide};

pub use linalg::{lu_log_det, LogDet};

/// Relative trace weight below which the outermost inner-sum shell counts
/// as converged.
pub const SHELL_WEIGHT_TOL: f64 = 1e-14;

/// `W` entries below this magnitude are dropped from `Wᵀ W`.
const W_FLOOR: f64 = 1e-30;

/// Boundary condition on the scalar mode function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    /// Dirichlet.
    Tm,
    /// Neumann.
    Te,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::Tm, Polarization::Te];
}

/// Dense truncated mode matrix for one polarization at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeMatrix {
    polarization: Polarization,
    beta: f64,
    order_cut: usize,
    inner_cut: usize,
    /// Row-major `D^{-1} A D`.
    balanced: Vec<f64>,
    /// `ln sqrt|t_n|` for `n = -N..=N`.
    half_log_prefactor: Vec<f64>,
    last_shell_weight: f64,
    inner_cut_sufficient: bool,
}

impl ModeMatrix {
    /// Wraps an explicit matrix (no balancing) indexed by `-N..=N`.
    pub fn from_entries(
        polarization: Polarization,
        beta: f64,
        order_cut: usize,
        entries: Vec<f64>,
    ) -> ModeMatrix {
        let dim = 2 * order_cut + 1;
        assert_eq!(entries.len(), dim * dim, "entries must be (2N+1)^2");
        ModeMatrix {
            polarization,
            beta,
            order_cut,
            inner_cut: order_cut,
            balanced: entries,
            half_log_prefactor: vec![0.0; dim],
            last_shell_weight: 0.0,
            inner_cut_sufficient: true,
        }
    }

    pub fn polarization(&self) -> Polarization {
        self.polarization
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn order_cut(&self) -> usize {
        self.order_cut
    }

    pub fn inner_cut(&self) -> usize {
        self.inner_cut
    }

    pub fn dim(&self) -> usize {
        2 * self.order_cut + 1
    }

    /// Relative trace weight of the outermost inner-sum shell.
    pub fn last_shell_weight(&self) -> f64 {
        self.last_shell_weight
    }

    pub fn inner_cut_sufficient(&self) -> bool {
        self.inner_cut_sufficient
    }

    fn index(&self, n: i64) -> usize {
        let cut = self.order_cut as i64;
        assert!(n.abs() <= cut, "index {n} outside -{cut}..={cut}");
        (n + cut) as usize
    }

    /// `A_np`.
    pub fn entry(&self, n: i64, p: i64) -> f64 {
        let (i, j) = (self.index(n), self.index(p));
        let scale = self.half_log_prefactor[i] - self.half_log_prefactor[j];
        self.balanced[i * self.dim() + j] * scale.exp()
    }

    /// `(D^{-1} A D)_np`; same determinant as `A`.
    pub fn balanced_entry(&self, n: i64, p: i64) -> f64 {
        let (i, j) = (self.index(n), self.index(p));
        self.balanced[i * self.dim() + j]
    }

    pub fn balanced(&self) -> &[f64] {
        &self.balanced
    }
}

/// Inner-sum cut `N + max(8, ceil(3 β δ))`.
pub fn default_inner_cut(order_cut: usize, beta: f64, delta: f64) -> usize {
    order_cut + 8usize.max((3.0 * beta * delta).ceil() as usize)
}

/// `sqrt|t_n|` for `n = 0..=N`, scaled by `e^{-β}`.
fn row_factors(pol: Polarization, ladder: &BesselLadder, order_cut: usize) -> Vec<Wide> {
    (0..=order_cut as i64)
        .map(|n| match pol {
            Polarization::Tm => (ladder.i(n) / ladder.k(n)).sqrt(),
            Polarization::Te => (ladder.i_prime(n) / ladder.k_prime(n)).abs().sqrt(),
        })
        .collect()
}

/// `sqrt|c_m|` for `m = 0..=M`, scaled by `e^{αβ}`.
fn column_factors(pol: Polarization, ladder: &BesselLadder, inner_cut: usize) -> Vec<Wide> {
    (0..=inner_cut as i64)
        .map(|m| match pol {
            Polarization::Tm => (ladder.k(m) / ladder.i(m)).sqrt(),
            Polarization::Te => (ladder.k_prime(m) / ladder.i_prime(m)).abs().sqrt(),
        })
        .collect()
}

/// `e^{y}` as a [`Wide`] number.
fn wide_exp(y: f64) -> Wide {
    let k = (y / std::f64::consts::LN_2).floor();
    let r = y - k * std::f64::consts::LN_2;
    Wide::new(r.exp(), k as i32)
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(beta))
    }
}

/// Assembles `A^{TM}` or `A^{TE}` for the eccentric pair.
///
/// `inner_cut` is the starting truncation of the `m`-sum; further shells are
/// added until the outermost carries less than [`SHELL_WEIGHT_TOL`] of the
/// trace, up to an internal cap past which the matrix is flagged.
pub fn build_eccentric(
    polarization: Polarization,
    geometry: &Geometry,
    beta: f64,
    order_cut: usize,
    inner_cut: usize,
) -> Result<ModeMatrix> {
    let g = geometry.validate()?;
    check_beta(beta)?;
    if inner_cut < order_cut {
        return Err(Error::InvalidPolicy(format!(
            "inner cut {inner_cut} below order cut {order_cut}"
        )));
    }
    let (alpha, delta) = (g.alpha, g.delta);
    let n_cut = order_cut as i64;
    let dim = 2 * order_cut + 1;

    let row_ladder = BesselLadder::new(beta, order_cut)?;
    let rows = row_factors(polarization, &row_ladder, order_cut);
    let damping = wide_exp(-beta * (alpha - 1.0 - delta));
    let half_log_prefactor: Vec<f64> = (-n_cut..=n_cut)
        .map(|n| rows[n.unsigned_abs() as usize].ln_abs() + beta)
        .collect();

    let cap = (8 * inner_cut + 64).min(crate::specfun::MAX_ORDER as usize / 2);
    let mut ladder_len = (2 * inner_cut + 16).min(cap);
    // column factors and translation coefficients I_k(βδ) up to `len`
    let tables = |len: usize| -> Result<(Vec<Wide>, Vec<Wide>)> {
        let cols = column_factors(polarization, &BesselLadder::new(alpha * beta, len)?, len);
        let transl = if delta == 0.0 {
            let mut u = vec![Wide::ZERO; len + order_cut + 1];
            u[0] = Wide::ONE;
            u
        } else {
            let l = BesselLadder::new(beta * delta, len + order_cut)?;
            (0..=(len + order_cut) as i64).map(|k| l.i(k)).collect()
        };
        Ok((cols, transl))
    };
    let (mut cols, mut transl) = tables(ladder_len)?;

    // Rows of W, shell by shell: m = 0, then ±1, ±2, ...
    let w_row = |m: i64, cols: &[Wide], transl: &[Wide]| -> Vec<f64> {
        let gm = cols[m.unsigned_abs() as usize] * damping;
        (-n_cut..=n_cut)
            .map(|n| {
                let u = transl[(m - n).unsigned_abs() as usize];
                let v = (gm * rows[n.unsigned_abs() as usize] * u).to_f64();
                if v.abs() < W_FLOOR {
                    0.0
                } else {
                    v
                }
            })
            .collect()
    };
    let mut w_rows: Vec<(i64, Vec<f64>)> = Vec::new();
    let mut total = 0.0;
    let mut shell_weight = 0.0;
    let mut m = 0usize;
    let mut sufficient = true;
    loop {
        if m > ladder_len {
            if ladder_len >= cap {
                sufficient = false;
                m -= 1;
                break;
            }
            ladder_len = (2 * ladder_len).min(cap);
            (cols, transl) = tables(ladder_len)?;
        }
        let mi = m as i64;
        let shells: &[i64] = if m == 0 { &[0] } else { &[mi, -mi] };
        shell_weight = 0.0;
        for &s in shells {
            let row = w_row(s, &cols, &transl);
            shell_weight += row.iter().map(|v| v * v).sum::<f64>();
            w_rows.push((s, row));
        }
        total += shell_weight;
        if m >= inner_cut && (shell_weight <= SHELL_WEIGHT_TOL * total || total == 0.0) {
            break;
        }
        m += 1;
    }
    let inner = m;
    let last_shell_weight = if total > 0.0 {
        shell_weight / total
    } else {
        0.0
    };
    if !last_shell_weight.is_finite() {
        return Err(Error::KernelOverflow { beta });
    }

    // fixed summation order: m ascending
    w_rows.sort_by_key(|(m, _)| *m);
    let mut balanced = vec![0.0; dim * dim];
    for (_, row) in &w_rows {
        let Some(lo) = row.iter().position(|v| *v != 0.0) else {
            continue;
        };
        let hi = row.iter().rposition(|v| *v != 0.0).unwrap_or(lo);
        for i in lo..=hi {
            let wi = row[i];
            if wi == 0.0 {
                continue;
            }
            let out = &mut balanced[i * dim..(i + 1) * dim];
            for j in i..=hi {
                out[j] += wi * row[j];
            }
        }
    }
    for i in 0..dim {
        for j in 0..i {
            balanced[i * dim + j] = balanced[j * dim + i];
        }
    }
    if balanced.iter().any(|v| !v.is_finite()) {
        return Err(Error::KernelOverflow { beta });
    }

    Ok(ModeMatrix {
        polarization,
        beta,
        order_cut,
        inner_cut: inner,
        balanced,
        half_log_prefactor,
        last_shell_weight,
        inner_cut_sufficient: sufficient,
    })
}

/// Assembles the cylinder-plane matrix
/// `A_np = ± (I_n(β)/K_n(β)) K_{n+p}(2βH/a)` (TE with the derivative ratio
/// and the minus sign).
pub fn build_cylinder_plane(
    polarization: Polarization,
    cp: &CylinderPlaneGeometry,
    beta: f64,
    order_cut: usize,
) -> Result<ModeMatrix> {
    let cp = CylinderPlaneGeometry::new(cp.h_over_a)?;
    check_beta(beta)?;
    let n_cut = order_cut as i64;
    let dim = 2 * order_cut + 1;
    let row_ladder = BesselLadder::new(beta, order_cut)?;
    let rows = row_factors(polarization, &row_ladder, order_cut);
    let plane = BesselLadder::new(2.0 * beta * cp.h_over_a, 2 * order_cut)?;
    let damping = wide_exp(-2.0 * beta * (cp.h_over_a - 1.0));

    let mut balanced = vec![0.0; dim * dim];
    for (i, n) in (-n_cut..=n_cut).enumerate() {
        let sn = rows[n.unsigned_abs() as usize] * damping;
        for (j, p) in (-n_cut..=n_cut).enumerate() {
            let sp = rows[p.unsigned_abs() as usize];
            balanced[i * dim + j] = (sn * sp * plane.k(n + p)).to_f64();
        }
    }
    if balanced.iter().any(|v| !v.is_finite()) {
        return Err(Error::KernelOverflow { beta });
    }
    let half_log_prefactor = (-n_cut..=n_cut)
        .map(|n| rows[n.unsigned_abs() as usize].ln_abs() + beta)
        .collect();
    Ok(ModeMatrix {
        polarization,
        beta,
        order_cut,
        inner_cut: order_cut,
        balanced,
        half_log_prefactor,
        last_shell_weight: 0.0,
        inner_cut_sufficient: true,
    })
}

/// `log|det(I - A)|` with its sign.
pub fn log_det_detail(matrix: &ModeMatrix) -> LogDet {
    let dim = matrix.dim();
    let mut m: Vec<f64> = matrix.balanced.iter().map(|v| -v).collect();
    for i in 0..dim {
        m[i * dim + i] += 1.0;
    }
    lu_log_det(&mut m, dim)
}

/// `log det(I - A)`; fails when the determinant is not positive.
pub fn log_det_i_minus_a(matrix: &ModeMatrix) -> Result<f64> {
    let d = log_det_detail(matrix);
    if d.sign > 0.0 && d.log_abs.is_finite() {
        Ok(d.log_abs)
    } else {
        Err(Error::NonPositiveDeterminant {
            beta: matrix.beta,
            order_cut: matrix.order_cut,
            sign: d.sign,
            log_abs: d.log_abs,
        })
    }
}

/// Diagonal entries `D^cc_n` of the concentric matrix for `n = 0..=max_n`,
/// evaluated directly from the Bessel ratios.
pub fn concentric_diagonal(
    polarization: Polarization,
    alpha: f64,
    beta: f64,
    max_n: usize,
) -> Result<Vec<f64>> {
    check_beta(beta)?;
    let inner = BesselLadder::new(beta, max_n)?;
    let outer = BesselLadder::new(alpha * beta, max_n)?;
    let damping = wide_exp(-2.0 * beta * (alpha - 1.0));
    Ok((0..=max_n as i64)
        .map(|n| {
            let v = match polarization {
                Polarization::Tm => inner.i(n) / inner.k(n) * (outer.k(n) / outer.i(n)),
                Polarization::Te => {
                    inner.i_prime(n) / inner.k_prime(n) * (outer.k_prime(n) / outer.i_prime(n))
                }
            };
            (v * damping).to_f64()
        })
        .collect())
}

/// Derivative or plain ratios in the addition-theorem sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumKind {
    Unprimed,
    Primed,
}

/// Relative deviation of
/// `Σ_{|m|<=M} [K_m(x+h)/I_m(x+h)] I_{n-m}(x) I_{p-m}(x)` from `K_{n+p}(2h)`
/// (and of the derivative-ratio sum from `-K_{n+p}(2h)`).
pub fn addition_theorem_residual(
    x: f64,
    h: f64,
    n: i64,
    p: i64,
    inner_cut: usize,
    kind: SumKind,
) -> Result<f64> {
    check_beta(x)?;
    check_beta(h)?;
    let big = BesselLadder::new(x + h, inner_cut)?;
    let shift = n.unsigned_abs().max(p.unsigned_abs()) as usize;
    let small = BesselLadder::new(x, inner_cut + shift)?;
    let m_cut = inner_cut as i64;
    let lhs: f64 = (-m_cut..=m_cut)
        .map(|m| {
            let c = match kind {
                SumKind::Unprimed => big.k(m) / big.i(m),
                SumKind::Primed => big.k_prime(m) / big.i_prime(m),
            };
            (c * small.i(n - m) * small.i(p - m)).to_f64()
        })
        .sum();
    let target = BesselLadder::new(2.0 * h, (n + p).unsigned_abs() as usize)?
        .k(n + p)
        .to_f64();
    let signed = match kind {
        SumKind::Unprimed => target,
        SumKind::Primed => -target,
    };
    Ok((lhs - signed).abs() / target)
}
