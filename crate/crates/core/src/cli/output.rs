//! Sweep rows and their CSV / line-JSON renderings.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::energy::{NumericsPolicy, PolarizedEnergy};
use crate::error::Error;
use crate::geometry::Channel;

pub const CSV_HEADER: &str = "alpha,delta,method,pol,energy,err,order_cut,inner_cut,panels,flag";

/// Shortest decimal that parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

/// One `(point, polarization)` line of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub alpha: f64,
    /// Absent where the quantity does not depend on `δ`.
    pub delta: Option<f64>,
    pub method: String,
    pub pol: Channel,
    /// `None` for failed points.
    pub energy: Option<f64>,
    pub err: Option<f64>,
    pub order_cut: usize,
    pub inner_cut: usize,
    pub panels: usize,
    pub flag: String,
}

impl Row {
    /// Rows for each channel in `pols`; value and error are multiplied by
    /// `scale(pol)`.
    pub fn from_energy(
        alpha: f64,
        delta: Option<f64>,
        method: &str,
        e: &PolarizedEnergy,
        pols: &[Channel],
        scale: impl Fn(Channel) -> f64,
    ) -> Vec<Row> {
        pols.iter()
            .map(|&pol| Row {
                alpha,
                delta,
                method: method.to_string(),
                pol,
                energy: Some(scale(pol) * e.channel(pol)),
                err: Some((scale(pol) * e.err_estimate).abs()),
                order_cut: e.diagnostics.order_cut,
                inner_cut: e.diagnostics.inner_cut,
                panels: e.diagnostics.panels,
                flag: e.diagnostics.flag_label(),
            })
            .collect()
    }

    pub fn failed(
        alpha: f64,
        delta: Option<f64>,
        method: &str,
        pols: &[Channel],
        e: &Error,
    ) -> Vec<Row> {
        pols.iter()
            .map(|&pol| Row {
                alpha,
                delta,
                method: method.to_string(),
                pol,
                energy: None,
                err: None,
                order_cut: 0,
                inner_cut: 0,
                panels: 0,
                flag: format!("error:{}", e.name()),
            })
            .collect()
    }

    pub fn is_failure(&self) -> bool {
        self.energy.is_none()
    }

    pub fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map(format_float).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            format_float(self.alpha),
            opt(self.delta),
            self.method,
            self.pol,
            opt(self.energy),
            opt(self.err),
            self.order_cut,
            self.inner_cut,
            self.panels,
            self.flag
        )
    }
}

/// Provenance attached to every sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub policy: NumericsPolicy,
    pub version: &'static str,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl Metadata {
    pub fn now(policy: NumericsPolicy) -> Metadata {
        Metadata {
            policy,
            version: env!("CARGO_PKG_VERSION"),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<Row>,
    pub metadata: Metadata,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    #[serde(flatten)]
    row: &'a Row,
    policy: &'a NumericsPolicy,
}

impl SweepResult {
    pub fn has_failures(&self) -> bool {
        self.rows.iter().any(Row::is_failure)
    }

    /// Header plus one line per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.to_csv());
            out.push('\n');
        }
        out
    }

    /// One JSON object per row, each carrying the policy.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line = serde_json::to_string(&JsonRow {
                row,
                policy: &self.metadata.policy,
            })
            .expect("rows serialize");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Metadata as a single `#`-prefixed line for stderr.
    pub fn metadata_line(&self) -> String {
        format!(
            "# {}",
            serde_json::to_string(&self.metadata).expect("metadata serializes")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, -1082.3233711376, 1e-7, 3.0, 1.0 / 3.0, 6.02e23] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_float(3.0), "3.0");
        assert_eq!(format_float(1e-7), "1e-7");
    }

    #[test]
    fn failed_row_layout() {
        let rows = Row::failed(
            1.5,
            Some(0.6),
            "exact",
            &[Channel::Em],
            &Error::GeometryOverlap {
                delta: 0.6,
                gap: 0.5,
            },
        );
        assert_eq!(
            rows[0].to_csv(),
            "1.5,0.6,exact,em,,,0,0,0,error:GeometryOverlap"
        );
    }
}
