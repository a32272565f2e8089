use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Every variant has a stable short name (see [`Error::name`]) which the
/// command-line front end prints verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {0} outside the domain of the Bessel routines (need finite x > 0)")]
    Domain(f64),
    #[error("Bessel order {0} exceeds the supported maximum")]
    OrderTooLarge(u64),
    #[error("radius ratio alpha = {0} must exceed 1")]
    InvalidRadiusRatio(f64),
    #[error("reduced eccentricity delta = {0} must be non-negative")]
    InvalidEccentricity(f64),
    #[error("delta = {delta} >= alpha - 1 = {gap}: the cylinders touch or overlap")]
    GeometryOverlap { delta: f64, gap: f64 },
    #[error("axis-to-plane distance H/a = {0} must exceed 1")]
    InvalidPlaneDistance(f64),
    #[error("large-alpha asymptotic form is undefined at alpha = {0}")]
    AsymptoticUndefined(f64),
    #[error("conversion to joules needs both the inner radius and the cylinder length")]
    MissingPhysicalScale,
    #[error("non-finite value while assembling the mode matrix at beta = {beta}")]
    KernelOverflow { beta: f64 },
    #[error("det(I - A) = {sign}*exp({log_abs}) is not positive at beta = {beta}, order cut {order_cut}")]
    NonPositiveDeterminant {
        beta: f64,
        order_cut: usize,
        sign: f64,
        log_abs: f64,
    },
    #[error("energy not converged to tolerance at maximum order cut {order_cut} (last change {change:e})")]
    TruncationLimitExceeded { order_cut: usize, change: f64 },
    #[error("quadrature stopped at {panels} panels with error {err:e} on value {value:e}")]
    QuadratureNotConverged { panels: usize, value: f64, err: f64 },
    #[error("invalid numerics policy: {0}")]
    InvalidPolicy(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable identifier of the error kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::OrderTooLarge(_) => "OrderTooLarge",
            Error::InvalidRadiusRatio(_) => "InvalidRadiusRatio",
            Error::InvalidEccentricity(_) => "InvalidEccentricity",
            Error::GeometryOverlap { .. } => "GeometryOverlap",
            Error::InvalidPlaneDistance(_) => "InvalidPlaneDistance",
            Error::AsymptoticUndefined(_) => "AsymptoticUndefined",
            Error::MissingPhysicalScale => "MissingPhysicalScale",
            Error::KernelOverflow { .. } => "KernelOverflow",
            Error::NonPositiveDeterminant { .. } => "NonPositiveDeterminant",
            Error::TruncationLimitExceeded { .. } => "TruncationLimitExceeded",
            Error::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            Error::InvalidPolicy(_) => "InvalidPolicy",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    /// True for errors caused by bad user input rather than numerical trouble.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidRadiusRatio(_)
                | Error::InvalidEccentricity(_)
                | Error::GeometryOverlap { .. }
                | Error::InvalidPlaneDistance(_)
                | Error::AsymptoticUndefined(_)
                | Error::MissingPhysicalScale
                | Error::InvalidPolicy(_)
                | Error::InvalidConfig(_)
                | Error::InvalidArgument(_)
                | Error::Domain(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
