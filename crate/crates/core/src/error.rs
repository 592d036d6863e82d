use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    /// |t_Δ| = 0: a perfectly absorbing emitter, so the optical depth is infinite.
    #[error("saturated transmission (beta = {beta}, delta = {delta}): optical depth is infinite")]
    Saturation { beta: f64, delta: f64 },

    #[error(
        "no physical illumination angle for order m = {order}, a/lambda = {spacing_over_wavelength}, \
         n_eff = {n_eff} (cos = {cosine}); choose a larger spacing or a lower order"
    )]
    NoPhysicalAngle {
        order: i32,
        spacing_over_wavelength: f64,
        n_eff: f64,
        cosine: f64,
    },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error(
        "frequency grid truncates the spectrum: boundary residual {residual:.3e} of peak at half-width {half_width} \
         after {widenings} widenings; increase the grid width or point count"
    )]
    GridTruncation {
        half_width: f64,
        residual: f64,
        widenings: u32,
    },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    /// True for failures of a numerical guard rather than of the inputs.
    pub fn is_numerical_guard(&self) -> bool {
        matches!(
            self,
            Error::GridTruncation { .. } | Error::Saturation { .. } | Error::NoPhysicalAngle { .. }
        )
    }
}
