//! Measurable quantities built from a two-photon response.

pub mod approx;
pub mod correlation;
pub mod grid;
pub mod spectrum;
pub mod squeezing;
pub mod transform;

pub use approx::{
    approx_antibunching_length, approx_g2_zero, approx_large_od_spectrum, approx_low_od_spectrum,
    approx_psi_incoh_zero,
};
pub use correlation::{g2_trace, g2_trace_with, g2_zero, normalized_g2, CorrelationTrace};
pub use grid::{FrequencyGrid, TimeGrid};
pub use spectrum::{SampledSpectrum, SpectrumModel, TailModel};
pub use squeezing::{
    optimal_theta, squeezing_spectrum, squeezing_spectrum_with, squeezing_value, SqueezingSpectrum,
};
pub use transform::{freq_to_time, parseval_residual, psi_incoh_at_zero, TimeTrace};

use num_complex::Complex64;

use crate::error::Result;
use crate::exec::Exec;
use crate::response::TwoPhotonResponse;

/// ψ_incoh(τ = 0) at the actual drive by quadrature of the sampled spectrum.
pub fn psi_incoh_zero<R: TwoPhotonResponse + ?Sized>(
    resp: &R,
    grid: &FrequencyGrid,
    exec: Exec,
) -> Result<Complex64> {
    let spec = resp.sampled_spectrum_per_drive(*grid, exec)?;
    let d = resp.reference_drive();
    Ok(d * d * psi_incoh_at_zero(&spec)?)
}
