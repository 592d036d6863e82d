use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::exec::Exec;
use crate::observables::grid::FrequencyGrid;
use crate::response::TwoPhotonResponse;

/// S_θ(ω) = −½|ψ_incoh(ω)|·cos(2θ + arg ψ_incoh(ω)), with θ the phase in
/// X_θ = (a e^{iθ} + a† e^{−iθ})/2.
#[inline]
pub fn squeezing_value(psi: Complex64, theta: f64) -> f64 {
    if psi.norm() == 0.0 {
        return 0.0;
    }
    -0.5 * psi.norm() * (2.0 * theta + psi.arg()).cos()
}

/// θ in [0, π) minimising S_θ for this ψ.
#[inline]
pub fn optimal_theta(psi: Complex64) -> f64 {
    (-0.5 * psi.arg()).rem_euclid(PI)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SqueezingSpectrum {
    /// ω in units of Γ.
    pub omegas: Vec<f64>,
    pub theta: f64,
    pub values: Vec<f64>,
    pub optimal_theta: Vec<f64>,
    /// min_θ S_θ(ω) = −|ψ_incoh(ω)|/2.
    pub minimum: Vec<f64>,
}

impl SqueezingSpectrum {
    pub fn value_at_zero(&self) -> f64 {
        self.values[self.omegas.len() / 2]
    }

    pub fn minimum_at_zero(&self) -> f64 {
        self.minimum[self.omegas.len() / 2]
    }
}

pub fn squeezing_spectrum<R: TwoPhotonResponse + ?Sized>(
    resp: &R,
    grid: &FrequencyGrid,
    theta: f64,
) -> Result<SqueezingSpectrum> {
    squeezing_spectrum_with(resp, grid, theta, Exec::default())
}

/// S_θ(ω) at the actual drive, sampled on `grid`.
pub fn squeezing_spectrum_with<R: TwoPhotonResponse + ?Sized>(
    resp: &R,
    grid: &FrequencyGrid,
    theta: f64,
    exec: Exec,
) -> Result<SqueezingSpectrum> {
    let spec = resp.sampled_spectrum_per_drive(*grid, exec)?;
    let d = resp.reference_drive();
    let scale = d * d;
    let psi: Vec<Complex64> = spec.values().iter().map(|&v| v * scale).collect();
    Ok(SqueezingSpectrum {
        omegas: spec.grid().omegas(),
        theta,
        values: psi.iter().map(|&v| squeezing_value(v, theta)).collect(),
        optimal_theta: psi.iter().map(|&v| optimal_theta(v)).collect(),
        minimum: psi.iter().map(|&v| -0.5 * v.norm()).collect(),
    })
}
