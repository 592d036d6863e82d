use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::Result;
use crate::observables::grid::TimeGrid;
use crate::observables::spectrum::SampledSpectrum;

/// Samples of a function of delay τ on a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct TimeTrace {
    pub grid: TimeGrid,
    pub values: Vec<Complex64>,
}

impl TimeTrace {
    pub fn value_at_zero(&self) -> Complex64 {
        self.values[self.grid.zero_index()]
    }

    pub fn scaled(&self, k: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| v * k).collect(),
        }
    }
}

/// ψ(τ) = (1/2π)∫ψ(ω)e^{−iωτ}dω on the conjugate time grid.
///
/// The residual after tail subtraction is transformed with one FFT; the tail
/// is added back analytically.
pub fn freq_to_time(spec: &SampledSpectrum) -> Result<TimeTrace> {
    spec.require_adequate()?;
    let grid = *spec.grid();
    let n = grid.n_points();
    let mut buf: Vec<Complex64> = (0..n)
        .map(|k| {
            let r = spec.residual(k);
            if k % 2 == 1 {
                -r
            } else {
                r
            }
        })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = grid.spacing() / (2.0 * std::f64::consts::PI);
    let times = grid.time_grid();
    let values = buf
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let v = if j % 2 == 1 { -v } else { v };
            v * scale + spec.tail().time(times.tau(j))
        })
        .collect();
    Ok(TimeTrace {
        grid: times,
        values,
    })
}

/// ψ(τ = 0) = (1/2π)∫ψ(ω)dω without a full transform.
pub fn psi_incoh_at_zero(spec: &SampledSpectrum) -> Result<Complex64> {
    spec.require_adequate()?;
    let grid = spec.grid();
    let sum: Complex64 = (0..grid.n_points()).map(|k| spec.residual(k)).sum();
    Ok(sum * (grid.spacing() / (2.0 * std::f64::consts::PI)) + spec.tail().time(0.0))
}

/// Relative mismatch between Δω·Σ|ψ(ω_k)|² and 2π·Δτ·Σ|ψ(τ_j)|² for the raw
/// discrete transform, without tail handling.
pub fn parseval_residual(spec: &SampledSpectrum) -> f64 {
    let grid = spec.grid();
    let n = grid.n_points();
    let mut buf: Vec<Complex64> = spec.values().to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let dw = grid.spacing();
    let dt = grid.time_grid().spacing();
    let scale = dw / (2.0 * std::f64::consts::PI);
    let freq_energy: f64 = spec.values().iter().map(|v| v.norm_sqr()).sum::<f64>() * dw;
    let time_energy: f64 =
        buf.iter().map(|v| (v * scale).norm_sqr()).sum::<f64>() * dt * 2.0 * std::f64::consts::PI;
    if freq_energy == 0.0 {
        return time_energy;
    }
    (freq_energy - time_energy).abs() / freq_energy
}
