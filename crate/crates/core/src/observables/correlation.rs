use num_complex::Complex64;

use crate::error::Result;
use crate::exec::Exec;
use crate::observables::grid::FrequencyGrid;
use crate::params::{DriveMode, Flags, ValidityFlag};
use crate::response::TwoPhotonResponse;

pub const ZERO_COHERENT_NOTE: &str = "coherent power is zero: g2 diverges";

/// g² from per-drive quantities: |α² + ψ_incoh|²/|α|⁴, +∞ when α = 0.
#[inline]
pub fn normalized_g2(alpha_out: Complex64, psi_incoh: Complex64) -> f64 {
    let a2 = alpha_out.norm_sqr();
    if a2 == 0.0 {
        return f64::INFINITY;
    }
    (alpha_out * alpha_out + psi_incoh).norm_sqr() / (a2 * a2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTrace {
    /// τ in units of 1/Γ.
    pub taus: Vec<f64>,
    pub g2: Vec<f64>,
    pub geometry: DriveMode,
    pub n_emitters: usize,
    pub note: Option<&'static str>,
    pub flags: Flags,
}

impl CorrelationTrace {
    pub fn g2_at_zero(&self) -> f64 {
        self.g2[self.taus.len() / 2]
    }

    /// Samples with |τ| ≤ `tau_max`.
    pub fn window(&self, tau_max: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.taus
            .iter()
            .zip(&self.g2)
            .filter(move |(t, _)| t.abs() <= tau_max)
            .map(|(&t, &g)| (t, g))
    }
}

pub fn g2_trace<R: TwoPhotonResponse + ?Sized>(
    resp: &R,
    grid: &FrequencyGrid,
) -> Result<CorrelationTrace> {
    g2_trace_with(resp, grid, Exec::default())
}

/// g²(τ) on the time grid conjugate to `grid`.
pub fn g2_trace_with<R: TwoPhotonResponse + ?Sized>(
    resp: &R,
    grid: &FrequencyGrid,
    exec: Exec,
) -> Result<CorrelationTrace> {
    let trace = resp.incoherent_trace_per_drive(*grid, exec)?;
    let alpha = resp.alpha_out_per_drive();
    let g2 = trace
        .values
        .iter()
        .map(|&v| normalized_g2(alpha, v))
        .collect();
    let mut flags = resp.flags();
    if trace.grid != grid.time_grid() {
        flags.insert(ValidityFlag::GridWidened);
    }
    Ok(CorrelationTrace {
        taus: trace.grid.taus(),
        g2,
        geometry: resp.geometry(),
        n_emitters: resp.n_emitters(),
        note: (alpha.norm_sqr() == 0.0).then_some(ZERO_COHERENT_NOTE),
        flags,
    })
}

/// g²(τ = 0) without a full transform.
pub fn g2_zero<R: TwoPhotonResponse + ?Sized>(
    resp: &R,
    grid: &FrequencyGrid,
    exec: Exec,
) -> Result<f64> {
    let zero = resp.incoherent_zero_per_drive(*grid, exec)?;
    Ok(normalized_g2(resp.alpha_out_per_drive(), zero))
}
