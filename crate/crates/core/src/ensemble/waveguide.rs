use num_complex::Complex64;

use super::spectra::ChainSpectrum;
use super::{base_flags, EnsembleResponse, Parts};
use crate::coefficients::{input_per_drive, scattering_per_drive, trans_coeff};
use crate::error::Result;
use crate::exec::Exec;
use crate::observables::grid::FrequencyGrid;
use crate::params::{DriveConfig, DriveMode, EmitterParams};

pub fn waveguide_chain(
    p: &EmitterParams,
    drive: &DriveConfig,
    grid: &FrequencyGrid,
) -> Result<EnsembleResponse> {
    waveguide_chain_with(p, drive, grid, Exec::default())
}

/// Chain driven through the waveguide: α_out = t_Δ^N·α_in and a geometric
/// sum over the emitters for the pair spectrum.
pub fn waveguide_chain_with(
    p: &EmitterParams,
    drive: &DriveConfig,
    grid: &FrequencyGrid,
    exec: Exec,
) -> Result<EnsembleResponse> {
    build(p, drive, grid, exec, false)
}

pub fn waveguide_chain_direct(
    p: &EmitterParams,
    drive: &DriveConfig,
    grid: &FrequencyGrid,
) -> Result<EnsembleResponse> {
    waveguide_chain_direct_with(p, drive, grid, Exec::default())
}

/// Same contract as [`waveguide_chain`], summing emitter by emitter.
pub fn waveguide_chain_direct_with(
    p: &EmitterParams,
    drive: &DriveConfig,
    grid: &FrequencyGrid,
    exec: Exec,
) -> Result<EnsembleResponse> {
    build(p, drive, grid, exec, true)
}

fn build(
    p: &EmitterParams,
    drive: &DriveConfig,
    grid: &FrequencyGrid,
    exec: Exec,
    direct: bool,
) -> Result<EnsembleResponse> {
    drive.require_mode(DriveMode::Waveguide)?;
    let n = drive.n_emitters;
    let (beta, delta) = (p.beta(), p.delta());
    let t = trans_coeff(beta, delta);
    let model = if direct {
        ChainSpectrum::CascadedDirect { params: *p, n }
    } else {
        ChainSpectrum::Cascaded { beta, delta, n }
    };
    EnsembleResponse::assemble(
        Parts {
            geometry: DriveMode::Waveguide,
            drive: drive.omega_wg,
            n,
            alpha_out_unit: t.powu(n as u32) * input_per_drive(p),
            first_scattering_unit: scattering_per_drive(p),
            model,
            flags: base_flags(p, drive),
        },
        grid,
        exec,
    )
}

/// Brute-force ψ_incoh(ω) of a waveguide-driven chain: each emitter n sees the
/// drive t_Δ^{n−1}·Ω and its pair is transmitted through the N − n emitters behind it.
pub fn waveguide_direct_sum(
    p: &EmitterParams,
    omega_wg: Complex64,
    n: usize,
    omega: f64,
) -> Complex64 {
    use crate::coefficients::transmission_coefficient;
    use crate::single::incoherent_freq;
    let t = transmission_coefficient(p, p.delta()).value;
    let pair = transmission_coefficient(p, p.delta() + omega).value
        * transmission_coefficient(p, p.delta() - omega).value;
    (1..=n)
        .map(|k| {
            let local = omega_wg * t.powu(k as u32 - 1);
            incoherent_freq(p, local, omega).value * pair.powu((n - k) as u32)
        })
        .sum()
}
