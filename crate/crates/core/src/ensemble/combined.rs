//! Guided drive plus an in-phase external field.
//!
//! The external field adds to what each emitter receives through the guide.
//! Since the guided part is attenuated by t₀ per emitter while the external part
//! is not, emitter n behaves as if coupled with β'(n) = β(1 + r/t₀^{n−1}).

use num_complex::Complex64;

use super::spectra::ChainSpectrum;
use super::{base_flags, EnsembleResponse, Parts};
use crate::coefficients::{input_per_drive, scattering_per_drive, trans_coeff};
use crate::error::Result;
use crate::exec::Exec;
use crate::observables::grid::FrequencyGrid;
use crate::params::{DriveConfig, DriveMode, EmitterParams, ValidityFlag};

/// β'(n) for n = 1..=N.
pub fn effective_couplings(beta: f64, ratio: f64, n: usize) -> Vec<f64> {
    let t0 = 1.0 - 2.0 * beta;
    let mut guided = 1.0;
    (0..n)
        .map(|_| {
            let b = beta * (1.0 + ratio / guided);
            guided *= t0;
            b
        })
        .collect()
}

pub fn combined_chain(
    p: &EmitterParams,
    drive: &DriveConfig,
    grid: &FrequencyGrid,
) -> Result<EnsembleResponse> {
    combined_chain_with(p, drive, grid, Exec::default())
}

pub fn combined_chain_with(
    p: &EmitterParams,
    drive: &DriveConfig,
    grid: &FrequencyGrid,
    exec: Exec,
) -> Result<EnsembleResponse> {
    drive.require_mode(DriveMode::Combined)?;
    p.require_resonant("combined illumination")?;
    let n = drive.require_emitters()?;
    let r = drive.real_ratio()?;
    let beta = p.beta();
    let mut flags = base_flags(p, drive);
    if r < 0.0 {
        flags.insert(ValidityFlag::AntiPhaseDrive);
    }

    let (alpha_out_unit, model) = if r == 0.0 {
        // no external field: the plain waveguide chain
        (
            trans_coeff(beta, 0.0).powu(n as u32) * input_per_drive(p),
            ChainSpectrum::Cascaded {
                beta,
                delta: 0.0,
                n,
            },
        )
    } else {
        let couplings = effective_couplings(beta, r, n);
        if couplings.iter().any(|&b| b >= 0.5) {
            flags.insert(ValidityFlag::LargeEffectiveCoupling);
        }
        let mut transmitted = 1.0;
        let weights = couplings
            .iter()
            .map(|&b| {
                let w = transmitted * transmitted * 16.0 * b * b;
                transmitted *= 1.0 - 2.0 * b;
                w
            })
            .collect();
        (
            Complex64::new(transmitted * input_per_drive(p), 0.0),
            ChainSpectrum::Combined { beta, weights },
        )
    };

    EnsembleResponse::assemble(
        Parts {
            geometry: DriveMode::Combined,
            drive: drive.omega_wg,
            n,
            alpha_out_unit,
            first_scattering_unit: scattering_per_drive(p) * (1.0 + r),
            model,
            flags,
        },
        grid,
        exec,
    )
}
