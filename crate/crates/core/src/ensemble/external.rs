//! Chains illuminated from the side by a plane wave.

use num_complex::Complex64;

use super::spectra::ChainSpectrum;
use super::{base_flags, EnsembleResponse, Parts};
use crate::coefficients::{scattering_per_drive, trans_coeff};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::observables::grid::FrequencyGrid;
use crate::params::{DriveConfig, DriveMode, EmitterParams};

/// Lattice and waveguide data fixing the illumination angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BraggGeometry {
    /// Emitter spacing a.
    pub lattice_spacing: f64,
    /// Free-space wavelength λ, same length unit as the spacing.
    pub wavelength: f64,
    /// Guided-mode index n_eff = λ/λ_f.
    pub effective_index: f64,
    pub order: i32,
}

impl BraggGeometry {
    pub fn new(
        lattice_spacing: f64,
        wavelength: f64,
        effective_index: f64,
        order: i32,
    ) -> Result<Self> {
        for (field, v) in [
            ("lattice_spacing", lattice_spacing),
            ("wavelength", wavelength),
            ("effective_index", effective_index),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(field, format!("must be positive, got {v}")));
            }
        }
        if lattice_spacing < wavelength {
            return Err(Error::invalid(
                "lattice_spacing",
                format!("spacing {lattice_spacing} is below the wavelength {wavelength}"),
            ));
        }
        Ok(Self {
            lattice_spacing,
            wavelength,
            effective_index,
            order,
        })
    }

    fn angle(&self, order: f64) -> Result<f64> {
        let ratio = self.wavelength / self.lattice_spacing;
        let cosine = order * ratio - self.effective_index;
        if cosine.abs() > 1.0 {
            return Err(Error::NoPhysicalAngle {
                order: self.order,
                spacing_over_wavelength: 1.0 / ratio,
                n_eff: self.effective_index,
                cosine,
            });
        }
        Ok(cosine.acos())
    }
}

/// Θ = arccos(mλ/a − n_eff): every emitter scatters into the guide in phase.
pub fn bragg_angle(geom: &BraggGeometry) -> Result<f64> {
    geom.angle(geom.order as f64)
}

/// ζ = arccos((m + ½)λ/a − n_eff): neighbours scatter in anti-phase.
pub fn anti_bragg_angle(geom: &BraggGeometry) -> Result<f64> {
    geom.angle(geom.order as f64 + 0.5)
}

pub fn bragg_chain(
    p: &EmitterParams,
    drive: &DriveConfig,
    grid: &FrequencyGrid,
) -> Result<EnsembleResponse> {
    bragg_chain_with(p, drive, grid, Exec::default())
}

/// Bragg illumination on resonance. The coherent light of emitter n is
/// attenuated by the n − 1 emitters ahead of it, so the chain acts on the pair
/// spectrum exactly like a waveguide drive of the same strength.
pub fn bragg_chain_with(
    p: &EmitterParams,
    drive: &DriveConfig,
    grid: &FrequencyGrid,
    exec: Exec,
) -> Result<EnsembleResponse> {
    drive.require_mode(DriveMode::Bragg)?;
    p.require_resonant("Bragg illumination")?;
    let n = drive.require_emitters()?;
    let beta = p.beta();
    let t0 = trans_coeff(beta, 0.0);
    let first = scattering_per_drive(p);
    let collected = (Complex64::new(1.0, 0.0) - t0.powu(n as u32)) / (2.0 * beta);
    EnsembleResponse::assemble(
        Parts {
            geometry: DriveMode::Bragg,
            drive: drive.omega_ext,
            n,
            alpha_out_unit: first * collected,
            first_scattering_unit: first,
            model: ChainSpectrum::Cascaded {
                beta,
                delta: 0.0,
                n,
            },
            flags: base_flags(p, drive),
        },
        grid,
        exec,
    )
}

pub fn antibragg_chain(
    p: &EmitterParams,
    drive: &DriveConfig,
    grid: &FrequencyGrid,
) -> Result<EnsembleResponse> {
    antibragg_chain_with(p, drive, grid, Exec::default())
}

/// Anti-Bragg illumination on resonance. Coherent light cancels pairwise, so
/// only one emitter's worth survives for odd N and none for even N, while the
/// incoherent pairs of all emitters add up.
pub fn antibragg_chain_with(
    p: &EmitterParams,
    drive: &DriveConfig,
    grid: &FrequencyGrid,
    exec: Exec,
) -> Result<EnsembleResponse> {
    drive.require_mode(DriveMode::AntiBragg)?;
    p.require_resonant("anti-Bragg illumination")?;
    let n = drive.require_emitters()?;
    let first = scattering_per_drive(p);
    let alpha = if n % 2 == 1 {
        first
    } else {
        Complex64::new(0.0, 0.0)
    };
    EnsembleResponse::assemble(
        Parts {
            geometry: DriveMode::AntiBragg,
            drive: drive.omega_ext,
            n,
            alpha_out_unit: alpha,
            first_scattering_unit: first,
            model: ChainSpectrum::AntiBragg { beta: p.beta(), n },
            flags: base_flags(p, drive),
        },
        grid,
        exec,
    )
}
