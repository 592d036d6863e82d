//! Chains of N identical emitters along the waveguide.

mod combined;
mod external;
mod random_phase;
mod scan;
mod spectra;
mod waveguide;

use std::borrow::Cow;

use num_complex::Complex64;

pub use combined::{combined_chain, combined_chain_with, effective_couplings};
pub use external::{
    anti_bragg_angle, antibragg_chain, antibragg_chain_with, bragg_angle, bragg_chain,
    bragg_chain_with, BraggGeometry,
};
pub use random_phase::{
    random_distance_g2_mc, random_distance_g2_mc_with, McEstimate, MIN_MC_SAMPLES,
};
pub use scan::{antibunching_point, g2_zero_sweep, SweepPoint};
pub use spectra::DEGENERACY_THRESHOLD;
pub use waveguide::{
    waveguide_chain, waveguide_chain_direct, waveguide_chain_direct_with, waveguide_chain_with,
    waveguide_direct_sum,
};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::observables::grid::FrequencyGrid;
use crate::observables::spectrum::{SampledSpectrum, SpectrumModel};
use crate::params::{DriveConfig, DriveMode, EmitterParams, Flags};
use crate::response::TwoPhotonResponse;
use spectra::ChainSpectrum;

/// Output amplitude and pair spectrum of a chain, stored per unit reference drive.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleResponse {
    geometry: DriveMode,
    drive: Complex64,
    n: usize,
    alpha_out_unit: Complex64,
    first_scattering_unit: Complex64,
    model: ChainSpectrum,
    requested_grid: FrequencyGrid,
    samples: SampledSpectrum,
    flags: Flags,
}

struct Parts {
    geometry: DriveMode,
    drive: Complex64,
    n: usize,
    alpha_out_unit: Complex64,
    first_scattering_unit: Complex64,
    model: ChainSpectrum,
    flags: Flags,
}

impl EnsembleResponse {
    fn assemble(parts: Parts, grid: &FrequencyGrid, exec: Exec) -> Result<Self> {
        let samples = SampledSpectrum::from_model_with(&parts.model, *grid, exec)?;
        let mut flags = parts.flags;
        flags.extend(&samples.flags());
        Ok(Self {
            geometry: parts.geometry,
            drive: parts.drive,
            n: parts.n,
            alpha_out_unit: parts.alpha_out_unit,
            first_scattering_unit: parts.first_scattering_unit,
            model: parts.model,
            requested_grid: *grid,
            samples,
            flags,
        })
    }

    /// ψ_incoh(ω) at the actual drive, on the sampling grid.
    pub fn psi_incoh_samples(&self) -> SampledSpectrum {
        let d = self.drive;
        self.samples.scaled(d * d)
    }

    /// ψ_incoh(ω) / Ω_ref² on the sampling grid.
    pub fn spectrum_samples_per_drive(&self) -> &SampledSpectrum {
        &self.samples
    }

    /// The grid the spectrum is actually sampled on (possibly widened).
    pub fn grid(&self) -> &FrequencyGrid {
        self.samples.grid()
    }
}

impl TwoPhotonResponse for EnsembleResponse {
    fn geometry(&self) -> DriveMode {
        self.geometry
    }

    fn reference_drive(&self) -> Complex64 {
        self.drive
    }

    fn n_emitters(&self) -> usize {
        self.n
    }

    fn alpha_out_per_drive(&self) -> Complex64 {
        self.alpha_out_unit
    }

    fn first_scattering_per_drive(&self) -> Complex64 {
        self.first_scattering_unit
    }

    fn spectrum_per_drive(&self, omega: f64) -> Complex64 {
        self.model.at(omega)
    }

    fn flags(&self) -> Flags {
        self.flags.clone()
    }

    fn sampled_spectrum_per_drive(
        &self,
        grid: FrequencyGrid,
        exec: Exec,
    ) -> Result<Cow<'_, SampledSpectrum>> {
        if grid == self.requested_grid {
            Ok(Cow::Borrowed(&self.samples))
        } else {
            SampledSpectrum::from_model_with(&self.model, grid, exec).map(Cow::Owned)
        }
    }
}

fn base_flags(p: &EmitterParams, drive: &DriveConfig) -> Flags {
    let mut f = p.flags();
    f.extend(&drive.flags());
    f
}

/// Builds the chain response for any chain geometry.
pub fn chain(
    p: &EmitterParams,
    drive: &DriveConfig,
    grid: &FrequencyGrid,
    exec: Exec,
) -> Result<EnsembleResponse> {
    match drive.mode {
        DriveMode::Waveguide => waveguide_chain_with(p, drive, grid, exec),
        DriveMode::Bragg => bragg_chain_with(p, drive, grid, exec),
        DriveMode::AntiBragg => antibragg_chain_with(p, drive, grid, exec),
        DriveMode::Combined => combined_chain_with(p, drive, grid, exec),
        DriveMode::ExternalSingle => Err(Error::Unsupported(
            "a single externally driven emitter has no chain; use the single-emitter response"
                .into(),
        )),
    }
}
