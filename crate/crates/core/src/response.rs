//! Common view of single-emitter and chain responses.
//!
//! Everything is stored per unit reference drive (Ω_wg for guided geometries,
//! Ω_ext otherwise). Amplitudes scale as Ω and two-photon quantities as Ω², so
//! normalised observables such as g² never touch the drive at all and come out
//! bit-identical under any rescaling or global phase of Ω.

use std::borrow::Cow;

use num_complex::Complex64;

use crate::error::Result;
use crate::exec::Exec;
use crate::observables::grid::FrequencyGrid;
use crate::observables::spectrum::SampledSpectrum;
use crate::observables::transform::{freq_to_time, psi_incoh_at_zero, TimeTrace};
use crate::params::{ComplexAmplitude, DriveMode, Flags, Units};

pub trait TwoPhotonResponse: Sync {
    fn geometry(&self) -> DriveMode;

    fn reference_drive(&self) -> Complex64;

    fn n_emitters(&self) -> usize;

    /// α_out / Ω_ref.
    fn alpha_out_per_drive(&self) -> Complex64;

    /// α_sc of the first emitter / Ω_ref; the natural scale of ψ_incoh.
    fn first_scattering_per_drive(&self) -> Complex64;

    /// ψ_incoh(ω) / Ω_ref².
    fn spectrum_per_drive(&self, omega: f64) -> Complex64;

    fn flags(&self) -> Flags;

    /// ψ_incoh(ω) / Ω_ref² sampled on `grid` (or on a widened grid).
    fn sampled_spectrum_per_drive(
        &self,
        grid: FrequencyGrid,
        exec: Exec,
    ) -> Result<Cow<'_, SampledSpectrum>> {
        SampledSpectrum::from_model_with(&|w: f64| self.spectrum_per_drive(w), grid, exec)
            .map(Cow::Owned)
    }

    /// ψ_incoh(τ) / Ω_ref² on the time grid conjugate to `grid`.
    fn incoherent_trace_per_drive(&self, grid: FrequencyGrid, exec: Exec) -> Result<TimeTrace> {
        freq_to_time(&*self.sampled_spectrum_per_drive(grid, exec)?)
    }

    /// ψ_incoh(τ = 0) / Ω_ref².
    fn incoherent_zero_per_drive(&self, grid: FrequencyGrid, exec: Exec) -> Result<Complex64> {
        psi_incoh_at_zero(&*self.sampled_spectrum_per_drive(grid, exec)?)
    }

    fn coherent_pair_per_drive(&self) -> Complex64 {
        let a = self.alpha_out_per_drive();
        a * a
    }

    fn alpha_out(&self) -> ComplexAmplitude {
        ComplexAmplitude::new(
            self.reference_drive() * self.alpha_out_per_drive(),
            Units::SqrtFlux,
        )
    }

    fn psi_coh(&self) -> ComplexAmplitude {
        let d = self.reference_drive();
        ComplexAmplitude::new(d * d * self.coherent_pair_per_drive(), Units::Flux)
    }

    fn first_scattering(&self) -> ComplexAmplitude {
        ComplexAmplitude::new(
            self.reference_drive() * self.first_scattering_per_drive(),
            Units::SqrtFlux,
        )
    }

    /// ψ_incoh(ω) at the actual drive.
    fn psi_incoh_freq(&self, omega: f64) -> ComplexAmplitude {
        let d = self.reference_drive();
        ComplexAmplitude::new(d * d * self.spectrum_per_drive(omega), Units::Dimensionless)
    }
}
