//! Exact two-photon response of a single emitter.

use std::borrow::Cow;

use num_complex::Complex64;

use crate::coefficients::{gen_coeff, input_per_drive, scattering_per_drive, trans_coeff};
use crate::error::Result;
use crate::exec::Exec;
use crate::observables::grid::FrequencyGrid;
use crate::observables::spectrum::SampledSpectrum;
use crate::observables::transform::TimeTrace;
use crate::params::{
    ComplexAmplitude, DriveConfig, DriveMode, EmitterParams, Flags, Units, ValidityFlag,
};
use crate::response::TwoPhotonResponse;

/// ψ_incoh(ω) per unit local drive²: −g_Δ·g_{Δ+ω}·g_{Δ−ω}/(2β²).
///
/// The ±ω pair is multiplied first so the result is exactly even in ω and
/// exactly real on resonance.
#[inline]
pub(crate) fn normalized_incoherent(beta: f64, delta: f64, omega: f64) -> Complex64 {
    let pair = gen_coeff(beta, delta + omega) * gen_coeff(beta, delta - omega);
    -(gen_coeff(beta, delta) * pair) / (2.0 * beta * beta)
}

/// e^{−|τ|/2}·e^{iΔ|τ|}.
#[inline]
fn decay(delta: f64, tau: f64) -> Complex64 {
    let t = tau.abs();
    Complex64::from_polar((-0.5 * t).exp(), delta * t)
}

/// ψ_incoh(τ) = −α_sc²·e^{−|τ|/2}·e^{iΔ|τ|}, in units of Γ.
pub fn incoherent_time(p: &EmitterParams, omega_local: Complex64, tau: f64) -> ComplexAmplitude {
    let a = omega_local * scattering_per_drive(p);
    ComplexAmplitude::new(-(a * a) * decay(p.delta(), tau), Units::Flux)
}

/// ψ_incoh(ω) = −Ω²/(2β²)·g_Δ·g_{Δ+ω}·g_{Δ−ω}, dimensionless.
pub fn incoherent_freq(p: &EmitterParams, omega_local: Complex64, omega: f64) -> ComplexAmplitude {
    let v = omega_local * omega_local * normalized_incoherent(p.beta(), p.delta(), omega);
    ComplexAmplitude::new(v, Units::Dimensionless)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingleEmitterResponse {
    params: EmitterParams,
    mode: DriveMode,
    drive: Complex64,
    alpha_out_unit: Complex64,
    /// Local drive at the emitter per unit reference drive.
    local_unit: f64,
    flags: Flags,
}

impl SingleEmitterResponse {
    pub fn params(&self) -> &EmitterParams {
        &self.params
    }

    pub fn psi_incoh_time(&self, tau: f64) -> ComplexAmplitude {
        let d = self.drive;
        ComplexAmplitude::new(d * d * self.incoherent_time_per_drive(tau), Units::Flux)
    }

    pub fn psi_incoh_freq_at(&self, omega: f64) -> ComplexAmplitude {
        self.psi_incoh_freq(omega)
    }

    /// ψ(τ) = ψ_coh + ψ_incoh(τ).
    pub fn psi_total(&self, tau: f64) -> Complex64 {
        self.psi_coh().value + self.psi_incoh_time(tau).value
    }

    fn incoherent_time_per_drive(&self, tau: f64) -> Complex64 {
        let a = self.first_scattering_per_drive();
        -(a * a) * decay(self.params.delta(), tau)
    }
}

impl TwoPhotonResponse for SingleEmitterResponse {
    fn geometry(&self) -> DriveMode {
        self.mode
    }

    fn reference_drive(&self) -> Complex64 {
        self.drive
    }

    fn n_emitters(&self) -> usize {
        1
    }

    fn alpha_out_per_drive(&self) -> Complex64 {
        self.alpha_out_unit
    }

    fn first_scattering_per_drive(&self) -> Complex64 {
        scattering_per_drive(&self.params) * self.local_unit
    }

    fn spectrum_per_drive(&self, omega: f64) -> Complex64 {
        let l = self.local_unit;
        normalized_incoherent(self.params.beta(), self.params.delta(), omega) * (l * l)
    }

    fn flags(&self) -> Flags {
        self.flags.clone()
    }

    fn sampled_spectrum_per_drive(
        &self,
        grid: FrequencyGrid,
        exec: Exec,
    ) -> Result<Cow<'_, SampledSpectrum>> {
        SampledSpectrum::from_model_with(&|w: f64| self.spectrum_per_drive(w), grid, exec)
            .map(Cow::Owned)
    }

    /// Evaluated analytically on the conjugate time grid.
    fn incoherent_trace_per_drive(&self, grid: FrequencyGrid, exec: Exec) -> Result<TimeTrace> {
        let times = grid.time_grid();
        let values = exec.map_range(times.n_points(), |j| {
            self.incoherent_time_per_drive(times.tau(j))
        });
        Ok(TimeTrace {
            grid: times,
            values,
        })
    }

    fn incoherent_zero_per_drive(&self, _grid: FrequencyGrid, _exec: Exec) -> Result<Complex64> {
        Ok(self.incoherent_time_per_drive(0.0))
    }
}

fn base_flags(p: &EmitterParams, drive: &DriveConfig) -> Flags {
    let mut f = p.flags();
    f.extend(&drive.flags());
    f
}

fn require_single(drive: &DriveConfig) -> Result<()> {
    if drive.n_emitters != 1 {
        return Err(crate::error::Error::invalid(
            "n_emitters",
            format!(
                "single-emitter response needs N = 1, got {}",
                drive.n_emitters
            ),
        ));
    }
    Ok(())
}

/// One emitter driven from outside: only scattered light reaches the detector.
pub fn response_external(p: &EmitterParams, drive: &DriveConfig) -> Result<SingleEmitterResponse> {
    drive.require_mode(DriveMode::ExternalSingle)?;
    require_single(drive)?;
    Ok(SingleEmitterResponse {
        params: *p,
        mode: DriveMode::ExternalSingle,
        drive: drive.omega_ext,
        alpha_out_unit: scattering_per_drive(p),
        local_unit: 1.0,
        flags: base_flags(p, drive),
    })
}

/// One emitter driven through the waveguide: α_out = t_Δ·α_in.
pub fn response_waveguide(p: &EmitterParams, drive: &DriveConfig) -> Result<SingleEmitterResponse> {
    drive.require_mode(DriveMode::Waveguide)?;
    require_single(drive)?;
    Ok(SingleEmitterResponse {
        params: *p,
        mode: DriveMode::Waveguide,
        drive: drive.omega_wg,
        alpha_out_unit: trans_coeff(p.beta(), p.delta()) * input_per_drive(p),
        local_unit: 1.0,
        flags: base_flags(p, drive),
    })
}

/// Guided plus in-phase (or anti-phase) external drive, r = Ω_ext/Ω_wg real.
///
/// The emitter acts like one with coupling β' = β(1 + r) on the coherent
/// channel; its incoherent pair is generated by the summed drive (1 + r)·Ω_wg.
pub fn response_combined(p: &EmitterParams, drive: &DriveConfig) -> Result<SingleEmitterResponse> {
    drive.require_mode(DriveMode::Combined)?;
    require_single(drive)?;
    let r = drive.real_ratio()?;
    let beta_eff = effective_beta(p.beta(), r);
    let t_eff = Complex64::new(1.0, 0.0) - gen_coeff(beta_eff, p.delta());
    let mut flags = base_flags(p, drive);
    if r < 0.0 {
        flags.insert(ValidityFlag::AntiPhaseDrive);
    }
    if beta_eff >= 0.5 {
        flags.insert(ValidityFlag::LargeEffectiveCoupling);
    }
    Ok(SingleEmitterResponse {
        params: *p,
        mode: DriveMode::Combined,
        drive: drive.omega_wg,
        alpha_out_unit: t_eff * input_per_drive(p),
        local_unit: 1.0 + r,
        flags,
    })
}

/// β' = β(1 + r).
pub fn effective_beta(beta: f64, ratio: f64) -> f64 {
    beta * (1.0 + ratio)
}

/// Dispatches on the drive geometry for N = 1.
pub fn response(p: &EmitterParams, drive: &DriveConfig) -> Result<SingleEmitterResponse> {
    match drive.mode {
        DriveMode::ExternalSingle => response_external(p, drive),
        DriveMode::Waveguide => response_waveguide(p, drive),
        DriveMode::Combined => response_combined(p, drive),
        other => Err(crate::error::Error::Unsupported(format!(
            "{other} illumination needs a chain; use the ensemble models"
        ))),
    }
}
