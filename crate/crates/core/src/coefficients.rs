//! Single-pass coefficients every chain geometry is built from.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{ComplexAmplitude, EmitterParams, Units};

/// g(x) = 2β / (1 − 2i·x), x a detuning in units of Γ.
#[inline]
pub(crate) fn gen_coeff(beta: f64, x: f64) -> Complex64 {
    Complex64::new(2.0 * beta, 0.0) / Complex64::new(1.0, -2.0 * x)
}

/// t(x) = 1 − g(x).
#[inline]
pub(crate) fn trans_coeff(beta: f64, x: f64) -> Complex64 {
    Complex64::new(1.0, 0.0) - gen_coeff(beta, x)
}

/// |t(ω)|² at resonance, written as 1 − 4β(1−β)/(1+4ω²) so that the small
/// difference 1 − |t|² never has to be formed by subtraction.
#[inline]
pub(crate) fn resonant_pair_loss(beta: f64, omega: f64) -> f64 {
    4.0 * beta * (1.0 - beta) / (1.0 + 4.0 * omega * omega)
}

/// Power-independent photon generation coefficient g = 2β / (1 − 2i·x).
pub fn photon_generation_coefficient(p: &EmitterParams, at_detuning: f64) -> ComplexAmplitude {
    ComplexAmplitude::new(gen_coeff(p.beta(), at_detuning), Units::Dimensionless)
}

/// Single-emitter amplitude transmission t = 1 − g.
pub fn transmission_coefficient(p: &EmitterParams, at_detuning: f64) -> ComplexAmplitude {
    ComplexAmplitude::new(trans_coeff(p.beta(), at_detuning), Units::Dimensionless)
}

/// α_sc per unit local Rabi amplitude: −g_Δ / (2√β).
#[inline]
pub(crate) fn scattering_per_drive(p: &EmitterParams) -> Complex64 {
    -gen_coeff(p.beta(), p.delta()) / (2.0 * p.beta().sqrt())
}

/// α_in per unit guided Rabi amplitude: 1 / (2√β).
#[inline]
pub(crate) fn input_per_drive(p: &EmitterParams) -> f64 {
    1.0 / (2.0 * p.beta().sqrt())
}

/// Coherent single-photon amplitude scattered forward by an emitter that sees
/// the local drive `omega_local`: α_sc = −Ω/(2√β)·g_Δ, in √Γ.
pub fn coherent_scattering_amplitude(
    p: &EmitterParams,
    omega_local: Complex64,
) -> ComplexAmplitude {
    ComplexAmplitude::new(omega_local * scattering_per_drive(p), Units::SqrtFlux)
}

/// OD = −2N·ln|t_Δ|.
pub fn optical_depth(p: &EmitterParams, n: usize) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let t = trans_coeff(p.beta(), p.delta()).norm();
    if t == 0.0 {
        return Err(Error::Saturation {
            beta: p.beta(),
            delta: p.delta(),
        });
    }
    Ok(-2.0 * n as f64 * t.ln())
}

/// Small-β resonant optical depth, OD ≈ 4βN.
pub fn optical_depth_small_beta(p: &EmitterParams, n: usize) -> f64 {
    4.0 * p.beta() * n as f64
}
