//! Closed-form approximations for small β and a waveguide drive on resonance.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coefficients::{input_per_drive, optical_depth_small_beta};
use crate::error::{Error, Result};
use crate::params::EmitterParams;
use crate::single::incoherent_freq;

/// Low optical depth: every emitter sees the full drive, ψ_incoh ≈ N·ψ_incoh^{(1)}.
pub fn approx_low_od_spectrum(
    p: &EmitterParams,
    omega_wg: Complex64,
    n: usize,
    omega: f64,
) -> Complex64 {
    incoherent_freq(p, omega_wg, omega).value * n as f64
}

/// Large optical depth, first order in β with OD = 4βN:
/// ψ_incoh(ω) ≈ −(α_in²β/ω²)·[e^{−OD/(1+4ω²)} − e^{−OD}].
pub fn approx_large_od_spectrum(
    p: &EmitterParams,
    omega_wg: Complex64,
    n: usize,
    omega: f64,
) -> Result<Complex64> {
    p.require_resonant("the large-OD approximation")?;
    if omega == 0.0 {
        return Err(Error::invalid(
            "omega",
            "the large-OD approximation diverges at omega = 0",
        ));
    }
    let od = optical_depth_small_beta(p, n);
    let alpha_in = omega_wg * input_per_drive(p);
    let bracket = (-od / (1.0 + 4.0 * omega * omega)).exp() - (-od).exp();
    Ok(-(alpha_in * alpha_in) * (p.beta() / (omega * omega) * bracket))
}

/// ψ_incoh(τ = 0) ≈ −α_in²·√(β/(4πN)) at large optical depth.
pub fn approx_psi_incoh_zero(
    p: &EmitterParams,
    omega_wg: Complex64,
    n: usize,
) -> Result<Complex64> {
    p.require_resonant("the large-OD approximation")?;
    if n == 0 {
        return Err(Error::invalid("n_emitters", "must be at least 1"));
    }
    let alpha_in = omega_wg * input_per_drive(p);
    Ok(-(alpha_in * alpha_in) * (p.beta() / (4.0 * PI * n as f64)).sqrt())
}

/// g²(0) ≈ [1 − e^{4βN}·√(β/(4πN))]².
pub fn approx_g2_zero(p: &EmitterParams, n: usize) -> Result<f64> {
    p.require_resonant("the large-OD approximation")?;
    if n == 0 {
        return Err(Error::invalid("n_emitters", "must be at least 1"));
    }
    Ok((1.0 - excess(p.beta(), n as f64)).powi(2))
}

fn excess(beta: f64, n: f64) -> f64 {
    (4.0 * beta * n).exp() * (beta / (4.0 * PI * n)).sqrt()
}

/// Real N > 1/(8β) at which the approximate g²(0) vanishes, by bisection.
pub fn approx_antibunching_length(p: &EmitterParams) -> Result<f64> {
    p.require_resonant("the large-OD approximation")?;
    let beta = p.beta();
    // e^{4βN}/√N is increasing beyond its minimum at N = 1/(8β)
    let mut lo = 1.0 / (8.0 * beta);
    if excess(beta, lo) >= 1.0 {
        return Err(Error::Unsupported(format!(
            "no antibunching point for beta = {beta}"
        )));
    }
    let mut hi = 2.0 * lo;
    while excess(beta, hi) < 1.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(beta, mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
