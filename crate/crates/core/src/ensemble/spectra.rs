//! Incoherent pair spectra of emitter chains, per unit reference drive².

use num_complex::Complex64;

use super::waveguide::waveguide_direct_sum;
use crate::coefficients::{resonant_pair_loss, trans_coeff};
use crate::observables::spectrum::SpectrumModel;
use crate::params::EmitterParams;
use crate::single::normalized_incoherent;

/// Below this |t_Δ² − t_{Δ+ω}t_{Δ−ω}| the closed form is replaced by the sum.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Where |N·(q − 1)| is below this, (q^N − 1)/(q − 1) is summed as a binomial
/// series instead of formed by cancellation.
const SERIES_LIMIT: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum ChainSpectrum {
    /// Cascaded chain, geometric sum in closed form.
    Cascaded { beta: f64, delta: f64, n: usize },
    /// Cascaded chain, emitter-by-emitter summation.
    CascadedDirect { params: EmitterParams, n: usize },
    /// Every emitter at full drive, pairs attenuated by the downstream emitters.
    AntiBragg { beta: f64, n: usize },
    /// Position-dependent generation: weight[n] = ∏_{i<n} t'(i)² · 16β'(n)², per 4β.
    Combined { beta: f64, weights: Vec<f64> },
}

impl SpectrumModel for ChainSpectrum {
    fn at(&self, omega: f64) -> Complex64 {
        match *self {
            ChainSpectrum::Cascaded { beta, delta, n } => {
                normalized_incoherent(beta, delta, omega) * cascade_sum(beta, delta, n, omega)
            }
            ChainSpectrum::CascadedDirect { ref params, n } => {
                waveguide_direct_sum(params, Complex64::new(1.0, 0.0), n, omega)
            }
            ChainSpectrum::AntiBragg { beta, n } => {
                normalized_incoherent(beta, 0.0, omega) * incoherent_buildup(beta, n, omega)
            }
            ChainSpectrum::Combined { beta, ref weights } => {
                let x = 1.0 / (1.0 + 4.0 * omega * omega);
                let keep = 1.0 - resonant_pair_loss(beta, omega);
                let s = weights.iter().fold(0.0, |acc, &w| acc * keep + w);
                Complex64::new(-x * s / (4.0 * beta), 0.0)
            }
        }
    }
}

/// Σ_{n=1}^{N} A^{n−1}·B^{N−n} with A = t_Δ², B = t_{Δ+ω}·t_{Δ−ω}.
pub(crate) fn cascade_sum(beta: f64, delta: f64, n: usize, omega: f64) -> Complex64 {
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let t = trans_coeff(beta, delta);
    let a = t * t;
    let nn = n as u32;
    if omega == 0.0 {
        return a.powu(nn - 1) * n as f64;
    }
    let diff = pair_difference(beta, delta, omega);
    if diff.norm() < DEGENERACY_THRESHOLD || a.norm() == 0.0 {
        return cascade_sum_direct(beta, delta, n, omega);
    }
    // q = B/A = 1 + d
    let d = -diff / a;
    if (d * n as f64).norm() < SERIES_LIMIT {
        // (q^N − 1)/(q − 1) = Σ_j C(N, j+1) d^j
        let mut term = Complex64::new(n as f64, 0.0);
        let mut sum = term;
        for j in 1..n {
            term = term * d * ((n - j) as f64 / (j + 1) as f64);
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        return a.powu(nn - 1) * sum;
    }
    let b = trans_coeff(beta, delta + omega) * trans_coeff(beta, delta - omega);
    (a.powu(nn) - b.powu(nn)) / diff
}

/// t_Δ² − t_{Δ+ω}t_{Δ−ω} = −16βω²(u − β)/(u²(u² + 4ω²)), u = 1 − 2iΔ.
fn pair_difference(beta: f64, delta: f64, omega: f64) -> Complex64 {
    let u = Complex64::new(1.0, -2.0 * delta);
    let u2 = u * u;
    let w2 = omega * omega;
    -(u - beta) * (16.0 * beta * w2) / (u2 * (u2 + 4.0 * w2))
}

/// Horner evaluation of the same sum.
pub(crate) fn cascade_sum_direct(beta: f64, delta: f64, n: usize, omega: f64) -> Complex64 {
    let t = trans_coeff(beta, delta);
    let a = t * t;
    let b = trans_coeff(beta, delta + omega) * trans_coeff(beta, delta - omega);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut a_pow = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        sum = sum * b + a_pow;
        a_pow *= a;
    }
    sum
}

/// (1 − |t_ω|^{2N})/(1 − |t_ω|²) at resonance.
pub(crate) fn incoherent_buildup(beta: f64, n: usize, omega: f64) -> f64 {
    let loss = resonant_pair_loss(beta, omega);
    if loss == 0.0 {
        return n as f64;
    }
    -(n as f64 * (-loss).ln_1p()).exp_m1() / loss
}
