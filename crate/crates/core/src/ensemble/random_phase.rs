//! Emitters at random positions: uniformly random drive phases.
//!
//! With absorption neglected, g²(0) = E|Σ_{i≠j} e^{i(φ_i+φ_j)}|² / (2·E[|Σ e^{iφ_i}|²]²),
//! which the phase average evaluates to 1 − 1/N.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::params::{DriveConfig, EmitterParams};

pub const MIN_MC_SAMPLES: usize = 100;

/// Samples per independently seeded stream.
const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub g2_zero: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    pair: f64,
    coherent: f64,
    pair_sq: f64,
    coherent_sq: f64,
    cross: f64,
}

impl Moments {
    fn push(&mut self, y: f64, d: f64) {
        self.n += 1.0;
        self.pair += y;
        self.coherent += d;
        self.pair_sq += y * y;
        self.coherent_sq += d * d;
        self.cross += y * d;
    }

    fn merge(mut self, o: &Moments) -> Self {
        self.n += o.n;
        self.pair += o.pair;
        self.coherent += o.coherent;
        self.pair_sq += o.pair_sq;
        self.coherent_sq += o.coherent_sq;
        self.cross += o.cross;
        self
    }
}

fn sample_chunk(n_emitters: usize, count: usize, seed: u64, stream: u64) -> Moments {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut m = Moments::default();
    for _ in 0..count {
        let (mut s_re, mut s_im, mut d_re, mut d_im) = (0.0, 0.0, 0.0, 0.0);
        for _ in 0..n_emitters {
            let phi = rng.random::<f64>() * std::f64::consts::TAU;
            let (sin, cos) = phi.sin_cos();
            s_re += cos;
            s_im += sin;
            let (sin2, cos2) = (2.0 * phi).sin_cos();
            d_re += cos2;
            d_im += sin2;
        }
        // (Σe^{iφ})² − Σe^{2iφ} = Σ_{i≠j} e^{i(φ_i+φ_j)}
        let p_re = s_re * s_re - s_im * s_im - d_re;
        let p_im = 2.0 * s_re * s_im - d_im;
        m.push(0.5 * (p_re * p_re + p_im * p_im), s_re * s_re + s_im * s_im);
    }
    m
}

pub fn random_distance_g2_mc(
    p: &EmitterParams,
    drive: &DriveConfig,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    random_distance_g2_mc_with(p, drive, n_samples, seed, Exec::default())
}

/// Ratio estimator mean(pair)/mean(coherent)² with a delta-method standard
/// error. Chunk k always draws from stream k of the seeded generator, so the
/// result does not depend on the execution mode.
pub fn random_distance_g2_mc_with(
    p: &EmitterParams,
    drive: &DriveConfig,
    n_samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<McEstimate> {
    p.require_resonant("the random-position average")?;
    let n = drive.require_emitters()?;
    if n_samples < MIN_MC_SAMPLES {
        return Err(Error::invalid(
            "samples",
            format!("need at least {MIN_MC_SAMPLES} Monte Carlo samples, got {n_samples}"),
        ));
    }
    let chunks = n_samples.div_ceil(CHUNK);
    let parts = exec.map_range(chunks, |k| {
        let count = CHUNK.min(n_samples - k * CHUNK);
        sample_chunk(n, count, seed, k as u64)
    });
    let m = parts
        .iter()
        .fold(Moments::default(), |acc, part| acc.merge(part));

    let len = m.n;
    let (my, md) = (m.pair / len, m.coherent / len);
    let var_y = (m.pair_sq / len - my * my).max(0.0);
    let var_d = (m.coherent_sq / len - md * md).max(0.0);
    let cov = m.cross / len - my * md;
    let estimate = my / (md * md);
    // ∂R/∂ȳ = 1/d̄², ∂R/∂d̄ = −2ȳ/d̄³
    let gy = 1.0 / (md * md);
    let gd = -2.0 * my / (md * md * md);
    let var = (gy * gy * var_y + gd * gd * var_d + 2.0 * gy * gd * cov).max(0.0) / len;
    Ok(McEstimate {
        g2_zero: estimate,
        std_error: var.sqrt(),
        n_samples,
    })
}
