//! Sampled two-photon spectra with an analytic high-frequency tail.
//!
//! Every spectrum produced by this crate decays like 1/ω², far too slowly to
//! truncate at the grid edge. A [`TailModel`] is fitted to the spectrum beyond
//! the grid: a short sum of wide Lorentzians Σ c_k / (γ_k² + 4ω²) whose inverse
//! transforms e^{−γ_k|τ|/2}/(4γ_k) are known exactly. Quadratures and fast
//! transforms then act only on the residual, which is negligible at ±W.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::observables::grid::FrequencyGrid;
use crate::params::{Flags, ValidityFlag};

/// Residual at the grid boundary, relative to the spectral peak, above which
/// the grid counts as truncating the spectrum.
pub const ADEQUACY_TOLERANCE: f64 = 1e-6;

/// Maximum number of times the half-width is doubled before giving up.
pub const MAX_WIDENINGS: u32 = 3;

const TAIL_WIDTHS: [f64; 6] = [0.5, 0.75, 1.0, 1.5, 2.0, 3.0];

/// A complex spectrum ω ↦ ψ(ω) that can be evaluated anywhere.
pub trait SpectrumModel: Sync {
    fn at(&self, omega: f64) -> Complex64;
}

impl<F> SpectrumModel for F
where
    F: Fn(f64) -> Complex64 + Sync,
{
    fn at(&self, omega: f64) -> Complex64 {
        self(omega)
    }
}

/// Σ_k c_k / (γ_k² + 4ω²).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TailModel {
    widths: Vec<f64>,
    coeffs: Vec<Complex64>,
}

impl TailModel {
    pub fn none() -> Self {
        Self::default()
    }

    /// Interpolates `model` at Chebyshev nodes of y = 1/(4ω²) on (0, 1/(4W²)),
    /// i.e. at frequencies from W out to infinity.
    pub fn fit<M: SpectrumModel + ?Sized>(model: &M, half_width: f64) -> Self {
        let k = TAIL_WIDTHS.len();
        let widths: Vec<f64> = TAIL_WIDTHS.iter().map(|m| m * half_width).collect();
        let y_edge = 1.0 / (4.0 * half_width * half_width);
        let nodes: Vec<f64> = (0..k)
            .map(|j| {
                let c = ((2 * j + 1) as f64 * std::f64::consts::PI / (2 * k) as f64).cos();
                let y = 0.5 * y_edge * (1.0 + c);
                1.0 / (2.0 * y.sqrt())
            })
            .collect();
        let mut matrix: Vec<Vec<Complex64>> = nodes
            .iter()
            .map(|&w| {
                widths
                    .iter()
                    .map(|&g| Complex64::new(1.0 / (g * g + 4.0 * w * w), 0.0))
                    .collect()
            })
            .collect();
        let mut rhs: Vec<Complex64> = nodes.iter().map(|&w| model.at(w)).collect();
        let coeffs = solve_dense(&mut matrix, &mut rhs);
        Self { widths, coeffs }
    }

    #[inline]
    pub fn at(&self, omega: f64) -> Complex64 {
        let w2 = 4.0 * omega * omega;
        self.widths
            .iter()
            .zip(&self.coeffs)
            .map(|(&g, &c)| c / (g * g + w2))
            .sum()
    }

    /// (1/2π)∫ tail(ω) e^{−iωτ} dω.
    #[inline]
    pub fn time(&self, tau: f64) -> Complex64 {
        let t = tau.abs();
        self.widths
            .iter()
            .zip(&self.coeffs)
            .map(|(&g, &c)| c * ((-0.5 * g * t).exp() / (4.0 * g)))
            .sum()
    }

    fn scaled(&self, k: Complex64) -> Self {
        Self {
            widths: self.widths.clone(),
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }
}

/// Gaussian elimination with partial pivoting; overwrites its inputs.
fn solve_dense(a: &mut [Vec<Complex64>], b: &mut [Complex64]) -> Vec<Complex64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap_or(col);
        a.swap(col, pivot);
        b.swap(col, pivot);
        let d = a[col][col];
        if d.norm() == 0.0 {
            continue;
        }
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for (i, row) in rest.iter_mut().enumerate() {
            let f = row[col] / d;
            if f.norm() == 0.0 {
                continue;
            }
            for (x, &v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * v;
            }
            let v = b[col];
            b[col + 1 + i] -= f * v;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for c in row + 1..n {
            s -= a[row][c] * x[c];
        }
        x[row] = if a[row][row].norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            s / a[row][row]
        };
    }
    x
}

/// A spectrum sampled on a [`FrequencyGrid`], plus its fitted tail.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSpectrum {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
    tail: TailModel,
    boundary_residual: f64,
    widenings: u32,
}

impl SampledSpectrum {
    pub fn from_model<M: SpectrumModel + ?Sized>(model: &M, grid: FrequencyGrid) -> Result<Self> {
        Self::from_model_with(model, grid, Exec::default())
    }

    /// Samples `model`, widening the grid (at most [`MAX_WIDENINGS`] times)
    /// until the boundary residual passes [`ADEQUACY_TOLERANCE`].
    pub fn from_model_with<M: SpectrumModel + ?Sized>(
        model: &M,
        grid: FrequencyGrid,
        exec: Exec,
    ) -> Result<Self> {
        let mut grid = grid;
        let mut widenings = 0;
        loop {
            let tail = TailModel::fit(model, grid.half_width());
            let values = exec.map_range(grid.n_points(), |k| model.at(grid.omega(k)));
            let w = grid.half_width();
            let edge = (model.at(-w) - tail.at(-w))
                .norm()
                .max((model.at(w) - tail.at(w)).norm());
            let residual = relative_to_peak(edge, &values);
            if residual < ADEQUACY_TOLERANCE {
                return Ok(Self {
                    grid,
                    values,
                    tail,
                    boundary_residual: residual,
                    widenings,
                });
            }
            if widenings == MAX_WIDENINGS {
                return Err(Error::GridTruncation {
                    half_width: w,
                    residual,
                    widenings,
                });
            }
            widenings += 1;
            grid = grid.widened();
        }
    }

    /// Raw samples without a tail model.
    pub fn from_samples(grid: FrequencyGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::invalid(
                "values",
                format!("expected {} samples, got {}", grid.n_points(), values.len()),
            ));
        }
        let residual = relative_to_peak(values[0].norm(), &values);
        Ok(Self {
            grid,
            values,
            tail: TailModel::none(),
            boundary_residual: residual,
            widenings: 0,
        })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn tail(&self) -> &TailModel {
        &self.tail
    }

    pub fn value_at_zero(&self) -> Complex64 {
        self.values[self.grid.zero_index()]
    }

    /// Tail-corrected boundary magnitude relative to the largest sample.
    pub fn boundary_residual(&self) -> f64 {
        self.boundary_residual
    }

    pub fn widenings(&self) -> u32 {
        self.widenings
    }

    pub fn is_adequate(&self) -> bool {
        self.boundary_residual < ADEQUACY_TOLERANCE
    }

    pub fn flags(&self) -> Flags {
        let mut f = Flags::default();
        if self.widenings > 0 {
            f.insert(ValidityFlag::GridWidened);
        }
        f
    }

    pub(crate) fn require_adequate(&self) -> Result<()> {
        if self.is_adequate() {
            Ok(())
        } else {
            Err(Error::GridTruncation {
                half_width: self.grid.half_width(),
                residual: self.boundary_residual,
                widenings: self.widenings,
            })
        }
    }

    /// Residual ψ(ω_k) − tail(ω_k) at sample k.
    #[inline]
    pub(crate) fn residual(&self, k: usize) -> Complex64 {
        self.values[k] - self.tail.at(self.grid.omega(k))
    }

    pub fn scaled(&self, k: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|&v| v * k).collect(),
            tail: self.tail.scaled(k),
            boundary_residual: self.boundary_residual,
            widenings: self.widenings,
        }
    }
}

fn relative_to_peak(edge: f64, values: &[Complex64]) -> f64 {
    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        0.0
    } else {
        edge / peak
    }
}
