use crate::error::{Error, Result};

/// Uniform frequency axis ω_k = (k − n/2)·Δω, k = 0..n, in units of Γ.
///
/// Contains ω = 0 exactly at index n/2 and is symmetric about it
/// (ω_{n−k} = −ω_k for k ≥ 1); the sample at −W stands in for its periodic
/// image at +W.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    half_width: f64,
    n_points: usize,
}

impl Default for FrequencyGrid {
    fn default() -> Self {
        Self {
            half_width: Self::DEFAULT_HALF_WIDTH,
            n_points: Self::DEFAULT_POINTS,
        }
    }
}

impl FrequencyGrid {
    pub const DEFAULT_HALF_WIDTH: f64 = 20.0;
    pub const DEFAULT_POINTS: usize = 1 << 14;
    pub const MIN_POINTS: usize = 1 << 10;

    pub fn new(half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::invalid(
                "grid_width",
                format!("must be positive, got {half_width}"),
            ));
        }
        if n_points < Self::MIN_POINTS || !n_points.is_power_of_two() {
            return Err(Error::invalid(
                "grid_points",
                format!(
                    "must be a power of two >= {}, got {n_points}",
                    Self::MIN_POINTS
                ),
            ));
        }
        Ok(Self {
            half_width,
            n_points,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n_points as f64
    }

    pub fn zero_index(&self) -> usize {
        self.n_points / 2
    }

    #[inline]
    pub fn omega(&self, k: usize) -> f64 {
        (k as f64 - (self.n_points / 2) as f64) * self.spacing()
    }

    pub fn omegas(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.omega(k)).collect()
    }

    /// Same point count, twice the half-width.
    pub fn widened(&self) -> Self {
        Self {
            half_width: 2.0 * self.half_width,
            n_points: self.n_points,
        }
    }

    /// Conjugate time axis of the discrete transform.
    pub fn time_grid(&self) -> TimeGrid {
        TimeGrid {
            spacing: std::f64::consts::PI / self.half_width,
            n_points: self.n_points,
        }
    }
}

/// τ_j = (j − n/2)·Δτ with Δτ = π/W, in units of 1/Γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    spacing: f64,
    n_points: usize,
}

impl TimeGrid {
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn zero_index(&self) -> usize {
        self.n_points / 2
    }

    #[inline]
    pub fn tau(&self, j: usize) -> f64 {
        (j as f64 - (self.n_points / 2) as f64) * self.spacing
    }

    pub fn taus(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.tau(j)).collect()
    }

    pub fn max_tau(&self) -> f64 {
        self.tau(self.n_points - 1)
    }
}
