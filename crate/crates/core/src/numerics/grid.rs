use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform, periodic sampling `x_j = x0 + j·step`, `j = 0..n`.
///
/// The conjugate momentum lattice is centered:
/// `p_k = 2πħ(k − n/2)/(n·step)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    x0: f64,
    step: f64,
    n: usize,
}

impl Grid {
    pub fn new(x0: f64, step: f64, n: usize) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::Domain(format!(
                "grid step must be positive, got {step}"
            )));
        }
        if !x0.is_finite() {
            return Err(Error::Domain(format!(
                "grid origin must be finite, got {x0}"
            )));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::Domain(format!(
                "grid size must be a power of two ≥ 8, got {n}"
            )));
        }
        Ok(Self { x0, step, n })
    }

    /// Grid on `[-half_width, half_width)`; `x = 0` is the sample `n/2`.
    pub fn centered(half_width: f64, n: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::Domain(format!(
                "half-width must be positive, got {half_width}"
            )));
        }
        Self::new(-half_width, 2.0 * half_width / n as f64, n)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Period of the grid, `n·step`.
    pub fn length(&self) -> f64 {
        self.n as f64 * self.step
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.step
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    /// Wavenumber `p_k/ħ`.
    pub fn wavenumber(&self, k: usize) -> f64 {
        2.0 * PI * (k as f64 - (self.n / 2) as f64) / self.length()
    }

    pub fn p(&self, k: usize, hbar: f64) -> f64 {
        hbar * self.wavenumber(k)
    }

    pub fn momenta(&self, hbar: f64) -> Vec<f64> {
        (0..self.n).map(|k| self.p(k, hbar)).collect()
    }

    pub fn dp(&self, hbar: f64) -> f64 {
        2.0 * PI * hbar / self.length()
    }

    /// Magnitude of the most negative lattice momentum, `πħ/step`.
    pub fn p_nyquist(&self, hbar: f64) -> f64 {
        PI * hbar / self.step
    }

    /// Index `j` with `x_j` closest to `x`, if `x` lies on the periodic cell.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let j = ((x - self.x0) / self.step).round();
        (j >= 0.0 && (j as usize) < self.n).then_some(j as usize)
    }

    /// Same span, twice the samples.
    pub fn refined(&self) -> Self {
        Self {
            x0: self.x0,
            step: self.step / 2.0,
            n: self.n * 2,
        }
    }
}
