use num_complex::Complex64 as C64;

use super::Grid;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Representation {
    Position,
    /// Amplitudes on the centered momentum lattice for the given ħ.
    Momentum {
        hbar: f64,
    },
}

/// Complex amplitudes sampled on a [`Grid`], either `ψ(x_j)` or `φ(p_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexField {
    grid: Grid,
    repr: Representation,
    values: Vec<C64>,
}

impl ComplexField {
    pub fn new(grid: Grid, repr: Representation, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::Length {
                len: values.len(),
                n: grid.n(),
            });
        }
        Ok(Self { grid, repr, values })
    }

    pub fn zeros(grid: Grid, repr: Representation) -> Self {
        Self {
            grid,
            repr,
            values: vec![C64::new(0.0, 0.0); grid.n()],
        }
    }

    /// Samples `f(x_j)` in the position representation.
    pub fn from_position_fn(grid: Grid, f: impl Fn(f64) -> C64) -> Self {
        let values = (0..grid.n()).map(|j| f(grid.x(j))).collect();
        Self {
            grid,
            repr: Representation::Position,
            values,
        }
    }

    /// Samples `f(p_k)` in the momentum representation.
    pub fn from_momentum_fn(grid: Grid, hbar: f64, f: impl Fn(f64) -> C64) -> Self {
        let values = (0..grid.n()).map(|k| f(grid.p(k, hbar))).collect();
        Self {
            grid,
            repr: Representation::Momentum { hbar },
            values,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn representation(&self) -> Representation {
        self.repr
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [C64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Lattice coordinates matching the representation: `x_j` or `p_k`.
    pub fn coordinates(&self) -> Vec<f64> {
        match self.repr {
            Representation::Position => self.grid.positions(),
            Representation::Momentum { hbar } => self.grid.momenta(hbar),
        }
    }

    /// Quadrature weight of one sample: `step` or `Δp`.
    pub fn weight(&self) -> f64 {
        match self.repr {
            Representation::Position => self.grid.step(),
            Representation::Momentum { hbar } => self.grid.dp(hbar),
        }
    }

    pub fn densities(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    pub fn expect_position(&self) -> Result<()> {
        match self.repr {
            Representation::Position => Ok(()),
            found => Err(Error::Representation {
                expected: Representation::Position,
                found,
            }),
        }
    }

    pub fn expect_momentum(&self) -> Result<f64> {
        match self.repr {
            Representation::Momentum { hbar } => Ok(hbar),
            found => Err(Error::Representation {
                expected: Representation::Momentum { hbar: f64::NAN },
                found,
            }),
        }
    }

    /// Pointwise map keeping grid and representation.
    pub fn map(&self, f: impl Fn(f64, C64) -> C64) -> Self {
        let coords = self.coordinates();
        let values = coords
            .iter()
            .zip(&self.values)
            .map(|(&c, &v)| f(c, v))
            .collect();
        Self {
            grid: self.grid,
            repr: self.repr,
            values,
        }
    }

    pub fn scaled(&self, factor: C64) -> Self {
        self.map(|_, v| v * factor)
    }

    /// `alpha·self + beta·other`.
    pub fn combine(&self, alpha: C64, other: &Self, beta: C64) -> Result<Self> {
        if self.grid != other.grid || self.repr != other.repr {
            return Err(Error::Domain(
                "fields live on different grids or representations".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        Ok(Self {
            grid: self.grid,
            repr: self.repr,
            values,
        })
    }

    /// Weighted inner product `⟨self|other⟩` (conjugate-linear in `self`).
    pub fn inner(&self, other: &Self) -> C64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>()
            * self.weight()
    }

    /// `|⟨f|g⟩| / (‖f‖‖g‖)`; 1 means the fields are proportional.
    pub fn cosine_similarity(&self, other: &Self) -> f64 {
        let num = self.inner(other).norm();
        let den = (self.inner(self).re * other.inner(other).re).sqrt();
        if den == 0.0 {
            0.0
        } else {
            num / den
        }
    }

    /// `‖self − other‖ / ‖other‖` in the weighted L² norm.
    pub fn relative_l2_distance(&self, reference: &Self) -> f64 {
        let diff: f64 = self
            .values
            .iter()
            .zip(&reference.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        let base: f64 = reference.values.iter().map(|b| b.norm_sqr()).sum();
        (diff / base).sqrt()
    }

    pub fn max_abs_difference(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
