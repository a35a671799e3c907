//! Force-free evolution of one-dimensional quantum wave packets.
//!
//! * [`numerics`]: grids, sampled fields, Hermite and Fresnel functions, and
//!   the continuous-convention Fourier transform.
//! * [`packets`]: closed-form solutions (Schrödinger's Gaussian, the
//!   shape-invariant Hermite-Gauss family, derivative packets, the square
//!   packet) and the Galilean boost.
//! * [`evolution`]: exact spectral and direct-quadrature propagators, the
//!   short-time and asymptotic approximations, and rigorous bounds on their
//!   pointwise error.
//! * [`observables`]: moments, the hyperbolic spread law, and the
//!   characteristic timescales.
//! * [`scenario`]: configuration, presets and CSV/SVG output for the
//!   `wavepacket` command-line tool.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod evolution;
pub mod numerics;
pub mod observables;
pub mod packets;
pub mod scenario;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// The constants `ħ` and `m`; every formula's units follow from these.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicsParams {
    hbar: f64,
    mass: f64,
}

impl PhysicsParams {
    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::Domain(format!("ħ must be positive, got {hbar}")));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { hbar, mass })
    }

    /// `ħ = m = 1`.
    pub fn natural() -> Self {
        Self {
            hbar: 1.0,
            mass: 1.0,
        }
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }
}

impl Default for PhysicsParams {
    fn default() -> Self {
        Self::natural()
    }
}
