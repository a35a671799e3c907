//! Continuous-convention Fourier transform on a finite lattice.
//!
//! `φ(p) = (2πħ)^{-1/2} ∫ e^{-ipx/ħ} ψ(x) dx` is approximated by the
//! rectangle (periodic trapezoid) rule on the grid, which a radix-2 FFT
//! evaluates exactly at the centered momentum lattice once the origin
//! phase `e^{-ip_k x0/ħ}` and the index shift `(−1)^j` are applied.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rustfft::{FftDirection, FftPlanner};

use super::{ComplexField, Representation};
use crate::error::{Error, Result};
use crate::PhysicsParams;

fn run_fft(buf: &mut [C64], direction: FftDirection) {
    let mut planner = FftPlanner::new();
    planner.plan_fft(buf.len(), direction).process(buf);
}

fn alternate(j: usize) -> f64 {
    if j.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Position → momentum representation.
pub fn to_momentum(f: &ComplexField, params: &PhysicsParams) -> Result<ComplexField> {
    f.expect_position()?;
    let grid = *f.grid();
    let hbar = params.hbar();
    let mut buf: Vec<C64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| v * alternate(j))
        .collect();
    run_fft(&mut buf, FftDirection::Forward);
    let amp = grid.step() / (2.0 * PI * hbar).sqrt();
    let x0 = grid.x0();
    for (k, v) in buf.iter_mut().enumerate() {
        *v *= C64::from_polar(amp, -grid.wavenumber(k) * x0);
    }
    ComplexField::new(grid, Representation::Momentum { hbar }, buf)
}

/// Momentum → position representation; exact inverse of [`to_momentum`].
pub fn from_momentum(f: &ComplexField, params: &PhysicsParams) -> Result<ComplexField> {
    let field_hbar = f.expect_momentum()?;
    let hbar = params.hbar();
    if field_hbar != hbar {
        return Err(Error::Domain(format!(
            "momentum field was built for ħ = {field_hbar}, not {hbar}"
        )));
    }
    let grid = *f.grid();
    let x0 = grid.x0();
    let mut buf: Vec<C64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| v * C64::from_polar(1.0, grid.wavenumber(k) * x0))
        .collect();
    run_fft(&mut buf, FftDirection::Inverse);
    let amp = (2.0 * PI * hbar).sqrt() / grid.length();
    for (j, v) in buf.iter_mut().enumerate() {
        *v *= amp * alternate(j);
    }
    ComplexField::new(grid, Representation::Position, buf)
}

/// The lattice sum of [`to_momentum`] evaluated off the momentum lattice,
/// at the `n` equally spaced momenta `p_j = p0 + j·dp`.
///
/// This is the band-limited (trigonometric) interpolant of `φ`; Bluestein's
/// chirp-z factorisation `jk = (j² + k² − (j−k)²)/2` turns the `O(n²)` sum
/// into one circular convolution.
pub fn momentum_at_spacing(
    f: &ComplexField,
    p0: f64,
    dp: f64,
    params: &PhysicsParams,
) -> Result<Vec<C64>> {
    f.expect_position()?;
    let grid = *f.grid();
    let hbar = params.hbar();
    let (n, h, x0) = (grid.n(), grid.step(), grid.x0());
    let alpha = dp * h / hbar;
    let chirp = |m: usize| C64::from_polar(1.0, 0.5 * alpha * (m as f64) * (m as f64));
    let size = (2 * n - 1).next_power_of_two();

    let mut a = vec![C64::new(0.0, 0.0); size];
    for (k, v) in f.values().iter().enumerate() {
        a[k] = v * C64::from_polar(1.0, -p0 * k as f64 * h / hbar) * chirp(k).conj();
    }
    let mut b = vec![C64::new(0.0, 0.0); size];
    for m in 0..n {
        b[m] = chirp(m);
        if m > 0 {
            b[size - m] = b[m];
        }
    }
    run_fft(&mut a, FftDirection::Forward);
    run_fft(&mut b, FftDirection::Forward);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    run_fft(&mut a, FftDirection::Inverse);

    let amp = h / (2.0 * PI * hbar).sqrt() / size as f64;
    Ok((0..n)
        .map(|j| {
            let p = p0 + j as f64 * dp;
            a[j] * chirp(j).conj() * C64::from_polar(amp, -p * x0 / hbar)
        })
        .collect())
}

/// `∂ₓ^order f`, by multiplying with `(ik)^order` in the wavenumber domain.
///
/// For odd orders the Nyquist mode is dropped so real input stays real.
pub fn spectral_derivative(f: &ComplexField, order: u32) -> Result<ComplexField> {
    f.expect_position()?;
    if order == 0 {
        return Ok(f.clone());
    }
    let unit = PhysicsParams::natural();
    let grid = *f.grid();
    let mut phi = to_momentum(f, &unit)?;
    for (k, v) in phi.values_mut().iter_mut().enumerate() {
        if k == 0 && order % 2 == 1 {
            *v = C64::new(0.0, 0.0);
            continue;
        }
        let ik = C64::new(0.0, grid.wavenumber(k));
        *v *= ik.powu(order);
    }
    from_momentum(&phi, &unit)
}

/// Periodic trapezoidal estimate of `∫|f|²` (`dx` or `dp` as appropriate).
pub fn quadrature_norm2(f: &ComplexField) -> f64 {
    f.values().iter().map(|v| v.norm_sqr()).sum::<f64>() * f.weight()
}
