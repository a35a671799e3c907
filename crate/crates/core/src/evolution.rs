//! Free propagation of sampled packets and its two classical approximations.
//!
//! [`propagate_spectral`] is exact up to discretization: the free evolution
//! operator is diagonal in momentum. [`propagate_quadrature`] evaluates the
//! propagator integral directly and serves as an independent check.
//!
//! Grid sizing for the quadrature route: keep `step ≤ ħ/(4·p_max)` where
//! `p_max` is the largest momentum with appreciable weight, and keep the
//! packet well inside the domain. The spectral route is periodic; a packet
//! that reaches the edges wraps around.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::{
    from_momentum, momentum_at_spacing, to_momentum, ComplexField, Representation,
};
use crate::PhysicsParams;

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    SpectralExact,
    Quadrature,
    ShortTime,
    Asymptotic,
}

#[derive(Clone, Debug)]
pub struct PropagationResult {
    pub field: ComplexField,
    pub t: f64,
    pub method: Method,
}

/// `ψ(t) = F⁻¹[e^{−ip²t/2mħ} F[ψ₀]]`.
pub fn propagate_spectral(
    psi0: &ComplexField,
    t: f64,
    params: &PhysicsParams,
) -> Result<PropagationResult> {
    psi0.expect_position()?;
    if t == 0.0 {
        return Ok(PropagationResult {
            field: psi0.clone(),
            t,
            method: Method::SpectralExact,
        });
    }
    let (hbar, m) = (params.hbar(), params.mass());
    let mut phi = to_momentum(psi0, params)?;
    let momenta = phi.coordinates();
    for (v, p) in phi.values_mut().iter_mut().zip(momenta) {
        *v *= C64::from_polar(1.0, -p * p * t / (2.0 * m * hbar));
    }
    Ok(PropagationResult {
        field: from_momentum(&phi, params)?,
        t,
        method: Method::SpectralExact,
    })
}

/// [`propagate_spectral`] to several times, one scoped thread per target.
pub fn propagate_spectral_many(
    psi0: &ComplexField,
    times: &[f64],
    params: &PhysicsParams,
) -> Vec<Result<PropagationResult>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = times
            .iter()
            .map(|&t| scope.spawn(move || propagate_spectral(psi0, t, params)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("propagation thread panicked"))
            .collect()
    })
}

/// Direct `O(n²)` trapezoidal evaluation of `∫K(x,x′,t)ψ(x′,0)dx′` with
/// `K = √(m/2πiħt) exp[im(x−x′)²/2ħt]`.
pub fn propagate_quadrature(
    psi0: &ComplexField,
    t: f64,
    params: &PhysicsParams,
) -> Result<PropagationResult> {
    psi0.expect_position()?;
    if t == 0.0 {
        return Err(Error::Domain(
            "the propagator kernel is singular at t = 0".into(),
        ));
    }
    let (hbar, m) = (params.hbar(), params.mass());
    let grid = *psi0.grid();
    let n = grid.n();
    let h = grid.step();
    let pre = (C64::new(m, 0.0) / (2.0 * PI * I * hbar * t)).sqrt() * h;
    // kernel by index offset d = i − j, stored at d + n − 1
    let kernel: Vec<C64> = (0..2 * n - 1)
        .map(|k| {
            let d = (k as f64 - (n - 1) as f64) * h;
            pre * C64::from_polar(1.0, m * d * d / (2.0 * hbar * t))
        })
        .collect();
    let src = psi0.values();
    let values = (0..n)
        .map(|i| {
            src.iter()
                .enumerate()
                .map(|(j, v)| kernel[i + n - 1 - j] * v)
                .sum()
        })
        .collect();
    Ok(PropagationResult {
        field: ComplexField::new(grid, Representation::Position, values)?,
        t,
        method: Method::Quadrature,
    })
}

/// Rigid translation with a global phase:
/// `e^{+ip̄²t/2mħ} ψ(x − p̄t/m, 0)`, the shift done in momentum space.
/// (Linearising `p²` about `p̄` gives `2p̄p − p̄²`, hence the `+`.)
pub fn short_time_approx(
    psi0: &ComplexField,
    t: f64,
    params: &PhysicsParams,
    pbar: f64,
) -> Result<PropagationResult> {
    psi0.expect_position()?;
    if t == 0.0 {
        return Ok(PropagationResult {
            field: psi0.clone(),
            t,
            method: Method::ShortTime,
        });
    }
    let (hbar, m) = (params.hbar(), params.mass());
    let shift = pbar * t / m;
    let global = pbar * pbar * t / (2.0 * m * hbar);
    let mut phi = to_momentum(psi0, params)?;
    let momenta = phi.coordinates();
    for (v, p) in phi.values_mut().iter_mut().zip(momenta) {
        *v *= C64::from_polar(1.0, global - p * shift / hbar);
    }
    Ok(PropagationResult {
        field: from_momentum(&phi, params)?,
        t,
        method: Method::ShortTime,
    })
}

/// Sup-norm bound `√(t/πmħ³)·Δp²` on `|δψ|²` for [`short_time_approx`].
pub fn short_time_error_bound(delta_p: f64, t: f64, params: &PhysicsParams) -> Result<f64> {
    if delta_p.is_infinite() {
        return Err(Error::Inapplicable(
            "Δp is infinite (discontinuous packet); the short-time bound does not apply".into(),
        ));
    }
    if !(delta_p >= 0.0) {
        return Err(Error::Domain(format!(
            "Δp must be nonnegative, got {delta_p}"
        )));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
    }
    let (hbar, m) = (params.hbar(), params.mass());
    Ok((t / (PI * m * hbar.powi(3))).sqrt() * delta_p * delta_p)
}

/// Times below which the rigid translation is trustworthy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShortTimeScales {
    /// `mħ/2Δp²`, the shape-change scale; the stricter of the two.
    pub shape: f64,
    /// `πmħ/Δp²`, the scale that follows from the error bound.
    pub from_bound: f64,
}

pub fn short_time_scales(delta_p: f64, params: &PhysicsParams) -> ShortTimeScales {
    let mh = params.mass() * params.hbar();
    let dp2 = delta_p * delta_p;
    ShortTimeScales {
        shape: mh / (2.0 * dp2),
        from_bound: PI * mh / dp2,
    }
}

fn asymptotic_prefactor(x: f64, xbar: f64, t: f64, params: &PhysicsParams) -> C64 {
    let (hbar, m) = (params.hbar(), params.mass());
    (C64::new(m, 0.0) / (I * t)).sqrt()
        * C64::from_polar(1.0, m * (x * x - xbar * xbar) / (2.0 * hbar * t))
}

/// `√(m/it)·exp[im(x²−x̄²)/2ħt]·φ(m(x−x̄)/t)` on the grid of `phi0`.
///
/// `φ` between lattice points is the band-limited (trigonometric)
/// interpolant of the samples; beyond the lattice band it is taken as zero.
pub fn asymptotic_form(
    phi0: &ComplexField,
    xbar: f64,
    t: f64,
    params: &PhysicsParams,
) -> Result<PropagationResult> {
    phi0.expect_momentum()?;
    if t == 0.0 {
        return Err(Error::Domain("asymptotic form is singular at t = 0".into()));
    }
    let psi0 = from_momentum(phi0, params)?;
    let grid = *phi0.grid();
    let (hbar, m) = (params.hbar(), params.mass());
    let p_band = grid.p_nyquist(hbar);
    // p(x_j) = m(x_j − x̄)/t is itself an equally spaced lattice
    let p0 = m * (grid.x0() - xbar) / t;
    let dp = m * grid.step() / t;
    let phi = momentum_at_spacing(&psi0, p0, dp, params)?;
    let values = phi
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            let p = p0 + j as f64 * dp;
            if p.abs() > p_band {
                C64::new(0.0, 0.0)
            } else {
                asymptotic_prefactor(grid.x(j), xbar, t, params) * v
            }
        })
        .collect();
    Ok(PropagationResult {
        field: ComplexField::new(grid, Representation::Position, values)?,
        t,
        method: Method::Asymptotic,
    })
}

/// [`asymptotic_form`] for a momentum wave function known in closed form.
pub fn asymptotic_form_with(
    phi: impl Fn(f64) -> C64,
    grid: &crate::numerics::Grid,
    xbar: f64,
    t: f64,
    params: &PhysicsParams,
) -> Result<PropagationResult> {
    if t == 0.0 {
        return Err(Error::Domain("asymptotic form is singular at t = 0".into()));
    }
    let m = params.mass();
    let field = ComplexField::from_position_fn(*grid, |x| {
        asymptotic_prefactor(x, xbar, t, params) * phi(m * (x - xbar) / t)
    });
    Ok(PropagationResult {
        field,
        t,
        method: Method::Asymptotic,
    })
}

/// Sup-norm bound `√(m³/πħ³t³)·Δx²` on `|δψ|²` for [`asymptotic_form`].
pub fn asymptotic_error_bound(delta_x: f64, t: f64, params: &PhysicsParams) -> Result<f64> {
    if delta_x.is_infinite() {
        return Err(Error::Inapplicable(
            "Δx does not exist at the chosen initial instant".into(),
        ));
    }
    if !(delta_x >= 0.0) {
        return Err(Error::Domain(format!(
            "Δx must be nonnegative, got {delta_x}"
        )));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("time must be positive, got {t}")));
    }
    let (hbar, m) = (params.hbar(), params.mass());
    Ok((m.powi(3) / (PI * hbar.powi(3) * t.powi(3))).sqrt() * delta_x * delta_x)
}

/// `sup_x |a − b|²`, the quantity the error bounds constrain.
pub fn sup_density_of_difference(a: &ComplexField, b: &ComplexField) -> f64 {
    a.max_abs_difference(b).powi(2)
}
