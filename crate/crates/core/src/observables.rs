//! Moments of sampled packets, the hyperbolic spread law
//! `Δx(t)² = Δ_min² + (t − t_min)²Δp²/m²`, and the characteristic times.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::{quadrature_norm2, to_momentum, ComplexField};
use crate::PhysicsParams;

/// Tolerance on `∫|ψ|² = 1` accepted by [`moments`].
pub const NORM_TOLERANCE: f64 = 1e-6;

/// Fraction of a second moment allowed to come from farther than a quarter
/// lattice length from the mean before the moment is reported as divergent.
///
/// A divergent moment (`|φ|² ~ p⁻²` behind a jump) puts about half of its
/// lattice value there; a Gaussian 5σ inside the quarter line puts ~1e−5.
pub const TAIL_FRACTION_LIMIT: f64 = 1e-3;

/// First and second moments of a normalized packet.
///
/// `delta_x` or `delta_p` is `f64::INFINITY` when the corresponding second
/// moment does not converge on the lattice (discontinuous packets have
/// `Δp = ∞`; after any evolution they also have `Δx = ∞`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PacketMoments {
    pub mean_x: f64,
    pub mean_p: f64,
    pub delta_x: f64,
    pub delta_p: f64,
    /// `⟨R̂⟩ = ⟨(P̂X̂ + X̂P̂)/2⟩` with `X̂`, `P̂` measured from the means.
    pub mean_r: f64,
}

impl PacketMoments {
    pub fn has_finite_spreads(&self) -> bool {
        self.delta_x.is_finite() && self.delta_p.is_finite()
    }

    /// `Δx·Δp ≥ ħ/2`, up to a relative tolerance.
    pub fn satisfies_uncertainty(&self, params: &PhysicsParams, rel_tol: f64) -> bool {
        self.delta_x * self.delta_p >= 0.5 * params.hbar() * (1.0 - rel_tol)
    }
}

/// Weighted central moments `(mean, variance, tail fraction of variance)`;
/// the tail is everything farther than `half` from the mean.
fn central_moments(coords: &[f64], weights: &[f64], step: f64, half: f64) -> (f64, f64, f64) {
    let mean: f64 = coords.iter().zip(weights).map(|(c, w)| c * w).sum::<f64>() * step;
    let (mut var, mut tail) = (0.0, 0.0);
    for (c, w) in coords.iter().zip(weights) {
        let d = c - mean;
        let contrib = d * d * w;
        var += contrib;
        if d.abs() > half {
            tail += contrib;
        }
    }
    var *= step;
    tail *= step;
    let frac = if var > 0.0 { tail / var } else { 0.0 };
    (mean, var, frac)
}

/// Moments of a normalized position-space field.
pub fn moments(f: &ComplexField, params: &PhysicsParams) -> Result<PacketMoments> {
    f.expect_position()?;
    let norm2 = quadrature_norm2(f);
    if (norm2 - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::Unnormalized(norm2));
    }
    let grid = *f.grid();
    let hbar = params.hbar();

    let xs = grid.positions();
    let rho = f.densities();
    let (mean_x, var_x, tail_x) = central_moments(&xs, &rho, grid.step(), 0.25 * grid.length());

    let phi = to_momentum(f, params)?;
    let ps = phi.coordinates();
    let rho_p = phi.densities();
    let (mean_p, var_p, tail_p) =
        central_moments(&ps, &rho_p, grid.dp(hbar), 0.5 * grid.p_nyquist(hbar));

    // ⟨X̂P̂⟩ = ∫ψ*(x − ⟨x⟩)(−iħ∂ₓ − ⟨p⟩)ψ dx, with P̂ψ formed in momentum space
    let p_psi = phi.map(|p, v| v * (p - mean_p));
    let p_psi = crate::numerics::from_momentum(&p_psi, params)?;
    let xp: C64 = f
        .values()
        .iter()
        .zip(p_psi.values())
        .zip(&xs)
        .map(|((psi, ppsi), x)| psi.conj() * (x - mean_x) * ppsi)
        .sum::<C64>()
        * grid.step();

    let spread = |var: f64, tail: f64| {
        if tail > TAIL_FRACTION_LIMIT {
            f64::INFINITY
        } else {
            var.sqrt()
        }
    };
    Ok(PacketMoments {
        mean_x,
        mean_p,
        delta_x: spread(var_x, tail_x),
        delta_p: spread(var_p, tail_p),
        mean_r: xp.re,
    })
}

/// `Δ_min`, `t_min` and `Δp` of the spread law.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpreadLaw {
    pub delta_min: f64,
    pub t_min: f64,
    pub delta_p: f64,
}

/// Relative slack allowed on `Δ_min² ≥ 0`.
pub const SPREAD_LAW_TOLERANCE: f64 = 1e-10;

/// Spread law from moments measured at `t_now`:
/// `t_min = t_now − m⟨R̂⟩/Δp²`, `Δ_min² = Δx² − (Δp/m)²(t_now − t_min)²`.
pub fn spread_law_from_state(
    m0: &PacketMoments,
    params: &PhysicsParams,
    t_now: f64,
) -> Result<SpreadLaw> {
    if !m0.has_finite_spreads() {
        return Err(Error::Inapplicable(
            "the spread law needs finite Δx and Δp".into(),
        ));
    }
    let m = params.mass();
    let dp2 = m0.delta_p * m0.delta_p;
    let lag = m * m0.mean_r / dp2;
    let t_min = t_now - lag;
    let dmin2 = m0.delta_x * m0.delta_x - dp2 / (m * m) * lag * lag;
    if dmin2 < -SPREAD_LAW_TOLERANCE * m0.delta_x * m0.delta_x {
        return Err(Error::InconsistentMoments(dmin2));
    }
    Ok(SpreadLaw {
        delta_min: dmin2.max(0.0).sqrt(),
        t_min,
        delta_p: m0.delta_p,
    })
}

/// `Δx(t) = √(Δ_min² + (t − t_min)²Δp²/m²)`.
pub fn spread_prediction(law: &SpreadLaw, params: &PhysicsParams, t: f64) -> f64 {
    let v = law.delta_p / params.mass() * (t - law.t_min);
    (law.delta_min * law.delta_min + v * v).sqrt()
}

/// Characteristic times of a packet.
///
/// `t_h = mΔ_min/Δp = √(t_x t_p)` is the geometric mean of `t_x` and `t_p`
/// (sometimes loosely called their harmonic mean).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Timescales {
    /// `mħ/2Δp²`: scale for changes of shape.
    pub t_p: f64,
    /// `2mΔ_min²/ħ`: onset of the asymptotic regime, measured from `t_min`.
    pub t_x: f64,
    /// `mΔ_min/Δp`: half-width of the waist region.
    pub t_h: f64,
    /// `2mΔx²/ħ` with `Δx` at the measuring instant.
    pub t_x_initial: f64,
    /// `false` when `Δp = ∞`; then `t_p = t_h = 0` carry no information.
    pub short_time_applicable: bool,
}

pub fn timescales(m0: &PacketMoments, params: &PhysicsParams) -> Result<Timescales> {
    let (hbar, m) = (params.hbar(), params.mass());
    if !m0.delta_x.is_finite() {
        return Err(Error::Inapplicable("Δx does not exist".into()));
    }
    let t_x_initial = 2.0 * m * m0.delta_x * m0.delta_x / hbar;
    if m0.delta_p.is_infinite() {
        // real at a discontinuity instant: Δ_min is the current Δx
        return Ok(Timescales {
            t_p: 0.0,
            t_x: t_x_initial,
            t_h: 0.0,
            t_x_initial,
            short_time_applicable: false,
        });
    }
    let law = spread_law_from_state(m0, params, 0.0)?;
    let dp2 = m0.delta_p * m0.delta_p;
    Ok(Timescales {
        t_p: m * hbar / (2.0 * dp2),
        t_x: 2.0 * m * law.delta_min * law.delta_min / hbar,
        t_h: m * law.delta_min / m0.delta_p,
        t_x_initial,
        short_time_applicable: true,
    })
}
