//! Closed-form free solutions, evaluable at any `(x, t)`.
//!
//! Every family is normalized to unit L² norm at every time.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::{
    fresnel, hermite_complex, hermite_function, sinc, spectral_derivative, ComplexField, Grid,
};
pub use crate::PhysicsParams;

/// Highest derivative order accepted by [`derivative_packet`].
pub const MAX_DERIVATIVE_ORDER: usize = 16;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// A solution of the free Schrödinger equation known at every `(x, t)`.
pub trait Packet {
    fn amplitude(&self, x: f64, t: f64) -> C64;

    fn sample(&self, grid: &Grid, t: f64) -> ComplexField {
        ComplexField::from_position_fn(*grid, |x| self.amplitude(x, t))
    }
}

/// Schrödinger's Gaussian and its relatives, parametrized by `τ > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianFamily {
    params: PhysicsParams,
    tau: f64,
}

impl GaussianFamily {
    pub fn new(params: PhysicsParams, tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::Domain(format!("τ must be positive, got {tau}")));
        }
        Ok(Self { params, tau })
    }

    pub fn params(&self) -> &PhysicsParams {
        &self.params
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Length scale `γ(t) = [ħ(t² + τ²)/(mτ)]^{1/2}`.
    pub fn gamma(&self, t: f64) -> f64 {
        (self.params.hbar() * (t * t + self.tau * self.tau) / (self.params.mass() * self.tau))
            .sqrt()
    }

    /// Quadratic phase `θ = t x²/(2τγ²)`.
    pub fn theta(&self, x: f64, t: f64) -> f64 {
        let g = self.gamma(t);
        t * x * x / (2.0 * self.tau * g * g)
    }

    /// `β = arg(t − iτ)`, continuous in `t`, so `e^{2iβ} = (t − iτ)/(t + iτ)`.
    pub fn beta(&self, t: f64) -> f64 {
        (-self.tau).atan2(t)
    }

    /// `κ = [m/(2iħ(t − iτ))]^{1/2}`, principal branch (`Re κ² > 0` always).
    pub fn kappa(&self, t: f64) -> C64 {
        let (hbar, m) = (self.params.hbar(), self.params.mass());
        (C64::new(m, 0.0) / (2.0 * I * hbar * C64::new(t, -self.tau))).sqrt()
    }
}

/// `χ(x,t) = (mτ/πħ)^{1/4} (t − iτ)^{-1/2} exp[imx²/(2ħ(t − iτ))]`.
pub fn gaussian_chi(fam: &GaussianFamily, x: f64, t: f64) -> C64 {
    let (hbar, m) = (fam.params.hbar(), fam.params.mass());
    let z = C64::new(t, -fam.tau);
    let pre = (m * fam.tau / (PI * hbar)).powf(0.25);
    pre / z.sqrt() * (I * m * x * x / (2.0 * hbar * z)).exp()
}

/// Normalized Hermite-Gauss packet
/// `χ_n = π^{-1/4}(γ2ⁿn!)^{-1/2} e^{i(θ − (n+½)β)} e^{-x²/2γ²} H_n(x/γ)`.
///
/// The phase coefficient `−(n+½)` follows from applying `b̂†` n times to
/// `χ`; with it `χ_0 ≡ χ`.
pub fn hermite_gauss(fam: &GaussianFamily, n: usize, x: f64, t: f64) -> Result<C64> {
    let g = fam.gamma(t);
    let shape = hermite_function(n, x / g)? / g.sqrt();
    let phase = fam.theta(x, t) - (n as f64 + 0.5) * fam.beta(t);
    Ok(C64::from_polar(shape, phase))
}

/// `(m x̂ − (t + iτ) p̂) f` with `p̂ = −iħ∂ₓ` evaluated spectrally.
pub fn apply_b_dagger(f: &ComplexField, fam: &GaussianFamily, t: f64) -> Result<ComplexField> {
    f.expect_position()?;
    let (hbar, m) = (fam.params.hbar(), fam.params.mass());
    let df = spectral_derivative(f, 1)?;
    let coeff = I * hbar * C64::new(t, fam.tau);
    let xs = f.grid().positions();
    let values = xs
        .iter()
        .zip(f.values().iter().zip(df.values()))
        .map(|(&x, (&v, &dv))| m * x * v + coeff * dv)
        .collect();
    ComplexField::new(*f.grid(), f.representation(), values)
}

fn gamma_half_integer(n: usize) -> f64 {
    // Γ(n + 1/2)
    (0..n).fold(PI.sqrt(), |acc, k| acc * (k as f64 + 0.5))
}

/// Normalized derivative packet `χ̄_n ∝ ∂ₓⁿχ ∝ κ^{n+1} e^{-κ²x²} H_n(κx)`.
///
/// The constant is fixed at `t = 0`, where `κ` is real:
/// `∫|κ^{n+1} H_n(κx) e^{-κ²x²}|² dx = κ^{2n+1} 2^{n−1/2} Γ(n+½)`.
pub fn derivative_packet(fam: &GaussianFamily, n: usize, x: f64, t: f64) -> Result<C64> {
    if n > MAX_DERIVATIVE_ORDER {
        return Err(Error::Domain(format!(
            "derivative order {n} exceeds the supported maximum {MAX_DERIVATIVE_ORDER}"
        )));
    }
    let k0 = fam.kappa(0.0).re;
    let norm2 = k0.powi(2 * n as i32 + 1) * 2f64.powf(n as f64 - 0.5) * gamma_half_integer(n);
    let k = fam.kappa(t);
    let kx = k * x;
    Ok(k.powu(n as u32 + 1) * hermite_complex(n, kx)? * (-kx * kx).exp() / norm2.sqrt())
}

/// Large-time form of `χ̄₂`: `N′ x² t^{-5/2} exp(−mτx²/(2ħt²))`,
/// `N′ = 2(m⁵τ⁵/9πħ⁵)^{1/4}`. Real; a magnitude reference only.
pub fn derivative_packet_asymptote(fam: &GaussianFamily, x: f64, t: f64) -> Result<C64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!(
            "asymptotic form needs t > 0, got {t}"
        )));
    }
    let (hbar, m) = (fam.params.hbar(), fam.params.mass());
    let mt_h = m * fam.tau / hbar;
    let norm = 2.0 * (mt_h.powi(5) / (9.0 * PI)).powf(0.25);
    Ok(C64::new(
        norm * x * x * t.powf(-2.5) * (-mt_h * x * x / (2.0 * t * t)).exp(),
        0.0,
    ))
}

/// Initially square packet of width `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareFamily {
    params: PhysicsParams,
    a: f64,
}

impl SquareFamily {
    pub fn new(params: PhysicsParams, a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("width must be positive, got {a}")));
        }
        Ok(Self { params, a })
    }

    pub fn params(&self) -> &PhysicsParams {
        &self.params
    }

    pub fn width(&self) -> f64 {
        self.a
    }

    /// Natural time unit `ma²/ħ`.
    pub fn time_unit(&self) -> f64 {
        self.params.mass() * self.a * self.a / self.params.hbar()
    }
}

/// `1/√a` inside `|x| < a/2`, zero on and beyond the jumps.
pub fn square_initial(fam: &SquareFamily, x: f64) -> C64 {
    if x.abs() < fam.a / 2.0 {
        C64::new(fam.a.sqrt().recip(), 0.0)
    } else {
        C64::new(0.0, 0.0)
    }
}

/// `φ(p) = √(a/2πħ) sinc(ap/2ħ)`.
pub fn square_momentum(fam: &SquareFamily, p: f64) -> C64 {
    let hbar = fam.params.hbar();
    C64::new(
        (fam.a / (2.0 * PI * hbar)).sqrt() * sinc(fam.a * p / (2.0 * hbar)),
        0.0,
    )
}

/// Exact evolution of the square packet through Fresnel integrals.
///
/// With `u(x′) = √(m/πħt)(x′ − x)` the kernel phase `m(x−x′)²/2ħt` becomes
/// `πu²/2`, so
/// `ψ(x,t) = (2ia)^{-1/2} [F(u(a/2)) − F(u(−a/2))]`, `F = C + iS`.
/// Negative times use `ψ(x,−t) = ψ(x,t)*`, valid because the initial data
/// are real.
pub fn square_exact(fam: &SquareFamily, x: f64, t: f64) -> Result<C64> {
    if t == 0.0 {
        return Err(Error::Domain(
            "square_exact is singular at t = 0; use square_initial".into(),
        ));
    }
    if !t.is_finite() {
        return Err(Error::Domain(format!("time must be finite, got {t}")));
    }
    let (hbar, m) = (fam.params.hbar(), fam.params.mass());
    let scale = (m / (PI * hbar * t.abs())).sqrt();
    let (c_hi, s_hi) = fresnel(scale * (fam.a / 2.0 - x));
    let (c_lo, s_lo) = fresnel(scale * (-fam.a / 2.0 - x));
    let diff = C64::new(c_hi - c_lo, s_hi - s_lo);
    // √(2i) = 1 + i
    let psi = diff / (C64::new(1.0, 1.0) * fam.a.sqrt());
    Ok(if t > 0.0 { psi } else { psi.conj() })
}

/// `χ(x,t)`.
#[derive(Clone, Copy, Debug)]
pub struct Chi(pub GaussianFamily);

impl Packet for Chi {
    fn amplitude(&self, x: f64, t: f64) -> C64 {
        gaussian_chi(&self.0, x, t)
    }
}

/// `χ_n(x,t)`, order validated on construction.
#[derive(Clone, Copy, Debug)]
pub struct HermiteGauss {
    fam: GaussianFamily,
    n: usize,
}

impl HermiteGauss {
    pub fn new(fam: GaussianFamily, n: usize) -> Result<Self> {
        hermite_gauss(&fam, n, 0.0, 0.0)?;
        Ok(Self { fam, n })
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

impl Packet for HermiteGauss {
    fn amplitude(&self, x: f64, t: f64) -> C64 {
        hermite_gauss(&self.fam, self.n, x, t).expect("order validated on construction")
    }
}

/// `χ̄_n(x,t)`, order validated on construction.
#[derive(Clone, Copy, Debug)]
pub struct DerivativePacket {
    fam: GaussianFamily,
    n: usize,
}

impl DerivativePacket {
    pub fn new(fam: GaussianFamily, n: usize) -> Result<Self> {
        derivative_packet(&fam, n, 0.0, 0.0)?;
        Ok(Self { fam, n })
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

impl Packet for DerivativePacket {
    fn amplitude(&self, x: f64, t: f64) -> C64 {
        derivative_packet(&self.fam, self.n, x, t).expect("order validated on construction")
    }
}

/// Square packet; [`square_initial`] at `t = 0`, [`square_exact`] otherwise.
#[derive(Clone, Copy, Debug)]
pub struct SquarePacket(pub SquareFamily);

impl Packet for SquarePacket {
    fn amplitude(&self, x: f64, t: f64) -> C64 {
        if t == 0.0 {
            square_initial(&self.0, x)
        } else {
            square_exact(&self.0, x, t).expect("t is nonzero")
        }
    }
}

/// A packet set moving with momentum `p` by the Galilean transformation.
#[derive(Clone, Copy, Debug)]
pub struct Boosted<P> {
    inner: P,
    momentum: f64,
    t0: f64,
    params: PhysicsParams,
}

impl<P> Boosted<P> {
    pub fn momentum(&self) -> f64 {
        self.momentum
    }

    pub fn inner(&self) -> &P {
        &self.inner
    }
}

/// `ψ(x,t) = exp[(i/ħ)(px − p²(t−t₀)/2m)] ξ(x − p(t−t₀)/m, t)`.
pub fn galilean_boost<P: Packet>(xi: P, p: f64, t0: f64, params: PhysicsParams) -> Boosted<P> {
    Boosted {
        inner: xi,
        momentum: p,
        t0,
        params,
    }
}

impl<P: Packet> Packet for Boosted<P> {
    fn amplitude(&self, x: f64, t: f64) -> C64 {
        let (hbar, m) = (self.params.hbar(), self.params.mass());
        let (p, dt) = (self.momentum, t - self.t0);
        let phase = (p * x - p * p * dt / (2.0 * m)) / hbar;
        C64::from_polar(1.0, phase) * self.inner.amplitude(x - p * dt / m, t)
    }
}

impl<P: Packet + ?Sized> Packet for &P {
    fn amplitude(&self, x: f64, t: f64) -> C64 {
        (**self).amplitude(x, t)
    }
}

impl<P: Packet + ?Sized> Packet for Box<P> {
    fn amplitude(&self, x: f64, t: f64) -> C64 {
        (**self).amplitude(x, t)
    }
}
