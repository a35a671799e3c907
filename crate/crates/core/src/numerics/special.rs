use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest Hermite order accepted by [`hermite`] and friends.
pub const MAX_HERMITE_ORDER: usize = 64;

fn check_order(n: usize) -> Result<()> {
    if n > MAX_HERMITE_ORDER {
        return Err(Error::Domain(format!(
            "Hermite order {n} exceeds the supported maximum {MAX_HERMITE_ORDER}"
        )));
    }
    Ok(())
}

/// Physicists' Hermite polynomial `H_n(x)` by upward recurrence
/// `H_{k+1} = 2x·H_k − 2k·H_{k−1}`.
pub fn hermite(n: usize, x: f64) -> Result<f64> {
    check_order(n)?;
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "Hermite argument must be finite, got {x}"
        )));
    }
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return Ok(prev);
    }
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `H_n(z)` for complex `z`, same recurrence as [`hermite`].
pub fn hermite_complex(n: usize, z: C64) -> Result<C64> {
    check_order(n)?;
    let (mut prev, mut cur) = (C64::new(1.0, 0.0), 2.0 * z);
    if n == 0 {
        return Ok(prev);
    }
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Normalized Hermite function `π^{-1/4}(2ⁿn!)^{-1/2} e^{-z²/2} H_n(z)`.
///
/// Uses the recurrence of the normalized functions so that neither `H_n`
/// nor `2ⁿn!` is formed explicitly.
pub fn hermite_function(n: usize, z: f64) -> Result<f64> {
    check_order(n)?;
    let h0 = PI.powf(-0.25) * (-0.5 * z * z).exp();
    if n == 0 {
        return Ok(h0);
    }
    let (mut prev, mut cur) = (h0, std::f64::consts::SQRT_2 * z * h0);
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * z * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `sin(z)/z` with the removable singularity filled in.
pub fn sinc(z: f64) -> f64 {
    if z == 0.0 {
        1.0
    } else {
        z.sin() / z
    }
}

const SERIES_LIMIT: f64 = 1.6;
const CF_MAX_ITER: usize = 200;

/// Fresnel integrals `(C(u), S(u))` with the `πt²/2` kernel.
///
/// Power series for `|u| ≤ 1.6`; beyond that the complementary-error-function
/// auxiliary is evaluated by its continued fraction (modified Lentz).
pub fn fresnel(u: f64) -> (f64, f64) {
    let ax = u.abs();
    let (c, s) = if ax <= SERIES_LIMIT {
        fresnel_series(ax)
    } else {
        fresnel_continued_fraction(ax)
    };
    if u < 0.0 {
        (-c, -s)
    } else {
        (c, s)
    }
}

fn fresnel_series(ax: f64) -> (f64, f64) {
    let arg = FRAC_PI_2 * ax * ax;
    let (mut c, mut s) = (0.0, 0.0);
    // term = arg^m / m! · ax
    let mut term = ax;
    let mut m = 0usize;
    loop {
        let contrib = term / (2 * m + 1) as f64;
        let sign = if (m / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        if m.is_multiple_of(2) {
            c += sign * contrib;
        } else {
            s += sign * contrib;
        }
        if contrib < 1e-18 * (c.abs() + s.abs()) || m > 200 {
            break;
        }
        m += 1;
        term *= arg / m as f64;
    }
    (c, s)
}

fn fresnel_continued_fraction(ax: f64) -> (f64, f64) {
    let tiny = 1e-300;
    let pix2 = PI * ax * ax;
    let mut b = C64::new(1.0, -pix2);
    let mut cc = C64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    let mut n = -1.0f64;
    for _ in 2..CF_MAX_ITER {
        n += 2.0;
        let a = -n * (n + 1.0);
        b += 4.0;
        d = (a * d + b).inv();
        cc = b + a / cc;
        let del = cc * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
            break;
        }
    }
    h *= C64::new(ax, -ax);
    let (sin, cos) = (0.5 * pix2).sin_cos();
    let cs = C64::new(0.5, 0.5) * (1.0 - C64::new(cos, sin) * h);
    (cs.re, cs.im)
}
