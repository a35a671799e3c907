//! Browser bindings: three operations driven by `www/index.html`.
//!
//! Every function returns a flat `Float64Array`-compatible `Vec<f64>`
//! so the page can draw straight onto a canvas. Units are ħ = m = 1.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use wasm_bindgen::prelude::*;
use wavepacket::evolution::propagate_spectral;
use wavepacket::numerics::Grid;
use wavepacket::observables::{moments, spread_law_from_state, spread_prediction};
use wavepacket::packets::{
    derivative_packet_asymptote, DerivativePacket, GaussianFamily, HermiteGauss, Packet,
    SquareFamily, SquarePacket,
};
use wavepacket::PhysicsParams;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn js(r: Result<Vec<f64>, String>) -> Result<Vec<f64>, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

fn gaussian(tau: f64) -> Result<GaussianFamily, String> {
    GaussianFamily::new(PhysicsParams::natural(), tau).map_err(err)
}

/// `[x…, density…, reference…]` on `points` samples of `[-half_width, half_width]`.
///
/// `kind` is `"hermite-gauss"` or `"derivative"`. For the derivative packet
/// the reference curve is the large-time Gaussian asymptote (zero at t ≤ 0);
/// for Hermite–Gauss it is the t = 0 density.
pub fn gaussian_family_density(
    kind: &str,
    order: usize,
    tau: f64,
    t: f64,
    half_width: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let fam = gaussian(tau)?;
    let points = points.clamp(2, 1 << 14);
    let xs: Vec<f64> = (0..points)
        .map(|j| -half_width + 2.0 * half_width * j as f64 / (points - 1) as f64)
        .collect();
    let (density, reference): (Vec<f64>, Vec<f64>) = match kind {
        "hermite-gauss" => {
            let p = HermiteGauss::new(fam, order).map_err(err)?;
            xs.iter()
                .map(|&x| (p.amplitude(x, t).norm_sqr(), p.amplitude(x, 0.0).norm_sqr()))
                .unzip()
        }
        "derivative" => {
            let p = DerivativePacket::new(fam, order).map_err(err)?;
            xs.iter()
                .map(|&x| {
                    let r = if t > 0.0 {
                        derivative_packet_asymptote(&fam, x, t).map_or(0.0, |v| v.norm_sqr())
                    } else {
                        0.0
                    };
                    (p.amplitude(x, t).norm_sqr(), r)
                })
                .unzip()
        }
        other => return Err(format!("unknown family {other}")),
    };
    Ok([xs, density, reference].concat())
}

/// `[t…, measured Δx…, predicted Δx…]` for a derivative packet of the
/// given order, evolved spectrally over `[-t_max, t_max]`.
pub fn spread_law_curve(
    order: usize,
    tau: f64,
    t_max: f64,
    steps: usize,
) -> Result<Vec<f64>, String> {
    let params = PhysicsParams::natural();
    let packet = DerivativePacket::new(gaussian(tau)?, order).map_err(err)?;
    let grid = Grid::centered(64.0, 4096).map_err(err)?;
    let psi0 = packet.sample(&grid, 0.0);
    let m0 = moments(&psi0, &params).map_err(err)?;
    let law = spread_law_from_state(&m0, &params, 0.0).map_err(err)?;
    let steps = steps.clamp(2, 400);
    let mut ts = Vec::with_capacity(steps);
    let mut measured = Vec::with_capacity(steps);
    let mut predicted = Vec::with_capacity(steps);
    for k in 0..steps {
        let t = -t_max + 2.0 * t_max * k as f64 / (steps - 1) as f64;
        let f = propagate_spectral(&psi0, t, &params).map_err(err)?;
        ts.push(t);
        measured.push(moments(&f.field, &params).map_err(err)?.delta_x);
        predicted.push(spread_prediction(&law, &params, t));
    }
    Ok([ts, measured, predicted].concat())
}

/// `[z…, t·|ψ|²…, sinc²…]` for a unit-width square packet at time `t`
/// (in units of ma²/ħ), sampled in `z = a·x/(2t)`.
///
/// The sinc² reference is the far-field diffraction pattern
/// `(a/2πt)·sinc²(z)` scaled by t.
pub fn square_density(t: f64, z_max: f64, points: usize) -> Result<Vec<f64>, String> {
    if !(t > 0.0) {
        return Err("t must be positive".into());
    }
    let fam = SquareFamily::new(PhysicsParams::natural(), 1.0).map_err(err)?;
    let p = SquarePacket(fam);
    let points = points.clamp(2, 1 << 14);
    let zs: Vec<f64> = (0..points)
        .map(|j| -z_max + 2.0 * z_max * j as f64 / (points - 1) as f64)
        .collect();
    let (exact, far): (Vec<f64>, Vec<f64>) = zs
        .iter()
        .map(|&z| {
            let x = 2.0 * t * z;
            let s = wavepacket::numerics::sinc(z);
            (
                t * p.amplitude(x, t).norm_sqr(),
                s * s / (2.0 * std::f64::consts::PI),
            )
        })
        .unzip();
    Ok([zs, exact, far].concat())
}

#[wasm_bindgen(js_name = gaussianFamilyDensity)]
pub fn gaussian_family_density_js(
    kind: &str,
    order: usize,
    tau: f64,
    t: f64,
    half_width: f64,
    points: usize,
) -> Result<Vec<f64>, JsValue> {
    js(gaussian_family_density(
        kind, order, tau, t, half_width, points,
    ))
}

#[wasm_bindgen(js_name = spreadLawCurve)]
pub fn spread_law_curve_js(
    order: usize,
    tau: f64,
    t_max: f64,
    steps: usize,
) -> Result<Vec<f64>, JsValue> {
    js(spread_law_curve(order, tau, t_max, steps))
}

#[wasm_bindgen(js_name = squareDensity)]
pub fn square_density_js(t: f64, z_max: f64, points: usize) -> Result<Vec<f64>, JsValue> {
    js(square_density(t, z_max, points))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_approaches_sinc_squared() {
        let v = square_density(0.5, 6.0, 241).unwrap();
        let n = 241;
        let peak = v[2 * n..].iter().cloned().fold(0.0, f64::max);
        let gap = (0..n)
            .map(|j| (v[n + j] - v[2 * n + j]).abs())
            .fold(0.0, f64::max);
        assert!(gap / peak < 0.02, "{}", gap / peak);
    }

    #[test]
    fn spread_curve_matches_prediction() {
        let v = spread_law_curve(2, 1.0, 3.0, 7).unwrap();
        for k in 0..7 {
            assert!((v[7 + k] - v[14 + k]).abs() < 1e-8 * v[14 + k]);
        }
    }

    #[test]
    fn derivative_density_layout() {
        let v = gaussian_family_density("derivative", 2, 1.0, 0.5, 8.0, 101).unwrap();
        assert_eq!(v.len(), 303);
        assert!(gaussian_family_density("nope", 0, 1.0, 0.0, 1.0, 3).is_err());
    }
}
