//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use wavepacket::C64;

const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683_1,
    0.0,
    0.538_469_310_105_683_1,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Composite 5-point Gauss–Legendre on `panels` equal panels.
pub fn gauss_legendre<F: Fn(f64) -> C64>(f: F, a: f64, b: f64, panels: usize) -> C64 {
    let h = (b - a) / panels as f64;
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for (x, w) in GL5_NODES.iter().zip(GL5_WEIGHTS) {
            acc += f(mid + 0.5 * h * x) * w;
        }
    }
    acc * (0.5 * h)
}

/// `(C(u), S(u))` straight from the defining integrals.
pub fn fresnel_by_quadrature(u: f64) -> (f64, f64) {
    // ~8 panels per local oscillation of e^{iπs²/2}
    let panels = 64 + (8.0 * u * u).ceil() as usize;
    let v = gauss_legendre(|s| C64::from_polar(1.0, 0.5 * PI * s * s), 0.0, u, panels);
    (v.re, v.im)
}

/// Free evolution of the unit-height box on `[−a/2, a/2]` (normalized,
/// ħ = m = 1) by brute-force quadrature of the propagator integral.
pub fn square_by_quadrature(a: f64, x: f64, t: f64) -> C64 {
    let pre = (C64::new(1.0, 0.0) / (2.0 * PI * C64::i() * t)).sqrt() / a.sqrt();
    // local wavenumber |x − x′|/t, at most (|x| + a/2)/t
    let kmax = (x.abs() + 0.5 * a) / t;
    let panels = 64 + (4.0 * kmax * a).ceil() as usize;
    pre * gauss_legendre(
        |xp| C64::from_polar(1.0, (x - xp) * (x - xp) / (2.0 * t)),
        -0.5 * a,
        0.5 * a,
        panels,
    )
}

/// Integer coefficients of `Hₙ` from Rodrigues' formula,
/// `Hₙ = (−1)ⁿ e^{x²} dⁿ/dxⁿ e^{−x²}`, by exact polynomial differentiation.
pub fn rodrigues_coefficients(n: usize) -> Vec<i128> {
    // q with dᵏ/dxᵏ e^{−x²} = q(x) e^{−x²}; q ← q′ − 2x q
    let mut q: Vec<i128> = vec![1];
    for _ in 0..n {
        let mut next = vec![0i128; q.len() + 1];
        for (k, &c) in q.iter().enumerate() {
            if k > 0 {
                next[k - 1] += k as i128 * c;
            }
            next[k + 1] -= 2 * c;
        }
        q = next;
    }
    if n % 2 == 1 {
        q.iter_mut().for_each(|c| *c = -*c);
    }
    q
}

pub fn eval_poly(coeffs: &[i128], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
}

pub fn sinc2(z: f64) -> f64 {
    if z == 0.0 {
        1.0
    } else {
        (z.sin() / z).powi(2)
    }
}

/// First positive root of `tan z = z` past `π`, by bisection.
pub fn second_sinc_extremum() -> f64 {
    let g = |z: f64| z.sin() - z * z.cos();
    let (mut lo, mut hi) = (PI + 1e-9, 1.5 * PI - 1e-9);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(lo).signum() == g(mid).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Least-squares `A·exp(−z²/2σ²)` fit to sinc² over `|z| ≤ π`, by dense
/// scan in σ with the optimal `A` in closed form; returns
/// `(A, σ, relative L² residual over |z| ≤ 2π)`.
pub fn gaussian_fit_to_sinc2() -> (f64, f64, f64) {
    let samples = |half: f64, n: usize| -> Vec<f64> {
        (0..=n)
            .map(|k| -half + 2.0 * half * k as f64 / n as f64)
            .collect()
    };
    let lobe = samples(PI, 4000);
    let fit_for = |sigma: f64| {
        let g: Vec<f64> = lobe
            .iter()
            .map(|z| (-z * z / (2.0 * sigma * sigma)).exp())
            .collect();
        let num: f64 = lobe.iter().zip(&g).map(|(&z, gi)| sinc2(z) * gi).sum();
        let den: f64 = g.iter().map(|gi| gi * gi).sum();
        let a = num / den;
        let sse: f64 = lobe
            .iter()
            .zip(&g)
            .map(|(&z, gi)| (sinc2(z) - a * gi).powi(2))
            .sum();
        (a, sse)
    };
    let (mut lo, mut hi) = (0.3, 3.0);
    let mut best = (0.0, 0.0, f64::INFINITY);
    for _ in 0..6 {
        let step = (hi - lo) / 200.0;
        for k in 0..=200 {
            let s = lo + step * k as f64;
            let (a, sse) = fit_for(s);
            if sse < best.2 {
                best = (a, s, sse);
            }
        }
        lo = best.1 - step;
        hi = best.1 + step;
    }
    let (a, sigma) = (best.0, best.1);
    let wide = samples(2.0 * PI, 8000);
    let (mut num, mut den) = (0.0, 0.0);
    for &z in &wide {
        let s = sinc2(z);
        num += (s - a * (-z * z / (2.0 * sigma * sigma)).exp()).powi(2);
        den += s * s;
    }
    (a, sigma, (num / den).sqrt())
}

pub fn relative_l2(a: &[C64], b: &[C64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}
