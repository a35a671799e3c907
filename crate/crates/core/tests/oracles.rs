//! Special functions and closed forms against independent references.

mod common;

use std::f64::consts::PI;

use common::*;
use wavepacket::evolution::propagate_quadrature;
use wavepacket::numerics::{fresnel, hermite, Grid};
use wavepacket::packets::{square_exact, Packet, SquareFamily, SquarePacket};
use wavepacket::PhysicsParams;

#[test]
fn fresnel_matches_quadrature_to_1e10() {
    let mut worst: f64 = 0.0;
    let mut u = -50.0;
    while u <= 50.0 {
        let (c, s) = fresnel(u);
        let (cq, sq) = fresnel_by_quadrature(u);
        worst = worst.max((c - cq).abs()).max((s - sq).abs());
        // dense near the regime switch, coarse in the far tails
        u += if u.abs() < 3.0 { 0.0625 } else { 0.73 };
    }
    for &u in &[1.599_999, 1.6, 1.600_001, -1.6] {
        let (c, s) = fresnel(u);
        let (cq, sq) = fresnel_by_quadrature(u);
        worst = worst.max((c - cq).abs()).max((s - sq).abs());
    }
    assert!(worst < 1e-10, "worst |Δ| = {worst:e}");
}

#[test]
fn fresnel_large_argument_expansion() {
    // C ≈ ½ + f sin(πu²/2) − g cos(πu²/2), S ≈ ½ − f cos − g sin,
    // f ~ 1/(πu)(1 − 3/(πu²)²), g ~ 1/(π²u³)(1 − 15/(πu²)²)
    for &u in &[20.0, 31.7, 50.0, 120.0] {
        let w = PI * u * u;
        let f = (1.0 - 3.0 / (w * w)) / (PI * u);
        let g = (1.0 - 15.0 / (w * w)) / (PI * PI * u.powi(3));
        let (sn, cs) = (0.5 * w).sin_cos();
        let (c, s) = fresnel(u);
        assert!((c - (0.5 + f * sn - g * cs)).abs() < 1e-10, "C({u})");
        assert!((s - (0.5 - f * cs - g * sn)).abs() < 1e-10, "S({u})");
    }
}

#[test]
fn fresnel_derivative_by_central_differences() {
    let h = 1e-5;
    for k in 0..=80 {
        let u = -4.0 + 0.1 * k as f64;
        let dc = (fresnel(u + h).0 - fresnel(u - h).0) / (2.0 * h);
        let ds = (fresnel(u + h).1 - fresnel(u - h).1) / (2.0 * h);
        let arg = 0.5 * PI * u * u;
        assert!((dc - arg.cos()).abs() < 1e-7, "C'({u})");
        assert!((ds - arg.sin()).abs() < 1e-7, "S'({u})");
    }
}

#[test]
fn fresnel_is_odd() {
    for &u in &[0.3, 1.2, 1.6, 2.5, 17.0] {
        let (c, s) = fresnel(u);
        let (cn, sn) = fresnel(-u);
        assert_eq!((c, s), (-cn, -sn));
    }
}

#[test]
fn hermite_matches_rodrigues() {
    assert_eq!(rodrigues_coefficients(2), vec![-2, 0, 4]);
    for n in 0..=10 {
        let coeffs = rodrigues_coefficients(n);
        for &x in &[-2.0, -1.0, 0.0, 1.0, 2.0] {
            let exact = eval_poly(&coeffs, x);
            let got = hermite(n, x).unwrap();
            let scale = exact.abs().max(1.0);
            assert!(
                (got - exact).abs() <= 1e-10 * scale,
                "H_{n}({x}): {got} vs {exact}"
            );
        }
    }
}

#[test]
fn square_closed_form_matches_brute_force_at_t_001() {
    let fam = SquareFamily::new(PhysicsParams::natural(), 1.0).unwrap();
    let mut worst: f64 = 0.0;
    for k in 0..=400 {
        let x = -2.0 + 0.01 * k as f64;
        let exact = square_exact(&fam, x, 0.01).unwrap();
        let oracle = square_by_quadrature(1.0, x, 0.01);
        worst = worst.max((exact - oracle).norm());
    }
    assert!(worst < 1e-8, "{worst:e}");
}

#[test]
fn square_closed_form_matches_propagator_quadrature_at_t_005() {
    // jumps fall midway between lattice points, so the lattice sum is the
    // midpoint rule on cells that tile [−a/2, a/2] exactly
    let p = PhysicsParams::natural();
    let step = 1.0 / 4096.0;
    let grid = Grid::new(-1.0 + 0.5 * step, step, 8192).unwrap();
    let packet = SquarePacket(SquareFamily::new(p, 1.0).unwrap());
    let psi0 = packet.sample(&grid, 0.0);
    let q = propagate_quadrature(&psi0, 0.05, &p).unwrap().field;
    let exact = packet.sample(&grid, 0.05);
    let worst = q.max_abs_difference(&exact);
    assert!(worst < 1e-6, "{worst:e}");
}

#[test]
fn sinc_squared_secondary_maximum() {
    let z = second_sinc_extremum();
    assert!((z - 4.493_409_457_909_064).abs() < 1e-12);
    assert!((z / PI - 1.43).abs() < 0.005);
    let ratio = sinc2(z);
    assert!((ratio - 1.0 / (1.0 + z * z)).abs() < 1e-14);
    assert!((ratio - 0.047).abs() < 0.001, "{ratio}");
}

#[test]
fn best_gaussian_leaves_residual() {
    let (a, sigma, residual) = gaussian_fit_to_sinc2();
    assert!(
        (a - 1.02).abs() < 0.01 && (sigma - 1.13).abs() < 0.01,
        "{a} {sigma}"
    );
    assert!((residual - 0.0606).abs() < 0.001, "{residual}");
}
