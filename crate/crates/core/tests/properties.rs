//! Invariants of the transform, the propagators, the closed-form families
//! and the moments, checked over randomized inputs.

use proptest::prelude::*;
use wavepacket::evolution::{
    asymptotic_error_bound, asymptotic_form, propagate_spectral, short_time_approx,
    short_time_error_bound, sup_density_of_difference,
};
use wavepacket::numerics::{
    from_momentum, quadrature_norm2, spectral_derivative, to_momentum, ComplexField, Grid,
};
use wavepacket::observables::{moments, spread_law_from_state, spread_prediction, timescales};
use wavepacket::packets::{
    galilean_boost, Chi, DerivativePacket, GaussianFamily, HermiteGauss, Packet,
};
use wavepacket::{PhysicsParams, C64};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// Wide enough for the worst superposition below: lumps up to ~34 apart
/// after |t| = 3, each ~4 wide, so every second moment converges.
fn grid() -> Grid {
    Grid::centered(128.0, 4096).unwrap()
}

/// `(amplitude, phase, centre, width, momentum)`
type Blob = (f64, f64, f64, f64, f64);

fn blob() -> impl Strategy<Value = Blob> {
    (
        0.2..1.0f64,
        -3.0..3.0f64,
        -5.0..5.0f64,
        0.6..2.0f64,
        -4.0..4.0f64,
    )
}

/// Normalized superposition of moving Gaussians.
fn superposition(blobs: &[Blob]) -> ComplexField {
    let f = ComplexField::from_position_fn(grid(), |x| {
        blobs
            .iter()
            .map(|&(a, ph, c, w, p)| {
                let d = (x - c) / w;
                C64::from_polar(a * (-0.5 * d * d).exp(), ph + p * x)
            })
            .sum()
    });
    let norm = quadrature_norm2(&f).sqrt();
    f.scaled(C64::new(1.0 / norm, 0.0))
}

fn params() -> impl Strategy<Value = PhysicsParams> {
    (0.5..2.0f64, 0.5..2.0f64).prop_map(|(h, m)| PhysicsParams::new(h, m).unwrap())
}

#[derive(Clone, Copy, Debug)]
enum Family {
    Chi,
    HermiteGauss(usize),
    Derivative(usize),
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::Chi),
        (0..=4usize).prop_map(Family::HermiteGauss),
        (0..=4usize).prop_map(Family::Derivative),
    ]
}

fn packet(kind: Family, fam: GaussianFamily) -> Box<dyn Packet> {
    match kind {
        Family::Chi => Box::new(Chi(fam)),
        Family::HermiteGauss(n) => Box::new(HermiteGauss::new(fam, n).unwrap()),
        Family::Derivative(n) => Box::new(DerivativePacket::new(fam, n).unwrap()),
    }
}

fn norm(values: &[C64]) -> f64 {
    values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn parseval(blobs in prop::collection::vec(blob(), 1..4), p in params()) {
        let f = superposition(&blobs);
        let phi = to_momentum(&f, &p).unwrap();
        let (a, b) = (quadrature_norm2(&f), quadrature_norm2(&phi));
        prop_assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn transform_is_linear(
        f in prop::collection::vec(blob(), 1..3),
        g in prop::collection::vec(blob(), 1..3),
        alpha in (-2.0..2.0f64, -2.0..2.0f64),
        beta in (-2.0..2.0f64, -2.0..2.0f64),
    ) {
        let p = PhysicsParams::natural();
        let (f, g) = (superposition(&f), superposition(&g));
        let (alpha, beta) = (C64::new(alpha.0, alpha.1), C64::new(beta.0, beta.1));
        let lhs = to_momentum(&f.combine(alpha, &g, beta).unwrap(), &p).unwrap();
        let rhs = to_momentum(&f, &p).unwrap().combine(alpha, &to_momentum(&g, &p).unwrap(), beta).unwrap();
        let scale = norm(rhs.values()).max(norm(to_momentum(&f, &p).unwrap().values()));
        prop_assert!(norm(lhs.combine(C64::new(1.0, 0.0), &rhs, C64::new(-1.0, 0.0)).unwrap().values()) <= 1e-13 * scale);
    }

    #[test]
    fn inverse_transform_round_trips(blobs in prop::collection::vec(blob(), 1..4), p in params()) {
        let f = superposition(&blobs);
        let back = from_momentum(&to_momentum(&f, &p).unwrap(), &p).unwrap();
        prop_assert!(back.max_abs_difference(&f) < 1e-13);
    }

    #[test]
    fn spectral_evolution_is_unitary(blobs in prop::collection::vec(blob(), 1..4), t in -5.0..5.0f64, p in params()) {
        let f = superposition(&blobs);
        let g = propagate_spectral(&f, t, &p).unwrap().field;
        prop_assert!((quadrature_norm2(&g) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evolution_composes(blobs in prop::collection::vec(blob(), 1..4), t1 in -2.0..2.0f64, t2 in -2.0..2.0f64) {
        let p = PhysicsParams::natural();
        let f = superposition(&blobs);
        let two = propagate_spectral(&propagate_spectral(&f, t1, &p).unwrap().field, t2, &p).unwrap().field;
        let one = propagate_spectral(&f, t1 + t2, &p).unwrap().field;
        prop_assert!(two.max_abs_difference(&one) < 1e-12);
    }

    #[test]
    fn moments_of_superpositions(blobs in prop::collection::vec(blob(), 1..4), t in -3.0..3.0f64) {
        let p = PhysicsParams::natural();
        let f = superposition(&blobs);
        let m0 = moments(&f, &p).unwrap();
        let mt = moments(&propagate_spectral(&f, t, &p).unwrap().field, &p).unwrap();
        // Heisenberg
        prop_assert!(m0.satisfies_uncertainty(&p, 1e-9) && mt.satisfies_uncertainty(&p, 1e-9));
        // Δp constancy and Ehrenfest
        prop_assert!((mt.delta_p - m0.delta_p).abs() <= 1e-9 * m0.delta_p);
        prop_assert!((mt.mean_p - m0.mean_p).abs() <= 1e-9 * m0.delta_p);
        prop_assert!((mt.mean_x - m0.mean_x - m0.mean_p * t).abs() <= 1e-9 * (1.0 + m0.mean_x.abs()));
        // ⟨R̂⟩ grows linearly with slope Δp²/m
        let dr = mt.mean_r - m0.mean_r;
        let want = m0.delta_p * m0.delta_p * t;
        prop_assert!((dr - want).abs() <= 1e-8 * want.abs().max(1.0), "{} vs {}", dr, want);
        // spread law
        let law = spread_law_from_state(&m0, &p, 0.0).unwrap();
        let pred = spread_prediction(&law, &p, t);
        prop_assert!((mt.delta_x - pred).abs() <= 1e-6 * pred);
        // timescale ordering
        let ts = timescales(&m0, &p).unwrap();
        prop_assert!(ts.t_p <= ts.t_h * (1.0 + 1e-12) && ts.t_h <= ts.t_x * (1.0 + 1e-12));
    }

    #[test]
    fn families_solve_the_free_equation(kind in family(), tau in 0.5..2.0f64, t in -2.0..2.0f64, p in params()) {
        let fam = GaussianFamily::new(p, tau).unwrap();
        let pk = packet(kind, fam);
        let g = Grid::centered(30.0 * tau.sqrt().max(1.0), 2048).unwrap();
        let dt = 1e-5 * tau;
        let psi = pk.sample(&g, t);
        let plus = pk.sample(&g, t + dt);
        let minus = pk.sample(&g, t - dt);
        let d2 = spectral_derivative(&psi, 2).unwrap();
        let (hbar, m) = (p.hbar(), p.mass());
        let kinetic: Vec<C64> = d2.values().iter().map(|v| v * (hbar * hbar / (2.0 * m))).collect();
        let residual: Vec<C64> = plus.values().iter().zip(minus.values()).zip(&kinetic)
            .map(|((a, b), k)| C64::i() * hbar * (a - b) / (2.0 * dt) + k)
            .collect();
        prop_assert!(norm(&residual) <= 1e-6 * norm(&kinetic), "{:?}: {:e}", kind, norm(&residual) / norm(&kinetic));
    }

    #[test]
    fn families_stay_normalized_and_match_spectral_evolution(kind in family(), tau in 0.5..2.0f64, t in -3.0..3.0f64) {
        let p = PhysicsParams::natural();
        let pk = packet(kind, GaussianFamily::new(p, tau).unwrap());
        let g = Grid::centered(40.0, 2048).unwrap();
        let closed = pk.sample(&g, t);
        prop_assert!((quadrature_norm2(&closed) - 1.0).abs() < 1e-10);
        let evolved = propagate_spectral(&pk.sample(&g, 0.0), t, &p).unwrap().field;
        prop_assert!(evolved.relative_l2_distance(&closed) < 1e-8);
    }

    #[test]
    fn hermite_gauss_keeps_its_shape(n in 0..=4usize, tau in 0.5..2.0f64, t in -5.0..5.0f64) {
        let fam = GaussianFamily::new(PhysicsParams::natural(), tau).unwrap();
        let pk = HermiteGauss::new(fam, n).unwrap();
        let (g0, gt) = (fam.gamma(0.0), fam.gamma(t));
        for k in 0..=200 {
            let xi = -6.0 + 0.06 * k as f64;
            let a = pk.amplitude(xi * g0, 0.0).norm_sqr() * g0;
            let b = pk.amplitude(xi * gt, t).norm_sqr() * gt;
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn odd_packets_stay_odd(tau in 0.5..2.0f64, t in -5.0..5.0f64, x in 0.0..6.0f64) {
        let fam = GaussianFamily::new(PhysicsParams::natural(), tau).unwrap();
        for pk in [&HermiteGauss::new(fam, 1).unwrap() as &dyn Packet, &DerivativePacket::new(fam, 1).unwrap()] {
            prop_assert!(pk.amplitude(0.0, t).norm() < 1e-15);
            prop_assert!((pk.amplitude(x, t) + pk.amplitude(-x, t)).norm() < 1e-12);
        }
    }

    #[test]
    fn real_packets_are_time_symmetric(n in 0..=4usize, t in 0.0..3.0f64) {
        let p = PhysicsParams::natural();
        let pk = DerivativePacket::new(GaussianFamily::new(p, 1.0).unwrap(), n).unwrap();
        let psi0 = pk.sample(&grid(), 0.0);
        let fwd = propagate_spectral(&psi0, t, &p).unwrap().field.densities();
        let back = propagate_spectral(&psi0, -t, &p).unwrap().field.densities();
        let gap = fwd.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(gap < 1e-10);
        let m = moments(&psi0, &p).unwrap();
        prop_assert!(m.mean_p.abs() < 1e-9 && m.mean_r.abs() < 1e-9);
    }

    #[test]
    fn boosted_packets_follow_ehrenfest(kind in family(), boost in -3.0..3.0f64, t in 0.0..3.0f64) {
        let p = PhysicsParams::natural();
        let pk = galilean_boost(packet(kind, GaussianFamily::new(p, 1.0).unwrap()), boost, 0.0, p);
        let g = Grid::centered(64.0, 4096).unwrap();
        let m0 = moments(&pk.sample(&g, 0.0), &p).unwrap();
        let mt = moments(&pk.sample(&g, t), &p).unwrap();
        prop_assert!((m0.mean_p - boost).abs() < 1e-9);
        prop_assert!((mt.mean_p - m0.mean_p).abs() < 1e-9);
        prop_assert!((mt.mean_x - m0.mean_x - m0.mean_p * t).abs() < 1e-9);
    }
}

#[test]
fn derivative_packet_changes_shape() {
    let fam = GaussianFamily::new(PhysicsParams::natural(), 1.0).unwrap();
    let pk = DerivativePacket::new(fam, 2).unwrap();
    let (g0, g1) = (fam.gamma(0.0), fam.gamma(1.0));
    let gap = (0..=600)
        .map(|k| -6.0 + 0.02 * k as f64)
        .map(|xi| {
            (pk.amplitude(xi * g0, 0.0).norm_sqr() * g0
                - pk.amplitude(xi * g1, 1.0).norm_sqr() * g1)
                .abs()
        })
        .fold(0.0, f64::max);
    assert!(gap > 0.05, "{gap}");
}

#[test]
fn chi_timescales_coincide() {
    let p = PhysicsParams::natural();
    let f = Chi(GaussianFamily::new(p, 1.0).unwrap()).sample(&grid(), 0.0);
    let ts = timescales(&moments(&f, &p).unwrap(), &p).unwrap();
    assert!((ts.t_p - ts.t_x).abs() < 1e-12 && (ts.t_h - ts.t_x).abs() < 1e-12);
}

/// Every bound, every family, every time in the sweep: no violations.
#[test]
fn error_bounds_hold_on_log_spaced_times() {
    let p = PhysicsParams::natural();
    let fam = GaussianFamily::new(p, 1.0).unwrap();
    let g = Grid::centered(512.0, 16384).unwrap();
    let cases: Vec<(&str, Box<dyn Packet>)> = vec![
        ("chi", Box::new(Chi(fam))),
        ("chi_1", Box::new(HermiteGauss::new(fam, 1).unwrap())),
        ("chibar_2", Box::new(DerivativePacket::new(fam, 2).unwrap())),
        (
            "boosted chi",
            Box::new(galilean_boost(Chi(fam), 2.0, 0.0, p)),
        ),
    ];
    let times: Vec<f64> = (0..=20)
        .map(|k| 10f64.powf(-3.0 + 0.25 * k as f64))
        .collect();
    let mut violations = Vec::new();
    for (name, pk) in &cases {
        let psi0 = pk.sample(&g, 0.0);
        let phi0 = to_momentum(&psi0, &p).unwrap();
        let m0 = moments(&psi0, &p).unwrap();
        for &t in &times {
            let exact = propagate_spectral(&psi0, t, &p).unwrap().field;
            let st = short_time_approx(&psi0, t, &p, m0.mean_p).unwrap().field;
            let asy = asymptotic_form(&phi0, m0.mean_x, t, &p).unwrap().field;
            let (e1, b1) = (
                sup_density_of_difference(&exact, &st),
                short_time_error_bound(m0.delta_p, t, &p).unwrap(),
            );
            let (e2, b2) = (
                sup_density_of_difference(&exact, &asy),
                asymptotic_error_bound(m0.delta_x, t, &p).unwrap(),
            );
            if e1 > b1 {
                violations.push(format!("{name} short-time t={t}: {e1:e} > {b1:e}"));
            }
            if e2 > b2 {
                violations.push(format!("{name} asymptotic t={t}: {e2:e} > {b2:e}"));
            }
        }
    }
    assert!(violations.is_empty(), "{violations:#?}");
}
