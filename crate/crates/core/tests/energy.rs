use std::f64::consts::PI;

use proptest::prelude::*;
use wavemode_core::closed_form::{duhamel_wave, duhamel_wave_with_initial_values, solve_damped, solve_wave_cosine};
use wavemode_core::energy::{
    balance_with_initial_values, damped_balance_residual, damped_balance_residual_with, damped_transforms,
    heat_transform_and_estimates, resonance_aware_data_norm_sq, rotation, schrodinger_balance_residual,
    schrodinger_transforms, solution_energy_norm_sq, transforms, wave_balance_residual, DampedVelocity, TransformPair,
};
use wavemode_core::norms::data_norm_sq;
use wavemode_core::oracle::{integrate, integrate_first_order_ivp, integrate_second_order_ivp, FirstOrderKind, FirstOrderSolution};
use wavemode_core::{Complex64, ComplexSignal, Error, Forcing, ModeParams, Signal, TimeGrid};

fn params(a: f64) -> ModeParams {
    ModeParams::from_sqrt_mu(a, 1.0, 1.0).unwrap()
}

fn damped_oracle(lambda: f64, rho: f64, f: &Forcing, g: &TimeGrid) -> (Signal, Signal) {
    match integrate_first_order_ivp(lambda, f, g, FirstOrderKind::Damped { rho }).unwrap() {
        FirstOrderSolution::Damped { u, uprime } => (u, uprime),
        _ => unreachable!(),
    }
}

#[test]
fn transforms_of_zero() {
    let g = TimeGrid::new(1.0, 200).unwrap();
    let p = transforms(&Forcing::constant(g, 0.0), 5.0, &g).unwrap();
    assert_eq!(p.fc.sup_norm() + p.fs.sup_norm(), 0.0);
    assert!(transforms(&Forcing::constant(g, 1.0), 0.0, &g).is_err());
}

#[test]
fn transforms_of_resonant_cosine() {
    let a = 2.0 * PI;
    let g = TimeGrid::new(1.0, 2000).unwrap();
    let p = transforms(&Forcing::Cosine { omega: a }, a, &g).unwrap();
    assert_eq!(p.fc.values()[0], 0.0);
    assert_eq!(p.fs.values()[0], 0.0);
    let fc = Signal::from_fn(g, |t| t / 2.0 + (2.0 * a * t).sin() / (4.0 * a)).unwrap();
    let fs = Signal::from_fn(g, |t| (1.0 - (2.0 * a * t).cos()) / (4.0 * a)).unwrap();
    assert!(p.fc.sup_distance(&fc).unwrap() < 1e-8);
    assert!(p.fs.sup_distance(&fs).unwrap() < 1e-8);
    let integrand = Signal::from_fn(g, |t| (a * t).cos() * (a * t).cos()).unwrap();
    assert!((p.fc.last() - integrate(&integrand)).abs() < 1e-12);
}

#[test]
fn transforms_refuse_coarse_grid() {
    let g = TimeGrid::new(1.0, 20).unwrap();
    assert!(matches!(transforms(&Forcing::Cosine { omega: 1.0 }, 50.0, &g), Err(Error::Resolution { .. })));
}

#[test]
fn wave_balance_zero_and_resonant() {
    let a = 2.0 * PI;
    let p = params(a);
    let g = TimeGrid::new(1.0, 2000).unwrap();
    let zero = Forcing::constant(g, 0.0);
    let (u, du) = duhamel_wave(&p, &zero, &g).unwrap();
    let r = wave_balance_residual(&p, &u, &du, &transforms(&zero, a, &g).unwrap()).unwrap();
    assert_eq!(r.max_abs_residual, 0.0);
    let (u, du) = solve_wave_cosine(&p, a).unwrap().sample(&g);
    let fc = Signal::from_fn(g, |t| t / 2.0 + (2.0 * a * t).sin() / (4.0 * a)).unwrap();
    let fs = Signal::from_fn(g, |t| (1.0 - (2.0 * a * t).cos()) / (4.0 * a)).unwrap();
    let r = wave_balance_residual(&p, &u, &du, &TransformPair { fc, fs, frequency: a }).unwrap();
    assert!(r.max_rel_residual <= 1e-12);
    assert_eq!(r.intervals, 2000);
}

#[test]
fn wave_balance_rk4_band_limited() {
    let forcings = [
        vec![(3.0, 1.0), (11.0, -0.4)],
        vec![(0.2, 0.3), (29.0, 1.0), (31.5, 0.7)],
        vec![(17.0, 1.0)],
        vec![(5.0, -1.0), (7.0, 1.0), (40.0, 0.1), (44.0, 0.5)],
    ];
    for a in [3.0, 17.0, 30.0] {
        let p = params(a);
        for terms in &forcings {
            let f = Forcing::CosineCombo { terms: terms.clone() };
            let g = TimeGrid::resolving(1.0, a.max(f.max_frequency()), 3000.0).unwrap();
            let (u, du) = integrate_second_order_ivp(&p, &f, &g).unwrap();
            let r = wave_balance_residual(&p, &u, &du, &transforms(&f, a, &g).unwrap()).unwrap();
            assert!(r.max_rel_residual <= 1e-8, "a={a}: {:e}", r.max_rel_residual);
        }
    }
}

#[test]
fn wave_balance_rejects_grid_mismatch() {
    let p = params(3.0);
    let g1 = TimeGrid::new(1.0, 100).unwrap();
    let g2 = TimeGrid::new(1.0, 102).unwrap();
    let pair = transforms(&Forcing::Cosine { omega: 1.0 }, 3.0, &g2).unwrap();
    assert!(wave_balance_residual(&p, &Signal::zeros(g1), &Signal::zeros(g1), &pair).is_err());
}

#[test]
fn initial_value_balances() {
    let a = 7.0;
    let p = params(a);
    let g = TimeGrid::new(1.0, 2000).unwrap();
    let zero = Forcing::constant(g, 0.0);
    for (gv, hv) in [(1.0, 0.0), (0.0, 2.0), (-0.3, 5.0)] {
        let r = balance_with_initial_values(&p, gv, hv, &zero, &g).unwrap();
        assert!(r.max_rel_residual <= 1e-10);
        let (u, du) = duhamel_wave_with_initial_values(&p, gv, hv, &zero, &g).unwrap();
        let exact = Signal::from_fn(g, |t| gv * (a * t).cos() + hv / a * (a * t).sin()).unwrap();
        assert!(u.sup_distance(&exact).unwrap() < 1e-13);
        let e: Vec<f64> = u.values().iter().zip(du.values()).map(|(u, v)| p.lambda * u * u + v * v).collect();
        let e0 = e[0];
        assert!(e.iter().all(|x| (x - e0).abs() <= 1e-10 * e0));
    }
    let f = Forcing::Cosine { omega: a };
    assert!(balance_with_initial_values(&p, 1.0, 0.0, &f, &g).unwrap().max_rel_residual <= 1e-8);
    let plain = balance_with_initial_values(&p, 0.0, 0.0, &f, &g).unwrap();
    let (u, du) = duhamel_wave(&p, &f, &g).unwrap();
    assert_eq!(plain, wave_balance_residual(&p, &u, &du, &transforms(&f, a, &g).unwrap()).unwrap());
}

#[test]
fn resonance_aware_norm() {
    let g = TimeGrid::new(1.0, 200).unwrap();
    assert_eq!(resonance_aware_data_norm_sq(&params(3.0), &Forcing::constant(g, 0.0), &g).unwrap(), 0.0);
    for k in 10..=14 {
        let a = 2.0 * PI * k as f64;
        let p = params(a);
        let f = Forcing::Cosine { omega: a };
        let g = TimeGrid::resolving(1.0, a, 400.0).unwrap();
        let data = data_norm_sq(&p, &Signal::new(g, f.sample(&g).unwrap()).unwrap());
        let ratio = resonance_aware_data_norm_sq(&p, &f, &g).unwrap() / data;
        let mu = a * a;
        assert!((ratio / (mu / 6.0) - 1.0).abs() < 0.1, "k={k}: {ratio}");
    }
}

#[test]
fn damped_balance_examples() {
    let (lambda, rho) = (5.0, 2.0);
    let g = TimeGrid::new(1.0, 2000).unwrap();
    let zero = Forcing::constant(g, 0.0);
    let r = damped_balance_residual(lambda, rho, &Signal::zeros(g), &Signal::zeros(g), &zero, &g).unwrap();
    assert_eq!(r.max_abs_residual, 0.0);
    let one = Forcing::constant(g, 1.0);
    let (u, du) = damped_oracle(lambda, rho, &one, &g);
    assert!(damped_balance_residual(lambda, rho, &u, &du, &one, &g).unwrap().max_rel_residual <= 1e-8);
    let plain = damped_balance_residual_with(lambda, rho, &u, &du, &one, &g, DampedVelocity::Plain).unwrap();
    assert!(plain.max_rel_residual > 1e-2);
    let (u, du) = solve_damped(lambda, rho, &one, &g).unwrap();
    assert!(damped_balance_residual(lambda, rho, &u, &du, &one, &g).unwrap().max_rel_residual <= 1e-8);
}

#[test]
fn damped_balance_rejects_overdamped() {
    let g = TimeGrid::new(1.0, 100).unwrap();
    let z = Signal::zeros(g);
    let r = damped_balance_residual(2.0, 6.0, &z, &z, &Forcing::constant(g, 1.0), &g);
    assert!(matches!(r, Err(Error::Unsupported(_))));
    assert!(damped_balance_residual(1.0, 2.0, &z, &z, &Forcing::constant(g, 1.0), &g).is_err());
}

#[test]
fn damped_resonant_source_grows() {
    let (lambda, rho, horizon) = (5.0, 2.0, 1.0);
    let eta: f64 = 4.0;
    let s = eta.sqrt();
    let g = TimeGrid::new(horizon, 2000).unwrap();
    let f = Forcing::DampedResonant { rho, eta, horizon };
    let pair = damped_transforms(lambda, rho, &f, &g).unwrap();
    let k = (rho * horizon / 2.0).exp();
    let fs = Signal::from_fn(g, |t| k * (t / 2.0 - (2.0 * s * t).sin() / (4.0 * s))).unwrap();
    assert!(pair.fs.sup_distance(&fs).unwrap() < 1e-8);
    let e: Vec<f64> = g
        .nodes()
        .iter()
        .zip(pair.fc.values().iter().zip(pair.fs.values()))
        .map(|(t, (c, s))| (rho * t).exp() * (c * c + s * s))
        .collect();
    // E(t)/t increasing on the second half of the interval.
    let n = g.intervals();
    let nodes = g.nodes();
    assert!((n / 2..n).all(|i| e[i + 1] / nodes[i + 1] > e[i] / nodes[i]));
    let (u, du) = damped_oracle(lambda, rho, &f, &g);
    assert!(damped_balance_residual(lambda, rho, &u, &du, &f, &g).unwrap().max_rel_residual <= 1e-8);
}

#[test]
fn heat_estimates_unit_case() {
    let g = TimeGrid::new(1.0, 2000).unwrap();
    let e = heat_transform_and_estimates(1.0, &Forcing::constant(g, 1.0), &g).unwrap();
    let em1 = (-1f64).exp();
    let lhs = 1.0 - 2.0 * (1.0 - em1) + (1.0 - em1 * em1) / 2.0;
    assert!((e.lhs - lhs).abs() < 1e-10);
    assert!((e.lhs - 0.16809124072457832).abs() < 1e-10);
    assert!((e.rhs - 1.0).abs() < 1e-14);
    assert!((e.du_sq - 0.43233235838169365).abs() < 1e-10);
    assert!((e.weighted_u_sq - 0.16809124072457832).abs() < 1e-10);
    assert!((e.boundary - 0.39957640089372803).abs() < 1e-10);
    assert!(e.exact_balance_residual <= 1e-8);
    // Without the boundary term the identity is off by exactly λu(T)².
    assert!((e.uncorrected_gap - e.boundary / e.f_sq).abs() < 1e-10);
    assert!((e.scaled_transform.last() - (1.0 - em1)).abs() < 1e-10);
}

#[test]
fn heat_estimates_large_rate() {
    // λh = 2.5: the e^{−λt} layer is not resolved, the estimate still holds.
    let g = TimeGrid::new(2.0, 4000).unwrap();
    let e = heat_transform_and_estimates(5e3, &Forcing::Cosine { omega: 3.0 }, &g).unwrap();
    assert!(e.lhs.is_finite() && e.lhs <= e.rhs);
    assert!(e.exact_balance_residual > 1e-6);
    // λh = 0.025 resolves it.
    let g = TimeGrid::new(2.0, 400_000).unwrap();
    let e = heat_transform_and_estimates(5e3, &Forcing::Cosine { omega: 3.0 }, &g).unwrap();
    assert!(e.exact_balance_residual <= 1e-8);
}

#[test]
fn schrodinger_balance_examples() {
    let lambda = 4.0;
    let g = TimeGrid::new(1.0, 1000).unwrap();
    let zero = Forcing::ComplexSampled(ComplexSignal::zeros(g));
    assert_eq!(schrodinger_balance_residual(lambda, &ComplexSignal::zeros(g), &zero, &g).unwrap().max_abs_residual, 0.0);
    let f = Forcing::ComplexSampled(ComplexSignal::from_fn(g, |t| Complex64::new(0.0, lambda * t).exp()).unwrap());
    let (fc, fs) = schrodinger_transforms(lambda, &f, &g).unwrap();
    for ((t, c), s) in g.nodes().iter().zip(fc.values()).zip(fs.values()) {
        let rhs = (c.re + s.im).powi(2) + (s.re - c.im).powi(2);
        assert!((rhs - t * t).abs() < 1e-8);
    }
    let FirstOrderSolution::Schrodinger(u) = integrate_first_order_ivp(lambda, &f, &g, FirstOrderKind::Schrodinger).unwrap() else {
        unreachable!()
    };
    assert!(schrodinger_balance_residual(lambda, &u, &f, &g).unwrap().max_rel_residual <= 1e-8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rotation_orthogonal(nu in -1e3..1e3f64, t in 0.0..10.0f64) {
        let r = rotation(nu, t);
        for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let v = r[x][0] * r[y][0] + r[x][1] * r[y][1];
            let e = if x == y { 1.0 } else { 0.0 };
            prop_assert!((v - e).abs() <= 4.0 * f64::EPSILON);
        }
    }

    #[test]
    fn norm_equivalence(e in 0usize..=6, terms in prop::collection::vec((0.0..2.0f64, -1.0..1.0f64), 1..4)) {
        let lambda = 10f64.powi(e as i32);
        let p = ModeParams::new(lambda, 1.0, 1.0).unwrap();
        let a = p.omega_res();
        let f = Forcing::CosineCombo { terms: terms.iter().map(|(s, c)| (0.05 + s * a, *c)).collect() };
        let g = TimeGrid::resolving(1.0, a.max(f.max_frequency()), 200.0).unwrap();
        let (u, du) = duhamel_wave(&p, &f, &g).unwrap();
        let r = solution_energy_norm_sq(&p, &u, &du, &f).unwrap() / resonance_aware_data_norm_sq(&p, &f, &g).unwrap();
        prop_assert!((1.0 / 3.0..=3.0).contains(&r), "ratio {}", r);
    }

    #[test]
    fn heat_critical_estimate(e in 0.0..4.0f64, terms in prop::collection::vec((0.1..60.0f64, -1.0..1.0f64), 1..4)) {
        let lambda = 10f64.powf(e);
        let f = Forcing::CosineCombo { terms };
        let g = TimeGrid::resolving(1.0, f.max_frequency(), 400.0).unwrap();
        let est = heat_transform_and_estimates(lambda, &f, &g).unwrap();
        prop_assert!(est.lhs <= est.rhs);
        // The isometry needs λh ≤ 0.05 to resolve the initial layer.
        let n = g.intervals().max((20.0 * lambda).ceil() as usize);
        let g = TimeGrid::new(1.0, n + n % 2).unwrap();
        let est = heat_transform_and_estimates(lambda, &f, &g).unwrap();
        prop_assert!(est.exact_balance_residual <= 1e-8, "{:e}", est.exact_balance_residual);
    }

    #[test]
    fn schrodinger_balance_random(e in 0usize..3, coeffs in prop::collection::vec((-2.0..2.0f64, -1.0..1.0f64, -1.0..1.0f64), 1..4)) {
        let lambda = 10f64.powi(e as i32);
        let g = TimeGrid::resolving(1.0, 2.0 * lambda, 3000.0).unwrap();
        let f = Forcing::ComplexSampled(ComplexSignal::from_fn(g, |t| {
            coeffs.iter().map(|(w, re, im)| Complex64::new(*re, *im) * Complex64::new(0.0, w * lambda * t).exp()).sum()
        }).unwrap());
        let FirstOrderSolution::Schrodinger(u) = integrate_first_order_ivp(lambda, &f, &g, FirstOrderKind::Schrodinger).unwrap() else {
            unreachable!()
        };
        prop_assert!(schrodinger_balance_residual(lambda, &u, &f, &g).unwrap().max_rel_residual <= 1e-8);
    }
}
