//! Invariant suites run by the `verify` command.
//!
//! Every check reports a measured value against a bound taken from
//! [`crate::tolerances`]. Random draws use a fixed seed, so reports are
//! reproducible.

use std::f64::consts::PI;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_form::{duhamel_wave, solve_schrodinger, solve_wave_cosine, WaveBranch, DELTA_RES};
use crate::energy::{
    damped_balance_residual, heat_transform_and_estimates, resonance_aware_data_norm_sq, rotation,
    schrodinger_balance_residual, solution_energy_norm_sq, transforms, wave_balance_residual,
};
use crate::error::{domain, Result};
use crate::fourier::{diagonal_dominance_audit, quadratic_form_eval, FourierBlock};
use crate::gauss;
use crate::modal::{ComplexSignal, Forcing, ModeParams, Signal, TimeGrid};
use crate::norms::{amplification_constant, amplification_limits, data_norm_sq, infsup_ratio, trial_norm_sq};
use crate::oracle::{integrate_first_order_ivp, integrate_second_order_ivp, FirstOrderKind, FirstOrderSolution};
use crate::tolerances as tol;
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    ClosedForm,
    Balances,
    Fourier,
    Heat,
    Infsup,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["all", "closed-form", "balances", "fourier", "heat", "infsup"];
}

impl FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Suite::All,
            "closed-form" => Suite::ClosedForm,
            "balances" => Suite::Balances,
            "fourier" => Suite::Fourier,
            "heat" => Suite::Heat,
            "infsup" => Suite::Infsup,
            other => return Err(domain(format!("unknown suite {other:?}, expected one of {:?}", Suite::NAMES))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
    Below(f64),
    Above(f64),
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::AtMost(v) => write!(f, "<= {v:.3e}"),
            Bound::AtLeast(v) => write!(f, ">= {v:.3e}"),
            Bound::Below(v) => write!(f, "< {v:.3e}"),
            Bound::Above(v) => write!(f, "> {v:.3e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub bound: Bound,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, measured: f64, bound: Bound) -> Self {
        let passed = match bound {
            Bound::AtMost(b) => measured <= b,
            Bound::AtLeast(b) => measured >= b,
            Bound::Below(b) => measured < b,
            Bound::Above(b) => measured > b,
        };
        Check { name: name.into(), measured, bound, passed }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    /// Free-form tables printed after the checks.
    pub tables: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "[{}] {:<58} measured {:.6e}  bound {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.bound
            );
        }
        for t in &self.tables {
            out.push('\n');
            out.push_str(t);
        }
        let _ = writeln!(out, "\n{} checks, {} failed", self.checks.len(), self.failures());
        out
    }
}

pub fn run_suite(suite: Suite) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let parts: &[fn(&mut VerifyReport) -> Result<()>] = match suite {
        Suite::All => &[closed_form, balances, fourier, heat, infsup],
        Suite::ClosedForm => &[closed_form],
        Suite::Balances => &[balances],
        Suite::Fourier => &[fourier],
        Suite::Heat => &[heat],
        Suite::Infsup => &[infsup],
    };
    for part in parts {
        part(&mut report)?;
    }
    Ok(report)
}

fn grid_for(freq: f64, ppp: f64) -> Result<TimeGrid> {
    TimeGrid::resolving(1.0, freq, ppp)
}

fn combo(rng: &mut ChaCha8Rng, max_freq: f64, terms: usize) -> Forcing {
    Forcing::CosineCombo {
        terms: (0..terms)
            .map(|_| (rng.random_range(0.1..max_freq), rng.random_range(-1.0..1.0)))
            .collect(),
    }
}

fn closed_form(report: &mut VerifyReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut draws: Vec<(f64, f64)> =
        (0..8).map(|_| (rng.random_range(1.0..300.0), rng.random_range(0.1..400.0))).collect();
    draws[0].1 = draws[0].0 * (1.0 + 0.5 * DELTA_RES);
    let mut oracle_err = 0.0f64;
    let mut identity_err = 0.0f64;
    for (a, w) in draws {
        let p = ModeParams::from_sqrt_mu(a, 1.0, 1.0)?;
        let grid = grid_for(a.max(w), tol::SUITE_POINTS_PER_PERIOD)?;
        let f = Forcing::Cosine { omega: w };
        let (u, _) = solve_wave_cosine(&p, w)?.sample(&grid);
        let (ur, _) = integrate_second_order_ivp(&p, &f, &grid)?;
        oracle_err = oracle_err.max(u.sup_distance(&ur)? / u.sup_norm());
        let trial = trial_norm_sq(&p, &u, &f)?;
        let data = data_norm_sq(&p, &Signal::new(grid, f.sample(&grid)?)?);
        let c = amplification_constant(&p, w)?;
        identity_err = identity_err.max((trial - (1.0 + c) * data).abs() / trial);
    }
    report.checks.push(Check::new(
        "cosine response vs RK4 oracle (sup, rel. to max|u|)",
        oracle_err,
        Bound::AtMost(tol::CLOSED_FORM_VS_ORACLE),
    ));
    report.checks.push(Check::new(
        "trial norm = (1 + C) * data norm by Simpson",
        identity_err,
        Bound::AtMost(tol::AMPLIFICATION_IDENTITY),
    ));

    // The resonant constant against Gauss-Legendre quadrature of the trial norm.
    let mut worst = 0.0f64;
    for k in [1.0, 4.0, 25.0] {
        let a = 2.0 * PI * k;
        let p = ModeParams::from_sqrt_mu(a, 1.0, 1.0)?;
        let sol = solve_wave_cosine(&p, a)?;
        let lambda = p.lambda;
        let panels = (4.0 * k) as usize * 8;
        let trial = gauss::composite(
            |t| {
                let (u, _) = sol.eval(t);
                let g = (a * t).cos() - lambda * u;
                lambda * u * u + g * g / lambda
            },
            0.0,
            1.0,
            panels,
            20,
        );
        let data = gauss::composite(|t| (a * t).cos().powi(2) / lambda, 0.0, 1.0, panels, 20);
        let c = amplification_constant(&p, a)?;
        worst = worst.max(((trial / data - 1.0) - c).abs() / c);
    }
    report.checks.push(Check::new(
        "resonant C vs Gauss-Legendre trial norm, sqrt(mu)=2pi k",
        worst,
        Bound::AtMost(tol::RESONANT_VALUE),
    ));

    let mut branch = 0.0f64;
    for a in [2.0 * PI, 37.0, 250.0] {
        let p = ModeParams::from_sqrt_mu(a, 1.0, 1.0)?;
        let w = a * (1.0 + DELTA_RES);
        let sol = solve_wave_cosine(&p, w)?;
        let scale = 1.0 / (2.0 * a);
        for i in 0..=200 {
            let t = i as f64 / 200.0;
            let (u1, _) = sol.eval_branch(WaveBranch::Resonant, t);
            let (u2, _) = sol.eval_branch(WaveBranch::NonResonant, t);
            branch = branch.max((u1 - u2).abs() / scale);
        }
    }
    report.checks.push(Check::new(
        "resonant and non-resonant branches at window edge",
        branch,
        Bound::AtMost(tol::BRANCH_CONTINUITY),
    ));

    let mut limit = 0.0f64;
    for k in 1..=5 {
        let p = ModeParams::from_sqrt_mu(2.0 * PI * k as f64, 1.0, 1.0)?;
        let (lo, _) = amplification_limits(&p);
        let c = amplification_constant(&p, 1e-6)?;
        limit = limit.max((lo - 1.0).abs()).max((c - lo).abs());
    }
    report.checks.push(Check::new(
        "C -> 1 as omega -> 0 for sqrt(mu) T = 2 pi k",
        limit,
        Bound::AtMost(1e-6),
    ));
    Ok(())
}

fn balances(report: &mut VerifyReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..6 {
        let a = rng.random_range(1.0..40.0);
        let p = ModeParams::from_sqrt_mu(a, 1.0, 1.0)?;
        let f = combo(&mut rng, 40.0, 4);
        let grid = grid_for(a.max(f.max_frequency()), 3000.0)?;
        let (u, du) = integrate_second_order_ivp(&p, &f, &grid)?;
        let pair = transforms(&f, a, &grid)?;
        worst = worst.max(wave_balance_residual(&p, &u, &du, &pair)?.max_rel_residual);
    }
    report.checks.push(Check::new("wave energy balance, RK4 solutions", worst, Bound::AtMost(tol::BALANCE)));

    let mut orth = 0.0f64;
    for i in 0..=500 {
        let r = rotation(7.3, i as f64 / 500.0);
        for (x, y) in [(0, 0), (0, 1), (1, 1)] {
            let v = r[x][0] * r[y][0] + r[x][1] * r[y][1];
            orth = orth.max((v - if x == y { 1.0 } else { 0.0 }).abs());
        }
    }
    report.checks.push(Check::new("rotation orthogonality", orth, Bound::AtMost(4.0 * f64::EPSILON)));

    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for e in 0..=6 {
        let p = ModeParams::new(10f64.powi(e), 1.0, 1.0)?;
        let a = p.omega_res();
        let mut forcings = vec![Forcing::Cosine { omega: a }];
        forcings.push(combo(&mut rng, 2.0 * a + 5.0, 3));
        for f in forcings {
            let grid = grid_for(a.max(f.max_frequency()), 200.0)?;
            let (u, du) = duhamel_wave(&p, &f, &grid)?;
            let r = solution_energy_norm_sq(&p, &u, &du, &f)? / resonance_aware_data_norm_sq(&p, &f, &grid)?;
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    report.checks.push(Check::new("energy-balance norm ratio, lower", lo, Bound::AtLeast(tol::EQUIVALENCE_LOWER)));
    report.checks.push(Check::new("energy-balance norm ratio, upper", hi, Bound::AtMost(tol::EQUIVALENCE_UPPER)));

    let (lambda, rho) = (5.0, 2.0);
    let grid = TimeGrid::new(1.0, 4000)?;
    let mut damped = 0.0f64;
    for f in [Forcing::constant(grid, 1.0), Forcing::Cosine { omega: 3.0 }] {
        if let FirstOrderSolution::Damped { u, uprime } =
            integrate_first_order_ivp(lambda, &f, &grid, FirstOrderKind::Damped { rho })?
        {
            damped = damped.max(damped_balance_residual(lambda, rho, &u, &uprime, &f, &grid)?.max_rel_residual);
        }
    }
    report.checks.push(Check::new("damped balance, shifted velocity", damped, Bound::AtMost(tol::BALANCE)));

    let mut schr = 0.0f64;
    for lambda in [1.0, 10.0, 100.0] {
        let grid = grid_for(2.0 * lambda, 3000.0)?;
        let f = Forcing::ComplexSampled(ComplexSignal::from_fn(grid, |t| {
            Complex64::new((1.5 * lambda * t).cos(), 0.3) + Complex64::new(0.0, -0.5 * lambda * t).exp()
        })?);
        if let FirstOrderSolution::Schrodinger(u) =
            integrate_first_order_ivp(lambda, &f, &grid, FirstOrderKind::Schrodinger)?
        {
            schr = schr.max(schrodinger_balance_residual(lambda, &u, &f, &grid)?.max_rel_residual);
        }
    }
    report.checks.push(Check::new("Schroedinger balance, frequency lambda", schr, Bound::AtMost(tol::BALANCE)));

    let lambda = 4.0;
    let grid = grid_for(lambda, 2000.0)?;
    let f = Forcing::ComplexSampled(ComplexSignal::from_fn(grid, |t| Complex64::new(0.0, lambda * t).exp())?);
    let u = solve_schrodinger(lambda, &f, &grid)?;
    let modulus = grid.nodes().iter().zip(u.values()).fold(0.0f64, |m, (t, z)| m.max((z.norm() - t).abs()));
    report.checks.push(Check::new("resonant Schroedinger |u(t)| = t", modulus, Bound::AtMost(1e-8)));
    Ok(())
}

fn fourier(report: &mut VerifyReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for a in [3.0, 4.0 * PI] {
        let p = ModeParams::from_sqrt_mu(a, 1.0, 1.0)?;
        let block = FourierBlock::assemble(&p, 8)?;
        let coeffs: Vec<f64> = (0..8).map(|_| rng.random_range(-1.0..1.0)).collect();
        let f = Forcing::CosineCombo { terms: block.frequencies.iter().copied().zip(coeffs.iter().copied()).collect() };
        let grid = grid_for(a.max(f.max_frequency()), 600.0)?;
        let (u, _) = duhamel_wave(&p, &f, &grid)?;
        let trial = trial_norm_sq(&p, &u, &f)?;
        worst = worst.max((quadratic_form_eval(&block, &coeffs)? - trial).abs() / trial);
    }
    report.checks.push(Check::new("quadratic form vs trial norm, J = 8", worst, Bound::AtMost(tol::QUADRATIC_FORM)));

    let p = ModeParams::from_sqrt_mu(200.0, 1.0, 1.0)?;
    let block = FourierBlock::assemble(&p, 64)?;
    let mut diag = 0.0f64;
    let mut asym = 0.0f64;
    for (j, w) in block.frequencies.iter().enumerate() {
        let expected = (1.0 + amplification_constant(&p, *w)?) / (2.0 * p.lambda);
        diag = diag.max((block.matrix[(j, j)] - expected).abs() / expected);
        for l in 0..j {
            asym = asym.max((block.matrix[(j, l)] - block.matrix[(l, j)]).abs());
        }
    }
    report.checks.push(Check::new("kernel diagonal = (1 + C) T/(2 lambda)", diag, Bound::AtMost(tol::KERNEL_DIAGONAL)));
    report.checks.push(Check::new("kernel block symmetry", asym, Bound::AtMost(0.0)));
    report.checks.push(Check::new(
        "kernel block smallest eigenvalue, sqrt(mu)=200, J=64",
        block.min_eigenvalue(),
        Bound::Above(0.0),
    ));
    let audit = diagonal_dominance_audit(&block);
    report.checks.push(Check::new(
        "rows violating diagonal dominance, sqrt(mu)=200, J=64",
        audit.violating_rows.len() as f64,
        Bound::AtLeast(1.0),
    ));
    Ok(())
}

fn heat(report: &mut VerifyReport) -> Result<()> {
    let grid = TimeGrid::new(1.0, 2000)?;
    let est = heat_transform_and_estimates(1.0, &Forcing::constant(grid, 1.0), &grid)?;
    report.checks.push(Check::new(
        "heat isometry with boundary term, lambda=1, f=1",
        est.exact_balance_residual,
        Bound::AtMost(tol::HEAT_BALANCE),
    ));
    let FirstOrderSolution::Heat(ur) = integrate_first_order_ivp(1.0, &Forcing::constant(grid, 1.0), &grid, FirstOrderKind::Heat)?
    else {
        unreachable!("heat oracle returns a heat solution")
    };
    report.checks.push(Check::new(
        "heat solution vs RK4 oracle",
        est.scaled_transform.sup_distance(&ur)?,
        Bound::AtMost(1e-10),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ratio = 0.0f64;
    for _ in 0..20 {
        let lambda = 10f64.powf(rng.random_range(0.0..4.0));
        let f = combo(&mut rng, 60.0, 3);
        let g = grid_for(f.max_frequency(), 400.0)?;
        let e = heat_transform_and_estimates(lambda, &f, &g)?;
        ratio = ratio.max(e.lhs / e.rhs);
    }
    report.checks.push(Check::new("critical estimate lhs/rhs, 20 draws", ratio, Bound::AtMost(1.0)));
    report.tables.push(format!(
        "heat mode, lambda = 1, f = 1:\n  critical estimate lhs / rhs = {:.5} / {:.1}\n  |u'|^2 + lambda^2|u|^2 + lambda u(T)^2 = {:.5} + {:.5} + {:.5} = {:.8}\n",
        est.lhs,
        est.rhs,
        est.du_sq,
        est.weighted_u_sq,
        est.boundary,
        est.du_sq + est.weighted_u_sq + est.boundary
    ));
    Ok(())
}

fn infsup(report: &mut VerifyReport) -> Result<()> {
    let ratios = (1..=50)
        .map(|k| Ok(infsup_ratio(&ModeParams::from_sqrt_mu(2.0 * PI * k as f64, 1.0, 1.0)?)))
        .collect::<Result<Vec<f64>>>()?;
    let increase = ratios.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
    report.checks.push(Check::new("inf-sup ratio largest step, k = 1..50", increase, Bound::Below(0.0)));
    report.checks.push(Check::new(
        "inf-sup ratio max over k >= 4",
        ratios[3..].iter().copied().fold(0.0, f64::max),
        Bound::Below(tol::INFSUP_BOUND),
    ));
    let mut table = String::from("inf-sup ratio, sqrt(mu_k) = 2 pi k, T = 1, c = 1:\n     k  ratio\n");
    for (k, r) in ratios.iter().enumerate() {
        let _ = writeln!(table, "  {:>4}  {r:.10}", k + 1);
    }
    report.tables.push(table);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert!(name.parse::<Suite>().is_ok());
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn bounds() {
        assert!(Check::new("x", 1.0, Bound::AtMost(1.0)).passed);
        assert!(!Check::new("x", 1.1, Bound::AtMost(1.0)).passed);
        assert!(Check::new("x", 3.0, Bound::AtLeast(1.0)).passed);
        assert!(!Check::new("x", f64::NAN, Bound::AtLeast(1.0)).passed);
    }

    #[test]
    fn infsup_suite_prints_table() {
        let r = run_suite(Suite::Infsup).unwrap();
        assert!(r.passed());
        let text = r.render();
        assert!(text.contains("    50  "));
    }
}
