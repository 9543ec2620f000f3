//! Analytic mode solutions: undamped and damped waves, heat and Schrödinger.
//!
//! General forcings go through Duhamel's formula. The convolution kernels are
//! split by the angle-addition rule into products of node functions and running
//! integrals of the forcing, the same transforms used by the energy balances.

use num_complex::Complex64;

use crate::energy::{phase_transforms, phase_transforms_complex};
use crate::error::{domain, Error, Result};
use crate::modal::{ComplexSignal, Forcing, ModeParams, Signal, TimeGrid};
use crate::quadrature::cumulative;
use crate::special::sinc;

/// Relative half-width of the resonance window around `√μ`.
pub const DELTA_RES: f64 = 1e-4;

/// True when `|ω − √μ| ≤ δ_res·√μ`.
pub fn in_resonance_window(params: &ModeParams, omega: f64) -> bool {
    let a = params.omega_res();
    (omega - a).abs() <= DELTA_RES * a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveBranch {
    Resonant,
    NonResonant,
}

/// Response of one mode to `cos(ωt)` with zero initial data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveModeSolution {
    pub params: ModeParams,
    pub omega: f64,
    pub branch: WaveBranch,
}

/// Closed-form response to `f = cos(ωt)`.
pub fn solve_wave_cosine(params: &ModeParams, omega: f64) -> Result<WaveModeSolution> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(domain(format!("omega must be positive, got {omega}")));
    }
    let branch = if in_resonance_window(params, omega) {
        WaveBranch::Resonant
    } else {
        WaveBranch::NonResonant
    };
    Ok(WaveModeSolution { params: *params, omega, branch })
}

impl WaveModeSolution {
    /// `(u(t), u′(t))` on the selected branch.
    pub fn eval(&self, t: f64) -> (f64, f64) {
        self.eval_branch(self.branch, t)
    }

    /// `(u(t), u′(t))` on an explicitly chosen branch.
    ///
    /// The resonant branch is the factorized form
    /// `c²t/(√μ+ω)·sin((ω+√μ)t/2)·sinc((ω−√μ)t/2)`, exact for every ω and free of
    /// the `μ − ω²` cancellation; at `ω = √μ` it is `c²t/(2√μ)·sin(√μt)`.
    pub fn eval_branch(&self, branch: WaveBranch, t: f64) -> (f64, f64) {
        let c2 = self.params.c * self.params.c;
        let a = self.params.omega_res();
        let w = self.omega;
        match branch {
            WaveBranch::NonResonant => {
                let den = (a - w) * (a + w);
                let u = -2.0 * c2 / den * ((w + a) * t / 2.0).sin() * ((w - a) * t / 2.0).sin();
                let du = c2 * (a * (a * t).sin() - w * (w * t).sin()) / den;
                (u, du)
            }
            WaveBranch::Resonant => {
                let s = a + w;
                let u = c2 * t / s * (s * t / 2.0).sin() * sinc((w - a) * t / 2.0);
                let du = c2
                    * ((a * t).sin() + w * t * (s * t / 2.0).cos() * sinc((a - w) * t / 2.0))
                    / s;
                (u, du)
            }
        }
    }

    /// `u` and `u′` on the nodes of `grid`.
    pub fn sample(&self, grid: &TimeGrid) -> (Signal, Signal) {
        let (u, du): (Vec<f64>, Vec<f64>) = grid.nodes().into_iter().map(|t| self.eval(t)).unzip();
        (
            Signal::new(*grid, u).expect("closed form is finite"),
            Signal::new(*grid, du).expect("closed form is finite"),
        )
    }
}

/// Duhamel solution of `(1/c²)u″ + λu = f`, `u(0) = u′(0) = 0`.
pub fn duhamel_wave(params: &ModeParams, forcing: &Forcing, grid: &TimeGrid) -> Result<(Signal, Signal)> {
    duhamel_wave_with_initial_values(params, 0.0, 0.0, forcing, grid)
}

/// Duhamel solution with `u(0) = g`, `u′(0) = h`.
pub fn duhamel_wave_with_initial_values(
    params: &ModeParams,
    g: f64,
    h: f64,
    forcing: &Forcing,
    grid: &TimeGrid,
) -> Result<(Signal, Signal)> {
    let a = params.omega_res();
    grid.check_resolution(a.max(forcing.max_frequency()))?;
    let c2 = params.c * params.c;
    let f = forcing.sample(grid)?;
    let (fc, fs) = phase_transforms(&f, grid, a, 0.0);
    let mut u = Vec::with_capacity(grid.len());
    let mut du = Vec::with_capacity(grid.len());
    for (i, t) in grid.nodes().into_iter().enumerate() {
        let (s, c) = (a * t).sin_cos();
        let p = fc[i] + h / c2;
        let q = fs[i] - a * g / c2;
        u.push(c2 / a * (s * p - c * q));
        du.push(c2 * (c * p + s * q));
    }
    Ok((Signal::new(*grid, u)?, Signal::new(*grid, du)?))
}

/// Solution of `u″ + ρu′ + λu = f` with zero initial data.
///
/// Underdamped (`4λ > ρ²`) and overdamped (`4λ < ρ²`) regimes; critical damping
/// is refused.
pub fn solve_damped(lambda: f64, rho: f64, forcing: &Forcing, grid: &TimeGrid) -> Result<(Signal, Signal)> {
    check_positive("lambda", lambda)?;
    check_positive("rho", rho)?;
    let disc = 4.0 * lambda - rho * rho;
    if disc.abs() <= 1e-12 * 4.0 * lambda {
        return Err(Error::Unsupported("critical damping 4λ = ρ²".into()));
    }
    let f = forcing.sample(grid)?;
    let n = grid.len();
    if disc > 0.0 {
        let s = (disc / 4.0).sqrt();
        grid.check_resolution(s.max(forcing.max_frequency()))?;
        let (gc, gs) = phase_transforms(&f, grid, s, rho / 2.0);
        let mut u = Vec::with_capacity(n);
        let mut du = Vec::with_capacity(n);
        for (i, t) in grid.nodes().into_iter().enumerate() {
            let (sn, cs) = (s * t).sin_cos();
            let ui = (sn * gc[i] - cs * gs[i]) / s;
            let v = cs * gc[i] + sn * gs[i];
            u.push(ui);
            du.push(v - rho / 2.0 * ui);
        }
        Ok((Signal::new(*grid, u)?, Signal::new(*grid, du)?))
    } else {
        grid.check_resolution(forcing.max_frequency())?;
        let kappa = (rho * rho / 4.0 - lambda).sqrt();
        let r2 = rho / 2.0 + kappa;
        let r1 = lambda / r2;
        let h = grid.step();
        let i1 = cumulative(&f, h, r1);
        let i2 = cumulative(&f, h, r2);
        let u: Vec<f64> = i1.iter().zip(&i2).map(|(a, b)| (a - b) / (2.0 * kappa)).collect();
        let du: Vec<f64> = i1
            .iter()
            .zip(&i2)
            .map(|(a, b)| (-r1 * a + r2 * b) / (2.0 * kappa))
            .collect();
        Ok((Signal::new(*grid, u)?, Signal::new(*grid, du)?))
    }
}

/// Solution of `u′ + λu = f`, `u(0) = 0`, as `∫₀ᵗ e^{−λ(t−s)} f(s) ds`.
///
/// The decaying weight stays under the integral, so nothing overflows for large `λT`.
pub fn solve_heat(lambda: f64, forcing: &Forcing, grid: &TimeGrid) -> Result<Signal> {
    check_positive("lambda", lambda)?;
    grid.check_resolution(forcing.max_frequency())?;
    let f = forcing.sample(grid)?;
    Signal::new(*grid, cumulative(&f, grid.step(), lambda))
}

/// Solution of `iu′ + λu = f`, `u(0) = 0`, as `−i·e^{iλt}∫₀ᵗ e^{−iλs} f(s) ds`.
pub fn solve_schrodinger(lambda: f64, forcing: &Forcing, grid: &TimeGrid) -> Result<ComplexSignal> {
    check_positive("lambda", lambda)?;
    grid.check_resolution(lambda.max(forcing.max_frequency()))?;
    let f = forcing.sample_complex(grid)?;
    let (fc, fs) = phase_transforms_complex(&f, grid, lambda);
    let u = grid
        .nodes()
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let p = fc[i].re + fs[i].im;
            let q = fs[i].re - fc[i].im;
            let (s, c) = (lambda * t).sin_cos();
            Complex64::new(p * s - q * c, -(p * c + q * s))
        })
        .collect();
    ComplexSignal::new(*grid, u)
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive, got {v}")))
    }
}
