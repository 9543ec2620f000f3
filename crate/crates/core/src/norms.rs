//! Trial and data norms of one mode, the amplification constant `C_{k,ω}` and
//! the inf-sup ratio, plus the spectral Bochner norms over several modes.
//!
//! For `f = cos(ωt)` the mode solution satisfies
//! `‖u‖²_U = (1 + C)·‖f‖²_{V*}` with `‖u‖²_U = λ‖u‖² + (1/(c⁴λ))‖u″‖²` and
//! `‖f‖²_{V*} = (1/λ)‖f‖²`. The resonant value of `C` used here is
//! `μ/(1+s)·[T²/6 − T²s/2 + cos(2√μT)/(4μ) − s/(4μ)]`, `s = sinc(2√μT)`,
//! which is the limit of the non-resonant expression and agrees with quadrature.

use rayon::prelude::*;

use crate::closed_form::{duhamel_wave, in_resonance_window};
use crate::energy::resonance_aware_data_norm_sq;
use crate::error::{domain, Result};
use crate::modal::{Forcing, ModeParams, NormReport, Signal, TimeGrid};
use crate::quadrature::{simpson_product, simpson_sq};
use crate::special::{one_minus_sinc_over_sq, sinc};

/// `λ‖u‖² + (1/(c⁴λ))‖u″‖²` with `u″ = c²(f − λu)` taken from the equation.
pub fn trial_norm_sq(params: &ModeParams, u: &Signal, forcing: &Forcing) -> Result<f64> {
    let grid = u.grid();
    let f = forcing.sample(grid)?;
    let lambda = params.lambda;
    // u″/c² = f − λu, so the second term is (1/λ)‖f − λu‖².
    let g: Vec<f64> = f.iter().zip(u.values()).map(|(f, u)| f - lambda * u).collect();
    let h = grid.step();
    Ok(lambda * simpson_sq(u.values(), h) + simpson_sq(&g, h) / lambda)
}

/// `(1/λ)‖f‖²_{L²(0,T)}`.
pub fn data_norm_sq(params: &ModeParams, f: &Signal) -> f64 {
    l2l2_norm_sq(f) / params.lambda
}

/// `‖f‖²_{L²(0,T)}`.
pub fn l2l2_norm_sq(f: &Signal) -> f64 {
    simpson_sq(f.values(), f.grid().step())
}

/// `∫₀ᵀ cos²(ωt) dt = T/2·(1 + sinc(2ωT))`.
pub fn cosine_l2_sq(horizon: f64, omega: f64) -> f64 {
    horizon / 2.0 * (1.0 + sinc(2.0 * omega * horizon))
}

/// `C_{k,ω}` such that `‖u_ω‖²_U = (1 + C)·‖cos(ω·)‖²_{V*}`.
///
/// Inside the resonance window the expression is evaluated in the variables
/// `p = (√μ+ω)T`, `q = (√μ−ω)T`, which removes the `(μ−ω²)²` cancellation and
/// reduces exactly to the resonant formula at `q = 0`.
pub fn amplification_constant(params: &ModeParams, omega: f64) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(domain(format!("omega must be positive, got {omega}")));
    }
    let t = params.horizon;
    let mu = params.mu();
    let a = params.omega_res();
    let w = omega;
    let pre = 2.0 * mu / (1.0 + sinc(2.0 * w * t));
    if in_resonance_window(params, omega) {
        let p = (a + w) * t;
        let q = (a - w) * t;
        let x = t * t * (p * p + q * q) / (2.0 * p * p) * one_minus_sinc_over_sq(q);
        let half = sinc(q / 2.0);
        let y = t * t / (2.0 * p * p * p)
            * (-(p * p / 2.0) * p.sin() * half * half + p * p.cos() * sinc(q) - p.sin());
        Ok(pre * (x + y))
    } else {
        let w2 = w * w;
        let d = mu - w2;
        let bracket = 1.0 - sinc((a + w) * t) - sinc((a - w) * t)
            + (mu * sinc(2.0 * a * t) + w2 * sinc(2.0 * w * t)) / (mu + w2);
        Ok(pre * (mu + w2) / (d * d) * bracket)
    }
}

/// Closed-form `C` at `ω = √μ`.
pub fn resonant_amplification(params: &ModeParams) -> f64 {
    let t = params.horizon;
    let mu = params.mu();
    let a = params.omega_res();
    let s = sinc(2.0 * a * t);
    mu / (1.0 + s) * (t * t / 6.0 - t * t / 2.0 * s + (2.0 * a * t).cos() / (4.0 * mu) - s / (4.0 * mu))
}

/// Limits of `C` as `ω → 0⁺` and `ω → ∞`.
pub fn amplification_limits(params: &ModeParams) -> (f64, f64) {
    let x = params.omega_res() * params.horizon;
    (1.0 - 2.0 * sinc(x) + sinc(2.0 * x), 0.0)
}

/// `1/√(1 + C_{k,√μ})`, the ratio `‖f‖_{V*}/‖u‖_U` at resonance.
pub fn infsup_ratio(params: &ModeParams) -> f64 {
    let c = amplification_constant(params, params.omega_res()).expect("resonance frequency is positive");
    1.0 / (1.0 + c).sqrt()
}

/// `Σ_k λ_k^s·‖w_k‖²_{L²(0,T)}` for `s ∈ [−1, 1]`.
pub fn bochner_norm_sq(modes: &[(f64, Signal)], s: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&s) {
        return Err(domain(format!("smoothness index s = {s} outside [-1, 1]")));
    }
    if let Some((first, rest)) = modes.split_first() {
        for (_, w) in rest {
            first.1.grid().ensure_same(w.grid())?;
        }
    }
    let mut total = 0.0;
    for (lambda, w) in modes {
        if !(lambda.is_finite() && *lambda > 0.0) {
            return Err(domain(format!("eigenvalue must be positive, got {lambda}")));
        }
        total += lambda.powf(s) * l2l2_norm_sq(w);
    }
    Ok(total)
}

/// `ω ↦ 1 + C_{k,ω}` on an increasing frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplificationCurve {
    pub params: ModeParams,
    pub omegas: Vec<f64>,
    pub values: Vec<f64>,
}

impl AmplificationCurve {
    /// Frequency and value of the largest entry.
    pub fn argmax(&self) -> (f64, f64) {
        let (i, v) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, v)| if *v > bv { (i, *v) } else { (bi, bv) });
        (self.omegas[i], v)
    }
}

/// Evaluates `1 + C` on `omegas` (in parallel).
pub fn amplification_curve(params: &ModeParams, omegas: &[f64]) -> Result<AmplificationCurve> {
    if omegas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(domain("sweep frequencies must be strictly increasing"));
    }
    let values = omegas
        .par_iter()
        .map(|w| amplification_constant(params, *w).map(|c| 1.0 + c))
        .collect::<Result<Vec<_>>>()?;
    Ok(AmplificationCurve { params: *params, omegas: omegas.to_vec(), values })
}

/// `n` equispaced frequencies from `lo` to `hi` inclusive.
pub fn linear_sweep(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && n >= 2) {
        return Err(domain(format!("invalid sweep [{lo}, {hi}] with {n} points")));
    }
    let step = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|i| if i == n - 1 { hi } else { lo + step * i as f64 }).collect())
}

/// All norms of the Duhamel solution for `forcing` on `grid`.
pub fn norm_report(params: &ModeParams, forcing: &Forcing, grid: &TimeGrid) -> Result<NormReport> {
    let (u, _) = duhamel_wave(params, forcing, grid)?;
    let f = Signal::new(*grid, forcing.sample(grid)?)?;
    let trial = trial_norm_sq(params, &u, forcing)?;
    let l2 = l2l2_norm_sq(&f);
    let data = l2 / params.lambda;
    let energy = resonance_aware_data_norm_sq(params, forcing, grid)?;
    let amplification = match forcing {
        Forcing::Cosine { omega } => Some(amplification_constant(params, *omega)?),
        _ => None,
    };
    let infsup = if trial > 0.0 { (data / trial).sqrt() } else { 0.0 };
    Ok(NormReport {
        trial_norm_sq: trial,
        data_norm_sq: data,
        l2l2_norm_sq: l2,
        energy_data_norm_sq: energy,
        amplification,
        infsup_ratio: infsup,
    })
}

/// `(u, v)` in `L²(0,T)` on a shared grid.
pub fn inner(a: &Signal, b: &Signal) -> Result<f64> {
    a.grid().ensure_same(b.grid())?;
    Ok(simpson_product(a.values(), b.values(), a.grid().step()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p(a: f64) -> ModeParams {
        ModeParams::from_sqrt_mu(a, 1.0, 1.0).unwrap()
    }

    #[test]
    fn resonant_value_matches_window_evaluation() {
        // 2π²/3 + 1/4
        let expected = 6.829736267392906;
        let c = amplification_constant(&p(2.0 * PI), 2.0 * PI).unwrap();
        assert!((c - expected).abs() < 1e-12 * expected);
        assert!((resonant_amplification(&p(2.0 * PI)) - expected).abs() < 1e-12 * expected);
        let c8 = amplification_constant(&p(8.0 * PI), 8.0 * PI).unwrap();
        assert!((c8 - 105.5257802782865).abs() < 1e-10 * c8);
    }

    #[test]
    fn limits() {
        let (z, inf) = amplification_limits(&p(2.0 * PI));
        assert!((z - 1.0).abs() < 1e-15);
        assert_eq!(inf, 0.0);
        let (z, inf) = amplification_limits(&p(PI / 2.0));
        assert!((z - (1.0 - 4.0 / PI)).abs() < 1e-15);
        assert!((z + 0.2732395447351627).abs() < 1e-15);
        assert_eq!(inf, 0.0);
        let c = amplification_constant(&p(2.0 * PI), 1e4).unwrap();
        assert!(c.abs() <= 1e-3);
        assert!((c - 7.9e-7).abs() < 1e-7);
    }

    #[test]
    fn resonant_value_bracketed_by_neighbours() {
        use crate::closed_form::DELTA_RES;
        for a in [1.0, 2.0 * PI, 10.0, 37.0, 100.0, 300.0] {
            let c0 = amplification_constant(&p(a), a).unwrap();
            let hi = amplification_constant(&p(a), a * (1.0 + 2.0 * DELTA_RES)).unwrap();
            let lo = amplification_constant(&p(a), a * (1.0 - 2.0 * DELTA_RES)).unwrap();
            let slack = 1e-4 * (1.0 + c0);
            assert!(c0 >= hi.min(lo) - slack && c0 <= hi.max(lo) + slack, "a = {a}");
        }
    }

    #[test]
    fn branches_agree_at_window_edge() {
        use crate::closed_form::DELTA_RES;
        for a in [1.0, 2.0 * PI, 37.0, 300.0] {
            for side in [1.0, -1.0] {
                let inside = amplification_constant(&p(a), a * (1.0 + side * DELTA_RES * (1.0 - 1e-9))).unwrap();
                let outside = amplification_constant(&p(a), a * (1.0 + side * DELTA_RES * (1.0 + 1e-9))).unwrap();
                assert!((inside - outside).abs() <= 1e-7 * (1.0 + inside.abs()), "a = {a}");
            }
        }
    }

    #[test]
    fn infsup_values() {
        assert!((infsup_ratio(&p(2.0 * PI)) - 0.3573768636385007).abs() < 1e-12);
        assert!((infsup_ratio(&p(8.0 * PI)) - 0.0968885905017209).abs() < 1e-12);
    }

    #[test]
    fn bochner_examples() {
        let g = TimeGrid::new(1.0, 4).unwrap();
        let one = Signal::from_fn(g, |_| 1.0).unwrap();
        assert!((bochner_norm_sq(&[(9.0, one.clone())], 1.0).unwrap() - 9.0).abs() < 1e-14);
        assert!((bochner_norm_sq(&[(9.0, one.clone())], -1.0).unwrap() - 1.0 / 9.0).abs() < 1e-15);
        assert!(bochner_norm_sq(&[(9.0, one)], 1.5).is_err());
    }

    #[test]
    fn data_norm_examples() {
        let g = TimeGrid::new(1.0, 64).unwrap();
        let one = Signal::from_fn(g, |_| 1.0).unwrap();
        let q = ModeParams::new(4.0, 1.0, 1.0).unwrap();
        assert!((data_norm_sq(&q, &one) - 0.25).abs() < 1e-14);
        assert!((l2l2_norm_sq(&one) - 1.0).abs() < 1e-14);
    }
}
