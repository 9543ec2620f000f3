//! The cosine-basis representation of the trial norm.
//!
//! On `(0, T)` the family `cos(ω_j t)`, `ω_j = (π/2 + jπ)/T`, `j = 0, 1, …`, is
//! complete and orthogonal with `‖cos(ω_j·)‖² = T/2`. Expanding
//! `f = Σ ĉ_j cos(ω_j t)` with `ĉ_j = (2/T)∫f cos(ω_j t)` gives
//! `‖u‖²_U = Σ_{j,ℓ} W(ω_j, ω_ℓ) ĉ_j ĉ_ℓ` for the kernel [`kernel_w`].

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;

use crate::closed_form::{in_resonance_window, solve_wave_cosine, WaveBranch};
use crate::error::{domain, shape, Result};
use crate::gauss;
use crate::modal::{Forcing, ModeParams, TimeGrid};
use crate::norms::amplification_constant;
use crate::quadrature::simpson;
use crate::special::sinc;

/// `ω_j = (π/2 + jπ)/T` for `j = 0..J`.
pub fn basis_frequencies(horizon: f64, count: usize) -> Result<Vec<f64>> {
    if count < 1 {
        return Err(domain("truncation J must be at least 1"));
    }
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(domain(format!("T must be positive, got {horizon}")));
    }
    let pi = std::f64::consts::PI;
    Ok((0..count).map(|j| (pi / 2.0 + j as f64 * pi) / horizon).collect())
}

/// Normalized coefficients `ĉ_j = (2/T)∫₀ᵀ f(t)cos(ω_j t)dt`, `j < J`, by Simpson on `grid`.
pub fn expand_coefficients(forcing: &Forcing, grid: &TimeGrid, count: usize) -> Result<Vec<f64>> {
    let horizon = grid.horizon();
    let omegas = basis_frequencies(horizon, count)?;
    grid.check_resolution(omegas[count - 1].max(forcing.max_frequency()))?;
    let f = forcing.sample(grid)?;
    let nodes = grid.nodes();
    let h = grid.step();
    Ok(omegas
        .iter()
        .map(|w| {
            let y: Vec<f64> = f.iter().zip(&nodes).map(|(f, t)| f * (w * t).cos()).collect();
            2.0 / horizon * simpson(&y, h)
        })
        .collect())
}

/// `(T/2)[sinc((α+β)T) + sinc((α−β)T)] = ∫₀ᵀ cos(αt)cos(βt)dt`.
fn cos_inner(horizon: f64, a: f64, b: f64) -> f64 {
    horizon / 2.0 * (sinc((a + b) * horizon) + sinc((a - b) * horizon))
}

/// Kernel `W(ω, ω̃) = λ(u_ω, u_ω̃) + (1/λ)(f_ω − λu_ω, f_ω̃ − λu_ω̃)`.
///
/// Outside the resonance window the five-term closed form is used. Inside it,
/// the diagonal is `(1 + C)·‖f_ω‖²/λ` (shared with the norms module) and
/// off-diagonal entries are integrated by composite Gauss–Legendre from the
/// cancellation-free mode solutions.
pub fn kernel_w(params: &ModeParams, omega: f64, omega_tilde: f64) -> Result<f64> {
    for w in [omega, omega_tilde] {
        if !(w.is_finite() && w > 0.0) {
            return Err(domain(format!("frequencies must be positive, got {w}")));
        }
    }
    // Fixed argument order makes the result bitwise symmetric.
    let (omega, omega_tilde) = if omega <= omega_tilde { (omega, omega_tilde) } else { (omega_tilde, omega) };
    let t = params.horizon;
    let lambda = params.lambda;
    let near = in_resonance_window(params, omega) || in_resonance_window(params, omega_tilde);
    if !near {
        return Ok(kernel_closed_form(params, omega, omega_tilde));
    }
    if omega == omega_tilde {
        let c = amplification_constant(params, omega)?;
        return Ok((1.0 + c) * cos_inner(t, omega, omega) / lambda);
    }
    let ua = solve_wave_cosine(params, omega)?;
    let ub = solve_wave_cosine(params, omega_tilde)?;
    let top = omega.max(omega_tilde) + params.omega_res();
    let panels = ((top * t / std::f64::consts::PI).ceil() as usize).max(4);
    let v = gauss::composite(
        |s| {
            let (u1, _) = ua.eval_branch(WaveBranch::Resonant, s);
            let (u2, _) = ub.eval_branch(WaveBranch::Resonant, s);
            let g1 = (omega * s).cos() - lambda * u1;
            let g2 = (omega_tilde * s).cos() - lambda * u2;
            lambda * u1 * u2 + g1 * g2 / lambda
        },
        0.0,
        t,
        panels,
        20,
    );
    Ok(v)
}

fn kernel_closed_form(params: &ModeParams, w: f64, wt: f64) -> f64 {
    let t = params.horizon;
    let mu = params.mu();
    let a = params.omega_res();
    let c2 = params.c * params.c;
    let first = cos_inner(t, w, wt) / params.lambda;
    let bracket = mu * (1.0 + sinc(2.0 * a * t))
        + (w * w + wt * wt) / 2.0 * (sinc((w - wt) * t) + sinc((w + wt) * t))
        - (mu + w * w) / 2.0 * (sinc((a - w) * t) + sinc((a + w) * t))
        - (mu + wt * wt) / 2.0 * (sinc((a - wt) * t) + sinc((a + wt) * t));
    first + c2 * t / ((mu - w * w) * (mu - wt * wt)) * bracket
}

/// Truncated `J×J` kernel matrix on the basis frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierBlock {
    pub params: ModeParams,
    pub frequencies: Vec<f64>,
    pub matrix: DMatrix<f64>,
}

impl FourierBlock {
    /// Assembles `W(ω_j, ω_ℓ)` for `j, ℓ < J`; the upper triangle is mirrored.
    pub fn assemble(params: &ModeParams, count: usize) -> Result<Self> {
        let frequencies = basis_frequencies(params.horizon, count)?;
        let rows: Vec<Vec<f64>> = (0..count)
            .into_par_iter()
            .map(|j| {
                (j..count)
                    .map(|l| kernel_w(params, frequencies[j], frequencies[l]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut matrix = DMatrix::zeros(count, count);
        for (j, row) in rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                matrix[(j, j + k)] = *v;
                matrix[(j + k, j)] = *v;
            }
        }
        Ok(FourierBlock { params: *params, frequencies, matrix })
    }

    /// The diagonal form `Σ T/(2λ)·ĉ_j²` that the heat mode produces.
    pub fn heat_analogue(lambda: f64, horizon: f64, count: usize) -> Result<Self> {
        let params = ModeParams::new(lambda, 1.0, horizon)?;
        let frequencies = basis_frequencies(horizon, count)?;
        let matrix = DMatrix::from_diagonal_element(count, count, horizon / (2.0 * lambda));
        Ok(FourierBlock { params, frequencies, matrix })
    }

    pub fn size(&self) -> usize {
        self.frequencies.len()
    }

    /// Smallest eigenvalue of the symmetric matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.matrix.clone()).eigenvalues.min()
    }

    /// Largest eigenvalue of the symmetric matrix.
    pub fn max_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.matrix.clone()).eigenvalues.max()
    }
}

/// `Σ_{j,ℓ} W[j][ℓ]·ĉ_j·ĉ_ℓ`.
pub fn quadratic_form_eval(block: &FourierBlock, coeffs: &[f64]) -> Result<f64> {
    let n = block.size();
    if coeffs.len() != n {
        return Err(shape(format!("{} coefficients for a {n}×{n} block", coeffs.len())));
    }
    let c = DVector::from_column_slice(coeffs);
    Ok(c.dot(&(&block.matrix * &c)))
}

/// Row-wise diagonal dominance of a block.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceReport {
    /// `Σ_{ℓ≠j}|W[j][ℓ]| / |W[j][j]|` per row.
    pub ratios: Vec<f64>,
    /// Rows whose ratio exceeds 1.
    pub violating_rows: Vec<usize>,
    pub worst_ratio: f64,
    pub worst_row: usize,
}

pub fn diagonal_dominance_audit(block: &FourierBlock) -> DominanceReport {
    let n = block.size();
    let ratios: Vec<f64> = (0..n)
        .map(|j| {
            let off: f64 = (0..n).filter(|l| *l != j).map(|l| block.matrix[(j, l)].abs()).sum();
            off / block.matrix[(j, j)].abs()
        })
        .collect();
    let violating_rows = ratios
        .iter()
        .enumerate()
        .filter(|(_, r)| **r > 1.0)
        .map(|(j, _)| j)
        .collect();
    let (worst_row, worst_ratio) = ratios
        .iter()
        .enumerate()
        .fold((0, 0.0), |(bj, br), (j, r)| if *r > br { (j, *r) } else { (bj, br) });
    DominanceReport { ratios, violating_rows, worst_ratio, worst_row }
}
