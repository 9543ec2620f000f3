//! The modal reduction carried out on `Ω = (0, L)`.
//!
//! Dirichlet eigenpairs are `λ_k = (kπ/L)²`, `e_k(x) = √(2/L)·sin(kπx/L)`.
//! A space-time source is projected on the first `K` modes, each mode is solved
//! in closed form and the field norms are summed over modes.

use rayon::prelude::*;

use crate::closed_form::{duhamel_wave, solve_heat, solve_schrodinger};
use crate::error::{domain, shape, Result};
use crate::modal::{ComplexSignal, Forcing, ModeParams, Signal, TimeGrid};
use crate::norms::{bochner_norm_sq, trial_norm_sq};
use crate::quadrature::simpson;

/// Minimum spatial points per half-wavelength of the highest mode.
pub const POINTS_PER_HALF_WAVELENGTH: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenBasis1D {
    pub length: f64,
    pub modes: usize,
}

pub fn build_basis(length: f64, modes: usize) -> Result<EigenBasis1D> {
    if !(length.is_finite() && length > 0.0) {
        return Err(domain(format!("L must be positive, got {length}")));
    }
    if modes < 1 {
        return Err(domain("need at least one mode"));
    }
    Ok(EigenBasis1D { length, modes })
}

impl EigenBasis1D {
    /// `λ_k`, `k ≥ 1`.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let x = k as f64 * std::f64::consts::PI / self.length;
        x * x
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        (1..=self.modes).map(|k| self.eigenvalue(k)).collect()
    }

    /// `e_k(x)`, `k ≥ 1`.
    pub fn eigenfunction(&self, k: usize, x: f64) -> f64 {
        (2.0 / self.length).sqrt() * (k as f64 * std::f64::consts::PI * x / self.length).sin()
    }

    /// Gram matrix `(e_j, e_k)` by Simpson on `intervals` spatial intervals.
    pub fn gram_matrix(&self, intervals: usize) -> Result<Vec<Vec<f64>>> {
        let xs = space_nodes(self.length, intervals)?;
        let h = self.length / intervals as f64;
        let e: Vec<Vec<f64>> = (1..=self.modes)
            .map(|k| xs.iter().map(|x| self.eigenfunction(k, *x)).collect())
            .collect();
        Ok((0..self.modes)
            .map(|j| {
                (0..self.modes)
                    .map(|k| {
                        let y: Vec<f64> = e[j].iter().zip(&e[k]).map(|(a, b)| a * b).collect();
                        simpson(&y, h)
                    })
                    .collect()
            })
            .collect())
    }
}

fn space_nodes(length: f64, intervals: usize) -> Result<Vec<f64>> {
    if intervals < 2 || !intervals.is_multiple_of(2) {
        return Err(domain(format!("spatial interval count must be even and ≥ 2, got {intervals}")));
    }
    let h = length / intervals as f64;
    Ok((0..=intervals).map(|i| if i == intervals { length } else { i as f64 * h }).collect())
}

/// Samples of `f(x, t)` on a uniform space grid times a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeSamples {
    pub length: f64,
    pub space_intervals: usize,
    pub grid: TimeGrid,
    /// `values[i][m] = f(x_m, t_i)`.
    pub values: Vec<Vec<f64>>,
}

impl SpaceTimeSamples {
    pub fn from_fn(
        length: f64,
        space_intervals: usize,
        grid: TimeGrid,
        f: impl Fn(f64, f64) -> f64 + Sync,
    ) -> Result<Self> {
        let xs = space_nodes(length, space_intervals)?;
        let values = grid
            .nodes()
            .par_iter()
            .map(|t| xs.iter().map(|x| f(*x, *t)).collect())
            .collect();
        Ok(SpaceTimeSamples { length, space_intervals, grid, values })
    }

    /// `‖f(·, t_i)‖²_{L²(0,L)}` for every time node.
    pub fn spatial_norms_sq(&self) -> Vec<f64> {
        let h = self.length / self.space_intervals as f64;
        self.values
            .iter()
            .map(|row| {
                let y: Vec<f64> = row.iter().map(|v| v * v).collect();
                simpson(&y, h)
            })
            .collect()
    }
}

/// `f_k(t_i) = (f(·, t_i), e_k)` by spatial Simpson, `k = 1..=K`.
pub fn project_source(samples: &SpaceTimeSamples, basis: &EigenBasis1D) -> Result<Vec<Signal>> {
    if samples.length != basis.length {
        return Err(shape(format!(
            "sample length {} differs from basis length {}",
            samples.length, basis.length
        )));
    }
    let required = POINTS_PER_HALF_WAVELENGTH * basis.modes;
    if samples.space_intervals < required {
        return Err(domain(format!(
            "{} spatial intervals cannot resolve mode {} (need at least {required})",
            samples.space_intervals, basis.modes
        )));
    }
    let xs = space_nodes(samples.length, samples.space_intervals)?;
    let h = samples.length / samples.space_intervals as f64;
    (1..=basis.modes)
        .into_par_iter()
        .map(|k| {
            let e: Vec<f64> = xs.iter().map(|x| basis.eigenfunction(k, *x)).collect();
            let values = samples
                .values
                .iter()
                .map(|row| {
                    let y: Vec<f64> = row.iter().zip(&e).map(|(f, e)| f * e).collect();
                    simpson(&y, h)
                })
                .collect();
            Signal::new(samples.grid, values)
        })
        .collect()
}

/// Per-mode coefficient signals `w_k` of a space-time field.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    pub basis: EigenBasis1D,
    pub coefficients: Vec<Signal>,
}

impl SpectralField {
    pub fn new(basis: EigenBasis1D, coefficients: Vec<Signal>) -> Result<Self> {
        if coefficients.len() != basis.modes {
            return Err(shape(format!(
                "{} coefficient signals for {} modes",
                coefficients.len(),
                basis.modes
            )));
        }
        if let Some((first, rest)) = coefficients.split_first() {
            for w in rest {
                first.grid().ensure_same(w.grid())?;
            }
        }
        Ok(SpectralField { basis, coefficients })
    }

    pub fn grid(&self) -> &TimeGrid {
        self.coefficients[0].grid()
    }

    /// `Σ_k w_k(t_i)·e_k(x)` on a uniform space grid.
    pub fn synthesize(&self, space_intervals: usize) -> Result<SpaceTimeSamples> {
        let xs = space_nodes(self.basis.length, space_intervals)?;
        let e: Vec<Vec<f64>> = (1..=self.basis.modes)
            .map(|k| xs.iter().map(|x| self.basis.eigenfunction(k, *x)).collect())
            .collect();
        let values = (0..self.grid().len())
            .map(|i| {
                (0..xs.len())
                    .map(|m| {
                        self.coefficients
                            .iter()
                            .zip(&e)
                            .map(|(w, e)| w.values()[i] * e[m])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(SpaceTimeSamples {
            length: self.basis.length,
            space_intervals,
            grid: *self.grid(),
            values,
        })
    }
}

/// Time-dependent equations solved mode by mode with real coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equation {
    /// `(1/c²)u_tt − Δu = f`.
    Wave,
    /// `u_t − Δu = f`.
    Heat,
}

/// Solves every mode with its closed-form solver.
pub fn solve_ibvp(basis: &EigenBasis1D, forcings: &[Signal], c: f64, equation: Equation) -> Result<SpectralField> {
    if forcings.len() != basis.modes {
        return Err(shape(format!("{} modal forcings for {} modes", forcings.len(), basis.modes)));
    }
    let coefficients = forcings
        .par_iter()
        .enumerate()
        .map(|(i, f)| {
            let lambda = basis.eigenvalue(i + 1);
            let grid = *f.grid();
            let forcing = Forcing::Sampled(f.clone());
            match equation {
                Equation::Wave => {
                    let params = ModeParams::new(lambda, c, grid.horizon())?;
                    duhamel_wave(&params, &forcing, &grid).map(|(u, _)| u)
                }
                Equation::Heat => solve_heat(lambda, &forcing, &grid),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    SpectralField::new(*basis, coefficients)
}

/// Mode-by-mode solution of `iu_t − Δu = f`.
pub fn solve_ibvp_schrodinger(basis: &EigenBasis1D, forcings: &[ComplexSignal]) -> Result<Vec<ComplexSignal>> {
    if forcings.len() != basis.modes {
        return Err(shape(format!("{} modal forcings for {} modes", forcings.len(), basis.modes)));
    }
    forcings
        .par_iter()
        .enumerate()
        .map(|(i, f)| {
            let grid = *f.grid();
            solve_schrodinger(basis.eigenvalue(i + 1), &Forcing::ComplexSampled(f.clone()), &grid)
        })
        .collect()
}

/// `Σ_k λ_k^s‖w_k‖²`.
pub fn field_bochner_norm_sq(field: &SpectralField, s: f64) -> Result<f64> {
    let modes: Vec<(f64, Signal)> = field
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, w)| (field.basis.eigenvalue(i + 1), w.clone()))
        .collect();
    bochner_norm_sq(&modes, s)
}

/// `Σ_k [λ_k‖u_k‖² + (1/(c⁴λ_k))‖u_k″‖²]` with `u_k″ = c²(f_k − λ_k u_k)`.
pub fn field_trial_norm_sq(field: &SpectralField, forcings: &[Signal], c: f64) -> Result<f64> {
    if forcings.len() != field.coefficients.len() {
        return Err(shape("forcing count differs from mode count"));
    }
    let mut total = 0.0;
    for (i, (u, f)) in field.coefficients.iter().zip(forcings).enumerate() {
        u.grid().ensure_same(f.grid())?;
        let params = ModeParams::new(field.basis.eigenvalue(i + 1), c, u.grid().horizon())?;
        total += trial_norm_sq(&params, u, &Forcing::Sampled(f.clone()))?;
    }
    Ok(total)
}
