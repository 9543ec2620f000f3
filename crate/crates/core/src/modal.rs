//! Domain types shared by every module: mode constants, the uniform time grid,
//! sampled signals and the forcing variants.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, shape, Error, Result};

/// Minimum number of grid points per oscillation period accepted by the
/// quadrature-based solvers and the ODE oracles.
pub const POINTS_PER_PERIOD: f64 = 50.0;

/// Constants of one spectral mode: eigenvalue `λ`, wave speed `c`, horizon `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeParams {
    pub lambda: f64,
    pub c: f64,
    pub horizon: f64,
}

impl ModeParams {
    pub fn new(lambda: f64, c: f64, horizon: f64) -> Result<Self> {
        for (name, v) in [("lambda", lambda), ("c", c), ("T", horizon)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        let p = ModeParams { lambda, c, horizon };
        if !p.mu().is_finite() {
            return Err(domain("c²λ overflows"));
        }
        Ok(p)
    }

    /// Mode with resonance frequency `sqrt_mu`, i.e. `λ = sqrt_mu²/c²`.
    pub fn from_sqrt_mu(sqrt_mu: f64, c: f64, horizon: f64) -> Result<Self> {
        if !(sqrt_mu.is_finite() && sqrt_mu > 0.0) {
            return Err(domain(format!("sqrt(mu) must be positive, got {sqrt_mu}")));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(domain(format!("c must be positive and finite, got {c}")));
        }
        Self::new(sqrt_mu * sqrt_mu / (c * c), c, horizon)
    }

    /// `μ = c²λ`.
    pub fn mu(&self) -> f64 {
        self.c * self.c * self.lambda
    }

    /// Resonance frequency `√μ`.
    pub fn omega_res(&self) -> f64 {
        self.mu().sqrt()
    }
}

/// Uniform grid `t_i = i·T/n`, `i = 0..=n`, with `n` even.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    horizon: f64,
    intervals: usize,
}

impl TimeGrid {
    pub fn new(horizon: f64, intervals: usize) -> Result<Self> {
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(domain(format!("T must be positive and finite, got {horizon}")));
        }
        if intervals < 2 || !intervals.is_multiple_of(2) {
            return Err(domain(format!(
                "interval count must be even and at least 2, got {intervals}"
            )));
        }
        Ok(TimeGrid { horizon, intervals })
    }

    /// Smallest number of intervals meeting the resolution rule for `frequency`.
    pub fn required_intervals(horizon: f64, frequency: f64) -> usize {
        let n = (POINTS_PER_PERIOD * frequency.abs() * horizon / (2.0 * PI)).ceil();
        if n.is_finite() {
            n as usize
        } else {
            usize::MAX
        }
    }

    /// Even grid with at least `points_per_period` nodes per period of `frequency`
    /// (never fewer than the resolution rule asks for).
    pub fn resolving(horizon: f64, frequency: f64, points_per_period: f64) -> Result<Self> {
        let ppp = points_per_period.max(POINTS_PER_PERIOD);
        let mut n = (ppp * frequency.abs() * horizon / (2.0 * PI)).ceil() as usize;
        n = n.max(2);
        n += n % 2;
        Self::new(horizon, n)
    }

    /// Refuses grids that put fewer than 50 points on one period of `frequency`.
    pub fn check_resolution(&self, frequency: f64) -> Result<()> {
        let required = Self::required_intervals(self.horizon, frequency);
        if self.intervals < required {
            return Err(Error::Resolution {
                intervals: self.intervals,
                required,
                frequency,
                horizon: self.horizon,
            });
        }
        Ok(())
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    /// Number of nodes, `n + 1`.
    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        self.horizon / self.intervals as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i == self.intervals {
            self.horizon
        } else {
            i as f64 * self.step()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.node(i)).collect()
    }

    pub(crate) fn same_as(&self, other: &TimeGrid) -> bool {
        self.intervals == other.intervals && self.horizon == other.horizon
    }

    pub(crate) fn ensure_same(&self, other: &TimeGrid) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(shape(format!(
                "grids differ: (T = {}, n = {}) vs (T = {}, n = {})",
                self.horizon, self.intervals, other.horizon, other.intervals
            )))
        }
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if t.is_finite() && (0.0..=self.horizon).contains(&t) {
            Ok(())
        } else {
            Err(domain(format!("t = {t} outside [0, {}]", self.horizon)))
        }
    }

    /// Interval index and local coordinate in [0, 1] of `t`.
    fn locate(&self, t: f64) -> (usize, f64) {
        let x = t / self.step();
        let i = (x.floor() as usize).min(self.intervals - 1);
        (i, x - i as f64)
    }
}

/// Real values on the nodes of a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    grid: TimeGrid,
    values: Vec<f64>,
}

impl Signal {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(shape(format!(
                "{} values for a grid with {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(domain(format!("non-finite sample {v}")));
        }
        Ok(Signal { grid, values })
    }

    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.nodes().into_iter().map(f).collect())
    }

    pub fn zeros(grid: TimeGrid) -> Self {
        Signal { grid, values: vec![0.0; grid.len()] }
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Largest absolute value.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest absolute pointwise difference to `other` on the same grid.
    pub fn sup_distance(&self, other: &Signal) -> Result<f64> {
        self.grid.ensure_same(&other.grid)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }
}

/// Complex values on the nodes of a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSignal {
    grid: TimeGrid,
    values: Vec<Complex64>,
}

impl ComplexSignal {
    pub fn new(grid: TimeGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(shape(format!(
                "{} values for a grid with {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(domain(format!("non-finite sample {v}")));
        }
        Ok(ComplexSignal { grid, values })
    }

    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new(grid, grid.nodes().into_iter().map(f).collect())
    }

    pub fn zeros(grid: TimeGrid) -> Self {
        ComplexSignal { grid, values: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn sup_distance(&self, other: &ComplexSignal) -> Result<f64> {
        self.grid.ensure_same(&other.grid)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm())))
    }
}

/// A source term of the mode IVP.
#[derive(Debug, Clone, PartialEq)]
pub enum Forcing {
    /// `cos(ωt)`.
    Cosine { omega: f64 },
    /// `Σ coeff·cos(omega·t)` over `(omega, coeff)` terms.
    CosineCombo { terms: Vec<(f64, f64)> },
    /// Piecewise-linear interpolant of real node values.
    Sampled(Signal),
    /// Piecewise-linear interpolant of complex node values.
    ComplexSampled(ComplexSignal),
    /// `e^{ρ(T−t)/2}·sin(√η·t)` on `[0, T]`.
    DampedResonant { rho: f64, eta: f64, horizon: f64 },
}

/// Value returned by [`evaluate_forcing`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ForcingValue {
    Real(f64),
    Complex(Complex64),
}

impl ForcingValue {
    pub fn to_complex(self) -> Complex64 {
        match self {
            ForcingValue::Real(v) => Complex64::new(v, 0.0),
            ForcingValue::Complex(z) => z,
        }
    }
}

/// `f(t)`; cosines exactly, sampled variants by linear interpolation.
pub fn evaluate_forcing(forcing: &Forcing, t: f64) -> Result<ForcingValue> {
    forcing.validate()?;
    match forcing {
        Forcing::ComplexSampled(s) => {
            s.grid.check_time(t)?;
            let (i, x) = s.grid.locate(t);
            let v = s.values[i] * (1.0 - x) + s.values[i + 1] * x;
            Ok(ForcingValue::Complex(v))
        }
        _ => forcing.eval_real(t).map(ForcingValue::Real),
    }
}

impl Forcing {
    /// Constant forcing `value` on `grid`.
    pub fn constant(grid: TimeGrid, value: f64) -> Self {
        Forcing::Sampled(Signal { grid, values: vec![value; grid.len()] })
    }

    /// Checks the variant invariants (positive frequencies and rates).
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(domain(format!("{name} must be positive and finite, got {v}")))
            }
        };
        match self {
            Forcing::Cosine { omega } => positive("omega", *omega),
            Forcing::CosineCombo { terms } => {
                for (omega, coeff) in terms {
                    positive("omega", *omega)?;
                    if !coeff.is_finite() {
                        return Err(domain("non-finite coefficient"));
                    }
                }
                Ok(())
            }
            Forcing::Sampled(_) | Forcing::ComplexSampled(_) => Ok(()),
            Forcing::DampedResonant { rho, eta, horizon } => {
                positive("rho", *rho)?;
                positive("eta", *eta)?;
                positive("T", *horizon)
            }
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, Forcing::ComplexSampled(_))
    }

    /// Highest oscillation frequency carried analytically; 0 for sampled data.
    pub fn max_frequency(&self) -> f64 {
        match self {
            Forcing::Cosine { omega } => *omega,
            Forcing::CosineCombo { terms } => terms.iter().fold(0.0, |m, (w, _)| m.max(*w)),
            Forcing::Sampled(_) | Forcing::ComplexSampled(_) => 0.0,
            Forcing::DampedResonant { eta, .. } => eta.sqrt(),
        }
    }

    /// Real value at `t`. Complex samples are refused.
    pub fn eval_real(&self, t: f64) -> Result<f64> {
        match self {
            Forcing::Cosine { omega } => {
                check_nonneg(t)?;
                Ok((omega * t).cos())
            }
            Forcing::CosineCombo { terms } => {
                check_nonneg(t)?;
                Ok(terms.iter().map(|(w, a)| a * (w * t).cos()).sum())
            }
            Forcing::Sampled(s) => {
                s.grid.check_time(t)?;
                let (i, x) = s.grid.locate(t);
                Ok(s.values[i] * (1.0 - x) + s.values[i + 1] * x)
            }
            Forcing::ComplexSampled(_) => {
                Err(Error::Unsupported("real evaluation of a complex forcing".into()))
            }
            Forcing::DampedResonant { rho, eta, horizon } => {
                if !(t.is_finite() && (0.0..=*horizon).contains(&t)) {
                    return Err(domain(format!("t = {t} outside [0, {horizon}]")));
                }
                Ok((rho * (horizon - t) / 2.0).exp() * (eta.sqrt() * t).sin())
            }
        }
    }

    /// Real node values on `grid`. Sampled forcings must live on the same grid.
    pub fn sample(&self, grid: &TimeGrid) -> Result<Vec<f64>> {
        self.validate()?;
        match self {
            Forcing::Sampled(s) => {
                s.grid.ensure_same(grid)?;
                Ok(s.values.clone())
            }
            Forcing::ComplexSampled(_) => {
                Err(Error::Unsupported("real sampling of a complex forcing".into()))
            }
            Forcing::DampedResonant { horizon, .. } if *horizon != grid.horizon() => Err(shape(
                format!("forcing horizon {horizon} differs from grid horizon {}", grid.horizon()),
            )),
            _ => grid.nodes().into_iter().map(|t| self.eval_real(t)).collect(),
        }
    }

    /// Complex node values on `grid`; real variants get zero imaginary part.
    pub fn sample_complex(&self, grid: &TimeGrid) -> Result<Vec<Complex64>> {
        match self {
            Forcing::ComplexSampled(s) => {
                s.grid.ensure_same(grid)?;
                Ok(s.values.clone())
            }
            _ => Ok(self
                .sample(grid)?
                .into_iter()
                .map(|v| Complex64::new(v, 0.0))
                .collect()),
        }
    }
}

fn check_nonneg(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("t = {t} must be finite and nonnegative")))
    }
}

/// Norms of one (mode, forcing) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport {
    /// `‖u‖²_U = λ‖u‖² + (1/(c⁴λ))‖u″‖²`.
    pub trial_norm_sq: f64,
    /// `‖f‖²_{V*} = (1/λ)‖f‖²`.
    pub data_norm_sq: f64,
    /// `‖f‖²_{L²(0,T)}`.
    pub l2l2_norm_sq: f64,
    /// `(1/λ)‖f‖² + c²(‖f^c‖² + ‖f^s‖²)`.
    pub energy_data_norm_sq: f64,
    /// `C` for single-cosine forcings. May be negative; `1 + C` never is.
    pub amplification: Option<f64>,
    /// `‖f‖_{V*}/‖u‖_U`.
    pub infsup_ratio: f64,
}

impl NormReport {
    /// Checks nonnegativity of the norms and, for cosine forcings,
    /// `trial = (1 + C)·data` to relative tolerance `tol`.
    pub fn is_consistent(&self, tol: f64) -> bool {
        let nonneg = [
            self.trial_norm_sq,
            self.data_norm_sq,
            self.l2l2_norm_sq,
            self.energy_data_norm_sq,
            self.infsup_ratio,
        ]
        .iter()
        .all(|v| *v >= 0.0);
        let identity = match self.amplification {
            Some(c) => {
                1.0 + c >= 0.0
                    && ((1.0 + c) * self.data_norm_sq - self.trial_norm_sq).abs()
                        <= tol * self.trial_norm_sq.max(f64::MIN_POSITIVE)
            }
            None => true,
        };
        nonneg && identity
    }
}
