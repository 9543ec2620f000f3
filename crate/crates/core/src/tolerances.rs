//! Verification tolerances, in one place.
//!
//! Relative tolerances unless stated otherwise. Quadrature-based checks assume
//! grids finer than the 50-points-per-period refusal threshold; the suites pick
//! their own resolution.

/// Closed-form mode solution vs RK4 oracle, sup-norm relative to `max|u|`.
pub const CLOSED_FORM_VS_ORACLE: f64 = 1e-6;

/// `‖u‖²_U` by quadrature vs `(1 + C)·‖f‖²_{V*}`.
pub const AMPLIFICATION_IDENTITY: f64 = 1e-6;

/// Closed-form resonant constant.
pub const RESONANT_VALUE: f64 = 1e-8;

/// Switching branches at the window edge.
pub const BRANCH_CONTINUITY: f64 = 1e-7;

/// `|C(ω) − C(√μ)| ≤ tol·(1 + C(√μ))` two window widths away.
pub const AMPLIFICATION_CONTINUITY: f64 = 1e-4;

/// Pointwise balance residuals (wave, initial values, damped, Schrödinger).
pub const BALANCE: f64 = 1e-8;

/// Energy conservation of the homogeneous wave mode.
pub const CONSERVATION: f64 = 1e-10;

/// Energy-balance norm equivalence bounds, from Young's inequality.
pub const EQUIVALENCE_LOWER: f64 = 1.0 / 3.0;
pub const EQUIVALENCE_UPPER: f64 = 3.0;

/// Kernel diagonal vs `(1 + C)·T/(2λ)`.
pub const KERNEL_DIAGONAL: f64 = 1e-10;

/// Quadratic form vs independently computed trial norm.
pub const QUADRATIC_FORM: f64 = 1e-6;

/// Heat isometry with the boundary term.
pub const HEAT_BALANCE: f64 = 1e-8;

/// Spectral field: manufactured solution (absolute sup-norm) and modal ratio.
pub const MANUFACTURED_SUP: f64 = 1e-6;
pub const FIELD_RATIO: f64 = 1e-8;

/// Figure 2: peak of `1 + C` against `μ/6 + 3/4`.
pub const PEAK_RELATIVE: f64 = 0.02;

/// Inf-sup ratio bound for `k ≥ 4`.
pub const INFSUP_BOUND: f64 = 0.1;

/// Oracle resolution used by the suites, points per period of the fastest frequency.
pub const SUITE_POINTS_PER_PERIOD: f64 = 600.0;
