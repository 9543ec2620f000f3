//! Modal analysis of the forced acoustic wave equation.
//!
//! Each Dirichlet-Laplacian eigenmode of `(1/c²)u_tt − Δu = f` reduces to the
//! scalar initial value problem `(1/c²)u″ + λu = f`, `u(0) = u′(0) = 0`. This
//! crate evaluates those mode solutions in closed form, measures them in the
//! space-time norms of the modal setting, and checks every formula against
//! independent quadrature and Runge–Kutta oracles.
//!
//! Modules:
//! - [`modal`]: shared domain types (mode constants, time grid, forcings, signals).
//! - [`oracle`]: Simpson quadrature and fourth-order ODE integrators.
//! - [`closed_form`]: analytic wave, damped, heat and Schrödinger mode solutions.
//! - [`norms`]: trial/data norms, the amplification constant and the inf-sup ratio.
//! - [`fourier`]: the cosine-basis kernel representation of the trial norm.
//! - [`energy`]: pointwise energy balances and the energy-balance data norm.
//! - [`spectral`]: 1-D eigenbasis, source projection and full-field norms.
//! - [`verify`]: runnable invariant suites used by the CLI.

pub mod closed_form;
pub mod energy;
pub mod error;
pub mod fourier;
pub mod gauss;
pub mod modal;
pub mod norms;
pub mod oracle;
pub mod quadrature;
pub mod special;
pub mod spectral;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
pub use modal::{
    evaluate_forcing, ComplexSignal, Forcing, ForcingValue, ModeParams, NormReport, Signal,
    TimeGrid,
};
pub use num_complex::Complex64;
