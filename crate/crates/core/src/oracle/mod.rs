//! Brute-force verification backends.
//!
//! Composite Simpson quadrature and classical fourth-order Runge–Kutta
//! integrators. The closed-form solvers never call the integrators here; the
//! integrators exist to check them.

mod ivp;
mod quad;

pub use ivp::{integrate_first_order_ivp, integrate_second_order_ivp, FirstOrderKind, FirstOrderSolution};
pub use quad::{cumulative_integrate, integrate, QuadratureSpec};
