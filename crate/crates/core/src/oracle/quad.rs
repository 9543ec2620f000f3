use crate::modal::{Signal, TimeGrid};
use crate::quadrature::{cumulative, simpson};

/// Composite Simpson on a uniform grid. The grid type already guarantees an even
/// interval count, so a spec is only a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub grid: TimeGrid,
}

impl QuadratureSpec {
    pub fn step(&self) -> f64 {
        self.grid.step()
    }
}

/// `∫₀ᵀ` of a sampled signal.
pub fn integrate(signal: &Signal) -> f64 {
    simpson(signal.values(), signal.grid().step())
}

/// Running integral `F(t_i) = ∫₀^{t_i}`, with `F(0) = 0`.
pub fn cumulative_integrate(signal: &Signal) -> Signal {
    let grid = *signal.grid();
    let values = cumulative(signal.values(), grid.step(), 0.0);
    Signal::new(grid, values).expect("cumulative of finite samples is finite")
}
