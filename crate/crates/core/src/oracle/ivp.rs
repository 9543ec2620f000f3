use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::modal::{ComplexSignal, Forcing, ModeParams, Signal, TimeGrid};

/// First-order (or first-order-in-time reduced) mode problems handled by
/// [`integrate_first_order_ivp`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FirstOrderKind {
    /// `u′ + λu = f`.
    Heat,
    /// `iu′ + λu = f`, complex state.
    Schrodinger,
    /// `u″ + ρu′ + λu = f`.
    Damped { rho: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum FirstOrderSolution {
    Heat(Signal),
    Schrodinger(ComplexSignal),
    Damped { u: Signal, uprime: Signal },
}

/// RK4 for `(1/c²)u″ + λu = f`, `u(0) = u′(0) = 0`, one step per grid interval.
pub fn integrate_second_order_ivp(
    params: &ModeParams,
    forcing: &Forcing,
    grid: &TimeGrid,
) -> Result<(Signal, Signal)> {
    grid.check_resolution(params.omega_res().max(forcing.max_frequency()))?;
    let c2 = params.c * params.c;
    let lambda = params.lambda;
    let states = rk4(forcing, grid, |f, y| [y[1], c2 * (f - lambda * y[0])])?;
    split_real(grid, &states)
}

/// RK4 for the heat, Schrödinger and damped mode problems with zero initial data.
pub fn integrate_first_order_ivp(
    lambda: f64,
    forcing: &Forcing,
    grid: &TimeGrid,
    kind: FirstOrderKind,
) -> Result<FirstOrderSolution> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(domain(format!("lambda must be positive, got {lambda}")));
    }
    let i = Complex64::i();
    match kind {
        FirstOrderKind::Heat => {
            grid.check_resolution(forcing.max_frequency())?;
            let states = rk4(forcing, grid, |f, y| [f - lambda * y[0], Complex64::new(0.0, 0.0)])?;
            let (u, _) = split_real(grid, &states)?;
            Ok(FirstOrderSolution::Heat(u))
        }
        FirstOrderKind::Schrodinger => {
            grid.check_resolution(lambda.max(forcing.max_frequency()))?;
            let states =
                rk4(forcing, grid, |f, y| [i * (lambda * y[0] - f), Complex64::new(0.0, 0.0)])?;
            let u = ComplexSignal::new(*grid, states.iter().map(|s| s[0]).collect())?;
            Ok(FirstOrderSolution::Schrodinger(u))
        }
        FirstOrderKind::Damped { rho } => {
            if !(rho.is_finite() && rho > 0.0) {
                return Err(domain(format!("rho must be positive, got {rho}")));
            }
            let eta = lambda - rho * rho / 4.0;
            grid.check_resolution(eta.abs().sqrt().max(forcing.max_frequency()))?;
            let states = rk4(forcing, grid, |f, y| [y[1], f - rho * y[1] - lambda * y[0]])?;
            let (u, uprime) = split_real(grid, &states)?;
            Ok(FirstOrderSolution::Damped { u, uprime })
        }
    }
}

type State = [Complex64; 2];

fn rk4(forcing: &Forcing, grid: &TimeGrid, rhs: impl Fn(Complex64, &State) -> State) -> Result<Vec<State>> {
    let (nodes, mids) = forcing_samples(forcing, grid)?;
    let h = grid.step();
    let zero = Complex64::new(0.0, 0.0);
    let mut out = Vec::with_capacity(grid.len());
    let mut y: State = [zero, zero];
    out.push(y);
    let axpy = |y: &State, a: f64, k: &State| [y[0] + k[0] * a, y[1] + k[1] * a];
    for step in 0..grid.intervals() {
        let k1 = rhs(nodes[step], &y);
        let k2 = rhs(mids[step], &axpy(&y, h / 2.0, &k1));
        let k3 = rhs(mids[step], &axpy(&y, h / 2.0, &k2));
        let k4 = rhs(nodes[step + 1], &axpy(&y, h, &k3));
        for j in 0..2 {
            y[j] += (k1[j] + (k2[j] + k3[j]) * 2.0 + k4[j]) * (h / 6.0);
        }
        out.push(y);
    }
    Ok(out)
}

fn split_real(grid: &TimeGrid, states: &[State]) -> Result<(Signal, Signal)> {
    let u = Signal::new(*grid, states.iter().map(|s| s[0].re).collect())?;
    let v = Signal::new(*grid, states.iter().map(|s| s[1].re).collect())?;
    Ok((u, v))
}

/// Forcing values at the nodes and at the interval midpoints.
///
/// Analytic variants are evaluated exactly. Sampled variants use cubic Lagrange
/// interpolation at midpoints so the stages stay fourth order.
fn forcing_samples(forcing: &Forcing, grid: &TimeGrid) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let nodes = forcing.sample_complex(grid)?;
    let n = grid.intervals();
    let h = grid.step();
    let mids = match forcing {
        Forcing::Sampled(_) | Forcing::ComplexSampled(_) => cubic_midpoints(&nodes),
        _ => (0..n)
            .map(|i| forcing.eval_real((i as f64 + 0.5) * h).map(|v| Complex64::new(v, 0.0)))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok((nodes, mids))
}

fn cubic_midpoints(y: &[Complex64]) -> Vec<Complex64> {
    let n = y.len() - 1;
    if n == 2 {
        return vec![
            y[0] * 0.375 + y[1] * 0.75 - y[2] * 0.125,
            -y[0] * 0.125 + y[1] * 0.75 + y[2] * 0.375,
        ];
    }
    (0..n)
        .map(|i| {
            if i == 0 {
                y[0] * 0.3125 + y[1] * 0.9375 - y[2] * 0.3125 + y[3] * 0.0625
            } else if i == n - 1 {
                y[n - 3] * 0.0625 - y[n - 2] * 0.3125 + y[n - 1] * 0.9375 + y[n] * 0.3125
            } else {
                (-y[i - 1] + (y[i] + y[i + 1]) * 9.0 - y[i + 2]) / 16.0
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_midpoints_exact_on_cubics() {
        let p = |t: f64| 1.0 - 2.0 * t + 0.5 * t * t - 0.25 * t * t * t;
        let y: Vec<Complex64> = (0..=6).map(|i| Complex64::new(p(i as f64), 0.0)).collect();
        let m = cubic_midpoints(&y);
        for (i, v) in m.iter().enumerate() {
            assert!((v.re - p(i as f64 + 0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn quadratic_midpoints_on_two_intervals() {
        let p = |t: f64| 3.0 + t - 2.0 * t * t;
        let y: Vec<Complex64> = (0..=2).map(|i| Complex64::new(p(i as f64), 0.0)).collect();
        let m = cubic_midpoints(&y);
        assert!((m[0].re - p(0.5)).abs() < 1e-14);
        assert!((m[1].re - p(1.5)).abs() < 1e-14);
    }
}
