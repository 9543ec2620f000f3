//! Composite Simpson quadrature on uniform grids, plain and cumulative.
//!
//! The cumulative rule can carry an exponential decay `e^{−r(t−s)}` under the
//! integral. The weight is integrated exactly against the local quadratic
//! interpolant of the samples, so large `r·h` neither overflows nor loses
//! accuracy.

use crate::special::phi123;

/// Composite Simpson sum of `values` with spacing `h` (even interval count).
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    debug_assert!(n >= 2 && n.is_multiple_of(2));
    let mut odd = 0.0;
    let mut even = 0.0;
    for (i, v) in values.iter().enumerate().take(n).skip(1) {
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (values[0] + 4.0 * odd + 2.0 * even + values[n])
}

/// `∫₀ᵀ a·b` by Simpson on the shared grid.
pub fn simpson_product(a: &[f64], b: &[f64], h: f64) -> f64 {
    let prod: Vec<f64> = a.iter().zip(b).map(|(x, y)| x * y).collect();
    simpson(&prod, h)
}

/// `∫₀ᵀ a²`.
pub fn simpson_sq(a: &[f64], h: f64) -> f64 {
    simpson_product(a, a, h)
}

/// Running integrals `F(t_i) = ∫₀^{t_i} e^{−r(t_i−s)} y(s) ds`, `F(0) = 0`.
///
/// With `r = 0` the even entries are composite-Simpson prefixes and the odd
/// entries add the half-panel quadratic rule `h/12·(5y₀ + 8y₁ − y₂)`.
pub fn cumulative(values: &[f64], h: f64, rate: f64) -> Vec<f64> {
    let n = values.len() - 1;
    debug_assert!(n >= 2 && n.is_multiple_of(2));
    let mut out = vec![0.0; n + 1];
    if rate == 0.0 {
        for m in (0..n).step_by(2) {
            let (y0, y1, y2) = (values[m], values[m + 1], values[m + 2]);
            out[m + 1] = out[m] + h / 12.0 * (5.0 * y0 + 8.0 * y1 - y2);
            out[m + 2] = out[m] + h / 3.0 * (y0 + 4.0 * y1 + y2);
        }
        return out;
    }
    // ∫₀^H e^{−r(H−x)} p(x) dx = H·[a₀φ₁ + a₁φ₂ + 2a₂φ₃](−rH) for p = a₀ + a₁θ + a₂θ², x = Hθ.
    let (h1, h2, h3) = phi123(-rate * h);
    let (f1, f2, f3) = phi123(-2.0 * rate * h);
    let d1 = (-rate * h).exp();
    let d2 = (-2.0 * rate * h).exp();
    for m in (0..n).step_by(2) {
        let (y0, y1, y2) = (values[m], values[m + 1], values[m + 2]);
        let a1 = 0.5 * (-3.0 * y0 + 4.0 * y1 - y2);
        let a2 = 0.5 * (y0 - 2.0 * y1 + y2);
        let half = h * (y0 * h1 + a1 * h2 + 2.0 * a2 * h3);
        let b1 = -3.0 * y0 + 4.0 * y1 - y2;
        let b2 = 2.0 * (y0 - 2.0 * y1 + y2);
        let full = 2.0 * h * (y0 * f1 + b1 * f2 + 2.0 * b2 * f3);
        out[m + 1] = d1 * out[m] + half;
        out[m + 2] = d2 * out[m] + full;
    }
    out
}
