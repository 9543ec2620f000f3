//! Small special functions used throughout.

/// Unnormalized sinc, `sin(x)/x` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// `(1 − sinc q)/q²`, accurate for small `q`.
pub fn one_minus_sinc_over_sq(q: f64) -> f64 {
    let q2 = q * q;
    if q.abs() < 0.1 {
        // Remaining terms are below 1e-16 relative for |q| < 0.1.
        1.0 / 6.0 - q2 / 120.0 + q2 * q2 / 5040.0 - q2 * q2 * q2 / 362_880.0
    } else {
        (1.0 - sinc(q)) / q2
    }
}

/// The exponential-integrator functions `φ1, φ2, φ3` at `z`.
///
/// `φk(z) = ∫₀¹ e^{z(1−θ)} θ^{k−1}/(k−1)! dθ`; series near zero, closed forms elsewhere.
pub fn phi123(z: f64) -> (f64, f64, f64) {
    if z.abs() < 1.0 {
        // φk(z) = Σ_j z^j/(j+k)!
        let mut p1 = 0.0;
        let mut p2 = 0.0;
        let mut p3 = 0.0;
        let mut zj = 1.0;
        let mut fact = 1.0; // j!
        for j in 0..24 {
            let jf = j as f64;
            if j > 0 {
                fact *= jf;
            }
            let f1 = fact * (jf + 1.0);
            let f2 = f1 * (jf + 2.0);
            let f3 = f2 * (jf + 3.0);
            p1 += zj / f1;
            p2 += zj / f2;
            p3 += zj / f3;
            zj *= z;
        }
        (p1, p2, p3)
    } else {
        let em1 = z.exp_m1();
        let p1 = em1 / z;
        let p2 = (em1 - z) / (z * z);
        let p3 = (em1 - z - 0.5 * z * z) / (z * z * z);
        (p1, p2, p3)
    }
}
