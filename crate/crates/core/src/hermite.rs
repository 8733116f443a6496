//! Normalized Hermite functions (harmonic-oscillator eigenfunctions).

use std::f64::consts::PI;

/// `ψ_0(x) … ψ_{n_max}(x)` via the normalized three-term recurrence
///
/// ```text
/// ψ_0 = π^{-1/4} e^{-x²/2},  ψ_{n+1} = √(2/(n+1))·x·ψ_n − √(n/(n+1))·ψ_{n−1}
/// ```
///
/// which never forms factorials and stays stable for n in the hundreds.
pub fn hermite_functions(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if n_max == 0 {
        return out;
    }
    out.push(2f64.sqrt() * x * out[0]);
    for n in 1..n_max {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

/// `ψ_n(x)` for a single order.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    hermite_functions(n, x)[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders_match_explicit_forms() {
        let x: f64 = 0.7;
        let g = PI.powf(-0.25) * (-x * x / 2.0).exp();
        let psi = hermite_functions(3, x);
        assert!((psi[0] - g).abs() < 1e-15);
        assert!((psi[1] - 2f64.sqrt() * x * g).abs() < 1e-15);
        assert!((psi[2] - (2.0 * x * x - 1.0) / 2f64.sqrt() * g).abs() < 1e-15);
        assert!((psi[3] - (2.0 * x * x * x - 3.0 * x) / 3f64.sqrt() * g).abs() < 1e-14);
    }

    #[test]
    fn values_at_origin() {
        // ψ_{2k}(0) = π^{-1/4} (−1)^k √((2k)!) / (2^k k!), odd orders vanish.
        let psi = hermite_functions(40, 0.0);
        let mut expected = PI.powf(-0.25);
        for k in 0..=20 {
            assert!((psi[2 * k] - expected).abs() < 1e-14, "k = {k}");
            if 2 * k < 40 {
                assert_eq!(psi[2 * k + 1], 0.0);
            }
            let kf = (k + 1) as f64;
            expected *= -((2.0 * kf - 1.0) * 2.0 * kf).sqrt() / (2.0 * kf);
        }
    }

    #[test]
    fn parity() {
        for n in [0usize, 1, 7, 50, 120] {
            let a = hermite_function(n, 1.3);
            let b = hermite_function(n, -1.3);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((a - sign * b).abs() < 1e-13);
        }
    }
}
