//! The oscillator exponential `e^{fN}`, `N = (P² + Q² − 1)/2`, and its Weyl symbol
//!
//! ```text
//! (2/(e^f + 1)) · exp{ ((e^f − 1)/(e^f + 1)) (p² + q²) }
//! ```
//!
//! The exponent carries no extra factor 2: with it the ground projector
//! (`f → −∞`) would map to `2e^{−2(p²+q²)}` instead of `2e^{−(p²+q²)}`, and
//! `f = i(π/2 − α)` would no longer produce the chirplet of rate `tan(π/4 − α/2)`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::basis::HermiteBasis;
use super::kernel::OperatorKernel;
use crate::closedform::gaussian_transform_closed;
use crate::error::{Error, Result};
use crate::grid::{Axis, PhaseGrid, SampledField};

/// Prefactor `A = 2/(e^f+1)` and decay `λ = (1 − e^f)/(1 + e^f)` with symbol `A·e^{−λ(p²+q²)}`.
pub fn oscillator_symbol_params(f: Complex64) -> Result<(Complex64, Complex64)> {
    let e = f.exp();
    if !e.is_finite() {
        return Err(Error::InvalidParameter(format!("e^f overflows for f = {f}")));
    }
    if (e + 1.0).norm() < 1e-9 {
        return Err(Error::InvalidParameter(format!("e^f = -1 for f = {f}")));
    }
    Ok((2.0 / (e + 1.0), (1.0 - e) / (1.0 + e)))
}

/// Samples the Weyl symbol of `e^{fN}` on `grid`.
pub fn oscillator_exponential_symbol(f: Complex64, grid: &PhaseGrid) -> Result<SampledField> {
    let (a, lambda) = oscillator_symbol_params(f)?;
    SampledField::from_fn(*grid, |p, q| a * (-lambda * (p * p + q * q)).exp())
}

/// Closed-form transform of the symbol, `A · G(λ; x, y)`; for `Re λ = 0` this
/// is the analytic continuation of the Gaussian pair.
pub fn oscillator_exponential_transform(f: Complex64, x: f64, y: f64) -> Result<Complex64> {
    let (a, lambda) = oscillator_symbol_params(f)?;
    Ok(a * gaussian_transform_closed(lambda, x, y)?)
}

/// Truncated spectral kernel `Σ_{n≤n_max} e^{fn} ψ_n(q1) ψ_n(q2)` on the basis axis.
pub fn oscillator_exponential_kernel(f: Complex64, basis: &HermiteBasis) -> Result<OperatorKernel> {
    if f.re > 0.0 {
        return Err(Error::InvalidParameter(format!("Re f must be <= 0 for a bounded spectral sum, got {f}")));
    }
    let axis = *basis.axis();
    let len = axis.len();
    let coeffs: Vec<Complex64> = (0..=basis.n_max()).map(|n| (f * n as f64).exp()).collect();
    let mut values = vec![Complex64::new(0.0, 0.0); len * len];
    values.par_chunks_mut(len).enumerate().for_each(|(i, row)| {
        for (n, c) in coeffs.iter().enumerate() {
            let psi = basis.psi(n);
            let ci = c * psi[i];
            for (slot, pj) in row.iter_mut().zip(psi) {
                *slot += ci * *pj;
            }
        }
    });
    OperatorKernel::new(axis, axis, values)
}

/// Mehler's closed form of the same kernel with `z = e^f`, `|z| < 1`:
///
/// ```text
/// (π(1 − z²))^{-1/2} · exp{ −((1 + z²)(a² + b²) − 4zab) / (2(1 − z²)) }
/// ```
pub fn oscillator_exponential_kernel_closed(f: Complex64, axis: &Axis) -> Result<OperatorKernel> {
    if !(f.re < 0.0) {
        return Err(Error::InvalidParameter(format!("closed kernel needs Re f < 0, got {f}")));
    }
    let z = f.exp();
    let d = 1.0 - z * z;
    let norm = 1.0 / (std::f64::consts::PI * d).sqrt();
    OperatorKernel::from_fn(*axis, *axis, |a, b| {
        norm * (-((1.0 + z * z) * (a * a + b * b) - 4.0 * z * a * b) / (2.0 * d)).exp()
    })
}
