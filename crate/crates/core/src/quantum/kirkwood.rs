use std::f64::consts::PI;

use num_complex::Complex64;

use super::weyl::wigner_of_signal;
use crate::error::Result;
use crate::grid::{PhaseGrid, SampledField, Signal};
use crate::xform::{forward_fast, inverse_fast};

/// `ψ̃(p) = (1/√(2π)) ∫dq e^{−ipq} ψ(q)` by the trapezoid rule.
pub fn fourier_of_signal(psi: &Signal, p: f64) -> Complex64 {
    let axis = psi.axis();
    let step = Complex64::cis(-p * axis.step());
    let mut z = Complex64::cis(-p * axis.min());
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, v) in psi.values().iter().enumerate() {
        acc += v * z * axis.trapezoid_weight(k);
        z *= step;
    }
    acc * axis.step() / (2.0 * PI).sqrt()
}

/// Kirkwood–Rihaczek value `ψ*(q)·ψ̃(p)·e^{ipq}/√(2π)` (position-then-momentum ordering).
pub fn kirkwood_qp_closed(psi: &Signal, p: f64, q: f64) -> Complex64 {
    psi.value_at(q).conj() * fourier_of_signal(psi, p) * Complex64::cis(p * q) / (2.0 * PI).sqrt()
}

/// Anti-ordered partner `ψ(q)·ψ̃*(p)·e^{−ipq}/√(2π)`.
pub fn kirkwood_pq_closed(psi: &Signal, p: f64, q: f64) -> Complex64 {
    kirkwood_qp_closed(psi, p, q).conj()
}

fn sample_on<F: Fn(f64, f64) -> Complex64>(grid: &PhaseGrid, f: F) -> Result<SampledField> {
    SampledField::from_fn(*grid, f)
}

/// Maximum deviations of the transformed Wigner function from the two
/// Kirkwood orderings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KirkwoodResiduals {
    /// `max |T[W](p,q) − kirkwood_qp_closed(p,q)|`
    pub qp: f64,
    /// `max |T⁻¹[W](p,q) − kirkwood_pq_closed(p,q)|`
    pub pq: f64,
}

/// Transforms `W_ψ` (sampled on `wigner_grid`) with both kernels and compares
/// against the closed Kirkwood forms on `out`, whose points are read as `(p, q)`.
pub fn wigner_to_kirkwood_residual(
    psi: &Signal,
    wigner_grid: &PhaseGrid,
    out: &PhaseGrid,
) -> Result<KirkwoodResiduals> {
    let w = wigner_of_signal(psi, wigner_grid)?;
    let fwd = forward_fast(&w, out)?;
    let inv = inverse_fast(&w, out)?;
    let qp = fwd.max_abs_diff(&sample_on(out, |p, q| kirkwood_qp_closed(psi, p, q))?)?;
    let pq = inv.max_abs_diff(&sample_on(out, |p, q| kirkwood_pq_closed(psi, p, q))?)?;
    Ok(KirkwoodResiduals { qp, pq })
}
