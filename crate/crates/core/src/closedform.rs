//! Closed-form identities around the transform: the Gaussian pair, the
//! chirplet parameterisation by a fractional Fourier angle, the fractional
//! Fourier kernel and its Hermite (Mehler) expansion.
//!
//! Square roots use the principal branch throughout. For the kernel the
//! radicand `2πi·sin α·e^{−iα} = π(1 − e^{−2iα})` has non-negative real part
//! for every real α, and `π(1 − z²)` with `|z| < 1` has strictly positive real
//! part, so the principal branch is the one reached continuously from the
//! convergent Mehler sums inside the unit disk.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{nan_max, Axis, PhaseGrid, SampledField};
use crate::hermite::hermite_functions;
use crate::xform::forward_fast;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Minimum `|sin α|` accepted for kernel evaluations.
pub const SIN_GUARD: f64 = 0.1;

/// Coupled parameters of one fractional Fourier angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrftParams {
    pub alpha: f64,
    /// `λ = −i·tan(π/4 − α/2)`
    pub lambda: Complex64,
    /// `f = i(π/2 − α)`, so that `e^f = i·e^{−iα}`.
    pub f_exponent: Complex64,
}

impl FrftParams {
    /// `tan(π/4 − α/2)`, the chirp rate of the matching chirplet.
    pub fn chirp_rate(&self) -> f64 {
        (FRAC_PI_4 - self.alpha / 2.0).tan()
    }

    /// `2 / (i·e^{−iα} + 1)`
    pub fn prefactor(&self) -> Complex64 {
        2.0 / (self.f_exponent.exp() + 1.0)
    }

    /// Residuals of `−λ/(λ²+1) = i/(2 tan α)` and `2λ²/(λ²+1) = 1 − 1/sin α`.
    pub fn identity_residuals(&self) -> (f64, f64) {
        let l = self.lambda;
        let d = l * l + 1.0;
        let first = (-l / d - I / (2.0 * self.alpha.tan())).norm();
        let second = (2.0 * l * l / d - (1.0 - 1.0 / self.alpha.sin())).norm();
        (first, second)
    }
}

fn check_guard(alpha: f64) -> Result<()> {
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha must be finite, got {alpha}")));
    }
    let s = alpha.sin().abs();
    if s < SIN_GUARD {
        return Err(Error::Singular { alpha, sin_abs: s });
    }
    Ok(())
}

/// Parameters for angle `alpha` (radians); rejects `|sin α| < 0.1`.
pub fn params_of_alpha(alpha: f64) -> Result<FrftParams> {
    check_guard(alpha)?;
    Ok(FrftParams { alpha, lambda: -I * (FRAC_PI_4 - alpha / 2.0).tan(), f_exponent: I * (FRAC_PI_2 - alpha) })
}

/// Closed form of the transform of `exp{−λ(p²+q²)}`:
///
/// ```text
/// (λ²+1)^{-1/2} · exp{ −λ(x²+y²)/(λ²+1) + 2iλ²xy/(λ²+1) }
/// ```
///
/// For `Re λ = 0` this is the analytic continuation (a pure chirplet).
pub fn gaussian_transform_closed(lambda: Complex64, x: f64, y: f64) -> Result<Complex64> {
    if (lambda - I).norm() < 1e-9 || (lambda + I).norm() < 1e-9 {
        return Err(Error::InvalidParameter(format!("lambda = {lambda} makes lambda² + 1 vanish")));
    }
    let d = lambda * lambda + 1.0;
    let exponent = (-lambda * (x * x + y * y) + 2.0 * I * lambda * lambda * x * y) / d;
    Ok(exponent.exp() / d.sqrt())
}

/// Samples `exp{(−ε + i·tan(π/4 − α/2))(p²+q²)}`, a Gaussian-damped chirplet.
pub fn chirplet_field(alpha: f64, epsilon: f64, grid: &PhaseGrid) -> Result<SampledField> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidParameter(format!("chirplet damping must be positive, got {epsilon}")));
    }
    let rate = Complex64::new(-epsilon, (FRAC_PI_4 - alpha / 2.0).tan());
    SampledField::from_fn(*grid, |p, q| (rate * (p * p + q * q)).exp())
}

/// Kernel formula at complex angle and arguments, no guard.
pub(crate) fn kernel_formula(alpha: Complex64, x: Complex64, y: Complex64) -> Complex64 {
    let s = alpha.sin();
    let radicand = 2.0 * PI * I * s * (-I * alpha).exp();
    let exponent = I * (x * x + y * y) * alpha.cos() / (2.0 * s) - I * x * y / s;
    exponent.exp() / radicand.sqrt()
}

/// Fractional Fourier kernel
///
/// ```text
/// K_α(x,y) = (2πi·sin α·e^{−iα})^{-1/2} · exp{ i(x²+y²)/(2 tan α) − ixy/sin α }
/// ```
pub fn frft_kernel(alpha: f64, x: f64, y: f64) -> Result<Complex64> {
    check_guard(alpha)?;
    Ok(kernel_formula(alpha.into(), x.into(), y.into()))
}

/// The kernel formula at a complex angle `α − iδ` (δ ≥ 0), i.e. the Mehler
/// kernel at `z = e^{−δ}·e^{−iα}` inside the unit disk.
pub fn frft_kernel_continued(alpha: Complex64, x: f64, y: f64) -> Result<Complex64> {
    if alpha.im > 0.0 {
        return Err(Error::InvalidParameter(format!("continued angle must have Im <= 0, got {alpha}")));
    }
    let s = alpha.sin().norm();
    if s < SIN_GUARD {
        return Err(Error::Singular { alpha: alpha.re, sin_abs: s });
    }
    Ok(kernel_formula(alpha, x.into(), y.into()))
}

/// Partial Mehler sum `Σ_{n<n_terms} z^n ψ_n(x) ψ_n(y)`.
pub fn mehler_sum(z: Complex64, x: f64, y: f64, n_terms: usize) -> Result<Complex64> {
    if n_terms < 1 {
        return Err(Error::InvalidParameter("need at least one Hermite term".into()));
    }
    let px = hermite_functions(n_terms - 1, x);
    let py = hermite_functions(n_terms - 1, y);
    let mut zn = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b) in px.iter().zip(&py) {
        acc += zn * (a * b);
        zn *= z;
    }
    Ok(acc)
}

/// Spectral form of the kernel, `Σ_{n<n_terms} e^{−iαn} ψ_n(x) ψ_n(y)`.
///
/// On the unit circle the partial sums converge only like `n_terms^{-1/2}`;
/// [`frft_kernel_damped_hermite`] is the geometrically convergent variant.
pub fn frft_kernel_hermite(alpha: f64, x: f64, y: f64, n_terms: usize) -> Result<Complex64> {
    mehler_sum(Complex64::cis(-alpha), x, y, n_terms)
}

/// Mehler sum at `z = e^{−δ}e^{−iα}`, compared against [`frft_kernel_continued`] at `α − iδ`.
pub fn frft_kernel_damped_hermite(alpha: f64, damping: f64, x: f64, y: f64, n_terms: usize) -> Result<Complex64> {
    if !(damping >= 0.0) {
        return Err(Error::InvalidParameter(format!("damping must be >= 0, got {damping}")));
    }
    mehler_sum(Complex64::from_polar((-damping).exp(), -alpha), x, y, n_terms)
}

/// `max |∫ K_a(x,t) K_b(t,y) dt − K_{a+b}(x,y)|` over `points`.
///
/// The `t²` coefficient of the integrand is `i(cot a + cot b)/2`, so the
/// integral is taken along `t = e^{±iπ/8}s` (sign of that coefficient), where
/// the integrand decays like a Gaussian; `s` runs over `[−12, 12]` in 2401 samples.
pub fn frft_composition_residual(a: f64, b: f64, points: &[(f64, f64)]) -> Result<f64> {
    check_guard(a)?;
    check_guard(b)?;
    check_guard(a + b)?;
    let c = (a.cos() / a.sin() + b.cos() / b.sin()) / 2.0;
    if c.abs() < 1e-3 {
        return Err(Error::InvalidParameter(format!(
            "angles {a} and {b} give no Gaussian decay along any rotated contour"
        )));
    }
    let rot = Complex64::cis(c.signum() * PI / 8.0);
    let axis = Axis::symmetric(12.0, 2401)?;
    let mut worst = 0.0f64;
    for &(x, y) in points {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, s) in axis.samples().enumerate() {
            let t = rot * s;
            acc += axis.trapezoid_weight(k)
                * kernel_formula(a.into(), x.into(), t)
                * kernel_formula(b.into(), t, y.into());
        }
        acc *= rot * axis.step();
        worst = nan_max(worst, (acc - frft_kernel(a + b, x, y)?).norm());
    }
    Ok(worst)
}

/// Deviations of the three routes to the chirplet → kernel identity from
/// `√(2π)·K_α(x,y)·e^{ixy}`, maximised over the output grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpletResiduals {
    /// Closed form evaluated directly at the undamped `λ` (analytic continuation).
    pub continuation: f64,
    /// Closed form at the damped `λ_ε = ε − i·tan(π/4 − α/2)`.
    pub regularized_closed: f64,
    /// Fast quadrature of the damped chirplet.
    pub quadrature: f64,
    /// Quadrature against the damped closed form (pure discretisation error).
    pub quadrature_vs_regularized: f64,
}

fn identity_target(alpha: f64, x: f64, y: f64) -> Result<Complex64> {
    Ok((2.0 * PI).sqrt() * frft_kernel(alpha, x, y)? * Complex64::cis(x * y))
}

/// Checks `(2/(ie^{−iα}+1)) · T[chirplet] = √(2π)·K_α·e^{ixy}` on `out`, with
/// the quadrature path run on `quad_grid`.
pub fn chirplet_identity_residual(
    alpha: f64,
    epsilon: f64,
    quad_grid: &PhaseGrid,
    out: &PhaseGrid,
) -> Result<ChirpletResiduals> {
    Ok(chirplet_rung(alpha, epsilon, quad_grid, out)?.0)
}

/// Residuals plus the prefactor-scaled quadrature values on `out`.
fn chirplet_rung(
    alpha: f64,
    epsilon: f64,
    quad_grid: &PhaseGrid,
    out: &PhaseGrid,
) -> Result<(ChirpletResiduals, Vec<Complex64>)> {
    let params = params_of_alpha(alpha)?;
    let field = chirplet_field(alpha, epsilon, quad_grid)?;
    let pref = params.prefactor();
    let quad: Vec<Complex64> = forward_fast(&field, out)?.values().iter().map(|v| pref * v).collect();
    let lambda_eps = params.lambda + epsilon;

    let mut res = ChirpletResiduals {
        continuation: 0.0,
        regularized_closed: 0.0,
        quadrature: 0.0,
        quadrature_vs_regularized: 0.0,
    };
    for (idx, &q) in quad.iter().enumerate() {
        let (x, y) = out.point(idx);
        let target = identity_target(alpha, x, y)?;
        let cont = pref * gaussian_transform_closed(params.lambda, x, y)?;
        let reg = pref * gaussian_transform_closed(lambda_eps, x, y)?;
        res.continuation = nan_max(res.continuation, (cont - target).norm());
        res.regularized_closed = nan_max(res.regularized_closed, (reg - target).norm());
        res.quadrature = nan_max(res.quadrature, (q - target).norm());
        res.quadrature_vs_regularized = nan_max(res.quadrature_vs_regularized, (q - reg).norm());
    }
    Ok((res, quad))
}

/// Quadrature grid on which the damped chirplet for (`alpha`, `epsilon`) is
/// resolved for outputs with `|x|,|y| ≤ out_extent`.
///
/// The square is truncated where `e^{−ε r²} = 1e−8`; the step keeps the
/// largest local frequency `2R√(1+tan²) + 2·out_extent` of the integrand below
/// 80% of the trapezoid rule's aliasing frequency `2π/step`.
pub fn chirplet_quadrature_grid(alpha: f64, epsilon: f64, out_extent: f64) -> Result<PhaseGrid> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("chirplet damping must be positive, got {epsilon}")));
    }
    let radius = (18.42 / epsilon).sqrt();
    let rate = (FRAC_PI_4 - alpha / 2.0).tan();
    let omega = 2.0 * radius * (1.0 + rate * rate).sqrt() + 2.0 * out_extent.abs();
    let step = 0.8 * 2.0 * PI / omega;
    let n = (2.0 * radius / step).ceil() as usize + 1;
    Ok(PhaseGrid::square(Axis::symmetric(radius, n)?))
}

/// Residuals over a damping ladder plus the ε → 0 polynomial extrapolation
/// of the quadrature values through every rung.
#[derive(Debug, Clone, PartialEq)]
pub struct ChirpletSweep {
    pub rungs: Vec<(f64, ChirpletResiduals)>,
    /// Deviation of the extrapolated quadrature values from the identity.
    pub extrapolated: f64,
}

impl ChirpletSweep {
    /// True if the quadrature residual strictly decreases along the ladder
    /// (ordered from largest to smallest ε).
    pub fn is_monotone(&self) -> bool {
        self.rungs.windows(2).all(|w| w[1].1.quadrature < w[0].1.quadrature)
    }

    /// Largest ratio of consecutive quadrature residuals; below 1 iff monotone.
    pub fn worst_ratio(&self) -> f64 {
        self.rungs.windows(2).map(|w| w[1].1.quadrature / w[0].1.quadrature).fold(0.0, nan_max)
    }
}

/// Runs [`chirplet_identity_residual`] for each ε (sorted descending) on a
/// shared quadrature grid sized for the smallest ε.
pub fn chirplet_epsilon_sweep(alpha: f64, epsilons: &[f64], out: &PhaseGrid) -> Result<ChirpletSweep> {
    if epsilons.is_empty() {
        return Err(Error::InvalidParameter("empty epsilon ladder".into()));
    }
    let mut ladder = epsilons.to_vec();
    ladder.sort_by(|a, b| b.total_cmp(a));
    let smallest = *ladder.last().unwrap();
    let extent = out.p.max_abs().max(out.q.max_abs());
    let quad_grid = chirplet_quadrature_grid(alpha, smallest, extent)?;

    let mut rungs = Vec::with_capacity(ladder.len());
    let mut quad_values = Vec::with_capacity(ladder.len());
    for &eps in &ladder {
        let (res, values) = chirplet_rung(alpha, eps, &quad_grid, out)?;
        rungs.push((eps, res));
        quad_values.push(values);
    }

    let mut extrapolated = 0.0f64;
    for idx in 0..out.len() {
        let (x, y) = out.point(idx);
        let samples: Vec<Complex64> = quad_values.iter().map(|v| v[idx]).collect();
        let value = neville_at_zero(&ladder, &samples);
        extrapolated = nan_max(extrapolated, (value - identity_target(alpha, x, y)?).norm());
    }
    Ok(ChirpletSweep { rungs, extrapolated })
}

/// Value at 0 of the polynomial through `(xs[i], ys[i])`.
fn neville_at_zero(xs: &[f64], ys: &[Complex64]) -> Complex64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (p[i] * xs[i + m] - p[i + 1] * xs[i]) / (xs[i + m] - xs[i]);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gaussian_closed_examples() {
        let v = gaussian_transform_closed(c(1.0, 0.0), 0.0, 0.0).unwrap();
        assert!((v - c(1.0 / 2f64.sqrt(), 0.0)).norm() < 1e-15);

        for (x, y) in [(0.0, 0.0), (1.0, -2.0), (3.0, 3.0)] {
            let v = gaussian_transform_closed(c(0.0, 0.0), x, y).unwrap();
            assert!((v - 1.0).norm() < 1e-15);
        }

        let v = gaussian_transform_closed(c(1.0, 0.0), 1.0, 1.0).unwrap();
        let expected = Complex64::from_polar((-1.0f64).exp() / 2f64.sqrt(), 1.0);
        assert!((v - expected).norm() < 1e-15);
    }

    #[test]
    fn gaussian_closed_rejects_poles() {
        assert!(gaussian_transform_closed(I, 0.0, 0.0).is_err());
        assert!(gaussian_transform_closed(-I + 1e-12, 0.0, 0.0).is_err());
    }

    #[test]
    fn params_examples() {
        let p = params_of_alpha(FRAC_PI_2).unwrap();
        assert!(p.lambda.norm() < 1e-16);

        let p = params_of_alpha(PI / 3.0).unwrap();
        assert!((p.lambda - c(0.0, -(PI / 12.0).tan())).norm() < 1e-16);
        let (r1, r2) = p.identity_residuals();
        assert!(r1 < 1e-12 && r2 < 1e-12);

        assert!(params_of_alpha(2.8).is_ok());
        assert!(matches!(params_of_alpha(3.1), Err(Error::Singular { .. })));
        assert!(params_of_alpha(0.05).is_err());
        assert!(params_of_alpha(f64::NAN).is_err());
    }

    #[test]
    fn prefactor_matches_exponent() {
        let p = params_of_alpha(1.0).unwrap();
        let direct = 2.0 / (I * Complex64::cis(-1.0) + 1.0);
        assert!((p.prefactor() - direct).norm() < 1e-15);
    }

    #[test]
    fn chirplet_examples() {
        let grid = PhaseGrid::square(Axis::symmetric(2.0, 5).unwrap());
        let f = chirplet_field(FRAC_PI_2, 0.3, &grid).unwrap();
        for idx in 0..grid.len() {
            let (p, q) = grid.point(idx);
            assert!((f.values()[idx] - (-0.3 * (p * p + q * q)).exp()).norm() < 1e-15);
        }
        for alpha in [0.3, 1.0, 2.5] {
            let f = chirplet_field(alpha, 0.01, &grid).unwrap();
            assert_eq!(f.get(2, 2), c(1.0, 0.0));
            assert!(f.values().iter().all(|v| v.norm() <= 1.0));
        }
        let g = PhaseGrid::square(Axis::new(0.0, 1.0, 2).unwrap());
        let f = chirplet_field(PI / 3.0, 0.01, &g).unwrap();
        let expected = (-0.02f64).exp() * Complex64::cis(2.0 * (PI / 12.0).tan());
        assert!((f.get(1, 1) - expected).norm() < 1e-15);
        assert!(chirplet_field(1.0, 0.0, &g).is_err());
        assert!(chirplet_field(1.0, -1.0, &g).is_err());
    }

    #[test]
    fn kernel_examples() {
        for (x, y) in [(0.0, 0.0), (1.0, 2.0), (-2.5, 0.3)] {
            let k = frft_kernel(FRAC_PI_2, x, y).unwrap();
            let fourier = Complex64::cis(-x * y) / (2.0 * PI).sqrt();
            assert!((k - fourier).norm() < 1e-15);
        }
        let a = PI / 3.0;
        let k = frft_kernel(a, 0.0, 0.0).unwrap();
        let expected = 1.0 / (2.0 * PI * I * a.sin() * Complex64::cis(-a)).sqrt();
        assert!((k - expected).norm() < 1e-15);
        assert!(matches!(frft_kernel(3.1, 0.0, 0.0), Err(Error::Singular { .. })));
    }

    #[test]
    fn hermite_sum_at_origin_uses_even_terms_only() {
        let full = frft_kernel_hermite(1.0, 0.0, 0.0, 41).unwrap();
        let psi = hermite_functions(40, 0.0);
        let even: Complex64 = (0..=20).map(|k| Complex64::cis(-2.0 * k as f64) * psi[2 * k] * psi[2 * k]).sum();
        assert!((full - even).norm() < 1e-15);
    }

    #[test]
    fn hermite_sum_rejects_zero_terms() {
        assert!(frft_kernel_hermite(1.0, 0.0, 0.0, 0).is_err());
    }

    #[test]
    fn undamped_sum_converges_like_inverse_square_root() {
        let exact = frft_kernel(1.0, 0.0, 0.0).unwrap();
        let e100 = (frft_kernel_hermite(1.0, 0.0, 0.0, 100).unwrap() - exact).norm();
        let e1600 = (frft_kernel_hermite(1.0, 0.0, 0.0, 1600).unwrap() - exact).norm();
        let rate = e100 / e1600;
        assert!(rate > 3.0 && rate < 5.0, "ratio {rate}");
    }

    /// Geometric convergence inside the disk pins the principal branch of the
    /// closed form for every angle, including ones past π.
    #[test]
    fn damped_hermite_sum_pins_branch() {
        for alpha in [0.3, 1.0, FRAC_PI_2, 2.0, 2.8, 4.0, -1.0, 5.5] {
            for damping in [1.0, 0.25, 0.1] {
                let terms = (30.0 / damping) as usize;
                for (x, y) in [(0.0, 0.0), (1.0, 0.5), (3.0, -2.0), (-3.0, 3.0)] {
                    let sum = frft_kernel_damped_hermite(alpha, damping, x, y, terms).unwrap();
                    let closed = frft_kernel_continued(c(alpha, -damping), x, y).unwrap();
                    assert!((sum - closed).norm() < 1e-10, "alpha {alpha} damping {damping} ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn continued_kernel_reduces_to_real_angle() {
        let a = frft_kernel_continued(c(1.2, 0.0), 0.4, -1.1).unwrap();
        let b = frft_kernel(1.2, 0.4, -1.1).unwrap();
        assert_eq!(a, b);
        assert!(frft_kernel_continued(c(1.0, 0.1), 0.0, 0.0).is_err());
    }

    #[test]
    fn closed_kernel_composes() {
        let pts = [(0.0, 0.0), (0.5, -1.0), (2.0, 1.5), (-3.0, 3.0)];
        let r = frft_composition_residual(FRAC_PI_4, FRAC_PI_4, &pts).unwrap();
        assert!(r < 1e-6, "{r}");
        // cot a + cot b < 0: the contour rotates the other way.
        let r = frft_composition_residual(2.5, 2.0, &pts).unwrap();
        assert!(r < 1e-6, "{r}");
        assert!(frft_composition_residual(1.0, PI - 1.0, &pts).is_err());
    }

    #[test]
    fn continuation_path_matches_kernel() {
        let out = PhaseGrid::square(Axis::symmetric(2.0, 9).unwrap());
        for alpha in [PI / 3.0, FRAC_PI_2, 2.0 * PI / 3.0] {
            let p = params_of_alpha(alpha).unwrap();
            for idx in 0..out.len() {
                let (x, y) = out.point(idx);
                let lhs = p.prefactor() * gaussian_transform_closed(p.lambda, x, y).unwrap();
                let rhs = identity_target(alpha, x, y).unwrap();
                assert!((lhs - rhs).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn chirplet_quadrature_converges_with_damping() {
        let out = PhaseGrid::square(Axis::symmetric(0.25, 5).unwrap());
        let sweep = chirplet_epsilon_sweep(FRAC_PI_2, &[0.1, 0.05, 0.02, 0.01], &out).unwrap();
        assert!(sweep.is_monotone(), "{:?}", sweep.rungs);
        let (eps, r) = sweep.rungs[1];
        assert_eq!(eps, 0.05);
        assert!(r.quadrature < 1e-2, "{}", r.quadrature);
        for (_, r) in &sweep.rungs {
            assert!(r.continuation < 1e-10);
            assert!(r.quadrature_vs_regularized < 1e-6, "{}", r.quadrature_vs_regularized);
        }
        assert!(sweep.extrapolated < 1e-4, "{}", sweep.extrapolated);
    }

    #[test]
    fn neville_extrapolates_polynomials_exactly() {
        let xs = [0.1, 0.05, 0.02, 0.01];
        let ys: Vec<Complex64> = xs.iter().map(|x| c(3.0 - 2.0 * x + x * x * x, x * 5.0)).collect();
        assert!((neville_at_zero(&xs, &ys) - c(3.0, 0.0)).norm() < 1e-12);
    }

    proptest! {
        #[test]
        fn lambda_identities_hold(alpha in -7.0f64..7.0) {
            prop_assume!(alpha.sin().abs() >= SIN_GUARD);
            let (r1, r2) = params_of_alpha(alpha).unwrap().identity_residuals();
            prop_assert!(r1 < 1e-12 && r2 < 1e-12, "alpha {} residuals {} {}", alpha, r1, r2);
        }

        #[test]
        fn kernel_is_symmetric(alpha in 0.2f64..2.9, x in -4.0f64..4.0, y in -4.0f64..4.0) {
            let a = frft_kernel(alpha, x, y).unwrap();
            let b = frft_kernel(alpha, y, x).unwrap();
            prop_assert!((a - b).norm() <= 1e-14 * a.norm().max(1.0));
        }

        #[test]
        fn small_lambda_tends_to_one(x in -3.0f64..3.0, y in -3.0f64..3.0) {
            let v = gaussian_transform_closed(c(1e-9, 0.0), x, y).unwrap();
            prop_assert!((v - 1.0).norm() < 1e-7);
        }
    }
}
