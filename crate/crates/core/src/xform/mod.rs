//! The phase-space integral transform
//!
//! ```text
//! f(x,y) = ∬ (dp dq / π) exp{2i(p−x)(q−y)} h(p,q)
//! h(p,q) = ∬ (dx dy / π) exp{−2i(p−x)(q−y)} f(x,y)
//! ```
//!
//! Both directions share one implementation parameterised by the kernel sign.
//! Each has a direct O(N_in·N_out) quadrature and a fast path that factors
//! the kernel into two chirps and a separable Fourier sum evaluated with
//! per-axis Bluestein resampling. The two paths compute the same trapezoid
//! sum, so they agree to rounding.

mod direct;
mod fast;
mod shifted;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{ensure_same_grid, weighted_norm_sq, PhaseGrid, SampledField};

pub use shifted::forward_shifted_form;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    /// Sign of the exponent in the kernel `exp{±2i(a−u)(b−v)}`.
    pub(crate) fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Inverse => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Path {
    Direct,
    Fast,
}

/// A transform between two fixed grids. Fast plans cache their chirp-z setups.
pub struct TransformPlan {
    input_grid: PhaseGrid,
    output_grid: PhaseGrid,
    direction: Direction,
    path: Path,
    fast: Option<fast::FastPlan>,
}

impl TransformPlan {
    pub fn new(input_grid: PhaseGrid, output_grid: PhaseGrid, direction: Direction, path: Path) -> Self {
        let fast = match path {
            Path::Fast => Some(fast::FastPlan::new(&input_grid, &output_grid, direction.sign())),
            Path::Direct => None,
        };
        Self { input_grid, output_grid, direction, path, fast }
    }

    pub fn input_grid(&self) -> &PhaseGrid {
        &self.input_grid
    }

    pub fn output_grid(&self) -> &PhaseGrid {
        &self.output_grid
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn path(&self) -> Path {
        self.path
    }

    pub fn execute(&self, field: &SampledField) -> Result<SampledField> {
        ensure_same_grid(field.grid(), &self.input_grid)?;
        let values = match &self.fast {
            Some(plan) => plan.execute(field),
            None => direct::transform(field, &self.output_grid, self.direction.sign()),
        };
        SampledField::new(self.output_grid, values)
    }
}

/// Runs one transform without keeping the plan.
pub fn transform(field: &SampledField, out: &PhaseGrid, direction: Direction, path: Path) -> Result<SampledField> {
    TransformPlan::new(*field.grid(), *out, direction, path).execute(field)
}

/// Direct trapezoid quadrature of the forward transform on the output grid.
pub fn forward_direct(h: &SampledField, out: &PhaseGrid) -> Result<SampledField> {
    transform(h, out, Direction::Forward, Path::Direct)
}

/// Direct trapezoid quadrature of the inverse transform.
pub fn inverse_direct(f: &SampledField, out: &PhaseGrid) -> Result<SampledField> {
    transform(f, out, Direction::Inverse, Path::Direct)
}

/// Chirp-factored evaluation of the forward transform.
pub fn forward_fast(h: &SampledField, out: &PhaseGrid) -> Result<SampledField> {
    transform(h, out, Direction::Forward, Path::Fast)
}

/// Chirp-factored evaluation of the inverse transform.
pub fn inverse_fast(f: &SampledField, out: &PhaseGrid) -> Result<SampledField> {
    transform(f, out, Direction::Inverse, Path::Fast)
}

/// Relative mismatch `|‖h‖² − ‖T h‖²| / ‖h‖²` of the weighted norms, with `T h` on `out`.
pub fn parseval_residual(h: &SampledField, out: &PhaseGrid) -> Result<f64> {
    let norm_in = weighted_norm_sq(h);
    if norm_in == 0.0 {
        return Err(Error::InvalidParameter("Parseval residual of a zero field is undefined".into()));
    }
    let f = forward_fast(h, out)?;
    Ok((norm_in - weighted_norm_sq(&f)).abs() / norm_in)
}

/// Trapezoid-weighted integrand `w_jk · cell · h_jk / π`, the common first stage of both paths.
pub(crate) fn weighted_input(field: &SampledField) -> Vec<Complex64> {
    let g = field.grid();
    let nq = g.q.len();
    let scale = g.p.step() * g.q.step() / std::f64::consts::PI;
    field
        .values()
        .iter()
        .enumerate()
        .map(|(idx, v)| v * (g.p.trapezoid_weight(idx / nq) * g.q.trapezoid_weight(idx % nq) * scale))
        .collect()
}
