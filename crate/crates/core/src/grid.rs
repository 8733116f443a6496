//! Uniform sampling axes, sampled phase-space fields and 1D signals.
//!
//! Fields are stored row-major with the first ("momentum-like") coordinate
//! outer and the second ("position-like") coordinate inner. Every integral
//! over the real line is replaced by the trapezoid rule on the sampled range.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Fractional index distance below which a point is treated as lying on a sample.
pub(crate) const SNAP: f64 = 1e-9;

/// `max` that lets a NaN through, so a broken residual cannot read as zero.
pub(crate) fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// Endpoint-inclusive uniform axis `min + k * step`, `k = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    min: f64,
    max: f64,
    n: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::InvalidAxis(format!("bounds must be finite, got [{min}, {max}]")));
        }
        if n < 2 {
            return Err(Error::InvalidAxis(format!("need at least 2 samples, got {n}")));
        }
        if max <= min {
            return Err(Error::InvalidAxis(format!("max {max} must exceed min {min}")));
        }
        Ok(Self { min, max, n })
    }

    /// Symmetric axis `[-extent, extent]`.
    pub fn symmetric(extent: f64, n: usize) -> Result<Self> {
        Self::new(-extent, extent, n)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.n - 1) as f64
    }

    /// The k-th sample; the last sample is `max` exactly.
    pub fn sample(&self, k: usize) -> f64 {
        debug_assert!(k < self.n);
        if k + 1 == self.n {
            self.max
        } else {
            self.min + k as f64 * self.step()
        }
    }

    pub fn samples(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |k| self.sample(k))
    }

    /// Trapezoid weight of sample `k` (1/2 at both ends, 1 elsewhere).
    pub fn trapezoid_weight(&self, k: usize) -> f64 {
        if k == 0 || k + 1 == self.n {
            0.5
        } else {
            1.0
        }
    }

    /// Largest absolute coordinate on the axis.
    pub fn max_abs(&self) -> f64 {
        self.min.abs().max(self.max.abs())
    }

    /// Same step, `k` extra samples on each side. Samples of `self` stay samples of the result.
    pub fn extended(&self, k: usize) -> Self {
        let step = self.step();
        Self { min: self.min - k as f64 * step, max: self.max + k as f64 * step, n: self.n + 2 * k }
    }

    /// Fractional sample index of `x`.
    pub fn position(&self, x: f64) -> f64 {
        (x - self.min) / self.step()
    }

    /// Index of the sample nearest to `x`, if `x` lies within half a step of the axis.
    pub fn nearest(&self, x: f64) -> Option<usize> {
        let pos = self.position(x);
        if pos < -0.5 || pos > (self.n - 1) as f64 + 0.5 {
            return None;
        }
        Some(pos.round().clamp(0.0, (self.n - 1) as f64) as usize)
    }

    /// Locates `x` for linear interpolation as `(i, t)` with `x = sample(i) + t * step`.
    ///
    /// Points within `SNAP` of a sample return `t = 0`. Points outside the axis return `None`.
    pub fn locate(&self, x: f64) -> Option<(usize, f64)> {
        let pos = self.position(x);
        let last = (self.n - 1) as f64;
        if pos < -SNAP || pos > last + SNAP {
            return None;
        }
        let r = pos.round();
        if (pos - r).abs() <= SNAP {
            return Some((r.clamp(0.0, last) as usize, 0.0));
        }
        let i = pos.floor();
        Some((i as usize, pos - i))
    }

    pub fn contains(&self, x: f64) -> bool {
        self.locate(x).is_some()
    }

    /// True if `other`'s range lies inside this axis.
    pub fn covers(&self, other: &Axis) -> bool {
        self.contains(other.min) && self.contains(other.max)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.min, self.max, self.n)
    }
}

impl FromStr for Axis {
    type Err = Error;

    /// Parses `min,max,n`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidAxis(format!("expected `min,max,n`, got `{s}`")));
        }
        let min: f64 = parts[0].parse().map_err(|_| Error::InvalidAxis(format!("bad min `{}`", parts[0])))?;
        let max: f64 = parts[1].parse().map_err(|_| Error::InvalidAxis(format!("bad max `{}`", parts[1])))?;
        let n: usize = parts[2].parse().map_err(|_| Error::InvalidAxis(format!("bad sample count `{}`", parts[2])))?;
        Axis::new(min, max, n)
    }
}

/// Builds an endpoint-inclusive uniform axis.
pub fn make_axis(min: f64, max: f64, n: usize) -> Result<Axis> {
    Axis::new(min, max, n)
}

/// Tensor product of a first ("p") and second ("q") axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGrid {
    pub p: Axis,
    pub q: Axis,
}

impl PhaseGrid {
    pub fn new(p: Axis, q: Axis) -> Self {
        Self { p, q }
    }

    /// The same axis in both slots.
    pub fn square(axis: Axis) -> Self {
        Self { p: axis, q: axis }
    }

    pub fn len(&self) -> usize {
        self.p.len() * self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, j: usize, k: usize) -> usize {
        j * self.q.len() + k
    }

    /// Coordinates of the flat index `idx`.
    pub fn point(&self, idx: usize) -> (f64, f64) {
        let nq = self.q.len();
        (self.p.sample(idx / nq), self.q.sample(idx % nq))
    }

    /// Product trapezoid weight times cell area.
    pub fn cell_weight(&self, j: usize, k: usize) -> f64 {
        self.p.trapezoid_weight(j) * self.q.trapezoid_weight(k) * self.p.step() * self.q.step()
    }
}

impl fmt::Display for PhaseGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.p, self.q)
    }
}

impl FromStr for PhaseGrid {
    type Err = Error;

    /// Parses `min,max,n;min,max,n` (first axis, then second). A single
    /// `min,max,n` is used for both axes.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(';');
        let first: Axis = parts.next().unwrap_or_default().parse()?;
        let second = match parts.next() {
            Some(t) => t.parse()?,
            None => first,
        };
        if parts.next().is_some() {
            return Err(Error::InvalidAxis(format!("expected at most two axes in `{s}`")));
        }
        Ok(PhaseGrid::new(first, second))
    }
}

/// Complex function sampled on a [`PhaseGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    grid: PhaseGrid,
    values: Vec<Complex64>,
}

impl SampledField {
    pub fn new(grid: PhaseGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), got: values.len() });
        }
        if let Some(idx) = values.iter().position(|v| !v.is_finite()) {
            let (p, q) = grid.point(idx);
            return Err(Error::NonFinite { p, q, value: values[idx].to_string() });
        }
        Ok(Self { grid, values })
    }

    pub(crate) fn from_parts_unchecked(grid: PhaseGrid, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn zeros(grid: PhaseGrid) -> Self {
        Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    /// Samples `f(p, q)` at every grid point.
    pub fn from_fn<F>(grid: PhaseGrid, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Complex64,
    {
        let values = (0..grid.len())
            .map(|idx| {
                let (p, q) = grid.point(idx);
                f(p, q)
            })
            .collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.values[self.grid.index(j, k)]
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| v * c).collect() }
    }

    /// `a * self + b * other` on a shared grid.
    pub fn combine(&self, a: Complex64, other: &SampledField, b: Complex64) -> Result<Self> {
        ensure_same_grid(&self.grid, &other.grid)?;
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        Ok(Self::from_parts_unchecked(self.grid, values))
    }

    /// Bilinear interpolation, zero outside the grid.
    pub fn value_at(&self, p: f64, q: f64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        let (Some((j, tj)), Some((k, tk))) = (self.grid.p.locate(p), self.grid.q.locate(q)) else {
            return zero;
        };
        let at = |jj: usize, kk: usize| self.values[self.grid.index(jj, kk)];
        let row = |jj: usize| {
            if tk == 0.0 {
                at(jj, k)
            } else {
                at(jj, k) * (1.0 - tk) + at(jj, k + 1) * tk
            }
        };
        if tj == 0.0 {
            row(j)
        } else {
            row(j) * (1.0 - tj) + row(j + 1) * tj
        }
    }

    /// Largest magnitude on the outer ring of samples.
    pub fn boundary_max_abs(&self) -> f64 {
        let (np, nq) = (self.grid.p.len(), self.grid.q.len());
        let mut m = 0.0f64;
        for j in 0..np {
            for k in 0..nq {
                if j == 0 || k == 0 || j + 1 == np || k + 1 == nq {
                    m = m.max(self.get(j, k).norm());
                }
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| nan_max(m, v.norm()))
    }

    /// Max-abs difference against another field on the same grid.
    pub fn max_abs_diff(&self, other: &SampledField) -> Result<f64> {
        ensure_same_grid(&self.grid, &other.grid)?;
        Ok(self.values.iter().zip(&other.values).fold(0.0, |m, (a, b)| nan_max(m, (a - b).norm())))
    }

    /// Weighted relative L2 error of `self` against `reference`.
    pub fn relative_l2_error(&self, reference: &SampledField) -> Result<f64> {
        let diff = self.combine(Complex64::new(1.0, 0.0), reference, Complex64::new(-1.0, 0.0))?;
        let denom = weighted_norm_sq(reference);
        if denom == 0.0 {
            return Err(Error::InvalidParameter("reference field has zero norm".into()));
        }
        Ok((weighted_norm_sq(&diff) / denom).sqrt())
    }
}

pub(crate) fn ensure_same_grid(a: &PhaseGrid, b: &PhaseGrid) -> Result<()> {
    if a != b {
        return Err(Error::GridMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

/// Samples a pointwise function on `grid`, rejecting non-finite evaluations.
pub fn sample_field<F>(f: F, grid: &PhaseGrid) -> Result<SampledField>
where
    F: Fn(f64, f64) -> Complex64,
{
    SampledField::from_fn(*grid, f)
}

/// Trapezoid approximation of `∬ (dp dq / π) |h(p,q)|²`.
pub fn weighted_norm_sq(h: &SampledField) -> f64 {
    let g = h.grid();
    let (np, nq) = (g.p.len(), g.q.len());
    let mut acc = 0.0;
    for j in 0..np {
        let wj = g.p.trapezoid_weight(j);
        let mut row = 0.0;
        for k in 0..nq {
            row += g.q.trapezoid_weight(k) * h.get(j, k).norm_sqr();
        }
        acc += wj * row;
    }
    acc * g.p.step() * g.q.step() / PI
}

/// Complex wavefunction sampled on an [`Axis`].
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    axis: Axis,
    values: Vec<Complex64>,
}

impl Signal {
    pub fn new(axis: Axis, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != axis.len() {
            return Err(Error::LengthMismatch { expected: axis.len(), got: values.len() });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { p: f64::NAN, q: axis.sample(k), value: values[k].to_string() });
        }
        Ok(Self { axis, values })
    }

    pub fn from_fn<F>(axis: Axis, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        Self::new(axis, axis.samples().map(f).collect())
    }

    pub fn axis(&self) -> &Axis {
        &self.axis
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Linear interpolation, zero outside the axis.
    pub fn value_at(&self, x: f64) -> Complex64 {
        match self.axis.locate(x) {
            None => Complex64::new(0.0, 0.0),
            Some((i, 0.0)) => self.values[i],
            Some((i, t)) => self.values[i] * (1.0 - t) + self.values[i + 1] * t,
        }
    }

    /// `step * Σ w_k |ψ_k|²`.
    pub fn norm_sq(&self) -> f64 {
        let step = self.axis.step();
        self.values.iter().enumerate().map(|(k, v)| self.axis.trapezoid_weight(k) * v.norm_sqr()).sum::<f64>() * step
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn three_point_axis() {
        let a = make_axis(-6.0, 6.0, 3).unwrap();
        assert_eq!(a.samples().collect::<Vec<_>>(), vec![-6.0, 0.0, 6.0]);
        assert_eq!(a.step(), 6.0);
    }

    #[test]
    fn two_point_axis() {
        let a = make_axis(0.0, 1.0, 2).unwrap();
        assert_eq!(a.samples().collect::<Vec<_>>(), vec![0.0, 1.0]);
        assert_eq!(a.step(), 1.0);
    }

    #[test]
    fn step_of_128_point_axis() {
        let a = make_axis(-6.0, 6.0, 128).unwrap();
        assert_eq!(a.step(), 12.0 / 127.0);
        assert_eq!(a.sample(0), -6.0);
        assert_eq!(a.sample(127), 6.0);
    }

    #[test]
    fn rejects_bad_axes() {
        assert!(make_axis(0.0, 1.0, 1).is_err());
        assert!(make_axis(1.0, 1.0, 4).is_err());
        assert!(make_axis(2.0, 1.0, 4).is_err());
        assert!(make_axis(f64::NAN, 1.0, 4).is_err());
        assert!(make_axis(0.0, f64::INFINITY, 4).is_err());
    }

    #[test]
    fn grid_spec_round_trip() {
        let g: PhaseGrid = "-6,6,128;-5,5,64".parse().unwrap();
        assert_eq!(g.p, Axis::new(-6.0, 6.0, 128).unwrap());
        assert_eq!(g.q, Axis::new(-5.0, 5.0, 64).unwrap());
        let again: PhaseGrid = g.to_string().parse().unwrap();
        assert_eq!(g, again);
        let single: PhaseGrid = "-1,1,3".parse().unwrap();
        assert_eq!(single.p, single.q);
        assert!("1,2".parse::<PhaseGrid>().is_err());
        assert!("0,1,5;0,1,5;0,1,5".parse::<PhaseGrid>().is_err());
    }

    #[test]
    fn extended_axis_keeps_samples() {
        let a = Axis::symmetric(5.0, 128).unwrap();
        let e = a.extended(40);
        assert!((e.step() - a.step()).abs() < 1e-15);
        for k in 0..a.len() {
            assert!((e.sample(k + 40) - a.sample(k)).abs() < 1e-12);
            assert_eq!(e.locate(a.sample(k)), Some((k + 40, 0.0)));
        }
    }

    #[test]
    fn sample_field_examples() {
        let grid = PhaseGrid::square(Axis::symmetric(2.0, 5).unwrap());
        let ones = sample_field(|_, _| c(1.0, 0.0), &grid).unwrap();
        assert!(ones.values().iter().all(|v| *v == c(1.0, 0.0)));

        let gauss = sample_field(|p, q| c((-(p * p + q * q)).exp(), 0.0), &grid).unwrap();
        assert_eq!(gauss.get(2, 2), c(1.0, 0.0));

        let g = PhaseGrid::new(Axis::new(0.0, 1.0, 2).unwrap(), Axis::new(0.0, PI / 4.0, 2).unwrap());
        let chirp = sample_field(|p, q| Complex64::from_polar(1.0, 2.0 * p * q), &g).unwrap();
        assert!((chirp.get(1, 1) - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn sample_field_names_bad_point() {
        let grid = PhaseGrid::square(Axis::new(0.0, 1.0, 2).unwrap());
        let err = sample_field(|p, _| c(1.0 / p, 0.0), &grid).unwrap_err();
        match err {
            Error::NonFinite { p, q, .. } => assert_eq!((p, q), (0.0, 0.0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn norm_of_zero_field() {
        let grid = PhaseGrid::square(Axis::symmetric(3.0, 9).unwrap());
        assert_eq!(weighted_norm_sq(&SampledField::zeros(grid)), 0.0);
    }

    #[test]
    fn gaussian_norms() {
        let grid = PhaseGrid::square(Axis::symmetric(8.0, 256).unwrap());
        let half = sample_field(|p, q| c((-(p * p + q * q) / 2.0).exp(), 0.0), &grid).unwrap();
        assert!((weighted_norm_sq(&half) - 1.0).abs() < 1e-10);
        let full = sample_field(|p, q| c((-(p * p + q * q)).exp(), 0.0), &grid).unwrap();
        assert!((weighted_norm_sq(&full) - 0.5).abs() < 1e-10);
    }

    #[test]
    fn bilinear_lookup() {
        let grid = PhaseGrid::square(Axis::new(0.0, 2.0, 3).unwrap());
        let f = sample_field(|p, q| c(p + 10.0 * q, 0.0), &grid).unwrap();
        assert!((f.value_at(0.5, 1.5) - c(15.5, 0.0)).norm() < 1e-12);
        assert_eq!(f.value_at(2.0, 2.0), c(22.0, 0.0));
        assert_eq!(f.value_at(2.5, 0.0), c(0.0, 0.0));
    }

    #[test]
    fn signal_interpolation_and_norm() {
        let axis = Axis::symmetric(10.0, 401).unwrap();
        let s = Signal::from_fn(axis, |x| c(PI.powf(-0.25) * (-x * x / 2.0).exp(), 0.0)).unwrap();
        assert!((s.norm_sq() - 1.0).abs() < 1e-12);
        assert_eq!(s.value_at(11.0), c(0.0, 0.0));
        assert_eq!(s.value_at(0.0), s.values()[200]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn axis_endpoints_exact(min in -1e3f64..1e3, width in 1e-3f64..1e3, n in 2usize..2000) {
                let a = make_axis(min, min + width, n).unwrap();
                prop_assert_eq!(a.sample(0), min);
                prop_assert_eq!(a.sample(n - 1), min + width);
            }

            #[test]
            fn norm_is_homogeneous(re in -5.0f64..5.0, im in -5.0f64..5.0, shift in -1.0f64..1.0) {
                let grid = PhaseGrid::square(Axis::symmetric(4.0, 33).unwrap());
                let h = sample_field(|p, q| Complex64::new((-(p - shift).powi(2) - q * q).exp(), p * q * (-(p * p + q * q)).exp()), &grid).unwrap();
                let scale = Complex64::new(re, im);
                let lhs = weighted_norm_sq(&h.scaled(scale));
                let rhs = scale.norm_sqr() * weighted_norm_sq(&h);
                prop_assert!((lhs - rhs).abs() <= 1e-13 * rhs.max(1e-300));
            }
        }
    }
}
