use crate::error::{Error, Result};
use crate::grid::{nan_max, Axis};
use crate::hermite::hermite_functions;

/// Table of `ψ_n(q_k)` for `n = 0..=n_max` on one axis.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteBasis {
    n_max: usize,
    axis: Axis,
    table: Vec<f64>,
}

impl HermiteBasis {
    pub fn new(n_max: usize, axis: Axis) -> Self {
        let len = axis.len();
        let mut table = vec![0.0; (n_max + 1) * len];
        for (k, q) in axis.samples().enumerate() {
            for (n, v) in hermite_functions(n_max, q).into_iter().enumerate() {
                table[n * len + k] = v;
            }
        }
        Self { n_max, axis, table }
    }

    /// Basis on a symmetric axis with the given step that covers `±(√(2·n_max) + 4)`.
    pub fn adequate(n_max: usize, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidParameter(format!("step must be positive, got {step}")));
        }
        let half = ((2.0 * n_max as f64).sqrt() + 4.0) / step;
        let k = half.ceil() as usize;
        let axis = Axis::new(-(k as f64) * step, k as f64 * step, 2 * k + 1)?;
        Ok(Self::new(n_max, axis))
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn axis(&self) -> &Axis {
        &self.axis
    }

    /// `ψ_n` sampled on the axis.
    pub fn psi(&self, n: usize) -> &[f64] {
        let len = self.axis.len();
        &self.table[n * len..(n + 1) * len]
    }

    /// `step · Σ_k ψ_m(q_k) ψ_n(q_k)`
    pub fn overlap(&self, m: usize, n: usize) -> f64 {
        let (a, b) = (self.psi(m), self.psi(n));
        a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() * self.axis.step()
    }

    /// `max_{m,n} |overlap(m, n) − δ_mn|`.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for m in 0..=self.n_max {
            for n in m..=self.n_max {
                let target = if m == n { 1.0 } else { 0.0 };
                worst = nan_max(worst, (self.overlap(m, n) - target).abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthonormal_up_to_120_modes() {
        let basis = HermiteBasis::adequate(120, 0.08).unwrap();
        assert!(basis.axis().min() <= -19.49 && basis.axis().max() >= 19.49);
        let e = basis.orthonormality_error();
        assert!(e < 1e-8, "{e}");
    }

    #[test]
    fn narrow_axis_breaks_orthonormality() {
        let basis = HermiteBasis::new(40, Axis::symmetric(5.0, 201).unwrap());
        assert!(basis.orthonormality_error() > 1e-3);
    }

    #[test]
    fn table_rows_are_hermite_functions() {
        let basis = HermiteBasis::new(5, Axis::symmetric(2.0, 9).unwrap());
        for n in 0..=5 {
            for (k, q) in basis.axis().samples().enumerate() {
                assert_eq!(basis.psi(n)[k], crate::hermite::hermite_function(n, q));
            }
        }
    }
}
