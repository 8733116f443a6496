use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{nan_max, Axis, Signal};
use crate::io::{read_table, write_table, KERNEL_HEADER};

/// Position-representation kernel `⟨q1|H|q2⟩` on `q1_axis × q2_axis`, row-major in `q1`.
///
/// Continuum normalisation: `(H ψ)(q1) ≈ step · Σ_q2 ⟨q1|H|q2⟩ ψ(q2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorKernel {
    q1_axis: Axis,
    q2_axis: Axis,
    values: Vec<Complex64>,
}

impl OperatorKernel {
    pub fn new(q1_axis: Axis, q2_axis: Axis, values: Vec<Complex64>) -> Result<Self> {
        let expected = q1_axis.len() * q2_axis.len();
        if values.len() != expected {
            return Err(Error::LengthMismatch { expected, got: values.len() });
        }
        if let Some(idx) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                p: q1_axis.sample(idx / q2_axis.len()),
                q: q2_axis.sample(idx % q2_axis.len()),
                value: values[idx].to_string(),
            });
        }
        Ok(Self { q1_axis, q2_axis, values })
    }

    pub fn from_fn<F>(q1_axis: Axis, q2_axis: Axis, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Complex64,
    {
        let mut values = Vec::with_capacity(q1_axis.len() * q2_axis.len());
        for a in q1_axis.samples() {
            for b in q2_axis.samples() {
                values.push(f(a, b));
            }
        }
        Self::new(q1_axis, q2_axis, values)
    }

    /// `|ψ⟩⟨ψ|`, i.e. `ψ(q1)·ψ*(q2)` on the signal's axis.
    pub fn projector(psi: &Signal) -> Self {
        let v = psi.values();
        let values = v.iter().flat_map(|a| v.iter().map(move |b| a * b.conj())).collect();
        Self { q1_axis: *psi.axis(), q2_axis: *psi.axis(), values }
    }

    pub fn q1_axis(&self) -> &Axis {
        &self.q1_axis
    }

    pub fn q2_axis(&self) -> &Axis {
        &self.q2_axis
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.q2_axis.len() + j]
    }

    pub fn is_square(&self) -> bool {
        self.q1_axis == self.q2_axis
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::GridMismatch(format!(
                "operation needs identical axes, got {} and {}",
                self.q1_axis, self.q2_axis
            )));
        }
        Ok(())
    }

    /// `step · Σ_k ⟨q_k|H|q_k⟩`
    pub fn trace(&self) -> Result<Complex64> {
        self.require_square()?;
        let n = self.q1_axis.len();
        Ok((0..n).map(|k| self.get(k, k)).sum::<Complex64>() * self.q1_axis.step())
    }

    /// `max |⟨q1|H|q2⟩ − conj⟨q2|H|q1⟩|`
    pub fn hermiticity_error(&self) -> Result<f64> {
        self.require_square()?;
        let n = self.q1_axis.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = nan_max(worst, (self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        Ok(worst)
    }

    /// Checks the density-operator invariants: Hermitian and unit trace within `tol`.
    pub fn validate_density(&self, tol: f64) -> Result<()> {
        let h = self.hermiticity_error()?;
        if h > tol {
            return Err(Error::NotDensity(format!("Hermiticity error {h:.3e} exceeds {tol:.1e}")));
        }
        let t = self.trace()?;
        if (t - 1.0).norm() > tol {
            return Err(Error::NotDensity(format!("trace {t} differs from 1 by more than {tol:.1e}")));
        }
        Ok(())
    }

    /// Bilinear interpolation, zero outside the axes.
    pub fn value_at(&self, q1: f64, q2: f64) -> Complex64 {
        let (Some((i, s)), Some((j, t))) = (self.q1_axis.locate(q1), self.q2_axis.locate(q2)) else {
            return Complex64::new(0.0, 0.0);
        };
        let row = |i: usize| {
            if t == 0.0 {
                self.get(i, j)
            } else {
                self.get(i, j) * (1.0 - t) + self.get(i, j + 1) * t
            }
        };
        if s == 0.0 {
            row(i)
        } else {
            row(i) * (1.0 - s) + row(i + 1) * s
        }
    }

    /// Largest magnitude on the outermost rows and columns.
    pub fn boundary_max_abs(&self) -> f64 {
        let (n1, n2) = (self.q1_axis.len(), self.q2_axis.len());
        let mut worst = 0.0f64;
        for i in 0..n1 {
            for j in 0..n2 {
                if i == 0 || j == 0 || i == n1 - 1 || j == n2 - 1 {
                    worst = worst.max(self.get(i, j).norm());
                }
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &OperatorKernel) -> Result<f64> {
        if self.q1_axis != other.q1_axis || self.q2_axis != other.q2_axis {
            return Err(Error::GridMismatch("kernels live on different axes".into()));
        }
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, nan_max))
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        write_table(writer, KERNEL_HEADER, &self.q1_axis, &self.q2_axis, &self.values)
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let (a, b, values) = read_table(reader, KERNEL_HEADER)?;
        Self::new(a, b, values)
    }

    /// Reads a kernel and checks it is a density operator to 1e−8.
    pub fn read_density_csv<R: Read>(reader: R) -> Result<Self> {
        let k = Self::read_csv(reader)?;
        k.validate_density(1e-8)?;
        Ok(k)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(File::create(path)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_csv(File::open(path)?)
    }
}
