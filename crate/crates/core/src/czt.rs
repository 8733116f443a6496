//! Bluestein evaluation of Fourier-type sums on arbitrary uniform grids.
//!
//! Computes
//!
//! ```text
//! out[m] = Σ_k x[k] · exp(i·κ·t_k·w_m),   t_k = t0 + k·dt,  w_m = w0 + m·dw
//! ```
//!
//! for any real `κ`, `dt`, `dw`, not just the DFT lattice. Writing
//! `k·m = (k² + m² − (m−k)²)/2` turns the sum into a chirp-modulated linear
//! convolution, evaluated with one zero-padded FFT pair.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::grid::Axis;

/// Precomputed chirps and kernel spectrum for one (input axis, output axis, κ) triple.
pub struct ChirpZ {
    n_in: usize,
    n_out: usize,
    pre: Vec<Complex64>,
    post: Vec<Complex64>,
    kernel_spectrum: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl ChirpZ {
    pub fn new(t0: f64, dt: f64, n_in: usize, w0: f64, dw: f64, n_out: usize, kappa: f64) -> Self {
        let len = (n_in + n_out - 1).next_power_of_two();
        let c = 0.5 * kappa * dt * dw;

        let pre = (0..n_in)
            .map(|k| {
                let kf = k as f64;
                Complex64::cis(kappa * w0 * dt * kf + c * (k * k) as f64)
            })
            .collect();
        let post = (0..n_out)
            .map(|m| {
                let mf = m as f64;
                Complex64::cis(kappa * t0 * w0 + kappa * t0 * dw * mf + c * (m * m) as f64)
            })
            .collect();

        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(len);
        let inverse = planner.plan_fft_inverse(len);

        let mut kernel = vec![Complex64::new(0.0, 0.0); len];
        for (j, slot) in kernel.iter_mut().enumerate().take(n_out) {
            *slot = Complex64::cis(-c * (j * j) as f64);
        }
        for j in 1..n_in {
            kernel[len - j] = Complex64::cis(-c * (j * j) as f64);
        }
        forward.process(&mut kernel);
        let scale = 1.0 / len as f64;
        kernel.iter_mut().for_each(|v| *v *= scale);

        Self { n_in, n_out, pre, post, kernel_spectrum: kernel, forward, inverse }
    }

    /// Sum from the samples of `input_axis` onto the samples of `output_axis`.
    pub fn between(input_axis: &Axis, output_axis: &Axis, kappa: f64) -> Self {
        Self::new(
            input_axis.min(),
            input_axis.step(),
            input_axis.len(),
            output_axis.min(),
            output_axis.step(),
            output_axis.len(),
            kappa,
        )
    }

    pub fn input_len(&self) -> usize {
        self.n_in
    }

    pub fn output_len(&self) -> usize {
        self.n_out
    }

    pub fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(input.len(), self.n_in, "chirp-z input length");
        let mut buf = vec![Complex64::new(0.0, 0.0); self.kernel_spectrum.len()];
        for ((b, x), p) in buf.iter_mut().zip(input).zip(&self.pre) {
            *b = x * p;
        }
        self.forward.process(&mut buf);
        for (b, k) in buf.iter_mut().zip(&self.kernel_spectrum) {
            *b *= k;
        }
        self.inverse.process(&mut buf);
        buf.truncate(self.n_out);
        for (b, p) in buf.iter_mut().zip(&self.post) {
            *b *= p;
        }
        buf
    }
}
