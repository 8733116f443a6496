use num_complex::Complex64;
use rayon::prelude::*;

use super::weighted_input;
use crate::grid::{PhaseGrid, SampledField};

/// `Σ_jk W_jk h_jk exp{2is(a_j−u)(b_k−v)} / π` for every output point `(u, v)`.
///
/// The phase along the inner axis is linear in `k`, so each inner row is
/// generated from one exact seed by repeated multiplication with a fixed
/// step factor. Seeds are recomputed for every `(u, v, j)`.
pub(super) fn transform(field: &SampledField, out: &PhaseGrid, sign: f64) -> Vec<Complex64> {
    let g = field.grid();
    let weighted = weighted_input(field);
    let (np, nq) = (g.p.len(), g.q.len());
    let a: Vec<f64> = g.p.samples().collect();
    let b0 = g.q.min();
    let db = g.q.step();
    let nv = out.q.len();

    let mut values = vec![Complex64::new(0.0, 0.0); out.len()];
    values.par_chunks_mut(nv).enumerate().for_each(|(iu, row)| {
        let u = out.p.sample(iu);
        for (iv, slot) in row.iter_mut().enumerate() {
            let v = out.q.sample(iv);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..np {
                let coef = 2.0 * sign * (a[j] - u);
                let step = Complex64::cis(coef * db);
                let mut z = Complex64::cis(coef * (b0 - v));
                let mut row_acc = Complex64::new(0.0, 0.0);
                for w in &weighted[j * nq..(j + 1) * nq] {
                    row_acc += w * z;
                    z *= step;
                }
                acc += row_acc;
            }
            *slot = acc;
        }
    });
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Axis;
    use std::f64::consts::PI;

    /// One `cis` per term; the reference for the recurrence above.
    fn per_term_exp(field: &SampledField, out: &PhaseGrid, sign: f64) -> Vec<Complex64> {
        let g = field.grid();
        (0..out.len())
            .map(|o| {
                let (u, v) = out.point(o);
                (0..g.len())
                    .map(|i| {
                        let (a, b) = g.point(i);
                        let (j, k) = (i / g.q.len(), i % g.q.len());
                        field.values()[i] * g.cell_weight(j, k) * Complex64::cis(2.0 * sign * (a - u) * (b - v))
                    })
                    .sum::<Complex64>()
                    / PI
            })
            .collect()
    }

    #[test]
    fn recurrence_matches_per_term_exponentials() {
        let grid = PhaseGrid::new(Axis::new(-4.0, 5.0, 41).unwrap(), Axis::new(-5.0, 4.0, 37).unwrap());
        let field =
            SampledField::from_fn(grid, |p, q| Complex64::new(1.0 + p, q * 0.5) * (-(p * p + q * q) / 2.0).exp())
                .unwrap();
        let out = PhaseGrid::new(Axis::new(-1.3, 2.2, 7).unwrap(), Axis::new(-0.4, 0.9, 5).unwrap());
        for sign in [1.0, -1.0] {
            let fast = transform(&field, &out, sign);
            let slow = per_term_exp(&field, &out, sign);
            for (x, y) in fast.iter().zip(&slow) {
                assert!((x - y).norm() < 1e-13);
            }
        }
    }
}
