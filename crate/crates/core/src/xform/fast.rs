use num_complex::Complex64;
use rayon::prelude::*;

use super::weighted_input;
use crate::czt::ChirpZ;
use crate::grid::{PhaseGrid, SampledField};

/// `exp{2is(a−u)(b−v)} = exp{2is·ab} · exp{−2is·av} · exp{−2is·ub} · exp{2is·uv}`:
/// pre-chirp, a chirp-z pass along each input row (b → u), a second pass
/// along each column (a → v), post-chirp.
pub(super) struct FastPlan {
    input: PhaseGrid,
    output: PhaseGrid,
    sign: f64,
    rows: ChirpZ,
    cols: ChirpZ,
}

impl FastPlan {
    pub(super) fn new(input: &PhaseGrid, output: &PhaseGrid, sign: f64) -> Self {
        Self {
            input: *input,
            output: *output,
            sign,
            rows: ChirpZ::between(&input.q, &output.p, -2.0 * sign),
            cols: ChirpZ::between(&input.p, &output.q, -2.0 * sign),
        }
    }

    pub(super) fn execute(&self, field: &SampledField) -> Vec<Complex64> {
        let (np, nq) = (self.input.p.len(), self.input.q.len());
        let (nu, nv) = (self.output.p.len(), self.output.q.len());
        let s2 = 2.0 * self.sign;

        let mut g = weighted_input(field);
        g.par_chunks_mut(nq).enumerate().for_each(|(j, row)| {
            let a = self.input.p.sample(j);
            for (k, v) in row.iter_mut().enumerate() {
                *v *= Complex64::cis(s2 * a * self.input.q.sample(k));
            }
        });

        // rows[j][u]
        let rows: Vec<Vec<Complex64>> = g.par_chunks(nq).map(|row| self.rows.apply(row)).collect();

        let mut out = vec![Complex64::new(0.0, 0.0); nu * nv];
        out.par_chunks_mut(nv).enumerate().for_each(|(iu, dst)| {
            let column: Vec<Complex64> = (0..np).map(|j| rows[j][iu]).collect();
            let transformed = self.cols.apply(&column);
            let u = self.output.p.sample(iu);
            for (iv, (d, t)) in dst.iter_mut().zip(transformed).enumerate() {
                *d = t * Complex64::cis(s2 * u * self.output.q.sample(iv));
            }
        });
        out
    }
}
