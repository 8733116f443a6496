use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::grid::{PhaseGrid, SampledField, SNAP};

/// Forward transform through the shifted representation
///
/// ```text
/// f(x,y) = ∬ (dp dq / 2π) h(p + x, y + q/2) exp{ipq}
/// ```
///
/// Integration nodes sit on the fixed lattices `p = m·Δp`, `q = 2m·Δq`
/// (Δp, Δq the steps of `h`), independent of `(x, y)`. The shifted arguments
/// are bilinearly interpolated inside `h`'s grid and zero outside, so the
/// agreement with [`super::forward_direct`] is limited by interpolation error
/// unless the output points happen to be commensurate with the input lattice.
pub fn forward_shifted_form(h: &SampledField, out: &PhaseGrid) -> Result<SampledField> {
    let g = *h.grid();
    let (dp, dq) = (g.p.step(), g.q.step());
    let nu = 2.0 * dq;
    let measure = dp * nu / (2.0 * PI);
    let (np, nq) = (g.p.len() as i64, g.q.len() as i64);
    let zero = Complex64::new(0.0, 0.0);
    let at = |j: i64, k: i64| -> Complex64 {
        if j < 0 || k < 0 || j >= np || k >= nq {
            zero
        } else {
            h.get(j as usize, k as usize)
        }
    };

    let nv = out.q.len();
    let mut values = vec![zero; out.len()];
    values.par_chunks_mut(nv).enumerate().for_each(|(iu, row)| {
        let x = out.p.sample(iu);
        // p + x = p_min + (m + offset_p)·Δp
        let (base_p, frac_p) = split(g.p.position(x));
        for (iv, slot) in row.iter_mut().enumerate() {
            let y = out.q.sample(iv);
            let (base_q, frac_q) = split(g.q.position(y));
            let interp = |m_p: i64, m_q: i64| -> Complex64 {
                let j = m_p + base_p;
                let k = m_q + base_q;
                let lo = if frac_q == 0.0 { at(j, k) } else { at(j, k) * (1.0 - frac_q) + at(j, k + 1) * frac_q };
                if frac_p == 0.0 {
                    lo
                } else {
                    let hi = if frac_q == 0.0 {
                        at(j + 1, k)
                    } else {
                        at(j + 1, k) * (1.0 - frac_q) + at(j + 1, k + 1) * frac_q
                    };
                    lo * (1.0 - frac_p) + hi * frac_p
                }
            };
            // Node index ranges where the interpolated integrand can be non-zero.
            let (mp_lo, mp_hi) = (-base_p - 1, np - base_p);
            let (mq_lo, mq_hi) = (-base_q - 1, nq - base_q);
            let mut acc = zero;
            for m_p in mp_lo..=mp_hi {
                let wp = if m_p == mp_lo || m_p == mp_hi { 0.5 } else { 1.0 };
                let p = m_p as f64 * dp;
                let step = Complex64::cis(p * nu);
                let mut z = Complex64::cis(p * nu * mq_lo as f64);
                let mut row_acc = zero;
                for m_q in mq_lo..=mq_hi {
                    let wq = if m_q == mq_lo || m_q == mq_hi { 0.5 } else { 1.0 };
                    row_acc += interp(m_p, m_q) * z * wq;
                    z *= step;
                }
                acc += row_acc * wp;
            }
            *slot = acc * measure;
        }
    });
    SampledField::new(*out, values)
}

/// Integer part and fractional remainder of a fractional index, snapping near-integers.
fn split(pos: f64) -> (i64, f64) {
    let r = pos.round();
    if (pos - r).abs() <= SNAP {
        return (r as i64, 0.0);
    }
    let f = pos.floor();
    (f as i64, pos - f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{sample_field, Axis};
    use crate::xform::forward_direct;

    fn gaussian_on(extent: f64, n: usize) -> SampledField {
        let grid = PhaseGrid::square(Axis::symmetric(extent, n).unwrap());
        sample_field(|p, q| Complex64::new((-(p * p + q * q)).exp(), 0.0), &grid).unwrap()
    }

    fn off_lattice_out() -> PhaseGrid {
        PhaseGrid::square(Axis::new(-2.0, 2.0, 17).unwrap())
    }

    /// Bilinear error scales with step², so the 256-point grid spans [−3, 3]
    /// (step ≈ 0.024). Truncation at ±3 is common to both sides of the comparison.
    fn mismatch(n: usize) -> f64 {
        let h = gaussian_on(3.0, n);
        let out = off_lattice_out();
        let shifted = forward_shifted_form(&h, &out).unwrap();
        let direct = forward_direct(&h, &out).unwrap();
        shifted.max_abs_diff(&direct).unwrap()
    }

    #[test]
    fn matches_direct_on_256_grid() {
        let e = mismatch(256);
        assert!(e < 1e-4, "{e}");
    }

    #[test]
    fn refinement_tightens_agreement() {
        let coarse = mismatch(128);
        let fine = mismatch(256);
        assert!(fine < coarse, "{fine} !< {coarse}");
        let rate = coarse / fine;
        assert!(rate > 3.5 && rate < 4.5, "second-order rate expected, got {rate}");
    }

    #[test]
    fn commensurate_points_are_exact() {
        let h = gaussian_on(6.0, 129);
        // Input step is 12/128; output step matches it.
        let out = PhaseGrid::square(Axis::symmetric(0.75, 17).unwrap());
        let e = forward_shifted_form(&h, &out).unwrap().max_abs_diff(&forward_direct(&h, &out).unwrap()).unwrap();
        assert!(e < 1e-12, "{e}");
    }

    #[test]
    fn zero_field() {
        let grid = PhaseGrid::square(Axis::symmetric(3.0, 12).unwrap());
        let f = forward_shifted_form(&SampledField::zeros(grid), &grid).unwrap();
        assert_eq!(f.max_abs(), 0.0);
    }
}
