use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::kernel::OperatorKernel;
use crate::error::{Error, Result};
use crate::grid::{Axis, PhaseGrid, SampledField, Signal, SNAP};
use crate::xform::{forward_fast, inverse_fast};

const DECAY: f64 = 1e-12;

/// `∫du e^{σ·ipu} F(q + u/2, q − u/2)` for every `(p, q)` of `grid`.
///
/// When both axes coincide and `q` lies on their half-lattice, the pairs
/// `(a, s − a)` with `s = 2(q − min)/step` hit samples exactly and `u` runs
/// in steps of `2·step`. Otherwise `u` runs in steps of `step` and `F` is
/// taken from `interp`.
fn antidiagonal_transform<E, B>(
    a1: &Axis,
    a2: &Axis,
    exact: E,
    interp: B,
    grid: &PhaseGrid,
    sigma: f64,
) -> Vec<Complex64>
where
    E: Fn(usize, usize) -> Complex64 + Sync,
    B: Fn(f64, f64) -> Complex64 + Sync,
{
    let zero = Complex64::new(0.0, 0.0);
    let aligned = a1 == a2;
    let d = a1.step().min(a2.step());
    let columns: Vec<Vec<Complex64>> = (0..grid.q.len())
        .into_par_iter()
        .map(|kq| {
            let q = grid.q.sample(kq);
            let (u0, du, vals) = samples_along_antidiagonal(a1, a2, aligned, d, q, &exact, &interp);
            (0..grid.p.len())
                .map(|jp| {
                    if vals.is_empty() {
                        return zero;
                    }
                    let p = grid.p.sample(jp);
                    let step = Complex64::cis(sigma * p * du);
                    let mut z = Complex64::cis(sigma * p * u0);
                    let last = vals.len() - 1;
                    let mut acc = zero;
                    for (k, v) in vals.iter().enumerate() {
                        let w = if k == 0 || k == last { 0.5 } else { 1.0 };
                        acc += v * z * w;
                        z *= step;
                    }
                    acc * du
                })
                .collect()
        })
        .collect();
    let nq = grid.q.len();
    let mut out = vec![zero; grid.len()];
    for (kq, col) in columns.into_iter().enumerate() {
        for (jp, v) in col.into_iter().enumerate() {
            out[jp * nq + kq] = v;
        }
    }
    out
}

/// `(u_0, Δu, F(q + u_k/2, q − u_k/2))`
fn samples_along_antidiagonal<E, B>(
    a1: &Axis,
    a2: &Axis,
    aligned: bool,
    d: f64,
    q: f64,
    exact: &E,
    interp: &B,
) -> (f64, f64, Vec<Complex64>)
where
    E: Fn(usize, usize) -> Complex64,
    B: Fn(f64, f64) -> Complex64,
{
    if aligned {
        let s = 2.0 * (q - a1.min()) / a1.step();
        let r = s.round();
        if (s - r).abs() <= 2.0 * SNAP {
            let s = r as i64;
            let last = a1.len() as i64 - 1;
            let lo = (s - last).max(0);
            let hi = s.min(last);
            if lo > hi {
                return (0.0, 2.0 * d, Vec::new());
            }
            let vals = (lo..=hi).map(|a| exact(a as usize, (s - a) as usize)).collect();
            return ((2 * lo - s) as f64 * d, 2.0 * d, vals);
        }
    }
    let lo = (2.0 * (a1.min() - q)).max(2.0 * (q - a2.max()));
    let hi = (2.0 * (a1.max() - q)).min(2.0 * (q - a2.min()));
    if lo > hi {
        return (0.0, d, Vec::new());
    }
    let n = ((hi - lo) / d).floor() as usize + 1;
    let vals = (0..n)
        .map(|k| {
            let u = lo + k as f64 * d;
            interp(q + u / 2.0, q - u / 2.0)
        })
        .collect();
    (lo, d, vals)
}

fn check_midpoints(kind: &str, q1: &Axis, q2: &Axis, q: &Axis) -> Result<()> {
    let lo = q1.min().max(q2.min());
    let hi = q1.max().min(q2.max());
    let tol = SNAP * q.step();
    if q.min() < lo - tol || q.max() > hi + tol {
        return Err(Error::GridMismatch(format!(
            "{kind}: q range [{}, {}] exceeds the kernel's diagonal [{lo}, {hi}]",
            q.min(),
            q.max()
        )));
    }
    Ok(())
}

/// Weyl symbol `h(p,q) = ∫du e^{−ipu} ⟨q + u/2|H|q − u/2⟩`, stored with `p` first.
pub fn weyl_symbol(h: &OperatorKernel, grid: &PhaseGrid) -> Result<SampledField> {
    check_midpoints("weyl_symbol", h.q1_axis(), h.q2_axis(), &grid.q)?;
    let b = h.boundary_max_abs();
    if b > DECAY {
        log::warn!("kernel boundary magnitude {b:.3e} exceeds {DECAY:.0e}; symbol is truncated");
    }
    let values =
        antidiagonal_transform(h.q1_axis(), h.q2_axis(), |i, j| h.get(i, j), |a, b| h.value_at(a, b), grid, -1.0);
    SampledField::new(*grid, values)
}

/// Wigner function `(1/2π)∫du e^{−ipu} ⟨q + u/2|ρ|q − u/2⟩`.
pub fn wigner_of_density(rho: &OperatorKernel, grid: &PhaseGrid) -> Result<SampledField> {
    Ok(weyl_symbol(rho, grid)?.scaled(Complex64::new(1.0 / (2.0 * PI), 0.0)))
}

/// Wigner transform `W(p,q) = ∫(du/2π) e^{ipu} ψ*(q + u/2) ψ(q − u/2)` of a signal.
pub fn wigner_of_signal(psi: &Signal, grid: &PhaseGrid) -> Result<SampledField> {
    let axis = psi.axis();
    check_midpoints("wigner_of_signal", axis, axis, &grid.q)?;
    let v = psi.values();
    let edge = v[0].norm().max(v[v.len() - 1].norm());
    if edge > DECAY {
        log::warn!("signal boundary magnitude {edge:.3e} exceeds {DECAY:.0e}");
    }
    let values = antidiagonal_transform(
        axis,
        axis,
        |i, j| v[i].conj() * v[j],
        |a, b| psi.value_at(a).conj() * psi.value_at(b),
        grid,
        1.0,
    );
    SampledField::new(*grid, values).map(|w| w.scaled(Complex64::new(1.0 / (2.0 * PI), 0.0)))
}

/// Weyl quantisation `⟨q1|H|q2⟩ = (1/2π)∫dp h(p, (q1+q2)/2) e^{ip(q1−q2)}`.
///
/// The midpoint is linearly interpolated along `h`'s q axis; it is exact when
/// the symbol's q step is half the kernel step on a shared lattice.
pub fn weyl_quantize(h: &SampledField, q1_axis: &Axis, q2_axis: &Axis) -> Result<OperatorKernel> {
    let g = *h.grid();
    let lo = (q1_axis.min() + q2_axis.min()) / 2.0;
    let hi = (q1_axis.max() + q2_axis.max()) / 2.0;
    if !g.q.contains(lo) || !g.q.contains(hi) {
        return Err(Error::GridMismatch(format!(
            "weyl_quantize: midpoints span [{lo}, {hi}] but the symbol covers q in [{}, {}]",
            g.q.min(),
            g.q.max()
        )));
    }
    let (np, nq) = (g.p.len(), g.q.len());
    let p_edge = (0..nq).map(|k| h.get(0, k).norm().max(h.get(np - 1, k).norm())).fold(0.0, f64::max);
    if p_edge > DECAY {
        log::warn!("symbol magnitude {p_edge:.3e} at the p truncation exceeds {DECAY:.0e}");
    }

    let dp = g.p.step();
    let p0 = g.p.min();
    let weights: Vec<f64> = (0..np).map(|j| g.p.trapezoid_weight(j) * dp / (2.0 * PI)).collect();
    let n2 = q2_axis.len();
    let mut values = vec![Complex64::new(0.0, 0.0); q1_axis.len() * n2];
    values.par_chunks_mut(n2).enumerate().for_each(|(i, row)| {
        let a = q1_axis.sample(i);
        for (j, slot) in row.iter_mut().enumerate() {
            let b = q2_axis.sample(j);
            let (k, t) = g.q.locate((a + b) / 2.0).expect("midpoint range checked");
            let delta = a - b;
            let step = Complex64::cis(dp * delta);
            let mut z = Complex64::cis(p0 * delta);
            let mut acc = Complex64::new(0.0, 0.0);
            for (jp, w) in weights.iter().enumerate() {
                let v = if t == 0.0 { h.get(jp, k) } else { h.get(jp, k) * (1.0 - t) + h.get(jp, k + 1) * t };
                acc += v * z * *w;
                z *= step;
            }
            *slot = acc;
        }
    });
    OperatorKernel::new(*q1_axis, *q2_axis, values)
}

/// `⟨p = x|H|y⟩ = (1/√(2π)) ∫dq1 e^{−ixq1} ⟨q1|H|y⟩`, `y` snapped to the nearest q2 sample.
pub fn mixed_matrix_element(h: &OperatorKernel, x: f64, y: f64) -> Result<Complex64> {
    let col = h.q2_axis().nearest(y).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "y = {y} lies outside the kernel's q2 axis [{}, {}]",
            h.q2_axis().min(),
            h.q2_axis().max()
        ))
    })?;
    let a = h.q1_axis();
    let step = Complex64::cis(-x * a.step());
    let mut z = Complex64::cis(-x * a.min());
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.len() {
        acc += h.get(i, col) * z * a.trapezoid_weight(i);
        z *= step;
    }
    Ok(acc * a.step() / (2.0 * PI).sqrt())
}

/// [`mixed_matrix_element`] at every `(x, y)` of `grid`.
pub fn mixed_elements(h: &OperatorKernel, grid: &PhaseGrid) -> Result<SampledField> {
    let values = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let (x, y) = grid.point(idx);
            mixed_matrix_element(h, x, y)
        })
        .collect::<Result<Vec<_>>>()?;
    SampledField::new(*grid, values)
}

/// Residuals of the symbol ↔ mixed-element correspondence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolIdentityResiduals {
    /// `max |T[symbol](x,y) − √(2π)⟨p=x|H|y⟩e^{ixy}|` on the evaluation grid.
    pub forward: f64,
    /// `max |T⁻¹[√(2π)⟨p=x|H|y⟩e^{ixy}](p,q) − symbol(p,q)|`, the right-hand side sampled on `wide`.
    pub inverse: f64,
}

/// `√(2π)·⟨p=x|H|y⟩·e^{ixy}` on `grid`.
pub fn scaled_mixed_field(h: &OperatorKernel, grid: &PhaseGrid) -> Result<SampledField> {
    let m = mixed_elements(h, grid)?;
    let s = (2.0 * PI).sqrt();
    let values = m
        .values()
        .iter()
        .enumerate()
        .map(|(idx, v)| {
            let (x, y) = grid.point(idx);
            v * s * Complex64::cis(x * y)
        })
        .collect();
    SampledField::new(*grid, values)
}

/// Checks `T[weyl_symbol(H)] = √(2π)⟨p=x|H|y⟩e^{ixy}` and its inverse.
///
/// The symbol is computed on `symbol_grid`, compared on `eval`; the inverse
/// direction integrates the right-hand side over `wide`, which must cover its
/// decay. `y` samples of `eval` and `wide` should lie on the kernel's q2 axis.
pub fn symbol_identity_residual(
    h: &OperatorKernel,
    symbol_grid: &PhaseGrid,
    eval: &PhaseGrid,
    wide: &PhaseGrid,
) -> Result<SymbolIdentityResiduals> {
    let symbol = weyl_symbol(h, symbol_grid)?;
    let lhs = forward_fast(&symbol, eval)?;
    let rhs = scaled_mixed_field(h, eval)?;
    let forward = lhs.max_abs_diff(&rhs)?;

    let g = scaled_mixed_field(h, wide)?;
    let back = inverse_fast(&g, eval)?;
    let inverse = back.max_abs_diff(&weyl_symbol(h, eval)?)?;
    Ok(SymbolIdentityResiduals { forward, inverse })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::hermite_function;

    fn psi_n(n: usize, axis: Axis) -> Signal {
        Signal::from_fn(axis, |q| hermite_function(n, q).into()).unwrap()
    }

    fn kernel_axis() -> Axis {
        Axis::new(-5.0, 5.0, 128).unwrap().extended(40)
    }

    fn grid_128() -> PhaseGrid {
        PhaseGrid::square(Axis::new(-5.0, 5.0, 128).unwrap())
    }

    #[test]
    fn ground_state_wigner_from_signal() {
        let psi = psi_n(0, kernel_axis());
        let grid = grid_128();
        let w = wigner_of_signal(&psi, &grid).unwrap();
        let exact = SampledField::from_fn(grid, |p, q| ((-p * p - q * q).exp() / PI).into()).unwrap();
        assert!(w.max_abs_diff(&exact).unwrap() < 1e-8);
    }

    #[test]
    fn wigner_normalised_and_even_in_p() {
        let psi = psi_n(2, kernel_axis());
        let grid = PhaseGrid::new(Axis::symmetric(7.0, 141).unwrap(), Axis::new(-5.0, 5.0, 128).unwrap());
        let w = wigner_of_signal(&psi, &grid).unwrap();
        let total: Complex64 =
            (0..grid.len()).map(|idx| w.values()[idx] * grid.cell_weight(idx / grid.q.len(), idx % grid.q.len())).sum();
        assert!((total - 1.0).norm() < 1e-6, "{total}");
        let np = grid.p.len();
        for j in 0..np {
            for k in 0..grid.q.len() {
                assert!((w.get(j, k).re - w.get(np - 1 - j, k).re).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn wigner_rejects_short_signal_axis() {
        let psi = psi_n(0, Axis::symmetric(3.0, 61).unwrap());
        assert!(wigner_of_signal(&psi, &grid_128()).is_err());
    }

    #[test]
    fn density_wigner_and_ground_symbol() {
        let rho = OperatorKernel::projector(&psi_n(0, kernel_axis()));
        let grid = grid_128();
        let w = wigner_of_density(&rho, &grid).unwrap();
        let exact = SampledField::from_fn(grid, |p, q| ((-p * p - q * q).exp() / PI).into()).unwrap();
        assert!(w.max_abs_diff(&exact).unwrap() < 1e-8);
        assert!(w.values().iter().all(|v| v.im.abs() < 1e-10));

        let s = weyl_symbol(&rho, &grid).unwrap();
        let exact = SampledField::from_fn(grid, |p, q| (2.0 * (-p * p - q * q).exp()).into()).unwrap();
        assert!(s.max_abs_diff(&exact).unwrap() < 1e-6);
    }

    #[test]
    fn off_lattice_symbol_falls_back_to_interpolation() {
        let rho = OperatorKernel::projector(&psi_n(0, Axis::symmetric(8.0, 641).unwrap()));
        let grid = PhaseGrid::square(Axis::new(-2.0, 2.0, 13).unwrap());
        let s = weyl_symbol(&rho, &grid).unwrap();
        let exact = SampledField::from_fn(grid, |p, q| (2.0 * (-p * p - q * q).exp()).into()).unwrap();
        // grid.q samples are not on the kernel half-lattice; error is interpolation-limited
        let e = s.max_abs_diff(&exact).unwrap();
        assert!(e < 1e-3, "{e}");
    }

    #[test]
    fn ground_symbol_quantises_to_projector() {
        let k_axis = Axis::symmetric(8.0, 161).unwrap();
        let sym_grid = PhaseGrid::new(Axis::symmetric(9.0, 181).unwrap(), Axis::symmetric(8.0, 321).unwrap());
        let h = SampledField::from_fn(sym_grid, |p, q| (2.0 * (-p * p - q * q).exp()).into()).unwrap();
        let k = weyl_quantize(&h, &k_axis, &k_axis).unwrap();
        let exact = OperatorKernel::projector(&psi_n(0, k_axis));
        assert!(k.max_abs_diff(&exact).unwrap() < 1e-10);
    }

    #[test]
    fn quantise_rejects_short_symbol() {
        let h = SampledField::zeros(PhaseGrid::square(Axis::symmetric(2.0, 21).unwrap()));
        let a = Axis::symmetric(4.0, 9).unwrap();
        assert!(weyl_quantize(&h, &a, &a).is_err());
    }

    #[test]
    fn round_trip_recovers_symbol() {
        let k_axis = Axis::symmetric(8.0, 161).unwrap();
        let sym_grid = PhaseGrid::new(Axis::symmetric(9.0, 181).unwrap(), Axis::symmetric(8.0, 321).unwrap());
        let h = SampledField::from_fn(sym_grid, |p, q| {
            Complex64::new(1.0 + p * q - 0.5 * q, 0.3 * p) * (-(p * p + 1.5 * q * q) / 2.0).exp()
        })
        .unwrap();
        let k = weyl_quantize(&h, &k_axis, &k_axis).unwrap();
        let eval = PhaseGrid::square(Axis::symmetric(6.0, 121).unwrap());
        let back = weyl_symbol(&k, &eval).unwrap();
        let reference = SampledField::from_fn(eval, |p, q| h.value_at(p, q)).unwrap();
        let e = back.relative_l2_error(&reference).unwrap();
        assert!(e < 1e-6, "{e}");
    }

    #[test]
    fn mixed_element_of_ground_projector() {
        let axis = kernel_axis();
        let rho = OperatorKernel::projector(&psi_n(0, axis));
        for (x, k) in [(0.0, 40usize), (1.3, 80), (-2.2, 100)] {
            let y = axis.sample(k);
            let m = mixed_matrix_element(&rho, x, y).unwrap();
            let exact = hermite_function(0, x) * hermite_function(0, y);
            assert!((m - exact).norm() < 1e-8);
        }
        assert!(mixed_matrix_element(&rho, 0.0, 20.0).is_err());
    }

    #[test]
    fn mixed_element_of_identity_like_kernel() {
        // Discrete identity / step on the axis.
        let axis = Axis::symmetric(10.0, 201).unwrap();
        let id = OperatorKernel::from_fn(axis, axis, |a, b| {
            if (a - b).abs() < 1e-12 {
                (1.0 / axis.step()).into()
            } else {
                0.0.into()
            }
        })
        .unwrap();
        for (x, y) in [(0.0, 0.0), (1.5, -2.0), (-0.7, 3.0)] {
            let m = mixed_matrix_element(&id, x, y).unwrap();
            let exact = Complex64::cis(-x * y) / (2.0 * PI).sqrt();
            assert!((m - exact).norm() < 1e-12);
        }
    }

    #[test]
    fn symbol_identity_for_projectors() {
        let axis = kernel_axis();
        let wide = PhaseGrid::square(axis);
        for n in [0usize, 1] {
            let rho = OperatorKernel::projector(&psi_n(n, axis));
            let r = symbol_identity_residual(&rho, &grid_128(), &grid_128(), &wide).unwrap();
            assert!(r.forward < 1e-6, "n = {n}: {r:?}");
            assert!(r.inverse < 1e-6, "n = {n}: {r:?}");
        }
    }
}
