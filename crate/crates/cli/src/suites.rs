//! Named verification suites. Each case reports the largest deviation of one
//! identity, checked against a tolerance looked up by key in the run config.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use psxform::closedform::{
    chirplet_epsilon_sweep, frft_composition_residual, frft_kernel, frft_kernel_continued, frft_kernel_damped_hermite,
    gaussian_transform_closed, params_of_alpha,
};
use psxform::hermite::hermite_function;
use psxform::quantum::{
    mixed_matrix_element, oscillator_exponential_kernel, oscillator_exponential_symbol,
    oscillator_exponential_transform, symbol_identity_residual, weyl_quantize, weyl_symbol,
    wigner_to_kirkwood_residual, CharacteristicFunction, HermiteBasis, OperatorKernel,
};
use psxform::{
    forward_direct, forward_fast, inverse_direct, inverse_fast, parseval_residual, Axis, Error, PhaseGrid,
    SampledField, Signal,
};

use crate::config::RunConfig;
use crate::fields::gaussian_damped_fields;
use crate::report::{Case, SuiteReport};

pub const SUITES: [&str; 9] = [
    "roundtrip",
    "parseval",
    "gaussian",
    "chirplet-kernel",
    "hermite-oracle",
    "weyl",
    "symbol-identity",
    "kirkwood",
    "charfun",
];

pub const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("roundtrip.direct", 1e-6),
    ("roundtrip.fast", 1e-6),
    ("roundtrip.oracle", 1e-8),
    ("parseval", 1e-6),
    ("gaussian", 1e-6),
    ("chirplet.lambda", 1e-12),
    ("chirplet.closed", 1e-10),
    ("chirplet.monotone", 1.0),
    ("chirplet.discretization", 1e-8),
    ("chirplet.extrapolated", 1e-4),
    ("hermite.damped", 1e-10),
    ("hermite.operator", 1e-8),
    ("hermite.composition", 1e-6),
    ("weyl.roundtrip", 1e-6),
    ("weyl.oscillator", 1e-6),
    ("weyl.projector", 1e-6),
    ("symbol.forward", 1e-6),
    ("symbol.inverse", 1e-6),
    ("symbol.headline", 1e-6),
    ("kirkwood.qp", 1e-6),
    ("kirkwood.pq", 1e-6),
    ("charfun.ground", 1e-8),
    ("charfun.trace", 1e-12),
    ("charfun.mirror", 1e-12),
];

const ROUNDTRIP: &str =
    "∬(dxdy/π) e^{-2i(p-x)(q-y)} T[h](x,y) = h(p,q),  T[h](x,y) = ∬(dpdq/π) e^{2i(p-x)(q-y)} h(p,q)";
const ORACLE: &str = "Bluestein chirp-z evaluation = direct trapezoid sum of ∬(dpdq/π) e^{2i(p-x)(q-y)} h";
const PARSEVAL: &str = "∬(dxdy/π)|T[h]|² = ∬(dpdq/π)|h|²";
const GAUSSIAN: &str = "T[e^{-λ(p²+q²)}] = (λ²+1)^{-1/2} exp{(-λ(x²+y²) + 2iλ²xy)/(λ²+1)}";
const LAMBDA: &str = "λ = -i tan(π/4-α/2):  -λ/(λ²+1) = (i/2)cot α,  2λ²/(λ²+1) = 1 - 1/sin α";
const CHIRPLET: &str = "(2/(ie^{-iα}+1)) T[e^{i tan(π/4-α/2)(p²+q²)}](x,y) = √(2π) K_α(x,y) e^{ixy}";
const MEHLER: &str =
    "Σ_n e^{-iαn} ψ_n(x)ψ_n(y) = K_α(x,y) = (2πi sin α e^{-iα})^{-1/2} exp{i(x²+y²)/(2tan α) - ixy/sin α}";
const COMPOSITION: &str = "∫dt K_a(x,t) K_b(t,y) = K_{a+b}(x,y)";
const WEYL: &str = "⟨q1|H|q2⟩ = (1/2π)∫dp h(p,(q1+q2)/2) e^{ip(q1-q2)},  h(p,q) = ∫du e^{-ipu}⟨q+u/2|H|q-u/2⟩";
const OSCILLATOR: &str = "e^{f(P²+Q²-1)/2} ↔ (2/(e^f+1)) exp{((e^f-1)/(e^f+1))(p²+q²)}";
const SYMBOL: &str =
    "∬(dpdq/π) e^{2i(p-x)(q-y)} h(p,q) = √(2π)⟨p=x|H|y⟩e^{ixy},  h = ∬(dxdy/√(π/2)) e^{-2i(p-x)(q-y)}⟨p=x|H|y⟩e^{ixy}";
const HEADLINE: &str = "T[(2/(e^f+1)) e^{((e^f-1)/(e^f+1))(p²+q²)}] at f = i(π/2-α) equals √(2π) K_α(x,y) e^{ixy}";
const KIRKWOOD: &str = "T[W_ψ](p,q) = Tr[ρ δ(q-Q)δ(p-P)] = ψ*(q)ψ̃(p)e^{ipq}/√(2π)";
const KIRKWOOD_PQ: &str = "T⁻¹[W_ψ](p,q) = Tr[ρ δ(p-P)δ(q-Q)] = ψ(q)ψ̃*(p)e^{-ipq}/√(2π)";
const CHARFUN: &str = "Tr[ρ e^{i(q-Q)u} e^{i(p-P)v}] at ρ = |0⟩⟨0|, (q,p) = (0,0): e^{-(u²+v²)/4} e^{-iuv/2}";

/// Anchor string of each suite, i.e. the identity it exercises.
pub fn suite_anchor(name: &str) -> Option<&'static str> {
    Some(match name {
        "roundtrip" => ROUNDTRIP,
        "parseval" => PARSEVAL,
        "gaussian" => GAUSSIAN,
        "chirplet-kernel" => CHIRPLET,
        "hermite-oracle" => MEHLER,
        "weyl" => WEYL,
        "symbol-identity" => SYMBOL,
        "kirkwood" => KIRKWOOD,
        "charfun" => CHARFUN,
        _ => return None,
    })
}

/// Runs one named suite; `None` for an unknown name.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Option<SuiteReport> {
    let cases = match name {
        "roundtrip" => roundtrip(cfg),
        "parseval" => parseval(cfg),
        "gaussian" => gaussian(cfg),
        "chirplet-kernel" => chirplet_kernel(cfg),
        "hermite-oracle" => hermite_oracle(cfg),
        "weyl" => weyl(cfg),
        "symbol-identity" => symbol_identity(cfg),
        "kirkwood" => kirkwood(cfg),
        "charfun" => charfun(cfg),
        _ => return None,
    };
    Some(SuiteReport::new(name, suite_anchor(name)?, cases))
}

fn family_grid(cfg: &RunConfig, n: usize) -> psxform::Result<PhaseGrid> {
    Ok(PhaseGrid::square(Axis::symmetric(cfg.grid.extent, n)?))
}

fn max_over<I: IntoIterator<Item = psxform::Result<f64>>>(it: I) -> psxform::Result<f64> {
    let mut worst = 0.0f64;
    for r in it {
        let r = r?;
        worst = if r.is_nan() || worst.is_nan() { f64::NAN } else { worst.max(r) };
    }
    Ok(worst)
}

fn roundtrip(cfg: &RunConfig) -> Vec<Case> {
    let label = |path: &str| format!("inverse∘forward, {path} path, {} fields, {}²", cfg.field_count, cfg.grid.n);
    let direct = Case::run(cfg, "roundtrip.direct", label("direct"), ROUNDTRIP, || {
        let grid = family_grid(cfg, cfg.grid.n)?;
        let fields = gaussian_damped_fields(cfg.seed, cfg.field_count, &grid)?;
        max_over(fields.iter().map(|h| {
            let back = inverse_direct(&forward_direct(h, &grid)?, &grid)?;
            back.relative_l2_error(h)
        }))
    });
    let fast = Case::run(cfg, "roundtrip.fast", label("fast"), ROUNDTRIP, || {
        let grid = family_grid(cfg, cfg.grid.n)?;
        let fields = gaussian_damped_fields(cfg.seed, cfg.field_count, &grid)?;
        max_over(fields.iter().map(|h| {
            let back = inverse_fast(&forward_fast(h, &grid)?, &grid)?;
            back.relative_l2_error(h)
        }))
    });
    let oracle = Case::run(cfg, "roundtrip.oracle", "fast vs direct, 64² → 64²", ORACLE, || {
        let grid = family_grid(cfg, 64)?;
        let fields = gaussian_damped_fields(cfg.seed, cfg.field_count, &grid)?;
        max_over(fields.iter().map(|h| forward_fast(h, &grid)?.max_abs_diff(&forward_direct(h, &grid)?)))
    });
    vec![direct, fast, oracle]
}

fn parseval(cfg: &RunConfig) -> Vec<Case> {
    let name = format!("relative norm defect, {} fields, {}²", cfg.field_count, cfg.grid.n);
    vec![Case::run(cfg, "parseval", name, PARSEVAL, || {
        let grid = family_grid(cfg, cfg.grid.n)?;
        let fields = gaussian_damped_fields(cfg.seed, cfg.field_count, &grid)?;
        max_over(fields.iter().map(|h| parseval_residual(h, &grid)))
    })]
}

fn gaussian(cfg: &RunConfig) -> Vec<Case> {
    [0.5, 1.0, 2.0]
        .into_iter()
        .map(|lambda: f64| {
            Case::run(cfg, "gaussian", format!("λ = {lambda}, |x|,|y| ≤ 2, relative"), GAUSSIAN, || {
                let input = PhaseGrid::square(Axis::symmetric(8.0, 256)?);
                let out = PhaseGrid::square(Axis::symmetric(2.0, 33)?);
                let h = SampledField::from_fn(input, |p, q| (-lambda * (p * p + q * q)).exp().into())?;
                let t = forward_fast(&h, &out)?;
                let closed = SampledField::from_fn(out, |x, y| {
                    gaussian_transform_closed(lambda.into(), x, y).unwrap_or(Complex64::new(f64::NAN, 0.0))
                })?;
                Ok(t.max_abs_diff(&closed)? / closed.max_abs())
            })
        })
        .collect()
}

/// Fifty angles spread over (0, π) with |sin α| ≥ 0.149.
pub fn lambda_test_angles() -> Vec<f64> {
    (0..50).map(|k| 0.15 + k as f64 * (PI - 0.3) / 49.0).collect()
}

fn chirplet_kernel(cfg: &RunConfig) -> Vec<Case> {
    let mut cases = vec![Case::run(cfg, "chirplet.lambda", "50 angles in [0.15, π−0.15]", LAMBDA, || {
        max_over(lambda_test_angles().into_iter().map(|a| {
            let (r1, r2) = params_of_alpha(a)?.identity_residuals();
            Ok(r1.max(r2))
        }))
    })];
    let out = match Axis::symmetric(1.0, 9) {
        Ok(a) => PhaseGrid::square(a),
        Err(_) => unreachable!("static axis"),
    };
    for &alpha in &cfg.alphas {
        cases.push(Case::run(
            cfg,
            "chirplet.closed",
            format!("closed-form continuation, α = {alpha:.6}"),
            CHIRPLET,
            || {
                let p = params_of_alpha(alpha)?;
                let wide = PhaseGrid::square(Axis::symmetric(3.0, 25)?);
                max_over((0..wide.len()).map(|idx| {
                    let (x, y) = wide.point(idx);
                    let lhs = p.prefactor() * gaussian_transform_closed(p.lambda, x, y)?;
                    let rhs = (2.0 * PI).sqrt() * frft_kernel(alpha, x, y)? * Complex64::cis(x * y);
                    Ok((lhs - rhs).norm())
                }))
            },
        ));
        let sweep = chirplet_epsilon_sweep(alpha, &cfg.epsilons, &out);
        let ladder = cfg.epsilons.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ");
        cases.push(Case::run(
            cfg,
            "chirplet.monotone",
            format!("quadrature residual ratio along ε = [{ladder}], α = {alpha:.6}"),
            CHIRPLET,
            || Ok(shared(&sweep)?.worst_ratio()),
        ));
        cases.push(Case::run(
            cfg,
            "chirplet.discretization",
            format!("quadrature vs damped closed form, α = {alpha:.6}"),
            CHIRPLET,
            || max_over(shared(&sweep)?.rungs.iter().map(|(_, r)| Ok(r.quadrature_vs_regularized))),
        ));
        cases.push(Case::run(
            cfg,
            "chirplet.extrapolated",
            format!("ε → 0 extrapolated quadrature, |x|,|y| ≤ 1, α = {alpha:.6}"),
            CHIRPLET,
            || Ok(shared(&sweep)?.extrapolated),
        ));
    }
    cases
}

fn clone_error(e: &Error) -> Error {
    Error::InvalidParameter(e.to_string())
}

/// Borrows a result computed once and shared by several cases.
fn shared<T>(r: &psxform::Result<T>) -> psxform::Result<&T> {
    r.as_ref().map_err(clone_error)
}

fn grid_points(extent: f64, n: usize) -> Vec<(f64, f64)> {
    let axis = Axis::symmetric(extent, n).expect("static axis");
    let pts: Vec<f64> = axis.samples().collect();
    pts.iter().flat_map(|&x| pts.iter().map(move |&y| (x, y))).collect()
}

/// Terms needed for the damped Mehler sum to converge below 1e−13.
fn damped_terms(damping: f64) -> usize {
    (30.0 / damping).ceil() as usize
}

fn hermite_oracle(cfg: &RunConfig) -> Vec<Case> {
    let delta = cfg.quantum.damping;
    let pts = grid_points(3.0, 13);
    let mut cases = Vec::new();
    for &alpha in &cfg.hermite_alphas {
        cases.push(Case::run(
            cfg,
            "hermite.damped",
            format!("Mehler sum at α − {delta}i, {} terms, α = {alpha:.6}", damped_terms(delta)),
            MEHLER,
            || {
                max_over(pts.iter().map(|&(x, y)| {
                    let sum = frft_kernel_damped_hermite(alpha, delta, x, y, damped_terms(delta))?;
                    let closed = frft_kernel_continued(Complex64::new(alpha, -delta), x, y)?;
                    Ok((sum - closed).norm())
                }))
            },
        ));
    }
    let basis = HermiteBasis::adequate(cfg.quantum.n_max, 0.08);
    for &alpha in &cfg.hermite_alphas {
        cases.push(Case::run(
            cfg,
            "hermite.operator",
            format!("⟨p=x|e^{{fN}}|y⟩, f = i(π/2−α) − {delta}, {} modes, α = {alpha:.6}", cfg.quantum.n_max + 1),
            MEHLER,
            || {
                let basis = basis.as_ref().map_err(clone_error)?;
                let k = oscillator_exponential_kernel(Complex64::new(-delta, FRAC_PI_2 - alpha), basis)?;
                let axis = basis.axis();
                max_over(pts.iter().map(|&(x, y)| {
                    let y = axis.sample(axis.nearest(y).ok_or_else(|| Error::InvalidParameter("y off axis".into()))?);
                    let m = mixed_matrix_element(&k, x, y)?;
                    Ok((m - frft_kernel_continued(Complex64::new(alpha, -delta), x, y)?).norm())
                }))
            },
        ));
    }
    cases.push(Case::run(
        cfg,
        "hermite.composition",
        "K_{π/4}∘K_{π/4} = K_{π/2}, rotated contour",
        COMPOSITION,
        || frft_composition_residual(FRAC_PI_4, FRAC_PI_4, &grid_points(3.0, 7)),
    ));
    cases
}

/// Symbol grid, kernel axis and symbol q axis for Weyl checks: the symbol's
/// q step is half the kernel step on a shared lattice.
struct WeylSetup {
    kernel_axis: Axis,
    symbol_grid: PhaseGrid,
}

fn weyl_setup() -> psxform::Result<WeylSetup> {
    Ok(WeylSetup {
        kernel_axis: Axis::symmetric(10.0, 201)?,
        symbol_grid: PhaseGrid::new(Axis::symmetric(11.0, 221)?, Axis::symmetric(10.0, 401)?),
    })
}

fn weyl(cfg: &RunConfig) -> Vec<Case> {
    let roundtrip = Case::run(cfg, "weyl.roundtrip", "symbol∘quantize, relative L2", WEYL, || {
        let s = weyl_setup()?;
        let h = SampledField::from_fn(s.symbol_grid, |p, q| {
            Complex64::new(1.0 + p * q - 0.5 * q, 0.3 * p) * (-(p * p + 1.5 * q * q) / 2.0).exp()
        })?;
        let k = weyl_quantize(&h, &s.kernel_axis, &s.kernel_axis)?;
        let eval = PhaseGrid::square(Axis::symmetric(6.0, 121)?);
        let back = weyl_symbol(&k, &eval)?;
        let reference = SampledField::from_fn(eval, |p, q| h.value_at(p, q))?;
        back.relative_l2_error(&reference)
    });
    let oscillator =
        Case::run(cfg, "weyl.oscillator", "quantize symbol at f = −ln 3 vs Σ 3^{−n}ψ_nψ_n", OSCILLATOR, || {
            let s = weyl_setup()?;
            let f = Complex64::new(-(3f64.ln()), 0.0);
            let h = oscillator_exponential_symbol(f, &s.symbol_grid)?;
            let k = weyl_quantize(&h, &s.kernel_axis, &s.kernel_axis)?;
            let spectral = oscillator_exponential_kernel(f, &HermiteBasis::new(60, s.kernel_axis))?;
            k.max_abs_diff(&spectral)
        });
    let projector = Case::run(cfg, "weyl.projector", "symbol of |0⟩⟨0| vs 2e^{−(p²+q²)}", OSCILLATOR, || {
        let axis = Axis::symmetric(8.0, 161)?;
        let rho = OperatorKernel::projector(&hermite_signal(0, axis)?);
        let grid = PhaseGrid::square(Axis::symmetric(5.0, 101)?);
        let s = weyl_symbol(&rho, &grid)?;
        s.max_abs_diff(&SampledField::from_fn(grid, |p, q| (2.0 * (-p * p - q * q).exp()).into())?)
    });
    vec![roundtrip, oscillator, projector]
}

fn hermite_signal(n: usize, axis: Axis) -> psxform::Result<Signal> {
    Signal::from_fn(axis, |q| hermite_function(n, q).into())
}

/// Evaluation axis of the quantum suites and a kernel axis sharing its
/// lattice that reaches past ±8.2, where low Hermite functions are below 1e−12.
fn quantum_axes(cfg: &RunConfig) -> psxform::Result<(Axis, Axis)> {
    let eval = Axis::new(-cfg.quantum.extent, cfg.quantum.extent, cfg.quantum.n)?;
    let k = ((8.2 - cfg.quantum.extent) / eval.step()).ceil().max(0.0) as usize;
    Ok((eval, eval.extended(k)))
}

fn symbol_identity(cfg: &RunConfig) -> Vec<Case> {
    let mut cases = Vec::new();
    let grid_label = format!("{}² over [−{e}, {e}]²", cfg.quantum.n, e = cfg.quantum.extent);
    for n in [0usize, 1] {
        let result = (|| {
            let (eval, kernel_axis) = quantum_axes(cfg)?;
            let rho = OperatorKernel::projector(&hermite_signal(n, kernel_axis)?);
            let grid = PhaseGrid::square(eval);
            symbol_identity_residual(&rho, &grid, &grid, &PhaseGrid::square(kernel_axis))
        })();
        cases.push(Case::run(cfg, "symbol.forward", format!("|{n}⟩⟨{n}|, forward, {grid_label}"), SYMBOL, || {
            Ok(shared(&result)?.forward)
        }));
        cases.push(Case::run(cfg, "symbol.inverse", format!("|{n}⟩⟨{n}|, inverse, {grid_label}"), SYMBOL, || {
            Ok(shared(&result)?.inverse)
        }));
    }
    cases.push(Case::run(
        cfg,
        "symbol.forward",
        format!("e^{{fN}} at f = −ln 3, forward, {grid_label}, wide symbol"),
        SYMBOL,
        || {
            let (eval, kernel_axis) = quantum_axes(cfg)?;
            let k =
                oscillator_exponential_kernel(Complex64::new(-(3f64.ln()), 0.0), &HermiteBasis::new(60, kernel_axis))?;
            // The symbol decays only like e^{−r²/2}, so it is sampled on the wide grid.
            let wide = PhaseGrid::square(kernel_axis);
            Ok(symbol_identity_residual(&k, &wide, &PhaseGrid::square(eval), &wide)?.forward)
        },
    ));
    let pts = grid_points(3.0, 25);
    for &alpha in &cfg.hermite_alphas {
        cases.push(Case::run(
            cfg,
            "symbol.headline",
            format!("closed-form continuation, f = i(π/2−α), α = {alpha:.6}"),
            HEADLINE,
            || {
                let f = Complex64::new(0.0, FRAC_PI_2 - alpha);
                max_over(pts.iter().map(|&(x, y)| {
                    let t = oscillator_exponential_transform(f, x, y)?;
                    let k = (2.0 * PI).sqrt() * frft_kernel(alpha, x, y)? * Complex64::cis(x * y);
                    Ok((t - k).norm())
                }))
            },
        ));
    }
    cases
}

fn kirkwood(cfg: &RunConfig) -> Vec<Case> {
    let mut cases = Vec::new();
    for n in [0usize, 1] {
        let result = (|| {
            let (eval, kernel_axis) = quantum_axes(cfg)?;
            let grid = PhaseGrid::square(eval);
            wigner_to_kirkwood_residual(&hermite_signal(n, kernel_axis)?, &grid, &grid)
        })();
        cases.push(Case::run(cfg, "kirkwood.qp", format!("ψ_{n}, forward kernel"), KIRKWOOD, || {
            Ok(shared(&result)?.qp)
        }));
        cases.push(Case::run(cfg, "kirkwood.pq", format!("ψ_{n}, conjugate kernel"), KIRKWOOD_PQ, || {
            Ok(shared(&result)?.pq)
        }));
    }
    cases
}

fn charfun(cfg: &RunConfig) -> Vec<Case> {
    let setup = (|| {
        let basis = HermiteBasis::adequate(20, 0.1)?;
        let rho = OperatorKernel::projector(&hermite_signal(0, *basis.axis())?);
        CharacteristicFunction::new(&rho, &basis)
    })();
    let pts = grid_points(3.0, 13);
    vec![
        Case::run(cfg, "charfun.ground", "|0⟩⟨0|, |u|,|v| ≤ 3", CHARFUN, || {
            let cf = shared(&setup)?;
            max_over(pts.iter().map(|&(u, v)| {
                let expected = (-(u * u + v * v) / 4.0f64).exp() * Complex64::cis(-u * v / 2.0);
                Ok((cf.qp(0.0, 0.0, u, v) - expected).norm())
            }))
        }),
        Case::run(cfg, "charfun.trace", "value at u = v = 0 equals Tr ρ = 1", CHARFUN, || {
            Ok((shared(&setup)?.qp(0.0, 0.0, 0.0, 0.0) - 1.0).norm())
        }),
        Case::run(cfg, "charfun.mirror", "P–Q(u,v) = conj Q–P(−u,−v)", CHARFUN, || {
            let cf = shared(&setup)?;
            max_over(pts.iter().map(|&(u, v)| Ok((cf.pq(0.0, 0.0, u, v) - cf.qp(0.0, 0.0, -u, -v).conj()).norm())))
        }),
    ]
}
