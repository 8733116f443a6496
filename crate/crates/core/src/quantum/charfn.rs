use nalgebra::DMatrix;
use num_complex::Complex64;

use super::basis::HermiteBasis;
use super::kernel::OperatorKernel;
use crate::error::{Error, Result};

/// Largest Hilbert–Schmidt residual accepted when projecting onto the basis.
pub const PROJECTION_TOLERANCE: f64 = 1e-8;

/// Extra Hermite modes carried by the position and momentum matrices so that
/// truncation of `e^{−iQu}`, `e^{−iPv}` does not reach the density's block.
const EXPONENTIAL_MARGIN: usize = 80;

type CMatrix = DMatrix<Complex64>;

/// Q–P and P–Q characteristic functions of a density operator in the
/// Hermite basis.
///
/// With `Q = VΛVᵀ` and `P = FQF†`, `F = diag(iⁿ)`, both orderings reduce to
/// `Σ_{jk} M_{kj} e^{−iλ_j a} e^{−iλ_k b}` for a precomputed `M`, so each
/// evaluation costs O(dim²).
#[derive(Debug, Clone)]
pub struct CharacteristicFunction {
    rho: CMatrix,
    eigenvalues: Vec<f64>,
    /// `(VᵀF†ρV)_{kj}(VᵀFV)_{jk}`
    qp_weights: CMatrix,
    /// `(VᵀρFV)_{kj}(VᵀF†V)_{jk}`
    pq_weights: CMatrix,
    projection_residual: f64,
}

/// Position operator in the first `dim` Hermite functions.
pub fn position_matrix(dim: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    for n in 0..dim.saturating_sub(1) {
        let v = Complex64::new(((n + 1) as f64 / 2.0).sqrt(), 0.0);
        m[(n + 1, n)] = v;
        m[(n, n + 1)] = v;
    }
    m
}

/// Momentum operator in the first `dim` Hermite functions.
pub fn momentum_matrix(dim: usize) -> CMatrix {
    let mut m = CMatrix::zeros(dim, dim);
    for n in 0..dim.saturating_sub(1) {
        let v = ((n + 1) as f64 / 2.0).sqrt();
        m[(n + 1, n)] = Complex64::new(0.0, v);
        m[(n, n + 1)] = Complex64::new(0.0, -v);
    }
    m
}

fn one_norm(a: &CMatrix) -> f64 {
    (0..a.ncols()).map(|j| a.column(j).iter().map(|v| v.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// `e^A` by scaling and squaring around a truncated Taylor series.
pub fn expm(a: &CMatrix) -> CMatrix {
    let norm = one_norm(a);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a / Complex64::new(2f64.powi(squarings as i32), 0.0);
    let n = a.nrows();
    let mut result = CMatrix::identity(n, n);
    let mut term = CMatrix::identity(n, n);
    for k in 1..=30 {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        result += &term;
        if one_norm(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

impl CharacteristicFunction {
    /// Projects `rho` onto `basis` (which must share its axis) and prepares
    /// the operator matrices. Fails if the projection loses more than
    /// [`PROJECTION_TOLERANCE`] in Hilbert–Schmidt norm.
    pub fn new(rho: &OperatorKernel, basis: &HermiteBasis) -> Result<Self> {
        if rho.q1_axis() != basis.axis() || rho.q2_axis() != basis.axis() {
            return Err(Error::GridMismatch(format!(
                "density on {} x {} but basis on {}",
                rho.q1_axis(),
                rho.q2_axis(),
                basis.axis()
            )));
        }
        let axis = basis.axis();
        let len = axis.len();
        let nb = basis.n_max() + 1;
        let w: Vec<f64> = (0..len).map(|k| axis.trapezoid_weight(k) * axis.step()).collect();

        // Ψ with rows ψ_n, weighted by the quadrature measure.
        let psi_w = DMatrix::from_fn(nb, len, |n, k| Complex64::new(basis.psi(n)[k] * w[k], 0.0));
        let psi = DMatrix::from_fn(nb, len, |n, k| Complex64::new(basis.psi(n)[k], 0.0));
        let kmat = DMatrix::from_fn(len, len, |i, j| rho.get(i, j));
        let r = &psi_w * &kmat * psi_w.transpose();

        let rebuilt = psi.transpose() * &r * &psi;
        let mut hs = 0.0;
        for i in 0..len {
            for j in 0..len {
                hs += w[i] * w[j] * (kmat[(i, j)] - rebuilt[(i, j)]).norm_sqr();
            }
        }
        let residual = hs.sqrt();
        if residual > PROJECTION_TOLERANCE {
            return Err(Error::PoorProjection { residual, tolerance: PROJECTION_TOLERANCE });
        }

        let dim = nb + EXPONENTIAL_MARGIN;
        let mut rho_full = CMatrix::zeros(dim, dim);
        rho_full.view_mut((0, 0), (nb, nb)).copy_from(&r);
        let q_real = position_matrix(dim).map(|z| z.re);
        let eig = nalgebra::SymmetricEigen::new(q_real);
        let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
        let f = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(dim, |n, _| Complex64::i().powu(n as u32)));
        let f_adj = f.adjoint();
        let vt = v.transpose();
        let pair = |a: CMatrix, b: CMatrix| CMatrix::from_fn(dim, dim, |k, j| a[(k, j)] * b[(j, k)]);
        let qp_weights = pair(&vt * &f_adj * &rho_full * &v, &vt * &f * &v);
        let pq_weights = pair(&vt * &rho_full * &f * &v, &vt * &f_adj * &v);
        Ok(Self {
            rho: rho_full,
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            qp_weights,
            pq_weights,
            projection_residual: residual,
        })
    }

    pub fn projection_residual(&self) -> f64 {
        self.projection_residual
    }

    /// The projected density matrix.
    pub fn density_matrix(&self) -> &CMatrix {
        &self.rho
    }

    /// `Σ_{jk} w_{kj} e^{−iλ_j a} e^{−iλ_k b}`
    fn contract(&self, w: &CMatrix, a: f64, b: f64) -> Complex64 {
        let ea: Vec<Complex64> = self.eigenvalues.iter().map(|l| Complex64::cis(-l * a)).collect();
        let eb: Vec<Complex64> = self.eigenvalues.iter().map(|l| Complex64::cis(-l * b)).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, ej) in ea.iter().enumerate() {
            let col: Complex64 = w.column(j).iter().zip(&eb).map(|(x, e)| x * e).sum();
            acc += col * ej;
        }
        acc
    }

    /// `Tr[ρ e^{i(q−Q)u} e^{i(p−P)v}]`
    pub fn qp(&self, q: f64, p: f64, u: f64, v: f64) -> Complex64 {
        self.contract(&self.qp_weights, u, v) * Complex64::cis(q * u + p * v)
    }

    /// `Tr[ρ e^{i(p−P)v} e^{i(q−Q)u}]`
    pub fn pq(&self, q: f64, p: f64, u: f64, v: f64) -> Complex64 {
        self.contract(&self.pq_weights, v, u) * Complex64::cis(q * u + p * v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Axis, Signal};
    use crate::hermite::hermite_function;

    fn ground_setup() -> (OperatorKernel, HermiteBasis) {
        let basis = HermiteBasis::adequate(20, 0.1).unwrap();
        let psi = Signal::from_fn(*basis.axis(), |q| hermite_function(0, q).into()).unwrap();
        (OperatorKernel::projector(&psi), basis)
    }

    #[test]
    fn expm_matches_eigen_route() {
        let dim = 40;
        let q = position_matrix(dim);
        let re = DMatrix::from_fn(dim, dim, |i, j| q[(i, j)].re);
        let eig = nalgebra::SymmetricEigen::new(re);
        let u = 2.5;
        let diag = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::cis(-u * l)));
        let vecs = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
        let reference = &vecs * diag * vecs.transpose();
        let ours = expm(&(&q * Complex64::new(0.0, -u)));
        let e = (ours - reference).iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(e < 1e-11, "{e}");
    }

    #[test]
    fn position_and_momentum_are_canonical() {
        let dim = 30;
        let (q, p) = (position_matrix(dim), momentum_matrix(dim));
        let comm = &q * &p - &p * &q;
        for n in 0..dim - 1 {
            assert!((comm[(n, n)] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn ground_state_characteristic_function() {
        let (rho, basis) = ground_setup();
        let cf = CharacteristicFunction::new(&rho, &basis).unwrap();
        assert!(cf.projection_residual() < 1e-12);
        assert!((cf.qp(0.0, 0.0, 0.0, 0.0) - 1.0).norm() < 1e-12);
        for u in [-3.0, -1.0, 0.5, 3.0] {
            for v in [-3.0, 0.0, 2.0, 3.0] {
                let expected = (-(u * u + v * v) / 4.0f64).exp() * Complex64::cis(-u * v / 2.0);
                let got = cf.qp(0.0, 0.0, u, v);
                assert!((got - expected).norm() < 1e-8, "({u},{v}): {got} vs {expected}");
                let mirror = cf.pq(0.0, 0.0, u, v);
                assert!((mirror - cf.qp(0.0, 0.0, -u, -v).conj()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn diagonal_route_matches_matrix_exponentials() {
        let basis = HermiteBasis::adequate(20, 0.1).unwrap();
        let psi = Signal::from_fn(*basis.axis(), |q| {
            Complex64::new(hermite_function(1, q), 0.5 * hermite_function(3, q)) / 1.25f64.sqrt()
        })
        .unwrap();
        let cf = CharacteristicFunction::new(&OperatorKernel::projector(&psi), &basis).unwrap();
        let rho = cf.density_matrix();
        let dim = rho.nrows();
        let (q, p) = (position_matrix(dim), momentum_matrix(dim));
        let eq = |u: f64| expm(&(&q * Complex64::new(0.0, -u)));
        let ep = |v: f64| expm(&(&p * Complex64::new(0.0, -v)));
        for (u, v) in [(0.4, -1.3), (2.5, 2.0), (-3.0, 0.7)] {
            let qp = (rho * eq(u) * ep(v)).trace();
            let pq = (rho * ep(v) * eq(u)).trace();
            assert!((cf.qp(0.0, 0.0, u, v) - qp).norm() < 1e-11);
            assert!((cf.pq(0.0, 0.0, u, v) - pq).norm() < 1e-11);
        }
    }

    #[test]
    fn shift_phase() {
        let (rho, basis) = ground_setup();
        let cf = CharacteristicFunction::new(&rho, &basis).unwrap();
        let a = cf.qp(0.7, -0.2, 1.0, 0.5);
        let b = cf.qp(0.0, 0.0, 1.0, 0.5) * Complex64::cis(0.7 - 0.1);
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn rejects_unrepresentable_density() {
        let basis = HermiteBasis::adequate(10, 0.05).unwrap();
        let narrow = Signal::from_fn(*basis.axis(), |q| {
            ((-(q - 1.0) * (q - 1.0) / 0.02).exp() / (0.01 * std::f64::consts::PI).powf(0.25)).into()
        })
        .unwrap();
        let rho = OperatorKernel::projector(&narrow);
        assert!(matches!(CharacteristicFunction::new(&rho, &basis), Err(Error::PoorProjection { .. })));
        let other = HermiteBasis::new(10, Axis::symmetric(5.0, 11).unwrap());
        assert!(CharacteristicFunction::new(&rho, &other).is_err());
    }
}
