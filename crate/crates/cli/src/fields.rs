//! Seeded family of Gaussian-damped test fields.

use num_complex::Complex64;
use psxform::{PhaseGrid, Result, SampledField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `P(p,q)·exp{−a p² − b q²}` with `P` a random complex polynomial of total
/// degree ≤ 2 and `a, b ∈ [0.9, 1.1]`.
///
/// The transform of such a field decays no faster than `r²e^{−r²/2}`, so the
/// widths stay near 1 and the centre at the origin to keep that tail below
/// ~1e−7 at |x| = 6.
pub fn gaussian_damped_fields(seed: u64, count: usize, grid: &PhaseGrid) -> Result<Vec<SampledField>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let coeffs: Vec<Complex64> =
                (0..6).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let a = rng.random_range(0.9..1.1);
            let b = rng.random_range(0.9..1.1);
            SampledField::from_fn(*grid, |p, q| {
                let poly = coeffs[0]
                    + coeffs[1] * p
                    + coeffs[2] * q
                    + coeffs[3] * p * p
                    + coeffs[4] * p * q
                    + coeffs[5] * q * q;
                poly * (-a * p * p - b * q * q).exp()
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use psxform::Axis;

    #[test]
    fn seeded_and_decaying() {
        let grid = PhaseGrid::square(Axis::symmetric(6.0, 64).unwrap());
        let a = gaussian_damped_fields(3, 4, &grid).unwrap();
        let b = gaussian_damped_fields(3, 4, &grid).unwrap();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
        for f in &a {
            assert!(f.boundary_max_abs() < 1e-12);
            assert!(f.max_abs() > 1e-2);
        }
    }
}
