//! Numerical range (field of values) through its support function.

use std::f64::consts::TAU;

use super::eig::hermitian_eig;
use crate::dense::{Complex, Matrix, Tolerances};
use crate::error::{Error, Result};

pub const DEFAULT_GRID: usize = 256;

/// `max_{‖x‖=1} Re(e^{iθ}⟨mx, x⟩)`, the largest eigenvalue of
/// `(e^{iθ}m + e^{-iθ}m*) / 2`.
pub fn numerical_range_support(m: &Matrix, theta: f64, tol: &Tolerances) -> Result<f64> {
    m.require_square("numerical_range_support")?;
    let rotated = m.scale(Complex::from_polar(1.0, theta));
    Ok(hermitian_eig(&rotated.hermitian_part(), tol)?.max())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskCheck {
    pub contained: bool,
    /// `max_θ (h(θ) − radius)`, clipped below at zero.
    pub max_violation: f64,
    /// Allowance added to the radius before declaring a violation.
    pub slack: f64,
}

/// Tests `W(m) ⊆ {z : |z − center| ≤ radius}` on a uniform grid of
/// `grid_size` directions. Since the closure of the numerical range contains
/// the spectrum, a pass also certifies spectral containment.
pub fn disk_containment_check(
    m: &Matrix,
    center: Complex,
    radius: f64,
    grid_size: usize,
    tol: &Tolerances,
) -> Result<DiskCheck> {
    m.require_square("disk_containment_check")?;
    if !(radius >= 0.0 && radius.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "radius must be finite and nonnegative, got {radius}"
        )));
    }
    if grid_size < 8 {
        return Err(Error::InvalidArgument(format!(
            "grid_size must be at least 8, got {grid_size}"
        )));
    }
    let shifted = m.shift(center);
    let slack = tol.eq_tol * radius.max(super::operator_norm(m)?);
    let mut worst = f64::NEG_INFINITY;
    for k in 0..grid_size {
        let theta = TAU * k as f64 / grid_size as f64;
        worst = worst.max(numerical_range_support(&shifted, theta, tol)? - radius);
    }
    Ok(DiskCheck {
        contained: worst <= slack,
        max_violation: worst.max(0.0),
        slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{random_ginibre, seeded_rng};
    use crate::spectral::polar_decompose;
    use rand::Rng;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_and_zero() {
        for theta in [0.0, 0.3, 1.7, 3.0, 5.5] {
            let h = numerical_range_support(&Matrix::identity(3), theta, &tol()).unwrap();
            assert!((h - theta.cos()).abs() < 1e-15);
            assert_eq!(numerical_range_support(&Matrix::zeros(3, 3), theta, &tol()).unwrap(), 0.0);
        }
    }

    #[test]
    fn normal_matrix_support_is_hull_of_spectrum() {
        // u diag(λ) u* with random complex λ
        let mut rng = seeded_rng(17);
        let u = polar_decompose(&random_ginibre(5, 8), &tol()).unwrap().isometry;
        let lambdas: Vec<Complex> = (0..5)
            .map(|_| Complex::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
            .collect();
        let m = &(&u * &Matrix::from_diag(&lambdas)) * &u.adjoint();
        for k in 0..32 {
            let theta = TAU * k as f64 / 32.0;
            let rot = Complex::from_polar(1.0, theta);
            let expect = lambdas.iter().map(|l| (rot * l).re).fold(f64::MIN, f64::max);
            let got = numerical_range_support(&m, theta, &tol()).unwrap();
            assert!((got - expect).abs() < 1e-12, "θ={theta}: {got} vs {expect}");
        }
    }

    #[test]
    fn disk_examples() {
        let c = Complex::new(-1.0, 0.0);
        let r = disk_containment_check(&Matrix::zeros(2, 2), c, 1.0, 256, &tol()).unwrap();
        assert!(r.contained);
        let r = disk_containment_check(&Matrix::identity(2), c, 1.0, 256, &tol()).unwrap();
        assert!(!r.contained);
        assert!((r.max_violation - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disk_argument_validation() {
        let z = Matrix::zeros(2, 2);
        let c = Complex::new(0.0, 0.0);
        assert!(disk_containment_check(&z, c, -1.0, 256, &tol()).is_err());
        assert!(disk_containment_check(&z, c, 1.0, 4, &tol()).is_err());
        assert!(disk_containment_check(&Matrix::zeros(2, 3), c, 1.0, 16, &tol()).is_err());
    }
}
