use crate::dense::{Matrix, Tolerances};
use crate::error::{Error, Result};
use crate::spectral::{check_psd, hermitian_eig, range_projection, sqrt_from_eig};

/// Contractions `k`, `l` with `a^{1/2} = k (a+b)^{1/2}`, `b^{1/2} = l (a+b)^{1/2}`.
#[derive(Debug, Clone)]
pub struct ContractionFactors {
    pub k: Matrix,
    pub l: Matrix,
    /// Orthogonal projection onto `ran(a+b)`.
    pub p: Matrix,
    /// `(a+b)^{1/2}`.
    pub sqrt_sum: Matrix,
}

/// `k = a^{1/2} · (a+b)^{-1/2}` and `l = b^{1/2} · (a+b)^{-1/2}`, with the
/// inverse square root taken on `ran(a+b)` only.
///
/// The pseudoinverse of `(a+b)^{1/2}` is built from the eigendecomposition
/// of `a+b` itself, using the same `rank_tol` cutoff that defines `p`, so
/// that `k*k + l*l` and `p` see the same numerical range.
pub fn compute_contraction_factors(
    a: &Matrix,
    b: &Matrix,
    tol: &Tolerances,
) -> Result<ContractionFactors> {
    a.require_square("compute_contraction_factors")?;
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            op: "compute_contraction_factors",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let ea = hermitian_eig(a, tol)?;
    check_psd(&ea, tol)?;
    let eb = hermitian_eig(b, tol)?;
    check_psd(&eb, tol)?;
    let sqrt_a = sqrt_from_eig(&ea, tol);
    let sqrt_b = sqrt_from_eig(&eb, tol);

    let es = hermitian_eig(&(a + b), tol)?;
    let cut = tol.rank_tol * es.spectral_radius();
    let inv_sqrt = es.reconstruct_with(|x| if x > cut && x > 0.0 { 1.0 / x.sqrt() } else { 0.0 });
    let sqrt_sum = sqrt_from_eig(&es, tol);
    let p = range_projection(&es, tol);

    Ok(ContractionFactors {
        k: &sqrt_a * &inv_sqrt,
        l: &sqrt_b * &inv_sqrt,
        p,
        sqrt_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::random_ginibre;
    use crate::spectral::operator_norm;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn close(a: &Matrix, b: &Matrix, eps: f64) -> bool {
        (a - b).frobenius_norm() <= eps
    }

    #[test]
    fn identity_pair() {
        let i = Matrix::identity(3);
        let f = compute_contraction_factors(&i, &i, &tol()).unwrap();
        let half = i.scale_real(std::f64::consts::FRAC_1_SQRT_2);
        assert!(close(&f.k, &half, 1e-15));
        assert!(close(&f.l, &half, 1e-15));
        assert!(close(&f.p, &i, 1e-15));
    }

    #[test]
    fn one_sided_pair() {
        let i = Matrix::identity(2);
        let f = compute_contraction_factors(&i, &Matrix::zeros(2, 2), &tol()).unwrap();
        assert!(close(&f.k, &i, 1e-15));
        assert_eq!(f.l.max_abs(), 0.0);
        assert!(close(&f.p, &i, 1e-15));
    }

    #[test]
    fn random_pair_partition_and_commutation() {
        let g = random_ginibre(8, 5);
        let h = random_ginibre(8, 6);
        let a = (&g.adjoint() * &g).hermitian_part();
        let b = (&h.adjoint() * &h).hermitian_part();
        let f = compute_contraction_factors(&a, &b, &tol()).unwrap();
        let kk = &f.k.adjoint() * &f.k;
        let ll = &f.l.adjoint() * &f.l;
        assert!(close(&(&kk + &ll), &f.p, 1e-10));
        assert!(operator_norm(&(&(&kk * &ll) - &(&ll * &kk))).unwrap() < 1e-10);
        assert!(operator_norm(&f.k).unwrap() <= 1.0 + 1e-9);
        // a^{1/2} = k (a+b)^{1/2}
        let sa = crate::spectral::psd_sqrt(&a, &tol()).unwrap();
        assert!(close(&(&f.k * &f.sqrt_sum), &sa, 1e-10 * sa.frobenius_norm()));
    }

    #[test]
    fn rank_deficient_sum() {
        // a, b live on the first two coordinates of C^4
        let a = Matrix::from_real_diag(&[2.0, 1.0, 0.0, 0.0]);
        let b = Matrix::from_real_diag(&[1.0, 0.0, 0.0, 0.0]);
        let f = compute_contraction_factors(&a, &b, &tol()).unwrap();
        assert!(close(&f.p, &Matrix::from_real_diag(&[1.0, 1.0, 0.0, 0.0]), 1e-15));
        let kk = &f.k.adjoint() * &f.k;
        let ll = &f.l.adjoint() * &f.l;
        assert!(close(&(&kk + &ll), &f.p, 1e-14));
    }

    #[test]
    fn rejects_indefinite() {
        let a = Matrix::from_real_diag(&[1.0, -1.0]);
        let i = Matrix::identity(2);
        assert!(matches!(
            compute_contraction_factors(&a, &i, &tol()),
            Err(Error::NotPositive { .. })
        ));
        assert!(compute_contraction_factors(&i, &Matrix::identity(3), &tol()).is_err());
    }
}
