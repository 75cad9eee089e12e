//! Spectral kernels: eigen- and singular value decompositions and the
//! functions of matrices built on them.

mod charpoly;
mod eig;
mod range;
mod svd;

pub use charpoly::{char_poly, CharPoly, CHAR_POLY_MAX_DIM};
pub use eig::{hermitian_eig, EigenDecomposition, MAX_SWEEPS};
pub use range::{disk_containment_check, numerical_range_support, DiskCheck, DEFAULT_GRID};
pub use svd::{svd, SvdDecomposition, MAX_SVD_SWEEPS};

use crate::dense::{Matrix, Tolerances};
use crate::error::{Error, Result};

/// Largest singular value.
pub fn operator_norm(m: &Matrix) -> Result<f64> {
    if m.max_abs() == 0.0 {
        return Ok(0.0);
    }
    Ok(svd(m, &Tolerances::default())?.max())
}

/// Unique PSD square root of a Hermitian PSD matrix.
///
/// Eigenvalues down to `-eq_tol·‖a‖` are treated as roundoff and clamped to
/// zero; anything below `-10·eq_tol·‖a‖` is rejected. Eigenvalues at or below
/// `rank_tol·‖a‖` are also zeroed, since their square roots would otherwise
/// turn roundoff of order `ε‖a‖` into errors of order `sqrt(ε‖a‖)`.
pub fn psd_sqrt(a: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let e = hermitian_eig(a, tol)?;
    check_psd(&e, tol)?;
    Ok(sqrt_from_eig(&e, tol))
}

pub(crate) fn sqrt_from_eig(e: &EigenDecomposition, tol: &Tolerances) -> Matrix {
    let cut = tol.rank_tol * e.spectral_radius();
    e.reconstruct_with(|l| if l > cut { l.sqrt() } else { 0.0 })
}

pub(crate) fn check_psd(e: &EigenDecomposition, tol: &Tolerances) -> Result<()> {
    let threshold = -10.0 * tol.eq_tol * e.spectral_radius();
    if e.min() < threshold {
        return Err(Error::NotPositive {
            min_eigenvalue: e.min(),
            threshold,
        });
    }
    Ok(())
}

/// Moore–Penrose pseudoinverse; singular values at or below
/// `rank_tol · σ_max` are treated as zero.
pub fn pseudoinverse(m: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let s = svd(m, tol)?;
    let cut = tol.rank_tol * s.max();
    let mut out = Matrix::zeros(m.cols(), m.rows());
    for (k, &sigma) in s.singular_values.iter().enumerate() {
        if sigma <= cut || sigma == 0.0 {
            break;
        }
        for i in 0..m.cols() {
            let vi = s.v[(i, k)] / sigma;
            for j in 0..m.rows() {
                out[(i, j)] += vi * s.u[(j, k)].conj();
            }
        }
    }
    Ok(out)
}

/// `x = isometry · positive` with `positive = |x|` and the canonical
/// isometry whose initial space is `ran |x|` (so `ker isometry = ker x`).
#[derive(Debug, Clone)]
pub struct PolarFactors {
    pub isometry: Matrix,
    pub positive: Matrix,
}

pub fn polar_decompose(x: &Matrix, tol: &Tolerances) -> Result<PolarFactors> {
    let n = x.require_square("polar_decompose")?;
    let s = svd(x, tol)?;
    let cut = tol.rank_tol * s.max();
    let mut isometry = Matrix::zeros(n, n);
    let mut positive = Matrix::zeros(n, n);
    for (k, &sigma) in s.singular_values.iter().enumerate() {
        if sigma == 0.0 {
            break;
        }
        let keep = sigma > cut;
        for i in 0..n {
            let vi = s.v[(i, k)];
            let ui = s.u[(i, k)];
            for j in 0..n {
                let vj = s.v[(j, k)].conj();
                positive[(i, j)] += vi * vj * sigma;
                if keep {
                    isometry[(i, j)] += ui * vj;
                }
            }
        }
    }
    Ok(PolarFactors {
        isometry,
        positive: positive.hermitian_part(),
    })
}

/// Orthogonal projection onto the span of eigenvectors with eigenvalue above
/// `rank_tol · λ_max`.
pub fn range_projection(e: &EigenDecomposition, tol: &Tolerances) -> Matrix {
    let cut = tol.rank_tol * e.spectral_radius();
    e.reconstruct_with(|l| if l > cut && l > 0.0 { 1.0 } else { 0.0 })
}

/// `‖uu*u − u‖`, zero exactly for partial isometries.
pub fn partial_isometry_defect(u: &Matrix) -> Result<f64> {
    let uuu = &(u * &u.adjoint()) * u;
    operator_norm(&(&uuu - u))
}

/// Seeded Haar-like unitary: the polar factor of a Ginibre draw.
pub fn random_unitary(n: usize, seed: u64, tol: &Tolerances) -> Result<Matrix> {
    Ok(polar_decompose(&crate::dense::random_ginibre(n, seed), tol)?.isometry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{random_ginibre, random_hermitian, Complex};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn close(a: &Matrix, b: &Matrix, eps: f64) -> bool {
        (a - b).frobenius_norm() <= eps
    }

    #[test]
    fn operator_norm_examples() {
        assert_eq!(operator_norm(&Matrix::zeros(3, 3)).unwrap(), 0.0);
        let u = random_unitary(5, 1, &tol()).unwrap();
        assert!((operator_norm(&u).unwrap() - 1.0).abs() < 1e-13);
        let m = Matrix::from_real(2, 2, &[0.0, 2.0, 0.0, 0.0]).unwrap();
        assert_eq!(operator_norm(&m).unwrap(), 2.0);
        let g = random_ginibre(6, 4);
        let diff = operator_norm(&g).unwrap() - operator_norm(&g.adjoint()).unwrap();
        assert!(diff.abs() < 1e-13);
    }

    #[test]
    fn psd_sqrt_examples() {
        let r = psd_sqrt(&Matrix::from_real_diag(&[4.0, 9.0]), &tol()).unwrap();
        assert!(close(&r, &Matrix::from_real_diag(&[2.0, 3.0]), 1e-15));

        // projection onto a random 2-plane in C^4
        let u = random_unitary(4, 2, &tol()).unwrap();
        let d = Matrix::from_real_diag(&[1.0, 1.0, 0.0, 0.0]);
        let p = &(&u * &d) * &u.adjoint();
        assert!(close(&psd_sqrt(&p, &tol()).unwrap(), &p, 1e-13));

        let g = random_ginibre(6, 3);
        let a = &g.adjoint() * &g;
        let r = psd_sqrt(&a, &tol()).unwrap();
        assert!(close(&(&r * &r), &a, 1e-12 * a.frobenius_norm()));
        assert!(hermitian_eig(&r, &tol()).unwrap().min() >= -1e-12);
    }

    #[test]
    fn psd_sqrt_rejects_indefinite() {
        let err = psd_sqrt(&Matrix::from_real_diag(&[1.0, -0.5]), &tol()).unwrap_err();
        assert!(matches!(err, Error::NotPositive { .. }));
        // roundoff-level negatives are clamped
        let ok = psd_sqrt(&Matrix::from_real_diag(&[1.0, -1e-10]), &tol()).unwrap();
        assert_eq!(ok[(1, 1)].re, 0.0);
    }

    #[test]
    fn pseudoinverse_examples() {
        let p = pseudoinverse(&Matrix::from_real_diag(&[2.0, 0.0]), &tol()).unwrap();
        assert!(close(&p, &Matrix::from_real_diag(&[0.5, 0.0]), 1e-15));
        let u = random_unitary(4, 8, &tol()).unwrap();
        assert!(close(&pseudoinverse(&u, &tol()).unwrap(), &u.adjoint(), 1e-13));
    }

    #[test]
    fn pseudoinverse_penrose_identities() {
        let g = random_ginibre(5, 21);
        let h = random_ginibre(5, 22);
        // rank 3: zero two columns of g
        let mut gl = g.clone();
        for i in 0..5 {
            gl[(i, 3)] = Complex::new(0.0, 0.0);
            gl[(i, 4)] = Complex::new(0.0, 0.0);
        }
        let m = &gl * &h;
        let mp = pseudoinverse(&m, &tol()).unwrap();
        let s = m.frobenius_norm();
        assert!(close(&(&(&m * &mp) * &m), &m, 1e-12 * s));
        assert!(close(&(&(&mp * &m) * &mp), &mp, 1e-12 * mp.frobenius_norm()));
        let mmp = &m * &mp;
        assert!(close(&mmp.adjoint(), &mmp, 1e-12));
        let mpm = &mp * &m;
        assert!(close(&mpm.adjoint(), &mpm, 1e-12));
    }

    #[test]
    fn polar_nilpotent() {
        let x = Matrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let f = polar_decompose(&x, &tol()).unwrap();
        assert!(close(&f.positive, &Matrix::from_real_diag(&[0.0, 1.0]), 1e-15));
        assert!(close(&f.isometry, &x, 1e-15));
        assert!(close(&(&f.isometry * &f.positive), &x, 1e-15));
        let uu = &f.isometry.adjoint() * &f.isometry;
        assert!(close(&uu, &Matrix::from_real_diag(&[0.0, 1.0]), 1e-15));
    }

    #[test]
    fn polar_of_positive_and_unitary() {
        let g = random_ginibre(4, 5);
        let mut g2 = g.clone();
        for i in 0..4 {
            g2[(i, 0)] = Complex::new(0.0, 0.0);
        }
        let a = &g2.adjoint() * &g2; // PSD, rank 3
        let f = polar_decompose(&a, &tol()).unwrap();
        assert!(close(&f.positive, &a, 1e-13 * a.frobenius_norm()));
        let e = hermitian_eig(&a, &tol()).unwrap();
        let proj = range_projection(&e, &tol());
        assert!(close(&f.isometry, &proj, 1e-12));

        let u = random_unitary(4, 6, &tol()).unwrap();
        let f = polar_decompose(&u, &tol()).unwrap();
        assert!(close(&f.positive, &Matrix::identity(4), 1e-13));
        assert!(close(&f.isometry, &u, 1e-13));
    }

    #[test]
    fn polar_invariants_random() {
        for seed in 0..5 {
            let h = random_hermitian(6, seed);
            let x = &random_ginibre(6, seed + 50) * &h;
            let f = polar_decompose(&x, &tol()).unwrap();
            let u = &f.isometry;
            let s = operator_norm(&x).unwrap();
            assert!(close(&(u * &f.positive), &x, 1e-12 * s));
            assert!(partial_isometry_defect(u).unwrap() < 1e-12);
            let uua = &(&u.adjoint() * u) * &f.positive;
            assert!(close(&uua, &f.positive, 1e-12 * s));
        }
    }
}
