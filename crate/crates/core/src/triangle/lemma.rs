//! Common isometry from two polar decompositions `va`, `wb`.

use crate::dense::{Matrix, Tolerances};
use crate::error::{Error, Result};
use crate::spectral::{operator_norm, pseudoinverse};

/// `‖a(v*w − I)b‖`; zero exactly when some partial isometry `u` has
/// `ua = va` and `ub = wb` (given `v*v·a = a`, `w*w·b = b`).
pub fn lemma_defect(a: &Matrix, b: &Matrix, v: &Matrix, w: &Matrix) -> Result<f64> {
    let n = a.require_square("lemma_defect")?;
    for m in [b, v, w] {
        if m.shape() != (n, n) {
            return Err(Error::ShapeMismatch {
                op: "lemma_defect",
                left: a.shape(),
                right: m.shape(),
            });
        }
    }
    let inner = (&v.adjoint() * w).shift(crate::dense::Complex::new(1.0, 0.0));
    operator_norm(&(&(a * &inner) * b))
}

/// The map `a·s + b·t ↦ v·a·s + w·b·t`, extended by zero off
/// `ran a + ran b`: `u = [va  wb] · [a  b]⁺`.
///
/// It is a partial isometry with `ua = va`, `ub = wb` exactly when
/// [`lemma_defect`] vanishes; otherwise it is only the least-squares fit.
pub fn lemma_isometry(
    a: &Matrix,
    b: &Matrix,
    v: &Matrix,
    w: &Matrix,
    tol: &Tolerances,
) -> Result<Matrix> {
    lemma_defect(a, b, v, w)?;
    let source = Matrix::hstack(&[a, b])?;
    let target = Matrix::hstack(&[&(v * a), &(w * b)])?;
    Ok(&target * &pseudoinverse(&source, tol)?)
}
