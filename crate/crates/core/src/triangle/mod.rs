//! Triangle-equality detection and the common partial isometry.
//!
//! For square `X`, `Y` the equality `|X+Y| = |X| + |Y|` holds exactly when
//! one partial isometry `U` satisfies `X = U|X|` and `Y = U|Y|`. Numerically
//! the equality is a tolerance decision on the defect
//! `‖|X+Y| − |X| − |Y|‖` relative to `max(‖X‖, ‖Y‖, 1)`, and the extracted
//! `U` is the canonical polar factor of `X + Y`.

mod certificate;
mod contraction;
mod generate;
mod lemma;

pub use certificate::{certify_default, certify_proof_chain, ProofCertificate, StepRecord, CHARPOLY_TOL, STEP_NAMES};
pub use contraction::{compute_contraction_factors, ContractionFactors};
pub use generate::{
    make_pair_spec, make_projection_counterexample, synthesize_equality_pair, PairSpec,
};
pub use lemma::{lemma_defect, lemma_isometry};

use serde::Serialize;

use crate::dense::{Matrix, Tolerances};
use crate::error::{Error, Result};
use crate::spectral::{operator_norm, partial_isometry_defect, polar_decompose};

/// `|x| = (x*x)^{1/2}`, taken from the SVD of `x`.
pub fn abs_val(x: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    Ok(polar_decompose(x, tol)?.positive)
}

/// `max(‖x‖, ‖y‖, 1)`, the reference scale for every equality decision.
pub fn pair_scale(x: &Matrix, y: &Matrix) -> Result<f64> {
    Ok(operator_norm(x)?.max(operator_norm(y)?).max(1.0))
}

fn check_pair(x: &Matrix, y: &Matrix) -> Result<()> {
    x.require_square("triangle pair")?;
    if x.shape() != y.shape() {
        return Err(Error::ShapeMismatch {
            op: "triangle pair",
            left: x.shape(),
            right: y.shape(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EqualityReport {
    /// `‖|X+Y| − |X| − |Y|‖`.
    pub defect: f64,
    pub scale: f64,
    pub threshold: f64,
    pub holds: bool,
}

pub fn triangle_defect(x: &Matrix, y: &Matrix, tol: &Tolerances) -> Result<EqualityReport> {
    check_pair(x, y)?;
    let sum = abs_val(&(x + y), tol)?;
    let parts = &abs_val(x, tol)? + &abs_val(y, tol)?;
    let defect = operator_norm(&(&sum - &parts))?;
    let scale = pair_scale(x, y)?;
    let threshold = tol.eq_tol * scale;
    Ok(EqualityReport {
        defect,
        scale,
        threshold,
        holds: defect <= threshold,
    })
}

#[derive(Debug, Clone)]
pub struct CommonIsometryResult {
    pub u: Matrix,
    /// `‖U|X| − X‖ / scale`.
    pub residual_x: f64,
    /// `‖U|Y| − Y‖ / scale`.
    pub residual_y: f64,
    pub scale: f64,
    /// `‖UU*U − U‖`.
    pub isometry_defect: f64,
}

impl CommonIsometryResult {
    pub fn max_residual(&self) -> f64 {
        self.residual_x.max(self.residual_y)
    }

    /// Both residuals within `10 · eq_tol`.
    pub fn accepted(&self, tol: &Tolerances) -> bool {
        self.max_residual() <= 10.0 * tol.eq_tol
    }
}

/// The canonical polar factor of `x + y`, with residuals against both
/// polar decompositions.
///
/// When the equality holds, `|X+Y| = |X| + |Y|` and the factor agrees with
/// the common isometry on `ran |X| + ran |Y|`; it vanishes on the
/// complement. Runs on any pair: large residuals are how failure shows.
pub fn extract_common_isometry(
    x: &Matrix,
    y: &Matrix,
    tol: &Tolerances,
) -> Result<CommonIsometryResult> {
    check_pair(x, y)?;
    let u = polar_decompose(&(x + y), tol)?.isometry;
    let scale = pair_scale(x, y)?;
    let residual_x = (&u * &abs_val(x, tol)?).dist_rel(x, scale)?;
    let residual_y = (&u * &abs_val(y, tol)?).dist_rel(y, scale)?;
    let isometry_defect = partial_isometry_defect(&u)?;
    Ok(CommonIsometryResult {
        u,
        residual_x,
        residual_y,
        scale,
        isometry_defect,
    })
}
