//! Step-by-step numerical certificate for "equality ⇒ common isometry".
//!
//! Each step evaluates one identity of the argument on the actual matrices
//! of the instance and records the residual against its threshold:
//!
//! 1. `a(v*w − I)b + b(w*v − I)a = 0` (the equality rewritten through the
//!    polar decompositions of `x` and `y`)
//! 2. `k`, `l` are contractions and `k*k + l*l = p`
//! 3. `(a+b)^{1/2} l*l k*k (a+b)^{1/2}` is positive
//! 4. the numerical range of `d(v*w − I)d` lies in the disk of radius
//!    `‖d‖²` centred at `−‖d‖²`
//! 5. the nonzero spectra of `ST` and `TS` agree, checked by characteristic
//!    polynomials for both exchanges used to reach `d(v*w − I)d`
//! 6. `a(v*w − I)b = 0`
//! 7. the extracted isometry reproduces both polar decompositions

use serde::Serialize;

use super::{
    abs_val, compute_contraction_factors, extract_common_isometry, triangle_defect,
    ContractionFactors,
};
use crate::dense::{Complex, Matrix, Tolerances};
use crate::error::{Error, Result};
use crate::spectral::{
    char_poly, disk_containment_check, hermitian_eig, operator_norm, polar_decompose, psd_sqrt,
    DEFAULT_GRID,
};

/// Coefficientwise relative agreement required of the exchanged
/// characteristic polynomials.
pub const CHARPOLY_TOL: f64 = 1e-8;

pub const STEP_NAMES: [&str; 7] = [
    "skew_identity",
    "contraction_partition",
    "positivity",
    "disk_containment",
    "charpoly_exchange",
    "conclusion",
    "common_isometry",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepRecord {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl StepRecord {
    fn new(name: &str, residual: f64, threshold: f64) -> Self {
        Self {
            name: name.to_string(),
            residual,
            threshold,
            pass: residual <= threshold,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProofCertificate {
    /// `|x|`
    pub a: Matrix,
    /// `|y|`
    pub b: Matrix,
    pub v: Matrix,
    pub w: Matrix,
    pub k: Matrix,
    pub l: Matrix,
    pub p: Matrix,
    pub d: Matrix,
    pub scale: f64,
    pub steps: Vec<StepRecord>,
}

impl ProofCertificate {
    pub fn all_pass(&self) -> bool {
        self.steps.iter().all(|s| s.pass)
    }

    pub fn step(&self, name: &str) -> Option<&StepRecord> {
        self.steps.iter().find(|s| s.name == name)
    }
}

/// Builds the certificate for a pair satisfying the triangle equality.
///
/// Returns [`Error::EqualityPrecondition`] when the equality itself fails,
/// so a broken instance is never confused with a failed step.
pub fn certify_proof_chain(
    x: &Matrix,
    y: &Matrix,
    tol: &Tolerances,
    grid: usize,
) -> Result<ProofCertificate> {
    let report = triangle_defect(x, y, tol)?;
    if !report.holds {
        return Err(Error::EqualityPrecondition {
            defect: report.defect,
            threshold: report.threshold,
        });
    }
    let n = x.rows();
    let scale = report.scale;
    let eq = tol.eq_tol * scale;
    let one = Complex::new(1.0, 0.0);

    let a = abs_val(x, tol)?;
    let b = abs_val(y, tol)?;
    let v = polar_decompose(x, tol)?.isometry;
    let w = polar_decompose(y, tol)?.isometry;
    let vw = &v.adjoint() * &w;
    let vw_minus = vw.shift(one);
    let wv_minus = vw.adjoint().shift(one);

    let mut steps = Vec::with_capacity(STEP_NAMES.len());

    // 1
    let skew = &(&(&a * &vw_minus) * &b) + &(&(&b * &wv_minus) * &a);
    steps.push(StepRecord::new(STEP_NAMES[0], operator_norm(&skew)?, eq));

    // 2
    let ContractionFactors { k, l, p, sqrt_sum } = compute_contraction_factors(&a, &b, tol)?;
    let kk = &k.adjoint() * &k;
    let ll = &l.adjoint() * &l;
    let partition = operator_norm(&(&(&kk + &ll) - &p))?;
    let contraction_excess = (operator_norm(&k)?.max(operator_norm(&l)?) - 1.0).max(0.0);
    let mut rec = StepRecord::new(STEP_NAMES[1], partition, tol.eq_tol * n as f64);
    rec.pass &= contraction_excess <= tol.eq_tol;
    steps.push(rec);

    // 3
    let middle = &(&(&sqrt_sum * &ll) * &kk) * &sqrt_sum;
    let asym = operator_norm(&(&middle - &middle.adjoint()))?;
    let negative = (-hermitian_eig(&middle, tol)?.min()).max(0.0);
    steps.push(StepRecord::new(STEP_NAMES[2], asym.max(negative), eq));

    // 4
    let d = psd_sqrt(&middle.hermitian_part(), tol)?;
    let dn2 = operator_norm(&d)?.powi(2);
    let compressed = &(&d * &vw_minus) * &d;
    let disk = disk_containment_check(&compressed, Complex::new(-dn2, 0.0), dn2, grid, tol)?;
    let mut rec = StepRecord::new(STEP_NAMES[3], disk.max_violation, disk.slack);
    rec.pass = disk.contained;
    steps.push(rec);

    // 5: S = k*k (a+b)^{1/2}, T = (v*w − I)(a+b)^{1/2} l*l; then
    //    S = (v*w − I) d, T = d
    let s1 = &kk * &sqrt_sum;
    let t1 = &(&vw_minus * &sqrt_sum) * &ll;
    let s2 = &vw_minus * &d;
    let mut gap: f64 = 0.0;
    for (s, t) in [(&s1, &t1), (&s2, &d)] {
        let bound = operator_norm(s)? * operator_norm(t)?;
        let st = char_poly(&(s * t))?;
        let ts = char_poly(&(t * s))?;
        gap = gap.max(st.relative_gap(&ts, bound));
    }
    steps.push(StepRecord::new(STEP_NAMES[4], gap, CHARPOLY_TOL));

    // 6
    let conclusion = operator_norm(&(&(&a * &vw_minus) * &b))?;
    let conclusion_rec = StepRecord::new(STEP_NAMES[5], conclusion, eq);
    let conclusion_pass = conclusion_rec.pass;
    steps.push(conclusion_rec);

    // 7
    let common = extract_common_isometry(x, y, tol)?;
    let mut rec = StepRecord::new(STEP_NAMES[6], common.max_residual(), 10.0 * tol.eq_tol);
    rec.pass &= conclusion_pass;
    steps.push(rec);

    Ok(ProofCertificate {
        a,
        b,
        v,
        w,
        k,
        l,
        p,
        d,
        scale,
        steps,
    })
}

/// [`certify_proof_chain`] with the default angular grid.
pub fn certify_default(x: &Matrix, y: &Matrix, tol: &Tolerances) -> Result<ProofCertificate> {
    certify_proof_chain(x, y, tol, DEFAULT_GRID)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangle::{make_pair_spec, make_projection_counterexample, synthesize_equality_pair};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_pair_passes_with_zero_residuals() {
        let i = Matrix::identity(3);
        let c = certify_default(&i, &i, &tol()).unwrap();
        assert_eq!(c.steps.len(), 7);
        assert!(c.all_pass(), "{:#?}", c.steps);
        let half = i.scale_real(std::f64::consts::FRAC_1_SQRT_2);
        assert!((&c.k - &half).frobenius_norm() < 1e-15);
        assert!((&c.v - &i).frobenius_norm() < 1e-15);
        for name in ["skew_identity", "conclusion", "common_isometry"] {
            assert_eq!(c.step(name).unwrap().residual, 0.0, "{name}");
        }
    }

    #[test]
    fn disjoint_diagonals_have_zero_skew() {
        let x = Matrix::from_real_diag(&[1.0, 0.0]);
        let y = Matrix::from_real_diag(&[0.0, -1.0]);
        let c = certify_default(&x, &y, &tol()).unwrap();
        assert_eq!(c.step("skew_identity").unwrap().residual, 0.0);
        assert!(c.all_pass(), "{:#?}", c.steps);
    }

    #[test]
    fn synthesized_pair_passes_every_step() {
        let spec = make_pair_spec(8, 5, 31, &tol()).unwrap();
        let (x, y) = synthesize_equality_pair(&spec, &tol()).unwrap();
        let c = certify_default(&x, &y, &tol()).unwrap();
        let names: Vec<&str> = c.steps.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, STEP_NAMES);
        assert!(c.all_pass(), "{:#?}", c.steps);
    }

    #[test]
    fn counterexample_is_a_precondition_error() {
        let (x, y) = make_projection_counterexample(3, 2, 1).unwrap();
        assert!(matches!(
            certify_default(&x, &y, &tol()),
            Err(Error::EqualityPrecondition { .. })
        ));
    }
}
