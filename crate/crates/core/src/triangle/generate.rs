//! Instance generators: equality pairs from a common isometry, and the
//! projection/subprojection pairs for which no common isometry exists.

use crate::dense::{ginibre_from_rng, seeded_rng, Matrix, Tolerances};
use crate::error::{Error, Result};
use crate::spectral::{hermitian_eig, operator_norm, partial_isometry_defect, svd};

/// A partial isometry `u` with PSD `a`, `b` supported in its initial space.
#[derive(Debug, Clone)]
pub struct PairSpec {
    pub u: Matrix,
    pub a: Matrix,
    pub b: Matrix,
}

impl PairSpec {
    /// Checks the partial isometry law, positivity, and `u*u·a = a`, `u*u·b = b`.
    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        let n = self.u.require_square("PairSpec")?;
        for (name, m) in [("a", &self.a), ("b", &self.b)] {
            if m.shape() != (n, n) {
                return Err(Error::ShapeMismatch {
                    op: "PairSpec",
                    left: self.u.shape(),
                    right: m.shape(),
                });
            }
            let herm = (&m.adjoint() - m).frobenius_norm();
            let e = hermitian_eig(m, tol)?;
            let scale = e.spectral_radius().max(1.0);
            if herm > tol.eq_tol * scale || e.min() < -10.0 * tol.eq_tol * scale {
                return Err(Error::PairSpecViolation(format!("{name} is not Hermitian PSD")));
            }
        }
        let pid = partial_isometry_defect(&self.u)?;
        if pid > tol.eq_tol {
            return Err(Error::PairSpecViolation(format!(
                "u is not a partial isometry (defect {pid:e})"
            )));
        }
        let q = &self.u.adjoint() * &self.u;
        for (name, m) in [("a", &self.a), ("b", &self.b)] {
            let leak = operator_norm(&(&(&q * m) - m))?;
            let scale = operator_norm(m)?.max(1.0);
            if leak > tol.eq_tol * scale {
                return Err(Error::PairSpecViolation(format!(
                    "{name} leaks out of the initial space of u (by {leak:e})"
                )));
            }
        }
        Ok(())
    }
}

/// Random [`PairSpec`] with `rank(u) = rank_u`.
///
/// `u` keeps the leading `rank_u` singular pairs of a Ginibre draw with
/// unit singular values; `a = q g*g q` and `b = q h*h q` with `q = u*u`.
pub fn make_pair_spec(n: usize, rank_u: usize, seed: u64, tol: &Tolerances) -> Result<PairSpec> {
    if n == 0 || rank_u == 0 || rank_u > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= rank_u <= n, got n={n}, rank_u={rank_u}"
        )));
    }
    let mut rng = seeded_rng(seed);
    let g0 = ginibre_from_rng(n, n, &mut rng);
    let g1 = ginibre_from_rng(n, n, &mut rng);
    let g2 = ginibre_from_rng(n, n, &mut rng);

    let s = svd(&g0, tol)?;
    let mut u = Matrix::zeros(n, n);
    for k in 0..rank_u {
        for i in 0..n {
            for j in 0..n {
                u[(i, j)] += s.u[(i, k)] * s.v[(j, k)].conj();
            }
        }
    }
    let q = (&u.adjoint() * &u).hermitian_part();
    let compress = |g: &Matrix| (&(&q * &(&g.adjoint() * g)) * &q).hermitian_part();
    Ok(PairSpec {
        a: compress(&g1),
        b: compress(&g2),
        u,
    })
}

/// `(u·a, u·b)`, a pair satisfying the triangle equality.
pub fn synthesize_equality_pair(spec: &PairSpec, tol: &Tolerances) -> Result<(Matrix, Matrix)> {
    spec.validate(tol)?;
    Ok((&spec.u * &spec.a, &spec.u * &spec.b))
}

/// `x = P`, `y = −Q` for diagonal projections `Q < P` of ranks
/// `rank_q < rank_p`; the defect is exactly 2.
pub fn make_projection_counterexample(
    n: usize,
    rank_p: usize,
    rank_q: usize,
) -> Result<(Matrix, Matrix)> {
    if !(1 <= rank_q && rank_q < rank_p && rank_p <= n) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= rank_q < rank_p <= n, got n={n}, rank_p={rank_p}, rank_q={rank_q}"
        )));
    }
    let diag = |r: usize, sign: f64| -> Vec<f64> {
        (0..n).map(|i| if i < r { sign } else { 0.0 }).collect()
    };
    Ok((
        Matrix::from_real_diag(&diag(rank_p, 1.0)),
        Matrix::from_real_diag(&diag(rank_q, -1.0)),
    ))
}
