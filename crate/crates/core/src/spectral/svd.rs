//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//!
//! Columns of the working matrix are rotated pairwise until they are
//! mutually orthogonal; the column norms are then the singular values.
//! Unlike an eigensolve of `m*m`, this keeps singular values near zero at
//! roundoff level instead of `sqrt(roundoff)`, which matters for every rank
//! decision downstream.

use super::eig::jacobi_cs;
use crate::dense::{Complex, Matrix, Tolerances};
use crate::error::{Error, Result};

pub const MAX_SVD_SWEEPS: usize = 60;

#[derive(Debug, Clone)]
pub struct SvdDecomposition {
    /// `rows × k` with orthonormal columns, `k = min(rows, cols)`.
    pub u: Matrix,
    /// Descending, length `k`.
    pub singular_values: Vec<f64>,
    /// `cols × k` with orthonormal columns.
    pub v: Matrix,
}

impl SvdDecomposition {
    pub fn max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values strictly above `rank_tol · σ_max`.
    pub fn rank(&self, rank_tol: f64) -> usize {
        let cut = rank_tol * self.max();
        self.singular_values.iter().filter(|&&s| s > cut && s > 0.0).count()
    }

    pub fn reconstruct(&self) -> Matrix {
        let mut us = self.u.clone();
        for (j, &s) in self.singular_values.iter().enumerate() {
            for i in 0..us.rows() {
                us[(i, j)] *= s;
            }
        }
        &us * &self.v.adjoint()
    }
}

fn dot(x: &[Complex], y: &[Complex]) -> Complex {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn norm(x: &[Complex]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Extends the first `filled` orthonormal columns to a full orthonormal set
/// with Gram–Schmidt over the standard basis.
fn complete_orthonormal(cols: &mut [Vec<Complex>], filled: &[bool]) {
    let dim = cols.first().map_or(0, Vec::len);
    let mut basis: Vec<Vec<Complex>> = cols
        .iter()
        .zip(filled)
        .filter(|(_, &f)| f)
        .map(|(c, _)| c.clone())
        .collect();
    let mut candidate = 0;
    for (col, _) in cols.iter_mut().zip(filled).filter(|(_, &f)| !f) {
        loop {
            assert!(candidate < dim, "orthonormal completion ran out of candidates");
            let mut e = vec![Complex::new(0.0, 0.0); dim];
            e[candidate] = Complex::new(1.0, 0.0);
            candidate += 1;
            // two passes of classical Gram-Schmidt
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &e);
                    for (ei, bi) in e.iter_mut().zip(b) {
                        *ei -= c * bi;
                    }
                }
            }
            let nrm = norm(&e);
            if nrm > 0.5 {
                for z in e.iter_mut() {
                    *z /= nrm;
                }
                basis.push(e.clone());
                *col = e;
                break;
            }
        }
    }
}

/// One-sided Jacobi on a tall matrix (`rows ≥ cols`).
fn svd_tall(m: &Matrix, tol: &Tolerances) -> Result<SvdDecomposition> {
    let (rows, k) = m.shape();
    let mut g: Vec<Vec<Complex>> = (0..k).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<Complex>> = (0..k)
        .map(|j| {
            let mut e = vec![Complex::new(0.0, 0.0); k];
            e[j] = Complex::new(1.0, 0.0);
            e
        })
        .collect();
    // columns are orthogonal to working precision at exit
    let threshold = tol.convergence_tol.min(f64::EPSILON * rows as f64).max(f64::EPSILON);

    let mut converged = k == 1;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SVD_SWEEPS {
        sweeps += 1;
        converged = true;
        for p in 0..k {
            for r in (p + 1)..k {
                let alpha = dot(&g[p], &g[p]).re;
                let beta = dot(&g[r], &g[r]).re;
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot(&g[p], &g[r]);
                let gn = gamma.norm();
                if gn <= threshold * (alpha * beta).sqrt() {
                    continue;
                }
                converged = false;
                let phase = gamma.conj() / gn;
                let (c, s) = jacobi_cs(alpha, beta, gn);
                let jrp = -phase * s;
                let jrr = phase * c;
                for cols in [&mut g, &mut v] {
                    let (lo, hi) = cols.split_at_mut(r);
                    let (x, y) = (&mut lo[p], &mut hi[0]);
                    for (xi, yi) in x.iter_mut().zip(y.iter_mut()) {
                        let a = *xi;
                        let b = *yi;
                        *xi = a * c + b * jrp;
                        *yi = a * s + b * jrr;
                    }
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            op: "svd",
            sweeps: MAX_SVD_SWEEPS,
        });
    }

    let sigma: Vec<f64> = g.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));

    let mut u_cols: Vec<Vec<Complex>> = Vec::with_capacity(k);
    let mut filled = Vec::with_capacity(k);
    let mut v_sorted = Matrix::zeros(k, k);
    let mut values = Vec::with_capacity(k);
    for (dst, &src) in order.iter().enumerate() {
        let s = sigma[src];
        values.push(s);
        v_sorted.set_column(dst, &v[src]);
        if s > 0.0 {
            u_cols.push(g[src].iter().map(|z| z / s).collect());
            filled.push(true);
        } else {
            u_cols.push(vec![Complex::new(0.0, 0.0); rows]);
            filled.push(false);
        }
    }
    complete_orthonormal(&mut u_cols, &filled);
    let mut u = Matrix::zeros(rows, k);
    for (j, col) in u_cols.iter().enumerate() {
        u.set_column(j, col);
    }
    Ok(SvdDecomposition {
        u,
        singular_values: values,
        v: v_sorted,
    })
}

/// Thin SVD `m = u · diag(σ) · v*` with `σ` descending.
pub fn svd(m: &Matrix, tol: &Tolerances) -> Result<SvdDecomposition> {
    if m.rows() >= m.cols() {
        svd_tall(m, tol)
    } else {
        let t = svd_tall(&m.adjoint(), tol)?;
        Ok(SvdDecomposition {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        })
    }
}
