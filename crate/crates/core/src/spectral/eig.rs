//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use crate::dense::{Complex, Matrix, Tolerances};
use crate::error::{Error, Result};

/// Hard cap on full Jacobi sweeps.
pub const MAX_SWEEPS: usize = 30;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: Matrix,
}

impl EigenDecomposition {
    /// `Q · diag(f(λ)) · Q*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.values.len();
        let q = &self.vectors;
        let mut out = Matrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let w = f(lambda);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let qi = q[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += qi * q[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> Matrix {
        self.reconstruct_with(|x| x)
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Largest eigenvalue modulus, i.e. the operator norm of the source.
    pub fn spectral_radius(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }
}

fn off_diagonal_norm(h: &Matrix) -> f64 {
    let n = h.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += h[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Rotation angle parameters `(c, s)` that annihilate the off-diagonal of the
/// real symmetric 2×2 block `[[alpha, g], [g, beta]]` with `g > 0`.
pub(crate) fn jacobi_cs(alpha: f64, beta: f64, g: f64) -> (f64, f64) {
    let zeta = (beta - alpha) / (2.0 * g);
    let t = if zeta.is_infinite() {
        0.0
    } else {
        zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, c * t)
}

/// Eigendecomposition of the Hermitian part of `h`.
///
/// Stops once the off-diagonal Frobenius mass drops to
/// `convergence_tol · ‖h‖_F`; errors after [`MAX_SWEEPS`] sweeps without
/// reaching it.
pub fn hermitian_eig(h: &Matrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    let n = h.require_square("hermitian_eig")?;
    let mut a = h.hermitian_part();
    let mut q = Matrix::identity(n);
    let target = tol.convergence_tol * a.frobenius_norm();

    let mut converged = off_diagonal_norm(&a) <= target;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for r in (p + 1)..n {
                let apr = a[(p, r)];
                let g = apr.norm();
                if g == 0.0 {
                    continue;
                }
                // phase e^{-iφ} reduces the 2×2 block to a real symmetric one
                let phase = apr.conj() / g;
                let (c, s) = jacobi_cs(a[(p, p)].re, a[(r, r)].re, g);
                // J = [[c, s], [-s·phase, c·phase]] acting on columns p, r
                let jpp = Complex::new(c, 0.0);
                let jpr = Complex::new(s, 0.0);
                let jrp = -phase * s;
                let jrr = phase * c;
                for k in 0..n {
                    let x = a[(k, p)];
                    let y = a[(k, r)];
                    a[(k, p)] = x * jpp + y * jrp;
                    a[(k, r)] = x * jpr + y * jrr;
                }
                for k in 0..n {
                    let x = a[(p, k)];
                    let y = a[(r, k)];
                    a[(p, k)] = jpp.conj() * x + jrp.conj() * y;
                    a[(r, k)] = jpr.conj() * x + jrr.conj() * y;
                }
                a[(p, r)] = Complex::new(0.0, 0.0);
                a[(r, p)] = Complex::new(0.0, 0.0);
                a[(p, p)] = Complex::new(a[(p, p)].re, 0.0);
                a[(r, r)] = Complex::new(a[(r, r)].re, 0.0);
                for k in 0..n {
                    let x = q[(k, p)];
                    let y = q[(k, r)];
                    q[(k, p)] = x * jpp + y * jrp;
                    q[(k, r)] = x * jpr + y * jrr;
                }
            }
        }
        converged = off_diagonal_norm(&a) <= target;
    }
    if !converged {
        return Err(Error::NoConvergence {
            op: "hermitian_eig",
            sweeps: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &q.column(src));
    }
    Ok(EigenDecomposition { values, vectors })
}
