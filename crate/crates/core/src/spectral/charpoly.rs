//! Characteristic polynomials by the Faddeev–LeVerrier recurrence.

use crate::dense::{Complex, Matrix};
use crate::error::{Error, Result};

/// Recurrence is numerically unstable beyond this size.
pub const CHAR_POLY_MAX_DIM: usize = 32;

/// Monic `det(λI − m)`; `coefficients[k]` multiplies `λ^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    pub coefficients: Vec<Complex>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Largest coefficientwise gap, each term measured relative to
    /// `max(|p_k|, |q_k|, scale^(n−k))`.
    ///
    /// `scale` should bound the spectral radius of the source matrices
    /// (e.g. a product of operator norms); it keeps coefficients that are
    /// zero in exact arithmetic from turning the comparison into noise.
    pub fn relative_gap(&self, other: &CharPoly, scale: f64) -> f64 {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let n = self.degree();
        let s = scale.max(f64::MIN_POSITIVE);
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .enumerate()
            .map(|(k, (p, q))| {
                let reference = p.norm().max(q.norm()).max(s.powi((n - k) as i32));
                if reference == 0.0 {
                    0.0
                } else {
                    (p - q).norm() / reference
                }
            })
            .fold(0.0, f64::max)
    }
}

pub fn char_poly(m: &Matrix) -> Result<CharPoly> {
    let n = m.require_square("char_poly")?;
    if n > CHAR_POLY_MAX_DIM {
        return Err(Error::DimensionTooLarge {
            op: "char_poly",
            n,
            limit: CHAR_POLY_MAX_DIM,
        });
    }
    // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k) / k
    let mut coefficients = vec![Complex::new(0.0, 0.0); n + 1];
    coefficients[n] = Complex::new(1.0, 0.0);
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        let am = m * &mk;
        mk = am.shift(-coefficients[n - k + 1]);
        let amk = m * &mk;
        coefficients[n - k] = -amk.trace() / k as f64;
    }
    Ok(CharPoly { coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::random_ginibre;

    fn real(c: &CharPoly) -> Vec<f64> {
        c.coefficients.iter().map(|z| z.re).collect()
    }

    #[test]
    fn diagonal() {
        let p = char_poly(&Matrix::from_real_diag(&[1.0, 2.0])).unwrap();
        assert_eq!(real(&p), vec![2.0, -3.0, 1.0]);
    }

    #[test]
    fn nilpotent() {
        let m = Matrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(real(&char_poly(&m).unwrap()), vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn st_versus_ts() {
        for seed in 0..10 {
            let n = 2 + (seed as usize % 5);
            let s = random_ginibre(n, seed);
            let t = random_ginibre(n, seed + 100);
            let scale = crate::spectral::operator_norm(&s).unwrap()
                * crate::spectral::operator_norm(&t).unwrap();
            let gap = char_poly(&(&s * &t))
                .unwrap()
                .relative_gap(&char_poly(&(&t * &s)).unwrap(), scale);
            assert!(gap < 1e-12, "n={n}: {gap}");
        }
    }

    #[test]
    fn dimension_guard() {
        assert!(matches!(
            char_poly(&Matrix::zeros(33, 33)),
            Err(Error::DimensionTooLarge { n: 33, .. })
        ));
        assert!(char_poly(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn evaluates_to_zero_at_eigenvalues() {
        let p = char_poly(&Matrix::from_real_diag(&[1.0, -2.0, 0.5])).unwrap();
        for l in [1.0, -2.0, 0.5] {
            assert!(p.eval(Complex::new(l, 0.0)).norm() < 1e-14);
        }
    }
}
