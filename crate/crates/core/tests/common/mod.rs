//! Test-only oracles and instance generators. Nothing here calls the
//! library's SVD or eigensolvers.

#![allow(dead_code)]

use rand::Rng;
use triangle_equality::dense::{ginibre_from_rng, seeded_rng};
use triangle_equality::{Complex, Matrix, Tolerances};

pub fn tol() -> Tolerances {
    Tolerances::default()
}

/// All roots of a monic polynomial (`coeffs[k]` multiplies `z^k`) by the
/// Durand–Kerner simultaneous iteration, polished with Newton steps.
pub fn polynomial_roots(coeffs: &[Complex]) -> Vec<Complex> {
    let n = coeffs.len() - 1;
    let eval = |z: Complex| coeffs.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c);
    let deriv = |z: Complex| {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, (k, &c)| acc * z + c * k as f64)
    };
    // Cauchy bound for the initial circle
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex::new(0.4, 0.9);
    let mut roots: Vec<Complex> = (0..n).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut denom = Complex::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex::new(1e-12, 0.0);
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let d = deriv(*r);
            if d.norm() > 0.0 {
                *r -= eval(*r) / d;
            }
        }
    }
    roots
}

fn inner(x: &[Complex], y: &[Complex]) -> Complex {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn vnorm(x: &[Complex]) -> f64 {
    inner(x, x).re.sqrt()
}

/// Brute-force existence test for a partial isometry `u` with `u·m = t`
/// column by column: orthonormalize the columns of `m` with modified
/// Gram–Schmidt while carrying the same combinations of the columns of `t`,
/// then check that the induced map is well defined (`u·m = t`) and
/// isometric on `ran m`.
pub struct TransferOracle {
    pub exists: bool,
    pub consistency: f64,
    pub isometry: f64,
}

pub fn transfer_oracle(source: &Matrix, target: &Matrix, abs_tol: f64) -> TransferOracle {
    assert_eq!(source.shape(), target.shape());
    let cols = source.cols();
    let scale = (0..cols).map(|j| vnorm(&source.column(j))).fold(0.0, f64::max).max(1e-300);
    let mut basis: Vec<Vec<Complex>> = Vec::new();
    let mut images: Vec<Vec<Complex>> = Vec::new();
    for j in 0..cols {
        let mut e = source.column(j);
        let mut img = target.column(j);
        for _ in 0..2 {
            for (b, ib) in basis.iter().zip(&images) {
                let c = inner(b, &e);
                for (ei, bi) in e.iter_mut().zip(b) {
                    *ei -= c * bi;
                }
                for (ii, bi) in img.iter_mut().zip(ib) {
                    *ii -= c * bi;
                }
            }
        }
        let nrm = vnorm(&e);
        if nrm > 1e-9 * scale {
            basis.push(e.iter().map(|z| z / nrm).collect());
            images.push(img.iter().map(|z| z / nrm).collect());
        }
    }
    // Gram of the images must be the identity
    let mut isometry: f64 = 0.0;
    for i in 0..images.len() {
        for j in 0..images.len() {
            let g = inner(&images[i], &images[j]);
            let expect = if i == j { 1.0 } else { 0.0 };
            isometry = isometry.max((g - expect).norm());
        }
    }
    // u applied to each source column must reproduce the target column
    let mut consistency: f64 = 0.0;
    for j in 0..cols {
        let col = source.column(j);
        let mut mapped = vec![Complex::new(0.0, 0.0); source.rows()];
        for (b, ib) in basis.iter().zip(&images) {
            let c = inner(b, &col);
            for (mi, bi) in mapped.iter_mut().zip(ib) {
                *mi += c * bi;
            }
        }
        let t = target.column(j);
        let diff: Vec<Complex> = mapped.iter().zip(&t).map(|(a, b)| a - b).collect();
        consistency = consistency.max(vnorm(&diff));
    }
    TransferOracle {
        exists: isometry <= 1e-6 && consistency <= abs_tol,
        consistency,
        isometry,
    }
}

/// Ginibre `rows × cols` draw from a seed.
pub fn ginibre_rect(rows: usize, cols: usize, seed: u64) -> Matrix {
    ginibre_from_rng(rows, cols, &mut seeded_rng(seed))
}

/// Random PSD `g*g` of rank at most `rank`.
pub fn random_psd(n: usize, rank: usize, seed: u64) -> Matrix {
    let g = ginibre_rect(rank, n, seed);
    (&g.adjoint() * &g).hermitian_part()
}

/// Largest-modulus entry difference, handy for exact small cases.
pub fn max_entry_gap(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).max_abs()
}

pub fn uniform(seed: u64, lo: f64, hi: f64) -> f64 {
    seeded_rng(seed).random_range(lo..hi)
}
