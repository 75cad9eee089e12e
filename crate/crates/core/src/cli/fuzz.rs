//! Seeded instance populations. Trials run in parallel and are merged in
//! trial order, so the report depends only on the flags.

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;

use super::{verdict, CliError, Context, EXIT_NEGATIVE, EXIT_OK};
use crate::dense::{random_ginibre, seeded_rng, Matrix, Tolerances};
use crate::error::Result;
use crate::spectral::{operator_norm, random_unitary};
use crate::triangle::{
    extract_common_isometry, make_pair_spec, make_projection_counterexample,
    synthesize_equality_pair, triangle_defect,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuzzMode {
    /// Pairs built from a common isometry: equality must hold and the
    /// isometry must be recovered.
    Equality,
    /// Unitarily rotated projection/subprojection pairs: equality must fail
    /// with defect 2 and no common isometry.
    Counterexample,
    /// Equality pairs with a small perturbation of `y`; only finiteness is
    /// required, the statistics are the point.
    Perturbed,
}

impl FuzzMode {
    pub fn name(self) -> &'static str {
        match self {
            FuzzMode::Equality => "equality",
            FuzzMode::Counterexample => "counterexample",
            FuzzMode::Perturbed => "perturbed",
        }
    }
}

const COUNTEREXAMPLE_DEFECT: f64 = 2.0;
const COUNTEREXAMPLE_RESIDUAL_FLOOR: f64 = 0.9;

fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed ^ (trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

#[derive(Debug, Clone, Copy, Default)]
struct Trial {
    relative_defect: f64,
    defect: f64,
    residual_x: f64,
    residual_y: f64,
    isometry_defect: f64,
    ok: bool,
}

fn equality_trial(n: usize, seed: u64, tol: &Tolerances) -> Result<Trial> {
    let mut rng = seeded_rng(seed);
    let rank = rng.random_range(1..=n);
    let spec = make_pair_spec(n, rank, seed, tol)?;
    let (x, y) = synthesize_equality_pair(&spec, tol)?;
    let r = triangle_defect(&x, &y, tol)?;
    let e = extract_common_isometry(&x, &y, tol)?;
    Ok(Trial {
        relative_defect: r.defect / r.scale,
        defect: r.defect,
        residual_x: e.residual_x,
        residual_y: e.residual_y,
        isometry_defect: e.isometry_defect,
        ok: r.holds && e.accepted(tol) && e.isometry_defect <= tol.eq_tol,
    })
}

fn counterexample_trial(n: usize, seed: u64, tol: &Tolerances) -> Result<Trial> {
    let mut rng = seeded_rng(seed);
    let rank_p = rng.random_range(2..=n);
    let rank_q = rng.random_range(1..rank_p);
    let (p, q) = make_projection_counterexample(n, rank_p, rank_q)?;
    let u = random_unitary(n, seed, tol)?;
    let rotate = |m: &Matrix| &(&u * m) * &u.adjoint();
    let (x, y) = (rotate(&p), rotate(&q));
    let r = triangle_defect(&x, &y, tol)?;
    let e = extract_common_isometry(&x, &y, tol)?;
    Ok(Trial {
        relative_defect: r.defect / r.scale,
        defect: r.defect,
        residual_x: e.residual_x,
        residual_y: e.residual_y,
        isometry_defect: e.isometry_defect,
        ok: !r.holds
            && r.defect >= COUNTEREXAMPLE_DEFECT - tol.eq_tol
            && e.residual_y >= COUNTEREXAMPLE_RESIDUAL_FLOOR,
    })
}

fn perturbed_trial(n: usize, seed: u64, epsilon: f64, tol: &Tolerances) -> Result<Trial> {
    let mut rng = seeded_rng(seed);
    let rank = rng.random_range(1..=n);
    let spec = make_pair_spec(n, rank, seed, tol)?;
    let (x, y) = synthesize_equality_pair(&spec, tol)?;
    let g = random_ginibre(n, seed.rotate_left(17));
    let size = epsilon * operator_norm(&x)?.max(operator_norm(&y)?).max(1.0);
    let y = &y + &g.scale_real(size / operator_norm(&g)?);
    let r = triangle_defect(&x, &y, tol)?;
    let e = extract_common_isometry(&x, &y, tol)?;
    let values = [r.defect, e.residual_x, e.residual_y, e.isometry_defect];
    Ok(Trial {
        relative_defect: r.defect / r.scale,
        defect: r.defect,
        residual_x: e.residual_x,
        residual_y: e.residual_y,
        isometry_defect: e.isometry_defect,
        ok: values.iter().all(|v| v.is_finite()),
    })
}

pub(super) fn cmd_fuzz(
    ctx: &Context,
    n: usize,
    trials: usize,
    seed: u64,
    mode: FuzzMode,
    epsilon: f64,
    out: &mut dyn Write,
) -> std::result::Result<i32, CliError> {
    if !(2..=64).contains(&n) {
        return Err(CliError::Usage(format!("--n must be in [2, 64], got {n}")));
    }
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(CliError::Usage(format!("--epsilon must be positive, got {epsilon}")));
    }
    let tol = ctx.tol;
    let results: Vec<Result<Trial>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = trial_seed(seed, t);
            match mode {
                FuzzMode::Equality => equality_trial(n, s, &tol),
                FuzzMode::Counterexample => counterexample_trial(n, s, &tol),
                FuzzMode::Perturbed => perturbed_trial(n, s, epsilon, &tol),
            }
        })
        .collect();

    let mut failed = Vec::new();
    let mut trials_ok = Vec::with_capacity(trials);
    for (t, r) in results.into_iter().enumerate() {
        let trial = r?;
        if !trial.ok {
            failed.push(t);
        }
        trials_ok.push(trial);
    }
    let max = |f: fn(&Trial) -> f64| trials_ok.iter().map(f).fold(0.0, f64::max);
    let min = |f: fn(&Trial) -> f64| trials_ok.iter().map(f).fold(f64::INFINITY, f64::min);
    let max_residual = max(|t| t.residual_x.max(t.residual_y));

    let mut report = ctx.report();
    report
        .metric("failed_trials", failed.clone())
        .metric("max_defect", max(|t| t.defect))
        .metric("max_isometry_defect", max(|t| t.isometry_defect))
        .metric("max_relative_defect", max(|t| t.relative_defect))
        .metric("max_residual", max_residual)
        .metric("min_defect", min(|t| t.defect))
        .metric("min_residual_y", min(|t| t.residual_y))
        .metric("mode", mode.name())
        .metric("n", n)
        .metric("seed", seed)
        .metric("trials", trials);
    if mode == FuzzMode::Perturbed {
        report
            .metric("epsilon", epsilon)
            .metric("max_residual_per_defect", max(|t| {
                let r = t.residual_x.max(t.residual_y);
                if t.relative_defect > 0.0 { r / t.relative_defect } else { 0.0 }
            }));
    }
    report.step("failed_trials", failed.len() as f64, 0.0);
    let ok = failed.is_empty();
    report.verdict = verdict(ok);
    ctx.emit(report, out)?;
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}
