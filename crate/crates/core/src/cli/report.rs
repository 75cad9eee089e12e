use serde::Serialize;
use serde_json::{Map, Value};

use super::format::MatrixFile;
use crate::dense::{Matrix, Tolerances};
use crate::triangle::StepRecord;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct EffectiveConfig {
    pub eq_tol: f64,
    pub rank_tol: f64,
    pub convergence_tol: f64,
    pub grid: usize,
}

impl EffectiveConfig {
    pub fn new(tol: &Tolerances, grid: usize) -> Self {
        Self {
            eq_tol: tol.eq_tol,
            rank_tol: tol.rank_tol,
            convergence_tol: tol.convergence_tol,
            grid,
        }
    }
}

/// Machine-readable outcome of one command. Field order is fixed by the
/// struct; `metrics` keys are sorted.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub config: EffectiveConfig,
    pub metrics: Map<String, Value>,
    pub steps: Vec<StepRecord>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl RunReport {
    pub fn new(command: Vec<String>, config: EffectiveConfig) -> Self {
        Self {
            command,
            config,
            metrics: Map::new(),
            steps: Vec::new(),
            verdict: String::new(),
            matrix: None,
            elapsed_ms: None,
        }
    }

    pub fn metric(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.metrics.insert(key.to_string(), value.into());
        self
    }

    pub fn step(&mut self, name: &str, residual: f64, threshold: f64) -> bool {
        let pass = residual <= threshold;
        self.steps.push(StepRecord {
            name: name.to_string(),
            residual,
            threshold,
            pass,
        });
        pass
    }

    pub fn attach_matrix(&mut self, m: &Matrix) {
        self.matrix = Some(MatrixFile::from(m));
    }

    pub fn all_steps_pass(&self) -> bool {
        self.steps.iter().all(|s| s.pass)
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
