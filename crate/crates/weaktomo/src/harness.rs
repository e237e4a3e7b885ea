//! Batch Monte Carlo experiments: random-state panels, (ε, a, N) sweeps,
//! mean-fidelity aggregation, and win/loss scores against the projective
//! baseline.
//!
//! Determinism contract: a sweep's output is a pure function of its
//! [`ExperimentPlan`]. The same state panel is reused for every grid cell,
//! every (cell, state, run) task derives its own random substream from the
//! master seed, and aggregation folds results in fixed task order — so worker
//! count and scheduling cannot perturb a single bit of the output.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pipeline::{
    estimate_weak_with_fallback, run_projective_baseline, run_scheme_on_ensemble, EstimatorMode,
    PipelineError, SchemeConfig,
};
use crate::qubit::{fidelity_score, BlochVector, StateDistribution};
use crate::rng::RandomStream;

/// Reserved cell index for drawing the state panel; sweep cells are numbered
/// from zero and never reach it.
pub const STATE_PANEL_CELL: u64 = u64::MAX;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("experiment plan invalid: {0}")]
    InvalidPlan(String),
    #[error("worker pool construction failed: {0}")]
    Pool(String),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

/// Full description of one batch experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    /// Number of random states in the panel (S).
    pub state_count: usize,
    /// Independent scheme/baseline run pairs per state and cell (R).
    pub runs_per_state: usize,
    /// Ensemble sizes N to sweep.
    pub ensemble_sizes: Vec<usize>,
    /// Coupling strengths ε to sweep (ε₁ = ε₂ = ε).
    pub epsilon_grid: Vec<f64>,
    /// Discard half-widths a to sweep.
    pub a_grid: Vec<f64>,
    /// How panel states are drawn.
    pub distribution: StateDistribution,
    /// Root of all random substreams.
    pub master_seed: u64,
    /// Frequency-inversion mode for the weak estimates.
    pub estimator_mode: EstimatorMode,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            state_count: 2000,
            runs_per_state: 1000,
            ensemble_sizes: vec![30, 60],
            epsilon_grid: default_epsilon_grid(),
            a_grid: vec![0.0, 0.2, 0.4, 0.6, 0.8],
            distribution: StateDistribution::BallUniform,
            master_seed: 1,
            estimator_mode: EstimatorMode::Calibrated,
        }
    }
}

/// 40 log-spaced couplings in [0.05, 5].
pub fn default_epsilon_grid() -> Vec<f64> {
    let (lo, hi) = (0.05f64.ln(), 5.0f64.ln());
    (0..40)
        .map(|i| (lo + (hi - lo) * i as f64 / 39.0).exp())
        .collect()
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let fail = |msg: String| Err(HarnessError::InvalidPlan(msg));
        if self.state_count == 0 {
            return fail("state_count must be positive".into());
        }
        if self.runs_per_state == 0 {
            return fail("runs_per_state must be positive".into());
        }
        if self.ensemble_sizes.is_empty() {
            return fail("ensemble_sizes must not be empty".into());
        }
        if let Some(n) = self.ensemble_sizes.iter().find(|&&n| n < 3) {
            return fail(format!("ensemble size {n} is below the minimum of 3"));
        }
        if self.epsilon_grid.is_empty() {
            return fail("epsilon_grid must not be empty".into());
        }
        if let Some(e) = self
            .epsilon_grid
            .iter()
            .find(|&&e| !(e.is_finite() && e > 0.0))
        {
            return fail(format!("epsilon value {e} must be finite and positive"));
        }
        if self.a_grid.is_empty() {
            return fail("a_grid must not be empty".into());
        }
        if let Some(a) = self.a_grid.iter().find(|&&a| !(a.is_finite() && a >= 0.0)) {
            return fail(format!("discard width {a} must be finite and non-negative"));
        }
        Ok(())
    }

    /// The sweep's grid cells in output row order: ensemble-major, then ε,
    /// then a.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &ensemble in &self.ensemble_sizes {
            for &epsilon in &self.epsilon_grid {
                for &a in &self.a_grid {
                    cells.push(Cell {
                        index: cells.len() as u64,
                        epsilon,
                        a,
                        ensemble,
                    });
                }
            }
        }
        cells
    }

    /// Draws the panel of S states shared by every grid cell. Each state has
    /// its own substream, so the panel is independent of evaluation order.
    pub fn state_panel(&self) -> Vec<BlochVector> {
        (0..self.state_count)
            .map(|i| {
                let mut rng = seed_substream(self.master_seed, STATE_PANEL_CELL, i as u64, 0);
                self.distribution.sample(&mut rng)
            })
            .collect()
    }
}

/// One (ε, a, N) grid cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub index: u64,
    pub epsilon: f64,
    pub a: f64,
    pub ensemble: usize,
}

impl Cell {
    fn config(&self, mode: EstimatorMode) -> Result<SchemeConfig, PipelineError> {
        SchemeConfig::symmetric(self.epsilon, self.a, self.ensemble, mode)
    }
}

/// Aggregate of one grid cell over the whole state panel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub a: f64,
    pub ensemble: usize,
    pub mean_fidelity_weak: f64,
    pub mean_fidelity_projective: f64,
    /// States whose weak mean fidelity strictly beats the projective one;
    /// ties count as losses.
    pub score: u64,
    pub states: usize,
    pub runs: usize,
    pub discard_fraction_mean: f64,
    pub failures: u64,
}

/// Per-state summary over R runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateEvaluation {
    pub mean_fidelity_weak: f64,
    pub mean_fidelity_projective: f64,
    pub mean_discard_fraction: f64,
    pub failed_stage_count: u64,
}

struct RunOutcome {
    fidelity_weak: f64,
    fidelity_projective: f64,
    discard_fraction: f64,
    failed_stages: u32,
}

/// One scheme run and one equal-budget baseline run on the same state.
fn run_pair(
    true_state: &BlochVector,
    cfg: &SchemeConfig,
    rng: &mut RandomStream,
) -> Result<RunOutcome, PipelineError> {
    let tally = run_scheme_on_ensemble(true_state, cfg, rng)?;
    let (estimate, failed_stages) = estimate_weak_with_fallback(&tally, cfg);
    let baseline = run_projective_baseline(true_state, cfg.ensemble_size, rng)?;
    let n = cfg.ensemble_size as f64;
    Ok(RunOutcome {
        fidelity_weak: fidelity_score(true_state, &estimate),
        fidelity_projective: fidelity_score(true_state, &baseline),
        discard_fraction: (tally.z.discarded + tally.x.discarded) as f64 / (2.0 * n),
        failed_stages,
    })
}

fn accumulate(
    true_state: &BlochVector,
    cfg: &SchemeConfig,
    runs: usize,
    mut stream_for_run: impl FnMut(usize) -> RandomStream,
) -> Result<StateEvaluation, PipelineError> {
    let mut weak = 0.0;
    let mut projective = 0.0;
    let mut discard = 0.0;
    let mut failures = 0u64;
    for run in 0..runs {
        let mut rng = stream_for_run(run);
        let outcome = run_pair(true_state, cfg, &mut rng)?;
        weak += outcome.fidelity_weak;
        projective += outcome.fidelity_projective;
        discard += outcome.discard_fraction;
        failures += u64::from(outcome.failed_stages);
    }
    let r = runs as f64;
    Ok(StateEvaluation {
        mean_fidelity_weak: weak / r,
        mean_fidelity_projective: projective / r,
        mean_discard_fraction: discard / r,
        failed_stage_count: failures,
    })
}

/// Mean fidelities of the weak scheme and the equal-budget projective
/// baseline over `runs` independent run pairs on one state, drawing all
/// randomness from `rng`. Estimation failures fall back to centroid
/// components and are counted, not dropped.
pub fn evaluate_state(
    true_state: &BlochVector,
    cfg: &SchemeConfig,
    runs: usize,
    rng: &mut RandomStream,
) -> Result<StateEvaluation, HarnessError> {
    if runs == 0 {
        return Err(HarnessError::InvalidPlan(
            "runs_per_state must be positive".into(),
        ));
    }
    // Each run gets a child stream seeded from the caller's stream, mirroring
    // the per-run substream layout of the sweep.
    Ok(accumulate(true_state, cfg, runs, |_| {
        RandomStream::from_seed(rng.next_u64())
    })?)
}

/// Derives the substream of one (cell, state, run) task. Identical inputs
/// yield identical streams; distinct inputs yield unrelated ones.
pub fn seed_substream(
    master_seed: u64,
    cell_index: u64,
    state_index: u64,
    run_index: u64,
) -> RandomStream {
    RandomStream::derived(master_seed, &[cell_index, state_index, run_index])
}

/// Runs the full sweep: every grid cell evaluates the same state panel, each
/// (cell, state) task runs R seeded run pairs, and rows aggregate in fixed
/// order. `workers` sets the thread count (0 picks the machine default) and
/// has no effect on the output bytes.
pub fn run_sweep(plan: &ExperimentPlan, workers: usize) -> Result<Vec<SweepRow>, HarnessError> {
    plan.validate()?;
    let states = plan.state_panel();
    let cells = plan.cells();
    let tasks: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..states.len()).map(move |s| (c, s)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let evaluations: Result<Vec<StateEvaluation>, PipelineError> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(cell_idx, state_idx)| {
                let cell = &cells[cell_idx];
                let cfg = cell.config(plan.estimator_mode)?;
                accumulate(
                    &states[state_idx],
                    &cfg,
                    plan.runs_per_state,
                    |run| {
                        seed_substream(
                            plan.master_seed,
                            cell.index,
                            state_idx as u64,
                            run as u64,
                        )
                    },
                )
            })
            .collect()
    });
    let evaluations = evaluations?;

    let mut rows = Vec::with_capacity(cells.len());
    for (cell_idx, cell) in cells.iter().enumerate() {
        let slice = &evaluations[cell_idx * states.len()..(cell_idx + 1) * states.len()];
        let mut weak = 0.0;
        let mut projective = 0.0;
        let mut discard = 0.0;
        let mut score = 0u64;
        let mut failures = 0u64;
        for eval in slice {
            weak += eval.mean_fidelity_weak;
            projective += eval.mean_fidelity_projective;
            discard += eval.mean_discard_fraction;
            failures += eval.failed_stage_count;
            if eval.mean_fidelity_weak > eval.mean_fidelity_projective {
                score += 1;
            }
        }
        let s = states.len() as f64;
        rows.push(SweepRow {
            epsilon: cell.epsilon,
            a: cell.a,
            ensemble: cell.ensemble,
            mean_fidelity_weak: weak / s,
            mean_fidelity_projective: projective / s,
            score,
            states: states.len(),
            runs: plan.runs_per_state,
            discard_fraction_mean: discard / s,
            failures,
        });
    }
    Ok(rows)
}
