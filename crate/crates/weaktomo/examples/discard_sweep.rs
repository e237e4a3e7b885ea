//! Miniature of the headline experiment: sweep the discard width on a panel
//! of random states at a fixed moderate coupling and watch the win score
//! against projective tomography climb past 50%.
//!
//! The full-size version of this experiment (2000 states x 1000 runs) runs
//! through the command line:
//!
//! ```bash
//! weaktomo sweep --states 2000 --runs 1000 --ensembles 30 \
//!     --eps-grid 0.35 --a-grid 0,0.2,0.4,0.6,0.8 --estimator paper-naive
//! ```
//!
//! ```bash
//! cargo run --release --example discard_sweep
//! ```

use weaktomo::{run_sweep, EstimatorMode, ExperimentPlan, StateDistribution};

fn main() {
    let plan = ExperimentPlan {
        state_count: 400,
        runs_per_state: 150,
        ensemble_sizes: vec![30],
        epsilon_grid: vec![0.35],
        a_grid: vec![0.0, 0.2, 0.4, 0.6, 0.8],
        distribution: StateDistribution::BallUniform,
        master_seed: 11,
        estimator_mode: EstimatorMode::PaperNaive,
    };
    eprintln!(
        "sweeping {} states x {} runs at eps = {} on ensembles of {}...",
        plan.state_count, plan.runs_per_state, plan.epsilon_grid[0], plan.ensemble_sizes[0]
    );
    let rows = run_sweep(&plan, 0).expect("sweep runs");

    println!(
        "{:>5} | {:>10} {:>12} | {:>11} | {:>8}",
        "a", "fid. weak", "fid. proj.", "score", "discard"
    );
    for row in &rows {
        println!(
            "{:>5.1} | {:>10.4} {:>12.4} | {:>4}/{:<6} | {:>8.4}",
            row.a,
            row.mean_fidelity_weak,
            row.mean_fidelity_projective,
            row.score,
            row.states,
            row.discard_fraction_mean,
        );
    }
    let half = plan.state_count as u64 / 2;
    match rows.iter().find(|row| row.score > half) {
        Some(row) => println!("\nscore first exceeds 50% at a = {}", row.a),
        None => println!("\nscore stayed below 50% on this grid"),
    }
}
