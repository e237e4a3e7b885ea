//! Recycling pays off only for small ensembles: repeat the discard sweep at
//! N = 30 and N = 60 and compare win scores. Larger ensembles shrink the
//! statistical noise that recycling exploits, while the estimator bias stays,
//! so projective tomography pulls ahead.
//!
//! ```bash
//! cargo run --release --example ensemble_size_effect
//! ```

use weaktomo::{run_sweep, EstimatorMode, ExperimentPlan, StateDistribution};

fn main() {
    let plan = ExperimentPlan {
        state_count: 400,
        runs_per_state: 150,
        ensemble_sizes: vec![30, 60],
        epsilon_grid: vec![0.35],
        a_grid: vec![0.0, 0.2, 0.4, 0.6, 0.8],
        distribution: StateDistribution::BallUniform,
        master_seed: 11,
        estimator_mode: EstimatorMode::PaperNaive,
    };
    eprintln!(
        "sweeping {} states x {} runs at eps = {}, ensembles {:?}...",
        plan.state_count, plan.runs_per_state, plan.epsilon_grid[0], plan.ensemble_sizes
    );
    let rows = run_sweep(&plan, 0).expect("sweep runs");
    let (rows_30, rows_60) = rows.split_at(plan.a_grid.len());

    println!(
        "{:>5} | {:>12} | {:>12} | {:>6}",
        "a", "score N=30", "score N=60", "drop"
    );
    for (r30, r60) in rows_30.iter().zip(rows_60) {
        println!(
            "{:>5.1} | {:>6}/{:<5} | {:>6}/{:<5} | {:>6}",
            r30.a,
            r30.score,
            r30.states,
            r60.score,
            r60.states,
            r30.score as i64 - r60.score as i64,
        );
    }
    println!("\nwins out of {} states; higher is better for the weak scheme", plan.state_count);
}
