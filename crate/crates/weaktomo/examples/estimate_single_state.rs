//! Estimate one qubit state with the three-stage weak scheme and compare the
//! two frequency-inversion modes against the projective baseline.
//!
//! ```bash
//! cargo run --release --example estimate_single_state
//! ```

use weaktomo::{
    estimate_weak, fidelity_score, run_projective_baseline, run_scheme_on_ensemble, BlochVector,
    EstimatorMode, RandomStream, SchemeConfig,
};

fn main() {
    let truth = BlochVector::new(0.3, -0.2, 0.5);
    let ensemble = 100_000;

    for mode in [EstimatorMode::Calibrated, EstimatorMode::PaperNaive] {
        let cfg = SchemeConfig::symmetric(0.5, 0.4, ensemble, mode).expect("valid config");
        let mut rng = RandomStream::from_seed(7);
        let tally = run_scheme_on_ensemble(&truth, &cfg, &mut rng).expect("scheme runs");
        let estimate = estimate_weak(&tally, &cfg).expect("all stages invertible");

        println!("--- {mode:?} ---");
        println!(
            "stage z counts: +{} -{} discard {}",
            tally.z.plus, tally.z.minus, tally.z.discarded
        );
        println!(
            "stage x counts: +{} -{} discard {}",
            tally.x.plus, tally.x.minus, tally.x.discarded
        );
        println!("stage y counts: +{} -{}", tally.y.plus, tally.y.minus);
        println!(
            "weak estimate   ({:+.4}, {:+.4}, {:+.4})  fidelity {:.5}",
            estimate.x,
            estimate.y,
            estimate.z,
            fidelity_score(&truth, &estimate)
        );
    }

    let mut rng = RandomStream::from_seed(7);
    let baseline = run_projective_baseline(&truth, ensemble, &mut rng).expect("baseline runs");
    println!("--- projective baseline (same total budget) ---");
    println!(
        "estimate        ({:+.4}, {:+.4}, {:+.4})  fidelity {:.5}",
        baseline.x,
        baseline.y,
        baseline.z,
        fidelity_score(&truth, &baseline)
    );
    println!("true state      ({:+.4}, {:+.4}, {:+.4})", truth.x, truth.y, truth.z);
}
