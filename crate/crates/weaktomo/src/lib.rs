//! Weak-measurement state estimation for a single qubit, with state
//! recycling.
//!
//! A finite ensemble is measured in three stages: a weak σz measurement of
//! strength ε₁, a weak σx measurement of strength ε₂ on the *same* members
//! (weak pointers only mildly disturb the state, so every member is recycled),
//! and a final projective σy draw. Pointer readings inside a discard window
//! (−a, a) are rejected as ambiguous, but their members stay in the ensemble.
//! Stage frequencies invert to a Bloch-vector estimate either through exact
//! closed-form calibration constants or through the bare small-coupling
//! corrections; a Monte Carlo harness scores the scheme against equal-budget
//! projective tomography over panels of random states.
//!
//! The crate is organized as a library first; see the `examples/` directory
//! for one runnable program per capability and `src/main.rs` for the thin
//! `weaktomo` command-line front end (`simulate`, `sweep`, `score`,
//! `analytic-check`).
//!
//! - [`qubit`] — density matrices, Bloch geometry, Pauli expectations, the
//!   fidelity score, and random-state draws.
//! - [`mod@pointer`] — the Gaussian-pointer channel: reading densities,
//!   sampling, the selective (Kraus) update, and the nonselective e^{−ε/2}
//!   damping.
//! - [`analytic`] — erf/erfc and the closed-form stage probabilities with
//!   their calibration constants.
//! - [`pipeline`] — the three-stage scheme on an ensemble, estimators, and
//!   the projective baseline.
//! - [`harness`] — seeded, deterministic (ε, a, N) sweeps with win/loss
//!   scoring.
//! - [`check`] — quadrature and Monte Carlo oracle suites.
//! - [`quad`], [`rng`], [`report`], [`cli`] — supporting plumbing.
//!
//! ```
//! use weaktomo::{
//!     BlochVector, EstimatorMode, RandomStream, SchemeConfig,
//!     estimate_weak, fidelity_score, run_scheme_on_ensemble,
//! };
//!
//! let truth = BlochVector::new(0.3, -0.2, 0.5);
//! let cfg = SchemeConfig::symmetric(0.5, 0.4, 30, EstimatorMode::Calibrated).unwrap();
//! let mut rng = RandomStream::from_seed(7);
//! let tally = run_scheme_on_ensemble(&truth, &cfg, &mut rng).unwrap();
//! let estimate = estimate_weak(&tally, &cfg).unwrap();
//! assert!(fidelity_score(&truth, &estimate) <= 1.0);
//! ```

pub mod analytic;
pub mod check;
pub mod cli;
pub mod harness;
pub mod pipeline;
pub mod pointer;
pub mod quad;
pub mod qubit;
pub mod report;
pub mod rng;

pub use analytic::{
    calibration_x, calibration_y, calibration_z, discard_probability, erf, erfc, prob_x, prob_y,
    prob_z, AnalyticError, DiscardWidth, OutcomeTriple,
};
pub use harness::{
    evaluate_state, run_sweep, seed_substream, ExperimentPlan, HarnessError, StateEvaluation,
    SweepRow,
};
pub use pipeline::{
    baseline_partition, classify_reading, estimate_from_stage_fractions, estimate_weak,
    estimate_weak_with_fallback, run_projective_baseline, run_scheme_on_ensemble, Classification,
    EstimationError, EstimatorMode, PipelineError, SchemeConfig, SchemeTally, StageCounts,
    StageFractions,
};
pub use pointer::{
    kraus_update, nonselective_channel, reading_density, sample_reading, MeasurementStrength,
    PointerError, PointerReading, ReadingDensity,
};
pub use qubit::{
    fidelity_score, BlochVector, DensityMatrix, PauliAxis, QubitError, StateDistribution,
};
pub use rng::RandomStream;
