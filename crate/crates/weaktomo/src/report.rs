//! Plot-ready result emission: fixed-format CSV rows and the JSON run
//! manifest that accompanies every output file.

use serde::Serialize;

use crate::harness::{ExperimentPlan, SweepRow};

/// Fixed numeric formatting: 17 significant digits, so re-runs diff byte for
/// byte and the values round-trip exactly.
pub fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}

pub const SWEEP_CSV_HEADER: &str = "epsilon,a,ensemble,mean_fidelity_weak,mean_fidelity_projective,score,states,runs,discard_fraction,failures";

pub const SCORE_CSV_HEADER: &str = "epsilon,a,ensemble,score,states";

/// One row per grid cell, in sweep order.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(128 * (rows.len() + 1));
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            format_float(row.epsilon),
            format_float(row.a),
            row.ensemble,
            format_float(row.mean_fidelity_weak),
            format_float(row.mean_fidelity_projective),
            row.score,
            row.states,
            row.runs,
            format_float(row.discard_fraction_mean),
            row.failures,
        ));
    }
    out
}

/// Score-only projection of the sweep output.
pub fn score_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(48 * (rows.len() + 1));
    out.push_str(SCORE_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_float(row.epsilon),
            format_float(row.a),
            row.ensemble,
            row.score,
            row.states,
        ));
    }
    out
}

/// Everything needed to reproduce an output file, plus bookkeeping that does
/// not affect the data bytes (timing, worker count).
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub workers: usize,
    pub duration_seconds: f64,
    pub failures_total: u64,
    pub plan: ExperimentPlan,
}

impl RunManifest {
    pub fn new(command: &str, workers: usize, plan: &ExperimentPlan) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            workers,
            duration_seconds: 0.0,
            failures_total: 0,
            plan: plan.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_fixed_width_17_significant_digits() {
        assert_eq!(format_float(0.5), "5.0000000000000000e-1");
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(format_float(0.1 + 0.2), "3.0000000000000004e-1");
        // Round-trips exactly.
        for v in [0.3, 1.0 / 3.0, 123.456e-7, 0.9999999999] {
            let back: f64 = format_float(v).parse().unwrap();
            assert_eq!(back, v);
        }
    }

    #[test]
    fn csv_headers_are_stable() {
        let rows = vec![SweepRow {
            epsilon: 0.5,
            a: 0.4,
            ensemble: 30,
            mean_fidelity_weak: 0.75,
            mean_fidelity_projective: 0.76,
            score: 12,
            states: 20,
            runs: 10,
            discard_fraction_mean: 0.125,
            failures: 0,
        }];
        let text = sweep_csv(&rows);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(SWEEP_CSV_HEADER));
        let row = lines.next().unwrap();
        assert_eq!(
            row,
            "5.0000000000000000e-1,4.0000000000000002e-1,30,7.5000000000000000e-1,\
             7.6000000000000001e-1,12,20,10,1.2500000000000000e-1,0"
        );

        let score = score_csv(&rows);
        assert_eq!(score.lines().next(), Some(SCORE_CSV_HEADER));
    }

    #[test]
    fn manifest_embeds_the_full_plan() {
        let plan = ExperimentPlan::default();
        let mut manifest = RunManifest::new("sweep", 4, &plan);
        manifest.duration_seconds = 1.5;
        let json = manifest.to_json();
        assert!(json.contains("\"master_seed\": 1"));
        assert!(json.contains("\"estimator_mode\": \"calibrated\""));
        assert!(json.contains("\"distribution\": \"ball\""));
        assert!(json.contains("\"workers\": 4"));
    }
}
