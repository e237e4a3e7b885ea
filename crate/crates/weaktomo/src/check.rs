//! Self-check suites behind the `analytic-check` command: the closed-form
//! probabilities against adaptive-quadrature oracles, the channel integrals
//! (completeness, overlap damping), Monte Carlo stage frequencies against the
//! formulas, and the report on the alternative discard-strength reading of
//! the second stage.

use std::f64::consts::TAU;

use crate::analytic::{discard_probability, prob_x, prob_y, prob_z, DiscardWidth};
use crate::pipeline::{run_scheme_on_ensemble, EstimatorMode, PipelineError, SchemeConfig};
use crate::pointer::{nonselective_channel, MeasurementStrength};
use crate::qubit::{BlochVector, DensityMatrix, PauliAxis};
use crate::quad;
use crate::rng::RandomStream;

/// Outcome of one checked quantity.
#[derive(Debug, Clone)]
pub struct CheckItem {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub worst_case: String,
}

impl CheckItem {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

impl std::fmt::Display for CheckItem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:32} max deviation {:.3e} (tolerance {:.0e}) {} [{}]",
            self.name,
            self.max_deviation,
            self.tolerance,
            if self.passed() { "ok" } else { "FAIL" },
            self.worst_case,
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(CheckItem::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|item| !item.passed())
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for item in &self.items {
            writeln!(f, "{item}")?;
        }
        Ok(())
    }
}

struct Tracker {
    name: &'static str,
    tolerance: f64,
    max_deviation: f64,
    worst_case: String,
}

impl Tracker {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Tracker {
            name,
            tolerance,
            max_deviation: 0.0,
            worst_case: String::from("-"),
        }
    }

    fn update(&mut self, deviation: f64, case: impl Fn() -> String) {
        if deviation > self.max_deviation {
            self.max_deviation = deviation;
            self.worst_case = case();
        }
    }

    fn finish(self) -> CheckItem {
        CheckItem {
            name: self.name.to_string(),
            max_deviation: self.max_deviation,
            tolerance: self.tolerance,
            worst_case: self.worst_case,
        }
    }
}

/// Integrates the two-Gaussian reading mixture with component weight
/// (1 ± c)/2 over (a, ∞), (−∞, −a) and (−a, a).
fn mixture_masses(c: f64, eps: f64, a: f64) -> (f64, f64, f64) {
    let pdf = move |q: f64| {
        let norm = (eps / TAU).sqrt();
        0.5 * (1.0 + c) * norm * (-0.5 * eps * (q - 1.0) * (q - 1.0)).exp()
            + 0.5 * (1.0 - c) * norm * (-0.5 * eps * (q + 1.0) * (q + 1.0)).exp()
    };
    let reach = 1.0 + a + 14.0 / eps.sqrt();
    (
        quad::integrate(&pdf, a, reach, 1e-12),
        quad::integrate(&pdf, -reach, -a, 1e-12),
        quad::integrate(&pdf, -a, a, 1e-12),
    )
}

/// Compares the closed-form stage probabilities, the channel damping factor,
/// and the Kraus completeness integral against adaptive quadrature on a
/// random parameter panel (|c| ≤ 1, ε ∈ [0.05, 10], a ∈ [0, 1]).
pub fn quadrature_suite(points: usize, seed: u64) -> CheckReport {
    let mut rng = RandomStream::derived(seed, &[0]);
    let mut z_dev = Tracker::new("prob_z vs quadrature", 1e-9);
    let mut x_dev = Tracker::new("prob_x vs two-stage oracle", 1e-9);
    let mut y_dev = Tracker::new("prob_y vs channel oracle", 1e-9);
    let mut norm_dev = Tracker::new("mixture normalization", 1e-10);
    let mut overlap_dev = Tracker::new("nonselective damping factor", 1e-9);
    let mut complete_dev = Tracker::new("kraus completeness integral", 1e-9);

    for _ in 0..points {
        let eps1 = 0.05 + 9.95 * rng.uniform();
        let eps2 = 0.05 + 9.95 * rng.uniform();
        let a = rng.uniform();
        let c = rng.uniform_symmetric();
        let s1 = MeasurementStrength::new(eps1).expect("positive strength");
        let s2 = MeasurementStrength::new(eps2).expect("positive strength");
        let w = DiscardWidth::new(a).expect("non-negative width");
        let case = || format!("c={c:.4} eps1={eps1:.4} eps2={eps2:.4} a={a:.4}");

        // First stage against the raw mixture.
        let t = prob_z(c, s1, w).expect("in-range component");
        let (qp, qm, qd) = mixture_masses(c, eps1, a);
        z_dev.update((t.p_plus() - qp).abs(), case);
        z_dev.update((t.p_minus() - qm).abs(), case);
        z_dev.update((t.p_discard() - qd).abs(), case);
        norm_dev.update((qp + qm + qd - 1.0).abs(), case);

        // Second stage: run the actual nonselective first stage, then the
        // mixture of the damped component.
        let rho = DensityMatrix::from_bloch(&BlochVector::new(c, 0.0, 0.0))
            .expect("component is inside the ball");
        let damped = nonselective_channel(&rho, PauliAxis::Z, s1).expectation(PauliAxis::X);
        let t = prob_x(c, s1, s2, w).expect("in-range component");
        let (qp, qm, qd) = mixture_masses(damped, eps2, a);
        x_dev.update((t.p_plus() - qp).abs(), case);
        x_dev.update((t.p_minus() - qm).abs(), case);
        x_dev.update((t.p_discard() - qd).abs(), case);

        // Final projective stage: two nonselective channels, then Born rule.
        let rho = DensityMatrix::from_bloch(&BlochVector::new(0.0, c, 0.0))
            .expect("component is inside the ball");
        let after = nonselective_channel(
            &nonselective_channel(&rho, PauliAxis::Z, s1),
            PauliAxis::X,
            s2,
        );
        let expected_plus = 0.5 * (1.0 + after.expectation(PauliAxis::Y));
        let (p, m) = prob_y(c, s1, s2).expect("in-range component");
        y_dev.update((p - expected_plus).abs(), case);
        y_dev.update((m - (1.0 - expected_plus)).abs(), case);

        // Channel integrals at this ε₁.
        let eps = eps1;
        let case_eps = || format!("eps={eps:.4}");
        let overlap = quad::integrate(
            &|q: f64| {
                (eps / TAU).sqrt()
                    * (-0.25 * eps * (q - 1.0) * (q - 1.0)).exp()
                    * (-0.25 * eps * (q + 1.0) * (q + 1.0)).exp()
            },
            -(14.0 / eps.sqrt()),
            14.0 / eps.sqrt(),
            1e-12,
        );
        overlap_dev.update((overlap - (-0.5 * eps).exp()).abs(), case_eps);
        for center in [1.0, -1.0] {
            let mass = quad::integrate(
                &|q: f64| {
                    let amp = (-0.25 * eps * (q - center) * (q - center)).exp();
                    (eps / TAU).sqrt() * amp * amp
                },
                -(1.0 + 16.0 / eps.sqrt()),
                1.0 + 16.0 / eps.sqrt(),
                1e-12,
            );
            complete_dev.update((mass - 1.0).abs(), case_eps);
        }
    }

    CheckReport {
        items: vec![
            z_dev.finish(),
            x_dev.finish(),
            y_dev.finish(),
            norm_dev.finish(),
            overlap_dev.finish(),
            complete_dev.finish(),
        ],
    }
}

/// Runs the scheme once on a large ensemble and compares every stage
/// frequency with its closed-form probability, in multinomial standard
/// deviations (3σ verdicts).
pub fn mc_suite(samples: usize, seed: u64) -> Result<CheckReport, PipelineError> {
    let truth = BlochVector::new(0.3, -0.2, 0.5);
    let cfg = SchemeConfig::symmetric(0.5, 0.4, samples, EstimatorMode::Calibrated)?;
    let mut rng = RandomStream::derived(seed, &[1]);
    let tally = run_scheme_on_ensemble(&truth, &cfg, &mut rng)?;

    let tz = prob_z(truth.z, cfg.eps1, cfg.discard)?;
    let tx = prob_x(truth.x, cfg.eps1, cfg.eps2, cfg.discard)?;
    let (yp, ym) = prob_y(truth.y, cfg.eps1, cfg.eps2)?;

    let n = samples as f64;
    let sigmas = |count: u64, p: f64| {
        let sigma = (n * p * (1.0 - p)).sqrt();
        (count as f64 - n * p).abs() / sigma
    };
    let item = |name: &str, count: u64, p: f64| CheckItem {
        name: name.to_string(),
        max_deviation: sigmas(count, p),
        tolerance: 3.0,
        worst_case: format!(
            "observed {:.6}, expected {:.6}",
            count as f64 / n,
            p
        ),
    };

    Ok(CheckReport {
        items: vec![
            item("mc prob_z[+1] (sigma units)", tally.z.plus, tz.p_plus()),
            item("mc prob_z[-1] (sigma units)", tally.z.minus, tz.p_minus()),
            item("mc prob_z[discard] (sigma units)", tally.z.discarded, tz.p_discard()),
            item("mc prob_x[+1] (sigma units)", tally.x.plus, tx.p_plus()),
            item("mc prob_x[-1] (sigma units)", tally.x.minus, tx.p_minus()),
            item("mc prob_x[discard] (sigma units)", tally.x.discarded, tx.p_discard()),
            item("mc prob_y[+1] (sigma units)", tally.y.plus, yp),
            item("mc prob_y[-1] (sigma units)", tally.y.minus, ym),
        ],
    })
}

/// Quantifies the alternative reading of the second-stage discard mass in
/// which the window is governed by the first stage's strength ε₁ instead of
/// ε₂: reports the direct deviation between the two masses and the defect it
/// would leave in the outcome normalization. Informational, not a pass/fail
/// gate.
pub fn discard_variant_report(points: usize, seed: u64) -> CheckReport {
    let mut rng = RandomStream::derived(seed, &[2]);
    let mut gap = Tracker::new("discard_x: eps1 vs eps2 variant", f64::INFINITY);
    let mut defect = Tracker::new("eps1-variant normalization defect", f64::INFINITY);
    for _ in 0..points {
        let eps1 = 0.05 + 9.95 * rng.uniform();
        let eps2 = 0.05 + 9.95 * rng.uniform();
        let a = rng.uniform();
        let c = rng.uniform_symmetric();
        let s1 = MeasurementStrength::new(eps1).expect("positive strength");
        let s2 = MeasurementStrength::new(eps2).expect("positive strength");
        let w = DiscardWidth::new(a).expect("non-negative width");
        let case = || format!("c={c:.4} eps1={eps1:.4} eps2={eps2:.4} a={a:.4}");

        let implemented = discard_probability(s2, w);
        let variant = discard_probability(s1, w);
        gap.update((implemented - variant).abs(), case);

        let t = prob_x(c, s1, s2, w).expect("in-range component");
        defect.update((t.p_plus() + t.p_minus() + variant - 1.0).abs(), case);
    }
    CheckReport {
        items: vec![gap.finish(), defect.finish()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_suite_passes_on_a_small_panel() {
        let report = quadrature_suite(50, 123);
        assert!(report.passed(), "{report}");
        assert_eq!(report.items.len(), 6);
    }

    #[test]
    fn mc_suite_passes_at_moderate_sample_count() {
        let report = mc_suite(200_000, 3).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn variant_report_shows_a_real_gap() {
        let report = discard_variant_report(200, 7);
        // The two readings genuinely differ; the gap is macroscopic.
        assert!(report.items[0].max_deviation > 0.01);
        // And the alternative breaks normalization by the same order.
        assert!(report.items[1].max_deviation > 0.01);
        // Informational items never fail.
        assert!(report.passed());
    }
}
