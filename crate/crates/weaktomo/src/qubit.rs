//! Exact 2×2 qubit algebra: density matrices, Bloch coordinates, Pauli
//! observables, the squared-distance fidelity score, and random-state draws.
//!
//! A qubit state is a point of the closed unit ball via ρ = (I + n⃗·σ⃗)/2.
//! Pure states sit on the surface, mixed states inside. Estimated Bloch
//! vectors are *not* confined to the ball: estimators may step outside, and
//! the fidelity score remains well defined there.

use num_complex::Complex64;
use thiserror::Error;

use crate::rng::RandomStream;

/// Tolerance on Hermiticity and unit trace at construction.
pub const MATRIX_TOL: f64 = 1e-12;
/// Absolute tolerance on eigenvalue positivity at construction.
pub const PSD_TOL: f64 = 1e-12;
/// Admissible overshoot of the Bloch norm for physical states.
pub const BLOCH_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QubitError {
    #[error("Bloch vector norm {norm} exceeds 1 + 1e-9 (unphysical point)")]
    UnphysicalBloch { norm: f64 },
    #[error("matrix is not Hermitian within 1e-12")]
    NotHermitian,
    #[error("matrix trace {trace} differs from 1 by more than 1e-12")]
    TraceNotOne { trace: f64 },
    #[error("matrix eigenvalue {eigenvalue} is below -1e-12 (not positive semidefinite)")]
    NotPositiveSemidefinite { eigenvalue: f64 },
}

/// One of the three Pauli observables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];
}

impl std::fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PauliAxis::X => write!(f, "x"),
            PauliAxis::Y => write!(f, "y"),
            PauliAxis::Z => write!(f, "z"),
        }
    }
}

/// A point (x, y, z) of Bloch space; see the module docs for the ball rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ZERO: BlochVector = BlochVector {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Whether the point lies inside the closed unit ball (within tolerance).
    pub fn is_physical(&self) -> bool {
        self.norm() <= 1.0 + BLOCH_NORM_TOL
    }

    pub fn component(&self, axis: PauliAxis) -> f64 {
        match axis {
            PauliAxis::X => self.x,
            PauliAxis::Y => self.y,
            PauliAxis::Z => self.z,
        }
    }

    /// Radially projects the point onto the unit ball. Optional
    /// post-processing only; estimators leave their output unclamped.
    pub fn clamped_to_ball(self) -> Self {
        let norm = self.norm();
        if norm <= 1.0 {
            self
        } else {
            BlochVector::new(self.x / norm, self.y / norm, self.z / norm)
        }
    }
}

/// Fidelity score between a true and an estimated Bloch point:
/// 1 − [(x−x̂)² + (y−ŷ)² + (z−ẑ)²]. Equals 1 iff the points coincide and may
/// be negative for estimates far outside the ball.
pub fn fidelity_score(a: &BlochVector, b: &BlochVector) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    let dz = a.z - b.z;
    1.0 - (dx * dx + dy * dy + dz * dz)
}

/// How random states are drawn for panels and sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum StateDistribution {
    /// Uniform over the solid unit ball (pure and mixed states).
    #[serde(rename = "ball")]
    BallUniform,
    /// Uniform over the unit sphere surface (pure states only).
    #[serde(rename = "surface")]
    SurfaceUniform,
}

impl StateDistribution {
    pub fn sample(self, rng: &mut RandomStream) -> BlochVector {
        match self {
            StateDistribution::BallUniform => loop {
                let x = rng.uniform_symmetric();
                let y = rng.uniform_symmetric();
                let z = rng.uniform_symmetric();
                if x * x + y * y + z * z <= 1.0 {
                    return BlochVector::new(x, y, z);
                }
            },
            // Marsaglia (1972): algebraically unit-norm surface points.
            StateDistribution::SurfaceUniform => loop {
                let u = rng.uniform_symmetric();
                let v = rng.uniform_symmetric();
                let s = u * u + v * v;
                if s < 1.0 {
                    let f = 2.0 * (1.0 - s).sqrt();
                    return BlochVector::new(u * f, v * f, 1.0 - 2.0 * s);
                }
            },
        }
    }
}

impl std::str::FromStr for StateDistribution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ball" => Ok(StateDistribution::BallUniform),
            "surface" => Ok(StateDistribution::SurfaceUniform),
            other => Err(format!(
                "unknown distribution '{other}' (expected 'ball' or 'surface')"
            )),
        }
    }
}

/// A 2×2 complex density matrix: Hermitian, unit trace, positive
/// semidefinite. Constructors validate all three invariants and reject
/// violations instead of repairing them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    entries: [[Complex64; 2]; 2],
}

impl DensityMatrix {
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self, QubitError> {
        let [[a, b], [c, d]] = entries;
        if (b - c.conj()).norm() > MATRIX_TOL || a.im.abs() > MATRIX_TOL || d.im.abs() > MATRIX_TOL
        {
            return Err(QubitError::NotHermitian);
        }
        let trace = a.re + d.re;
        if (trace - 1.0).abs() > MATRIX_TOL {
            return Err(QubitError::TraceNotOne { trace });
        }
        let rho = DensityMatrix { entries };
        let (lo, _) = rho.eigenvalues();
        if lo < -PSD_TOL {
            return Err(QubitError::NotPositiveSemidefinite { eigenvalue: lo });
        }
        Ok(rho)
    }

    /// ρ = (I + n⃗·σ⃗)/2 for a point of the Bloch ball.
    pub fn from_bloch(b: &BlochVector) -> Result<Self, QubitError> {
        let norm = b.norm();
        if norm > 1.0 + BLOCH_NORM_TOL {
            return Err(QubitError::UnphysicalBloch { norm });
        }
        Ok(Self::from_entries_unchecked([
            [
                Complex64::new(0.5 * (1.0 + b.z), 0.0),
                Complex64::new(0.5 * b.x, -0.5 * b.y),
            ],
            [
                Complex64::new(0.5 * b.x, 0.5 * b.y),
                Complex64::new(0.5 * (1.0 - b.z), 0.0),
            ],
        ]))
    }

    pub fn maximally_mixed() -> Self {
        Self::from_bloch(&BlochVector::ZERO).expect("center of the ball is physical")
    }

    /// Internal fast path for matrices produced by exact formulas. Invariants
    /// hold by construction; checked only under debug assertions. The PSD
    /// floor here is the Bloch-ball tolerance rather than the strict 1e-12:
    /// a vector of norm 1 + 1e-9 legitimately carries an eigenvalue -5e-10.
    pub(crate) fn from_entries_unchecked(entries: [[Complex64; 2]; 2]) -> Self {
        let rho = DensityMatrix { entries };
        debug_assert!(
            {
                let [[a, b], [c, d]] = entries;
                let (lo, _) = rho.eigenvalues();
                (b - c.conj()).norm() <= MATRIX_TOL
                    && a.im.abs() <= MATRIX_TOL
                    && d.im.abs() <= MATRIX_TOL
                    && (a.re + d.re - 1.0).abs() <= MATRIX_TOL
                    && lo >= -BLOCH_NORM_TOL
            },
            "internal density matrix violates invariants: {entries:?}"
        );
        rho
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.entries
    }

    /// (⟨σx⟩, ⟨σy⟩, ⟨σz⟩); exact inverse of [`DensityMatrix::from_bloch`].
    pub fn bloch_vector(&self) -> BlochVector {
        BlochVector::new(
            2.0 * self.entries[1][0].re,
            2.0 * self.entries[1][0].im,
            self.entries[0][0].re - self.entries[1][1].re,
        )
    }

    /// Tr(ρ σ_axis); always in [−1, 1] for a valid state.
    pub fn expectation(&self, axis: PauliAxis) -> f64 {
        match axis {
            PauliAxis::X => 2.0 * self.entries[1][0].re,
            PauliAxis::Y => 2.0 * self.entries[1][0].im,
            PauliAxis::Z => self.entries[0][0].re - self.entries[1][1].re,
        }
    }

    /// Eigenvalues (λ₋, λ₊); for a state these are (1 ∓ |n⃗|)/2.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let half_trace = 0.5 * (self.entries[0][0].re + self.entries[1][1].re);
        let half_gap = 0.5 * (self.entries[0][0].re - self.entries[1][1].re);
        let radius = (half_gap * half_gap + self.entries[0][1].norm_sqr()).sqrt();
        (half_trace - radius, half_trace + radius)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bloch_to_density_eigenstates() {
        let up = DensityMatrix::from_bloch(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(up.entry(0, 0), c(1.0, 0.0));
        assert_eq!(up.entry(1, 1), c(0.0, 0.0));
        assert_eq!(up.entry(0, 1), c(0.0, 0.0));

        let mixed = DensityMatrix::from_bloch(&BlochVector::ZERO).unwrap();
        assert_eq!(mixed.entry(0, 0), c(0.5, 0.0));
        assert_eq!(mixed.entry(1, 1), c(0.5, 0.0));

        let plus = DensityMatrix::from_bloch(&BlochVector::new(1.0, 0.0, 0.0)).unwrap();
        for row in 0..2 {
            for col in 0..2 {
                assert_eq!(plus.entry(row, col), c(0.5, 0.0));
            }
        }
    }

    #[test]
    fn bloch_to_density_rejects_outside_ball() {
        let err = DensityMatrix::from_bloch(&BlochVector::new(0.0, 0.0, 2.0)).unwrap_err();
        assert!(matches!(err, QubitError::UnphysicalBloch { .. }));
        // Just inside the tolerance band is accepted.
        assert!(DensityMatrix::from_bloch(&BlochVector::new(1.0 + 0.5e-9, 0.0, 0.0)).is_ok());
    }

    #[test]
    fn density_to_bloch_round_trip_examples() {
        let up = DensityMatrix::new([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        assert_eq!(up.bloch_vector(), BlochVector::new(0.0, 0.0, 1.0));

        let b = BlochVector::new(0.3, -0.2, 0.5);
        let back = DensityMatrix::from_bloch(&b).unwrap().bloch_vector();
        assert!((back.x - b.x).abs() <= 1e-12);
        assert!((back.y - b.y).abs() <= 1e-12);
        assert!((back.z - b.z).abs() <= 1e-12);

        assert_eq!(
            DensityMatrix::maximally_mixed().bloch_vector(),
            BlochVector::ZERO
        );
    }

    #[test]
    fn expectation_examples() {
        let up = DensityMatrix::from_bloch(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(up.expectation(PauliAxis::Z), 1.0);
        assert_eq!(DensityMatrix::maximally_mixed().expectation(PauliAxis::X), 0.0);
        let rho = DensityMatrix::from_bloch(&BlochVector::new(0.3, -0.2, 0.5)).unwrap();
        assert!((rho.expectation(PauliAxis::Y) + 0.2).abs() <= 1e-15);
    }

    #[test]
    fn construction_rejects_invalid_matrices() {
        // Not Hermitian.
        assert!(matches!(
            DensityMatrix::new([[c(0.5, 0.0), c(0.1, 0.0)], [c(0.3, 0.0), c(0.5, 0.0)]]),
            Err(QubitError::NotHermitian)
        ));
        // Trace off.
        assert!(matches!(
            DensityMatrix::new([[c(0.6, 0.0), c(0.0, 0.0)], [c(0.5, 0.0), c(0.5, 0.0)]]),
            Err(QubitError::NotHermitian) | Err(QubitError::TraceNotOne { .. })
        ));
        // Hermitian, unit trace, but indefinite.
        assert!(matches!(
            DensityMatrix::new([[c(0.5, 0.0), c(0.6, 0.0)], [c(0.6, 0.0), c(0.5, 0.0)]]),
            Err(QubitError::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn fidelity_score_examples() {
        let a = BlochVector::new(0.3, -0.2, 0.5);
        assert_eq!(fidelity_score(&a, &a), 1.0);
        assert_eq!(
            fidelity_score(&BlochVector::new(1.0, 0.0, 0.0), &BlochVector::ZERO),
            0.0
        );
        assert_eq!(
            fidelity_score(
                &BlochVector::new(0.0, 0.0, 1.0),
                &BlochVector::new(0.0, 0.0, -1.0)
            ),
            -3.0
        );
    }

    #[test]
    fn fidelity_score_symmetric_and_rotation_invariant() {
        let mut rng = RandomStream::from_seed(5);
        for _ in 0..200 {
            let a = StateDistribution::BallUniform.sample(&mut rng);
            let b = StateDistribution::BallUniform.sample(&mut rng);
            assert_eq!(fidelity_score(&a, &b), fidelity_score(&b, &a));

            // Rodrigues rotation about a random axis by a random angle.
            let axis = StateDistribution::SurfaceUniform.sample(&mut rng);
            let angle = TAU * rng.uniform();
            let rot = |v: &BlochVector| rotate(v, &axis, angle);
            let d = fidelity_score(&rot(&a), &rot(&b)) - fidelity_score(&a, &b);
            assert!(d.abs() <= 1e-12, "rotation changed the score by {d}");
        }
    }

    use std::f64::consts::TAU;

    fn rotate(v: &BlochVector, axis: &BlochVector, angle: f64) -> BlochVector {
        let (sin, cos) = angle.sin_cos();
        let dot = axis.x * v.x + axis.y * v.y + axis.z * v.z;
        let cross = BlochVector::new(
            axis.y * v.z - axis.z * v.y,
            axis.z * v.x - axis.x * v.z,
            axis.x * v.y - axis.y * v.x,
        );
        BlochVector::new(
            v.x * cos + cross.x * sin + axis.x * dot * (1.0 - cos),
            v.y * cos + cross.y * sin + axis.y * dot * (1.0 - cos),
            v.z * cos + cross.z * sin + axis.z * dot * (1.0 - cos),
        )
    }

    #[test]
    fn round_trip_many_random_states() {
        let mut rng = RandomStream::from_seed(17);
        for _ in 0..10_000 {
            let b = StateDistribution::BallUniform.sample(&mut rng);
            let back = DensityMatrix::from_bloch(&b).unwrap().bloch_vector();
            assert!((back.x - b.x).abs() <= 1e-12);
            assert!((back.y - b.y).abs() <= 1e-12);
            assert!((back.z - b.z).abs() <= 1e-12);
        }
    }

    #[test]
    fn eigenvalues_follow_bloch_norm() {
        let mut rng = RandomStream::from_seed(23);
        for _ in 0..1_000 {
            let b = StateDistribution::BallUniform.sample(&mut rng);
            let (lo, hi) = DensityMatrix::from_bloch(&b).unwrap().eigenvalues();
            let r = b.norm();
            assert!((lo - 0.5 * (1.0 - r)).abs() <= 1e-12);
            assert!((hi - 0.5 * (1.0 + r)).abs() <= 1e-12);
        }
    }

    #[test]
    fn surface_samples_have_unit_norm() {
        let mut rng = RandomStream::from_seed(29);
        for _ in 0..10_000 {
            let b = StateDistribution::SurfaceUniform.sample(&mut rng);
            assert!((b.norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn ball_samples_are_centered() {
        let mut rng = RandomStream::from_seed(31);
        let n = 1_000_000;
        let (mut sx, mut sy, mut sz) = (0.0, 0.0, 0.0);
        let mut inner = 0u64;
        for _ in 0..n {
            let b = StateDistribution::BallUniform.sample(&mut rng);
            sx += b.x;
            sy += b.y;
            sz += b.z;
            if b.norm() <= 0.5 {
                inner += 1;
            }
        }
        let n = n as f64;
        assert!((sx / n).abs() <= 0.005);
        assert!((sy / n).abs() <= 0.005);
        assert!((sz / n).abs() <= 0.005);
        // Volume ratio oracle: the half-radius ball holds (1/2)^3 of the mass.
        let fraction = inner as f64 / n;
        assert!(
            (fraction - 0.125).abs() <= 0.002,
            "|b| <= 1/2 fraction {fraction}"
        );
    }

    #[test]
    fn clamp_to_ball_projects_radially() {
        let outside = BlochVector::new(0.0, 0.0, 2.0).clamped_to_ball();
        assert!((outside.z - 1.0).abs() <= 1e-15);
        let inside = BlochVector::new(0.1, 0.2, -0.3);
        assert_eq!(inside.clamped_to_ball(), inside);
    }
}
