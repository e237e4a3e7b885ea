//! The von Neumann Gaussian-pointer measurement channel for a qubit.
//!
//! A measurement of strength ε couples σ_axis to a pointer whose position is
//! read off once. With the coupling fixed to unity, readings for the ±1
//! eigenstates follow Gaussians centered at ±1 with variance 1/ε, so large ε
//! separates the peaks (projective limit) and small ε overlaps them (weak
//! regime). This module provides the reading distribution, the stochastic
//! reading sampler, the selective per-member state update conditioned on a
//! reading, and the nonselective channel obtained by averaging readings out,
//! which damps coherences in the measurement basis by e^{−ε/2}.

use num_complex::Complex64;
use thiserror::Error;

use crate::qubit::{DensityMatrix, PauliAxis};
use crate::rng::RandomStream;

/// Normalization denominators at or below this are treated as degenerate.
pub const UPDATE_DENOMINATOR_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PointerError {
    #[error("measurement strength must be finite and strictly positive, got {0}")]
    InvalidStrength(f64),
    #[error("pointer reading must be finite, got {0}")]
    NonFiniteReading(f64),
    #[error("state update degenerate at reading q = {q}: |q| is out of numerical range")]
    DegenerateUpdate { q: f64 },
}

/// Coupling strength ε of one pointer measurement (ε = 1/variance of the
/// reading distribution around each eigenvalue).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementStrength(f64);

impl MeasurementStrength {
    pub fn new(epsilon: f64) -> Result<Self, PointerError> {
        if epsilon.is_finite() && epsilon > 0.0 {
            Ok(MeasurementStrength(epsilon))
        } else {
            Err(PointerError::InvalidStrength(epsilon))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Pointer-position variance 1/ε.
    pub fn variance(self) -> f64 {
        1.0 / self.0
    }
}

/// One pointer-position readout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointerReading(f64);

impl PointerReading {
    pub fn new(q: f64) -> Result<Self, PointerError> {
        if q.is_finite() {
            Ok(PointerReading(q))
        } else {
            Err(PointerError::NonFiniteReading(q))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The two-Gaussian mixture density of pointer readings: components centered
/// at ±1 with common variance 1/ε, weighted by the eigenstate populations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadingDensity {
    weight_plus: f64,
    weight_minus: f64,
    variance: f64,
}

impl ReadingDensity {
    pub const CENTER_PLUS: f64 = 1.0;
    pub const CENTER_MINUS: f64 = -1.0;

    pub fn weight_plus(&self) -> f64 {
        self.weight_plus
    }

    pub fn weight_minus(&self) -> f64 {
        self.weight_minus
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    /// Mixture probability density at reading q.
    pub fn pdf(&self, q: f64) -> f64 {
        let norm = 1.0 / (std::f64::consts::TAU * self.variance).sqrt();
        let dp = q - Self::CENTER_PLUS;
        let dm = q - Self::CENTER_MINUS;
        self.weight_plus * norm * (-0.5 * dp * dp / self.variance).exp()
            + self.weight_minus * norm * (-0.5 * dm * dm / self.variance).exp()
    }
}

/// Probability density of pointer readings when measuring σ_axis on ρ.
pub fn reading_density(
    rho: &DensityMatrix,
    axis: PauliAxis,
    strength: MeasurementStrength,
) -> ReadingDensity {
    let weight_plus = (0.5 * (1.0 + rho.expectation(axis))).clamp(0.0, 1.0);
    ReadingDensity {
        weight_plus,
        weight_minus: 1.0 - weight_plus,
        variance: strength.variance(),
    }
}

/// Draws one pointer reading: selects a Gaussian component by its eigenstate
/// population, then samples that Gaussian.
pub fn sample_reading(
    rho: &DensityMatrix,
    axis: PauliAxis,
    strength: MeasurementStrength,
    rng: &mut RandomStream,
) -> PointerReading {
    let density = reading_density(rho, axis, strength);
    let center = if rng.bernoulli(density.weight_plus()) {
        ReadingDensity::CENTER_PLUS
    } else {
        ReadingDensity::CENTER_MINUS
    };
    PointerReading(rng.normal_scaled(center, density.variance().sqrt()))
}

/// Selective post-measurement state conditioned on reading q:
/// ρ′ = M(q) ρ M(q)† / Tr(M(q) ρ M(q)†) with, in the σ_axis eigenbasis,
/// M(q) = diag(e^{−ε(q−1)²/4}, e^{−ε(q+1)²/4}). Weight exponents are taken
/// relative to their maximum before exponentiation, which keeps the update
/// stable out to |q| ≈ 700/ε.
pub fn kraus_update(
    rho: &DensityMatrix,
    axis: PauliAxis,
    strength: MeasurementStrength,
    reading: PointerReading,
) -> Result<DensityMatrix, PointerError> {
    let eps = strength.value();
    let q = reading.value();
    let exp_plus = -0.25 * eps * (q - 1.0) * (q - 1.0);
    let exp_minus = -0.25 * eps * (q + 1.0) * (q + 1.0);
    let top = exp_plus.max(exp_minus);
    let amp_plus = (exp_plus - top).exp();
    let amp_minus = (exp_minus - top).exp();

    let m = in_measurement_basis(rho, axis);
    let weight_plus = amp_plus * amp_plus;
    let weight_minus = amp_minus * amp_minus;
    let cross = amp_plus * amp_minus;
    let denom = m[0][0].re * weight_plus + m[1][1].re * weight_minus;
    if denom <= UPDATE_DENOMINATOR_FLOOR {
        return Err(PointerError::DegenerateUpdate { q });
    }
    let updated = [
        [m[0][0] * (weight_plus / denom), m[0][1] * (cross / denom)],
        [m[1][0] * (cross / denom), m[1][1] * (weight_minus / denom)],
    ];
    Ok(from_measurement_basis(updated, axis))
}

/// Post-measurement ensemble state with the reading traced out: diagonal
/// entries in the σ_axis eigenbasis are unchanged and the off-diagonal
/// entries shrink by the Gaussian overlap factor e^{−ε/2}.
pub fn nonselective_channel(
    rho: &DensityMatrix,
    axis: PauliAxis,
    strength: MeasurementStrength,
) -> DensityMatrix {
    let damping = (-0.5 * strength.value()).exp();
    let m = in_measurement_basis(rho, axis);
    let damped = [
        [m[0][0], m[0][1] * damping],
        [m[1][0] * damping, m[1][1]],
    ];
    from_measurement_basis(damped, axis)
}

type Matrix = [[Complex64; 2]; 2];

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (row, out_row) in out.iter_mut().enumerate() {
        for (col, cell) in out_row.iter_mut().enumerate() {
            *cell = a[row][0] * b[0][col] + a[row][1] * b[1][col];
        }
    }
    out
}

fn adjoint(a: &Matrix) -> Matrix {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

/// Columns are the ±1 eigenvectors of σ_axis, so U† σ_axis U = diag(1, −1).
fn eigenbasis(axis: PauliAxis) -> Matrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match axis {
        PauliAxis::X => [
            [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            [Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
        ],
        PauliAxis::Y => [
            [Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            [Complex64::new(0.0, h), Complex64::new(0.0, -h)],
        ],
        PauliAxis::Z => [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ],
    }
}

/// U† ρ U: entries of ρ expressed in the σ_axis eigenbasis.
fn in_measurement_basis(rho: &DensityMatrix, axis: PauliAxis) -> Matrix {
    if axis == PauliAxis::Z {
        return rho.entries();
    }
    let u = eigenbasis(axis);
    mat_mul(&adjoint(&u), &mat_mul(&rho.entries(), &u))
}

/// U ρ̃ U†: back from measurement-basis entries to the computational basis.
fn from_measurement_basis(entries: Matrix, axis: PauliAxis) -> DensityMatrix {
    if axis == PauliAxis::Z {
        return DensityMatrix::from_entries_unchecked(entries);
    }
    let u = eigenbasis(axis);
    DensityMatrix::from_entries_unchecked(mat_mul(&u, &mat_mul(&entries, &adjoint(&u))))
}
