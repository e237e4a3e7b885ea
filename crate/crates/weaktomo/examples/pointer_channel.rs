//! Poke at the Gaussian-pointer channel: reading densities, conditioned
//! (selective) state updates for specific readings, and how averaging the
//! selective updates over many sampled readings reproduces the nonselective
//! e^{-eps/2} coherence damping.
//!
//! ```bash
//! cargo run --release --example pointer_channel
//! ```

use weaktomo::{
    kraus_update, nonselective_channel, reading_density, sample_reading, BlochVector,
    DensityMatrix, MeasurementStrength, PauliAxis, PointerReading, RandomStream,
};

fn main() {
    let rho = DensityMatrix::from_bloch(&BlochVector::new(0.6, 0.0, 0.5)).expect("physical");
    let eps = MeasurementStrength::new(0.8).expect("positive");

    let density = reading_density(&rho, PauliAxis::Z, eps);
    println!(
        "reading density for sigma-z at eps = {}: weights ({:.3}, {:.3}), variance {:.3}",
        eps.value(),
        density.weight_plus(),
        density.weight_minus(),
        density.variance()
    );

    println!("\nselective updates (state conditioned on the reading):");
    for q in [-2.0, -0.5, 0.0, 0.5, 2.0] {
        let reading = PointerReading::new(q).expect("finite");
        let updated = kraus_update(&rho, PauliAxis::Z, eps, reading).expect("non-degenerate");
        let b = updated.bloch_vector();
        println!("  q = {q:+.1}  ->  ({:+.4}, {:+.4}, {:+.4})", b.x, b.y, b.z);
    }

    // Average many conditioned updates; the mean state converges on the
    // nonselective channel output.
    let mut rng = RandomStream::from_seed(11);
    let samples = 200_000;
    let mut mean = [0.0f64; 3];
    for _ in 0..samples {
        let q = sample_reading(&rho, PauliAxis::Z, eps, &mut rng);
        let b = kraus_update(&rho, PauliAxis::Z, eps, q)
            .expect("non-degenerate")
            .bloch_vector();
        mean[0] += b.x;
        mean[1] += b.y;
        mean[2] += b.z;
    }
    for entry in &mut mean {
        *entry /= samples as f64;
    }
    let expected = nonselective_channel(&rho, PauliAxis::Z, eps).bloch_vector();
    println!("\naveraged selective update over {samples} readings:");
    println!("  mean      ({:+.4}, {:+.4}, {:+.4})", mean[0], mean[1], mean[2]);
    println!(
        "  channel   ({:+.4}, {:+.4}, {:+.4})   (transverse damping e^(-eps/2) = {:.4})",
        expected.x,
        expected.y,
        expected.z,
        (-0.5 * eps.value()).exp()
    );
}
