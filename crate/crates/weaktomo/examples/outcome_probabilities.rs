//! Print the closed-form outcome probabilities of the three stages and the
//! calibration constants that invert count differences back to Bloch
//! coordinates, across a range of coupling strengths.
//!
//! ```bash
//! cargo run --release --example outcome_probabilities
//! ```

use weaktomo::{
    calibration_x, calibration_y, calibration_z, discard_probability, prob_x, prob_y, prob_z,
    DiscardWidth, MeasurementStrength,
};

fn main() {
    let (x, y, z) = (0.3, -0.2, 0.5);
    let a = DiscardWidth::new(0.4).expect("non-negative");
    println!("state components (x, y, z) = ({x}, {y}, {z}); discard half-width a = 0.4\n");
    println!(
        "{:>6} | {:>7} {:>7} {:>7} | {:>7} {:>7} {:>7} | {:>7} {:>7} | {:>7} {:>7} {:>7}",
        "eps", "z:+1", "z:-1", "z:disc", "x:+1", "x:-1", "x:disc", "y:+1", "y:-1", "cal_z",
        "cal_x", "cal_y"
    );
    for eps in [0.1, 0.25, 0.5, 1.0, 2.0, 4.0] {
        let strength = MeasurementStrength::new(eps).expect("positive");
        let tz = prob_z(z, strength, a).expect("in range");
        let tx = prob_x(x, strength, strength, a).expect("in range");
        let (yp, ym) = prob_y(y, strength, strength).expect("in range");
        let cz = calibration_z(strength, a).expect("non-degenerate");
        let cx = calibration_x(strength, strength, a).expect("non-degenerate");
        let cy = calibration_y(strength, strength).expect("non-degenerate");
        println!(
            "{eps:>6.2} | {:>7.4} {:>7.4} {:>7.4} | {:>7.4} {:>7.4} {:>7.4} | {:>7.4} {:>7.4} | {cz:>7.4} {cx:>7.4} {cy:>7.4}",
            tz.p_plus(),
            tz.p_minus(),
            tz.p_discard(),
            tx.p_plus(),
            tx.p_minus(),
            tx.p_discard(),
            yp,
            ym,
        );
    }

    println!("\ndiscard-window mass vs width at eps = 0.5:");
    let strength = MeasurementStrength::new(0.5).expect("positive");
    for a in [0.0, 0.2, 0.4, 0.6, 0.8] {
        let width = DiscardWidth::new(a).expect("non-negative");
        println!("  a = {a:.1}: {:.4}", discard_probability(strength, width));
    }
}
