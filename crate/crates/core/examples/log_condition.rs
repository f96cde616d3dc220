//! Tail-mass condition report for a point spectrum accumulating at the circle.

use num_complex::Complex64;
use szego_lab::measure_opuc::{log_condition_report, PointSpectrum};

fn main() -> szego_lab::Result<()> {
    // |z_k| = 1 + 1/k^2, masses 2^-k
    let pairs: Vec<(Complex64, f64)> = (1..=30)
        .map(|k| {
            let k = k as f64;
            (Complex64::from_polar(1.0 + 1.0 / (k * k), k), 0.5f64.powf(k))
        })
        .collect();
    let spectrum = PointSpectrum::from_pairs(&pairs)?;
    println!("Blaschke sum {:.4}, total mass {:.4}", spectrum.blaschke_sum(), spectrum.total_mass());
    let report = log_condition_report(&spectrum, &[1.0, 2.0], 1024)?;
    for row in report.rows.iter().filter(|r| r.n.is_power_of_two()) {
        println!("A = {} n = {:>4}: tail {:.3e}, value {:.4}", row.a, row.n, row.tail_mass, row.value);
    }
    println!("bounded: {:?}, passes: {}", report.bounded, report.passes());
    Ok(())
}
