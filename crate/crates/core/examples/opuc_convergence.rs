//! tau_n and eta_n for dm + 0.3 delta_{1.5} + 0.1 delta_{-1.25}, converging to
//! B(0) = 8/15.

use num_complex::Complex64;
use szego_lab::asymptotics::{convergence_experiment, Which};
use szego_lab::measure_opuc::MeasureSpec;
use szego_lab::xlinalg::PrecisionTag;

fn main() -> szego_lab::Result<()> {
    let mu = MeasureSpec::with_masses(
        &[(Complex64::new(1.5, 0.0), 0.3), (Complex64::new(-1.25, 0.0), 0.1)],
        PrecisionTag::P256,
    )?;
    let report = convergence_experiment(&mu, &[4, 8, 16, 24, 32, 48], Which::Both, None)?;
    println!("target B(0) psi(0) = {:.12}", report.target);
    println!("{:>4} {:>16} {:>10} {:>16} {:>10}", "n", "tau_n", "error", "eta_n", "error");
    for r in &report.rows {
        println!(
            "{:>4} {:>16.12} {:>10.2e} {:>16.12} {:>10.2e}",
            r.n,
            r.tau.unwrap_or(f64::NAN),
            r.tau_error.unwrap_or(f64::NAN),
            r.eta.unwrap_or(f64::NAN),
            r.eta_error.unwrap_or(f64::NAN)
        );
    }
    println!("trend ok: tau {:?}, eta {:?}", report.tau_trend_ok, report.eta_trend_ok);
    Ok(())
}
