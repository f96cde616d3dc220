//! Constructive lower bounds for eta_n (Vallée-Poussin route) and tau_n
//! (Taylor route) with their per-n certificates.

use num_complex::Complex64;
use szego_lab::asymptotics::{taylor_approximant, vp_approximant, ScheduleParams};
use szego_lab::measure_opuc::{eta_n, tau_n, MeasureSpec};
use szego_lab::xlinalg::PrecisionTag;

fn main() -> szego_lab::Result<()> {
    let mu = MeasureSpec::with_masses(
        &[(Complex64::new(1.5, 0.0), 0.3), (Complex64::new(-1.25, 0.0), 0.1)],
        PrecisionTag::P256,
    )?;
    let sched = ScheduleParams::default();
    sched.validate(&[32, 48, 64, 128])?;
    println!("schedule: {}", sched.describe());
    println!("target B(0) psi(0) = {:.6}", mu.target());

    for n in [32u64, 64, 128] {
        let (_, vp) = vp_approximant(&mu, n, &sched)?;
        let (_, ty) = taylor_approximant(&mu, n, &sched)?;
        let eta = eta_n(&mu, n as i64)?.to_f64();
        let tau = tau_n(&mu, n as i64)?.to_f64();
        println!(
            "n = {n:>3}  k_n = {:>2}  l_n = {:>2}  VP lower {:.6} <= eta {:.6} ({})  Taylor lower {:.6} <= tau {:.6} ({})  schwarz {}",
            vp.k_n,
            vp.l_n,
            vp.lower_bound_achieved,
            eta,
            vp.dominated_by(eta),
            ty.lower_bound_achieved,
            tau,
            ty.dominated_by(tau),
            vp.schwarz_pass && ty.schwarz_pass,
        );
    }
    Ok(())
}
