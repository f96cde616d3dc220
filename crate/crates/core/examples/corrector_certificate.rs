//! Build the dilated corrector for a random zero set and print its certificate.
//!
//!     cargo run --release --example corrector_certificate -- 64 0.5

use szego_lab::blaschke::{build_corrector, corrector_certificate, CertificateOptions};
use szego_lab::cli::{generate_zeros, ZeroKind};

fn main() -> szego_lab::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(32, |s| s.parse().expect("degree"));
    let eps: f64 = args.next().map_or(1.0, |s| s.parse().expect("epsilon"));

    let zeros = generate_zeros(ZeroKind::BoundaryCluster, n, 7)?;
    let c = build_corrector(zeros, eps)?;
    println!("n = {n}, eps = {eps}, R = {:.6}, outer: {}", c.radius(), c.is_outer());

    let cert = corrector_certificate(&c, &CertificateOptions::default())?;
    println!("|phi0(0) - 1|      = {:.2e}", cert.phi0_err);
    println!("sup|phi0|          = {:.6} (bound {:.6})", cert.sup_phi, cert.sup_phi_bound);
    for r in &cert.derivatives {
        println!("sup|(B phi0)^({})|/n^{} = {:.4}", r.s, r.s, r.ratio);
    }
    for r in &cert.besov {
        println!("Besov B^{}_inf,inf / n^{} = {:.4}", r.s, r.s, r.ratio);
    }
    Ok(())
}
