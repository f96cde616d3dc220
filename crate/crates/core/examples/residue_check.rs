//! The residue identity for the orthonormal Laurent element R_n and the
//! Cauchy-Schwarz majorant that drives eta_n -> B(0) psi(0).

use num_complex::Complex64;
use szego_lab::measure_opuc::{residue_identity_check, MeasureSpec, OuterWeight, PointSpectrum};
use szego_lab::xlinalg::PrecisionTag;

fn main() -> szego_lab::Result<()> {
    // non-trivial weight |1 + z/3|^{-2} dm
    let weight = OuterWeight::from_real(&[1.0, 1.0 / 3.0], "1 + z/3")?;
    let spectrum = PointSpectrum::from_pairs(&[
        (Complex64::new(1.5, 0.0), 0.3),
        (Complex64::new(0.0, -2.0), 0.2),
    ])?;
    let mu = MeasureSpec::new(weight, spectrum, PrecisionTag::P256);
    for k in [1usize, 2] {
        for n in [4i64, 8, 12] {
            let r = residue_identity_check(&mu, n, k)?;
            println!(
                "k = {k} n = {n:>2}: |LHS - RHS| = {:.1e}, eta = {:.10}, |pairing| = {:.6}, CS majorant = {:.3e}",
                r.abs_diff, r.eta, r.pairing_abs, r.cs_majorant
            );
        }
    }
    Ok(())
}
