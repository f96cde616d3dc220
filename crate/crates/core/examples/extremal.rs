//! Extended-precision Cholesky, Schur leading coefficient and the
//! norm-constrained extremal problem on a small Gram matrix.

use num_complex::Complex64;
use szego_lab::xlinalg::{cholesky, constrained_max_leading, quadratic_form, schur_leading, HermitianMatrix, PrecisionTag};

fn main() -> szego_lab::Result<()> {
    // Hilbert-like Gram: poorly conditioned, fine at 256 bits
    let n = 8;
    let rows: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| Complex64::new(1.0 / (i + j + 1) as f64, 0.0)).collect())
        .collect();
    for prec in [PrecisionTag::P53, PrecisionTag::P256] {
        let g = HermitianMatrix::from_rows(&rows, prec, 0.0)?;
        let f = cholesky(&g)?;
        let lead = schur_leading(&g)?;
        let sol = constrained_max_leading(&g)?;
        let q = quadratic_form(&g, &sol.witness);
        println!(
            "{:>3} bits: residual {:.1e}, 1/L_NN = {:.12}, eta = {:.12}, v*Gv = {:.3}",
            prec.bits(),
            f.relative_residual(&g),
            lead.to_f64(),
            sol.eta.to_f64(),
            q.real().to_f64()
        );
    }
    Ok(())
}
