//! Vallée-Poussin type multipliers, convolution and Besov seminorms.

use num_complex::Complex64;
use szego_lab::circle_fourier::{
    besov_seminorm, convolve, kernel_coeffs, kernel_identity_vk_vpn, lp_norm, sup_norm, KernelSpec, LaurentPolynomial, Lp,
};

fn main() -> szego_lab::Result<()> {
    for spec in [KernelSpec::ValleePoussin(3), KernelSpec::ModifiedV(3), KernelSpec::ModifiedVP(5)] {
        let k = kernel_coeffs(spec)?;
        let m: Vec<String> = (k.lo()..=k.hi()).filter(|j| *j >= 0).map(|j| format!("{}", spec.multiplier_exact(j))).collect();
        println!("{spec:?}: support {:?}, multipliers j>=0: [{}]", spec.support(), m.join(", "));
    }

    // V_k * VP_n = V_k once 2^k <= n
    println!("V_3 * VP_8 = V_3: {}", kernel_identity_vk_vpn(3, 8)?);

    let f = LaurentPolynomial::new(-12, (0..25).map(|j| Complex64::new(1.0 / (1 + j) as f64, 0.0)).collect());
    let g = convolve(&f, KernelSpec::ModifiedVP(4));
    println!("span {} -> {} after VP_4", f.span(), g.span());
    println!("sup|f| = {:.6}, sup|VP_4 f| = {:.6}", sup_norm(&f, 16)?.value, sup_norm(&g, 16)?.value);

    let z2 = LaurentPolynomial::monomial(2, Complex64::new(1.0, 0.0));
    println!("|z^2|_B^1_inf,inf = {}", besov_seminorm(&z2, 1.0, Lp::LInf)?);
    println!("|f|_L2 = {:.6}", lp_norm(&f, Lp::L2)?);
    Ok(())
}
