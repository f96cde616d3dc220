//! Trapezoidal Fourier multipliers on the circle.
//!
//! Every kernel here is described by its multiplier `k̂(j)`; convolution with
//! a kernel is coefficientwise multiplication. Multipliers are rational and
//! are available exactly through [`KernelSpec::multiplier_exact`].

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::LaurentPolynomial;
use crate::error::{Error, Result};

/// Largest dyadic exponent accepted by [`KernelSpec::validate`].
pub const MAX_DYADIC_EXPONENT: u32 = 30;
/// Largest band parameter accepted by [`KernelSpec::validate`].
pub const MAX_BAND: u64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index")]
pub enum KernelSpec {
    /// Dyadic de la Vallée-Poussin block `W_n`: `W_0 = 1 + z`; for `n >= 1`
    /// it is 1 at `2^n`, vanishes off `(2^{n-1}, 2^{n+1})` and is affine between.
    ValleePoussin(u32),
    /// Symmetric trapezoid `V_k`: 1 on `|j| <= 2^{k-1}`, 0 for `|j| >= 2^k`.
    ModifiedV(u32),
    /// Symmetric trapezoid `VP_n`: 1 on `|j| <= n`, 0 for `|j| >= 2n`.
    ModifiedVP(u64),
    /// Taylor projection onto exponents `0..=n`.
    Dirichlet(u64),
}

fn pow2(e: u32) -> i128 {
    1i128 << e
}

impl KernelSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            KernelSpec::ValleePoussin(n) | KernelSpec::ModifiedV(n) => n <= MAX_DYADIC_EXPONENT,
            KernelSpec::ModifiedVP(n) | KernelSpec::Dirichlet(n) => n <= MAX_BAND,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("kernel index too large: {self:?}")))
        }
    }

    /// Inclusive exponent range outside which the multiplier is zero.
    pub fn support(&self) -> (i64, i64) {
        match *self {
            KernelSpec::ValleePoussin(0) => (0, 1),
            KernelSpec::ValleePoussin(n) => (pow2(n - 1) as i64 + 1, pow2(n + 1) as i64 - 1),
            KernelSpec::ModifiedV(0) | KernelSpec::ModifiedVP(0) => (0, 0),
            KernelSpec::ModifiedV(k) => {
                let h = pow2(k) as i64 - 1;
                (-h, h)
            }
            KernelSpec::ModifiedVP(n) => {
                let h = 2 * n as i64 - 1;
                (-h, h)
            }
            KernelSpec::Dirichlet(n) => (0, n as i64),
        }
    }

    /// Exact multiplier `k̂(j)` as `(numerator, denominator)`.
    fn multiplier_parts(&self, j: i64) -> (i128, i128) {
        let j = j as i128;
        match *self {
            KernelSpec::ValleePoussin(0) => ((j == 0 || j == 1) as i128, 1),
            // windows beyond the i64 exponent range
            KernelSpec::ValleePoussin(n) if n > 63 => (0, 1),
            KernelSpec::ModifiedV(k) if k > 64 => (1, 1),
            KernelSpec::ValleePoussin(n) => {
                let (a, b, c) = (pow2(n - 1), pow2(n), pow2(n + 1));
                if j > a && j <= b {
                    (j - a, a)
                } else if j > b && j < c {
                    (c - j, b)
                } else {
                    (0, 1)
                }
            }
            KernelSpec::ModifiedV(0) | KernelSpec::ModifiedVP(0) => ((j == 0) as i128, 1),
            KernelSpec::ModifiedV(k) => {
                let (h, f) = (pow2(k - 1), pow2(k));
                let a = j.abs();
                if a <= h {
                    (1, 1)
                } else if a < f {
                    (f - a, h)
                } else {
                    (0, 1)
                }
            }
            KernelSpec::ModifiedVP(n) => {
                let n = n as i128;
                let a = j.abs();
                if a <= n {
                    (1, 1)
                } else if a < 2 * n {
                    (2 * n - a, n)
                } else {
                    (0, 1)
                }
            }
            KernelSpec::Dirichlet(n) => ((j >= 0 && j <= n as i128) as i128, 1),
        }
    }

    pub fn multiplier_exact(&self, j: i64) -> Ratio<i64> {
        let (num, den) = self.multiplier_parts(j);
        Ratio::new(num as i64, den as i64)
    }

    pub fn multiplier(&self, j: i64) -> f64 {
        let (num, den) = self.multiplier_parts(j);
        if den == 1 {
            num as f64
        } else {
            num as f64 / den as f64
        }
    }
}

/// Fourier coefficients of the kernel itself, over its support.
pub fn kernel_coeffs(spec: KernelSpec) -> Result<LaurentPolynomial> {
    spec.validate()?;
    let (lo, hi) = spec.support();
    Ok(LaurentPolynomial::new(
        lo,
        (lo..=hi).map(|j| Complex64::new(spec.multiplier(j), 0.0)).collect(),
    ))
}

/// `k ⋆ f`: coefficient `j` of the result is `f̂(j) k̂(j)`.
///
/// The result keeps the exponent range of `f`.
pub fn convolve(f: &LaurentPolynomial, spec: KernelSpec) -> LaurentPolynomial {
    let coeffs = f.terms().map(|(j, c)| c * spec.multiplier(j)).collect();
    LaurentPolynomial::new(f.lo(), coeffs)
}

/// Checks `V_k ⋆ VP_n = V_k` coefficient by coefficient in exact arithmetic.
///
/// Requires `2^k <= n`; the identity is not claimed otherwise.
pub fn kernel_identity_vk_vpn(k: u32, n: u64) -> Result<bool> {
    if k > MAX_DYADIC_EXPONENT || (1u64 << k) > n {
        return Err(Error::Precondition(format!(
            "kernel identity needs 2^k <= n, got k = {k}, n = {n}"
        )));
    }
    let v = KernelSpec::ModifiedV(k);
    let vp = KernelSpec::ModifiedVP(n);
    let reach = (2 * n).max(1u64 << k) as i64;
    Ok((-reach..=reach).all(|j| v.multiplier_exact(j) * vp.multiplier_exact(j) == v.multiplier_exact(j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real_coeffs(p: &LaurentPolynomial) -> Vec<(i64, f64)> {
        p.terms().map(|(j, c)| (j, c.re)).collect()
    }

    #[test]
    fn vallee_poussin_zero_is_one_plus_z() {
        let w0 = kernel_coeffs(KernelSpec::ValleePoussin(0)).unwrap();
        assert_eq!(real_coeffs(&w0), vec![(0, 1.0), (1, 1.0)]);
    }

    #[test]
    fn vallee_poussin_one() {
        let w = KernelSpec::ValleePoussin(1);
        let vals: Vec<f64> = (1..=4).map(|j| w.multiplier(j)).collect();
        assert_eq!(vals, vec![0.0, 1.0, 0.5, 0.0]);
        let w1 = kernel_coeffs(w).unwrap();
        assert_eq!(real_coeffs(&w1), vec![(2, 1.0), (3, 0.5)]);
    }

    #[test]
    fn vallee_poussin_blocks_partition_unity_from_two() {
        for j in 2..300i64 {
            let total: f64 = (0..12).map(|n| KernelSpec::ValleePoussin(n).multiplier(j)).sum();
            assert_eq!(total, 1.0, "j = {j}");
        }
    }

    #[test]
    fn modified_vp_two() {
        let vp = KernelSpec::ModifiedVP(2);
        let vals: Vec<f64> = (-5..=5).map(|j| vp.multiplier(j)).collect();
        assert_eq!(vals, vec![0.0, 0.0, 0.5, 1.0, 1.0, 1.0, 1.0, 1.0, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn modified_vp_is_exactly_rational() {
        let vp = KernelSpec::ModifiedVP(3);
        assert_eq!(vp.multiplier_exact(4), Ratio::new(2, 3));
        assert_eq!(vp.multiplier_exact(-5), Ratio::new(1, 3));
    }

    #[test]
    fn convolve_examples() {
        let z3 = LaurentPolynomial::monomial(3, Complex64::new(1.0, 0.0));
        assert_eq!(convolve(&z3, KernelSpec::Dirichlet(5)).coeff(3).re, 1.0);
        assert!(convolve(&z3, KernelSpec::Dirichlet(2)).is_zero());
        let f = LaurentPolynomial::from_real_taylor(&[1.0, 0.0, 0.0, 1.0]);
        let g = convolve(&f, KernelSpec::ValleePoussin(1)).normalize();
        assert_eq!(real_coeffs(&g), vec![(3, 0.5)]);
    }

    #[test]
    fn kernel_identity_examples() {
        assert!(kernel_identity_vk_vpn(2, 4).unwrap());
        assert!(kernel_identity_vk_vpn(0, 1).unwrap());
        assert!(matches!(kernel_identity_vk_vpn(3, 4), Err(Error::Precondition(_))));
    }

    #[test]
    fn identity_fails_without_nesting_of_bands() {
        // The product is V_k only when the band of VP_n covers supp V_k; spot
        // check the multiplier algebra where it cannot hold.
        let v = KernelSpec::ModifiedV(3);
        let vp = KernelSpec::ModifiedVP(4);
        assert_ne!(v.multiplier_exact(6) * vp.multiplier_exact(6), v.multiplier_exact(6));
    }

    #[test]
    fn oversized_index_rejected() {
        assert!(kernel_coeffs(KernelSpec::ValleePoussin(40)).is_err());
    }
}
