use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::CircleGrid;
use super::kernel::{convolve, KernelSpec};
use super::LaurentPolynomial;
use crate::error::{Error, Result};

pub const DEFAULT_OVERSAMPLE: usize = 16;
const NEWTON_STEPS: usize = 3;

/// Sampled supremum on the circle with its Bernstein certificate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupEstimate {
    pub value: f64,
    /// `true_sup <= value * (1 + rel_error_bound)`.
    pub rel_error_bound: f64,
    pub grid: usize,
}

impl SupEstimate {
    pub fn upper(&self) -> f64 {
        self.value * (1.0 + self.rel_error_bound)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lp {
    L1,
    L2,
    LInf,
}

pub(crate) fn grid_size(oversample: usize, span: usize) -> usize {
    (oversample * (span + 1)).next_power_of_two()
}

/// `max |f|` over the circle.
///
/// Samples `f` on `next_pow2(oversample * (span + 1))` nodes, then runs
/// Newton steps on `|f|^2` along the circle from the best node. The value is
/// never below the best sampled node.
pub fn sup_norm(f: &LaurentPolynomial, oversample: usize) -> Result<SupEstimate> {
    if oversample < 4 {
        return Err(Error::Precondition(format!(
            "sup_norm needs oversample >= 4, got {oversample}"
        )));
    }
    let size = grid_size(oversample, f.span());
    let grid = CircleGrid::sample_shifted(f, size)?;
    let (best_m, best) = grid
        .values()
        .iter()
        .map(|v| v.norm())
        .enumerate()
        .fold((0, 0.0f64), |acc, (m, v)| if v > acc.1 { (m, v) } else { acc });

    let mut value = best;
    let mut theta = 2.0 * PI * best_m as f64 / size as f64;
    for _ in 0..NEWTON_STEPS {
        let z = Complex64::from_polar(1.0, theta);
        let [g, g1, g2] = f.eval_shifted_with_derivatives(z);
        // derivatives of g(e^{iθ}) in θ
        let gt = Complex64::i() * z * g1;
        let gtt = -(z * g1 + z * z * g2);
        let h1 = 2.0 * (g.conj() * gt).re;
        let h2 = 2.0 * (gt.norm_sqr() + (g.conj() * gtt).re);
        if h2 >= 0.0 || !h2.is_finite() {
            break;
        }
        let step = (-h1 / h2).clamp(-PI / size as f64, PI / size as f64);
        theta += step;
        let v = f.eval_shifted_with_derivatives(Complex64::from_polar(1.0, theta))[0].norm();
        value = value.max(v);
    }

    let x = PI * f.span() as f64 / size as f64;
    Ok(SupEstimate {
        value,
        rel_error_bound: x / (1.0 - x),
        grid: size,
    })
}

/// `L^p(𝕋)` norm with respect to normalized arc length.
pub fn lp_norm(f: &LaurentPolynomial, p: Lp) -> Result<f64> {
    match p {
        Lp::L2 => Ok(f.coeff_norm_sq().sqrt()),
        Lp::L1 => {
            let size = (8 * (f.span() + 1)).max(1 << 12).next_power_of_two();
            let grid = CircleGrid::sample_shifted(f, size)?;
            Ok(grid.values().iter().map(|v| v.norm()).sum::<f64>() / size as f64)
        }
        Lp::LInf => Ok(sup_norm(f, DEFAULT_OVERSAMPLE)?.value),
    }
}

/// `sup_{n >= 0} 2^{ns} ‖W_n ⋆ f‖_p` for analytic `f` (the `q = ∞` Besov seminorm).
pub fn besov_seminorm(f: &LaurentPolynomial, s: f64, p: Lp) -> Result<f64> {
    if f.lo() < 0 && f.terms().any(|(j, c)| j < 0 && c.norm_sqr() > 0.0) {
        return Err(Error::Precondition(
            "besov seminorm needs an analytic polynomial (no negative exponents)".into(),
        ));
    }
    let hi = f.hi().max(0);
    let mut best = 0.0f64;
    let mut n = 0u32;
    loop {
        if n >= 1 && (1i64 << (n - 1)) >= hi {
            break;
        }
        let block = convolve(f, KernelSpec::ValleePoussin(n)).normalize();
        if !block.is_zero() {
            let weight = 2f64.powf(n as f64 * s);
            best = best.max(weight * lp_norm(&block, p)?);
        }
        n += 1;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> LaurentPolynomial {
        LaurentPolynomial::from_real_taylor(c)
    }

    #[test]
    fn sup_norm_examples() {
        for n in [0, 1, 7, 40] {
            let zn = LaurentPolynomial::monomial(n, Complex64::new(1.0, 0.0));
            assert!((sup_norm(&zn, 16).unwrap().value - 1.0).abs() < 1e-14);
        }
        assert!((sup_norm(&poly(&[1.0, 1.0]), 16).unwrap().value - 2.0).abs() < 1e-14);
        assert!((sup_norm(&poly(&[1.0, 0.0, -1.0]), 16).unwrap().value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn newton_refinement_finds_off_grid_maximum() {
        // |1 + e^{i(θ - a)}| peaks at θ = a, far from any node
        let a = 0.123_456_7;
        let f = LaurentPolynomial::from_taylor(vec![
            Complex64::new(1.0, 0.0),
            Complex64::from_polar(1.0, -a),
        ]);
        let est = sup_norm(&f, 4).unwrap();
        assert!((est.value - 2.0).abs() < 1e-12, "{}", est.value);
        assert!(est.upper() >= 2.0);
    }

    #[test]
    fn oversample_precondition() {
        assert!(matches!(sup_norm(&poly(&[1.0]), 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn lp_norm_examples() {
        let f = LaurentPolynomial::monomial(2, Complex64::new(3.0, 0.0));
        assert_eq!(lp_norm(&f, Lp::L2).unwrap(), 3.0);
        let g = poly(&[1.0, 1.0]);
        assert!((lp_norm(&g, Lp::L2).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!((lp_norm(&g, Lp::LInf).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn l1_norm_against_independent_quadrature() {
        // oracle: composite Simpson on 2|cos(θ/2)| over [0, 2π], 200001 nodes
        let m = 200_000usize;
        let h = 2.0 * PI / m as f64;
        let f = |t: f64| 2.0 * (t / 2.0).cos().abs();
        let mut acc = f(0.0) + f(2.0 * PI);
        for i in 1..m {
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        let oracle = acc * h / 3.0 / (2.0 * PI);
        assert!((oracle - 4.0 / PI).abs() < 1e-10);
        let got = lp_norm(&poly(&[1.0, 1.0]), Lp::L1).unwrap();
        assert!((got - oracle).abs() < 1e-6, "{got} vs {oracle}");
    }

    #[test]
    fn besov_examples() {
        let z2 = LaurentPolynomial::monomial(2, Complex64::new(1.0, 0.0));
        assert!((besov_seminorm(&z2, 1.0, Lp::LInf).unwrap() - 2.0).abs() < 1e-14);
        let one = poly(&[1.0]);
        assert!((besov_seminorm(&one, 1.0, Lp::LInf).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(besov_seminorm(&LaurentPolynomial::zero(), 1.0, Lp::LInf).unwrap(), 0.0);
        let bad = LaurentPolynomial::monomial(-1, Complex64::new(1.0, 0.0));
        assert!(besov_seminorm(&bad, 1.0, Lp::L2).is_err());
    }
}
