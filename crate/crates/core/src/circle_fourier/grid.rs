use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::LaurentPolynomial;
use crate::error::{Error, Result};

/// Samples on the equispaced nodes `e^{2πim/M}`, `M` a power of two.
#[derive(Clone, Debug)]
pub struct CircleGrid {
    size: usize,
    values: Vec<Complex64>,
}

pub fn node(m: usize, size: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * m as f64 / size as f64)
}

impl CircleGrid {
    fn check_size(size: usize) -> Result<()> {
        if size == 0 || !size.is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "grid size must be a power of two, got {size}"
            )));
        }
        Ok(())
    }

    pub fn from_fn(size: usize, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        Self::check_size(size)?;
        let values = (0..size).map(|m| f(node(m, size))).collect();
        Ok(Self { size, values })
    }

    /// Samples of `z^{-lo} f(z)` (the polynomial shifted to start at exponent 0).
    ///
    /// On the circle the modulus equals `|f|`.
    pub fn sample_shifted(f: &LaurentPolynomial, size: usize) -> Result<Self> {
        Self::check_size(size)?;
        if size < 4 * (f.span() + 1) {
            return Err(Error::InvalidInput(format!(
                "grid of {size} nodes too coarse for span {}",
                f.span()
            )));
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); size];
        buf[..f.coeffs().len()].copy_from_slice(f.coeffs());
        FftPlanner::new().plan_fft_inverse(size).process(&mut buf);
        Ok(Self { size, values: buf })
    }

    /// Samples of `f` itself.
    pub fn sample(f: &LaurentPolynomial, size: usize) -> Result<Self> {
        let mut g = Self::sample_shifted(f, size)?;
        if f.lo() != 0 {
            let lo = f.lo().rem_euclid(size as i64) as usize;
            for (m, v) in g.values.iter_mut().enumerate() {
                *v *= node((m * lo) % size, size);
            }
        }
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Discrete Fourier coefficients `(1/M) Σ_m v_m ω^{-jm}` for `j = 0..M`.
    ///
    /// For samples of an analytic function these are its Taylor coefficients
    /// up to aliasing from exponents `j + M, j + 2M, ...`.
    pub fn fourier_coeffs(&self) -> Vec<Complex64> {
        let mut buf = self.values.clone();
        FftPlanner::new().plan_fft_forward(self.size).process(&mut buf);
        let scale = 1.0 / self.size as f64;
        buf.iter_mut().for_each(|c| *c *= scale);
        buf
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_matches_horner() {
        let f = LaurentPolynomial::new(
            -2,
            vec![
                Complex64::new(1.0, 0.5),
                Complex64::new(0.0, -1.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(-0.25, 0.0),
            ],
        );
        let g = CircleGrid::sample(&f, 32).unwrap();
        for (m, v) in g.values().iter().enumerate() {
            assert!((v - f.eval(node(m, 32))).norm() < 1e-13);
        }
    }

    #[test]
    fn fourier_coeffs_invert_sampling() {
        let f = LaurentPolynomial::from_real_taylor(&[0.5, 1.0, -3.0]);
        let g = CircleGrid::sample(&f, 16).unwrap();
        let c = g.fourier_coeffs();
        assert!((c[2] - Complex64::new(-3.0, 0.0)).norm() < 1e-14);
        assert!(c[5].norm() < 1e-14);
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert!(CircleGrid::from_fn(12, |z| z).is_err());
    }
}
