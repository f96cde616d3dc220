use num_complex::Complex64;
use rug::Complex;

use crate::circle_fourier::LaurentPolynomial;
use crate::xlinalg::{to_c64, PrecisionTag};

use super::measure::pow_mp;

/// Laurent polynomial with extended-precision coefficients `Σ c_j z^{lo + j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MpLaurent {
    lo: i64,
    coeffs: Vec<Complex>,
    prec: PrecisionTag,
}

impl MpLaurent {
    pub fn new(lo: i64, coeffs: Vec<Complex>, prec: PrecisionTag) -> Self {
        Self { lo, coeffs, prec }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn precision(&self) -> PrecisionTag {
        self.prec
    }

    /// Coefficient of `z^j` (zero outside the stored range).
    pub fn coeff(&self, j: i64) -> Complex {
        if j < self.lo || j > self.hi() {
            return Complex::new(self.prec.bits());
        }
        self.coeffs[(j - self.lo) as usize].clone()
    }

    pub fn eval(&self, z: &Complex) -> Complex {
        let mut acc = Complex::new(self.prec.bits());
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c;
        }
        acc * pow_mp(z, self.lo, self.prec)
    }

    /// Rounded to double precision.
    pub fn to_f64(&self) -> LaurentPolynomial {
        LaurentPolynomial::new(self.lo, self.coeffs.iter().map(to_c64).collect())
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        to_c64(&self.eval(&crate::xlinalg::from_c64(self.prec, z)))
    }
}
