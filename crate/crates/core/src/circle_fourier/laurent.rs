use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Finitely supported two-sided coefficient sequence `Σ c_j z^j`.
///
/// `coeffs[i]` is the coefficient of `z^(lo + i)`. The coefficient vector is
/// never empty; the zero polynomial is stored as a single zero at exponent 0.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial {
    lo: i64,
    coeffs: Vec<Complex64>,
}

impl LaurentPolynomial {
    pub fn new(lo: i64, coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            return Self::zero();
        }
        Self { lo, coeffs }
    }

    /// Polynomial from Taylor coefficients `c_0, c_1, ...`.
    pub fn from_taylor(coeffs: Vec<Complex64>) -> Self {
        Self::new(0, coeffs)
    }

    pub fn from_real_taylor(coeffs: &[f64]) -> Self {
        Self::from_taylor(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self {
            lo: 0,
            coeffs: vec![Complex64::new(0.0, 0.0)],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self { lo: 0, coeffs: vec![c] }
    }

    pub fn monomial(exponent: i64, c: Complex64) -> Self {
        Self {
            lo: exponent,
            coeffs: vec![c],
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    /// `hi - lo`.
    pub fn span(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^j`; zero outside the stored range.
    pub fn coeff(&self, j: i64) -> Complex64 {
        if j < self.lo || j > self.hi() {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[(j - self.lo) as usize]
    }

    /// Iterator over `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.lo + i as i64, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// Trims exact zeros from both ends.
    pub fn normalize(mut self) -> Self {
        let first = self.coeffs.iter().position(|c| *c != Complex64::new(0.0, 0.0));
        let Some(first) = first else {
            return Self::zero();
        };
        let last = self
            .coeffs
            .iter()
            .rposition(|c| *c != Complex64::new(0.0, 0.0))
            .unwrap();
        self.coeffs.truncate(last + 1);
        self.coeffs.drain(..first);
        self.lo += first as i64;
        self
    }

    /// Restriction to exponents in `[lo, hi]` (the result always spans exactly that range).
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty exponent range");
        Self::new(lo, (lo..=hi).map(|j| self.coeff(j)).collect())
    }

    /// Multiplication by `z^m`.
    pub fn shift(&self, m: i64) -> Self {
        Self {
            lo: self.lo + m,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `conj(f(1 / conj(z)))`: the coefficient of `z^j` becomes `conj(c_{-j})`.
    pub fn reflect(&self) -> Self {
        Self {
            lo: -self.hi(),
            coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 && self.lo == 0 {
            return Self::zero();
        }
        let coeffs = self
            .terms()
            .map(|(j, c)| c * j as f64)
            .collect::<Vec<_>>();
        Self::new(self.lo - 1, coeffs)
    }

    /// `Σ |c_j|^2`.
    pub fn coeff_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Horner evaluation; `z = 0` is only allowed when `lo >= 0`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let inner = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        match self.lo {
            0 => inner,
            lo if lo > 0 => inner * z.powi(lo as i32),
            lo => inner / z.powi((-lo) as i32),
        }
    }

    /// Value and first two derivatives of the shifted polynomial `z^{-lo} f(z)`.
    pub(crate) fn eval_shifted_with_derivatives(&self, z: Complex64) -> [Complex64; 3] {
        let zero = Complex64::new(0.0, 0.0);
        let (mut p, mut d1, mut d2) = (zero, zero, zero);
        for &c in self.coeffs.iter().rev() {
            d2 = d2 * z + d1 * 2.0;
            d1 = d1 * z + p;
            p = p * z + c;
        }
        [p, d1, d2]
    }

    pub fn to_triples(&self) -> Vec<(i64, f64, f64)> {
        self.terms().map(|(j, c)| (j, c.re, c.im)).collect()
    }

    /// Builds a polynomial from `[exponent, re, im]` triples; repeated exponents add.
    pub fn from_triples(triples: &[(i64, f64, f64)]) -> Result<Self> {
        if triples.is_empty() {
            return Ok(Self::zero());
        }
        let lo = triples.iter().map(|t| t.0).min().unwrap();
        let hi = triples.iter().map(|t| t.0).max().unwrap();
        let span = (hi - lo) as usize;
        if span > 1 << 26 {
            return Err(Error::InvalidInput(format!(
                "coefficient span {span} too large"
            )));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); span + 1];
        for &(j, re, im) in triples {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "non-finite coefficient at exponent {j}"
                )));
            }
            coeffs[(j - lo) as usize] += Complex64::new(re, im);
        }
        Ok(Self::new(lo, coeffs))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().max(rhs.hi());
        LaurentPolynomial::new(lo, (lo..=hi).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().max(rhs.hi());
        LaurentPolynomial::new(lo, (lo..=hi).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    /// Product of Laurent polynomials (coefficient convolution).
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (k, b) in rhs.coeffs.iter().enumerate() {
                out[i + k] += a * b;
            }
        }
        LaurentPolynomial::new(self.lo + rhs.lo, out)
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_triples().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(i64, f64, f64)>::deserialize(deserializer)?;
        Self::from_triples(&triples).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn normalize_trims_both_ends() {
        let p = LaurentPolynomial::new(-2, vec![c(0.0), c(1.0), c(0.0), c(2.0), c(0.0)]).normalize();
        assert_eq!(p.lo(), -1);
        assert_eq!(p.hi(), 1);
        assert_eq!(p.span(), 2);
        assert!(LaurentPolynomial::new(3, vec![c(0.0)]).normalize().is_zero());
    }

    #[test]
    fn reflect_maps_exponents_and_conjugates() {
        let p = LaurentPolynomial::new(-1, vec![Complex64::new(1.0, 1.0), c(0.0), Complex64::new(0.0, 2.0)]);
        let r = p.reflect();
        assert_eq!(r.lo(), -1);
        assert_eq!(r.coeff(-1), Complex64::new(0.0, -2.0));
        assert_eq!(r.coeff(1), Complex64::new(1.0, -1.0));
        // on the circle |reflect(f)| = |f|
        let z = Complex64::from_polar(1.0, 0.7);
        assert!((r.eval(z).norm() - p.eval(z).norm()).abs() < 1e-14);
    }

    #[test]
    fn eval_handles_negative_exponents() {
        let p = LaurentPolynomial::new(-2, vec![c(1.0), c(0.0), c(3.0)]);
        let z = Complex64::new(0.5, 0.0);
        assert!((p.eval(z) - c(7.0)).norm() < 1e-14);
    }

    #[test]
    fn derivative_and_shifted_derivatives_agree() {
        let p = LaurentPolynomial::from_real_taylor(&[1.0, -2.0, 0.5, 3.0]);
        let z = Complex64::new(0.3, -0.4);
        let [v, d1, d2] = p.eval_shifted_with_derivatives(z);
        assert!((v - p.eval(z)).norm() < 1e-14);
        assert!((d1 - p.derivative().eval(z)).norm() < 1e-14);
        assert!((d2 - p.derivative().derivative().eval(z)).norm() < 1e-13);
    }

    #[test]
    fn product_and_json_triples() {
        let a = LaurentPolynomial::new(-1, vec![c(1.0), c(1.0)]);
        let sq = &a * &a;
        assert_eq!(sq.lo(), -2);
        assert_eq!(sq.coeffs(), &[c(1.0), c(2.0), c(1.0)]);
        let json = serde_json::to_string(&sq).unwrap();
        assert_eq!(json, "[[-2,1.0,0.0],[-1,2.0,0.0],[0,1.0,0.0]]");
        let back: LaurentPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sq);
    }
}
