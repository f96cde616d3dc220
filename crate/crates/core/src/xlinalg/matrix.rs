use num_complex::Complex64;
use rug::{Assign, Complex, Float};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mantissa width of extended-precision scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrecisionTag(u32);

impl PrecisionTag {
    pub const P53: Self = Self(53);
    pub const P128: Self = Self(128);
    pub const P256: Self = Self(256);
    pub const P512: Self = Self(512);
    const LADDER: [Self; 4] = [Self::P53, Self::P128, Self::P256, Self::P512];

    pub fn new(bits: u32) -> Result<Self> {
        Self::LADDER
            .iter()
            .copied()
            .find(|p| p.0 == bits)
            .ok_or_else(|| Error::InvalidInput(format!("precision must be 53, 128, 256 or 512 bits, got {bits}")))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Next rung of the escalation ladder.
    pub fn next(self) -> Option<Self> {
        Self::LADDER.iter().copied().find(|p| p.0 > self.0)
    }

    /// `2^{-bits/2}`, the tolerance used for route-equivalence checks.
    pub fn half_precision_eps(self) -> f64 {
        2f64.powi(-(self.0 as i32) / 2)
    }
}

impl TryFrom<u32> for PrecisionTag {
    type Error = Error;

    fn try_from(bits: u32) -> Result<Self> {
        Self::new(bits)
    }
}

impl From<PrecisionTag> for u32 {
    fn from(p: PrecisionTag) -> u32 {
        p.0
    }
}

impl Default for PrecisionTag {
    fn default() -> Self {
        Self::P256
    }
}

pub fn from_c64(prec: PrecisionTag, z: Complex64) -> Complex {
    Complex::with_val(prec.bits(), (z.re, z.im))
}

pub fn to_c64(z: &Complex) -> Complex64 {
    Complex64::new(z.real().to_f64(), z.imag().to_f64())
}

/// Dense Hermitian matrix, column-major.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    prec: PrecisionTag,
    entries: Vec<Complex>,
}

impl HermitianMatrix {
    /// Builds from the lower triangle of `f(i, j)` (`i >= j`) and mirrors the
    /// conjugate into the upper triangle; diagonal imaginary parts are dropped.
    pub fn from_lower(dim: usize, prec: PrecisionTag, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let zero = Complex::new(prec.bits());
        let mut entries = vec![zero; dim * dim];
        for j in 0..dim {
            for i in j..dim {
                let mut v = f(i, j);
                v.set_prec(prec.bits());
                if i == j {
                    v.mut_imag().assign(0);
                    entries[i + j * dim] = v;
                } else {
                    entries[j + i * dim] = v.clone().conj();
                    entries[i + j * dim] = v;
                }
            }
        }
        Self { dim, prec, entries }
    }

    /// Builds from full rows, rejecting inputs that are not Hermitian to `tol`.
    pub fn from_rows(rows: &[Vec<Complex64>], prec: PrecisionTag, tol: f64) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidInput("matrix rows must form a square".into()));
        }
        for i in 0..dim {
            for j in 0..=i {
                if (rows[i][j] - rows[j][i].conj()).norm() > tol {
                    return Err(Error::InvalidInput(format!("entry ({i}, {j}) breaks Hermitian symmetry")));
                }
            }
        }
        Ok(Self::from_lower(dim, prec, |i, j| from_c64(prec, rows[i][j])))
    }

    pub fn identity(dim: usize, prec: PrecisionTag) -> Self {
        Self::from_lower(dim, prec, |i, j| {
            Complex::with_val(prec.bits(), if i == j { 1 } else { 0 })
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn precision(&self) -> PrecisionTag {
        self.prec
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex {
        &self.entries[i + j * self.dim]
    }

    pub fn get_c64(&self, i: usize, j: usize) -> Complex64 {
        to_c64(self.get(i, j))
    }

    /// Leading principal `m × m` submatrix.
    pub fn principal(&self, m: usize) -> Self {
        assert!(m <= self.dim);
        Self::from_lower(m, self.prec, |i, j| self.get(i, j).clone())
    }

    /// Same entries at another precision.
    pub fn with_precision(&self, prec: PrecisionTag) -> Self {
        Self::from_lower(self.dim, prec, |i, j| self.get(i, j).clone())
    }

    pub fn frobenius_norm(&self) -> Float {
        let mut acc = Float::new(self.prec.bits());
        for e in &self.entries {
            acc += e.clone().norm().real();
        }
        acc.sqrt()
    }

    /// Largest `|G_ij - conj(G_ji)|`; zero by construction.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..=i {
                let d = Complex::with_val(self.prec.bits(), self.get(i, j) - self.get(j, i).clone().conj());
                worst = worst.max(d.abs().real().to_f64());
            }
        }
        worst
    }
}
