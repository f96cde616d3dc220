use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance to a pole below which evaluation is refused.
pub const POLE_GUARD: f64 = 9.094_947_017_729_282e-13; // 2^-40

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiskSide {
    InsideDisk,
    OutsideDisk,
}

/// Finite multiset of zeros on one side of the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    zeros: Vec<Complex64>,
    side: DiskSide,
}

impl ZeroSet {
    pub fn new(zeros: Vec<Complex64>, side: DiskSide) -> Result<Self> {
        for (i, z) in zeros.iter().enumerate() {
            let r = z.norm();
            let ok = r.is_finite()
                && match side {
                    DiskSide::InsideDisk => r < 1.0,
                    DiskSide::OutsideDisk => r > 1.0,
                };
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "zero #{i} = {z} has modulus {r}, not {side:?}"
                )));
            }
        }
        Ok(Self { zeros, side })
    }

    pub fn inside(zeros: Vec<Complex64>) -> Result<Self> {
        Self::new(zeros, DiskSide::InsideDisk)
    }

    pub fn outside(zeros: Vec<Complex64>) -> Result<Self> {
        Self::new(zeros, DiskSide::OutsideDisk)
    }

    /// Parses the `[[re, im], ...]` zero-set file format.
    pub fn from_json(text: &str, side: DiskSide) -> Result<Self> {
        let pairs: Vec<[f64; 2]> = serde_json::from_str(text)?;
        Self::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect(), side)
    }

    pub fn to_json(&self) -> String {
        let pairs: Vec<[f64; 2]> = self.zeros.iter().map(|z| [z.re, z.im]).collect();
        serde_json::to_string(&pairs).expect("finite floats serialize")
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn side(&self) -> DiskSide {
        self.side
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// `Σ (1 - |z|)` inside or `Σ (|z| - 1)` outside.
    pub fn blaschke_sum(&self) -> f64 {
        self.zeros
            .iter()
            .map(|z| match self.side {
                DiskSide::InsideDisk => 1.0 - z.norm(),
                DiskSide::OutsideDisk => z.norm() - 1.0,
            })
            .sum()
    }

    /// `z ↦ 1/z̄`, which swaps the side of the circle.
    pub fn reflect(&self) -> Self {
        Self {
            zeros: self.zeros.iter().map(|z| 1.0 / z.conj()).collect(),
            side: match self.side {
                DiskSide::InsideDisk => DiskSide::OutsideDisk,
                DiskSide::OutsideDisk => DiskSide::InsideDisk,
            },
        }
    }
}

/// Unimodular normalizer `-|a|/a` of the factor `(z - a)/(1 - āz)`, `1` for `a = 0`.
pub(crate) fn factor_rotation(a: Complex64) -> Complex64 {
    if a == Complex64::new(0.0, 0.0) {
        Complex64::new(1.0, 0.0)
    } else {
        -a.norm() / a
    }
}

/// Finite Blaschke product `rotation · Π (-|z_k|/z_k)(z - z_k)/(1 - z̄_k z)`.
///
/// Each factor is normalized so that its value at 0 is `|z_k| >= 0`
/// (the factor for `z_k = 0` is `z`).
#[derive(Clone, Debug, PartialEq)]
pub struct BlaschkeProduct {
    zeros: ZeroSet,
    rotation: Complex64,
}

impl BlaschkeProduct {
    pub fn new(zeros: ZeroSet) -> Result<Self> {
        if zeros.side() != DiskSide::InsideDisk {
            return Err(Error::InvalidInput(
                "a Blaschke product needs zeros inside the disk".into(),
            ));
        }
        Ok(Self {
            zeros,
            rotation: Complex64::new(1.0, 0.0),
        })
    }

    pub fn with_rotation(mut self, rotation: Complex64) -> Result<Self> {
        if (rotation.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("rotation {rotation} is not unimodular")));
        }
        self.rotation = rotation;
        Ok(self)
    }

    /// Resets the rotation so that `B(0) = Π|z_k| >= 0`.
    pub fn normalize_positive(mut self) -> Self {
        self.rotation = Complex64::new(1.0, 0.0);
        self
    }

    pub fn zeros(&self) -> &ZeroSet {
        &self.zeros
    }

    pub fn rotation(&self) -> Complex64 {
        self.rotation
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// `B(0)` for the positive normalization: `Π |z_k|`.
    pub fn value_at_zero(&self) -> Complex64 {
        self.rotation * self.zeros.zeros().iter().map(|z| z.norm()).product::<f64>()
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = self.rotation;
        for &a in self.zeros.zeros() {
            let den = Complex64::new(1.0, 0.0) - a.conj() * z;
            if den.norm() < POLE_GUARD {
                return Err(Error::PoleProximity {
                    point: z.to_string(),
                    distance: den.norm(),
                });
            }
            acc *= factor_rotation(a) * (z - a) / den;
        }
        Ok(acc)
    }

    /// `B'(z)` via the logarithmic derivative summed over factors.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        // product rule without dividing by B, so z may be a zero
        let mut value = self.rotation;
        let mut deriv = Complex64::new(0.0, 0.0);
        for &a in self.zeros.zeros() {
            let den = Complex64::new(1.0, 0.0) - a.conj() * z;
            if den.norm() < POLE_GUARD {
                return Err(Error::PoleProximity {
                    point: z.to_string(),
                    distance: den.norm(),
                });
            }
            let u = factor_rotation(a);
            let f = u * (z - a) / den;
            let fp = u * (1.0 - a.norm_sqr()) / (den * den);
            deriv = deriv * f + value * fp;
            value *= f;
        }
        Ok(deriv)
    }
}

/// Pointwise value of a finite Blaschke product.
pub fn eval_blaschke(b: &BlaschkeProduct, z: Complex64) -> Result<Complex64> {
    b.eval(z)
}
