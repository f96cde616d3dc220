use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::RwLock;

use num_complex::Complex64;
use rug::float::Constant;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::blaschke::{BlaschkeProduct, ZeroSet};
use crate::circle_fourier::{CircleGrid, LaurentPolynomial};
use crate::error::{Error, Result};
use crate::xlinalg::{from_c64, PrecisionTag};

/// Nodes used to certify that `ψ` is bounded away from zero and zero-free.
pub const WEIGHT_CHECK_NODES: usize = 4096;
const MAX_QUADRATURE_GRID: usize = 1 << 20;

/// Outer weight `ψ`, a polynomial zero-free on the closed disk with `ψ(0) > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct OuterWeight {
    psi: LaurentPolynomial,
    label: String,
    delta_floor: f64,
}

impl OuterWeight {
    pub fn new(taylor: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        if taylor.is_empty() {
            return Err(Error::InvalidInput("psi: no coefficients".into()));
        }
        let psi0 = taylor[0];
        if psi0.im != 0.0 || !(psi0.re > 0.0) {
            return Err(Error::InvalidInput(format!(
                "psi: psi(0) must be real and positive, got {psi0}"
            )));
        }
        if taylor.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("psi: non-finite coefficient".into()));
        }
        let psi = LaurentPolynomial::from_taylor(taylor).normalize();
        let size = WEIGHT_CHECK_NODES.max((4 * (psi.span() + 1)).next_power_of_two());
        let grid = CircleGrid::sample(&psi, size)?;
        let delta_floor = grid.values().iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
        if !(delta_floor > 0.0) {
            return Err(Error::InvalidInput("psi: vanishes on the circle".into()));
        }
        // argument principle: winding number of ψ(𝕋) around 0 counts zeros in 𝔻
        let vals = grid.values();
        let winding: f64 = (0..size)
            .map(|m| (vals[(m + 1) % size] / vals[m]).arg())
            .sum::<f64>()
            / TAU;
        if winding.round() != 0.0 {
            return Err(Error::InvalidInput(format!(
                "psi: has {} zero(s) in the disk, not outer",
                winding.round()
            )));
        }
        Ok(Self {
            psi,
            label: label.into(),
            delta_floor,
        })
    }

    pub fn unit() -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0)], "1").expect("constant weight is valid")
    }

    pub fn from_real(taylor: &[f64], label: impl Into<String>) -> Result<Self> {
        Self::new(taylor.iter().map(|&c| Complex64::new(c, 0.0)).collect(), label)
    }

    pub fn psi(&self) -> &LaurentPolynomial {
        &self.psi
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `min |ψ|` over the check grid.
    pub fn delta_floor(&self) -> f64 {
        self.delta_floor
    }

    pub fn psi0(&self) -> f64 {
        self.psi.coeff(0).re
    }

    pub fn is_constant(&self) -> bool {
        self.psi.span() == 0 && self.psi.lo() == 0
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.psi.eval(z)
    }

    /// `ψ_*(z) = conj(ψ(1/z̄))`.
    pub fn eval_star(&self, z: Complex64) -> Complex64 {
        self.psi.reflect().eval(z)
    }

    pub fn eval_mp(&self, z: &Complex, prec: PrecisionTag) -> Complex {
        let mut acc = Complex::new(prec.bits());
        for c in self.psi.coeffs().iter().rev() {
            acc *= z;
            acc += from_c64(prec, *c);
        }
        acc
    }

    /// `ψ_*(z) = Σ conj(ψ_j) z^{-j}` at extended precision.
    pub fn eval_star_mp(&self, z: &Complex, prec: PrecisionTag) -> Complex {
        let inv = Complex::with_val(prec.bits(), 1) / z;
        let mut acc = Complex::new(prec.bits());
        for c in self.psi.coeffs().iter().rev() {
            acc *= &inv;
            acc += from_c64(prec, c.conj());
        }
        acc
    }

    /// `Σ |ψ_j| r^j`, a bound for `|ψ|` on `|z| = r`.
    pub fn modulus_bound(&self, r: f64) -> f64 {
        self.psi.terms().map(|(j, c)| c.norm() * r.powi(j as i32)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointMass {
    pub z: Complex64,
    pub mu: f64,
}

/// Point masses `μ_k δ_{z_k}` with `|z_k| > 1`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointSpectrum {
    masses: Vec<PointMass>,
}

impl PointSpectrum {
    pub fn new(masses: Vec<PointMass>) -> Result<Self> {
        for (i, m) in masses.iter().enumerate() {
            if !(m.z.norm() > 1.0) || !m.z.norm().is_finite() {
                return Err(Error::InvalidInput(format!(
                    "masses[{i}]: point {} must lie outside the closed disk",
                    m.z
                )));
            }
            if !(m.mu > 0.0) || !m.mu.is_finite() {
                return Err(Error::InvalidInput(format!("masses[{i}]: weight must be positive, got {}", m.mu)));
            }
        }
        Ok(Self { masses })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(Complex64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(z, mu)| PointMass { z, mu }).collect())
    }

    pub fn masses(&self) -> &[PointMass] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    /// `Σ (|z_k| - 1)`.
    pub fn blaschke_sum(&self) -> f64 {
        self.masses.iter().fold(0.0, |acc, m| acc + (m.z.norm() - 1.0))
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().fold(0.0, |acc, m| acc + m.mu)
    }

    pub fn reflected(&self) -> ReflectedBlaschke {
        ReflectedBlaschke::new(self.masses.iter().map(|m| m.z).collect())
    }

    /// The spectrum with every point multiplied by `ω`.
    pub fn rotated(&self, omega: Complex64) -> Result<Self> {
        Self::new(
            self.masses
                .iter()
                .map(|m| PointMass { z: m.z * omega, mu: m.mu })
                .collect(),
        )
    }
}

/// Blaschke product on the reflected points `ζ_k = 1/z̄_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReflectedBlaschke {
    points: Vec<Complex64>,
    product: BlaschkeProduct,
}

impl ReflectedBlaschke {
    /// `points` are the outer points `z_k`.
    pub fn new(points: Vec<Complex64>) -> Self {
        let zeros = ZeroSet::inside(points.iter().map(|z| 1.0 / z.conj()).collect())
            .expect("reflection of outer points lies inside");
        Self {
            points,
            product: BlaschkeProduct::new(zeros).expect("inside zero set"),
        }
    }

    pub fn product(&self) -> &BlaschkeProduct {
        &self.product
    }

    pub fn outer_points(&self) -> &[Complex64] {
        &self.points
    }

    /// `B(0) = Π 1/|z_k|`.
    pub fn value_at_zero(&self) -> f64 {
        self.points.iter().map(|z| 1.0 / z.norm()).product()
    }

    /// `B_*(z) = conj(B(1/z̄)) = Π (z - z_k) / (|z_k| (z - ζ_k))` at extended precision.
    pub fn eval_star_mp(&self, z: &Complex, prec: PrecisionTag) -> Complex {
        let mut acc = Complex::with_val(prec.bits(), 1);
        for (i, &zk) in self.points.iter().enumerate() {
            acc *= self.star_factor(i, z, prec);
            let _ = zk;
        }
        acc
    }

    fn star_factor(&self, i: usize, z: &Complex, prec: PrecisionTag) -> Complex {
        let bits = prec.bits();
        let zk = from_c64(prec, self.points[i]);
        let zeta = Complex::with_val(bits, 1) / zk.clone().conj();
        let modulus = Float::with_val(bits, zk.abs_ref());
        let num = Complex::with_val(bits, z - &zk);
        let den = Complex::with_val(bits, z - &zeta) * modulus;
        num / den
    }

    /// `(B_*)'(z_i)`; zero when `z_i` is a repeated point.
    pub fn star_derivative_at_point(&self, i: usize, prec: PrecisionTag) -> Complex {
        let bits = prec.bits();
        let zi = from_c64(prec, self.points[i]);
        let zeta = Complex::with_val(bits, 1) / zi.clone().conj();
        let modulus = Float::with_val(bits, zi.abs_ref());
        let mut acc = Complex::with_val(bits, 1) / (Complex::with_val(bits, &zi - &zeta) * modulus);
        for j in 0..self.points.len() {
            if j != i {
                acc *= self.star_factor(j, &zi, prec);
            }
        }
        acc
    }
}

/// Table of `∫ z^m |ψ|^{-2} dm` for `0 <= m <= m_max`.
#[derive(Clone, Debug)]
struct AcTable {
    values: Vec<Complex>,
    grid: usize,
}

/// `dμ = dm/|ψ|² + Σ μ_k δ_{z_k}` at a working precision.
#[derive(Debug)]
pub struct MeasureSpec {
    weight: OuterWeight,
    spectrum: PointSpectrum,
    precision: PrecisionTag,
    // keyed by precision bits; concurrent readers, serialized idempotent fills
    ac_cache: RwLock<HashMap<u32, AcTable>>,
}

impl Clone for MeasureSpec {
    fn clone(&self) -> Self {
        Self::new(self.weight.clone(), self.spectrum.clone(), self.precision)
    }
}

impl PartialEq for MeasureSpec {
    fn eq(&self, other: &Self) -> bool {
        self.weight == other.weight && self.spectrum == other.spectrum && self.precision == other.precision
    }
}

/// On-disk measure description.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureFile {
    #[serde(default = "MeasureFile::unit_psi")]
    pub psi: Vec<[f64; 2]>,
    #[serde(default)]
    pub masses: Vec<[f64; 3]>,
    #[serde(default = "MeasureFile::default_bits")]
    pub precision_bits: u32,
}

impl MeasureFile {
    fn unit_psi() -> Vec<[f64; 2]> {
        vec![[1.0, 0.0]]
    }

    fn default_bits() -> u32 {
        256
    }
}

impl MeasureSpec {
    pub fn new(weight: OuterWeight, spectrum: PointSpectrum, precision: PrecisionTag) -> Self {
        Self {
            weight,
            spectrum,
            precision,
            ac_cache: RwLock::new(HashMap::new()),
        }
    }

    /// Lebesgue measure plus the given masses.
    pub fn with_masses(pairs: &[(Complex64, f64)], precision: PrecisionTag) -> Result<Self> {
        Ok(Self::new(OuterWeight::unit(), PointSpectrum::from_pairs(pairs)?, precision))
    }

    pub fn from_file(file: &MeasureFile) -> Result<Self> {
        let weight = OuterWeight::new(
            file.psi.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
            "file",
        )?;
        let spectrum = PointSpectrum::new(
            file.masses
                .iter()
                .map(|m| PointMass {
                    z: Complex64::new(m[0], m[1]),
                    mu: m[2],
                })
                .collect(),
        )?;
        let precision = PrecisionTag::new(file.precision_bits)
            .map_err(|_| Error::InvalidInput(format!("precision_bits: unsupported value {}", file.precision_bits)))?;
        Ok(Self::new(weight, spectrum, precision))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MeasureFile = crate::error::parse_json(text)?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> MeasureFile {
        MeasureFile {
            psi: self.weight.psi().coeffs().iter().map(|c| [c.re, c.im]).collect(),
            masses: self.spectrum.masses().iter().map(|m| [m.z.re, m.z.im, m.mu]).collect(),
            precision_bits: self.precision.bits(),
        }
    }

    pub fn weight(&self) -> &OuterWeight {
        &self.weight
    }

    pub fn spectrum(&self) -> &PointSpectrum {
        &self.spectrum
    }

    pub fn precision(&self) -> PrecisionTag {
        self.precision
    }

    pub fn with_precision(&self, precision: PrecisionTag) -> Self {
        let out = Self::new(self.weight.clone(), self.spectrum.clone(), precision);
        // cache is keyed by precision, so entries carry over unchanged
        if let (Ok(src), Ok(mut dst)) = (self.ac_cache.read(), out.ac_cache.write()) {
            dst.extend(src.iter().map(|(k, v)| (*k, v.clone())));
        }
        out
    }

    /// Limit value `B(0)ψ(0)` of the leading coefficients.
    pub fn target(&self) -> f64 {
        self.spectrum.reflected().value_at_zero() * self.weight.psi0()
    }

    /// `∫ z^m |ψ|^{-2} dm` at precision `prec`.
    pub fn ac_moment_at(&self, m: i64, prec: PrecisionTag) -> Result<Complex> {
        let idx = m.unsigned_abs() as usize;
        {
            let cache = self.ac_cache.read().expect("moment cache poisoned");
            if let Some(t) = cache.get(&prec.bits()) {
                if idx < t.values.len() {
                    let v = t.values[idx].clone();
                    return Ok(if m < 0 { v.conj() } else { v });
                }
            }
        }
        let mut cache = self.ac_cache.write().expect("moment cache poisoned");
        let have = cache.get(&prec.bits()).map_or(0, |t| t.values.len());
        if idx >= have {
            let table = self.compute_ac_table((2 * idx).max(64), prec)?;
            cache.insert(prec.bits(), table);
        }
        let v = cache[&prec.bits()].values[idx].clone();
        Ok(if m < 0 { v.conj() } else { v })
    }

    pub fn ac_moment(&self, m: i64) -> Result<Complex> {
        self.ac_moment_at(m, self.precision)
    }

    /// Quadrature grid size used for the current AC table at `prec` (0 if none).
    pub fn ac_grid(&self, prec: PrecisionTag) -> usize {
        self.ac_cache
            .read()
            .ok()
            .and_then(|c| c.get(&prec.bits()).map(|t| t.grid))
            .unwrap_or(0)
    }

    fn compute_ac_table(&self, m_max: usize, prec: PrecisionTag) -> Result<AcTable> {
        let bits = prec.bits();
        if self.weight.is_constant() {
            let p0 = Float::with_val(bits, self.weight.psi0());
            let mut values = vec![Complex::new(bits); m_max + 1];
            values[0] = Complex::with_val(bits, (Float::with_val(bits, 1) / Float::with_val(bits, &p0 * &p0), 0));
            return Ok(AcTable { values, grid: 1 });
        }
        let tol = Float::with_val(bits, Float::i_exp(1, -(bits as i32) + 16));
        let mut size = (4 * (m_max + 1)).next_power_of_two().max(256);
        let mut prev = self.ac_quadrature(m_max, size, prec);
        loop {
            size *= 2;
            if size > MAX_QUADRATURE_GRID {
                return Err(Error::QuadratureNonConvergence {
                    grid: size / 2,
                    change: f64::NAN,
                });
            }
            let next = self.ac_quadrature(m_max, size, prec);
            let scale = Float::with_val(bits, next[0].abs_ref());
            let change = prev
                .iter()
                .zip(&next)
                .map(|(a, b)| Float::with_val(bits, Complex::with_val(bits, a - b).abs_ref()))
                .fold(Float::new(bits), |acc, d| acc.max(&d));
            if change <= Float::with_val(bits, &tol * &scale) {
                return Ok(AcTable { values: next, grid: size });
            }
            prev = next;
        }
    }

    /// Trapezoid rule `(1/M) Σ_l |ψ(ω^l)|^{-2} ω^{lm}` for `0 <= m <= m_max`.
    fn ac_quadrature(&self, m_max: usize, size: usize, prec: PrecisionTag) -> Vec<Complex> {
        let bits = prec.bits();
        let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
        let mut sums = vec![Complex::new(bits); m_max + 1];
        for l in 0..size {
            let angle = Float::with_val(bits, &two_pi * l as u32) / size as u32;
            let (s, c) = angle.sin_cos(Float::new(bits));
            let node = Complex::with_val(bits, (c, s));
            let psi = self.weight.eval_mp(&node, prec);
            let modulus_sq = Float::with_val(bits, psi.real().square_ref()) + Float::with_val(bits, psi.imag().square_ref());
            let w = Float::with_val(bits, 1) / modulus_sq;
            let mut power = Complex::with_val(bits, (w, 0));
            for sum in sums.iter_mut() {
                *sum += &power;
                power *= &node;
            }
        }
        for sum in sums.iter_mut() {
            *sum /= size as u32;
        }
        sums
    }

    /// `⟨z^j, z^k⟩ = ∫ z^j z̄^k dμ`.
    pub fn moment(&self, j: i64, k: i64) -> Result<Complex> {
        let prec = self.precision;
        let mut acc = self.ac_moment(j - k)?;
        for m in self.spectrum.masses() {
            let z = from_c64(prec, m.z);
            let zj = pow_mp(&z, j, prec);
            let zk = pow_mp(&z, k, prec).conj();
            acc += zj * zk * Float::with_val(prec.bits(), m.mu);
        }
        Ok(acc)
    }
}

/// `z^e` for any integer `e` by repeated squaring.
pub(crate) fn pow_mp(z: &Complex, e: i64, prec: PrecisionTag) -> Complex {
    let bits = prec.bits();
    let base = if e < 0 {
        Complex::with_val(bits, 1) / z
    } else {
        z.clone()
    };
    let mut result = Complex::with_val(bits, 1);
    let mut b = base;
    let mut n = e.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            result *= &b;
        }
        b.square_mut();
        n >>= 1;
    }
    result
}
