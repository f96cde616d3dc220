use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::product::{factor_rotation, BlaschkeProduct, DiskSide, ZeroSet, POLE_GUARD};
use crate::circle_fourier::{
    besov_seminorm, grid_size, sup_norm, CircleGrid, LaurentPolynomial, Lp, DEFAULT_OVERSAMPLE,
};
use crate::error::{Error, Result};

const MAX_GRID: usize = 1 << 24;

/// The outer corrector `φ₀(z) = Π (1 - z̄_k z)/(1 - z̄_k z/R²)` for a set of
/// zeros in the disk, together with the dilation radius `R`.
///
/// `Bφ₀ = R^k B̃` where `B̃` is the Blaschke product with the same zeros for
/// the disk of radius `R`; all certified evaluations go through that form.
#[derive(Clone, Debug, PartialEq)]
pub struct DilatedCorrector {
    zeros: ZeroSet,
    radius: f64,
    epsilon: Option<f64>,
}

/// Corrector with `R = 1 + ε/k`, `k` the number of zeros.
pub fn build_corrector(zeros: ZeroSet, epsilon: f64) -> Result<DilatedCorrector> {
    if zeros.is_empty() {
        return Err(Error::EmptyZeroSet);
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidInput(format!("epsilon must lie in (0, 1], got {epsilon}")));
    }
    let radius = 1.0 + epsilon / zeros.len() as f64;
    let mut c = DilatedCorrector::with_radius(zeros, radius)?;
    c.epsilon = Some(epsilon);
    Ok(c)
}

impl DilatedCorrector {
    /// Corrector for an explicit radius `R > 1`; the zero set may be empty (`φ₀ ≡ 1`).
    pub fn with_radius(zeros: ZeroSet, radius: f64) -> Result<Self> {
        if zeros.side() != DiskSide::InsideDisk {
            return Err(Error::InvalidInput("corrector zeros must lie inside the disk".into()));
        }
        if !(radius > 1.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("dilation radius must exceed 1, got {radius}")));
        }
        Ok(Self {
            zeros,
            radius,
            epsilon: None,
        })
    }

    pub fn zeros(&self) -> &ZeroSet {
        &self.zeros
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `ε` when built by [`build_corrector`].
    pub fn epsilon(&self) -> Option<f64> {
        self.epsilon
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn blaschke(&self) -> BlaschkeProduct {
        BlaschkeProduct::new(self.zeros.clone()).expect("zeros checked inside")
    }

    /// `R^k`, the modulus of `Bφ₀` on the circle `|z| = R` and its a-priori bound on 𝕋.
    pub fn dilation_factor(&self) -> f64 {
        self.radius.powi(self.degree() as i32)
    }

    /// Smallest pole modulus `R²/|z_k|` of `φ₀` (infinite when every zero is 0).
    pub fn min_pole_modulus(&self) -> f64 {
        let m = self.zeros.zeros().iter().map(|z| z.norm()).fold(0.0, f64::max);
        if m == 0.0 {
            f64::INFINITY
        } else {
            self.radius * self.radius / m
        }
    }

    /// Zeros `1/z̄_k` and poles `R²/z̄_k` of `φ₀` all lie outside the closed disk.
    pub fn is_outer(&self) -> bool {
        let r2 = self.radius * self.radius;
        self.zeros
            .zeros()
            .iter()
            .filter(|z| z.norm() > 0.0)
            .all(|z| 1.0 / z.norm() > 1.0 && r2 / z.norm() > 1.0)
    }

    fn pole_check(&self, z: Complex64) -> Result<()> {
        let r2 = self.radius * self.radius;
        for a in self.zeros.zeros() {
            let den = Complex64::new(1.0, 0.0) - a.conj() * z / r2;
            if den.norm() < POLE_GUARD {
                return Err(Error::PoleProximity {
                    point: z.to_string(),
                    distance: den.norm(),
                });
            }
        }
        Ok(())
    }

    /// `φ₀(z)` from its defining product.
    pub fn phi(&self, z: Complex64) -> Result<Complex64> {
        self.pole_check(z)?;
        let r2 = self.radius * self.radius;
        Ok(self
            .zeros
            .zeros()
            .iter()
            .map(|a| (1.0 - a.conj() * z) / (1.0 - a.conj() * z / r2))
            .product())
    }

    /// `(Bφ₀)(z) = R^k B̃(z)`, one factor `R·B̃_k` at a time.
    pub fn eval_b_phi(&self, z: Complex64) -> Result<Complex64> {
        self.pole_check(z)?;
        Ok(self.eval_unchecked(z))
    }

    fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let r2 = self.radius * self.radius;
        self.zeros
            .zeros()
            .iter()
            .map(|&a| factor_rotation(a) * (z - a) / (1.0 - a.conj() * z / r2))
            .product()
    }

    /// `(Bφ₀)'(z)` through the logarithmic derivative of the dilated product.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        self.pole_check(z)?;
        let r2 = self.radius * self.radius;
        let mut value = Complex64::new(1.0, 0.0);
        let mut deriv = Complex64::new(0.0, 0.0);
        for &a in self.zeros.zeros() {
            let den = 1.0 - a.conj() * z / r2;
            let f = factor_rotation(a) * (z - a) / den;
            let fp = factor_rotation(a) * (1.0 - a.norm_sqr() / r2) / (den * den);
            deriv = deriv * f + value * fp;
            value *= f;
        }
        Ok(deriv)
    }

    /// `s! R^{k+1} / ((R-1)^{s-1} (R² - 1))`: Cauchy's estimate over `|w| = R`,
    /// where `|Bφ₀| = R^k`, for the `s`-th derivative on 𝕋.
    pub fn cauchy_derivative_bound(&self, order: u32) -> f64 {
        let r = self.radius;
        let factorial: f64 = (1..=order).map(|i| i as f64).product();
        factorial * self.dilation_factor() * r / ((r - 1.0).powi(order as i32 - 1) * (r * r - 1.0))
    }

    /// Taylor coefficients of `Bφ₀` on `[0, upto]` with aliasing error below `tol`.
    ///
    /// Samples on 𝕋 and doubles the grid until the geometric aliasing bound
    /// `R^{k-M} / (1 - R^{-M})` (from `|Bφ₀| = R^k` on `|z| = R`) is below `tol`.
    pub fn taylor_coeffs(&self, upto: usize, tol: f64) -> Result<LaurentPolynomial> {
        if !(tol > 0.0) {
            return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
        }
        let scale = self.dilation_factor();
        let floor = 64.0 * f64::EPSILON * scale;
        if tol < floor {
            return Err(Error::ToleranceUnreachable {
                requested: tol,
                achieved: floor,
            });
        }
        let ln_r = self.radius.ln();
        let mut size = (4 * (upto + 1)).next_power_of_two();
        let aliasing = |m: usize| {
            let decay = (-(m as f64) * ln_r).exp();
            scale * decay / (1.0 - decay)
        };
        while aliasing(size) > tol {
            size *= 2;
            if size > MAX_GRID {
                return Err(Error::ToleranceUnreachable {
                    requested: tol,
                    achieved: aliasing(MAX_GRID),
                });
            }
        }
        let grid = CircleGrid::from_fn(size, |z| self.eval_unchecked(z))?;
        let mut coeffs = grid.fourier_coeffs();
        coeffs.truncate(upto + 1);
        Ok(LaurentPolynomial::from_taylor(coeffs))
    }

    /// Number of Taylor coefficients after which `Σ_{j>J} |c_j| <= tol`, using
    /// `|c_j| <= R^{k-j}`.
    pub fn truncation_degree(&self, tol: f64) -> usize {
        let r = self.radius;
        let ln_r = r.ln();
        let k = self.degree() as f64;
        // R^{k-J}/(R-1) <= tol
        let j = k + ((1.0 / ((r - 1.0) * tol)).ln() / ln_r).max(0.0);
        j.ceil() as usize
    }

    /// Taylor coefficients on `[0, J]` (`J` from [`Self::truncation_degree`])
    /// plus the absolute tail bound beyond `J`.
    pub fn taylor_truncation(&self, tail_tol: f64) -> Result<(LaurentPolynomial, f64)> {
        let upto = self.truncation_degree(tail_tol);
        let floor = (64.0 * f64::EPSILON * self.dilation_factor()).max(tail_tol * 1e-3);
        let poly = self.taylor_coeffs(upto, floor)?;
        let r = self.radius;
        let tail = self.dilation_factor() * r.powi(-(upto as i32)) / (r - 1.0);
        Ok((poly, tail))
    }
}

/// Sup over 𝕋 of a derivative of `Bφ₀` with its a-priori Cauchy bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivativeSup {
    pub order: u32,
    pub value: f64,
    pub a_priori_bound: f64,
    pub grid: usize,
}

/// Golden-section refinement of a sampled maximum of `g` on `[θ - h, θ + h]`.
fn refine_max(g: impl Fn(f64) -> f64, theta: f64, h: f64, start: f64) -> f64 {
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (theta - h, theta + h);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..60 {
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + phi * (b - a);
            gd = g(d);
        }
    }
    start.max(gc).max(gd)
}

/// Samples `g(e^{iθ})` on `size` nodes and refines around the best one.
fn sampled_circle_max(size: usize, g: impl Fn(f64) -> f64 + Sync) -> f64 {
    use rayon::prelude::*;
    let (best_m, best) = (0..size)
        .into_par_iter()
        .map(|m| (m, g(TAU * m as f64 / size as f64)))
        .reduce(|| (0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    let h = TAU / size as f64;
    refine_max(&g, TAU * best_m as f64 / size as f64, h, best)
}

fn circle_grid_for(c: &DilatedCorrector, oversample: usize) -> usize {
    (oversample * 8 * c.degree().max(1)).next_power_of_two()
}

/// Sup over 𝕋 of `|φ₀|`.
pub fn phi_sup(c: &DilatedCorrector, oversample: usize) -> Result<f64> {
    check_oversample(oversample)?;
    let size = circle_grid_for(c, oversample);
    Ok(sampled_circle_max(size, |t| {
        c.phi(Complex64::from_polar(1.0, t)).map(|v| v.norm()).unwrap_or(f64::INFINITY)
    }))
}

fn check_oversample(oversample: usize) -> Result<()> {
    if oversample < 4 {
        return Err(Error::Precondition(format!("oversample must be >= 4, got {oversample}")));
    }
    Ok(())
}

/// Taylor coefficients of `Bφ₀` read off a Cauchy integral over `|w| = ρ`,
/// `ρ = (1 + R)/2`, by the trapezoid rule; the grid doubles until the
/// `order`-weighted tail is negligible.
fn cauchy_coefficients(c: &DilatedCorrector, order: u32) -> Result<Vec<Complex64>> {
    let rho = 0.5 * (1.0 + c.radius());
    let mut size = (64 * c.degree().max(4)).next_power_of_two();
    loop {
        let grid = CircleGrid::from_fn(size, |w| c.eval_unchecked(w * rho))?;
        let mut coeffs = grid.fourier_coeffs();
        coeffs.truncate(size / 2);
        let mut scale = 1.0;
        for co in coeffs.iter_mut() {
            *co *= scale;
            scale /= rho;
        }
        let weight = |j: usize| (j as f64).powi(order as i32);
        let head = coeffs.iter().enumerate().map(|(j, v)| weight(j) * v.norm()).fold(0.0, f64::max);
        let tail = coeffs
            .iter()
            .enumerate()
            .skip(size / 4)
            .map(|(j, v)| weight(j) * v.norm())
            .fold(0.0, f64::max);
        if tail <= 1e-15 * head.max(1.0) || !head.is_finite() {
            return Ok(coeffs);
        }
        size *= 2;
        if size > MAX_GRID {
            return Err(Error::ToleranceUnreachable {
                requested: 1e-15,
                achieved: tail / head.max(1.0),
            });
        }
    }
}

/// Polynomial `Σ j!/(j-s)! c_j z^{j-s}` on the given Taylor coefficients.
fn differentiate(coeffs: &[Complex64], order: u32) -> LaurentPolynomial {
    let s = order as usize;
    if coeffs.len() <= s {
        return LaurentPolynomial::zero();
    }
    let out = coeffs
        .iter()
        .enumerate()
        .skip(s)
        .map(|(j, v)| v * ((j + 1 - s)..=j).map(|i| i as f64).product::<f64>())
        .collect();
    LaurentPolynomial::from_taylor(out)
}

/// `sup_𝕋 |(Bφ₀)^{(order)}|`.
///
/// Order 1 uses the closed-form logarithmic derivative sampled on 𝕋; higher
/// orders differentiate the Cauchy-integral Taylor coefficients. The Cauchy
/// bound over `|w| = R` is reported alongside.
pub fn derivative_sup(c: &DilatedCorrector, order: u32, oversample: usize) -> Result<DerivativeSup> {
    if order == 0 {
        return Err(Error::Precondition("derivative order must be >= 1".into()));
    }
    check_oversample(oversample)?;
    let a_priori_bound = c.cauchy_derivative_bound(order);
    if c.degree() == 0 {
        return Ok(DerivativeSup {
            order,
            value: 0.0,
            a_priori_bound,
            grid: 0,
        });
    }
    if order == 1 {
        let size = circle_grid_for(c, oversample);
        let value = sampled_circle_max(size, |t| {
            c.derivative(Complex64::from_polar(1.0, t)).map(|v| v.norm()).unwrap_or(f64::INFINITY)
        });
        return Ok(DerivativeSup {
            order,
            value,
            a_priori_bound,
            grid: size,
        });
    }
    derivative_sup_cauchy(c, order, oversample)
}

/// Same quantity as [`derivative_sup`] but always through Cauchy coefficients.
pub fn derivative_sup_cauchy(c: &DilatedCorrector, order: u32, oversample: usize) -> Result<DerivativeSup> {
    let coeffs = cauchy_coefficients(c, order)?;
    let poly = differentiate(&coeffs, order);
    let est = sup_norm(&poly, oversample)?;
    Ok(DerivativeSup {
        order,
        value: est.value,
        a_priori_bound: c.cauchy_derivative_bound(order),
        grid: grid_size(oversample, poly.span()),
    })
}

/// Per-instance record of the corrector identities and smoothness ratios.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrectorCertificate {
    pub n: usize,
    pub epsilon: f64,
    pub radius: f64,
    pub sup_phi: f64,
    /// `(1 + ε/n)^n`, the bound `sup|φ₀|` must respect.
    pub sup_phi_bound: f64,
    pub phi0_err: f64,
    pub derivatives: Vec<SmoothnessRatio>,
    pub besov: Vec<SmoothnessRatio>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessRatio {
    pub s: u32,
    pub value: f64,
    /// `value / n^s`.
    pub ratio: f64,
    pub a_priori_bound: Option<f64>,
}

impl CorrectorCertificate {
    pub fn derivative_ratio(&self, s: u32) -> Option<f64> {
        self.derivatives.iter().find(|r| r.s == s).map(|r| r.ratio)
    }

    pub fn besov_ratio(&self, s: u32) -> Option<f64> {
        self.besov.iter().find(|r| r.s == s).map(|r| r.ratio)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateOptions {
    pub derivative_orders: Vec<u32>,
    pub besov_orders: Vec<u32>,
    pub oversample: usize,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        Self {
            derivative_orders: vec![1, 2],
            besov_orders: vec![1],
            oversample: DEFAULT_OVERSAMPLE,
        }
    }
}

/// Emits `sup|φ₀|`, `|φ₀(0) - 1|` and the derivative/Besov ratios `/ n^s`.
pub fn corrector_certificate(c: &DilatedCorrector, opts: &CertificateOptions) -> Result<CorrectorCertificate> {
    let n = c.degree();
    let nf = n.max(1) as f64;
    let epsilon = c.epsilon().unwrap_or((c.radius() - 1.0) * nf);
    let sup_phi = phi_sup(c, opts.oversample)?;
    let phi0_err = (c.phi(Complex64::new(0.0, 0.0))? - 1.0).norm();

    let derivatives = opts
        .derivative_orders
        .iter()
        .map(|&s| {
            let d = derivative_sup(c, s, opts.oversample)?;
            Ok(SmoothnessRatio {
                s,
                value: d.value,
                ratio: d.value / nf.powi(s as i32),
                a_priori_bound: Some(d.a_priori_bound),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let besov = if opts.besov_orders.is_empty() {
        Vec::new()
    } else {
        let (trunc, _tail) = c.taylor_truncation(1e-12)?;
        opts.besov_orders
            .iter()
            .map(|&s| {
                let value = besov_seminorm(&trunc, s as f64, Lp::LInf)?;
                Ok(SmoothnessRatio {
                    s,
                    value,
                    ratio: value / nf.powi(s as i32),
                    a_priori_bound: None,
                })
            })
            .collect::<Result<Vec<_>>>()?
    };

    Ok(CorrectorCertificate {
        n,
        epsilon,
        radius: c.radius(),
        sup_phi,
        sup_phi_bound: c.dilation_factor(),
        phi0_err,
        derivatives,
        besov,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn corrector(zeros: &[Complex64], eps: f64) -> DilatedCorrector {
        build_corrector(ZeroSet::inside(zeros.to_vec()).unwrap(), eps).unwrap()
    }

    fn random_zeros(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|_| Complex64::from_polar(rng.gen::<f64>().sqrt() * 0.99, rng.gen::<f64>() * TAU))
            .collect()
    }

    #[test]
    fn origin_zero_gives_trivial_corrector() {
        let k = corrector(&[c(0.0)], 1.0);
        assert_eq!(k.radius(), 2.0);
        for t in [0.0, 1.0, 2.5] {
            let z = Complex64::from_polar(1.0, t);
            assert_eq!(k.phi(z).unwrap(), c(1.0));
            assert!((k.eval_b_phi(z).unwrap() - z).norm() < 1e-15);
        }
    }

    #[test]
    fn single_zero_half() {
        let k = corrector(&[c(0.5)], 1.0);
        assert_eq!(k.radius(), 2.0);
        for z in [c(0.0), c(0.3), Complex64::new(-0.2, 0.7)] {
            let expected = (1.0 - z / 2.0) / (1.0 - z / 8.0);
            assert!((k.phi(z).unwrap() - expected).norm() < 1e-15);
        }
        assert_eq!(k.phi(c(0.0)).unwrap(), c(1.0));
        assert!((k.eval_b_phi(c(0.0)).unwrap() - c(0.5)).norm() < 1e-15);
    }

    #[test]
    fn empty_and_bad_inputs() {
        assert!(matches!(
            build_corrector(ZeroSet::inside(vec![]).unwrap(), 1.0),
            Err(Error::EmptyZeroSet)
        ));
        assert!(build_corrector(ZeroSet::inside(vec![c(0.1)]).unwrap(), 0.0).is_err());
        assert!(build_corrector(ZeroSet::inside(vec![c(0.1)]).unwrap(), 1.5).is_err());
    }

    #[test]
    fn factorization_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let k = corrector(&random_zeros(&mut rng, 12), 1.0);
        let b = k.blaschke();
        for _ in 0..100 {
            let z = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen::<f64>() * TAU);
            let direct = k.eval_b_phi(z).unwrap();
            let split = b.eval(z).unwrap() * k.phi(z).unwrap();
            assert!((direct - split).norm() <= 1e-10 * direct.norm().max(1e-300) + 1e-15);
        }
    }

    #[test]
    fn phi_is_outer_and_one_at_origin() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [1, 4, 17] {
            let k = corrector(&random_zeros(&mut rng, n), 0.5);
            assert!(k.is_outer());
            assert_eq!(k.phi(c(0.0)).unwrap(), c(1.0));
        }
    }

    #[test]
    fn derivative_examples() {
        let k = corrector(&[c(0.0)], 1.0);
        let d = derivative_sup(&k, 1, 16).unwrap();
        assert!((d.value - 1.0).abs() < 1e-12);
        for n in [3usize, 10] {
            let k = corrector(&vec![c(0.0); n], 1.0);
            let d = derivative_sup(&k, 1, 16).unwrap();
            assert!((d.value - n as f64).abs() < 1e-9 * n as f64, "{}", d.value);
            assert!(d.value <= d.a_priori_bound);
            let d2 = derivative_sup(&k, 2, 16).unwrap();
            assert!((d2.value - (n * (n - 1)) as f64).abs() < 1e-7 * (n * n) as f64);
        }
    }

    #[test]
    fn derivative_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in [4, 16, 40] {
            let k = corrector(&random_zeros(&mut rng, n), 1.0);
            let closed = derivative_sup(&k, 1, 16).unwrap();
            let cauchy = derivative_sup_cauchy(&k, 1, 16).unwrap();
            assert!(
                (closed.value - cauchy.value).abs() < 1e-6 * closed.value,
                "{} vs {}",
                closed.value,
                cauchy.value
            );
            assert!(closed.value <= closed.a_priori_bound);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let k = corrector(&random_zeros(&mut rng, 6), 1.0);
        let z = Complex64::from_polar(1.0, 0.4);
        let h = 1e-6;
        let fd = (k.eval_b_phi(z + h).unwrap() - k.eval_b_phi(z - h).unwrap()) / (2.0 * h);
        assert!((k.derivative(z).unwrap() - fd).norm() < 1e-6 * fd.norm().max(1.0));
    }

    #[test]
    fn taylor_coefficients() {
        let k = corrector(&[c(0.0)], 1.0);
        let t = k.taylor_coeffs(3, 1e-13).unwrap();
        assert!((t.coeff(1) - c(1.0)).norm() < 1e-13);
        assert!(t.coeff(0).norm() < 1e-13 && t.coeff(2).norm() < 1e-13);

        let k = corrector(&[c(0.5)], 1.0);
        let t = k.taylor_coeffs(8, 1e-13).unwrap();
        assert!((t.coeff(0) - c(0.5)).norm() < 1e-13);

        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let k = corrector(&random_zeros(&mut rng, 10), 1.0);
        let (t, tail) = k.taylor_truncation(1e-12).unwrap();
        assert!(tail <= 1e-12);
        assert!(t.coeff_norm_sq() <= k.dilation_factor().powi(2));
        assert!(t.coeff_norm_sq() <= std::f64::consts::E.powi(2));
        let z = Complex64::new(0.3, 0.5);
        assert!((t.eval(z) - k.eval_b_phi(z).unwrap()).norm() < 1e-11);
    }

    #[test]
    fn taylor_tolerance_unreachable() {
        let k = corrector(&[c(0.5)], 1.0);
        assert!(matches!(k.taylor_coeffs(4, 1e-20), Err(Error::ToleranceUnreachable { .. })));
    }

    #[test]
    fn certificate_for_origin_zero() {
        let k = corrector(&[c(0.0)], 1.0);
        let cert = corrector_certificate(&k, &CertificateOptions::default()).unwrap();
        assert!((cert.sup_phi - 1.0).abs() < 1e-15);
        assert_eq!(cert.phi0_err, 0.0);
        assert!((cert.derivative_ratio(1).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn epsilon_variant_sup_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let k = corrector(&random_zeros(&mut rng, 64), 0.1);
        let s = phi_sup(&k, 16).unwrap();
        assert!(s <= 0.1f64.exp() + 1e-6);
        assert!(s <= k.dilation_factor());
    }
}
