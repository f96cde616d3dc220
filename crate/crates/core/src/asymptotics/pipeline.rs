use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::blaschke::{DilatedCorrector, ZeroSet};
use crate::circle_fourier::{sup_norm, KernelSpec, LaurentPolynomial};
use crate::error::{Error, Result};
use crate::measure_opuc::{log_condition_report, MeasureSpec, MpLaurent, ReflectedBlaschke};
use crate::xlinalg::{from_c64, to_c64, PrecisionTag};

use super::schedule::ScheduleParams;

/// Absolute tail tolerance for the Taylor series of `Bφ`.
const TAIL_TOL: f64 = 1e-13;
const SCHWARZ_POINTS: usize = 32;
const SCHWARZ_RADII: [f64; 2] = [0.5, 0.9];
const SCHWARZ_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `ModifiedVP(n) ⋆ (Bφψ)`, competitor for `η_n`.
    ValleePoussin,
    /// Degree-`n` Taylor polynomial of `Bφψ`, competitor for `τ_n`.
    Taylor,
}

/// Selected zeros of the reflected product with the schedule-derived parameters.
#[derive(Clone, Debug)]
pub struct PartialProduct {
    pub product: ReflectedBlaschke,
    /// Indices into the spectrum of the selected points.
    pub selected: Vec<usize>,
    pub k_n: u64,
    pub l_n: u64,
    pub radius: f64,
}

/// Zeros `ζ_k` with `|ζ_k| < 1 - 1/k_n`, and `R = 1 + 1/l_n`.
pub fn partial_product(mu: &MeasureSpec, n: u64, sched: &ScheduleParams) -> Result<PartialProduct> {
    if n < 8 {
        return Err(Error::Precondition(format!("pipeline needs n >= 8, got {n}")));
    }
    let k_n = sched.k_n(n);
    if k_n == 0 {
        return Err(Error::ScheduleViolation(format!(
            "{}: k_n = 0 at n = {n}",
            sched.describe()
        )));
    }
    let l_n = sched.l_n(n).max(1);
    let threshold = 1.0 - 1.0 / k_n as f64;
    let masses = mu.spectrum().masses();
    let selected: Vec<usize> = (0..masses.len())
        .filter(|&i| 1.0 / masses[i].z.norm() < threshold)
        .collect();
    Ok(PartialProduct {
        product: ReflectedBlaschke::new(selected.iter().map(|&i| masses[i].z).collect()),
        selected,
        k_n,
        l_n,
        radius: 1.0 + 1.0 / l_n as f64,
    })
}

/// Per-`n` record of every quantity in the lower-bound argument.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineCertificate {
    pub route: Route,
    pub n: u64,
    pub k_n: u64,
    pub l_n: u64,
    pub radius: f64,
    pub selected: usize,
    pub eps_n: f64,
    pub a_n: f64,
    pub delta_n: f64,
    /// Certified `‖approximant - Bφψ‖_∞` (sampled sup with Bernstein margin plus truncation tail).
    pub sup_defect: f64,
    /// Taylor route only: `M_R R^{-(n+1)}/(1 - 1/R)` with `M_R = R^k Σ|ψ_j| R^j`.
    pub sup_defect_cauchy: Option<f64>,
    pub truncation_tail: f64,
    /// `|approximant(0) - B(0)ψ(0)|`, `B` over all reflected points.
    pub leading_gap: f64,
    /// `∫ |competitor|² dm/|ψ|²`.
    pub ac_norm: f64,
    /// Mass sum over the selected points (α₁ or β₁).
    pub alpha1: f64,
    /// Schwarz bound `Σ μ_k (sup_defect |ζ_k| + ρ |z_k|^n/(1-|ζ_k|))²`, `ρ` the
    /// per-coefficient error of the computed series.
    pub alpha1_bound: f64,
    /// Mass sum over the remaining points (α₂ or β₂).
    pub alpha2: f64,
    /// `‖approximant‖²_∞ (1 - 1/k_n)^{-2n} Σ_{tail} μ_k`.
    pub alpha2_bound: f64,
    /// Actual `(1 - 1/k_n)^{-n}` for the unselected points.
    pub tail_factor: f64,
    /// `e^{C/ε_n} Σ_{tail} μ_k`.
    pub gamma_n: f64,
    pub c_bound: f64,
    pub total_norm: f64,
    /// Leading coefficient of the normalized competitor.
    pub lower_bound_achieved: f64,
    pub target: f64,
    /// Largest `|approximant - Bφψ|(rζ) - sup_defect·r^n` over the interior checks.
    pub schwarz_excess: f64,
    pub schwarz_pass: bool,
    pub bits: u32,
}

impl PipelineCertificate {
    /// `|total_norm² - (ac + α₁ + α₂)| / total_norm²`.
    pub fn bookkeeping_defect(&self) -> f64 {
        let t = self.total_norm * self.total_norm;
        (t - (self.ac_norm + self.alpha1 + self.alpha2)).abs() / t
    }

    /// The competitor may not beat the exact optimum.
    pub fn dominated_by(&self, optimum: f64) -> bool {
        self.lower_bound_achieved <= optimum + 1e-10
    }
}

/// The admissible competitor `z^n · conj(g(1/z̄))` for an approximant `g`.
pub fn competitor(g: &LaurentPolynomial, n: u64) -> LaurentPolynomial {
    g.reflect().shift(n as i64)
}

struct Ingredients {
    part: PartialProduct,
    corrector: DilatedCorrector,
    /// Taylor coefficients of `Bφψ` on `[0, J]` at the measure precision.
    f_mp: Vec<Complex>,
    /// The same rounded to double precision.
    f_poly: LaurentPolynomial,
    /// `‖Bφψ - f_poly‖_∞` bound (series tail plus double rounding).
    tail: f64,
    /// Per-coefficient rounding bound of `f_mp`.
    coeff_err: f64,
}

/// Taylor coefficients on `[0, upto]` of
/// `rot · Π (z - ζ_k)/(1 - ζ̄_k z/R²) · ψ(z)` with `ζ_k = 1/z̄_k` formed at
/// `prec` from the exact mass locations, so the series vanishes at `1/z̄_k`
/// to working precision (an f64 `ζ_k` would be off by `|z_k|^n` ulps after
/// reflection).
fn series_mp(mu: &MeasureSpec, part: &PartialProduct, upto: usize, prec: PrecisionTag) -> Vec<Complex> {
    let bits = prec.bits();
    let one = Complex::with_val(bits, 1);
    let r = Float::with_val(bits, 1) + Float::with_val(bits, part.l_n).recip();
    let r2 = Float::with_val(bits, r.square_ref());
    let mut num = vec![one.clone()];
    let mut den = vec![one.clone()];
    for &z in part.product.outer_points() {
        let zeta = Complex::with_val(bits, from_c64(prec, z).conj().recip_ref());
        // (-|ζ|/ζ)(z - ζ) = |ζ| - (|ζ|/ζ) z
        let abs = Float::with_val(bits, zeta.abs_ref());
        let rot = Complex::with_val(bits, &abs / &zeta);
        num = poly_mul(&num, &[Complex::with_val(bits, (&abs, 0)), -rot], bits);
        let d1 = -Complex::with_val(bits, zeta.conj_ref()) / &r2;
        den = poly_mul(&den, &[one.clone(), d1], bits);
    }
    let psi: Vec<Complex> = mu.weight().psi().coeffs().iter().map(|c| from_c64(prec, *c)).collect();
    let num = poly_mul(&num, &psi, bits);
    // q = num/den with den_0 = 1
    let mut q: Vec<Complex> = Vec::with_capacity(upto + 1);
    for j in 0..=upto {
        let mut c = num.get(j).cloned().unwrap_or_else(|| Complex::new(bits));
        for i in 1..den.len().min(j + 1) {
            c -= Complex::with_val(bits, &den[i] * &q[j - i]);
        }
        q.push(c);
    }
    q
}

fn poly_mul(a: &[Complex], b: &[Complex], bits: u32) -> Vec<Complex> {
    let mut out = vec![Complex::new(bits); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Complex::with_val(bits, x * y);
        }
    }
    out
}

fn ingredients(mu: &MeasureSpec, n: u64, sched: &ScheduleParams) -> Result<Ingredients> {
    let part = partial_product(mu, n, sched)?;
    let zeros = ZeroSet::inside(part.product.product().zeros().zeros().to_vec())?;
    let corrector = DilatedCorrector::with_radius(zeros, part.radius)?;
    let r = part.radius;
    let upto = corrector.truncation_degree(TAIL_TOL).max(2 * n as usize);
    let prec = mu.precision();
    let f_mp = series_mp(mu, &part, upto, prec);
    let f_poly = LaurentPolynomial::from_taylor(f_mp.iter().map(to_c64).collect());
    // |Bφψ| <= R^k M_ψ(R) on |z| = R bounds every coefficient by that times R^{-j}
    let scale = corrector.dilation_factor() * mu.weight().modulus_bound(r);
    let series_tail = scale * r.powi(-(upto as i32)) / (r - 1.0);
    let terms = (upto + 1) as f64;
    let tail = series_tail + terms * f64::EPSILON * scale;
    let ops = (upto + corrector.degree() + mu.weight().psi().span() + 1) as f64;
    let coeff_err = scale * ops * 2f64.powi(8 - prec.bits() as i32);
    Ok(Ingredients {
        part,
        corrector,
        f_mp,
        f_poly,
        tail,
        coeff_err,
    })
}

/// `Bφψ` at an interior point.
fn eval_f(ing: &Ingredients, mu: &MeasureSpec, z: Complex64) -> Result<Complex64> {
    Ok(ing.corrector.eval_b_phi(z)? * mu.weight().eval(z))
}

fn run(mu: &MeasureSpec, n: u64, sched: &ScheduleParams, route: Route) -> Result<(LaurentPolynomial, PipelineCertificate)> {
    sched.validate(&[n, 2 * n])?;
    if route == Route::Taylor {
        log_condition_report(mu.spectrum(), &[1.0, 2.0], 4 * n)?.require()?;
    }
    let ing = ingredients(mu, n, sched)?;
    let ni = n as i64;
    let prec = mu.precision();
    let bits = prec.bits();
    let approx_mp: Vec<Complex> = match route {
        Route::ValleePoussin => {
            let vp = KernelSpec::ModifiedVP(n);
            (0..2 * ni)
                .map(|j| {
                    let m = vp.multiplier_exact(j);
                    let ratio = Float::with_val(bits, *m.numer()) / *m.denom();
                    Complex::with_val(bits, &ing.f_mp[j as usize] * ratio)
                })
                .collect()
        }
        Route::Taylor => ing.f_mp[..=n as usize].to_vec(),
    };
    let approx = LaurentPolynomial::from_taylor(approx_mp.iter().map(to_c64).collect());
    let diff = &ing.f_poly - &approx;
    let sup_defect = if diff.clone().normalize().is_zero() {
        ing.tail
    } else {
        sup_norm(&diff, 16)?.upper() + ing.tail
    };
    let r = ing.part.radius;
    let sup_defect_cauchy = (route == Route::Taylor).then(|| {
        let m_r = ing.corrector.dilation_factor() * mu.weight().modulus_bound(r);
        m_r * r.powi(-(ni as i32 + 1)) / (1.0 - 1.0 / r)
    });

    // interior Schwarz checks
    let mut rng = ChaCha8Rng::seed_from_u64(0x5c4a_7a00 ^ n);
    let mut excess = f64::NEG_INFINITY;
    for &rad in &SCHWARZ_RADII {
        for _ in 0..SCHWARZ_POINTS {
            let z = Complex64::from_polar(rad, rng.gen_range(0.0..std::f64::consts::TAU));
            let gap = (approx.eval(z) - eval_f(&ing, mu, z)?).norm();
            excess = excess.max(gap - sup_defect * rad.powi(ni as i32));
        }
    }

    // competitor norm at the measure's precision
    // z^n conj(g(1/z̄)): coefficient of z^{n-j} is conj(g_j)
    let comp = MpLaurent::new(
        ni + 1 - approx_mp.len() as i64,
        approx_mp.iter().rev().map(|c| c.clone().conj()).collect(),
        prec,
    );
    let ac_norm = ac_norm_sq(mu, &comp, prec)?;
    let masses = mu.spectrum().masses();
    let (mut alpha1, mut alpha2) = (Float::new(bits), Float::new(bits));
    let mut alpha1_bound = 0.0;
    let mut tail_mass = 0.0;
    for (i, m) in masses.iter().enumerate() {
        let v = comp.eval(&from_c64(prec, m.z));
        let contrib = Float::with_val(bits, v.abs_ref()).square() * m.mu;
        if ing.part.selected.contains(&i) {
            alpha1 += contrib;
            // Schwarz: the exact defect vanishes to order n+1 at 0, so it contributes
            // sup_defect |ζ_k| to |competitor(z_k)|; the rounding error of the
            // series does not vanish there and is amplified by |z_k|^n.
            let zeta = 1.0 / m.z.norm();
            let rounding = ing.coeff_err / (1.0 - zeta) * m.z.norm().powi(ni as i32);
            let s = sup_defect * zeta + rounding;
            alpha1_bound += m.mu * s * s;
        } else {
            alpha2 += contrib;
            tail_mass += m.mu;
        }
    }
    let tail_factor = (1.0 - 1.0 / ing.part.k_n as f64).powi(-(ni as i32));
    let approx_sup = sup_norm(&approx, 16)?.upper();
    let c_bound = sched
        .c_bound
        .unwrap_or_else(|| 2.0 * masses.iter().fold(0.0, |acc, m| acc + (1.0 - 1.0 / m.z.norm())));
    let eps_n = sched.eps_n(n);
    let total = Float::with_val(bits, &ac_norm + &alpha1) + &alpha2;
    let total_norm = total.clone().sqrt();
    let lower = (Float::with_val(bits, approx_mp[0].abs_ref()) / &total_norm).to_f64();
    let target = mu.target();
    let cert = PipelineCertificate {
        route,
        n,
        k_n: ing.part.k_n,
        l_n: ing.part.l_n,
        radius: r,
        selected: ing.part.selected.len(),
        eps_n,
        a_n: sched.a_n(n),
        delta_n: sched.delta_n(n),
        sup_defect,
        sup_defect_cauchy,
        truncation_tail: ing.tail,
        leading_gap: (approx.coeff(0) - Complex64::new(target, 0.0)).norm(),
        ac_norm: ac_norm.to_f64(),
        alpha1: alpha1.to_f64(),
        alpha1_bound,
        alpha2: alpha2.to_f64(),
        alpha2_bound: approx_sup * approx_sup * tail_factor * tail_factor * tail_mass,
        tail_factor,
        gamma_n: (c_bound / eps_n).exp() * tail_mass,
        c_bound,
        total_norm: total_norm.to_f64(),
        lower_bound_achieved: lower,
        target,
        schwarz_excess: excess,
        schwarz_pass: excess <= SCHWARZ_SLACK,
        bits,
    };
    Ok((approx, cert))
}

/// `∫ |p|² dm/|ψ|² = Σ_{a,b} p_a conj(p_b) c_{a-b}` with `c_m` the AC moments.
fn ac_norm_sq(mu: &MeasureSpec, p: &MpLaurent, prec: PrecisionTag) -> Result<Float> {
    let bits = prec.bits();
    let coeffs = p.coeffs();
    if mu.weight().is_constant() {
        let mut acc = Float::new(bits);
        for c in coeffs {
            acc += Float::with_val(bits, c.abs_ref()).square();
        }
        let psi0 = mu.weight().psi0();
        return Ok(acc / Float::with_val(bits, psi0 * psi0));
    }
    let span = coeffs.len() as i64;
    let moments: Vec<Complex> = (0..span).map(|m| mu.ac_moment_at(m, prec)).collect::<Result<_>>()?;
    let mut acc = Complex::new(bits);
    for (a, ca) in coeffs.iter().enumerate() {
        for (b, cb) in coeffs.iter().enumerate() {
            let m = if a >= b {
                moments[a - b].clone()
            } else {
                moments[b - a].clone().conj()
            };
            acc += Complex::with_val(bits, ca * cb.clone().conj()) * m;
        }
    }
    Ok(acc.real().clone())
}

/// Vallée-Poussin route: `G_n = ModifiedVP(n) ⋆ (B_n φ ψ)` and the certificate for the
/// competitor `z^n conj(G_n(1/z̄))` against `η_n`.
pub fn vp_approximant(mu: &MeasureSpec, n: u64, sched: &ScheduleParams) -> Result<(LaurentPolynomial, PipelineCertificate)> {
    run(mu, n, sched, Route::ValleePoussin)
}

/// Taylor route: `T_n`, the degree-`n` Taylor polynomial of `B_n φ ψ`, and the
/// certificate for the polynomial competitor against `τ_n`.
pub fn taylor_approximant(mu: &MeasureSpec, n: u64, sched: &ScheduleParams) -> Result<(LaurentPolynomial, PipelineCertificate)> {
    run(mu, n, sched, Route::Taylor)
}
