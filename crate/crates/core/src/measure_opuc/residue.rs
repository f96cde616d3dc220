use num_complex::Complex64;
use rug::float::Constant;
use rug::{Complex, Float};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::xlinalg::{from_c64, to_c64, PrecisionTag};

use super::gram::orthonormal_element;
use super::measure::{pow_mp, MeasureSpec, ReflectedBlaschke};

const MAX_GRID: usize = 1 << 20;

/// Both sides of the residue identity for `R_n` against `z^n B^k_*`.
#[derive(Clone, Debug, Serialize)]
pub struct ResidueCheck {
    pub n: i64,
    pub k: usize,
    pub bits: u32,
    /// `(1/2πi)∮ R_n / (ψ_* z^{n+1} B^k_*) dz` by quadrature on the circle.
    pub lhs: Complex64,
    /// `η_n/(B^k(0)ψ(0)) - Σ residues at the z_i`.
    pub rhs: Complex64,
    pub abs_diff: f64,
    pub eta: f64,
    /// Residue terms `R_n(z_i)/((B^k_*)'(z_i) ψ_*(z_i) z_i^{n+1})`.
    pub residues: Vec<Complex64>,
    /// `Σ 1/(|(B^k_*)'(z_i) ψ_*(z_i) z_i^{n+1}|² μ_i)`.
    pub cs_majorant: f64,
    /// `|LHS|`, the pairing of `R_n/ψ_*` with `z^n B^k_*` in `L²(m)`; at most 1.
    pub pairing_abs: f64,
    pub grid: usize,
}

impl ResidueCheck {
    pub fn pairing_within_unit(&self, slack: f64) -> bool {
        self.pairing_abs <= 1.0 + slack
    }
}

pub fn residue_identity_check(mu: &MeasureSpec, n: i64, k: usize) -> Result<ResidueCheck> {
    let masses = mu.spectrum().masses();
    if k > masses.len() {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds the number of masses ({})",
            masses.len()
        )));
    }
    let chosen = &masses[..k];
    for i in 0..k {
        for j in 0..i {
            if (chosen[i].z - chosen[j].z).norm() < 1e-12 {
                return Err(Error::Precondition(format!(
                    "points {j} and {i} coincide: (B^k_*)' vanishes at a double point"
                )));
            }
        }
    }
    let el = orthonormal_element(mu, n, true)?;
    let prec = el.element.precision();
    let bits = prec.bits();
    let rn = &el.element;
    let bk = ReflectedBlaschke::new(chosen.iter().map(|m| m.z).collect());
    let weight = mu.weight();

    let integrand = |z: &Complex| -> Complex {
        let den = weight.eval_star_mp(z, prec) * pow_mp(z, n + 1, prec) * bk.eval_star_mp(z, prec);
        rn.eval(z) / den
    };
    let (lhs, grid) = circle_mean(|z| integrand(z) * z, (4 * (2 * n as usize + 8)).next_power_of_two(), prec)?;

    let b0 = Float::with_val(bits, bk.value_at_zero());
    let psi0 = Float::with_val(bits, weight.psi0());
    let mut rhs = Complex::with_val(bits, (Float::with_val(bits, &el.leading / b0) / psi0, 0));
    let mut residues = Vec::with_capacity(k);
    let mut majorant = 0.0;
    for (i, m) in chosen.iter().enumerate() {
        let zi = from_c64(prec, m.z);
        let den = bk.star_derivative_at_point(i, prec) * weight.eval_star_mp(&zi, prec) * pow_mp(&zi, n + 1, prec);
        let den_abs = Float::with_val(bits, den.abs_ref());
        if den_abs.is_zero() {
            return Err(Error::Precondition(format!("(B^k_*)' vanishes at point {i}")));
        }
        let res = rn.eval(&zi) / &den;
        majorant += 1.0 / (den_abs.to_f64().powi(2) * m.mu);
        residues.push(to_c64(&res));
        rhs -= res;
    }
    let diff = Float::with_val(bits, Complex::with_val(bits, &lhs - &rhs).abs_ref()).to_f64();
    Ok(ResidueCheck {
        n,
        k,
        bits,
        lhs: to_c64(&lhs),
        rhs: to_c64(&rhs),
        abs_diff: diff,
        eta: el.leading.to_f64(),
        residues,
        cs_majorant: majorant,
        pairing_abs: Float::with_val(bits, lhs.abs_ref()).to_f64(),
        grid,
    })
}

/// Mean of `f` over the `M`-th roots of unity, doubling `M` until two grids agree.
fn circle_mean(f: impl Fn(&Complex) -> Complex, start: usize, prec: PrecisionTag) -> Result<(Complex, usize)> {
    let bits = prec.bits();
    let tol = Float::with_val(bits, Float::i_exp(1, -(bits as i32) / 2));
    let mean = |size: usize| {
        let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
        let mut acc = Complex::new(bits);
        for l in 0..size {
            let angle = Float::with_val(bits, &two_pi * l as u32) / size as u32;
            let (s, c) = angle.sin_cos(Float::new(bits));
            acc += f(&Complex::with_val(bits, (c, s)));
        }
        acc / size as u32
    };
    let mut size = start.max(16);
    let mut prev = mean(size);
    loop {
        size *= 2;
        if size > MAX_GRID {
            return Err(Error::QuadratureNonConvergence {
                grid: size / 2,
                change: f64::NAN,
            });
        }
        let next = mean(size);
        let change = Float::with_val(bits, Complex::with_val(bits, &next - &prev).abs_ref());
        let scale = Float::with_val(bits, next.abs_ref()).max(&Float::with_val(bits, 1));
        if change <= Float::with_val(bits, &tol * &scale) {
            return Ok((next, size));
        }
        prev = next;
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure_opuc::{OuterWeight, PointSpectrum};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn no_residues_recovers_eta() {
        let mu = MeasureSpec::with_masses(&[(c(1.5), 0.3)], PrecisionTag::P256).unwrap();
        let r = residue_identity_check(&mu, 5, 0).unwrap();
        assert!(r.abs_diff < 1e-10);
        assert!((r.lhs.re - r.eta).abs() < 1e-10);
    }

    #[test]
    fn one_mass_two_routes_agree() {
        let mu = MeasureSpec::with_masses(&[(c(1.5), 0.3)], PrecisionTag::P256).unwrap();
        let r = residue_identity_check(&mu, 6, 1).unwrap();
        assert!(r.abs_diff < 1e-8, "{r:?}");
        assert!(r.pairing_within_unit(1e-8));
        assert!(r.cs_majorant > 0.0);
    }

    #[test]
    fn weighted_two_masses() {
        let w = OuterWeight::from_real(&[1.0, 0.4], "1 + 0.4z").unwrap();
        let sp = PointSpectrum::from_pairs(&[(Complex64::new(0.3, 1.4), 0.2), (c(-1.25), 0.1)]).unwrap();
        let mu = MeasureSpec::new(w, sp, PrecisionTag::P256);
        for k in 0..=2 {
            let r = residue_identity_check(&mu, 7, k).unwrap();
            assert!(r.abs_diff < 1e-8, "k={k}: {r:?}");
            assert!(r.pairing_within_unit(1e-8));
        }
    }

    #[test]
    fn preconditions() {
        let mu = MeasureSpec::with_masses(&[(c(1.5), 0.3), (c(1.5), 0.1)], PrecisionTag::P128).unwrap();
        assert!(residue_identity_check(&mu, 3, 3).is_err());
        assert!(residue_identity_check(&mu, 3, 2).is_err());
    }
}
