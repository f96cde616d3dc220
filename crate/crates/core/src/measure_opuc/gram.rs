use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::xlinalg::{constrained_max_leading, schur_leading, HermitianMatrix, PrecisionTag};

use super::element::MpLaurent;
use super::measure::{pow_mp, MeasureSpec};

/// Exponents `0..=n`.
pub fn polynomial_basis(n: i64) -> Vec<i64> {
    (0..=n).collect()
}

/// Exponents `-(n-1)..=n`; the pivot `z^n` comes last.
pub fn laurent_basis(n: i64) -> Vec<i64> {
    (-(n - 1)..=n).collect()
}

/// Gram matrix `G_ab = ⟨z^{e_b}, z^{e_a}⟩` over the given exponents, at `prec`.
pub fn gram_over(mu: &MeasureSpec, exps: &[i64], prec: PrecisionTag) -> Result<HermitianMatrix> {
    let bits = prec.bits();
    let dim = exps.len();
    // AC part depends only on e_b - e_a: fetch the table once
    let (lo, hi) = (exps[0], exps[dim - 1]);
    let ac: Vec<Complex> = (0..=(hi - lo)).map(|m| mu.ac_moment_at(m, prec)).collect::<Result<_>>()?;
    // masses: precompute μ_k z_k^{e} (and its conjugate pairing)
    let masses: Vec<(Float, Vec<Complex>)> = mu
        .spectrum()
        .masses()
        .iter()
        .map(|m| {
            let z = crate::xlinalg::from_c64(prec, m.z);
            let first = pow_mp(&z, lo, prec);
            let mut powers = Vec::with_capacity(dim);
            let mut p = first;
            let mut prev = lo;
            for &e in exps {
                if e != prev {
                    p *= pow_mp(&z, e - prev, prec);
                    prev = e;
                }
                powers.push(p.clone());
            }
            (Float::with_val(bits, m.mu), powers)
        })
        .collect();
    Ok(HermitianMatrix::from_lower(dim, prec, |a, b| {
        // entry (a, b) = ∫ z^{e_b} conj(z^{e_a}) dμ, with a >= b so e_b - e_a <= 0
        let mut v = ac[(exps[a] - exps[b]) as usize].clone().conj();
        for (w, powers) in &masses {
            v += Complex::with_val(bits, &powers[b] * powers[a].clone().conj()) * w;
        }
        v
    }))
}

pub fn gram_polynomial(mu: &MeasureSpec, n: i64) -> Result<HermitianMatrix> {
    if n < 0 {
        return Err(Error::InvalidInput(format!("n must be >= 0, got {n}")));
    }
    gram_over(mu, &polynomial_basis(n), mu.precision())
}

pub fn gram_laurent(mu: &MeasureSpec, n: i64) -> Result<HermitianMatrix> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("n must be >= 1, got {n}")));
    }
    gram_over(mu, &laurent_basis(n), mu.precision())
}

/// Leading coefficient with the precision actually used.
#[derive(Clone, Debug)]
pub struct LeadingCoefficient {
    pub value: Float,
    pub bits_used: u32,
    /// Precisions that failed before `bits_used` succeeded.
    pub failed_bits: Vec<u32>,
}

impl LeadingCoefficient {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

/// Runs `f` at the measure's precision and retries at the next tag on a
/// `NotPositiveDefinite` failure; the final error keeps the last precision.
fn with_escalation<T>(mu: &MeasureSpec, mut f: impl FnMut(PrecisionTag) -> Result<T>) -> Result<(T, u32, Vec<u32>)> {
    let mut prec = mu.precision();
    let mut failed = Vec::new();
    loop {
        match f(prec) {
            Ok(v) => return Ok((v, prec.bits(), failed)),
            Err(e @ Error::NotPositiveDefinite { .. }) => {
                failed.push(prec.bits());
                match prec.next() {
                    Some(p) => prec = p,
                    None => return Err(e),
                }
            }
            Err(e) => return Err(e),
        }
    }
}

fn leading(mu: &MeasureSpec, exps: &[i64]) -> Result<LeadingCoefficient> {
    let (value, bits_used, failed_bits) = with_escalation(mu, |p| schur_leading(&gram_over(mu, exps, p)?))?;
    Ok(LeadingCoefficient {
        value,
        bits_used,
        failed_bits,
    })
}

/// `τ_n`, leading coefficient of the orthonormal polynomial `P_n`.
pub fn tau_n(mu: &MeasureSpec, n: i64) -> Result<LeadingCoefficient> {
    if n < 0 {
        return Err(Error::InvalidInput(format!("n must be >= 0, got {n}")));
    }
    leading(mu, &polynomial_basis(n))
}

/// `η_n`, the `z^n` coefficient of the orthonormal Laurent function `R_{n,-(n-1)}`.
pub fn eta_n(mu: &MeasureSpec, n: i64) -> Result<LeadingCoefficient> {
    if n < 1 {
        return Err(Error::InvalidInput(format!("n must be >= 1, got {n}")));
    }
    leading(mu, &laurent_basis(n))
}

/// `P_n` or `R_{n,-(n-1)}` with its orthonormality residuals.
#[derive(Clone, Debug)]
pub struct OrthonormalElement {
    pub element: MpLaurent,
    pub leading: Float,
    pub bits_used: u32,
    /// `|‖f‖² - 1|`.
    pub norm_defect: f64,
    /// `max_j |⟨f, z^j⟩|` over the lower basis exponents.
    pub orthogonality_residual: f64,
}

pub fn orthonormal_element(mu: &MeasureSpec, n: i64, laurent: bool) -> Result<OrthonormalElement> {
    let exps = if laurent {
        if n < 1 {
            return Err(Error::InvalidInput(format!("n must be >= 1, got {n}")));
        }
        laurent_basis(n)
    } else {
        if n < 0 {
            return Err(Error::InvalidInput(format!("n must be >= 0, got {n}")));
        }
        polynomial_basis(n)
    };
    let ((g, sol), bits_used, _) = with_escalation(mu, |p| {
        let g = gram_over(mu, &exps, p)?;
        let sol = constrained_max_leading(&g)?;
        Ok((g, sol))
    })?;
    let bits = g.precision().bits();
    let dim = g.dim();
    // (Gc)_a = ⟨f, z^{e_a}⟩
    let mut ortho = 0.0f64;
    let mut norm_sq = Complex::new(bits);
    for a in 0..dim {
        let mut s = Complex::new(bits);
        for b in 0..dim {
            s += g.get(a, b) * &sol.witness[b];
        }
        if a + 1 < dim {
            ortho = ortho.max(Float::with_val(bits, s.abs_ref()).to_f64());
        }
        norm_sq += sol.witness[a].clone().conj() * s;
    }
    let norm_defect = Float::with_val(bits, Complex::with_val(bits, &norm_sq - 1u32).abs_ref()).to_f64();
    Ok(OrthonormalElement {
        element: MpLaurent::new(exps[0], sol.witness, g.precision()),
        leading: sol.eta,
        bits_used,
        norm_defect,
        orthogonality_residual: ortho,
    })
}
