use rug::{Complex, Float};

use super::matrix::{HermitianMatrix, PrecisionTag};
use crate::error::{Error, Result};

/// Lower-triangular `L` with `L L* = G`, column-major.
#[derive(Clone, Debug)]
pub struct CholeskyFactor {
    dim: usize,
    prec: PrecisionTag,
    l: Vec<Complex>,
}

impl CholeskyFactor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex {
        &self.l[i + j * self.dim]
    }

    /// `‖LL* - G‖_F / ‖G‖_F`.
    pub fn relative_residual(&self, g: &HermitianMatrix) -> f64 {
        let bits = self.prec.bits();
        let n = self.dim;
        let mut num = Float::new(bits);
        for j in 0..n {
            for i in 0..n {
                let mut acc = g.get(i, j).clone();
                for k in 0..=i.min(j) {
                    let prod = Complex::with_val(bits, self.get(i, k) * self.get(j, k).clone().conj());
                    acc -= prod;
                }
                num += acc.norm().real();
            }
        }
        let den = g.frobenius_norm();
        (num.sqrt() / den).to_f64()
    }
}

/// Hermitian Cholesky factorization without pivoting.
///
/// Fails with `NotPositiveDefinite` at the first pivot that is not strictly
/// positive at the matrix precision.
pub fn cholesky(g: &HermitianMatrix) -> Result<CholeskyFactor> {
    let n = g.dim();
    let prec = g.precision();
    let bits = prec.bits();
    let mut l = vec![Complex::new(bits); n * n];
    let mut row_conj: Vec<Complex> = Vec::with_capacity(n);
    for j in 0..n {
        // conj of row j of L, columns < j
        row_conj.clear();
        row_conj.extend((0..j).map(|k| l[j + k * n].clone().conj()));

        let mut d = g.get(j, j).real().clone();
        for k in 0..j {
            d -= row_conj[k].clone().norm().real();
        }
        if !(d > 0) {
            return Err(Error::NotPositiveDefinite { pivot: j, bits });
        }
        let pivot = d.sqrt();
        l[j + j * n] = Complex::with_val(bits, (&pivot, 0));

        for i in (j + 1)..n {
            let mut acc = g.get(i, j).clone();
            for (k, rc) in row_conj.iter().enumerate() {
                acc -= &l[i + k * n] * rc;
            }
            acc /= &pivot;
            l[i + j * n] = acc;
        }
    }
    Ok(CholeskyFactor { dim: n, prec, l })
}

/// Leading coefficient of the orthonormal element whose top basis vector is
/// the last coordinate: `1/√(G_NN - g* G_sub⁻¹ g) = 1/L_NN`.
pub fn schur_leading(g: &HermitianMatrix) -> Result<Float> {
    if g.dim() == 0 {
        return Err(Error::InvalidInput("empty Gram matrix".into()));
    }
    let f = cholesky(g)?;
    let last = g.dim() - 1;
    let lnn = f.get(last, last).real().clone();
    Ok(Float::with_val(g.precision().bits(), 1) / lnn)
}

/// Maximizer of `|v_N|` subject to `v* G v <= 1`.
#[derive(Clone, Debug)]
pub struct ExtremalSolution {
    pub eta: Float,
    /// `G⁻¹ e_N / √((G⁻¹)_NN)`; its last entry equals `eta`.
    pub witness: Vec<Complex>,
}

/// `v* G v`.
pub fn quadratic_form(g: &HermitianMatrix, v: &[Complex]) -> Complex {
    let bits = g.precision().bits();
    let n = g.dim();
    let mut acc = Complex::new(bits);
    for j in 0..n {
        let mut col = Complex::new(bits);
        for i in 0..n {
            col += g.get(i, j) * v[i].clone().conj();
        }
        acc += col * &v[j];
    }
    acc
}

/// Solves the extremal problem in closed form, `v = G⁻¹e_N / √((G⁻¹)_NN)`,
/// with `G⁻¹e_N` from Gaussian elimination with partial pivoting.
///
/// This route does not go through the Cholesky factor, so it can be
/// compared against [`schur_leading`].
pub fn constrained_max_leading(g: &HermitianMatrix) -> Result<ExtremalSolution> {
    let n = g.dim();
    if n == 0 {
        return Err(Error::InvalidInput("empty Gram matrix".into()));
    }
    let bits = g.precision().bits();
    // augmented rows [G | e_N]
    let mut a: Vec<Vec<Complex>> = (0..n)
        .map(|i| {
            let mut row: Vec<Complex> = (0..n).map(|j| g.get(i, j).clone()).collect();
            row.push(Complex::with_val(bits, if i == n - 1 { 1 } else { 0 }));
            row
        })
        .collect();

    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| {
                let ax = a[x][col].clone().abs().real().clone();
                let ay = a[y][col].clone().abs().real().clone();
                ax.partial_cmp(&ay).unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if a[piv][col].is_zero() {
            return Err(Error::NotPositiveDefinite { pivot: col, bits });
        }
        a.swap(col, piv);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        let inv = Complex::with_val(bits, 1) / &pivot_row[col];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = Complex::with_val(bits, &row[col] * &inv);
            for k in col..=n {
                row[k] -= &factor * &pivot_row[k];
            }
        }
    }
    let mut x = vec![Complex::new(bits); n];
    for i in (0..n).rev() {
        let mut acc = a[i][n].clone();
        for k in (i + 1)..n {
            acc -= &a[i][k] * &x[k];
        }
        x[i] = acc / &a[i][i];
    }

    let xn = x[n - 1].real().clone();
    if !(xn > 0) {
        return Err(Error::NotPositiveDefinite { pivot: n - 1, bits });
    }
    let eta = xn.sqrt();
    let witness = x.into_iter().map(|v| v / &eta).collect();
    Ok(ExtremalSolution { eta, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xlinalg::{from_c64, to_c64};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn diag(vals: &[f64], prec: PrecisionTag) -> HermitianMatrix {
        HermitianMatrix::from_lower(vals.len(), prec, |i, j| {
            Complex::with_val(prec.bits(), if i == j { vals[i] } else { 0.0 })
        })
    }

    pub(crate) fn random_pd(dim: usize, seed: u64, prec: PrecisionTag) -> HermitianMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
            .collect();
        let bits = prec.bits();
        HermitianMatrix::from_lower(dim, prec, |i, j| {
            let mut acc = Complex::with_val(bits, if i == j { 0.5 } else { 0.0 });
            for k in 0..dim {
                acc += from_c64(prec, a[i][k]) * from_c64(prec, a[j][k].conj());
            }
            acc
        })
    }

    #[test]
    fn cholesky_examples() {
        let p = PrecisionTag::P128;
        let id = HermitianMatrix::identity(3, p);
        let f = cholesky(&id).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(to_c64(f.get(i, j)), Complex64::new((i == j) as u8 as f64, 0.0));
            }
        }
        let f = cholesky(&diag(&[4.0], p)).unwrap();
        assert_eq!(to_c64(f.get(0, 0)), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn cholesky_two_by_two_oracle() {
        // [[1, a], [ā, 1 + |a|²]] = L L* with L = [[1, 0], [ā, 1]]
        let a = Complex64::new(1.0, 1.0);
        let rows = vec![
            vec![Complex64::new(1.0, 0.0), a],
            vec![a.conj(), Complex64::new(1.0 + a.norm_sqr(), 0.0)],
        ];
        let g = HermitianMatrix::from_rows(&rows, PrecisionTag::P256, 0.0).unwrap();
        let f = cholesky(&g).unwrap();
        assert_eq!(to_c64(f.get(0, 0)), Complex64::new(1.0, 0.0));
        assert_eq!(to_c64(f.get(1, 0)), a.conj());
        assert_eq!(to_c64(f.get(1, 1)), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn residual_scales_with_precision() {
        for (prec, seed) in [(PrecisionTag::P53, 1), (PrecisionTag::P256, 2)] {
            let g = random_pd(20, seed, prec);
            let f = cholesky(&g).unwrap();
            let bound = 20.0 * 2f64.powi(-(prec.bits() as i32) + 8);
            assert!(f.relative_residual(&g) <= bound, "{} bits", prec.bits());
        }
    }

    #[test]
    fn not_positive_definite_reports_pivot() {
        let g = diag(&[1.0, -2.0, 3.0], PrecisionTag::P128);
        assert!(matches!(cholesky(&g), Err(Error::NotPositiveDefinite { pivot: 1, bits: 128 })));
        assert!(matches!(schur_leading(&g), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn schur_examples() {
        let p = PrecisionTag::P128;
        assert_eq!(schur_leading(&HermitianMatrix::identity(4, p)).unwrap().to_f64(), 1.0);
        let v = schur_leading(&diag(&[1.3], p)).unwrap().to_f64();
        assert!((v - 1.0 / 1.3f64.sqrt()).abs() < 1e-15);
        assert!((v - 0.877_058).abs() < 1e-6);
        assert_eq!(schur_leading(&diag(&[1.0, 4.0], p)).unwrap().to_f64(), 0.5);
    }

    #[test]
    fn extremal_examples() {
        let p = PrecisionTag::P128;
        let s = constrained_max_leading(&HermitianMatrix::identity(2, p)).unwrap();
        assert_eq!(s.eta.to_f64(), 1.0);
        assert_eq!(to_c64(&s.witness[0]), Complex64::new(0.0, 0.0));
        assert_eq!(to_c64(&s.witness[1]), Complex64::new(1.0, 0.0));

        let s = constrained_max_leading(&diag(&[1.0, 4.0], p)).unwrap();
        assert_eq!(s.eta.to_f64(), 0.5);
        assert_eq!(to_c64(&s.witness[1]), Complex64::new(0.5, 0.0));
    }

    #[test]
    fn routes_agree_on_random_pd() {
        let p = PrecisionTag::P256;
        let g = random_pd(5, 42, p);
        let a = schur_leading(&g).unwrap();
        let b = constrained_max_leading(&g).unwrap().eta;
        let rel = (Float::with_val(256, &a - &b) / &a).abs().to_f64();
        assert!(rel < 1e-12, "{rel}");
    }
}
