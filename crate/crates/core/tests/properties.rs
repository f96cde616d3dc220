use num_complex::Complex64;
use proptest::prelude::*;
use szego_lab::blaschke::{BlaschkeProduct, ZeroSet};
use szego_lab::circle_fourier::{convolve, kernel_coeffs, sup_norm, KernelSpec, LaurentPolynomial};
use szego_lab::measure_opuc::{gram_laurent, gram_polynomial, tau_n, MeasureSpec};
use szego_lab::xlinalg::{cholesky, constrained_max_leading, schur_leading, PrecisionTag};

fn coeffs(max: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b)), 1..max)
}

fn laurent() -> impl Strategy<Value = LaurentPolynomial> {
    (-6i64..6, coeffs(10)).prop_map(|(lo, c)| LaurentPolynomial::new(lo, c))
}

fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0..0.97f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn outer_masses(max: usize) -> impl Strategy<Value = Vec<(Complex64, f64)>> {
    prop::collection::vec(
        (1.1..3.0f64, 0.0..std::f64::consts::TAU, 0.01..1.0f64).prop_map(|(r, t, m)| (Complex64::from_polar(r, t), m)),
        0..max,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_evaluates_pointwise(f in laurent(), g in laurent(), t in 0.0..6.3f64) {
        let z = unit(t);
        let lhs = (&f * &g).eval(z);
        let rhs = f.eval(z) * g.eval(z);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
    }

    #[test]
    fn reflection_is_conjugation_on_circle(f in laurent(), t in 0.0..6.3f64) {
        let z = unit(t);
        prop_assert!((f.reflect().eval(z) - f.eval(z).conj()).norm() < 1e-10);
        prop_assert!((f.shift(3).eval(z) - z.powi(3) * f.eval(z)).norm() < 1e-10);
    }

    #[test]
    fn sup_estimate_brackets_samples(f in laurent(), t in 0.0..6.3f64) {
        let est = sup_norm(&f, 16).unwrap();
        prop_assert!(f.eval(unit(t)).norm() <= est.upper() + 1e-12);
    }

    #[test]
    fn blaschke_is_unimodular(zs in prop::collection::vec(disk_point(), 1..8), t in 0.0..6.3f64) {
        let b = BlaschkeProduct::new(ZeroSet::inside(zs.clone()).unwrap()).unwrap();
        prop_assert!((b.eval(unit(t)).unwrap().norm() - 1.0).abs() < 1e-10);
        for z in zs {
            prop_assert!(b.eval(z).unwrap().norm() < 1e-10);
        }
    }

    #[test]
    fn vp_kernel_fixes_low_band(n in 1u64..40, f in laurent()) {
        // VP_n reproduces everything supported in |j| <= n
        let low = f.restrict(-(n as i64), n as i64);
        let out = convolve(&low, KernelSpec::ModifiedVP(n));
        prop_assert!((&out - &low).coeff_norm_sq() < 1e-20);
        let k = kernel_coeffs(KernelSpec::ModifiedVP(n)).unwrap();
        prop_assert!((k.eval(Complex64::new(1.0, 0.0)).re - 3.0 * n as f64).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gram_is_nested_and_positive(masses in outer_masses(3), n in 1i64..6) {
        let mu = MeasureSpec::with_masses(&masses, PrecisionTag::P128).unwrap();
        let big = gram_polynomial(&mu, n + 1).unwrap();
        let small = gram_polynomial(&mu, n).unwrap();
        prop_assert!(cholesky(&big).is_ok());
        for i in 0..small.dim() {
            for j in 0..small.dim() {
                prop_assert!((big.get_c64(i, j) - small.get_c64(i, j)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn schur_and_extremal_agree(masses in outer_masses(3), n in 1i64..6) {
        let mu = MeasureSpec::with_masses(&masses, PrecisionTag::P128).unwrap();
        let g = gram_laurent(&mu, n).unwrap();
        let schur = schur_leading(&g).unwrap();
        let eta = constrained_max_leading(&g).unwrap().eta;
        let rel = (schur.clone() - &eta).abs() / eta;
        prop_assert!(rel.to_f64() < 1e-25, "relative gap {}", rel.to_f64());
    }

    #[test]
    fn tau_is_rotation_invariant(masses in outer_masses(3), t in 0.0..6.3f64) {
        let mu = MeasureSpec::with_masses(&masses, PrecisionTag::P128).unwrap();
        let rot: Vec<_> = masses.iter().map(|&(z, m)| (z * unit(t), m)).collect();
        let nu = MeasureSpec::with_masses(&rot, PrecisionTag::P128).unwrap();
        let a = tau_n(&mu, 5).unwrap().to_f64();
        let b = tau_n(&nu, 5).unwrap().to_f64();
        prop_assert!((a - b).abs() < 1e-12, "{} vs {}", a, b);
        prop_assert!(a <= 1.0 + 1e-15);
    }
}
