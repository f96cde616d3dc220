use serde::Serialize;

use crate::error::{Error, Result};

use super::measure::PointSpectrum;

/// One row `(log n)^A · Σ_{1<|z_k|<1+1/n} μ_k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogConditionRow {
    pub a: f64,
    pub n: u64,
    pub tail_mass: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogConditionReport {
    pub rows: Vec<LogConditionRow>,
    /// `(A, bounded over the tested range)`.
    pub bounded: Vec<(f64, bool)>,
}

impl LogConditionReport {
    /// True when at least one exponent looks bounded.
    pub fn passes(&self) -> bool {
        self.bounded.iter().any(|&(_, ok)| ok)
    }

    pub fn require(&self) -> Result<()> {
        if self.passes() {
            Ok(())
        } else {
            Err(Error::LogConditionFailed)
        }
    }
}

/// Mass of the points in the annulus `1 < |z| < 1 + 1/n`.
pub fn tail_mass(spectrum: &PointSpectrum, n: u64) -> f64 {
    let outer = 1.0 + 1.0 / n as f64;
    spectrum
        .masses()
        .iter()
        .filter(|m| m.z.norm() < outer)
        .fold(0.0, |acc, m| acc + m.mu)
}

/// `n = 2, 4, 8, …` up to `n_max`, plus `n_max` itself.
pub fn log_spaced(n_max: u64) -> Vec<u64> {
    let mut ns: Vec<u64> = std::iter::successors(Some(2u64), |&n| n.checked_mul(2))
        .take_while(|&n| n <= n_max)
        .collect();
    if n_max >= 2 && ns.last() != Some(&n_max) {
        ns.push(n_max);
    }
    ns
}

/// Boundedness is judged on the tested range: the largest value on the upper
/// half of the `n` grid may not exceed twice the largest value on the lower half.
pub fn log_condition_report(spectrum: &PointSpectrum, a_list: &[f64], n_max: u64) -> Result<LogConditionReport> {
    if a_list.is_empty() {
        return Err(Error::Precondition("A list is empty".into()));
    }
    if n_max < 2 {
        return Err(Error::InvalidInput(format!("n_max must be >= 2, got {n_max}")));
    }
    let ns = log_spaced(n_max);
    let tails: Vec<f64> = ns.iter().map(|&n| tail_mass(spectrum, n)).collect();
    let mut rows = Vec::new();
    let mut bounded = Vec::new();
    for &a in a_list {
        let values: Vec<f64> = ns
            .iter()
            .zip(&tails)
            .map(|(&n, &t)| (n as f64).ln().powf(a) * t)
            .collect();
        let half = values.len() / 2;
        let lower = values[..half.max(1)].iter().cloned().fold(0.0, f64::max);
        let upper = values[half..].iter().cloned().fold(0.0, f64::max);
        bounded.push((a, upper <= 2.0 * lower || upper == 0.0));
        rows.extend(ns.iter().zip(&tails).zip(values).map(|((&n, &t), v)| LogConditionRow {
            a,
            n,
            tail_mass: t,
            value: v,
        }));
    }
    Ok(LogConditionReport { rows, bounded })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn finite_spectrum_passes() {
        let sp = PointSpectrum::from_pairs(&[(Complex64::new(1.5, 0.0), 0.3)]).unwrap();
        let r = log_condition_report(&sp, &[1.0, 2.0], 64).unwrap();
        assert!(r.rows.iter().filter(|row| row.n >= 4).all(|row| row.value == 0.0));
        assert!(r.passes());
    }

    #[test]
    fn geometric_spectrum_matches_direct_sum() {
        let pairs: Vec<_> = (1..=40)
            .map(|k| (Complex64::new(1.0 + 2f64.powi(-k), 0.0), 2f64.powi(-k)))
            .collect();
        let sp = PointSpectrum::from_pairs(&pairs).unwrap();
        let r = log_condition_report(&sp, &[1.0, 2.0], 1 << 12).unwrap();
        for row in &r.rows {
            // |z_k| < 1 + 1/n  <=>  2^k > n
            let direct: f64 = (1..=40).filter(|&k| 2f64.powi(k) > row.n as f64).map(|k| 2f64.powi(-k)).sum();
            assert!((row.tail_mass - direct).abs() < 1e-15);
            assert!((row.value - (row.n as f64).ln().powf(row.a) * direct).abs() < 1e-12);
        }
        assert!(r.passes());
    }

    #[test]
    fn empty_spectrum_and_bad_input() {
        let r = log_condition_report(&PointSpectrum::empty(), &[1.0], 100).unwrap();
        assert!(r.rows.iter().all(|row| row.value == 0.0));
        assert!(log_condition_report(&PointSpectrum::empty(), &[], 100).is_err());
    }
}
