use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named sequence `n ↦ value`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum SeqFamily {
    /// `1 / (log log (n + shift))²`
    InvLoglogSq { shift: f64 },
    /// `scale · log log (n + shift)`
    ScaledLoglog { scale: f64, shift: f64 },
    /// `coef · n^exponent`
    PowerLaw { coef: f64, exponent: f64 },
    Constant { value: f64 },
}

impl SeqFamily {
    pub fn eval(&self, n: u64) -> f64 {
        let x = n as f64;
        match *self {
            SeqFamily::InvLoglogSq { shift } => (x + shift).ln().ln().powi(-2),
            SeqFamily::ScaledLoglog { scale, shift } => scale * (x + shift).ln().ln(),
            SeqFamily::PowerLaw { coef, exponent } => coef * x.powf(exponent),
            SeqFamily::Constant { value } => value,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SeqFamily::InvLoglogSq { .. } => "inv_loglog_sq",
            SeqFamily::ScaledLoglog { .. } => "scaled_loglog",
            SeqFamily::PowerLaw { .. } => "power_law",
            SeqFamily::Constant { .. } => "constant",
        }
    }
}

/// Schedules `ε_n`, `A_n` and the constant `C` of the `e^{C/ε_n}` tail terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleParams {
    #[serde(default = "ScheduleParams::default_eps")]
    pub eps: SeqFamily,
    #[serde(default = "ScheduleParams::default_a")]
    pub a: SeqFamily,
    /// `None` selects `2 Σ (1 - |ζ_k|)` from the spectrum.
    #[serde(default)]
    pub c_bound: Option<f64>,
}

impl Default for ScheduleParams {
    fn default() -> Self {
        Self {
            eps: Self::default_eps(),
            a: Self::default_a(),
            c_bound: None,
        }
    }
}

impl ScheduleParams {
    fn default_eps() -> SeqFamily {
        SeqFamily::InvLoglogSq { shift: 16.0 }
    }

    fn default_a() -> SeqFamily {
        SeqFamily::ScaledLoglog { scale: 0.5, shift: 16.0 }
    }

    pub fn describe(&self) -> String {
        format!("eps={} A={}", self.eps.name(), self.a.name())
    }

    pub fn eps_n(&self, n: u64) -> f64 {
        self.eps.eval(n)
    }

    pub fn a_n(&self, n: u64) -> f64 {
        self.a.eval(n)
    }

    /// `δ_n = log n · exp(-1/(A_n ε_n))`.
    pub fn delta_n(&self, n: u64) -> f64 {
        (n as f64).ln() * (-1.0 / (self.a_n(n) * self.eps_n(n))).exp()
    }

    /// `k_n = ⌊A_n ε_n n⌋`.
    pub fn k_n(&self, n: u64) -> u64 {
        (self.a_n(n) * self.eps_n(n) * n as f64).floor() as u64
    }

    /// `l_n = ⌈A_n k_n⌉`.
    pub fn l_n(&self, n: u64) -> u64 {
        (self.a_n(n) * self.k_n(n) as f64).ceil() as u64
    }

    /// Checks, on the given increasing grid, that `ε_n ∈ (0, 1]`, `A_n` grows,
    /// `A_n ε_n` shrinks and `δ_n` is strictly decreasing.
    pub fn validate(&self, grid: &[u64]) -> Result<()> {
        let fail = |what: String| Err(Error::ScheduleViolation(format!("{}: {what}", self.describe())));
        if grid.len() < 2 {
            return fail("validation needs at least two grid points".into());
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return fail("n grid must be strictly increasing".into());
        }
        if let Some(c) = self.c_bound {
            if !(c > 0.0) || !c.is_finite() {
                return fail(format!("c_bound must be positive, got {c}"));
            }
        }
        for &n in grid {
            let (e, a) = (self.eps_n(n), self.a_n(n));
            if !(e > 0.0 && e <= 1.0) {
                return fail(format!("eps_n = {e} outside (0, 1] at n = {n}"));
            }
            if !(a > 0.0) || !a.is_finite() {
                return fail(format!("A_n = {a} not positive at n = {n}"));
            }
        }
        let (first, last) = (grid[0], grid[grid.len() - 1]);
        if self.a_n(last) <= self.a_n(first) || grid.windows(2).any(|w| self.a_n(w[1]) < self.a_n(w[0])) {
            return fail("A_n does not grow over the grid".into());
        }
        let ae = |n| self.a_n(n) * self.eps_n(n);
        if ae(last) >= ae(first) || grid.windows(2).any(|w| ae(w[1]) > ae(w[0])) {
            return fail("A_n eps_n does not shrink over the grid".into());
        }
        if let Some(w) = grid.windows(2).find(|w| self.delta_n(w[1]) >= self.delta_n(w[0])) {
            return fail(format!(
                "delta_n not decreasing between n = {} ({}) and n = {} ({})",
                w[0],
                self.delta_n(w[0]),
                w[1],
                self.delta_n(w[1])
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_schedule_values() {
        let s = ScheduleParams::default();
        assert_eq!(s.k_n(64), 21);
        assert_eq!(s.l_n(64), 16);
        let ll = (80f64).ln().ln();
        assert!((s.a_n(64) * s.eps_n(64) - 0.5 / ll).abs() < 1e-15);
        assert!((s.delta_n(64) - 64f64.ln() / 80f64.ln().powi(2)).abs() < 1e-14);
    }

    #[test]
    fn default_schedule_validates_from_32() {
        let s = ScheduleParams::default();
        s.validate(&[32, 64, 128, 256, 1024]).unwrap();
        assert!(matches!(s.validate(&[8, 16]), Err(Error::ScheduleViolation(_))));
    }

    #[test]
    fn constant_a_is_rejected() {
        let s = ScheduleParams {
            a: SeqFamily::Constant { value: 2.0 },
            ..Default::default()
        };
        assert!(s.validate(&[32, 64]).is_err());
    }

    #[test]
    fn json_defaults() {
        let s: ScheduleParams = serde_json::from_str("{}").unwrap();
        assert_eq!(s, ScheduleParams::default());
        let s: ScheduleParams =
            serde_json::from_str(r#"{"eps": {"family": "power_law", "coef": 1.0, "exponent": -0.1}}"#).unwrap();
        assert!((s.eps_n(1024) - 1024f64.powf(-0.1)).abs() < 1e-15);
    }
}
