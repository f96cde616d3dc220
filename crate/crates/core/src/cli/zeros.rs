use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blaschke::ZeroSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    /// Uniform in area on the open disk.
    UniformDisk,
    /// Moduli uniform in `[1 - 4/n, 1 - 1/(4n)]`, stressing the derivative bound.
    BoundaryCluster,
    /// `{r, r², …, rⁿ} e^{iθ₀}` with `r ∈ [0.5, 0.95]`.
    RadialLine,
}

impl ZeroKind {
    pub fn name(self) -> &'static str {
        match self {
            ZeroKind::UniformDisk => "uniform_disk",
            ZeroKind::BoundaryCluster => "boundary_cluster",
            ZeroKind::RadialLine => "radial_line",
        }
    }

    fn tag(self) -> u64 {
        match self {
            ZeroKind::UniformDisk => 1,
            ZeroKind::BoundaryCluster => 2,
            ZeroKind::RadialLine => 3,
        }
    }
}

/// Seed of instance `i` at size `n` in a sweep with base seed `seed`.
pub fn instance_seed(seed: u64, kind: ZeroKind, n: usize, i: usize) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for v in [kind.tag(), n as u64, i as u64] {
        h = (h ^ v).wrapping_mul(0x1000_0000_01b3).rotate_left(29);
    }
    h
}

/// Deterministic pseudo-random zero set of size `n` inside the disk.
pub fn generate_zeros(kind: ZeroKind, n: usize, seed: u64) -> Result<ZeroSet> {
    if n == 0 {
        return Err(Error::InvalidInput("zero count must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zeros = match kind {
        ZeroKind::UniformDisk => (0..n)
            .map(|_| Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU)))
            .collect(),
        ZeroKind::BoundaryCluster => {
            let hi = 1.0 - 1.0 / (4.0 * n as f64);
            let lo = (1.0 - 4.0 / n as f64).max(0.0);
            (0..n)
                .map(|_| Complex64::from_polar(rng.gen_range(lo..=hi), rng.gen_range(0.0..TAU)))
                .collect()
        }
        ZeroKind::RadialLine => {
            let r: f64 = rng.gen_range(0.5..0.95);
            let dir = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
            (1..=n as i32).map(|j| dir * r.powi(j)).collect()
        }
    };
    ZeroSet::inside(zeros)
}
