use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::asymptotics::{ScheduleParams, Which};
use crate::error::{parse_json, Error, Result};
use crate::xlinalg::PrecisionTag;

use super::zeros::ZeroKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VsBound,
    Besov,
    Opuc,
    Pipeline,
    ResidueCheck,
    LogCondition,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VsBound => "vs-bound",
            Command::Besov => "besov",
            Command::Opuc => "opuc",
            Command::Pipeline => "pipeline",
            Command::ResidueCheck => "residue-check",
            Command::LogCondition => "log-condition",
        }
    }

    fn needs_measure(self) -> bool {
        matches!(
            self,
            Command::Opuc | Command::Pipeline | Command::ResidueCheck | Command::LogCondition
        )
    }
}

/// A run description. Relative paths are resolved against the manifest's directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub command: Option<Command>,
    /// Measure JSON (`opuc`, `pipeline`, `residue-check`, `log-condition`).
    pub measure_file: Option<PathBuf>,
    /// Fixed zero set `[[re, im], …]` for `vs-bound`/`besov` instead of generated ones.
    pub zeros_file: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    /// Overrides the measure file's precision when set.
    pub precision_bits: Option<u32>,
    #[serde(default = "defaults::oversample")]
    pub oversample: usize,
    #[serde(default)]
    pub n_grid: Vec<u64>,
    /// Instances per `(kind, n)` in sweeps.
    #[serde(default = "defaults::instances")]
    pub instances: usize,
    #[serde(default = "defaults::kinds")]
    pub kinds: Vec<ZeroKind>,
    /// Corrector parameter `ε`; sweeps run once per value.
    #[serde(default = "defaults::epsilons")]
    pub epsilons: Vec<f64>,
    #[serde(default)]
    pub schedule: ScheduleParams,
    #[serde(default = "defaults::which")]
    pub which: Which,
    /// Residue terms `k` for `residue-check`.
    #[serde(default = "defaults::k_list")]
    pub k_list: Vec<usize>,
    /// Exponents `A` for `log-condition`.
    #[serde(default = "defaults::a_list")]
    pub a_list: Vec<f64>,
    pub n_max: Option<u64>,
}

mod defaults {
    use super::*;

    pub fn oversample() -> usize {
        crate::circle_fourier::DEFAULT_OVERSAMPLE
    }
    pub fn instances() -> usize {
        20
    }
    pub fn kinds() -> Vec<ZeroKind> {
        vec![ZeroKind::UniformDisk, ZeroKind::BoundaryCluster]
    }
    pub fn epsilons() -> Vec<f64> {
        vec![1.0]
    }
    pub fn which() -> Which {
        Which::Both
    }
    pub fn k_list() -> Vec<usize> {
        vec![0, 1, 2]
    }
    pub fn a_list() -> Vec<f64> {
        vec![1.0, 2.0]
    }
}

impl Default for RunManifest {
    fn default() -> Self {
        parse_json("{}").expect("empty manifest is valid")
    }
}

impl RunManifest {
    /// Reads a manifest and resolves its relative paths.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("manifest {}: {e}", path.display())))?;
        let mut m: RunManifest = parse_json(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut m.measure_file, &mut m.zeros_file, &mut m.out_dir].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(m)
    }

    pub fn default_n_grid(command: Command) -> Vec<u64> {
        match command {
            Command::VsBound | Command::Besov => vec![4, 8, 16, 32, 64, 128, 256],
            Command::Opuc => vec![8, 16, 24, 32, 40, 48],
            Command::Pipeline => vec![32, 64],
            Command::ResidueCheck => vec![4, 8, 12],
            Command::LogCondition => vec![],
        }
    }

    /// Checks the manifest for `command`, filling defaults that depend on it.
    pub fn resolve(mut self, command: Command) -> Result<Self> {
        if let Some(c) = self.command {
            if c != command {
                return Err(Error::InvalidInput(format!(
                    "command: manifest says {} but {} was requested",
                    c.name(),
                    command.name()
                )));
            }
        }
        self.command = Some(command);
        if self.n_grid.is_empty() {
            self.n_grid = Self::default_n_grid(command);
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("n_grid: must be strictly increasing".into()));
        }
        if let Some(bits) = self.precision_bits {
            PrecisionTag::new(bits)
                .map_err(|_| Error::InvalidInput(format!("precision_bits: unsupported value {bits}")))?;
        }
        if self.oversample < 4 {
            return Err(Error::InvalidInput(format!("oversample: must be >= 4, got {}", self.oversample)));
        }
        if command.needs_measure() {
            match &self.measure_file {
                None => return Err(Error::InvalidInput("measure_file: required for this command".into())),
                Some(p) if !p.exists() => {
                    return Err(Error::InvalidInput(format!("measure_file: {} does not exist", p.display())))
                }
                _ => {}
            }
        }
        if let Some(p) = &self.zeros_file {
            if !p.exists() {
                return Err(Error::InvalidInput(format!("zeros_file: {} does not exist", p.display())));
            }
        }
        if self.instances == 0 {
            return Err(Error::InvalidInput("instances: must be >= 1".into()));
        }
        if self.epsilons.iter().any(|e| !(*e > 0.0 && *e <= 1.0)) {
            return Err(Error::InvalidInput("epsilons: values must lie in (0, 1]".into()));
        }
        Ok(self)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out_dir.clone().unwrap_or_else(|| PathBuf::from("szego-out"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_resolution() {
        let m = RunManifest::default().resolve(Command::VsBound).unwrap();
        assert_eq!(m.n_grid, vec![4, 8, 16, 32, 64, 128, 256]);
        assert_eq!(m.instances, 20);
        assert!(RunManifest::default().resolve(Command::Opuc).is_err());
    }

    #[test]
    fn field_errors_are_named() {
        let e = parse_json::<RunManifest>(r#"{"n_grid": "x"}"#).unwrap_err();
        assert!(e.to_string().contains("n_grid"), "{e}");
        let e = parse_json::<RunManifest>(r#"{"command": "nope"}"#).unwrap_err();
        assert!(e.to_string().contains("command"), "{e}");
    }

    #[test]
    fn command_mismatch() {
        let m: RunManifest = parse_json(r#"{"command": "besov"}"#).unwrap();
        assert!(m.clone().resolve(Command::VsBound).is_err());
        assert!(m.resolve(Command::Besov).is_ok());
    }
}
