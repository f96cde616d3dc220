//! Manifest-driven experiment runner behind the `szego-lab` binary.
//!
//! Every command writes `certificates.csv` (fixed column order, shortest
//! round-trip decimals) and `report.json` (summary, the same rows, and a
//! reproducibility stanza) into the output directory.

mod manifest;
mod runner;
mod zeros;

pub use manifest::{Command, RunManifest};
pub use runner::{error_json, run, thread_cap, write_json, RunOutcome, THREADS_ENV, VERSION};
pub use zeros::{generate_zeros, instance_seed, ZeroKind};
