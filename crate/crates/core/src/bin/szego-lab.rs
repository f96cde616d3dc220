use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use szego_lab::cli::{self, Command, RunManifest};

/// Corrector certificates and OPUC leading-coefficient experiments.
#[derive(Parser)]
#[command(name = "szego-lab", version)]
struct Args {
    #[command(subcommand)]
    command: Sub,
    /// Run manifest (JSON).
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    /// Output directory (overrides the manifest).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    precision_bits: Option<u32>,
    #[arg(long, global = true)]
    oversample: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Sub {
    /// sup|φ₀| and sup|(Bφ₀)'|/n over seeded zero sets
    VsBound,
    /// second-derivative and Besov ratios over seeded zero sets
    Besov,
    /// τ_n, η_n and their distance to B(0)ψ(0)
    Opuc,
    /// lower-bound pipelines with per-n certificates
    Pipeline,
    /// residue identity for the orthonormal Laurent functions
    ResidueCheck,
    /// condition (log) report for the point spectrum
    LogCondition,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::VsBound => Command::VsBound,
            Sub::Besov => Command::Besov,
            Sub::Opuc => Command::Opuc,
            Sub::Pipeline => Command::Pipeline,
            Sub::ResidueCheck => Command::ResidueCheck,
            Sub::LogCondition => Command::LogCondition,
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = (|| {
        let mut m = match &args.manifest {
            Some(p) => RunManifest::load(p)?,
            None => RunManifest::default(),
        };
        if args.out.is_some() {
            m.out_dir = args.out.clone();
        }
        if let Some(s) = args.seed {
            m.seed = s;
        }
        if args.precision_bits.is_some() {
            m.precision_bits = args.precision_bits;
        }
        if let Some(o) = args.oversample {
            m.oversample = o;
        }
        cli::run(m, args.command.into())
    })();
    match result {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.summary).unwrap_or_default());
            eprintln!("wrote {} and {}", out.csv.display(), out.report.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", cli::error_json(&e));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
