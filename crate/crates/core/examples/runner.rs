//! Seeded zero generation and a small reproducible vs-bound run written to a
//! temporary directory.

use szego_lab::cli::{generate_zeros, run, Command, RunManifest, ZeroKind};

fn main() -> szego_lab::Result<()> {
    for kind in [ZeroKind::UniformDisk, ZeroKind::BoundaryCluster, ZeroKind::RadialLine] {
        let z = generate_zeros(kind, 4, 2024)?;
        let moduli: Vec<String> = z.zeros().iter().map(|z| format!("{:.4}", z.norm())).collect();
        println!("{kind:?}: |z| = [{}]", moduli.join(", "));
    }

    let out = std::env::temp_dir().join("szego-lab-runner-example");
    let manifest = RunManifest {
        out_dir: Some(out),
        n_grid: vec![8, 16],
        instances: 4,
        seed: 2024,
        ..RunManifest::default()
    };
    let outcome = run(manifest, Command::VsBound)?;
    println!("summary: {}", serde_json::to_string_pretty(&outcome.summary).unwrap());
    println!("csv: {}", outcome.csv.display());
    Ok(())
}
