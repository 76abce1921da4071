//! Automata alone versus automata plus the spiking network, same seeds.
//!
//! `cargo run --release --example cla_baseline -- [epochs]`

use scla_sim::{run_seeds, ExperimentConfig, Mode};

fn main() -> scla_sim::Result<()> {
    let epochs = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let seeds = [1, 2, 3];
    let base = ExperimentConfig { epochs, ..ExperimentConfig::default() };

    let mut means = Vec::new();
    for mode in [Mode::ClaOnly, Mode::Scla] {
        let reports = run_seeds(&ExperimentConfig { mode, ..base.clone() }, &seeds)?;
        let per_seed: Vec<f64> = reports.iter().filter_map(|r| r.mean_successes()).collect();
        let mean = per_seed.iter().sum::<f64>() / per_seed.len() as f64;
        println!("{:>8}: mean successes {mean:.1} per epoch ({per_seed:.1?})", mode.to_string());
        means.push(mean);
    }
    println!("ratio {:.2}; {:.1} moves per success without the network", means[1] / means[0], 1000.0 / means[0]);
    Ok(())
}
