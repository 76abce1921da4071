//! How the eight sensory-to-motor pathways evolve during training.
//!
//! Prints the group means every 100 steps of the first epoch, then the
//! final values, and writes `weights.csv`.

use scla_sim::{run_experiment, write_outputs, ConnectionGroup, ExperimentConfig};

fn main() -> scla_sim::Result<()> {
    let config = ExperimentConfig { epochs: 3, weight_trace: true, ..ExperimentConfig::default() };
    let report = run_experiment(&config)?;

    print!("{:>6}", "step");
    for g in ConnectionGroup::ALL {
        print!(" {:>7}", g.label());
    }
    println!();
    let row = |label: String, w: &[f64; 8]| {
        print!("{label:>6}");
        for x in w {
            print!(" {x:>7.3}");
        }
        println!();
    };
    for (step, w) in report.epochs[0].weight_samples.iter().enumerate().step_by(100) {
        row(step.to_string(), w);
    }
    row("end".into(), &report.final_weights().expect("scla run"));
    let files = write_outputs(&report, std::path::Path::new("out/weights"))?;
    println!("trace -> {}", files.weights.expect("trace requested").display());
    Ok(())
}
