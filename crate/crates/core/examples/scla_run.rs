//! The full SCLA experiment, written to CSV.
//!
//! `cargo run --release --example scla_run -- [epochs] [seed] [out-dir]`

use scla_sim::{run_experiment, write_outputs, ExperimentConfig};

fn main() -> scla_sim::Result<()> {
    let mut args = std::env::args().skip(1);
    let mut config = ExperimentConfig::default();
    if let Some(n) = args.next() {
        config.set("epochs", &n)?;
    }
    if let Some(s) = args.next() {
        config.set("seed", &s)?;
    }
    config.out_dir = args.next().unwrap_or_else(|| "out/scla".into()).into();

    let report = run_experiment(&config)?;
    for e in &report.epochs {
        let w = e.final_weights.unwrap_or_default();
        println!("epoch {:>2}: {:>4} successes   SUtoMU {:.2}  SUtoMD {:.2}", e.epoch, e.successes, w[0], w[1]);
    }
    let files = write_outputs(&report, &config.out_dir)?;
    println!("mean {:.1} -> {}", report.mean_successes().unwrap_or(f64::NAN), files.epochs.display());
    Ok(())
}
