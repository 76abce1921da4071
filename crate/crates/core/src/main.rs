use std::process::ExitCode;

use scla_sim::cli::{parse_args, Parsed, RunRequest};
use scla_sim::config::ExperimentConfig;
use scla_sim::report::{run_experiment, run_seeds, write_outputs};
use scla_sim::Result;

fn execute(req: RunRequest) -> Result<()> {
    if let [seed] = req.seeds[..] {
        let config = ExperimentConfig { seed, ..req.config };
        let report = run_experiment(&config)?;
        let files = write_outputs(&report, &config.out_dir)?;
        println!(
            "{} seed {}: mean successes {} -> {}",
            config.mode,
            seed,
            report.mean_successes().map_or("NA".into(), |m| format!("{m:.1}")),
            files.epochs.display()
        );
        return Ok(());
    }
    let reports = run_seeds(&req.config, &req.seeds)?;
    for report in &reports {
        let dir = req.config.out_dir.join(format!("seed-{}", report.config.seed));
        write_outputs(report, &dir)?;
        println!(
            "{} seed {}: mean successes {} -> {}",
            report.mode,
            report.config.seed,
            report.mean_successes().map_or("NA".into(), |m| format!("{m:.1}")),
            dir.display()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let outcome = parse_args(std::env::args().skip(1)).and_then(|parsed| match parsed {
        Parsed::Help(text) => {
            print!("{text}");
            Ok(())
        }
        Parsed::Run(req) => execute(*req),
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("scla-sim: {}", e.to_string().replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
