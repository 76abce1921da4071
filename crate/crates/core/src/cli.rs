//! Argument parsing for `scla-sim run`.
//!
//! Precedence: built-in defaults, then `--config FILE`, then flags.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;

use crate::config::{load_config, ExperimentConfig, Mode};
use crate::error::{Result, SclaError};

#[derive(Debug, Parser)]
#[command(name = "scla-sim run", about = "Run an SCLA or CLA-only navigation experiment")]
struct RunArgs {
    /// `scla` or `cla-only`.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<Mode>,
    #[arg(long)]
    epochs: Option<usize>,
    /// Environment steps per epoch.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated seeds, each run independently into `OUT/seed-N`.
    #[arg(long, value_delimiter = ',', conflicts_with = "seed")]
    seeds: Option<Vec<u64>>,
    /// `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write `weights.csv`.
    #[arg(long)]
    weight_trace: bool,
    /// Override any config key, e.g. `--set tau_d=150`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: SclaError| e.to_string())
}

/// A fully resolved `run` invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRequest {
    pub config: ExperimentConfig,
    /// Seeds to run; a single entry means a single run into `config.out_dir`.
    pub seeds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Run(Box<RunRequest>),
    /// `--help` or `--version` output.
    Help(String),
}

/// Parses the arguments after the program name. A leading `run` is optional.
pub fn parse_args<I, S>(argv: I) -> Result<Parsed>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut args: Vec<String> = argv.into_iter().map(Into::into).collect();
    if args.first().map(String::as_str) == Some("run") {
        args.remove(0);
    }
    let parsed = match RunArgs::try_parse_from(std::iter::once("scla-sim run".to_string()).chain(args)) {
        Ok(p) => p,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Ok(Parsed::Help(e.render().to_string()));
        }
        Err(e) => {
            let text = e.render().to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            return Err(SclaError::Parse(line.trim_start_matches("error: ").to_string()));
        }
    };

    let mut config = match &parsed.config {
        Some(path) => load_config(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(m) = parsed.mode {
        config.mode = m;
    }
    if let Some(n) = parsed.epochs {
        config.epochs = n;
    }
    if let Some(n) = parsed.steps {
        config.steps_per_epoch = n;
    }
    if let Some(s) = parsed.seed {
        config.seed = s;
    }
    if let Some(dir) = parsed.out {
        config.out_dir = dir;
    }
    if parsed.weight_trace {
        config.weight_trace = true;
    }
    for kv in &parsed.overrides {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| SclaError::Parse(format!("expected KEY=VALUE after --set, got `{kv}`")))?;
        config.set(k.trim(), v)?;
    }
    config.validate()?;

    let seeds = match parsed.seeds {
        Some(s) if !s.is_empty() => s,
        _ => vec![config.seed],
    };
    Ok(Parsed::Run(Box::new(RunRequest { config, seeds })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<RunRequest> {
        match parse_args(args.iter().copied())? {
            Parsed::Run(r) => Ok(*r),
            Parsed::Help(h) => panic!("unexpected help: {h}"),
        }
    }

    #[test]
    fn flags_set_fields() {
        let r = run(&["--mode", "scla", "--epochs", "20", "--seed", "7"]).unwrap();
        assert_eq!(r.config.mode, Mode::Scla);
        assert_eq!(r.config.epochs, 20);
        assert_eq!(r.config.seed, 7);
        assert_eq!(r.seeds, vec![7]);
    }

    #[test]
    fn bad_mode_names_token() {
        let err = run(&["--mode", "flying"]).unwrap_err().to_string();
        assert!(err.contains("flying"), "{err}");
    }

    #[test]
    fn empty_argv_gives_defaults() {
        assert_eq!(run(&[]).unwrap().config, ExperimentConfig::default());
        assert_eq!(run(&["run"]).unwrap().config, ExperimentConfig::default());
    }

    #[test]
    fn unknown_flag_rejected() {
        let err = run(&["run", "--turbo"]).unwrap_err().to_string();
        assert!(err.contains("--turbo"), "{err}");
        let err = run(&["--epochs", "many"]).unwrap_err().to_string();
        assert!(err.contains("many"), "{err}");
    }

    #[test]
    fn missing_config_file_named() {
        let err = run(&["--config", "/no/such/file.cfg"]).unwrap_err().to_string();
        assert!(err.contains("/no/such/file.cfg"), "{err}");
    }

    #[test]
    fn flags_beat_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "seed = 3\nepochs = 4\nmode = cla-only\n").unwrap();
        let r = run(&["--config", path.to_str().unwrap(), "--seed", "11", "--set", "lambda_r=0.5"]).unwrap();
        assert_eq!(r.config.seed, 11);
        assert_eq!(r.config.epochs, 4);
        assert_eq!(r.config.mode, Mode::ClaOnly);
        assert_eq!(r.config.lambda_r, 0.5);
    }

    #[test]
    fn seed_lists() {
        let r = run(&["--seeds", "1,2,3", "--weight-trace"]).unwrap();
        assert_eq!(r.seeds, vec![1, 2, 3]);
        assert!(r.config.weight_trace);
        assert!(run(&["--seeds", "1", "--seed", "2"]).is_err());
    }

    #[test]
    fn help_is_not_an_error() {
        assert!(matches!(parse_args(["--help"]).unwrap(), Parsed::Help(_)));
    }
}
