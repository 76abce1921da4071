//! Experiment orchestration and CSV output.

use std::fs::{self, File};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::config::{ExperimentConfig, Mode};
use crate::engine::{Engine, EpochStats};
use crate::error::{Result, SclaError};
use crate::pathway::ConnectionGroup;

pub const EPOCHS_FILE: &str = "epochs.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const WEIGHTS_FILE: &str = "weights.csv";

/// Written in `summary.csv` when there is no epoch to average.
pub const UNDEFINED_MEAN: &str = "NA";

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub mode: Mode,
    pub config: ExperimentConfig,
    pub epochs: Vec<EpochStats>,
}

impl ExperimentReport {
    /// Mean successes per epoch, `None` for an empty report.
    pub fn mean_successes(&self) -> Option<f64> {
        if self.epochs.is_empty() {
            None
        } else {
            Some(self.epochs.iter().map(|e| e.successes as f64).sum::<f64>() / self.epochs.len() as f64)
        }
    }

    pub fn successes(&self) -> Vec<usize> {
        self.epochs.iter().map(|e| e.successes).collect()
    }

    /// Group mean weights after the last epoch.
    pub fn final_weights(&self) -> Option<[f64; 8]> {
        self.epochs.last().and_then(|e| e.final_weights)
    }
}

/// Runs all epochs of `config` on one engine, learning carried across epochs.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let mut engine = Engine::new(config.clone())?;
    let epochs =
        (0..config.epochs).map(|e| engine.run_epoch(e + 1, config.steps_per_epoch)).collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport { mode: config.mode, config: config.clone(), epochs })
}

/// Runs one experiment per seed in parallel. Results keep the order of `seeds`.
pub fn run_seeds(config: &ExperimentConfig, seeds: &[u64]) -> Result<Vec<ExperimentReport>> {
    seeds.par_iter().map(|&seed| run_experiment(&ExperimentConfig { seed, ..config.clone() })).collect()
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> SclaError + '_ {
    move |source| SclaError::Csv { path: path.to_path_buf(), source }
}

fn writer(path: &Path) -> Result<csv::Writer<File>> {
    let file = File::create(path).map_err(|source| SclaError::Io { path: path.to_path_buf(), source })?;
    Ok(csv::Writer::from_writer(file))
}

/// Header of `epochs.csv`.
pub fn epochs_header() -> Vec<String> {
    let mut h = vec!["epoch".to_string(), "successes".to_string()];
    h.extend(ConnectionGroup::ALL.iter().map(|g| format!("w_{}", g.label())));
    h
}

/// Writes the per-epoch table. Weight cells are empty when the run had no
/// network.
pub fn write_report(report: &ExperimentReport, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(epochs_header()).map_err(csv_err(path))?;
    for e in &report.epochs {
        let mut row = vec![e.epoch.to_string(), e.successes.to_string()];
        match e.final_weights {
            Some(ws) => row.extend(ws.iter().map(f64::to_string)),
            None => row.extend(std::iter::repeat_n(String::new(), 8)),
        }
        w.write_record(&row).map_err(csv_err(path))?;
    }
    w.flush().map_err(|source| SclaError::Io { path: path.to_path_buf(), source })
}

/// Writes `mode,epochs,steps,mean_successes,seed`.
pub fn write_summary(report: &ExperimentReport, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["mode", "epochs", "steps", "mean_successes", "seed"]).map_err(csv_err(path))?;
    let mean = report.mean_successes().map_or_else(|| UNDEFINED_MEAN.to_string(), |m| m.to_string());
    w.write_record([
        report.mode.to_string(),
        report.epochs.len().to_string(),
        report.config.steps_per_epoch.to_string(),
        mean,
        report.config.seed.to_string(),
    ])
    .map_err(csv_err(path))?;
    w.flush().map_err(|source| SclaError::Io { path: path.to_path_buf(), source })
}

/// Writes `step,group,mean_weight` for every recorded step, steps numbered
/// from 0 across all epochs.
pub fn write_weight_trace(report: &ExperimentReport, path: &Path) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(["step", "group", "mean_weight"]).map_err(csv_err(path))?;
    let samples = report.epochs.iter().flat_map(|e| e.weight_samples.iter());
    for (step, means) in samples.enumerate() {
        for (g, m) in ConnectionGroup::ALL.iter().zip(means) {
            w.write_record([step.to_string(), g.label().to_string(), m.to_string()]).map_err(csv_err(path))?;
        }
    }
    w.flush().map_err(|source| SclaError::Io { path: path.to_path_buf(), source })
}

/// One row of `epochs.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochRow {
    pub epoch: usize,
    pub successes: usize,
    pub weights: Option<[f64; 8]>,
}

/// Reads an `epochs.csv` back.
pub fn read_epochs(path: &Path) -> Result<Vec<EpochRow>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    let header: Vec<String> = r.headers().map_err(csv_err(path))?.iter().map(String::from).collect();
    if header != epochs_header() {
        return Err(SclaError::Parse(format!("{}: unexpected header {header:?}", path.display())));
    }
    let bad = |what: &str| SclaError::Parse(format!("{}: bad {what}", path.display()));
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err(path))?;
        let epoch = rec[0].parse().map_err(|_| bad("epoch"))?;
        let successes = rec[1].parse().map_err(|_| bad("successes"))?;
        let weights = if rec[2].is_empty() {
            None
        } else {
            let mut ws = [0.0; 8];
            for (i, w) in ws.iter_mut().enumerate() {
                *w = rec[2 + i].parse().map_err(|_| bad("weight"))?;
            }
            Some(ws)
        };
        rows.push(EpochRow { epoch, successes, weights });
    }
    Ok(rows)
}

/// Paths written by [`write_outputs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFiles {
    pub epochs: PathBuf,
    pub summary: PathBuf,
    pub weights: Option<PathBuf>,
}

/// Writes `epochs.csv`, `summary.csv`, and (when enabled) `weights.csv`
/// into `dir`, creating it if needed.
pub fn write_outputs(report: &ExperimentReport, dir: &Path) -> Result<OutputFiles> {
    fs::create_dir_all(dir).map_err(|source| SclaError::Io { path: dir.to_path_buf(), source })?;
    let files = OutputFiles {
        epochs: dir.join(EPOCHS_FILE),
        summary: dir.join(SUMMARY_FILE),
        weights: report.config.weight_trace.then(|| dir.join(WEIGHTS_FILE)),
    };
    write_report(report, &files.epochs)?;
    write_summary(report, &files.summary)?;
    if let Some(p) = &files.weights {
        write_weight_trace(report, p)?;
    }
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(epoch: usize, successes: usize, w: Option<[f64; 8]>) -> EpochStats {
        EpochStats {
            epoch,
            steps: 1000,
            successes,
            final_weights: w,
            weight_samples: vec![[1.0; 8]; 3],
            automata: vec![],
        }
    }

    fn report(epochs: Vec<EpochStats>) -> ExperimentReport {
        ExperimentReport { mode: Mode::Scla, config: ExperimentConfig::default(), epochs }
    }

    #[test]
    fn epochs_csv_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.csv");
        let w = [0.1, 1.0 / 3.0, 2.0, 3.999999999999, 0.0, 4.0, 1e-17, 2.5];
        let r = report((1..=20).map(|i| stats(i, 700 + i, Some(w))).collect());
        write_report(&r, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 21);
        assert_eq!(
            text.lines().next().unwrap(),
            "epoch,successes,w_SUtoMU,w_SUtoMD,w_SDtoMU,w_SDtoMD,w_SLtoML,w_SLtoMR,w_SRtoMR,w_SRtoML"
        );
        let rows = read_epochs(&path).unwrap();
        for (row, e) in rows.iter().zip(&r.epochs) {
            assert_eq!((row.epoch, row.successes, row.weights), (e.epoch, e.successes, e.final_weights));
        }
    }

    #[test]
    fn empty_report_has_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let r = report(vec![]);
        assert_eq!(r.mean_successes(), None);
        let files = write_outputs(&r, dir.path()).unwrap();
        assert_eq!(fs::read_to_string(&files.epochs).unwrap().lines().count(), 1);
        let summary = fs::read_to_string(&files.summary).unwrap();
        assert_eq!(summary.lines().nth(1).unwrap(), "scla,0,1000,NA,1");
    }

    #[test]
    fn weight_trace_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.csv");
        write_weight_trace(&report(vec![stats(1, 1, None), stats(2, 1, None)]), &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 1 + 6 * 8);
        assert_eq!(text.lines().nth(1).unwrap(), "0,SUtoMU,1");
        assert_eq!(text.lines().last().unwrap(), "5,SRtoML,1");
    }

    #[test]
    fn cla_only_rows_leave_weights_empty() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("e.csv");
        write_report(&report(vec![stats(1, 88, None)]), &path).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap().lines().nth(1).unwrap(), "1,88,,,,,,,,");
        assert_eq!(read_epochs(&path).unwrap()[0].weights, None);
    }

    #[test]
    fn unwritable_path_is_reported() {
        let err = write_report(&report(vec![]), Path::new("/nonexistent-dir/x/epochs.csv")).unwrap_err();
        assert!(err.to_string().contains("nonexistent-dir"), "{err}");
    }
}
