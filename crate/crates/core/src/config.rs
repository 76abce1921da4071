//! Experiment configuration and its `key = value` file format.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Result, SclaError};
use crate::plasticity::StdpParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Spiking network drives the robot; automata break ties.
    Scla,
    /// Automata alone, updated on every move.
    ClaOnly,
}

impl FromStr for Mode {
    type Err = SclaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scla" => Ok(Mode::Scla),
            "cla-only" | "cla_only" => Ok(Mode::ClaOnly),
            other => Err(SclaError::Parse(format!("unknown mode `{other}` (expected scla or cla-only)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Scla => "scla",
            Mode::ClaOnly => "cla-only",
        })
    }
}

/// Every tunable of a run. Defaults are the calibrated values.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub epochs: usize,
    pub steps_per_epoch: usize,
    pub seed: u64,

    /// Integration step (ms).
    pub dt: f64,
    /// Neural time simulated per move (ms).
    pub t_window: u32,
    /// Neurons per sensory and per motor population.
    pub population_size: usize,
    /// Neurons per inhibitory population.
    pub inhibitory_size: usize,
    /// Current injected into the sensed population every ms.
    pub i_sense: f64,
    /// Background pulse given to one random excitatory neuron every ms.
    pub i_noise: f64,
    /// Plastic synapses from each sensory neuron into each of its two motor targets.
    pub k_out: usize,
    /// Fixed synapses from each inhibitory neuron into its motor population.
    pub k_inh: usize,
    pub w_init: f64,
    pub w_inh: f64,

    pub a_plus: f64,
    pub a_minus: f64,
    pub tau_plus: f64,
    pub tau_minus: f64,
    pub tau_c: f64,
    pub tau_d: f64,
    pub w_max: f64,

    /// Dopamine given to the pathways of the sensed axis.
    pub d_amp: f64,
    /// Extra dopamine for the taken pathway when the target is reached.
    pub d_reach: f64,

    pub lambda_r: f64,
    pub lambda_p: f64,
    /// Neighbour-diffusion rate of the automata local rule.
    pub mu: f64,

    pub out_dir: PathBuf,
    pub weight_trace: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let stdp = StdpParams::default();
        ExperimentConfig {
            mode: Mode::Scla,
            epochs: 20,
            steps_per_epoch: 1000,
            seed: 1,
            dt: 1.0,
            t_window: 20,
            population_size: 100,
            inhibitory_size: 50,
            i_sense: 16.0,
            i_noise: 20.0,
            k_out: 10,
            k_inh: 25,
            w_init: 1.0,
            w_inh: -1.0,
            a_plus: stdp.a_plus,
            a_minus: stdp.a_minus,
            tau_plus: stdp.tau_plus,
            tau_minus: stdp.tau_minus,
            tau_c: stdp.tau_c,
            tau_d: stdp.tau_d,
            w_max: stdp.w_max,
            d_amp: 0.5,
            d_reach: 1.0,
            lambda_r: 0.01,
            lambda_p: 0.05,
            mu: 0.0,
            out_dir: PathBuf::from("out"),
            weight_trace: false,
        }
    }
}

/// Keys accepted by [`ExperimentConfig::set`], in file order.
pub const KEYS: &[&str] = &[
    "mode",
    "epochs",
    "steps",
    "seed",
    "dt",
    "t_window",
    "population_size",
    "inhibitory_size",
    "i_sense",
    "i_noise",
    "k_out",
    "k_inh",
    "w_init",
    "w_inh",
    "a_plus",
    "a_minus",
    "tau_plus",
    "tau_minus",
    "tau_c",
    "tau_d",
    "w_max",
    "d_amp",
    "d_reach",
    "lambda_r",
    "lambda_p",
    "mu",
    "out",
    "weight_trace",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| SclaError::Parse(format!("invalid value `{value}` for `{key}`")))
}

impl ExperimentConfig {
    pub fn stdp(&self) -> StdpParams {
        StdpParams {
            a_plus: self.a_plus,
            a_minus: self.a_minus,
            tau_plus: self.tau_plus,
            tau_minus: self.tau_minus,
            tau_c: self.tau_c,
            tau_d: self.tau_d,
            w_max: self.w_max,
        }
    }

    /// Switches off every learning path: automata rates and dopamine.
    pub fn without_learning(mut self) -> Self {
        self.lambda_r = 0.0;
        self.lambda_p = 0.0;
        self.d_amp = 0.0;
        self.d_reach = 0.0;
        self
    }

    /// Sets one field by its config-file key.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "mode" => self.mode = value.parse()?,
            "epochs" => self.epochs = parse(key, value)?,
            "steps" | "steps_per_epoch" => self.steps_per_epoch = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "dt" => self.dt = parse(key, value)?,
            "t_window" => self.t_window = parse(key, value)?,
            "population_size" => self.population_size = parse(key, value)?,
            "inhibitory_size" => self.inhibitory_size = parse(key, value)?,
            "i_sense" => self.i_sense = parse(key, value)?,
            "i_noise" => self.i_noise = parse(key, value)?,
            "k_out" => self.k_out = parse(key, value)?,
            "k_inh" => self.k_inh = parse(key, value)?,
            "w_init" => self.w_init = parse(key, value)?,
            "w_inh" => self.w_inh = parse(key, value)?,
            "a_plus" => self.a_plus = parse(key, value)?,
            "a_minus" => self.a_minus = parse(key, value)?,
            "tau_plus" => self.tau_plus = parse(key, value)?,
            "tau_minus" => self.tau_minus = parse(key, value)?,
            "tau_c" => self.tau_c = parse(key, value)?,
            "tau_d" => self.tau_d = parse(key, value)?,
            "w_max" => self.w_max = parse(key, value)?,
            "d_amp" => self.d_amp = parse(key, value)?,
            "d_reach" => self.d_reach = parse(key, value)?,
            "lambda_r" => self.lambda_r = parse(key, value)?,
            "lambda_p" => self.lambda_p = parse(key, value)?,
            "mu" => self.mu = parse(key, value)?,
            "out" | "out_dir" => self.out_dir = PathBuf::from(value),
            "weight_trace" => self.weight_trace = parse(key, value)?,
            other => return Err(SclaError::Parse(format!("unknown config key `{other}`"))),
        }
        Ok(())
    }

    /// Applies a `key = value` document on top of `self`.
    pub fn apply_str(&mut self, text: &str, origin: &Path) -> Result<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| SclaError::Config { path: origin.to_path_buf(), line: n + 1, msg };
            let (key, value) =
                line.split_once('=').ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let key = key.trim();
            if key.is_empty() {
                return Err(err(format!("missing key in `{line}`")));
            }
            self.set(key, value).map_err(|e| err(e.to_string()))?;
        }
        Ok(())
    }

    /// Parses a config document over the built-in defaults.
    pub fn from_str_with_origin(text: &str, origin: &Path) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_str(text, origin)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(SclaError::InvalidParameter(msg));
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if self.t_window == 0 {
            return bad("t_window must be at least 1 ms".into());
        }
        if self.population_size == 0 || self.inhibitory_size == 0 {
            return bad("populations must be non-empty".into());
        }
        if self.k_out > self.population_size {
            return bad(format!("k_out = {} exceeds the motor population size {}", self.k_out, self.population_size));
        }
        if self.k_inh > self.population_size {
            return bad(format!("k_inh = {} exceeds the motor population size {}", self.k_inh, self.population_size));
        }
        for (name, v) in
            [("i_sense", self.i_sense), ("i_noise", self.i_noise), ("d_amp", self.d_amp), ("d_reach", self.d_reach)]
        {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("{name} must be finite and non-negative, got {v}"));
            }
        }
        self.stdp().validate()?;
        if !(self.w_init.is_finite() && (0.0..=self.w_max).contains(&self.w_init)) {
            return bad(format!("w_init must lie in [0, w_max], got {}", self.w_init));
        }
        if !(self.w_inh.is_finite() && self.w_inh <= 0.0) {
            return bad(format!("w_inh must be non-positive, got {}", self.w_inh));
        }
        for (name, v) in [("lambda_r", self.lambda_r), ("lambda_p", self.lambda_p), ("mu", self.mu)] {
            if !(0.0..=1.0).contains(&v) {
                return bad(format!("{name} must lie in [0, 1], got {v}"));
            }
        }
        Ok(())
    }

    /// Renders the config in the file format; `load_config` reads it back.
    pub fn to_config_string(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(&v);
            s.push('\n');
        };
        put("mode", self.mode.to_string());
        put("epochs", self.epochs.to_string());
        put("steps", self.steps_per_epoch.to_string());
        put("seed", self.seed.to_string());
        put("dt", self.dt.to_string());
        put("t_window", self.t_window.to_string());
        put("population_size", self.population_size.to_string());
        put("inhibitory_size", self.inhibitory_size.to_string());
        put("i_sense", self.i_sense.to_string());
        put("i_noise", self.i_noise.to_string());
        put("k_out", self.k_out.to_string());
        put("k_inh", self.k_inh.to_string());
        put("w_init", self.w_init.to_string());
        put("w_inh", self.w_inh.to_string());
        put("a_plus", self.a_plus.to_string());
        put("a_minus", self.a_minus.to_string());
        put("tau_plus", self.tau_plus.to_string());
        put("tau_minus", self.tau_minus.to_string());
        put("tau_c", self.tau_c.to_string());
        put("tau_d", self.tau_d.to_string());
        put("w_max", self.w_max.to_string());
        put("d_amp", self.d_amp.to_string());
        put("d_reach", self.d_reach.to_string());
        put("lambda_r", self.lambda_r.to_string());
        put("lambda_p", self.lambda_p.to_string());
        put("mu", self.mu.to_string());
        put("out", self.out_dir.display().to_string());
        put("weight_trace", self.weight_trace.to_string());
        s
    }
}

/// Reads a config file over the built-in defaults.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|source| SclaError::Io { path: path.to_path_buf(), source })?;
    ExperimentConfig::from_str_with_origin(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_doc(text: &str) -> Result<ExperimentConfig> {
        ExperimentConfig::from_str_with_origin(text, Path::new("test.cfg"))
    }

    #[test]
    fn file_examples() {
        let cfg = parse_doc("epochs = 20\nseed = 7").unwrap();
        assert_eq!((cfg.epochs, cfg.seed), (20, 7));

        assert_eq!(parse_doc("# comment only").unwrap(), ExperimentConfig::default());

        let err = parse_doc("epochs = banana").unwrap_err().to_string();
        assert!(err.contains("banana") && err.contains("line 1"), "{err}");
    }

    #[test]
    fn unknown_keys_and_malformed_lines() {
        let err = parse_doc("seed = 3\nwarp_drive = 9").unwrap_err().to_string();
        assert!(err.contains("warp_drive") && err.contains("line 2"), "{err}");
        assert!(parse_doc("just words").is_err());
        assert!(parse_doc(" = 4").is_err());
    }

    #[test]
    fn trailing_comments_and_blank_lines() {
        let cfg = parse_doc("\n  mode = cla-only   # baseline\n\nlambda_r=0.5\n").unwrap();
        assert_eq!(cfg.mode, Mode::ClaOnly);
        assert_eq!(cfg.lambda_r, 0.5);
    }

    #[test]
    fn rendered_config_reads_back() {
        let cfg = ExperimentConfig {
            seed: 99,
            tau_d: 123.456,
            mode: Mode::ClaOnly,
            weight_trace: true,
            ..Default::default()
        };
        assert_eq!(parse_doc(&cfg.to_config_string()).unwrap(), cfg);
        assert_eq!(cfg.to_config_string().lines().count(), KEYS.len());
    }

    #[test]
    fn validation() {
        assert!(ExperimentConfig::default().validate().is_ok());
        let cfg = ExperimentConfig { k_out: 101, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig { population_size: 0, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig { lambda_p: 1.2, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig { w_inh: 0.5, ..Default::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn every_key_is_settable() {
        let cfg = ExperimentConfig::default();
        for line in cfg.to_config_string().lines() {
            let (k, v) = line.split_once('=').unwrap();
            let mut c = ExperimentConfig::default();
            c.set(k.trim(), v).unwrap();
            assert!(KEYS.contains(&k.trim()));
        }
    }
}
