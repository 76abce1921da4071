//! Izhikevich neuron dynamics.
//!
//! ```text
//! v' = 0.04 v^2 + 5 v + 140 - u + I
//! u' = a (b v - u)
//! if v >= 30 mV:  v <- c,  u <- u + d
//! ```
//!
//! Integration is forward Euler with a 1 ms step, `v` advanced in two half
//! steps and `u` in one full step using the updated `v`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, SclaError};

/// Spike peak. Crossing it triggers the after-spike reset.
pub const SPIKE_THRESHOLD_MV: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeuronParams {
    /// Recovery time scale (1/ms).
    pub a: f64,
    /// Recovery sensitivity to sub-threshold `v`.
    pub b: f64,
    /// After-spike reset potential (mV).
    pub c: f64,
    /// After-spike recovery increment.
    pub d: f64,
}

impl NeuronParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let p = NeuronParams { a, b, c, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let NeuronParams { a, b, c, d } = *self;
        if ![a, b, c, d].iter().all(|x| x.is_finite()) {
            return Err(SclaError::NonFinite(format!("neuron params {self:?}")));
        }
        if a <= 0.0 || b <= 0.0 || c >= SPIKE_THRESHOLD_MV || d < 0.0 {
            return Err(SclaError::InvalidParameter(format!(
                "neuron params need a > 0, b > 0, c < {SPIKE_THRESHOLD_MV}, d >= 0; got {self:?}"
            )));
        }
        Ok(())
    }

    pub fn preset(kind: NeuronKind) -> NeuronParams {
        match kind {
            NeuronKind::RegularSpiking => NeuronParams { a: 0.02, b: 0.2, c: -65.0, d: 8.0 },
            NeuronKind::FastSpiking => NeuronParams { a: 0.1, b: 0.2, c: -65.0, d: 2.0 },
        }
    }

    /// The stable resting point `(v, u)` with `I = 0`, if one exists.
    ///
    /// Solves `0.04 v^2 + (5 - b) v + 140 = 0` and takes the lower root.
    pub fn resting_point(&self) -> Option<(f64, f64)> {
        let (qa, qb, qc) = (0.04, 5.0 - self.b, 140.0);
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            return None;
        }
        let v = (-qb - disc.sqrt()) / (2.0 * qa);
        Some((v, self.b * v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeuronKind {
    /// Excitatory cortical cell.
    RegularSpiking,
    /// Inhibitory interneuron.
    FastSpiking,
}

impl FromStr for NeuronKind {
    type Err = SclaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "rs" | "regularspiking" => Ok(NeuronKind::RegularSpiking),
            "fs" | "fastspiking" => Ok(NeuronKind::FastSpiking),
            _ => Err(SclaError::Parse(format!("unknown neuron kind `{s}`"))),
        }
    }
}

impl fmt::Display for NeuronKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NeuronKind::RegularSpiking => "regular-spiking",
            NeuronKind::FastSpiking => "fast-spiking",
        })
    }
}

/// Shorthand for [`NeuronParams::preset`] taking the kind by name.
pub fn preset(kind: &str) -> Result<NeuronParams> {
    Ok(NeuronParams::preset(kind.parse()?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeuronState {
    /// Membrane potential (mV).
    pub v: f64,
    /// Recovery variable.
    pub u: f64,
    /// Time of the most recent spike (ms).
    pub last_spike: Option<f64>,
}

impl NeuronState {
    pub fn new(v: f64, u: f64) -> Self {
        NeuronState { v, u, last_spike: None }
    }

    /// State at the stable resting point of `params`, falling back to
    /// `(c, b*c)` when the model has no stable rest.
    pub fn at_rest(params: &NeuronParams) -> Self {
        let (v, u) = params.resting_point().unwrap_or((params.c, params.b * params.c));
        NeuronState::new(v, u)
    }
}

/// Right-hand side `(dv/dt, du/dt)` of the model.
pub fn derivative(state: &NeuronState, params: &NeuronParams, input: f64) -> Result<(f64, f64)> {
    if !state.v.is_finite() || !state.u.is_finite() || !input.is_finite() {
        return Err(SclaError::NonFinite(format!("derivative at v={}, u={}, I={input}", state.v, state.u)));
    }
    Ok(rhs(state.v, state.u, params, input))
}

#[inline]
fn rhs(v: f64, u: f64, p: &NeuronParams, input: f64) -> (f64, f64) {
    (0.04 * v * v + 5.0 * v + 140.0 - u + input, p.a * (p.b * v - u))
}

/// One Euler step of the sub-threshold dynamics, without spike handling.
///
/// The second half step of `v` is skipped once `v` has crossed the peak, and
/// `u` sees `v` capped at the peak, so a crossing cannot blow up either
/// variable.
#[inline]
pub fn integrate(state: &NeuronState, params: &NeuronParams, input: f64, dt: f64) -> (f64, f64) {
    let half = 0.5 * dt;
    let u = state.u;
    let mut v = state.v;
    v += half * (0.04 * v * v + 5.0 * v + 140.0 - u + input);
    if v < SPIKE_THRESHOLD_MV {
        v += half * (0.04 * v * v + 5.0 * v + 140.0 - u + input);
    }
    let u = u + dt * params.a * (params.b * v.min(SPIKE_THRESHOLD_MV) - u);
    (v, u)
}

/// Advances one neuron by `dt` ms ending at simulation time `t`.
///
/// Returns whether the neuron spiked. On a spike `v` is set to `c`, `u` is
/// incremented by `d`, and `last_spike` is set to `t`.
#[inline]
pub fn step(state: &mut NeuronState, params: &NeuronParams, input: f64, dt: f64, t: f64) -> Result<bool> {
    let (v, u) = integrate(state, params, input, dt);
    if !v.is_finite() || !u.is_finite() {
        return Err(SclaError::NonFinite(format!("neuron diverged at t={t} ms (v={v}, u={u}, I={input})")));
    }

    if v >= SPIKE_THRESHOLD_MV {
        state.v = params.c;
        state.u = u + params.d;
        state.last_spike = Some(t);
        Ok(true)
    } else {
        state.v = v;
        state.u = u;
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs() -> NeuronParams {
        NeuronParams::preset(NeuronKind::RegularSpiking)
    }

    fn count_spikes(params: &NeuronParams, input: f64, ms: usize) -> usize {
        let mut s = NeuronState::at_rest(params);
        (0..ms).filter(|&t| step(&mut s, params, input, 1.0, t as f64).unwrap()).count()
    }

    #[test]
    fn derivative_examples() {
        let p = rs();
        let (dv, du) = derivative(&NeuronState::new(-70.0, -14.0), &p, 0.0).unwrap();
        assert!(dv.abs() < 1e-12 && du.abs() < 1e-12);

        let (dv, du) = derivative(&NeuronState::new(-65.0, -13.0), &p, 0.0).unwrap();
        assert!((dv + 3.0).abs() < 1e-12, "dv = {dv}");
        assert!(du.abs() < 1e-12);

        let (dv, du) = derivative(&NeuronState::new(-65.0, -13.0), &p, 10.0).unwrap();
        assert!((dv - 7.0).abs() < 1e-12, "dv = {dv}");
        assert!(du.abs() < 1e-12);
    }

    #[test]
    fn derivative_rejects_non_finite() {
        let p = rs();
        assert!(derivative(&NeuronState::new(f64::NAN, 0.0), &p, 0.0).is_err());
        assert!(derivative(&NeuronState::new(-65.0, 0.0), &p, f64::INFINITY).is_err());
    }

    #[test]
    fn resting_point_is_lower_root() {
        let (v, u) = rs().resting_point().unwrap();
        assert!((v + 70.0).abs() < 1e-9);
        assert!((u + 14.0).abs() < 1e-9);
    }

    #[test]
    fn spike_resets_exactly() {
        let p = rs();
        let mut s = NeuronState::new(25.0, -5.0);
        let (v_mid, u_mid) = integrate(&s, &p, 0.0, 1.0);
        assert!(v_mid >= SPIKE_THRESHOLD_MV);
        let spiked = step(&mut s, &p, 0.0, 1.0, 12.0).unwrap();
        assert!(spiked);
        assert_eq!(s.v, -65.0);
        assert_eq!(s.u, u_mid + 8.0);
        assert_eq!(s.last_spike, Some(12.0));
    }

    #[test]
    fn fixed_point_holds() {
        let p = rs();
        let mut s = NeuronState::new(-70.0, -14.0);
        for t in 0..1000 {
            assert!(!step(&mut s, &p, 0.0, 1.0, t as f64).unwrap());
        }
        assert!((s.v + 70.0).abs() < 1e-9 && (s.u + 14.0).abs() < 1e-9);
    }

    #[test]
    fn presets() {
        assert_eq!(preset("RegularSpiking").unwrap(), NeuronParams { a: 0.02, b: 0.2, c: -65.0, d: 8.0 });
        assert_eq!(preset("fs").unwrap(), NeuronParams { a: 0.1, b: 0.2, c: -65.0, d: 2.0 });
        assert!(preset("bursting").is_err());
    }

    #[test]
    fn fast_spiking_fires_more_than_regular() {
        let rs = count_spikes(&rs(), 10.0, 500);
        let fs = count_spikes(&NeuronParams::preset(NeuronKind::FastSpiking), 10.0, 500);
        assert!(fs > rs, "fs={fs} rs={rs}");
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(NeuronParams::new(0.0, 0.2, -65.0, 8.0).is_err());
        assert!(NeuronParams::new(0.02, 0.2, 35.0, 8.0).is_err());
        assert!(NeuronParams::new(0.02, 0.2, -65.0, -1.0).is_err());
        assert!(NeuronParams::new(0.02, f64::NAN, -65.0, 8.0).is_err());
    }
}
