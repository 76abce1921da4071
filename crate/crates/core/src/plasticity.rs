//! Dopamine-modulated STDP.
//!
//! Spike pairs feed a per-synapse eligibility trace `c`, which relaxes with
//! time constant `tau_c`. Weights only move when a modulator is present:
//! `dw/dt = c * modulator`, clamped to `[0, w_max]`.

use crate::error::{Result, SclaError};
use crate::pathway::ConnectionGroup;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StdpParams {
    pub a_plus: f64,
    pub a_minus: f64,
    /// Potentiation window (ms).
    pub tau_plus: f64,
    /// Depression window (ms).
    pub tau_minus: f64,
    /// Eligibility decay (ms).
    pub tau_c: f64,
    /// Dopamine decay (ms).
    pub tau_d: f64,
    pub w_max: f64,
}

impl Default for StdpParams {
    fn default() -> Self {
        StdpParams {
            a_plus: 1.0,
            a_minus: 0.3,
            tau_plus: 20.0,
            tau_minus: 10.0,
            tau_c: 1000.0,
            tau_d: 200.0,
            w_max: 4.0,
        }
    }
}

impl StdpParams {
    pub fn validate(&self) -> Result<()> {
        let vals = [
            ("A_plus", self.a_plus),
            ("A_minus", self.a_minus),
            ("tau_plus", self.tau_plus),
            ("tau_minus", self.tau_minus),
            ("tau_c", self.tau_c),
            ("tau_d", self.tau_d),
            ("w_max", self.w_max),
        ];
        for (name, v) in vals {
            if !(v.is_finite() && v > 0.0) {
                return Err(SclaError::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Role of a synapse in the network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SynapseKind {
    Plastic(ConnectionGroup),
    /// Fixed, non-positive weight.
    Inhibitory,
    /// Fixed excitatory weight outside the learned pathways.
    Background,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Synapse {
    pub pre: usize,
    pub post: usize,
    pub w: f64,
    /// Eligibility trace.
    pub c: f64,
    pub kind: SynapseKind,
}

impl Synapse {
    pub fn plastic(pre: usize, post: usize, w: f64, group: ConnectionGroup) -> Self {
        Synapse { pre, post, w, c: 0.0, kind: SynapseKind::Plastic(group) }
    }

    pub fn group(&self) -> Option<ConnectionGroup> {
        match self.kind {
            SynapseKind::Plastic(g) => Some(g),
            _ => None,
        }
    }

    pub fn is_plastic(&self) -> bool {
        matches!(self.kind, SynapseKind::Plastic(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpikePair {
    pub t_pre: f64,
    pub t_post: f64,
}

impl SpikePair {
    /// `t_post - t_pre`; positive when the pre-synaptic spike came first.
    pub fn lag(&self) -> f64 {
        self.t_post - self.t_pre
    }
}

/// STDP kernel for `tau = t_post - t_pre`.
#[inline]
pub fn stdp_window(tau: f64, params: &StdpParams) -> f64 {
    if tau > 0.0 {
        params.a_plus * (-tau / params.tau_plus).exp()
    } else if tau < 0.0 {
        -params.a_minus * (tau / params.tau_minus).exp()
    } else {
        0.0
    }
}

/// Adds the STDP increment for one spike pair to the eligibility trace.
/// The weight is left alone.
pub fn on_spike_event(synapse: &mut Synapse, pair: SpikePair, params: &StdpParams) {
    synapse.c += stdp_window(pair.lag(), params);
}

/// Exact relaxation of `c' = -c / tau_c` over `dt`.
#[inline]
pub fn decay_eligibility(c: f64, dt: f64, params: &StdpParams) -> f64 {
    c * (-dt / params.tau_c).exp()
}

/// Consolidates the eligibility trace into the weight:
/// `w <- clamp(w + c * modulator * dt, 0, w_max)`.
pub fn apply_dopamine(synapse: &mut Synapse, modulator: f64, dt: f64, params: &StdpParams) -> Result<()> {
    if !synapse.is_plastic() {
        return Err(SclaError::NotPlastic { pre: synapse.pre, post: synapse.post });
    }
    synapse.w = consolidate(synapse.w, synapse.c, modulator, dt, params.w_max);
    Ok(())
}

#[inline]
pub(crate) fn consolidate(w: f64, c: f64, modulator: f64, dt: f64, w_max: f64) -> f64 {
    (w + c * modulator * dt).clamp(0.0, w_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syn() -> Synapse {
        Synapse::plastic(0, 1, 1.0, ConnectionGroup::SUtoMU)
    }

    #[test]
    fn window_signs_and_tail() {
        let p = StdpParams::default();
        assert!(stdp_window(1.0, &p) > 0.0);
        assert!(stdp_window(-1.0, &p) < 0.0);
        assert_eq!(stdp_window(0.0, &p), 0.0);
        assert!(stdp_window(10.0 * p.tau_plus, &p).abs() < 1e-4 * p.a_plus);
        assert!(stdp_window(-10.0 * p.tau_minus, &p).abs() < 1e-4 * p.a_minus);
    }

    #[test]
    fn spike_events_touch_only_eligibility() {
        let p = StdpParams::default();
        let mut s = syn();
        on_spike_event(&mut s, SpikePair { t_pre: 10.0, t_post: 15.0 }, &p);
        assert!(s.c > 0.0);
        assert_eq!(s.w, 1.0);

        let mut s = syn();
        on_spike_event(&mut s, SpikePair { t_pre: 15.0, t_post: 10.0 }, &p);
        assert!(s.c < 0.0);
        assert_eq!(s.w, 1.0);
    }

    #[test]
    fn eligibility_decay_examples() {
        let p = StdpParams::default();
        assert!((decay_eligibility(1.0, p.tau_c, &p) - (-1.0f64).exp()).abs() < 1e-15);
        assert!((decay_eligibility(1.0, p.tau_c, &p) - 0.36788).abs() < 1e-5);
        assert_eq!(decay_eligibility(0.0, 7.0, &p), 0.0);
        let d = decay_eligibility(-0.5, 3.0, &p);
        assert!(d < 0.0 && d.abs() < 0.5);
    }

    #[test]
    fn dopamine_examples() {
        let p = StdpParams::default();
        let mut s = syn();
        s.c = 0.5;
        apply_dopamine(&mut s, 0.2, 1.0, &p).unwrap();
        assert!((s.w - 1.1).abs() < 1e-12);

        let mut s = syn();
        s.c = 0.7;
        apply_dopamine(&mut s, 0.0, 1.0, &p).unwrap();
        assert_eq!(s.w, 1.0);

        let mut s = syn();
        s.w = 3.95;
        s.c = 1.0;
        apply_dopamine(&mut s, 0.2, 1.0, &p).unwrap();
        assert_eq!(s.w, 4.0);
    }

    #[test]
    fn dopamine_rejects_fixed_synapses() {
        let p = StdpParams::default();
        let mut s = Synapse { pre: 3, post: 4, w: -1.0, c: 0.0, kind: SynapseKind::Inhibitory };
        assert!(matches!(apply_dopamine(&mut s, 1.0, 1.0, &p), Err(SclaError::NotPlastic { pre: 3, post: 4 })));
        s.kind = SynapseKind::Background;
        assert!(apply_dopamine(&mut s, 1.0, 1.0, &p).is_err());
    }

    #[test]
    fn params_must_be_positive() {
        assert!(StdpParams::default().validate().is_ok());
        let p = StdpParams { tau_c: 0.0, ..StdpParams::default() };
        assert!(p.validate().is_err());
    }
}
