//! The 1000-neuron sensory/motor/inhibitory network.
//!
//! Layout (0-based indices, default sizes):
//!
//! ```text
//!   0..100  SU    400..500  MU    800..850  IU
//! 100..200  SD    500..600  MD    850..900  ID
//! 200..300  SL    600..700  ML    900..950  IL
//! 300..400  SR    700..800  MR    950..1000 IR
//! ```
//!
//! Sensory and motor neurons are regular spiking, inhibitory neurons fast
//! spiking. Each sensory neuron projects plastically into its own motor
//! population and into the opposite one on the same axis. Each inhibitory
//! neuron makes fixed negative synapses onto the motor population of its
//! direction. Spikes are delivered to post-synaptic currents one ms later.

use std::ops::Range;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::ExperimentConfig;
use crate::error::{Result, SclaError};
use crate::neuron::{self, NeuronKind, NeuronParams, NeuronState};
use crate::pathway::{ConnectionGroup, Direction};
use crate::plasticity::{consolidate, stdp_window, StdpParams, Synapse, SynapseKind};

/// RNG stream used for wiring.
const TOPOLOGY_STREAM: u64 = 0;
/// RNG stream used for background pulses.
const NOISE_STREAM: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Sensory,
    Motor,
    Inhibitory,
}

/// Index ranges of the twelve populations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub population_size: usize,
    pub inhibitory_size: usize,
}

impl Layout {
    pub fn range(&self, role: Role, dir: Direction) -> Range<usize> {
        let (base, size) = match role {
            Role::Sensory => (0, self.population_size),
            Role::Motor => (4 * self.population_size, self.population_size),
            Role::Inhibitory => (8 * self.population_size, self.inhibitory_size),
        };
        let start = base + dir.index() * size;
        start..start + size
    }

    pub fn excitatory(&self) -> Range<usize> {
        0..8 * self.population_size
    }

    pub fn len(&self) -> usize {
        8 * self.population_size + 4 * self.inhibitory_size
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Population of neuron `i`.
    pub fn classify(&self, i: usize) -> Option<(Role, Direction)> {
        [Role::Sensory, Role::Motor, Role::Inhibitory]
            .into_iter()
            .flat_map(|r| Direction::ALL.into_iter().map(move |d| (r, d)))
            .find(|&(r, d)| self.range(r, d).contains(&i))
    }
}

/// Spike counts of the four motor populations over a decision window.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MotorReadout {
    pub counts: [u32; 4],
}

impl MotorReadout {
    pub fn count(&self, d: Direction) -> u32 {
        self.counts[d.index()]
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Directions sharing the highest count; empty when nothing fired.
    pub fn leaders(&self) -> Vec<Direction> {
        let max = *self.counts.iter().max().unwrap_or(&0);
        if max == 0 {
            return Vec::new();
        }
        Direction::ALL.into_iter().filter(|d| self.count(*d) == max).collect()
    }
}

/// Dopamine of one connection group.
///
/// Stored as the level at the last deposit plus the deposit time; the level
/// seen at time `t` is `level * exp(-(t - stamp) / tau_d)`. Nothing but a
/// deposit changes the stored pair.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dopamine {
    pub level: f64,
    pub stamp: f64,
}

impl Dopamine {
    pub fn at(&self, t: f64, tau_d: f64) -> f64 {
        if self.level == 0.0 {
            0.0
        } else {
            self.level * (-(t - self.stamp) / tau_d).exp()
        }
    }
}

#[derive(Debug, Clone)]
pub struct Network {
    layout: Layout,
    stdp: StdpParams,
    dt: f64,
    i_sense: f64,
    i_noise: f64,

    params: Vec<NeuronParams>,
    states: Vec<NeuronState>,
    /// Last spike time per neuron, updated after the STDP pass of each ms.
    last_spike: Vec<Option<f64>>,

    synapses: Vec<Synapse>,
    outgoing: Vec<Vec<usize>>,
    incoming_plastic: Vec<Vec<usize>>,
    by_group: [Vec<usize>; 8],

    dopamine: [Dopamine; 8],

    /// External current for the coming ms.
    input: Vec<f64>,
    /// Synaptic current for the coming ms.
    pending: Vec<f64>,

    clock: f64,
    seed: u64,
    noise_rng: ChaCha8Rng,
    noise_pulses: u64,
    delivered: u64,
    spikes_total: u64,
    spiked_scratch: Vec<usize>,
}

impl Network {
    /// Wires the network. Construction is a pure function of `(seed, config)`.
    pub fn build(seed: u64, config: &ExperimentConfig) -> Result<Network> {
        config.validate()?;
        let layout = Layout { population_size: config.population_size, inhibitory_size: config.inhibitory_size };
        let n = layout.len();

        let rs = NeuronParams::preset(NeuronKind::RegularSpiking);
        let fs = NeuronParams::preset(NeuronKind::FastSpiking);
        let params: Vec<NeuronParams> =
            (0..n).map(|i| if layout.excitatory().contains(&i) { rs } else { fs }).collect();
        let states = params.iter().map(NeuronState::at_rest).collect();

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(TOPOLOGY_STREAM);

        let mut synapses = Vec::new();
        for s in Direction::ALL {
            for pre in layout.range(Role::Sensory, s) {
                for m in [s, s.opposite()] {
                    let group = ConnectionGroup::between(s, m).expect("same-axis pair");
                    let targets = layout.range(Role::Motor, m);
                    for k in sample(&mut rng, targets.len(), config.k_out) {
                        synapses.push(Synapse::plastic(pre, targets.start + k, config.w_init, group));
                    }
                }
            }
        }
        for d in Direction::ALL {
            for pre in layout.range(Role::Inhibitory, d) {
                let targets = layout.range(Role::Motor, d);
                for k in sample(&mut rng, targets.len(), config.k_inh) {
                    synapses.push(Synapse {
                        pre,
                        post: targets.start + k,
                        w: config.w_inh,
                        c: 0.0,
                        kind: SynapseKind::Inhibitory,
                    });
                }
            }
        }

        let mut outgoing = vec![Vec::new(); n];
        let mut incoming_plastic = vec![Vec::new(); n];
        let mut by_group: [Vec<usize>; 8] = Default::default();
        for (id, syn) in synapses.iter().enumerate() {
            outgoing[syn.pre].push(id);
            if let Some(g) = syn.group() {
                incoming_plastic[syn.post].push(id);
                by_group[g.index()].push(id);
            }
        }

        let mut noise_rng = ChaCha8Rng::seed_from_u64(seed);
        noise_rng.set_stream(NOISE_STREAM);

        Ok(Network {
            layout,
            stdp: config.stdp(),
            dt: config.dt,
            i_sense: config.i_sense,
            i_noise: config.i_noise,
            params,
            states,
            last_spike: vec![None; n],
            synapses,
            outgoing,
            incoming_plastic,
            by_group,
            dopamine: [Dopamine::default(); 8],
            input: vec![0.0; n],
            pending: vec![0.0; n],
            clock: 0.0,
            seed,
            noise_rng,
            noise_pulses: 0,
            delivered: 0,
            spikes_total: 0,
            spiked_scratch: Vec::new(),
        })
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Simulated time (ms).
    pub fn clock(&self) -> f64 {
        self.clock
    }

    pub fn stdp(&self) -> &StdpParams {
        &self.stdp
    }

    pub fn neuron_params(&self) -> &[NeuronParams] {
        &self.params
    }

    pub fn neuron_states(&self) -> &[NeuronState] {
        &self.states
    }

    pub fn synapses(&self) -> &[Synapse] {
        &self.synapses
    }

    /// Plastic synapses of `group`.
    pub fn group_synapses(&self, group: ConnectionGroup) -> impl Iterator<Item = &Synapse> {
        self.by_group[group.index()].iter().map(|&id| &self.synapses[id])
    }

    /// External current queued for the coming ms.
    pub fn pending_input(&self) -> &[f64] {
        &self.input
    }

    pub fn noise_pulses(&self) -> u64 {
        self.noise_pulses
    }

    /// Synaptic deliveries made so far (one per outgoing synapse per spike).
    pub fn delivered_events(&self) -> u64 {
        self.delivered
    }

    pub fn total_spikes(&self) -> u64 {
        self.spikes_total
    }

    pub fn dopamine(&self, group: ConnectionGroup) -> Dopamine {
        self.dopamine[group.index()]
    }

    pub fn dopamine_all(&self) -> [Dopamine; 8] {
        self.dopamine
    }

    /// Dopamine level of `group` at the current time.
    pub fn modulator(&self, group: ConnectionGroup) -> f64 {
        self.dopamine[group.index()].at(self.clock, self.stdp.tau_d)
    }

    /// Adds `amount` (possibly negative) to the dopamine level of `group`.
    pub fn add_dopamine(&mut self, group: ConnectionGroup, amount: f64) {
        if amount == 0.0 {
            return;
        }
        let now = self.modulator(group);
        self.dopamine[group.index()] = Dopamine { level: now + amount, stamp: self.clock };
    }

    /// Arithmetic mean of the plastic weights of `group`.
    pub fn group_mean_weight(&self, group: ConnectionGroup) -> f64 {
        let ids = &self.by_group[group.index()];
        if ids.is_empty() {
            return 0.0;
        }
        ids.iter().map(|&id| self.synapses[id].w).sum::<f64>() / ids.len() as f64
    }

    /// Group means in [`ConnectionGroup::ALL`] order.
    pub fn group_mean_weights(&self) -> [f64; 8] {
        ConnectionGroup::ALL.map(|g| self.group_mean_weight(g))
    }

    /// Overwrites every weight of `group` (clamped to `[0, w_max]`).
    pub fn set_group_weight(&mut self, group: ConnectionGroup, w: f64) {
        let w = w.clamp(0.0, self.stdp.w_max);
        for &id in &self.by_group[group.index()] {
            self.synapses[id].w = w;
        }
    }

    /// Applies `f` to every plastic synapse of `group`, then re-clamps.
    pub fn update_group<F: FnMut(&mut Synapse)>(&mut self, group: ConnectionGroup, mut f: F) {
        let w_max = self.stdp.w_max;
        for &id in &self.by_group[group.index()] {
            let syn = &mut self.synapses[id];
            f(syn);
            syn.w = syn.w.clamp(0.0, w_max);
        }
    }

    /// Adds `amplitude` to every neuron of the `sensed` sensory population
    /// for the coming ms.
    pub fn inject_sensory(&mut self, sensed: Direction, amplitude: f64) {
        for i in self.layout.range(Role::Sensory, sensed) {
            self.input[i] += amplitude;
        }
    }

    /// Gives one uniformly chosen excitatory neuron a pulse of `i_noise`.
    pub fn inject_noise(&mut self) -> usize {
        let target = self.noise_rng.gen_range(self.layout.excitatory());
        self.input[target] += self.i_noise;
        self.noise_pulses += 1;
        target
    }

    /// Adds `amount` to the external input of neuron `i` for the coming ms.
    pub fn inject(&mut self, i: usize, amount: f64) {
        self.input[i] += amount;
    }

    /// Advances one ms and returns the neurons that spiked.
    pub fn tick(&mut self) -> Result<&[usize]> {
        let t = self.clock + self.dt;
        let dt = self.dt;

        self.spiked_scratch.clear();
        for i in 0..self.states.len() {
            let current = self.input[i] + self.pending[i];
            let spiked = neuron::step(&mut self.states[i], &self.params[i], current, dt, t)
                .map_err(|e| SclaError::NonFinite(format!("neuron {i}: {e}")))?;
            if spiked {
                self.spiked_scratch.push(i);
            }
        }
        self.input.iter_mut().for_each(|x| *x = 0.0);
        self.pending.iter_mut().for_each(|x| *x = 0.0);

        let decay = (-dt / self.stdp.tau_c).exp();
        for ids in &self.by_group {
            for &id in ids {
                self.synapses[id].c *= decay;
            }
        }

        for &n in &self.spiked_scratch {
            // As post-synaptic partner: potentiation against the latest pre spike.
            for &id in &self.incoming_plastic[n] {
                let syn = &mut self.synapses[id];
                if let Some(t_pre) = self.last_spike[syn.pre] {
                    syn.c += stdp_window(t - t_pre, &self.stdp);
                }
            }
            for &id in &self.outgoing[n] {
                let syn = &mut self.synapses[id];
                // As pre-synaptic partner: depression against the latest post spike.
                if syn.is_plastic() {
                    if let Some(t_post) = self.last_spike[syn.post] {
                        syn.c += stdp_window(t_post - t, &self.stdp);
                    }
                }
                self.pending[syn.post] += syn.w;
            }
            self.delivered += self.outgoing[n].len() as u64;
        }
        for &n in &self.spiked_scratch {
            self.last_spike[n] = Some(t);
        }
        self.spikes_total += self.spiked_scratch.len() as u64;

        for g in ConnectionGroup::ALL {
            let m = self.dopamine[g.index()].at(t, self.stdp.tau_d);
            if m == 0.0 {
                continue;
            }
            for &id in &self.by_group[g.index()] {
                let syn = &mut self.synapses[id];
                syn.w = consolidate(syn.w, syn.c, m, dt, self.stdp.w_max);
            }
        }

        self.clock = t;
        Ok(&self.spiked_scratch)
    }

    /// Runs `window_ms` ms with one noise pulse per ms and, when `sensed`
    /// is set, sensory drive into that population every ms.
    pub fn simulate_window(&mut self, window_ms: u32, sensed: Option<Direction>) -> Result<MotorReadout> {
        if window_ms == 0 {
            return Err(SclaError::InvalidParameter("decision window must be at least 1 ms".into()));
        }
        let mut readout = MotorReadout::default();
        for _ in 0..window_ms {
            if self.i_noise != 0.0 {
                self.inject_noise();
            }
            if let Some(d) = sensed {
                self.inject_sensory(d, self.i_sense);
            }
            let layout = self.layout;
            for &n in self.tick()? {
                if let Some((Role::Motor, d)) = layout.classify(n) {
                    readout.counts[d.index()] += 1;
                }
            }
        }
        Ok(readout)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(seed: u64) -> Network {
        Network::build(seed, &ExperimentConfig::default()).unwrap()
    }

    #[test]
    fn layout_matches_population_table() {
        let l = Layout { population_size: 100, inhibitory_size: 50 };
        let one_based = |r: Role, d: Direction| {
            let x = l.range(r, d);
            (x.start + 1, x.end)
        };
        assert_eq!(one_based(Role::Sensory, Direction::Up), (1, 100));
        assert_eq!(one_based(Role::Sensory, Direction::Down), (101, 200));
        assert_eq!(one_based(Role::Sensory, Direction::Left), (201, 300));
        assert_eq!(one_based(Role::Sensory, Direction::Right), (301, 400));
        assert_eq!(one_based(Role::Motor, Direction::Up), (401, 500));
        assert_eq!(one_based(Role::Motor, Direction::Down), (501, 600));
        assert_eq!(one_based(Role::Motor, Direction::Left), (601, 700));
        assert_eq!(one_based(Role::Motor, Direction::Right), (701, 800));
        assert_eq!(one_based(Role::Inhibitory, Direction::Up), (801, 850));
        assert_eq!(one_based(Role::Inhibitory, Direction::Down), (851, 900));
        assert_eq!(one_based(Role::Inhibitory, Direction::Left), (901, 950));
        assert_eq!(one_based(Role::Inhibitory, Direction::Right), (951, 1000));
        assert_eq!(l.len(), 1000);
    }

    #[test]
    fn default_build_counts() {
        let n = net(3);
        assert_eq!(n.len(), 1000);
        let rs = NeuronParams::preset(NeuronKind::RegularSpiking);
        let fs = NeuronParams::preset(NeuronKind::FastSpiking);
        assert_eq!(n.neuron_params().iter().filter(|p| **p == rs).count(), 800);
        assert_eq!(n.neuron_params().iter().filter(|p| **p == fs).count(), 200);
        for g in ConnectionGroup::ALL {
            assert_eq!(n.group_synapses(g).count(), 100 * 10);
            assert_eq!(n.group_mean_weight(g), 1.0);
        }
        let inh = n.synapses().iter().filter(|s| s.kind == SynapseKind::Inhibitory).count();
        assert_eq!(inh, 200 * 25);
    }

    #[test]
    fn invalid_config_rejected() {
        let cfg = ExperimentConfig { k_out: 500, ..Default::default() };
        assert!(Network::build(1, &cfg).is_err());
        let cfg = ExperimentConfig { population_size: 0, ..Default::default() };
        assert!(Network::build(1, &cfg).is_err());
    }

    #[test]
    fn sensory_injection_hits_only_its_population() {
        let mut n = net(1);
        n.inject_sensory(Direction::Up, 15.0);
        let input = n.pending_input();
        assert!(input[..100].iter().all(|&x| x == 15.0));
        assert!(input[100..].iter().all(|&x| x == 0.0));
        n.inject_sensory(Direction::Up, 2.5);
        assert!(n.pending_input()[..100].iter().all(|&x| x == 17.5));

        let mut m = net(1);
        m.inject_sensory(Direction::Left, 0.0);
        assert!(m.pending_input().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn quiet_network_stays_silent() {
        let cfg = ExperimentConfig { i_noise: 0.0, ..Default::default() };
        let mut n = Network::build(2, &cfg).unwrap();
        let r = n.simulate_window(500, None).unwrap();
        assert_eq!(r.total(), 0);
        assert_eq!(n.total_spikes(), 0);
    }

    #[test]
    fn dopamine_decays_between_deposits() {
        let cfg = ExperimentConfig { i_noise: 0.0, ..Default::default() };
        let mut n = Network::build(2, &cfg).unwrap();
        n.add_dopamine(ConnectionGroup::SLtoML, 0.5);
        let stored = n.dopamine(ConnectionGroup::SLtoML);
        n.simulate_window(200, None).unwrap();
        assert_eq!(n.dopamine(ConnectionGroup::SLtoML), stored);
        let m = n.modulator(ConnectionGroup::SLtoML);
        assert!((m - 0.5 * (-1.0f64).exp()).abs() < 1e-12, "{m}");
        n.add_dopamine(ConnectionGroup::SLtoML, 1.0);
        assert!((n.modulator(ConnectionGroup::SLtoML) - (m + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn leaders_and_ties() {
        let r = MotorReadout { counts: [12, 3, 5, 7] };
        assert_eq!(r.leaders(), vec![Direction::Up]);
        let r = MotorReadout { counts: [4, 4, 1, 0] };
        assert_eq!(r.leaders(), vec![Direction::Up, Direction::Down]);
        assert!(MotorReadout::default().leaders().is_empty());
    }
}
