//! The SCLA step loop: sense, simulate a decision window, act, judge the
//! move, and hand out reward to the automata and the synaptic pathways.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cla::{Automaton, ClaGrid, Feedback};
use crate::config::{ExperimentConfig, Mode};
use crate::error::Result;
use crate::gridworld::{manhattan, GridPosition, GridState};
use crate::network::{Dopamine, MotorReadout, Network};
use crate::pathway::{ConnectionGroup, Direction};

const ACTION_STREAM: u64 = 2;
const SPAWN_STREAM: u64 = 3;

/// Judges a move: favourable iff the target was reached or the robot got closer.
pub fn feedback(before: &GridState, after: &GridState, reached: bool) -> Feedback {
    if reached || manhattan(after.robot, after.target) < manhattan(before.robot, before.target) {
        Feedback::Favorable
    } else {
        Feedback::Unfavorable
    }
}

/// Record of one environment step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    pub from: GridPosition,
    pub sensed: Option<Direction>,
    pub action: Direction,
    pub beta: Feedback,
    pub reached: bool,
    /// Motor spike counts; all zero in CLA-only mode.
    pub motor_counts: MotorReadout,
    /// Whether the motor readout decided the action on its own.
    pub decided_by_network: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpochStats {
    pub epoch: usize,
    pub steps: usize,
    pub successes: usize,
    /// Group mean weights at epoch end; `None` without a network.
    pub final_weights: Option<[f64; 8]>,
    /// Group mean weights at the start of every step.
    pub weight_samples: Vec<[f64; 8]>,
    /// Automaton probability vectors at epoch end, row-major by cell.
    pub automata: Vec<[f64; 4]>,
}

#[derive(Debug, Clone)]
pub struct Engine {
    config: ExperimentConfig,
    network: Option<Network>,
    cla: ClaGrid,
    grid: GridState,
    clock: u64,
    action_rng: ChaCha8Rng,
    spawn_rng: ChaCha8Rng,
}

impl Engine {
    pub fn new(config: ExperimentConfig) -> Result<Engine> {
        config.validate()?;
        let network = match config.mode {
            Mode::Scla => Some(Network::build(config.seed, &config)?),
            Mode::ClaOnly => None,
        };
        let mut action_rng = ChaCha8Rng::seed_from_u64(config.seed);
        action_rng.set_stream(ACTION_STREAM);
        let mut spawn_rng = ChaCha8Rng::seed_from_u64(config.seed);
        spawn_rng.set_stream(SPAWN_STREAM);
        let mut grid = GridState::new(GridState::TARGET);
        grid.respawn(&mut spawn_rng);
        Ok(Engine { config, network, cla: ClaGrid::new(), grid, clock: 0, action_rng, spawn_rng })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn network(&self) -> Option<&Network> {
        self.network.as_ref()
    }

    pub fn network_mut(&mut self) -> Option<&mut Network> {
        self.network.as_mut()
    }

    pub fn cla(&self) -> &ClaGrid {
        &self.cla
    }

    pub fn cla_mut(&mut self) -> &mut ClaGrid {
        &mut self.cla
    }

    pub fn grid(&self) -> &GridState {
        &self.grid
    }

    /// Places the robot; the position must differ from the target.
    pub fn place_robot(&mut self, robot: GridPosition) {
        self.grid.robot = robot;
    }

    /// Environment steps taken so far.
    pub fn clock(&self) -> u64 {
        self.clock
    }

    /// Stored dopamine of every group (all default without a network).
    pub fn dopamine_snapshot(&self) -> [Dopamine; 8] {
        self.network.as_ref().map(Network::dopamine_all).unwrap_or_default()
    }

    pub fn respawn(&mut self) {
        self.grid.respawn(&mut self.spawn_rng);
    }

    /// Picks the action from motor counts: a unique maximum wins outright;
    /// ties are broken by sampling the automaton restricted to the tied
    /// directions, and an all-zero readout samples the full automaton.
    pub fn choose_action(&mut self, readout: &MotorReadout) -> Result<(Direction, bool)> {
        let automaton = self.cla.get(self.grid.robot);
        let leaders = readout.leaders();
        match leaders.len() {
            1 => Ok((leaders[0], true)),
            0 => Ok((automaton.select_action(&mut self.action_rng)?, false)),
            _ => Ok((select_among(automaton, &leaders, &mut self.action_rng)?, false)),
        }
    }

    /// Hands out reward after a move from `from`.
    ///
    /// Nothing happens unless the target was sensed before the move. A move
    /// along the sensed axis strengthens the pathway toward the target and
    /// weakens the opposite one; a perpendicular move leaves the pathways
    /// alone. The automaton of `from` learns from `beta` in every sensed case.
    pub fn dispatch_reward(
        &mut self,
        from: GridPosition,
        sensed: Option<Direction>,
        action: Direction,
        beta: Feedback,
        reached: bool,
    ) -> Result<()> {
        let Some(d) = sensed else {
            return Ok(());
        };
        let (d_amp, d_reach) = (self.config.d_amp, self.config.d_reach);
        if let Some(net) = self.network.as_mut() {
            if action == d || action == d.opposite() {
                net.add_dopamine(ConnectionGroup::matching(d), d_amp);
                net.add_dopamine(ConnectionGroup::opposing(d), -d_amp);
            }
            if reached {
                if let Some(g) = ConnectionGroup::between(d, action) {
                    net.add_dopamine(g, d_reach);
                }
            }
        }
        self.cla.get_mut(from).update(action, beta, self.config.lambda_r, self.config.lambda_p)?;
        self.cla.apply_local_rule(from, self.config.mu)
    }

    /// One environment step.
    pub fn step_env(&mut self) -> Result<StepOutcome> {
        let before = self.grid;
        let sensed = before.sense();

        let (action, motor_counts, decided_by_network) = match self.network.as_mut() {
            Some(net) => {
                let readout = net.simulate_window(self.config.t_window, sensed)?;
                let (action, by_net) = self.choose_action(&readout)?;
                (action, readout, by_net)
            }
            None => {
                let a = self.cla.get(before.robot).select_action(&mut self.action_rng)?;
                (a, MotorReadout::default(), false)
            }
        };

        let reached = self.grid.apply_move(action);
        let beta = feedback(&before, &self.grid, reached);

        match self.config.mode {
            Mode::Scla => self.dispatch_reward(before.robot, sensed, action, beta, reached)?,
            Mode::ClaOnly => {
                self.cla.get_mut(before.robot).update(action, beta, self.config.lambda_r, self.config.lambda_p)?;
                self.cla.apply_local_rule(before.robot, self.config.mu)?;
            }
        }

        if reached {
            self.respawn();
        }
        self.clock += 1;
        Ok(StepOutcome { from: before.robot, sensed, action, beta, reached, motor_counts, decided_by_network })
    }

    /// Runs `steps` environment steps, starting from a fresh spawn. Learned
    /// state carries over between epochs.
    pub fn run_epoch(&mut self, epoch: usize, steps: usize) -> Result<EpochStats> {
        self.run_epoch_with(epoch, steps, |_, _| {})
    }

    /// Like [`Engine::run_epoch`], calling `observe` after every step with
    /// the engine and the outcome.
    pub fn run_epoch_with<F>(&mut self, epoch: usize, steps: usize, mut observe: F) -> Result<EpochStats>
    where
        F: FnMut(&Engine, &StepOutcome),
    {
        self.respawn();
        let mut successes = 0;
        let mut weight_samples = Vec::with_capacity(if self.network.is_some() { steps } else { 0 });
        for _ in 0..steps {
            if let Some(net) = &self.network {
                weight_samples.push(net.group_mean_weights());
            }
            let outcome = self.step_env()?;
            if outcome.reached {
                successes += 1;
            }
            observe(self, &outcome);
        }
        Ok(EpochStats {
            epoch,
            steps,
            successes,
            final_weights: self.network.as_ref().map(Network::group_mean_weights),
            weight_samples,
            automata: self.cla.snapshot(),
        })
    }
}

/// Samples from `automaton` conditioned on `allowed`; uniform over `allowed`
/// when the automaton gives them no mass.
fn select_among(automaton: &Automaton, allowed: &[Direction], rng: &mut ChaCha8Rng) -> Result<Direction> {
    let mut p = [0.0; 4];
    for d in allowed {
        p[d.index()] = automaton.prob(*d);
    }
    let mass: f64 = p.iter().sum();
    if mass > 0.0 {
        p.iter_mut().for_each(|x| *x /= mass);
    } else {
        for d in allowed {
            p[d.index()] = 1.0 / allowed.len() as f64;
        }
    }
    // Renormalisation can leave the sum a few ulps off 1.
    let sum: f64 = p.iter().sum();
    let last = allowed[allowed.len() - 1].index();
    p[last] = (p[last] + 1.0 - sum).max(0.0);
    Automaton { p }.select_action(rng)
}
