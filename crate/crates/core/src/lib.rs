//! Spiking-network + cellular-learning-automata navigation on a 5×5 grid.
//!
//! A robot must reach the target at `(3, 3)`. When the target is one cell
//! away, the matching sensory population of a 1000-neuron Izhikevich network
//! is driven; motor spike counts over a short decision window choose the
//! move. Dopamine-modulated STDP strengthens the sensory→motor pathway that
//! points at the target and weakens its opposite, while a lattice of learning
//! automata (one per cell) resolves undecided readouts.
//!
//! | module        | contents                                             |
//! |---------------|------------------------------------------------------|
//! | [`neuron`]    | Izhikevich dynamics, presets, Euler stepping         |
//! | [`plasticity`]| STDP window, eligibility traces, dopamine            |
//! | [`network`]   | population layout, wiring, spike propagation         |
//! | [`cla`]       | learning automata, L_R-P update, local rule          |
//! | [`gridworld`] | grid, sensing, moves, respawn                        |
//! | [`engine`]    | the step loop and reward dispatch                    |
//! | [`config`]    | run configuration and its file format                |
//! | [`report`]    | experiment driver and CSV output                     |
//! | [`cli`]       | argument parsing for the `scla-sim` binary           |
//!
//! ```no_run
//! use scla_sim::{run_experiment, ExperimentConfig};
//!
//! let report = run_experiment(&ExperimentConfig::default()).unwrap();
//! println!("mean successes per epoch: {:?}", report.mean_successes());
//! ```

pub mod cla;
pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod gridworld;
pub mod network;
pub mod neuron;
pub mod pathway;
pub mod plasticity;
pub mod report;

pub use cla::{Automaton, ClaGrid, Feedback};
pub use config::{load_config, ExperimentConfig, Mode};
pub use engine::{feedback, Engine, EpochStats, StepOutcome};
pub use error::{Result, SclaError};
pub use gridworld::{manhattan, GridPosition, GridState};
pub use network::{MotorReadout, Network};
pub use neuron::{NeuronKind, NeuronParams, NeuronState};
pub use pathway::{ConnectionGroup, Direction};
pub use plasticity::{StdpParams, Synapse};
pub use report::{run_experiment, run_seeds, write_outputs, ExperimentReport};
