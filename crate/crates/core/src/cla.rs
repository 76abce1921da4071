//! Cellular learning automata over the grid.
//!
//! Every cell of the 5×5 lattice owns a four-action learning automaton. The
//! automata learn with the linear reward–penalty (L_R-P) scheme; an optional
//! local rule mixes a cell's probability vector with its von Neumann
//! neighbours.

use rand::Rng;

use crate::error::{Result, SclaError};
use crate::gridworld::{GridPosition, GRID_SIZE};
use crate::pathway::Direction;

const SIMPLEX_TOL: f64 = 1e-9;

/// Environment response to an action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Feedback {
    Favorable,
    Unfavorable,
}

/// Action probabilities indexed by [`Direction::index`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Automaton {
    pub p: [f64; 4],
}

impl Default for Automaton {
    fn default() -> Self {
        Automaton { p: [0.25; 4] }
    }
}

impl Automaton {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        let a = Automaton { p };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        let sum: f64 = self.p.iter().sum();
        if self.p.iter().any(|&x| !x.is_finite() || x < 0.0) || (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(SclaError::InvalidDistribution(self.p));
        }
        Ok(())
    }

    pub fn prob(&self, d: Direction) -> f64 {
        self.p[d.index()]
    }

    /// Samples an action with one uniform draw from `rng`.
    pub fn select_action<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Direction> {
        self.validate()?;
        let r: f64 = rng.gen();
        let sum: f64 = self.p.iter().sum();
        let mut acc = 0.0;
        for d in Direction::ALL {
            acc += self.p[d.index()] / sum;
            if r < acc {
                return Ok(d);
            }
        }
        // Rounding left `acc` just under 1: take the last action with mass.
        Ok(Direction::ALL
            .into_iter()
            .rev()
            .find(|d| self.p[d.index()] > 0.0)
            .expect("validated distribution has positive mass"))
    }

    /// Linear reward–penalty update for `taken` under `beta`.
    pub fn update(&mut self, taken: Direction, beta: Feedback, lambda_r: f64, lambda_p: f64) -> Result<()> {
        check_rate("lambda_r", lambda_r)?;
        check_rate("lambda_p", lambda_p)?;
        let k = taken.index();
        match beta {
            Feedback::Favorable => {
                for (j, pj) in self.p.iter_mut().enumerate() {
                    if j == k {
                        *pj += lambda_r * (1.0 - *pj);
                    } else {
                        *pj *= 1.0 - lambda_r;
                    }
                }
            }
            Feedback::Unfavorable => {
                let share = lambda_p / (self.p.len() - 1) as f64;
                for (j, pj) in self.p.iter_mut().enumerate() {
                    if j == k {
                        *pj *= 1.0 - lambda_p;
                    } else {
                        *pj = share + (1.0 - lambda_p) * *pj;
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_rate(name: &str, v: f64) -> Result<()> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(SclaError::InvalidParameter(format!("{name} must lie in [0, 1], got {v}")))
    }
}

/// Free-function form of [`Automaton::select_action`].
pub fn select_action<R: Rng + ?Sized>(automaton: &Automaton, rng: &mut R) -> Result<Direction> {
    automaton.select_action(rng)
}

/// Free-function form of [`Automaton::update`].
pub fn update(
    automaton: &Automaton,
    taken: Direction,
    beta: Feedback,
    lambda_r: f64,
    lambda_p: f64,
) -> Result<Automaton> {
    let mut next = *automaton;
    next.update(taken, beta, lambda_r, lambda_p)?;
    Ok(next)
}

/// Von Neumann neighbours of `cell` that lie on the lattice.
pub fn neighborhood(cell: GridPosition) -> Result<Vec<GridPosition>> {
    let cell = GridPosition::new(cell.x, cell.y)?;
    Ok(Direction::ALL.into_iter().filter_map(|d| cell.shifted(d)).collect())
}

/// One automaton per lattice cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ClaGrid {
    cells: Vec<Automaton>,
}

impl Default for ClaGrid {
    fn default() -> Self {
        ClaGrid { cells: vec![Automaton::default(); (GRID_SIZE * GRID_SIZE) as usize] }
    }
}

impl ClaGrid {
    pub const DIMENSION: usize = 2;

    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, cell: GridPosition) -> &Automaton {
        &self.cells[cell.index()]
    }

    pub fn get_mut(&mut self, cell: GridPosition) -> &mut Automaton {
        &mut self.cells[cell.index()]
    }

    /// Probability vectors in row-major cell order.
    pub fn snapshot(&self) -> Vec<[f64; 4]> {
        self.cells.iter().map(|a| a.p).collect()
    }

    /// Local rule: `p <- (1 - mu) p + mu * mean(neighbour p)`, renormalised.
    /// `mu = 0` leaves the grid untouched.
    pub fn apply_local_rule(&mut self, cell: GridPosition, mu: f64) -> Result<()> {
        check_rate("mu", mu)?;
        if mu == 0.0 {
            return Ok(());
        }
        let neighbours = neighborhood(cell)?;
        let mut mean = [0.0; 4];
        for n in &neighbours {
            for (m, q) in mean.iter_mut().zip(self.get(*n).p) {
                *m += q;
            }
        }
        let count = neighbours.len() as f64;
        let own = self.get_mut(cell);
        for (p, m) in own.p.iter_mut().zip(mean) {
            *p = (1.0 - mu) * *p + mu * m / count;
        }
        let sum: f64 = own.p.iter().sum();
        for p in own.p.iter_mut() {
            *p /= sum;
        }
        Ok(())
    }
}
