//! The 5×5 grid the robot moves on.

use rand::Rng;

use crate::error::{Result, SclaError};
use crate::pathway::Direction;

pub const GRID_SIZE: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridPosition {
    pub x: i32,
    pub y: i32,
}

impl GridPosition {
    pub fn new(x: i32, y: i32) -> Result<Self> {
        if (1..=GRID_SIZE).contains(&x) && (1..=GRID_SIZE).contains(&y) {
            Ok(GridPosition { x, y })
        } else {
            Err(SclaError::OffGrid { x, y })
        }
    }

    /// Row-major index in `0..25`.
    pub fn index(self) -> usize {
        ((self.y - 1) * GRID_SIZE + (self.x - 1)) as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        let i = i32::try_from(i).ok()?;
        if i >= GRID_SIZE * GRID_SIZE {
            return None;
        }
        Some(GridPosition { x: i % GRID_SIZE + 1, y: i / GRID_SIZE + 1 })
    }

    /// The neighbouring cell in `dir`, or `None` past the wall.
    pub fn shifted(self, dir: Direction) -> Option<Self> {
        let (dx, dy) = dir.delta();
        GridPosition::new(self.x + dx, self.y + dy).ok()
    }

    pub fn all() -> impl Iterator<Item = GridPosition> {
        (0..(GRID_SIZE * GRID_SIZE) as usize).filter_map(GridPosition::from_index)
    }
}

pub fn manhattan(a: GridPosition, b: GridPosition) -> u32 {
    a.x.abs_diff(b.x) + a.y.abs_diff(b.y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridState {
    pub robot: GridPosition,
    pub target: GridPosition,
}

impl GridState {
    pub const TARGET: GridPosition = GridPosition { x: 3, y: 3 };

    pub fn new(robot: GridPosition) -> Self {
        GridState { robot, target: Self::TARGET }
    }

    pub fn distance(&self) -> u32 {
        manhattan(self.robot, self.target)
    }

    /// Direction toward the target when it is exactly one cell away.
    pub fn sense(&self) -> Option<Direction> {
        if self.distance() != 1 {
            return None;
        }
        Direction::ALL.into_iter().find(|&d| self.robot.shifted(d) == Some(self.target))
    }

    /// Moves one cell; walls hold the robot in place. Returns whether the
    /// target was reached.
    pub fn apply_move(&mut self, action: Direction) -> bool {
        if let Some(next) = self.robot.shifted(action) {
            self.robot = next;
        }
        self.robot == self.target
    }

    /// The cells one step from the target, in `Direction::ALL` order.
    pub fn spawn_cells(&self) -> Vec<GridPosition> {
        Direction::ALL.into_iter().filter_map(|d| self.target.shifted(d)).collect()
    }

    /// Places the robot uniformly on a cell adjacent to the target.
    pub fn respawn<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let cells = self.spawn_cells();
        self.robot = cells[rng.gen_range(0..cells.len())];
    }
}

/// Free-function form of [`GridState::sense`].
pub fn sense(state: &GridState) -> Option<Direction> {
    state.sense()
}

/// Free-function form of [`GridState::apply_move`].
pub fn apply_move(state: &GridState, action: Direction) -> (GridState, bool) {
    let mut next = *state;
    let reached = next.apply_move(action);
    (next, reached)
}
