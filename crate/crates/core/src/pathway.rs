//! Movement directions and the eight plastic sensory→motor pathways.

use std::fmt;
use std::str::FromStr;

use crate::error::SclaError;

/// One of the four moves (and the four sensor/motor populations).
///
/// Index order `Up, Down, Left, Right` is used everywhere a per-direction
/// array appears (motor counts, automaton probability vectors).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Up, Direction::Down, Direction::Left, Direction::Right];

    pub fn index(self) -> usize {
        match self {
            Direction::Up => 0,
            Direction::Down => 1,
            Direction::Left => 2,
            Direction::Right => 3,
        }
    }

    pub fn from_index(i: usize) -> Option<Direction> {
        Direction::ALL.get(i).copied()
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Direction::Up | Direction::Down)
    }

    /// Grid displacement with Up = +y and Right = +x.
    pub fn delta(self) -> (i32, i32) {
        match self {
            Direction::Up => (0, 1),
            Direction::Down => (0, -1),
            Direction::Left => (-1, 0),
            Direction::Right => (1, 0),
        }
    }

    /// Single-letter population suffix (`U`, `D`, `L`, `R`).
    pub fn letter(self) -> char {
        match self {
            Direction::Up => 'U',
            Direction::Down => 'D',
            Direction::Left => 'L',
            Direction::Right => 'R',
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Direction::Up => "up",
            Direction::Down => "down",
            Direction::Left => "left",
            Direction::Right => "right",
        };
        f.write_str(s)
    }
}

/// A plastic sensory→motor pathway.
///
/// Each sensory population projects to its own motor population and to the
/// opposite one on the same axis; cross-axis pathways do not exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConnectionGroup {
    SUtoMU,
    SUtoMD,
    SDtoMU,
    SDtoMD,
    SLtoML,
    SLtoMR,
    SRtoMR,
    SRtoML,
}

impl ConnectionGroup {
    /// Column order used in every CSV output.
    pub const ALL: [ConnectionGroup; 8] = [
        ConnectionGroup::SUtoMU,
        ConnectionGroup::SUtoMD,
        ConnectionGroup::SDtoMU,
        ConnectionGroup::SDtoMD,
        ConnectionGroup::SLtoML,
        ConnectionGroup::SLtoMR,
        ConnectionGroup::SRtoMR,
        ConnectionGroup::SRtoML,
    ];

    /// Builds the group for a sensory/motor pair, or `None` for a cross-axis pair.
    pub fn between(sensory: Direction, motor: Direction) -> Option<ConnectionGroup> {
        use ConnectionGroup::*;
        use Direction::*;
        Some(match (sensory, motor) {
            (Up, Up) => SUtoMU,
            (Up, Down) => SUtoMD,
            (Down, Up) => SDtoMU,
            (Down, Down) => SDtoMD,
            (Left, Left) => SLtoML,
            (Left, Right) => SLtoMR,
            (Right, Right) => SRtoMR,
            (Right, Left) => SRtoML,
            _ => return None,
        })
    }

    /// The pathway from `sensed` to the motor population moving toward it.
    pub fn matching(sensed: Direction) -> ConnectionGroup {
        ConnectionGroup::between(sensed, sensed).expect("same-direction pair always exists")
    }

    /// The pathway from `sensed` to the motor population moving away from it.
    pub fn opposing(sensed: Direction) -> ConnectionGroup {
        ConnectionGroup::between(sensed, sensed.opposite()).expect("same-axis pair always exists")
    }

    pub fn sensory(self) -> Direction {
        use ConnectionGroup::*;
        match self {
            SUtoMU | SUtoMD => Direction::Up,
            SDtoMU | SDtoMD => Direction::Down,
            SLtoML | SLtoMR => Direction::Left,
            SRtoMR | SRtoML => Direction::Right,
        }
    }

    pub fn motor(self) -> Direction {
        use ConnectionGroup::*;
        match self {
            SUtoMU | SDtoMU => Direction::Up,
            SUtoMD | SDtoMD => Direction::Down,
            SLtoML | SRtoML => Direction::Left,
            SLtoMR | SRtoMR => Direction::Right,
        }
    }

    /// True for the four pathways whose motor direction equals the sensed one.
    pub fn is_matching(self) -> bool {
        self.sensory() == self.motor()
    }

    pub fn index(self) -> usize {
        ConnectionGroup::ALL.iter().position(|&g| g == self).expect("every group is listed in ALL")
    }

    pub fn label(self) -> &'static str {
        use ConnectionGroup::*;
        match self {
            SUtoMU => "SUtoMU",
            SUtoMD => "SUtoMD",
            SDtoMU => "SDtoMU",
            SDtoMD => "SDtoMD",
            SLtoML => "SLtoML",
            SLtoMR => "SLtoMR",
            SRtoMR => "SRtoMR",
            SRtoML => "SRtoML",
        }
    }
}

impl fmt::Display for ConnectionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ConnectionGroup {
    type Err = SclaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConnectionGroup::ALL
            .iter()
            .copied()
            .find(|g| g.label() == s)
            .ok_or_else(|| SclaError::Parse(format!("unknown connection group `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opposites_are_involutions() {
        for d in Direction::ALL {
            assert_ne!(d.opposite(), d);
            assert_eq!(d.opposite().opposite(), d);
            assert_eq!(d.opposite().is_vertical(), d.is_vertical());
        }
    }

    #[test]
    fn cross_axis_pairs_do_not_exist() {
        let mut n = 0;
        for s in Direction::ALL {
            for m in Direction::ALL {
                match ConnectionGroup::between(s, m) {
                    Some(g) => {
                        n += 1;
                        assert_eq!(g.sensory(), s);
                        assert_eq!(g.motor(), m);
                    }
                    None => assert_ne!(s.is_vertical(), m.is_vertical()),
                }
            }
        }
        assert_eq!(n, 8);
    }

    #[test]
    fn labels_parse_back() {
        for g in ConnectionGroup::ALL {
            assert_eq!(g.label().parse::<ConnectionGroup>().unwrap(), g);
            assert_eq!(ConnectionGroup::ALL[g.index()], g);
        }
        assert!("SUtoML".parse::<ConnectionGroup>().is_err());
    }
}
