//! Linear reward-penalty automata and the neighbourhood local rule.

use scla_sim::cla::neighborhood;
use scla_sim::{Automaton, ClaGrid, Direction, Feedback, GridPosition};

fn main() -> scla_sim::Result<()> {
    let mut a = Automaton::default();
    a.update(Direction::Up, Feedback::Favorable, 0.1, 0.02)?;
    println!("reward Up (lambda_r 0.1):   {:.4?}", a.p);
    let mut b = Automaton::default();
    b.update(Direction::Up, Feedback::Unfavorable, 0.1, 0.1)?;
    println!("penalise Up (lambda_p 0.1): {:.4?}", b.p);

    // With lambda_p > lambda_r, repeated reward and penalty settle inside the simplex.
    let mut c = Automaton::default();
    for k in 0..2000 {
        let beta = if k % 3 == 0 { Feedback::Favorable } else { Feedback::Unfavorable };
        c.update(Direction::Right, beta, 0.01, 0.05)?;
    }
    println!("mixed feedback on Right:    {:.4?}", c.p);

    let cell = GridPosition::new(2, 2)?;
    let mut grid = ClaGrid::new();
    for n in neighborhood(cell)? {
        if n != cell {
            *grid.get_mut(n) = Automaton::new([0.7, 0.1, 0.1, 0.1])?;
        }
    }
    grid.apply_local_rule(cell, 0.5)?;
    println!("cell (2,2) after the local rule with mu 0.5: {:.4?}", grid.get(cell).p);
    Ok(())
}
