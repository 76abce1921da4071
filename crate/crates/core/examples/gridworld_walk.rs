//! A uniform random walker on the grid, the yardstick for "no learning".
//!
//! After each hit the robot lands next to the target, so every visit is a
//! return to (3, 3) from distance 1. The grid walk visits (3, 3) once every
//! 25 steps on average, so 1000 steps give about 1000 / 24 hits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scla_sim::{Direction, GridPosition, GridState};

fn main() -> scla_sim::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut grid = GridState::new(GridPosition::new(1, 1)?);
    let mut counts = Vec::new();
    for _ in 0..2000 {
        grid.respawn(&mut rng);
        let mut hits = 0;
        for _ in 0..1000 {
            let d = Direction::ALL[rng.gen_range(0..4)];
            if grid.apply_move(d) {
                hits += 1;
                grid.respawn(&mut rng);
            }
        }
        counts.push(hits);
    }
    counts.sort_unstable();
    let mean = counts.iter().sum::<usize>() as f64 / counts.len() as f64;
    let pct = |q: f64| counts[((q * counts.len() as f64) as usize).min(counts.len() - 1)];
    println!("successes per 1000-step epoch over {} epochs", counts.len());
    println!("mean {mean:.2}, 1% {}, median {}, 99% {}", pct(0.01), pct(0.5), pct(0.99));
    Ok(())
}
