//! Regular-spiking and fast-spiking cells under constant input.
//!
//! `cargo run --example neuron_dynamics -- 10`

use scla_sim::neuron::{self, NeuronKind, NeuronParams, NeuronState};

fn main() -> scla_sim::Result<()> {
    let current: f64 = std::env::args().nth(1).map_or(Ok(10.0), |s| s.parse()).unwrap_or(10.0);

    for kind in [NeuronKind::RegularSpiking, NeuronKind::FastSpiking] {
        let p = NeuronParams::preset(kind);
        let (v0, u0) = p.resting_point().expect("presets have a resting point");
        let mut s = NeuronState::new(v0, u0);
        let mut spikes = Vec::new();
        for t in 0..1000 {
            if neuron::step(&mut s, &p, current, 1.0, t as f64)? {
                spikes.push(t);
            }
        }
        let isis: Vec<i32> = spikes.windows(2).map(|w| w[1] - w[0]).collect();
        println!("{kind}: rest ({v0:.1}, {u0:.1}), {} spikes in 1 s at I = {current}", spikes.len());
        println!("  first spikes (ms): {:?}", &spikes[..spikes.len().min(8)]);
        println!("  last ISIs (ms):    {:?}", &isis[isis.len().saturating_sub(5)..]);
    }
    Ok(())
}
