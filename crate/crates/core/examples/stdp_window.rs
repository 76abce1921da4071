//! The STDP kernel and how dopamine turns an eligibility trace into a
//! weight change.

use scla_sim::plasticity::{apply_dopamine, decay_eligibility, on_spike_event, stdp_window, SpikePair, StdpParams};
use scla_sim::{ConnectionGroup, Synapse};

fn main() -> scla_sim::Result<()> {
    let p = StdpParams::default();
    println!("lag (ms)  kernel");
    for lag in [-40.0, -20.0, -10.0, -5.0, -1.0, 1.0, 5.0, 10.0, 20.0, 40.0] {
        println!("{lag:>8}  {:+.4}", stdp_window(lag, &p));
    }

    // Causal pairing, then a dopamine pulse arriving half a second later.
    let mut syn = Synapse::plastic(0, 1, 1.0, ConnectionGroup::SUtoMU);
    on_spike_event(&mut syn, SpikePair { t_pre: 0.0, t_post: 5.0 }, &p);
    println!("\nafter pre->post at +5 ms: c = {:.4}, w = {:.4}", syn.c, syn.w);
    syn.c = decay_eligibility(syn.c, 500.0, &p);
    println!("500 ms later:             c = {:.4}", syn.c);

    let mut t = 0.0;
    let mut dopamine = 0.01;
    while t < 1000.0 {
        apply_dopamine(&mut syn, dopamine, 1.0, &p)?;
        syn.c = decay_eligibility(syn.c, 1.0, &p);
        dopamine *= (-1.0 / p.tau_d).exp();
        t += 1.0;
    }
    println!("after a 0.01 dopamine pulse decaying over 1 s: w = {:.4}", syn.w);
    Ok(())
}
