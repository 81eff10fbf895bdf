//! Distance of a one-qubit subsystem from its dephased state after a quench.
//!
//! Eight qubits, GUE energies, Haar eigenbasis. The bound column is the
//! ε-fraction bound at ε = 0.1; at this size it sits above the largest
//! possible trace distance.
//!
//! ```bash
//! cargo run --release --example quench_trace
//! ```

use eqlab::dynamics::{equilibration_trace, DensityMatrix, DiagonalizerSource, HamiltonianModel};
use eqlab::ensembles::{sample_gue_spectrum, RngStream};
use eqlab::numerics::BipartitionLayout;

fn main() -> eqlab::Result<()> {
    let n = 8;
    let root = RngStream::root(2024);
    let energies = sample_gue_spectrum(1 << n, &mut root.child(0).rng())?;
    let model = HamiltonianModel::new(&energies, DiagonalizerSource::Haar(root.child(1)))?;
    let layout = BipartitionLayout::leading(n, 1)?;
    let rho0 = DensityMatrix::zero_state(n)?;

    let times: Vec<f64> = (0..=20).map(|k| 0.025 * k as f64).collect();
    let trace = equilibration_trace(&model, &rho0, &layout, &times, 0.1, None)?;

    println!("{:>6} {:>10} {:>10} {:>10}", "t", "distance", "|mu(t)|", "bound");
    for i in 0..trace.len() {
        println!(
            "{:>6.3} {:>10.5} {:>10.5} {:>10.4}",
            trace.times[i], trace.distances[i], trace.mu_abs[i], trace.bound_r1[i]
        );
    }
    Ok(())
}
