//! Shallow random circuits that never act on the subsystem leave it frozen.

use eqlab::circuits::{circuit_support, no_touch_probability, sample_random_circuit, GateSet, NoTouchForm};
use eqlab::dynamics::{evolve_reduced, initial_reduced, DensityMatrix, DiagonalizerSource, HamiltonianModel};
use eqlab::ensembles::{occupation_energies, IsingParams, RngStream};
use eqlab::numerics::{trace_norm, BipartitionLayout};

fn main() -> eqlab::Result<()> {
    let (n, c, draws) = (14usize, 2usize, 300u64);
    let gs = GateSet::standard();
    let layout = BipartitionLayout::leading(n, 1)?;
    let energies = occupation_energies(&IsingParams::new(n, 0.7)?.frequencies())?;
    let base = HamiltonianModel::new(&energies, DiagonalizerSource::Identity)?;
    let rho0 = DensityMatrix::zero_state(n)?;
    let r0 = initial_reduced(&rho0, &layout)?;

    let root = RngStream::root(4);
    let (mut free, mut frozen_ok, mut moved) = (0, 0, 0.0f64);
    for k in 0..draws {
        let circ = sample_random_circuit(n, c, &gs, &mut root.child(k).rng())?;
        let model = base.rediagonalized(DiagonalizerSource::Circuit(circ.clone()))?;
        let dist = trace_norm(&(evolve_reduced(&model, &rho0, &layout, 17.0)?.matrix() - &r0))?;
        if circuit_support(&circ).contains(&0) {
            moved = moved.max(dist);
        } else {
            free += 1;
            frozen_ok += (dist < 1e-10) as usize;
        }
    }
    let exact = no_touch_probability(n, 1, c, &gs, NoTouchForm::Exact)?;
    println!("untouched: {free}/{draws} (exact {exact:.4}), all frozen: {}", frozen_ok == free);
    println!("largest move among touched instances: {moved:.3}");
    Ok(())
}
