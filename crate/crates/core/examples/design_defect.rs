//! How far random circuits are from a unitary 4-design, by depth.

use eqlab::circuits::GateSet;
use eqlab::ensembles::RngStream;
use eqlab::moments::{estimate_design_defect, DesignSampler};

fn main() -> eqlab::Result<()> {
    let root = RngStream::root(1);
    let haar = estimate_design_defect(2, &DesignSampler::Haar, 20_000, root.child(0))?;
    println!("Haar: {:.3} ± {:.3}", haar.mean, haar.stderr);
    for gates in [5, 20, 80, 320] {
        let s = DesignSampler::Circuit { gates, gate_set: GateSet::standard() };
        let est = estimate_design_defect(2, &s, 20_000, root.child(gates as u64))?;
        println!("C = {gates:>3}: {:.3} ± {:.3}", est.mean, est.stderr);
    }
    Ok(())
}
