//! Hamiltonian assembly and exact time evolution in the eigenbasis.

mod evolve;
mod model;
mod state;
mod trace;

pub use evolve::{
    dephase_eigenbasis, dephase_full, evolution_phases, evolve_full, evolve_reduced, initial_reduced, omega_map,
    time_averaged_state,
};
pub(crate) use evolve::PreparedState;
pub use model::{DiagonalizerSource, HamiltonianModel};
pub use state::DensityMatrix;
pub use trace::{equilibration_trace, time_average_distance, EquilibrationTrace};

pub use crate::numerics::{BipartitionLayout, MeanEstimate};

#[cfg(test)]
mod tests;
