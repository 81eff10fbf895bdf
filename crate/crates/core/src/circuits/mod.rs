//! Random quantum circuits over a finite gate set.

mod circuit;
mod fermion;
mod gates;

pub use circuit::{
    circuit_support, circuit_unitary, no_touch_probability, sample_random_circuit, Application,
    NoTouchForm, QuantumCircuit, MAX_SYNTHESIS_QUBITS,
};
pub use fermion::free_fermion_model;
pub use gates::{Gate, GateSet, DEFAULT_ALPHA};
