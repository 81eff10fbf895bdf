//! Fourth-moment machinery behind the typical-Hamiltonian bound: the
//! permutation expansion of the Haar twirl, its coefficients, the spectral
//! sums, and Monte Carlo checks of both.

mod coefficients;
mod montecarlo;
mod operator;
mod perm;
mod spectral;

pub use coefficients::{beta_purity, c_coefficients, MomentCoefficients, COEFFICIENT_CLASSES};
pub use montecarlo::{
    estimate_design_defect, monte_carlo_fourth_moment, DesignSampler, MomentReport, MomentSampler,
    SamplerKind, MAX_MOMENT_QUBITS,
};
pub use operator::{m_matrix_norm_check, m_permutation_traces, MAX_M_QUBITS};
pub use perm::{permutation_operator, permutation_trace_product, Perm4};
pub use spectral::{f_function_brute_force, f_functions, fourth_moment_prediction, FValues};
