//! Closed-form bound formulas and the scalar spectral statistics they use.

mod formulas;
mod mu;
mod resonance;
mod timescales;

pub use formulas::{
    min_complexity_threshold, result1_bound, result2_bound, result3_bound, R3Form, R3Params,
};
pub use mu::{mu_gue_asymptotic, mu_ising, mu_tilde, IsingMuMethod};
pub use resonance::{resonance_fraction, MAX_RESONANCE_CLUSTERS};
pub use timescales::{ising_e_max, time_scales, TimeScaleEstimates, TimeScaleInput};
