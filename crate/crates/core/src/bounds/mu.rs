use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensembles::{IsingParams, Spectrum};
use crate::numerics::bessel_jinc;

/// Normalized level-density transform `μ̃(t) = (1/d) Σ_n e^{itE_n}`.
pub fn mu_tilde(spec: &Spectrum, t: f64) -> Complex64 {
    spec.phase_sum(t) / spec.d() as f64
}

/// Evaluation route for [`mu_ising`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsingMuMethod {
    /// `Π_k |cos(tω_k/2)|`, exact for the free-fermion spectrum.
    ExactProduct,
    /// Gaussian short-time form `exp(−t²N(1+h²)/8)`.
    SmallT,
    /// The long-time upper bound `2^{−N/2}`.
    LargeTBound,
}

/// `|μ̃(t)|` of the transverse-field Ising chain.
pub fn mu_ising(params: &IsingParams, t: f64, method: IsingMuMethod) -> f64 {
    let n = params.n_modes as f64;
    match method {
        IsingMuMethod::ExactProduct => params
            .frequencies()
            .iter()
            .map(|w| (0.5 * (1.0 + (t * w).cos())).sqrt())
            .product(),
        IsingMuMethod::SmallT => (-t * t * n * (1.0 + params.h * params.h) / 8.0).exp(),
        IsingMuMethod::LargeTBound => (-0.5 * n).exp2(),
    }
}

/// Large-d GUE limit `|2J₁(x)/x|` with `x = t·sqrt(2d)`.
pub fn mu_gue_asymptotic(d: usize, t: f64) -> f64 {
    bessel_jinc(t * (2.0 * d as f64).sqrt()).abs()
}
