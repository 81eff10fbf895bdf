use serde::{Deserialize, Serialize};

use super::perm::{permutation_trace_product, Perm4};
use crate::error::{Error, Result};
use crate::numerics::{BipartitionLayout, reduce_pure, Complex64};

/// Coefficient classes of `M₀ = Σ_π c_π V_π`, as one-line strings.
pub const COEFFICIENT_CLASSES: [&[&str]; 5] = [
    &["1234", "2134"],
    &["1243", "2143"],
    &["1423", "1342", "2413", "4123", "4213", "2341", "3142", "3241"],
    &["1324", "1432", "2314", "3124", "3214", "2431", "4132", "4231"],
    &["3412", "4321", "3421", "4312"],
];

/// `tr_S (tr_E |ψ⟩⟨ψ|)²` for a pure state.
pub fn beta_purity(psi: &[Complex64], layout: &BipartitionLayout) -> Result<f64> {
    let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotPure { purity: norm * norm });
    }
    Ok(reduce_pure(psi, layout)?.frobenius_norm().powi(2))
}

/// The five coefficient values for given (d, d_E, β).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentCoefficients {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub d: usize,
    pub d_e: usize,
    pub beta: f64,
    /// False when d > d_E > 0 fails; the values are still the closed forms.
    pub in_regime: bool,
}

pub fn c_coefficients(d: usize, d_e: usize, beta: f64) -> MomentCoefficients {
    let in_regime = d > d_e && d_e > 0;
    if !in_regime {
        log::warn!("coefficients requested outside d > d_E > 0 (d={d}, d_E={d_e})");
    }
    let (d, de, b) = (d as f64, d_e as f64, beta);
    let den = (d - 1.0) * d * d * (d + 1.0) * (d + 2.0) * (d + 3.0) * de;
    let c1 = (d * (d * (d + 4.0) + 2.0) * (de * de - 1.0) - 2.0 * de * de + 2.0 * de * b) / den;
    let c2 = (d * (d.powi(3) + 4.0 * d * d - (d + 4.0) * de * de + 2.0 * d - 2.0) - 2.0 * de * de
        + 2.0 * de * b)
        / den;
    let c3 = (-(d + 1.0) * de * b + d + de * de) / den;
    let c4 = (-(d + 1.0) * de * b + d + de * de) / den;
    let c5 = (d * (de * b - 1.0) + de * (b - de))
        / (d * d * (d.powi(3) + 3.0 * d * d - d - 3.0) * de);
    MomentCoefficients {
        c1,
        c2,
        c3,
        c4,
        c5,
        d: d as usize,
        d_e,
        beta,
        in_regime,
    }
}

impl MomentCoefficients {
    pub fn values(&self) -> [f64; 5] {
        [self.c1, self.c2, self.c3, self.c4, self.c5]
    }

    /// `c_π` for any of the 24 permutations.
    pub fn coefficient(&self, pi: Perm4) -> f64 {
        let name = format!("{}{}{}{}", pi.0[0], pi.0[1], pi.0[2], pi.0[3]);
        let class = COEFFICIENT_CLASSES
            .iter()
            .position(|c| c.contains(&name.as_str()))
            .expect("every permutation has a class");
        self.values()[class]
    }

    /// `tr(M₀ V_σ) = Σ_π c_π tr(V_π V_σ)`.
    pub fn reconstructed_trace(&self, sigma: Perm4) -> f64 {
        Perm4::all()
            .into_iter()
            .map(|pi| self.coefficient(pi) * permutation_trace_product(pi, sigma, self.d))
            .sum()
    }

    /// The five `(σ, target, reconstructed)` defining traces.
    pub fn trace_checks(&self) -> [(Perm4, f64, f64); 5] {
        let (d, de) = (self.d as f64, self.d_e as f64);
        let targets = [
            ("1234", d * de),
            ("1243", d * d / de),
            ("1342", d / de),
            ("1324", de),
            ("4312", self.beta),
        ];
        targets.map(|(s, target)| {
            let sigma: Perm4 = s.parse().expect("valid literal");
            (sigma, target, self.reconstructed_trace(sigma))
        })
    }

    /// Largest relative deviation over [`Self::trace_checks`].
    pub fn max_trace_error(&self) -> f64 {
        self.trace_checks()
            .iter()
            .map(|(_, target, got)| (got - target).abs() / target.abs().max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }
}
