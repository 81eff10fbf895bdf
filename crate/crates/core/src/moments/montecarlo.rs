use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spectral::fourth_moment_prediction;
use crate::circuits::{circuit_unitary, sample_random_circuit, GateSet};
use crate::dynamics::{DensityMatrix, DiagonalizerSource, HamiltonianModel};
use crate::dynamics::PreparedState;
use crate::ensembles::{sample_haar, RngStream, Spectrum};
use crate::error::{Error, Result};
use crate::numerics::{BipartitionLayout, MeanEstimate};

/// How diagonalizers are drawn in a moment estimate.
#[derive(Debug, Clone)]
pub enum MomentSampler {
    Haar,
    Circuit { gates: usize, gate_set: GateSet },
}

/// Serializable label of a [`MomentSampler`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    Haar,
    Circuit(usize),
}

impl MomentSampler {
    pub fn kind(&self) -> SamplerKind {
        match self {
            MomentSampler::Haar => SamplerKind::Haar,
            MomentSampler::Circuit { gates, .. } => SamplerKind::Circuit(*gates),
        }
    }

    fn source(&self, n_qubits: usize, stream: RngStream) -> Result<DiagonalizerSource> {
        Ok(match self {
            MomentSampler::Haar => DiagonalizerSource::Haar(stream),
            MomentSampler::Circuit { gates, gate_set } => DiagonalizerSource::Circuit(
                sample_random_circuit(n_qubits, *gates, gate_set, &mut stream.rng())?,
            ),
        })
    }
}

/// Largest qubit count for the moment Monte Carlo.
pub const MAX_MOMENT_QUBITS: usize = 8;

/// Average of `‖ρ_S(t) − ρ̄_S‖₂²` over sampled diagonalizers; sample k
/// uses `stream.child(k)`.
pub fn monte_carlo_fourth_moment(
    spec: &Spectrum,
    layout: &BipartitionLayout,
    psi: &DensityMatrix,
    t: f64,
    n: usize,
    sampler: &MomentSampler,
    stream: RngStream,
) -> Result<MeanEstimate> {
    if layout.n_qubits() > MAX_MOMENT_QUBITS {
        return Err(Error::TooLarge(format!(
            "moment sampling limited to {MAX_MOMENT_QUBITS} qubits"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let values: Vec<f64> = (0..n as u64)
        .into_par_iter()
        .map(|k| {
            let source = sampler.source(layout.n_qubits(), stream.child(k))?;
            let model = HamiltonianModel::from_spectrum(spec.clone(), source)?;
            let prepared = PreparedState::new(&model, psi, layout)?;
            let diff = &prepared.reduced_at(&model, layout, t)? - &prepared.dephased(&model, layout)?;
            Ok(diff.frobenius_norm().powi(2))
        })
        .collect::<Result<_>>()?;
    Ok(MeanEstimate::from_samples(&values))
}

/// Prediction, bound and Monte Carlo estimate at one time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub t: f64,
    pub predicted: f64,
    pub e17_bound: f64,
    pub mc_estimate: f64,
    pub mc_stderr: f64,
    pub n_samples: usize,
    pub sampler: SamplerKind,
}

impl MomentReport {
    /// Runs both sides for a pure ψ.
    pub fn compute(
        spec: &Spectrum,
        layout: &BipartitionLayout,
        psi: &DensityMatrix,
        t: f64,
        n: usize,
        sampler: &MomentSampler,
        stream: RngStream,
    ) -> Result<Self> {
        let vec = psi
            .pure_vector()
            .ok_or(Error::NotPure { purity: psi.purity() })?;
        let beta = super::beta_purity(vec, layout)?;
        let (predicted, e17_bound) = fourth_moment_prediction(spec, layout.d_e(), beta, t)?;
        let mc = monte_carlo_fourth_moment(spec, layout, psi, t, n, sampler, stream)?;
        Ok(Self {
            t,
            predicted,
            e17_bound,
            mc_estimate: mc.mean,
            mc_stderr: mc.stderr,
            n_samples: n,
            sampler: sampler.kind(),
        })
    }

    /// Monte Carlo agrees with the prediction within k standard errors.
    /// A zero stderr demands agreement to 1e-12.
    pub fn agrees(&self, k: f64) -> bool {
        (self.mc_estimate - self.predicted).abs() <= k * self.mc_stderr + 1e-12
    }

    pub fn prediction_below_bound(&self) -> bool {
        self.predicted <= self.e17_bound + 1e-12
    }
}

/// Ensemble whose 4-design defect is estimated.
#[derive(Debug, Clone)]
pub enum DesignSampler {
    Haar,
    Circuit { gates: usize, gate_set: GateSet },
}

/// `F₄ − 4!` with `F₄ = E|tr(U†V)|⁸` over independent pairs.
///
/// `F₄ = ‖E[(U⊗U*)^{⊗4}]‖_F²`, and since the Haar average is the
/// projector onto the invariant subspace, `F₄ − F₄^Haar` is the squared
/// Frobenius distance of the ensemble's fourth moment operator from Haar.
/// `F₄^Haar = 24` once d ≥ 4, hence N ∈ {2, 3}.
pub fn estimate_design_defect(
    n_qubits: usize,
    sampler: &DesignSampler,
    n_pairs: usize,
    stream: RngStream,
) -> Result<MeanEstimate> {
    if !(2..=3).contains(&n_qubits) {
        return Err(Error::InvalidArgument(format!(
            "design defect needs N in {{2, 3}}, got {n_qubits}"
        )));
    }
    if n_pairs == 0 {
        return Err(Error::InvalidArgument("need at least one pair".into()));
    }
    let d = 1usize << n_qubits;
    let draw = |s: RngStream| -> Result<crate::numerics::ComplexMatrix> {
        match sampler {
            DesignSampler::Haar => Ok(sample_haar(d, &mut s.rng())),
            DesignSampler::Circuit { gates, gate_set } => {
                circuit_unitary(&sample_random_circuit(n_qubits, *gates, gate_set, &mut s.rng())?)
            }
        }
    };
    let values: Vec<f64> = (0..n_pairs as u64)
        .into_par_iter()
        .map(|k| {
            let s = stream.child(k);
            let u = draw(s.child(0))?;
            let v = draw(s.child(1))?;
            let tr: Complex64 = u.as_slice().iter().zip(v.as_slice()).map(|(a, b)| a.conj() * b).sum();
            Ok(tr.norm_sqr().powi(4) - 24.0)
        })
        .collect::<Result<_>>()?;
    Ok(MeanEstimate::from_samples(&values))
}
