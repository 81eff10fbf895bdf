use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::evolve::PreparedState;
use super::model::HamiltonianModel;
use super::state::DensityMatrix;
use crate::bounds::{mu_tilde, result1_bound, result3_bound, R3Params};
use crate::error::{Error, Result};
use crate::numerics::{trace_norm, BipartitionLayout, ComplexMatrix, MeanEstimate};
use crate::report::g12;

/// Distances may overshoot 2 by this much before it counts as a failure.
const DISTANCE_SLACK: f64 = 1e-9;

/// Per-time distance to the dephased state, with |μ̃| and bound values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibrationTrace {
    pub times: Vec<f64>,
    pub distances: Vec<f64>,
    pub mu_abs: Vec<f64>,
    pub bound_r1: Vec<f64>,
    pub bound_r3: Option<Vec<f64>>,
}

impl EquilibrationTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Writes `#` metadata lines, then `t,dist,mu_abs,bound_r1,bound_r3`.
    pub fn write_csv(&self, mut out: impl Write, meta: &[(String, String)]) -> Result<()> {
        for (k, v) in meta {
            writeln!(out, "# {k}: {v}")?;
        }
        writeln!(out, "t,dist,mu_abs,bound_r1,bound_r3")?;
        for i in 0..self.len() {
            let r3 = self.bound_r3.as_ref().map(|b| g12(b[i])).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{}",
                g12(self.times[i]),
                g12(self.distances[i]),
                g12(self.mu_abs[i]),
                g12(self.bound_r1[i]),
                r3
            )?;
        }
        Ok(())
    }
}

pub(crate) fn checked_distance(diff: &ComplexMatrix) -> Result<f64> {
    let dist = trace_norm(diff)?;
    if !(dist <= 2.0 + DISTANCE_SLACK) {
        return Err(Error::Contract(format!("trace distance {dist} exceeds 2")));
    }
    Ok(dist.min(2.0))
}

/// Distance, |μ̃| and bounds at every requested time. Times are processed
/// in parallel; output order follows `times`.
pub fn equilibration_trace(
    model: &HamiltonianModel,
    rho0: &DensityMatrix,
    layout: &BipartitionLayout,
    times: &[f64],
    eps: f64,
    r3: Option<&R3Params>,
) -> Result<EquilibrationTrace> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0,1), got {eps}")));
    }
    let prepared = PreparedState::new(model, rho0, layout)?;
    let avg = prepared.dephased(model, layout)?;
    let spec = model.spectrum();
    let (g, d, d_s, d_e) = (spec.g(), model.dim(), layout.d_s(), layout.d_e());

    let rows: Vec<(f64, f64, f64, Option<f64>)> = times
        .par_iter()
        .map(|&t| {
            let rho_t = prepared.reduced_at(model, layout, t)?;
            let dist = checked_distance(&(&rho_t - &avg))?;
            let mu = mu_tilde(spec, t).norm().min(1.0);
            let b1 = result1_bound(mu, g, d, d_s, d_e, eps)?;
            let b3 = r3.map(|p| result3_bound(mu, g, d, d_s, d_e, eps, p)).transpose()?;
            Ok((dist, mu, b1, b3))
        })
        .collect::<Result<_>>()?;

    Ok(EquilibrationTrace {
        times: times.to_vec(),
        distances: rows.iter().map(|r| r.0).collect(),
        mu_abs: rows.iter().map(|r| r.1).collect(),
        bound_r1: rows.iter().map(|r| r.2).collect(),
        bound_r3: r3.map(|_| rows.iter().map(|r| r.3.expect("r3 requested")).collect()),
    })
}

/// `(1/T)∫₀ᵀ ‖ρ_S(t) − ρ̄_S‖₁ dt` by uniform time sampling.
pub fn time_average_distance<R: Rng + ?Sized>(
    model: &HamiltonianModel,
    rho0: &DensityMatrix,
    layout: &BipartitionLayout,
    horizon: f64,
    n_samples: usize,
    rng: &mut R,
) -> Result<MeanEstimate> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::InvalidArgument(format!("horizon must be positive, got {horizon}")));
    }
    if n_samples < 100 {
        return Err(Error::InvalidArgument(format!("need at least 100 samples, got {n_samples}")));
    }
    let times: Vec<f64> = (0..n_samples).map(|_| rng.random::<f64>() * horizon).collect();
    let prepared = PreparedState::new(model, rho0, layout)?;
    let avg = prepared.dephased(model, layout)?;
    let dists: Vec<f64> = times
        .par_iter()
        .map(|&t| checked_distance(&(&prepared.reduced_at(model, layout, t)? - &avg)))
        .collect::<Result<_>>()?;
    Ok(MeanEstimate::from_samples(&dists))
}
