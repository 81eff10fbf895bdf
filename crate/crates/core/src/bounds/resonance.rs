use crate::ensembles::Spectrum;
use crate::error::{Error, Result};

/// Largest cluster count accepted by [`resonance_fraction`].
pub const MAX_RESONANCE_CLUSTERS: usize = 4096;

/// `d^{−4}·#{(n,n′,k,k′) : E_n ≠ E_n′, E_k ≠ E_k′, E_n − E_n′ + E_k − E_k′ = 0}`.
///
/// Gaps are formed between clusters (weight m_a·m_b), sorted, and grouped
/// when they agree within twice the clustering tolerance. A gap v pairs
/// with −v, and by symmetry W(−v) = W(v), so the count is `2 Σ_{v>0} W(v)²`.
pub fn resonance_fraction(spec: &Spectrum) -> Result<f64> {
    let clusters = spec.clusters();
    if clusters.len() > MAX_RESONANCE_CLUSTERS {
        return Err(Error::TooLarge(format!(
            "{} clusters (limit {MAX_RESONANCE_CLUSTERS})",
            clusters.len()
        )));
    }
    let mut gaps = Vec::with_capacity(clusters.len() * clusters.len().saturating_sub(1) / 2);
    for (i, hi) in clusters.iter().enumerate() {
        for lo in &clusters[..i] {
            gaps.push((hi.energy - lo.energy, (hi.multiplicity * lo.multiplicity) as f64));
        }
    }
    gaps.sort_by(|a, b| a.0.total_cmp(&b.0));

    let scale = spec.e_max().abs().max(spec.e_min().abs()).max(1.0);
    let tol = 2.0 * spec.tolerance() + 8.0 * f64::EPSILON * scale;
    let mut sum_sq = 0.0;
    let mut i = 0;
    while i < gaps.len() {
        let mut w = gaps[i].1;
        let mut j = i + 1;
        while j < gaps.len() && gaps[j].0 - gaps[j - 1].0 <= tol {
            w += gaps[j].1;
            j += 1;
        }
        sum_sq += w * w;
        i = j;
    }
    let d = spec.d() as f64;
    Ok(2.0 * sum_sq / d.powi(4))
}
