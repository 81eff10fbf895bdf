use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::coefficients::c_coefficients;
use super::perm::Perm4;
use crate::bounds::mu_tilde;
use crate::ensembles::Spectrum;
use crate::error::{Error, Result};

/// The seven nonvanishing spectral sums `f_π(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FValues {
    pub f2143: f64,
    pub f2413: f64,
    pub f3142: f64,
    pub f3412: f64,
    pub f4321: f64,
    pub f4312: Complex64,
    pub f3421: Complex64,
}

impl FValues {
    pub const PERMUTATIONS: [&'static str; 7] = ["2143", "2413", "3142", "3412", "4321", "4312", "3421"];

    /// Values in the order of [`Self::PERMUTATIONS`].
    pub fn as_array(&self) -> [Complex64; 7] {
        let r = |x: f64| Complex64::new(x, 0.0);
        [
            r(self.f2143),
            r(self.f2413),
            r(self.f3142),
            r(self.f3412),
            r(self.f4321),
            self.f4312,
            self.f3421,
        ]
    }
}

/// Cluster-wise closed forms, O(clusters) each. With `z(t) = Σ_j m_j e^{itε_j}`
/// and `w = Σ_j m_j²`:
///
/// - f2143 = d² − w
/// - f2413 = f3142 = Σ_j m_j |z − m_j e^{itε_j}|²
/// - f3412 = (|z|² − w)²
/// - f4321 = |z(2t)|² − w
/// - f4312 = Σ_j m_j e^{−2itε_j} (z − m_j e^{itε_j})², f3421 its conjugate
pub fn f_functions(spec: &Spectrum, t: f64) -> FValues {
    if spec.clusters().len() == 1 {
        // no unequal pairs at all; skip the cancelling arithmetic
        let zero = Complex64::new(0.0, 0.0);
        return FValues {
            f2143: 0.0,
            f2413: 0.0,
            f3142: 0.0,
            f3412: 0.0,
            f4321: 0.0,
            f4312: zero,
            f3421: zero,
        };
    }
    let d = spec.d() as f64;
    let w = spec.w() as f64;
    let z = spec.phase_sum(t);
    let z2 = spec.phase_sum(2.0 * t);
    let mut chain = 0.0;
    let mut cross = Complex64::new(0.0, 0.0);
    for c in spec.clusters() {
        let m = c.multiplicity as f64;
        let phase = Complex64::from_polar(1.0, t * c.energy);
        let rest = z - phase * m;
        chain += m * rest.norm_sqr();
        cross += phase.conj().powi(2) * rest * rest * m;
    }
    let pair = z.norm_sqr() - w;
    FValues {
        f2143: d * d - w,
        f2413: chain,
        f3142: chain,
        f3412: pair * pair,
        f4321: z2.norm_sqr() - w,
        f4312: cross,
        f3421: cross.conj(),
    }
}

/// Reference evaluation straight from the defining quadruple sum
/// `Σ_{E_n≠E_n′, E_k≠E_k′} e^{it(E_n−E_n′+E_k−E_k′)} ⟨n,k,n′,k′|V_π|n′,k′,n,k⟩`.
/// O(d⁴); meant for checking [`f_functions`].
pub fn f_function_brute_force(spec: &Spectrum, t: f64, pi: Perm4) -> Complex64 {
    let e = spec.representatives();
    let cl = spec.classify(spec.energies()).expect("own energies");
    let d = e.len();
    let phase: Vec<Complex64> = e.iter().map(|&x| Complex64::from_polar(1.0, t * x)).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for n in 0..d {
        for n2 in 0..d {
            if cl[n] == cl[n2] {
                continue;
            }
            for k in 0..d {
                for k2 in 0..d {
                    if cl[k] == cl[k2] {
                        continue;
                    }
                    if pi.act([n, k, n2, k2]) == [n2, k2, n, k] {
                        acc += phase[n] * phase[n2].conj() * phase[k] * phase[k2].conj();
                    }
                }
            }
        }
    }
    acc
}

/// Haar average of `tr_S(Ω_t[ψ]²)` and the upper bound
/// `|μ̃(t)|⁴ + g²/d² + 7/d_E` it is compared with.
pub fn fourth_moment_prediction(spec: &Spectrum, d_e: usize, beta: f64, t: f64) -> Result<(f64, f64)> {
    let d = spec.d();
    if !(d > d_e && d_e > 0) || d % d_e != 0 {
        return Err(Error::Regime(format!("need d > d_E > 0 with d_E | d, got d={d}, d_E={d_e}")));
    }
    let c = c_coefficients(d, d_e, beta);
    let f = f_functions(spec, t);
    let predicted = c.c2 * f.f2143
        + c.c3 * (f.f2413 + f.f3142)
        + c.c5 * (f.f3412 + f.f4321 + (f.f4312 + f.f3421).re);
    let mu = mu_tilde(spec, t).norm();
    let (g, df) = (spec.g() as f64, d as f64);
    let bound = mu.powi(4) + (g / df).powi(2) + 7.0 / d_e as f64;
    Ok((predicted, bound))
}
