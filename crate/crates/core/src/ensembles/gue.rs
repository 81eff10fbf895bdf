use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::numerics::{hermite_kernel_diagonal, Complex64, ComplexMatrix};

/// Draws a GUE matrix with joint eigenvalue density ∝ e^{−ΣE²}·Π|E_i−E_j|².
///
/// Diagonal entries are real with variance 1/2 (density π^{−1/2}e^{−x²});
/// each off-diagonal entry has independent real and imaginary parts of
/// variance 1/4, so E|H_ij|² = 1/2 (density (2/π)e^{−2|z|²}). The spectrum
/// then fills the semicircle of radius sqrt(2d).
pub fn sample_gue<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(d, d);
    let diag_sd = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..d {
        let x: f64 = rng.sample(StandardNormal);
        h[(i, i)] = Complex64::new(diag_sd * x, 0.0);
        for j in i + 1..d {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = Complex64::new(0.5 * re, 0.5 * im);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

/// How [`gue_level_density`] evaluates the one-point density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelDensityMethod {
    /// `K(E,E) = Σ_{k<d} φ_k(E)²` with the oscillator eigenfunctions.
    ExactKernel,
    /// Large-d semicircle `(1/π)·sqrt(2d − E²)`.
    Semicircle,
}

/// Largest dimension for the exact kernel.
pub const EXACT_KERNEL_MAX_DIM: usize = 1024;

/// Level density of the GUE at `energy`, normalized to integrate to d.
pub fn gue_level_density(d: usize, energy: f64, method: LevelDensityMethod) -> Result<f64> {
    match method {
        LevelDensityMethod::ExactKernel => {
            if d > EXACT_KERNEL_MAX_DIM {
                return Err(Error::TooLarge(format!(
                    "exact kernel limited to d <= {EXACT_KERNEL_MAX_DIM}, got {d}"
                )));
            }
            Ok(hermite_kernel_diagonal(d, energy))
        }
        LevelDensityMethod::Semicircle => Ok(semicircle_density(d, energy)),
    }
}

pub fn semicircle_density(d: usize, energy: f64) -> f64 {
    let r2 = 2.0 * d as f64;
    let inside = r2 - energy * energy;
    if inside <= 0.0 {
        0.0
    } else {
        inside.sqrt() / std::f64::consts::PI
    }
}

/// Cumulative semicircle law on radius sqrt(2d), normalized to 1.
pub fn semicircle_cdf(d: usize, energy: f64) -> f64 {
    let u = (energy / (2.0 * d as f64).sqrt()).clamp(-1.0, 1.0);
    0.5 + (u * (1.0 - u * u).sqrt() + u.asin()) / std::f64::consts::PI
}
