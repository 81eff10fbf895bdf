//! Random sources and spectrum models.

mod gue;
mod haar;
mod ising;
mod rng;
mod spectrum;

pub use gue::{
    gue_level_density, sample_gue, semicircle_cdf, semicircle_density, LevelDensityMethod,
    EXACT_KERNEL_MAX_DIM,
};
pub use haar::sample_haar;
pub use ising::{
    dispersion, ising_spectrum, occupation_energies, IsingMode, IsingParams, IsingSpectrum,
    MAX_ENUMERATION_MODES,
};
pub use rng::RngStream;
pub use spectrum::{
    default_tolerance, parse_energies, read_energies, read_spectrum_file, write_energies, Cluster,
    Spectrum,
};

use crate::error::Result;
use crate::numerics::hermitian_eigvals;

/// Eigenvalues of one GUE draw of dimension d, ascending.
pub fn sample_gue_spectrum<R: rand::Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Vec<f64>> {
    hermitian_eigvals(&sample_gue(d, rng))
}
