use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::spectrum::Spectrum;
use crate::error::{Error, Result};

/// Transverse-field Ising chain in its free-fermion form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingParams {
    pub n_modes: usize,
    pub h: f64,
}

/// Largest mode count for which all 2^N energies are enumerated.
pub const MAX_ENUMERATION_MODES: usize = 20;

/// Mode dispersion `ω(φ) = sqrt((h − cos φ)² + sin² φ)`.
pub fn dispersion(h: f64, phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    ((h - c) * (h - c) + s * s).sqrt()
}

impl IsingParams {
    pub fn new(n_modes: usize, h: f64) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidArgument("Ising chain needs N >= 1".into()));
        }
        if !h.is_finite() {
            return Err(Error::NonFinite("Ising field"));
        }
        Ok(Self { n_modes, h })
    }

    /// `ω_k = ω(2πk/N)` for k = 1..=N.
    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.n_modes as f64;
        (1..=self.n_modes)
            .map(|k| dispersion(self.h, 2.0 * PI * k as f64 / n))
            .collect()
    }
}

/// Output selector for [`ising_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsingMode {
    ModesOnly,
    FullEnumeration,
}

#[derive(Debug, Clone)]
pub enum IsingSpectrum {
    Modes(Vec<f64>),
    Full(Spectrum),
}

pub fn ising_spectrum(params: &IsingParams, mode: IsingMode) -> Result<IsingSpectrum> {
    let freqs = params.frequencies();
    match mode {
        IsingMode::ModesOnly => Ok(IsingSpectrum::Modes(freqs)),
        IsingMode::FullEnumeration => {
            if params.n_modes > MAX_ENUMERATION_MODES {
                return Err(Error::TooLarge(format!(
                    "full enumeration limited to N <= {MAX_ENUMERATION_MODES}, got {}",
                    params.n_modes
                )));
            }
            Ok(IsingSpectrum::Full(Spectrum::new(&occupation_energies(&freqs)?)?))
        }
    }
}

/// All 2^N occupation sums `Σ_k n_k ω_k`, indexed by the computational basis:
/// mode k is qubit k, and qubit 0 is the most significant bit.
pub fn occupation_energies(freqs: &[f64]) -> Result<Vec<f64>> {
    let n = freqs.len();
    if n > MAX_ENUMERATION_MODES + 4 {
        return Err(Error::TooLarge(format!("2^{n} occupation energies")));
    }
    let d = 1usize << n;
    let mut energies = vec![0.0; d];
    for idx in 1..d {
        let low = idx.trailing_zeros() as usize;
        energies[idx] = energies[idx & (idx - 1)] + freqs[n - 1 - low];
    }
    Ok(energies)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispersion_special_values() {
        for w in IsingParams::new(7, 0.0).unwrap().frequencies() {
            assert!((w - 1.0).abs() < 1e-15);
        }
        let f = IsingParams::new(5, 1.0).unwrap().frequencies();
        assert!(f[4].abs() < 1e-15, "k = N is φ = 2π");
        assert!((dispersion(2.0, PI) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn zero_field_binomial_degeneracy() {
        // brute force: energy of each 4-bit occupation vector is its popcount
        let mut counts = [0usize; 5];
        for idx in 0..16u32 {
            counts[idx.count_ones() as usize] += 1;
        }
        let p = IsingParams::new(4, 0.0).unwrap();
        let IsingSpectrum::Full(s) = ising_spectrum(&p, IsingMode::FullEnumeration).unwrap() else {
            panic!()
        };
        assert_eq!(s.d(), 16);
        assert_eq!(s.g(), *counts.iter().max().unwrap());
        assert_eq!(s.g(), 6);
    }

    #[test]
    fn enumeration_limit() {
        let p = IsingParams::new(21, 0.3).unwrap();
        assert!(ising_spectrum(&p, IsingMode::FullEnumeration).is_err());
        assert!(matches!(
            ising_spectrum(&p, IsingMode::ModesOnly).unwrap(),
            IsingSpectrum::Modes(ref w) if w.len() == 21
        ));
        assert!(IsingParams::new(0, 1.0).is_err());
    }

    #[test]
    fn occupation_bit_order() {
        let e = occupation_energies(&[1.0, 2.0, 4.0]).unwrap();
        // index 0b100 has qubit 0 occupied -> ω_0 = 1
        assert_eq!(e[0b100], 1.0);
        assert_eq!(e[0b001], 4.0);
        assert_eq!(e[0b111], 7.0);
    }
}
