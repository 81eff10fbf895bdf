use std::io::{BufRead, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A maximal run of sorted energies whose consecutive gaps are within the
/// clustering tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    /// Mean of the member energies.
    pub energy: f64,
    pub multiplicity: usize,
    /// Position of the first member in the sorted energy list.
    pub start: usize,
}

/// A finite spectrum with its degeneracy structure.
///
/// `g` is the largest cluster multiplicity and `w = Σ m_j²` counts ordered
/// pairs of equal energies.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    energies: Vec<f64>,
    tolerance: f64,
    clusters: Vec<Cluster>,
    g: usize,
    w: u64,
    delta_e: f64,
}

impl Spectrum {
    /// Clusters `energies` by sorted gaps: a new cluster starts whenever the
    /// gap to the previous energy exceeds `tolerance`.
    pub fn from_energies(energies: &[f64], tolerance: f64) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(Error::NonFinite("spectrum"));
        }
        if !(tolerance >= 0.0) || !tolerance.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "cluster tolerance must be finite and nonnegative, got {tolerance}"
            )));
        }
        let mut sorted = energies.to_vec();
        sorted.sort_by(f64::total_cmp);

        let mut clusters = Vec::new();
        let mut start = 0;
        for i in 1..=sorted.len() {
            if i == sorted.len() || sorted[i] - sorted[i - 1] > tolerance {
                let members = &sorted[start..i];
                clusters.push(Cluster {
                    energy: members.iter().sum::<f64>() / members.len() as f64,
                    multiplicity: members.len(),
                    start,
                });
                start = i;
            }
        }
        let g = clusters.iter().map(|c| c.multiplicity).max().unwrap_or(1);
        let w = clusters.iter().map(|c| (c.multiplicity as u64).pow(2)).sum();
        let d = sorted.len() as f64;
        let mean = sorted.iter().sum::<f64>() / d;
        let var = sorted.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / d;
        Ok(Self {
            energies: sorted,
            tolerance,
            clusters,
            g,
            w,
            delta_e: var.sqrt(),
        })
    }

    /// Clusters with the default tolerance `1e-9·(e_max − e_min + 1)`.
    pub fn new(energies: &[f64]) -> Result<Self> {
        Self::from_energies(energies, default_tolerance(energies))
    }

    /// Energies in ascending order.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn d(&self) -> usize {
        self.energies.len()
    }

    /// Maximal degeneracy.
    pub fn g(&self) -> usize {
        self.g
    }

    /// `Σ_j m_j²`.
    pub fn w(&self) -> u64 {
        self.w
    }

    /// Standard deviation of the level density.
    pub fn delta_e(&self) -> f64 {
        self.delta_e
    }

    pub fn e_min(&self) -> f64 {
        self.energies[0]
    }

    pub fn e_max(&self) -> f64 {
        self.energies[self.energies.len() - 1]
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.g == 1
    }

    /// Unnormalized level-density transform `Σ_j m_j e^{i t ε_j}`.
    pub fn phase_sum(&self, t: f64) -> Complex64 {
        self.clusters
            .iter()
            .map(|c| Complex64::from_polar(c.multiplicity as f64, t * c.energy))
            .sum()
    }

    /// Cluster index of each energy in `energies`, which must be values
    /// taken from this spectrum (any order, any multiplicity).
    pub fn classify(&self, energies: &[f64]) -> Result<Vec<usize>> {
        energies
            .iter()
            .map(|&e| {
                let pos = self.energies.partition_point(|&x| x < e);
                if pos >= self.energies.len() || self.energies[pos] != e {
                    return Err(Error::InvalidArgument(format!(
                        "energy {e} is not part of the spectrum"
                    )));
                }
                Ok(self.clusters.partition_point(|c| c.start <= pos) - 1)
            })
            .collect()
    }

    /// Cluster representatives repeated by multiplicity.
    pub fn representatives(&self) -> Vec<f64> {
        self.clusters
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.energy, c.multiplicity))
            .collect()
    }
}

/// `1e-9·(e_max − e_min + 1)`.
pub fn default_tolerance(energies: &[f64]) -> f64 {
    let (lo, hi) = energies
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &e| (lo.min(e), hi.max(e)));
    if lo.is_finite() && hi.is_finite() {
        1e-9 * (hi - lo + 1.0)
    } else {
        1e-9
    }
}

/// Parses the spectrum text format: one decimal energy per line, blank
/// lines and `#` comments ignored.
pub fn parse_energies(text: &str) -> Result<Vec<f64>> {
    read_energies(text.as_bytes())
}

pub fn read_energies(reader: impl BufRead) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let v: f64 = content
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| Error::Parse(format!("line {}: not a finite number: {content:?}", lineno + 1)))?;
        out.push(v);
    }
    Ok(out)
}

pub fn read_spectrum_file(path: &Path) -> Result<Vec<f64>> {
    let f = std::fs::File::open(path)?;
    read_energies(std::io::BufReader::new(f))
}

/// Writes one energy per line in shortest round-trip decimal form.
pub fn write_energies(mut out: impl Write, energies: &[f64]) -> Result<()> {
    writeln!(out, "# {} energies", energies.len())?;
    for e in energies {
        writeln!(out, "{e:?}")?;
    }
    Ok(())
}
