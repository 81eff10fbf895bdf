use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::R3Form;
use crate::circuits::{GateSet, DEFAULT_ALPHA, MAX_SYNTHESIS_QUBITS};
use crate::dynamics::DensityMatrix;
use crate::ensembles::{
    occupation_energies, read_spectrum_file, sample_gue_spectrum, IsingParams, RngStream,
};
use crate::error::{Error, Result};
use crate::numerics::BipartitionLayout;

/// Where the energies come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpectrumModel {
    /// Fresh GUE eigenvalues per ensemble member.
    Gue,
    /// Free-fermion Ising chain with N modes.
    Ising { h: f64 },
    /// Text file, one energy per line.
    File { path: PathBuf },
    Explicit { energies: Vec<f64> },
}

/// How eigenbases are drawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiagonalizerModel {
    Haar,
    Circuit {
        gates: usize,
        #[serde(default = "default_gate_names")]
        gate_set: Vec<String>,
    },
    Identity,
}

fn default_gate_names() -> Vec<String> {
    ["H", "T", "CNOT"].map(String::from).to_vec()
}

/// ρ(0) on all N qubits.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialState {
    #[default]
    Zero,
    Basis { index: usize },
    MaximallyMixed,
}

impl InitialState {
    pub fn build(&self, n_qubits: usize) -> Result<DensityMatrix> {
        match *self {
            InitialState::Zero => DensityMatrix::zero_state(n_qubits),
            InitialState::Basis { index } => DensityMatrix::basis_state(n_qubits, index),
            InitialState::MaximallyMixed => {
                if n_qubits > MAX_SYNTHESIS_QUBITS {
                    return Err(Error::TooLarge(format!("mixed state on {n_qubits} qubits")));
                }
                Ok(DensityMatrix::maximally_mixed(1 << n_qubits))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl TimeGrid {
    /// `steps` evenly spaced points from start to stop inclusive.
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let h = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.start + h * i as f64).collect()
    }
}

/// Time-averaged distance sampling for the ensemble command.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimeAverageConfig {
    pub horizon: f64,
    pub samples: usize,
}

impl Default for TimeAverageConfig {
    fn default() -> Self {
        Self {
            horizon: 1000.0,
            samples: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MomentsConfig {
    pub t: f64,
    pub samples: usize,
}

impl Default for MomentsConfig {
    fn default() -> Self {
        Self {
            t: 0.7,
            samples: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MuConfig {
    /// GUE draws averaged for the empirical column.
    pub gue_samples: usize,
}

impl Default for MuConfig {
    fn default() -> Self {
        Self { gue_samples: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CircuitDemoConfig {
    /// Circuits drawn.
    pub instances: usize,
    /// Random times at which untouched instances are checked.
    pub check_times: usize,
    /// Times are drawn uniformly from [0, max_time].
    pub max_time: f64,
    /// Qubit count for the support-only sublinear study; 0 skips it.
    pub sublinear_n_qubits: usize,
}

impl Default for CircuitDemoConfig {
    fn default() -> Self {
        Self {
            instances: 10_000,
            check_times: 10,
            max_time: 100.0,
            sublinear_n_qubits: 256,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoundsConfig {
    /// α′ for the complexity threshold; omitted means not evaluated.
    pub alpha_prime: Option<f64>,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        Self { alpha_prime: None }
    }
}

/// One experiment, read from a JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n_qubits: usize,
    pub subsystem: Vec<usize>,
    pub spectrum: SpectrumModel,
    pub diagonalizer: DiagonalizerModel,
    pub epsilon: f64,
    pub time_grid: TimeGrid,
    #[serde(default)]
    pub initial_state: InitialState,
    #[serde(default = "one")]
    pub n_ensemble: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Adds the circuit bound to traces and ensembles.
    #[serde(default)]
    pub r3_form: Option<R3Form>,
    #[serde(default)]
    pub time_average: TimeAverageConfig,
    #[serde(default)]
    pub moments: MomentsConfig,
    #[serde(default)]
    pub mu: MuConfig,
    #[serde(default)]
    pub circuit_demo: CircuitDemoConfig,
    #[serde(default)]
    pub bounds: BoundsConfig,
}

fn one() -> usize {
    1
}

fn default_alpha() -> f64 {
    DEFAULT_ALPHA
}

impl ExperimentConfig {
    /// Parses JSON text, applies `key.path=value` overrides, validates.
    pub fn from_json_with_overrides(text: &str, overrides: &[String]) -> Result<Self> {
        let mut doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
        for o in overrides {
            apply_override(&mut doc, o)?;
        }
        let cfg: Self = serde_json::from_value(doc).map_err(|e| Error::Parse(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path, overrides: &[String]) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json_with_overrides(&text, overrides)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidArgument(format!("epsilon must lie in (0,1), got {}", self.epsilon)));
        }
        if self.time_grid.steps == 0 {
            return Err(Error::InvalidArgument("time_grid.steps must be >= 1".into()));
        }
        if !(self.time_grid.start.is_finite() && self.time_grid.stop.is_finite()) {
            return Err(Error::InvalidArgument("time grid must be finite".into()));
        }
        if self.n_ensemble == 0 {
            return Err(Error::InvalidArgument("n_ensemble must be >= 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!("alpha must be positive, got {}", self.alpha)));
        }
        self.layout()?;
        if let DiagonalizerModel::Circuit { .. } = self.diagonalizer {
            self.gate_set()?;
        }
        Ok(())
    }

    pub fn layout(&self) -> Result<BipartitionLayout> {
        BipartitionLayout::new(self.n_qubits, &self.subsystem)
    }

    pub fn gate_set(&self) -> Result<GateSet> {
        match &self.diagonalizer {
            DiagonalizerModel::Circuit { gate_set, .. } => GateSet::from_names(gate_set, self.alpha),
            _ => GateSet::standard().with_alpha(self.alpha),
        }
    }

    pub fn times(&self) -> Vec<f64> {
        self.time_grid.points()
    }

    pub fn root_stream(&self) -> RngStream {
        RngStream::root(self.master_seed)
    }

    /// Energies in basis order for ensemble member `stream`. GUE spectra are
    /// drawn from it; the other models ignore it.
    pub fn energies(&self, stream: RngStream) -> Result<Vec<f64>> {
        let d = 1usize << self.n_qubits;
        let e = match &self.spectrum {
            SpectrumModel::Gue => sample_gue_spectrum(d, &mut stream.rng())?,
            SpectrumModel::Ising { h } => {
                occupation_energies(&IsingParams::new(self.n_qubits, *h)?.frequencies())?
            }
            SpectrumModel::File { path } => read_spectrum_file(path)?,
            SpectrumModel::Explicit { energies } => energies.clone(),
        };
        if e.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "spectrum has {} energies, {} qubits need {d}",
                e.len(),
                self.n_qubits
            )));
        }
        Ok(e)
    }

    /// The config as a JSON value, for echoing into outputs.
    pub fn echo(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }
}

/// `a.b.c=value`; the value is parsed as JSON and falls back to a string.
fn apply_override(doc: &mut Value, spec: &str) -> Result<()> {
    let (path, raw) = spec
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("override {spec:?} is not key=value")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut node = doc;
    let keys: Vec<&str> = path.split('.').collect();
    for (i, key) in keys.iter().enumerate() {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| Error::Parse(format!("override {path:?}: {key:?} is not inside an object")))?;
        if i + 1 == keys.len() {
            obj.insert(key.to_string(), value);
            return Ok(());
        }
        node = obj.entry(key.to_string()).or_insert_with(|| Value::Object(Default::default()));
    }
    Err(Error::Parse(format!("empty override key in {spec:?}")))
}
