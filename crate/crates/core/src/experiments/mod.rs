//! Configured runs behind the `eqlab` command line.
//!
//! Every runner is a pure function of the config (seed included) and
//! returns the full output text. Ensemble member k draws all of its
//! randomness from `root.child(k)`, so results do not depend on how many
//! threads execute them.

mod config;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use config::{
    BoundsConfig, CircuitDemoConfig, DiagonalizerModel, ExperimentConfig, InitialState, MomentsConfig,
    MuConfig, SpectrumModel, TimeAverageConfig, TimeGrid,
};

use crate::bounds::{
    min_complexity_threshold, mu_gue_asymptotic, mu_ising, mu_tilde, resonance_fraction, result1_bound,
    result2_bound, result3_bound, time_scales, IsingMuMethod, R3Params, TimeScaleInput,
};
use crate::circuits::{circuit_support, no_touch_probability, sample_random_circuit, NoTouchForm};
use crate::dynamics::{
    equilibration_trace, evolution_phases, initial_reduced, time_average_distance, DiagonalizerSource,
    EquilibrationTrace, HamiltonianModel, PreparedState,
};
use crate::ensembles::{IsingParams, Spectrum, MAX_ENUMERATION_MODES};
use crate::error::{Error, Result};
use crate::moments::{beta_purity, MomentReport, MomentSampler};
use crate::numerics::{binomial_stderr, trace_norm, MeanEstimate};
use crate::report::g12;

pub const TOOL_VERSION: &str = concat!("eqlab ", env!("CARGO_PKG_VERSION"));

/// Deviation allowed for an instance the circuit never touches.
pub const STATIC_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Trace,
    Ensemble,
    Mu,
    Moments,
    Bounds,
    CircuitDemo,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Trace,
        Command::Ensemble,
        Command::Mu,
        Command::Moments,
        Command::Bounds,
        Command::CircuitDemo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Trace => "trace",
            Command::Ensemble => "ensemble",
            Command::Mu => "mu",
            Command::Moments => "moments",
            Command::Bounds => "bounds",
            Command::CircuitDemo => "circuit-demo",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown command {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Adds wall-clock seconds to the ensemble report. Breaks byte-identity.
    pub timing: bool,
}

pub fn run(cmd: Command, cfg: &ExperimentConfig, opts: RunOptions) -> Result<String> {
    match cmd {
        Command::Trace => run_trace(cfg),
        Command::Ensemble => run_ensemble(cfg, opts),
        Command::Mu => run_mu_study(cfg),
        Command::Moments => run_moments(cfg),
        Command::Bounds => run_bounds(cfg),
        Command::CircuitDemo => run_circuit_demo(cfg),
    }
}

/// [`run`] on a dedicated pool of `jobs` threads.
pub fn run_with_jobs(cmd: Command, cfg: &ExperimentConfig, opts: RunOptions, jobs: usize) -> Result<String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| run(cmd, cfg, opts))
}

fn meta_lines(cmd: Command, cfg: &ExperimentConfig) -> Vec<(String, String)> {
    vec![
        ("tool".into(), TOOL_VERSION.into()),
        ("command".into(), cmd.name().into()),
        ("seed".into(), cfg.master_seed.to_string()),
        ("config".into(), cfg.echo().to_string()),
    ]
}

fn json_output(cmd: Command, cfg: &ExperimentConfig, result: Value) -> Result<String> {
    let doc = json!({
        "meta": {
            "tool": TOOL_VERSION,
            "command": cmd.name(),
            "seed": cfg.master_seed,
            "config": cfg.echo(),
        },
        "result": result,
    });
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

fn r3_params(cfg: &ExperimentConfig) -> Result<Option<R3Params>> {
    let Some(form) = cfg.r3_form else { return Ok(None) };
    match cfg.diagonalizer {
        DiagonalizerModel::Circuit { gates, .. } => Ok(Some(R3Params {
            gates: gates as u64,
            n_qubits: cfg.n_qubits,
            alpha: cfg.alpha,
            form,
        })),
        _ => Err(Error::InvalidArgument("r3_form needs a circuit diagonalizer".into())),
    }
}

/// Model of ensemble member k.
pub fn member_model(cfg: &ExperimentConfig, k: u64) -> Result<HamiltonianModel> {
    let stream = cfg.root_stream().child(k);
    let energies = cfg.energies(stream.child(0))?;
    let source = match &cfg.diagonalizer {
        DiagonalizerModel::Haar => DiagonalizerSource::Haar(stream.child(1)),
        DiagonalizerModel::Circuit { gates, .. } => DiagonalizerSource::Circuit(sample_random_circuit(
            cfg.n_qubits,
            *gates,
            &cfg.gate_set()?,
            &mut stream.child(1).rng(),
        )?),
        DiagonalizerModel::Identity => DiagonalizerSource::Identity,
    };
    HamiltonianModel::new(&energies, source)
}

/// Rough equilibration time of the configured spectrum model.
pub fn t_eq(cfg: &ExperimentConfig) -> Result<f64> {
    let est = match cfg.spectrum {
        SpectrumModel::Gue => time_scales(TimeScaleInput::Gue { n_qubits: cfg.n_qubits }).gue,
        SpectrumModel::Ising { h } => {
            time_scales(TimeScaleInput::Ising(IsingParams::new(cfg.n_qubits, h)?)).ising
        }
        _ => {
            let spec = Spectrum::new(&cfg.energies(cfg.root_stream())?)?;
            time_scales(TimeScaleInput::Spectrum(&spec)).inverse_width
        }
    };
    Ok(est.unwrap_or(0.0))
}

/// Member 0 traced over the time grid, as CSV.
pub fn run_trace(cfg: &ExperimentConfig) -> Result<String> {
    let layout = cfg.layout()?;
    let model = member_model(cfg, 0)?;
    let rho0 = cfg.initial_state.build(cfg.n_qubits)?;
    let trace = equilibration_trace(&model, &rho0, &layout, &cfg.times(), cfg.epsilon, r3_params(cfg)?.as_ref())?;
    let mut out = Vec::new();
    trace.write_csv(&mut out, &meta_lines(Command::Trace, cfg))?;
    Ok(String::from_utf8(out).expect("CSV is UTF-8"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeRecord {
    pub t: f64,
    pub mean_distance: f64,
    pub std_distance: f64,
    pub violation_r1: f64,
    pub violation_r1_stderr: f64,
    pub violation_r3: Option<f64>,
    pub violation_r3_stderr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberTimeAverage {
    pub mean: f64,
    pub stderr: f64,
    pub result2_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeAverageSummary {
    pub horizon: f64,
    pub samples: usize,
    pub below_bound_count: usize,
    pub below_bound_fraction: f64,
    pub members: Vec<MemberTimeAverage>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub n_members: usize,
    pub epsilon: f64,
    pub t_eq: f64,
    pub records: Vec<TimeRecord>,
    /// Fraction of members that violate the bound somewhere on the grid.
    pub sup_violation_r1: f64,
    pub sup_violation_r1_stderr: f64,
    pub sup_violation_r3: Option<f64>,
    pub time_average: TimeAverageSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_seconds: Option<f64>,
}

impl EnsembleReport {
    /// Records at or after `t_min`.
    pub fn records_from(&self, t_min: f64) -> impl Iterator<Item = &TimeRecord> {
        self.records.iter().filter(move |r| r.t >= t_min)
    }
}

struct MemberResult {
    trace: EquilibrationTrace,
    time_average: MemberTimeAverage,
}

fn run_member(cfg: &ExperimentConfig, k: u64, r3: Option<&R3Params>) -> Result<MemberResult> {
    let layout = cfg.layout()?;
    let model = member_model(cfg, k)?;
    let rho0 = cfg.initial_state.build(cfg.n_qubits)?;
    let trace = equilibration_trace(&model, &rho0, &layout, &cfg.times(), cfg.epsilon, r3)?;
    let ta = &cfg.time_average;
    let mut rng = cfg.root_stream().child(k).child(2).rng();
    let avg = time_average_distance(&model, &rho0, &layout, ta.horizon, ta.samples, &mut rng)?;
    let bound = result2_bound(model.spectrum().g(), layout.d_s(), layout.d_e(), cfg.epsilon)?;
    Ok(MemberResult {
        trace,
        time_average: MemberTimeAverage {
            mean: avg.mean,
            stderr: avg.stderr,
            result2_bound: bound,
        },
    })
}

fn fraction(hits: usize, n: usize) -> (f64, f64) {
    let p = hits as f64 / n as f64;
    (p, binomial_stderr(p, n))
}

pub fn ensemble_report(cfg: &ExperimentConfig) -> Result<EnsembleReport> {
    let r3 = r3_params(cfg)?;
    let members: Vec<MemberResult> = (0..cfg.n_ensemble as u64)
        .into_par_iter()
        .map(|k| run_member(cfg, k, r3.as_ref()))
        .collect::<Result<_>>()?;
    let n = members.len();
    let times = cfg.times();

    let records = times
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let dists: Vec<f64> = members.iter().map(|m| m.trace.distances[i]).collect();
            let est = MeanEstimate::from_samples(&dists);
            let r1_hits = members.iter().filter(|m| m.trace.distances[i] > m.trace.bound_r1[i]).count();
            let r3_hits = r3.map(|_| {
                members
                    .iter()
                    .filter(|m| m.trace.distances[i] > m.trace.bound_r3.as_ref().expect("r3 traced")[i])
                    .count()
            });
            let (v1, s1) = fraction(r1_hits, n);
            let r3_frac = r3_hits.map(|h| fraction(h, n));
            TimeRecord {
                t,
                mean_distance: est.mean,
                std_distance: est.stderr * (n as f64).sqrt(),
                violation_r1: v1,
                violation_r1_stderr: s1,
                violation_r3: r3_frac.map(|f| f.0),
                violation_r3_stderr: r3_frac.map(|f| f.1),
            }
        })
        .collect();

    let any_violation = |m: &MemberResult, bound: &[f64]| m.trace.distances.iter().zip(bound).any(|(d, b)| d > b);
    let (sup1, sup1_err) = fraction(members.iter().filter(|m| any_violation(m, &m.trace.bound_r1)).count(), n);
    let sup3 = r3.map(|_| {
        let hits = members
            .iter()
            .filter(|m| any_violation(m, m.trace.bound_r3.as_ref().expect("r3 traced")))
            .count();
        fraction(hits, n).0
    });

    let averages: Vec<MemberTimeAverage> = members.into_iter().map(|m| m.time_average).collect();
    let below = averages.iter().filter(|a| a.mean <= a.result2_bound).count();
    Ok(EnsembleReport {
        n_members: n,
        epsilon: cfg.epsilon,
        t_eq: t_eq(cfg)?,
        records,
        sup_violation_r1: sup1,
        sup_violation_r1_stderr: sup1_err,
        sup_violation_r3: sup3,
        time_average: TimeAverageSummary {
            horizon: cfg.time_average.horizon,
            samples: cfg.time_average.samples,
            below_bound_count: below,
            below_bound_fraction: below as f64 / n as f64,
            members: averages,
        },
        wall_clock_seconds: None,
    })
}

pub fn run_ensemble(cfg: &ExperimentConfig, opts: RunOptions) -> Result<String> {
    let start = Instant::now();
    let mut report = ensemble_report(cfg)?;
    if opts.timing {
        report.wall_clock_seconds = Some(start.elapsed().as_secs_f64());
    }
    json_output(Command::Ensemble, cfg, serde_json::to_value(&report)?)
}

/// |μ̃(t)| columns. GUE: mean over draws and the Bessel form. Ising: the
/// enumerated spectrum (when small enough), the product formula and the
/// short-time Gaussian. Other spectra: the spectrum only.
pub fn run_mu_study(cfg: &ExperimentConfig) -> Result<String> {
    let times = cfg.times();
    let d = 1usize << cfg.n_qubits;
    let mut meta = meta_lines(Command::Mu, cfg);
    let (header, rows): (&str, Vec<Vec<Option<f64>>>) = match &cfg.spectrum {
        SpectrumModel::Gue => {
            let n = cfg.mu.gue_samples.max(1);
            let spectra: Vec<Spectrum> = (0..n as u64)
                .into_par_iter()
                .map(|k| Spectrum::new(&cfg.energies(cfg.root_stream().child(k).child(0))?))
                .collect::<Result<_>>()?;
            let rows = times
                .iter()
                .map(|&t| {
                    let vals: Vec<f64> = spectra.iter().map(|s| mu_tilde(s, t).norm()).collect();
                    let mean = MeanEstimate::from_samples(&vals).mean;
                    vec![Some(t), Some(mean), Some(mu_gue_asymptotic(d, t))]
                })
                .collect();
            ("t,mu_exact,mu_model", rows)
        }
        SpectrumModel::Ising { h } => {
            let params = IsingParams::new(cfg.n_qubits, *h)?;
            meta.push(("large_t_bound".into(), g12(mu_ising(&params, 0.0, IsingMuMethod::LargeTBound))));
            let spec = if cfg.n_qubits <= MAX_ENUMERATION_MODES {
                Some(Spectrum::new(&cfg.energies(cfg.root_stream())?)?)
            } else {
                None
            };
            let rows = times
                .iter()
                .map(|&t| {
                    vec![
                        Some(t),
                        spec.as_ref().map(|s| mu_tilde(s, t).norm()),
                        Some(mu_ising(&params, t, IsingMuMethod::ExactProduct)),
                        Some(mu_ising(&params, t, IsingMuMethod::SmallT)),
                    ]
                })
                .collect();
            ("t,mu_exact,mu_model,mu_small_t", rows)
        }
        _ => {
            let spec = Spectrum::new(&cfg.energies(cfg.root_stream())?)?;
            let rows = times.iter().map(|&t| vec![Some(t), Some(mu_tilde(&spec, t).norm())]).collect();
            ("t,mu_exact", rows)
        }
    };
    let mut out = String::new();
    for (k, v) in &meta {
        out += &format!("# {k}: {v}\n");
    }
    out += header;
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| c.map(g12).unwrap_or_default()).collect();
        out += &cells.join(",");
        out.push('\n');
    }
    Ok(out)
}

/// Fourth-moment prediction against sampled diagonalizers at `moments.t`.
pub fn run_moments(cfg: &ExperimentConfig) -> Result<String> {
    let layout = cfg.layout()?;
    let psi = cfg.initial_state.build(cfg.n_qubits)?;
    let vec = psi.pure_vector().ok_or(Error::NotPure { purity: psi.purity() })?;
    let beta = beta_purity(vec, &layout)?;
    let spec = Spectrum::new(&cfg.energies(cfg.root_stream().child(0).child(0))?)?;
    let sampler = match &cfg.diagonalizer {
        DiagonalizerModel::Haar => MomentSampler::Haar,
        DiagonalizerModel::Circuit { gates, .. } => MomentSampler::Circuit {
            gates: *gates,
            gate_set: cfg.gate_set()?,
        },
        DiagonalizerModel::Identity => {
            return Err(Error::InvalidArgument("moments need a random diagonalizer".into()))
        }
    };
    let report = MomentReport::compute(
        &spec,
        &layout,
        &psi,
        cfg.moments.t,
        cfg.moments.samples,
        &sampler,
        cfg.root_stream().child(1),
    )?;
    let mut value = serde_json::to_value(&report)?;
    let obj = value.as_object_mut().expect("report is an object");
    obj.insert("beta".into(), json!(beta));
    obj.insert("pass_4sigma".into(), json!(report.agrees(4.0)));
    obj.insert("prediction_below_bound".into(), json!(report.prediction_below_bound()));
    json_output(Command::Moments, cfg, value)
}

/// Formula values for the member-0 spectrum. No dynamics.
pub fn run_bounds(cfg: &ExperimentConfig) -> Result<String> {
    let layout = cfg.layout()?;
    let spec = Spectrum::new(&cfg.energies(cfg.root_stream().child(0).child(0))?)?;
    let (g, d, d_s, d_e, eps) = (spec.g(), spec.d(), layout.d_s(), layout.d_e(), cfg.epsilon);
    let r3 = r3_params(cfg)?;
    let records: Vec<Value> = cfg
        .times()
        .into_iter()
        .map(|t| {
            let mu = mu_tilde(&spec, t).norm().min(1.0);
            let r1 = result1_bound(mu, g, d, d_s, d_e, eps)?;
            let r3v = r3.as_ref().map(|p| result3_bound(mu, g, d, d_s, d_e, eps, p)).transpose()?;
            Ok(json!({"t": t, "mu_abs": mu, "result1": r1, "result3": r3v}))
        })
        .collect::<Result<_>>()?;
    let r3_info = match &r3 {
        Some(p) => {
            let extra = p.extra_term(d, d_s, d_e)?;
            let floor = result3_bound(0.0, g, d, d_s, d_e, eps, p)?;
            json!({"gates": p.gates, "form": p.form, "extra_term": extra, "bound_at_mu_zero": floor, "vacuous": floor >= 2.0})
        }
        None => Value::Null,
    };
    let complexity = match cfg.bounds.alpha_prime {
        Some(ap) => match min_complexity_threshold(cfg.n_qubits, cfg.alpha, ap) {
            Ok(c) => json!({"alpha_prime": ap, "threshold": c}),
            Err(e) => json!({"alpha_prime": ap, "error": e.to_string()}),
        },
        None => Value::Null,
    };
    let mut scales = time_scales(TimeScaleInput::Spectrum(&spec));
    match cfg.spectrum {
        SpectrumModel::Gue => scales.gue = time_scales(TimeScaleInput::Gue { n_qubits: cfg.n_qubits }).gue,
        SpectrumModel::Ising { h } => {
            let s = time_scales(TimeScaleInput::Ising(IsingParams::new(cfg.n_qubits, h)?));
            scales.ising = s.ising;
            scales.e_max_ising = s.e_max_ising;
        }
        _ => {}
    }
    let result = json!({
        "d": d,
        "d_s": d_s,
        "d_e": d_e,
        "g": g,
        "w": spec.w(),
        "clusters": spec.clusters().len(),
        "epsilon": eps,
        "result2": result2_bound(g, d_s, d_e, eps)?,
        "resonance_fraction": resonance_fraction(&spec).ok(),
        "time_scales": scales,
        "result3": r3_info,
        "min_complexity": complexity,
        "records": records,
    });
    json_output(Command::Bounds, cfg, result)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoTouchStats {
    pub n_qubits: usize,
    pub gates: usize,
    pub instances: usize,
    pub no_touch: usize,
    pub frequency: f64,
    pub exact: f64,
    pub paper_bound: f64,
    /// `sqrt(p(1−p)/n)` at the exact p.
    pub sigma: f64,
    pub within_3sigma: bool,
}

impl NoTouchStats {
    fn new(n_qubits: usize, gates: usize, m: usize, untouched: usize, instances: usize, cfg: &ExperimentConfig) -> Result<Self> {
        let gs = cfg.gate_set()?;
        let exact = no_touch_probability(n_qubits, m, gates, &gs, NoTouchForm::Exact)?;
        let frequency = untouched as f64 / instances as f64;
        let sigma = binomial_stderr(exact, instances);
        Ok(Self {
            n_qubits,
            gates,
            instances,
            no_touch: untouched,
            frequency,
            exact,
            paper_bound: no_touch_probability(n_qubits, m, gates, &gs, NoTouchForm::PaperBound)?,
            sigma,
            within_3sigma: (frequency - exact).abs() <= 3.0 * sigma,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitDemoReport {
    pub subsystem_qubits: usize,
    pub shallow: NoTouchStats,
    pub check_times: Vec<f64>,
    /// Largest `‖ρ_S(t) − ρ_S(0)‖₁` over untouched instances and times.
    pub max_static_deviation: f64,
    pub all_static: bool,
    pub sublinear: Option<NoTouchStats>,
}

fn untouched(support: &std::collections::BTreeSet<usize>, subsystem: &[usize]) -> bool {
    subsystem.iter().all(|q| !support.contains(q))
}

pub fn circuit_demo_report(cfg: &ExperimentConfig) -> Result<CircuitDemoReport> {
    let DiagonalizerModel::Circuit { gates, .. } = cfg.diagonalizer else {
        return Err(Error::InvalidArgument("circuit-demo needs a circuit diagonalizer".into()));
    };
    let demo = &cfg.circuit_demo;
    if demo.instances == 0 {
        return Err(Error::InvalidArgument("circuit_demo.instances must be >= 1".into()));
    }
    let gs = cfg.gate_set()?;
    let layout = cfg.layout()?;
    let m = cfg.subsystem.len();
    let root = cfg.root_stream();

    let base = HamiltonianModel::new(&cfg.energies(root.child(0).child(0))?, DiagonalizerSource::Identity)?;
    let rho0 = cfg.initial_state.build(cfg.n_qubits)?;
    let rho_s0 = initial_reduced(&rho0, &layout)?;
    let mut trng = root.child(1).rng();
    let check_times: Vec<f64> = (0..demo.check_times).map(|_| trng.random::<f64>() * demo.max_time).collect();
    let phases: Vec<_> = check_times.iter().map(|&t| evolution_phases(base.energies(), t)).collect();

    let outcomes: Vec<Option<f64>> = (0..demo.instances as u64)
        .into_par_iter()
        .map(|k| {
            let circuit = sample_random_circuit(cfg.n_qubits, gates, &gs, &mut root.child(2).child(k).rng())?;
            if !untouched(&circuit_support(&circuit), &cfg.subsystem) {
                return Ok(None);
            }
            let model = base.rediagonalized(DiagonalizerSource::Circuit(circuit))?;
            let prepared = PreparedState::new(&model, &rho0, &layout)?;
            let mut worst = 0.0f64;
            for p in &phases {
                let diff = &prepared.reduced_with_phases(&model, &layout, p)? - &rho_s0;
                worst = worst.max(trace_norm(&diff)?);
            }
            Ok(Some(worst))
        })
        .collect::<Result<_>>()?;
    let devs: Vec<f64> = outcomes.iter().flatten().copied().collect();
    let max_dev = devs.iter().copied().fold(0.0, f64::max);
    let shallow = NoTouchStats::new(cfg.n_qubits, gates, m, devs.len(), demo.instances, cfg)?;

    let sublinear = if demo.sublinear_n_qubits > 0 {
        let n = demo.sublinear_n_qubits;
        if cfg.subsystem.iter().any(|&q| q >= n) {
            return Err(Error::InvalidArgument(format!("subsystem does not fit in {n} qubits")));
        }
        let c = (n as f64).sqrt().round() as usize;
        let hits = (0..demo.instances as u64)
            .into_par_iter()
            .map(|k| {
                let circuit = sample_random_circuit(n, c, &gs, &mut root.child(3).child(k).rng())?;
                Ok(untouched(&circuit_support(&circuit), &cfg.subsystem) as usize)
            })
            .collect::<Result<Vec<usize>>>()?
            .into_iter()
            .sum();
        Some(NoTouchStats::new(n, c, m, hits, demo.instances, cfg)?)
    } else {
        None
    };

    Ok(CircuitDemoReport {
        subsystem_qubits: m,
        shallow,
        check_times,
        max_static_deviation: max_dev,
        all_static: max_dev <= STATIC_TOLERANCE,
        sublinear,
    })
}

pub fn run_circuit_demo(cfg: &ExperimentConfig) -> Result<String> {
    let report = circuit_demo_report(cfg)?;
    json_output(Command::CircuitDemo, cfg, serde_json::to_value(&report)?)
}
