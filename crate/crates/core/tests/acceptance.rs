//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the summary lines always print.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command as Process;
use std::time::Instant;

use eqlab::bounds::{mu_gue_asymptotic, mu_ising, mu_tilde, result1_bound, result3_bound, IsingMuMethod, R3Form, R3Params};
use eqlab::dynamics::{
    evolve_full, evolve_reduced, omega_map, time_averaged_state, DensityMatrix, DiagonalizerSource, HamiltonianModel,
};
use eqlab::ensembles::{
    gue_level_density, ising_spectrum, sample_gue_spectrum, semicircle_cdf, IsingMode, IsingParams, IsingSpectrum,
    LevelDensityMethod, RngStream, Spectrum,
};
use eqlab::experiments::{circuit_demo_report, ensemble_report, ExperimentConfig};
use eqlab::circuits::GateSet;
use eqlab::moments::{
    c_coefficients, f_function_brute_force, f_functions, fourth_moment_prediction, monte_carlo_fourth_moment,
    FValues, MomentReport, MomentSampler, Perm4,
};
use eqlab::numerics::{hermitian_eigvals, trace_norm, BipartitionLayout, Complex64, ComplexMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ginibre<R: Rng>(d: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

fn random_density<R: Rng>(d: usize, rank: usize, rng: &mut R) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(d, rank, |_, _| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr).hermitian_part()).unwrap()
}

fn mu_engines() -> Outcome {
    let mut rng = RngStream::root(101).rng();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = rng.random_range(2..=12);
        let h = rng.random::<f64>() * 2.0;
        let t = rng.random::<f64>() * 10.0;
        let p = IsingParams::new(n, h).unwrap();
        let IsingSpectrum::Full(spec) = ising_spectrum(&p, IsingMode::FullEnumeration).unwrap() else {
            unreachable!()
        };
        let gap = (mu_tilde(&spec, t).norm() - mu_ising(&p, t, IsingMuMethod::ExactProduct)).abs();
        worst = worst.max(gap);
    }
    check(worst <= 1e-12, || format!("product vs spectrum gap {worst:.2e}"))?;

    let mut worst_log = 0.0f64;
    for _ in 0..50 {
        let h = rng.random::<f64>() * 2.0;
        let p = IsingParams::new(100, h).unwrap();
        let t = (0.01 + 0.49 * rng.random::<f64>()) / (100.0 * (1.0 + h * h)).sqrt();
        let exact = mu_ising(&p, t, IsingMuMethod::ExactProduct).ln();
        let gauss = mu_ising(&p, t, IsingMuMethod::SmallT).ln();
        worst_log = worst_log.max(((gauss - exact) / exact).abs());
    }
    check(worst_log <= 0.1, || format!("small-t log error {worst_log:.3}"))?;
    Ok(format!("product gap {worst:.1e}, small-t log error {:.2}%", 100.0 * worst_log))
}

fn gue_statistics() -> Outcome {
    let d = 512;
    let root = RngStream::root(202);
    let spectra: Vec<Vec<f64>> = (0..20).map(|k| sample_gue_spectrum(d, &mut root.child(k).rng()).unwrap()).collect();
    let mut pooled: Vec<f64> = spectra.iter().flatten().copied().collect();
    pooled.sort_by(f64::total_cmp);
    let n = pooled.len() as f64;
    let ks = pooled
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let f = semicircle_cdf(d, e);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max);
    check(ks <= 0.03, || format!("semicircle CDF deviation {ks:.4}"))?;

    let specs: Vec<Spectrum> = spectra.iter().map(|e| Spectrum::new(e).unwrap()).collect();
    let gap = (0..=500)
        .map(|k| {
            let t = 0.01 * k as f64;
            let emp = specs.iter().map(|s| mu_tilde(s, t).norm()).sum::<f64>() / specs.len() as f64;
            (emp - mu_gue_asymptotic(d, t)).abs()
        })
        .fold(0.0, f64::max);
    check(gap <= 0.05, || format!("Bessel gap {gap:.4}"))?;

    let kernel = gue_level_density(256, 0.0, LevelDensityMethod::ExactKernel).unwrap();
    let semi = gue_level_density(256, 0.0, LevelDensityMethod::Semicircle).unwrap();
    let rel = (kernel / semi - 1.0).abs();
    check(rel <= 0.05, || format!("kernel vs semicircle {rel:.4}"))?;
    Ok(format!("CDF dev {ks:.4}, Bessel gap {gap:.4}, kernel rel {rel:.2e}"))
}

const ENSEMBLE_N8: &str = r#"{
    "n_qubits": 8,
    "subsystem": [0],
    "spectrum": {"kind": "gue"},
    "diagonalizer": {"kind": "haar"},
    "epsilon": 0.1,
    "time_grid": {"start": 0, "stop": 3, "steps": 61},
    "n_ensemble": 100,
    "master_seed": 303,
    "time_average": {"horizon": 1000, "samples": 200}
}"#;

fn result12_statistics() -> Outcome {
    let cfg = ExperimentConfig::from_json_with_overrides(ENSEMBLE_N8, &[]).unwrap();
    let r = ensemble_report(&cfg).unwrap();
    let late: Vec<_> = r.records_from(5.0 * r.t_eq).collect();
    check(!late.is_empty(), || "no grid points past 5 t_eq".into())?;
    let worst = late.iter().map(|x| x.violation_r1).fold(0.0, f64::max);
    check(worst <= 0.19, || format!("late violation fraction {worst}"))?;
    let below = r.time_average.below_bound_count;
    check(below >= 90, || format!("time average below bound for {below}/100"))?;
    Ok(format!(
        "max late violation {worst:.2}, time average below bound {below}/100 (both bounds exceed 2 at N=8)"
    ))
}

fn moments() -> Outcome {
    let mut rng = RngStream::root(404).rng();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = rng.random_range(2..=12u32);
        let k = rng.random_range(1..n);
        let (d, d_e) = (1usize << n, 1usize << k);
        let d_s = d / d_e;
        let lo = 1.0 / d_s.min(d_e) as f64;
        let beta = lo + (1.0 - lo) * rng.random::<f64>();
        worst = worst.max(c_coefficients(d, d_e, beta).max_trace_error());
    }
    check(worst <= 1e-10, || format!("trace identity error {worst:.2e}"))?;

    let spec = Spectrum::new(&sample_gue_spectrum(8, &mut RngStream::root(405).rng()).unwrap()).unwrap();
    let layout = BipartitionLayout::leading(3, 1).unwrap();
    let psi = DensityMatrix::zero_state(3).unwrap();
    let r = MomentReport::compute(&spec, &layout, &psi, 0.7, 20_000, &MomentSampler::Haar, RngStream::root(406)).unwrap();
    let z = (r.mc_estimate - r.predicted) / r.mc_stderr;
    check(z.abs() <= 4.0, || format!("Haar MC off by {z:.2} stderr"))?;

    let mut f_worst = 0.0f64;
    for i in 0..30 {
        let d = [4usize, 8, 16][i % 3];
        let levels = rng.random_range(1..=d);
        let e: Vec<f64> = (0..d).map(|_| rng.random_range(0..levels) as f64 * 0.41 + 0.1).collect();
        let spec = Spectrum::new(&e).unwrap();
        let t = rng.random::<f64>() * 8.0;
        let f = f_functions(&spec, t).as_array();
        for (name, got) in FValues::PERMUTATIONS.iter().zip(f) {
            let want = f_function_brute_force(&spec, t, name.parse::<Perm4>().unwrap());
            f_worst = f_worst.max((got - want).norm() / want.norm().max(1.0));
        }
    }
    check(f_worst <= 1e-9, || format!("f closed forms off by {f_worst:.2e}"))?;
    Ok(format!("trace err {worst:.1e}, Haar z = {z:.2}, f err {f_worst:.1e}"))
}

fn omega_and_contracts() -> Outcome {
    let mut rng = RngStream::root(505).rng();
    let (mut om_worst, mut eig_worst) = (0.0f64, 0.0f64);
    for i in 0..50 {
        let n = 3 + i % 3;
        let d = 1usize << n;
        let levels = rng.random_range(2..=d);
        let e: Vec<f64> = (0..d).map(|_| rng.random_range(0..levels) as f64 * 0.73).collect();
        let model = HamiltonianModel::new(&e, DiagonalizerSource::Haar(RngStream::new(505, i as u64))).unwrap();
        let layout = BipartitionLayout::new(n, &[rng.random_range(0..n)]).unwrap();
        let rho = random_density(d, rng.random_range(1..=d), &mut rng);
        let t = rng.random::<f64>() * 10.0;
        let om = omega_map(&model, &rho, &layout, t).unwrap();
        let want = evolve_reduced(&model, &rho, &layout, t).unwrap().matrix() - time_averaged_state(&model, &rho, &layout).unwrap().matrix();
        om_worst = om_worst.max((&om - &want).max_abs());
        let full = evolve_full(&model, &rho, t).unwrap();
        let (a, b) = (rho.eigenvalues().unwrap(), hermitian_eigvals(&full).unwrap());
        eig_worst = eig_worst.max(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
    }
    check(om_worst <= 1e-9, || format!("Ω identity off by {om_worst:.2e}"))?;
    check(eig_worst <= 1e-9, || format!("spectrum drift {eig_worst:.2e}"))?;

    let mut ratio = 0.0f64;
    for _ in 0..2000 {
        let d = rng.random_range(1..=16);
        let b = ginibre(d, &mut rng);
        let b = if rng.random::<bool>() { b.hermitian_part() } else { b };
        ratio = ratio.max(trace_norm(&b).unwrap() / ((d as f64).sqrt() * b.frobenius_norm()));
    }
    check(ratio <= 1.0 + 1e-12, || format!("norm inequality ratio {ratio}"))?;
    Ok(format!("Ω err {om_worst:.1e}, eig drift {eig_worst:.1e}, max ‖B‖₁/(√d‖B‖₂) = {ratio:.4}"))
}

const CIRCUIT_DEMO: &str = r#"{
    "n_qubits": 16,
    "subsystem": [0],
    "spectrum": {"kind": "ising", "h": 0.7},
    "diagonalizer": {"kind": "circuit", "gates": 2},
    "epsilon": 0.1,
    "time_grid": {"start": 0, "stop": 1, "steps": 2},
    "master_seed": 606,
    "circuit_demo": {"instances": 10000, "check_times": 10, "max_time": 100, "sublinear_n_qubits": 256}
}"#;

fn result4() -> Outcome {
    let cfg = ExperimentConfig::from_json_with_overrides(CIRCUIT_DEMO, &[]).unwrap();
    let r = circuit_demo_report(&cfg).unwrap();
    let s = &r.shallow;
    check(s.within_3sigma, || format!("no-touch {} vs exact {} (σ {})", s.frequency, s.exact, s.sigma))?;
    check(r.all_static, || format!("untouched instance moved by {:.2e}", r.max_static_deviation))?;
    let sub = r.sublinear.as_ref().ok_or("missing sublinear study")?;
    check(sub.frequency > 0.5, || format!("sublinear no-touch fraction {}", sub.frequency))?;
    Ok(format!(
        "no-touch {:.4} vs {:.4} ± {:.4}, max drift {:.1e}, N=256 C={} fraction {:.3}",
        s.frequency, s.exact, s.sigma, r.max_static_deviation, sub.gates, sub.frequency
    ))
}

fn result3() -> Outcome {
    let (n, d_s) = (8usize, 2usize);
    let (d, d_e) = (1usize << n, (1usize << n) / d_s);
    for form in [R3Form::MainText, R3Form::Appendix] {
        for mu in [1.0, 0.1, 1e-3] {
            let r1 = result1_bound(mu, 1, d, d_s, d_e, 0.1).unwrap();
            let mut prev = f64::INFINITY;
            for gates in (0..=10_000u64).step_by(10) {
                let p = R3Params { gates, n_qubits: n, alpha: 0.1, form };
                let r3 = result3_bound(mu, 1, d, d_s, d_e, 0.1, &p).unwrap();
                check(r3 >= r1 && r3 <= prev, || format!("{form:?} not monotone at C={gates}"))?;
                prev = r3;
            }
            check((prev - r1) / r1 < 1e-9, || format!("{form:?} ends {prev} vs {r1}"))?;
        }
    }
    // vacuous for every feasible size: the bound stays above 2 even at μ = 0
    for n in 4..=12usize {
        let d = 1usize << n;
        for gates in [n, n * n, 10 * n * n] {
            let p = R3Params { gates: gates as u64, n_qubits: n, alpha: 0.1, form: R3Form::MainText };
            let b = result3_bound(0.0, 1, d, 2, d / 2, 0.1, &p).unwrap();
            check(b > 2.0, || format!("non-vacuous at N={n}, C={gates}: {b}"))?;
        }
    }

    let e: Vec<f64> = (0..8).map(|k| (k as f64).powf(1.2)).collect();
    let spec = Spectrum::new(&e).unwrap();
    let layout = BipartitionLayout::leading(3, 1).unwrap();
    let psi = DensityMatrix::zero_state(3).unwrap();
    let (pred, _) = fourth_moment_prediction(&spec, 4, 1.0, 0.7).unwrap();
    let sample = |gates: usize, seed: u64| {
        let s = MomentSampler::Circuit { gates, gate_set: GateSet::standard() };
        monte_carlo_fourth_moment(&spec, &layout, &psi, 0.7, 4000, &s, RngStream::root(seed)).unwrap()
    };
    let (shallow, deep) = (sample(3, 707), sample(300, 708));
    let (ga, gb) = ((shallow.mean - pred).abs(), (deep.mean - pred).abs());
    let sigma = (shallow.stderr.powi(2) + deep.stderr.powi(2)).sqrt();
    check(ga - gb > 3.0 * sigma, || format!("depth gaps {ga:.4} vs {gb:.4}, σ {sigma:.4}"))?;
    Ok(format!("monotone in C for both forms; moment gap C=3 {ga:.4}, C=300 {gb:.4} (σ {sigma:.4})"))
}

const CLI_CONFIGS: [(&str, &str); 6] = [
    ("trace", r#"{"n_qubits": 6, "subsystem": [1], "spectrum": {"kind": "gue"}, "diagonalizer": {"kind": "haar"},
        "epsilon": 0.1, "time_grid": {"start": 0, "stop": 2, "steps": 21}}"#),
    ("ensemble", r#"{"n_qubits": 5, "subsystem": [0], "spectrum": {"kind": "gue"}, "diagonalizer": {"kind": "haar"},
        "epsilon": 0.2, "time_grid": {"start": 0, "stop": 1, "steps": 6}, "n_ensemble": 12,
        "time_average": {"horizon": 50, "samples": 100}}"#),
    ("mu", r#"{"n_qubits": 6, "subsystem": [0], "spectrum": {"kind": "gue"}, "diagonalizer": {"kind": "identity"},
        "epsilon": 0.1, "time_grid": {"start": 0, "stop": 3, "steps": 31}, "mu": {"gue_samples": 6}}"#),
    ("moments", r#"{"n_qubits": 3, "subsystem": [0], "spectrum": {"kind": "gue"}, "diagonalizer": {"kind": "haar"},
        "epsilon": 0.1, "time_grid": {"start": 0, "stop": 1, "steps": 2}, "moments": {"t": 0.7, "samples": 3000}}"#),
    ("bounds", r#"{"n_qubits": 6, "subsystem": [0, 1], "spectrum": {"kind": "ising", "h": 0.4},
        "diagonalizer": {"kind": "circuit", "gates": 50}, "epsilon": 0.1, "r3_form": "appendix",
        "time_grid": {"start": 0, "stop": 2, "steps": 5}, "bounds": {"alpha_prime": 50}}"#),
    ("circuit-demo", r#"{"n_qubits": 10, "subsystem": [0], "spectrum": {"kind": "ising", "h": 0.9},
        "diagonalizer": {"kind": "circuit", "gates": 3}, "epsilon": 0.1, "time_grid": {"start": 0, "stop": 1, "steps": 2},
        "circuit_demo": {"instances": 300, "check_times": 4, "max_time": 20, "sublinear_n_qubits": 64}}"#),
];

fn run_cli(dir: &Path, cmd: &str, cfg: &Path, jobs: usize, tag: &str) -> Result<Vec<u8>, String> {
    let out = dir.join(format!("{cmd}-{tag}.out"));
    let status = Process::new(env!("CARGO_BIN_EXE_eqlab"))
        .args([cmd, "--config"])
        .arg(cfg)
        .args(["--seed", "42", "--jobs", &jobs.to_string(), "--out"])
        .arg(&out)
        .status()
        .map_err(|e| e.to_string())?;
    check(status.success(), || format!("{cmd} exited with {status}"))?;
    std::fs::read(&out).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut bytes = 0;
    for (cmd, text) in CLI_CONFIGS {
        let cfg = dir.path().join(format!("{cmd}.json"));
        std::fs::write(&cfg, text).map_err(|e| e.to_string())?;
        let runs: Vec<Vec<u8>> = [(1, "a"), (1, "b"), (8, "c"), (8, "d")]
            .into_iter()
            .map(|(jobs, tag)| run_cli(dir.path(), cmd, &cfg, jobs, tag))
            .collect::<Result<_, _>>()?;
        check(runs.iter().all(|r| r == &runs[0]), || format!("{cmd} output differs between runs"))?;
        bytes += runs[0].len();
    }
    Ok(format!("6 commands x 4 runs identical ({bytes} bytes per round)"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("mu engines", mu_engines),
        ("GUE statistics", gue_statistics),
        ("pointwise and time-averaged bound statistics", result12_statistics),
        ("fourth moments", moments),
        ("Ω identity and evolution contracts", omega_and_contracts),
        ("untouched subsystems under shallow circuits", result4),
        ("circuit bound plumbing", result3),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name} [{secs:.1}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL  {name} [{secs:.1}s]: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
