//! A small ensemble run through the same entry point the CLI uses.

use eqlab::experiments::{ensemble_report, ExperimentConfig};

const CONFIG: &str = r#"{
    "n_qubits": 6,
    "subsystem": [0],
    "spectrum": {"kind": "gue"},
    "diagonalizer": {"kind": "haar"},
    "epsilon": 0.1,
    "time_grid": {"start": 0, "stop": 1, "steps": 11},
    "n_ensemble": 40,
    "master_seed": 99,
    "time_average": {"horizon": 200, "samples": 100}
}"#;

fn main() -> eqlab::Result<()> {
    let cfg = ExperimentConfig::from_json_with_overrides(CONFIG, &[])?;
    let r = ensemble_report(&cfg)?;
    println!("t_eq = {}", r.t_eq);
    for rec in &r.records {
        println!(
            "t = {:.1}: mean {:.4} (sd {:.4}), violations {:.3} ± {:.3}",
            rec.t, rec.mean_distance, rec.std_distance, rec.violation_r1, rec.violation_r1_stderr
        );
    }
    let ta = &r.time_average;
    println!("time averages below their bound: {}/{}", ta.below_bound_count, r.n_members);
    Ok(())
}
