//! Transverse-field Ising chain: |μ̃(t)| three ways and the time scales.

use eqlab::bounds::{mu_ising, mu_tilde, time_scales, IsingMuMethod, TimeScaleInput};
use eqlab::ensembles::{ising_spectrum, IsingMode, IsingParams, IsingSpectrum};

fn main() -> eqlab::Result<()> {
    let p = IsingParams::new(10, 0.6)?;
    let IsingSpectrum::Full(spec) = ising_spectrum(&p, IsingMode::FullEnumeration)? else {
        unreachable!()
    };
    println!("N = {}, h = {}: {} distinct levels, g = {}", p.n_modes, p.h, spec.clusters().len(), spec.g());

    println!("{:>5} {:>12} {:>12} {:>12}", "t", "spectrum", "product", "gaussian");
    for k in 0..=8 {
        let t = 0.25 * k as f64;
        println!(
            "{t:>5.2} {:>12.3e} {:>12.3e} {:>12.3e}",
            mu_tilde(&spec, t).norm(),
            mu_ising(&p, t, IsingMuMethod::ExactProduct),
            mu_ising(&p, t, IsingMuMethod::SmallT),
        );
    }
    println!("long-time bound 2^(-N/2) = {:.3e}", mu_ising(&p, 0.0, IsingMuMethod::LargeTBound));

    let big = IsingParams::new(100, 0.6)?;
    let s = time_scales(TimeScaleInput::Ising(big));
    println!("\nN = 100: t_eq ~ {:.4}, E_max = {:.3}", s.ising.unwrap(), s.e_max_ising.unwrap());
    Ok(())
}
