//! GUE level statistics: semicircle, exact one-point kernel, and the
//! Bessel decay of |μ̃(t)|.

use eqlab::bounds::{mu_gue_asymptotic, mu_tilde};
use eqlab::ensembles::{
    gue_level_density, sample_gue_spectrum, semicircle_cdf, LevelDensityMethod, RngStream, Spectrum,
};

fn main() -> eqlab::Result<()> {
    let d = 512;
    let root = RngStream::root(5);
    let spectra: Vec<Vec<f64>> = (0..20)
        .map(|k| sample_gue_spectrum(d, &mut root.child(k).rng()))
        .collect::<eqlab::Result<_>>()?;

    // Kolmogorov distance of the pooled eigenvalues from the semicircle
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
    println!("sup |F_emp - F_semicircle| = {ks:.4}");

    let exact = gue_level_density(256, 0.0, LevelDensityMethod::ExactKernel)?;
    let semi = gue_level_density(256, 0.0, LevelDensityMethod::Semicircle)?;
    println!("d=256 density at E=0: kernel {exact:.4}, semicircle {semi:.4}");

    let specs: Vec<Spectrum> = spectra.iter().map(|e| Spectrum::new(e)).collect::<eqlab::Result<_>>()?;
    println!("\n{:>5} {:>10} {:>10}", "t", "empirical", "bessel");
    for k in 0..=10 {
        let t = 0.05 * k as f64;
        let emp = specs.iter().map(|s| mu_tilde(s, t).norm()).sum::<f64>() / specs.len() as f64;
        println!("{t:>5.2} {emp:>10.5} {:>10.5}", mu_gue_asymptotic(d, t));
    }
    Ok(())
}
