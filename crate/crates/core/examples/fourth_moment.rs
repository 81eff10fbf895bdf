//! Haar average of the squared 2-norm distance, predicted and sampled.

use eqlab::dynamics::DensityMatrix;
use eqlab::ensembles::{sample_gue_spectrum, RngStream, Spectrum};
use eqlab::moments::{c_coefficients, f_functions, MomentReport, MomentSampler};
use eqlab::numerics::BipartitionLayout;

fn main() -> eqlab::Result<()> {
    let root = RngStream::root(8);
    let spec = Spectrum::new(&sample_gue_spectrum(8, &mut root.child(0).rng())?)?;
    let layout = BipartitionLayout::leading(3, 1)?;
    let psi = DensityMatrix::zero_state(3)?;

    let c = c_coefficients(8, layout.d_e(), 1.0);
    println!("c = {:?}", c.values());
    println!("worst relative error on the trace identities: {:.2e}", c.max_trace_error());
    println!("f at t = 0.7: {:?}", f_functions(&spec, 0.7));

    for t in [0.2, 0.7, 2.0] {
        let r = MomentReport::compute(&spec, &layout, &psi, t, 20_000, &MomentSampler::Haar, root.child(1))?;
        println!(
            "t = {t}: predicted {:.5}, sampled {:.5} ± {:.5}, bound {:.4}",
            r.predicted, r.mc_estimate, r.mc_stderr, r.e17_bound
        );
    }
    Ok(())
}
