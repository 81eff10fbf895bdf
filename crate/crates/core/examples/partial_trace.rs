//! Density matrices, reductions and trace distances on a few qubits.

use eqlab::dynamics::DensityMatrix;
use eqlab::numerics::{partial_trace, reduce_pure, trace_norm, BipartitionLayout, Complex64};

fn main() -> eqlab::Result<()> {
    // (|000> + |111>)/sqrt(2): every single qubit is maximally mixed
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut psi = vec![Complex64::new(0.0, 0.0); 8];
    psi[0] = Complex64::new(s, 0.0);
    psi[7] = Complex64::new(s, 0.0);
    let ghz = DensityMatrix::from_pure(psi.clone())?;

    for q in 0..3 {
        let layout = BipartitionLayout::new(3, &[q])?;
        let r = reduce_pure(&psi, &layout)?;
        println!("qubit {q}: diag = ({:.2}, {:.2}), purity {:.2}", r[(0, 0)].re, r[(1, 1)].re, r.frobenius_norm().powi(2));
    }
    let pair = BipartitionLayout::new(3, &[0, 2])?;
    let r02 = partial_trace(ghz.matrix(), &pair)?;
    let mixed = DensityMatrix::maximally_mixed(4);
    println!("qubits 0,2 vs maximally mixed: {:.3}", trace_norm(&(&r02 - mixed.matrix()))?);
    println!("GHZ vs |000>: {:.3}", ghz.trace_distance(&DensityMatrix::zero_state(3)?)?);
    Ok(())
}
