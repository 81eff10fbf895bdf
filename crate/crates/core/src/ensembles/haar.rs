use rand::Rng;
use rand_distr::StandardNormal;

use crate::numerics::{householder_qr, Complex64, ComplexMatrix};

/// Draws a Haar-distributed d×d unitary.
///
/// QR of a matrix of i.i.d. standard complex Gaussians, with each column of
/// Q multiplied by the phase of the matching diagonal entry of R. Without
/// that correction the result is unitary but not Haar.
pub fn sample_haar<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let g = ComplexMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(s * re, s * im)
    });
    let (mut q, r_diag) = householder_qr(&g);
    let phases: Vec<Complex64> = r_diag
        .iter()
        .map(|&r| if r.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { r / r.norm() })
        .collect();
    for i in 0..d {
        for (z, &p) in q.row_mut(i).iter_mut().zip(&phases) {
            *z *= p;
        }
    }
    q
}
