//! Dense complex linear algebra and the special functions the rest of the
//! crate leans on. Everything here is a pure function of its inputs.

mod eig;
mod matrix;
mod partial;
mod qr;
mod special;
mod stats;

pub use eig::{hermitian_eig, hermitian_eigvals, trace_norm, HermitianEigResult, MAX_DIM};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
pub use partial::{accumulate_reduced, partial_trace, reduce_pure, BipartitionLayout};
pub use qr::householder_qr;
pub use stats::{binomial_stderr, compensated_sum, MeanEstimate};
pub use special::{
    bessel_j1, bessel_jinc, hermite_fn, hermite_kernel_diagonal, BESSEL_MAX_ARG,
    HERMITE_MAX_INDEX,
};
