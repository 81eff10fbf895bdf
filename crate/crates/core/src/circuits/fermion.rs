use crate::dynamics::{DiagonalizerSource, HamiltonianModel};
use crate::ensembles::occupation_energies;
use crate::error::Result;

/// `H = U (Σ_k ω_k n̂_k) U†` with mode k on qubit k.
///
/// Eigenvector n of the model is the occupation pattern with bits n, so
/// with the identity diagonalizer H is diagonal in the local basis.
pub fn free_fermion_model(frequencies: &[f64], diagonalizer: DiagonalizerSource) -> Result<HamiltonianModel> {
    HamiltonianModel::new(&occupation_energies(frequencies)?, diagonalizer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ComplexMatrix;

    #[test]
    fn degenerate_pair() {
        let m = free_fermion_model(&[1.0, 1.0], DiagonalizerSource::Identity).unwrap();
        assert_eq!(m.energies(), &[0.0, 1.0, 1.0, 2.0]);
        assert_eq!(m.spectrum().g(), 2);
    }

    #[test]
    fn binary_frequencies_enumerate() {
        let m = free_fermion_model(&[4.0, 2.0, 1.0], DiagonalizerSource::Identity).unwrap();
        let want: Vec<f64> = (0..8).map(|k| k as f64).collect();
        assert_eq!(m.energies(), want.as_slice());
        assert!(m.spectrum().is_nondegenerate());
        let m = free_fermion_model(&[1.0, 2.0, 4.0], DiagonalizerSource::Identity).unwrap();
        let mut e = m.energies().to_vec();
        e.sort_by(f64::total_cmp);
        assert_eq!(e, want);
    }

    #[test]
    fn identity_is_local_and_diagonal() {
        let m = free_fermion_model(&[0.3, 1.1, 0.7], DiagonalizerSource::Identity).unwrap();
        let h = m.hamiltonian().unwrap();
        let diag = ComplexMatrix::from_real_diagonal(m.energies());
        assert_eq!(h, diag);
    }
}
