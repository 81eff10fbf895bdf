use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, hermitian_eigvals, trace_norm, ComplexMatrix};

const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-9;
const NORM_TOL: f64 = 1e-10;

/// Eigenvalues at or below this magnitude are dropped from decompositions.
const WEIGHT_FLOOR: f64 = 1e-15;

/// A validated density operator. Pure states keep their vector so evolution
/// can stay on the O(d²) path; their dense matrix is only built on request.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dim: usize,
    matrix: OnceLock<ComplexMatrix>,
    pure: Option<Vec<Complex64>>,
}

impl PartialEq for DensityMatrix {
    fn eq(&self, other: &Self) -> bool {
        match (&self.pure, &other.pure) {
            (Some(a), Some(b)) => a == b,
            _ => self.matrix() == other.matrix(),
        }
    }
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} density matrix",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite("density matrix"));
        }
        let residual = matrix.hermitian_residual();
        if residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let matrix = matrix.hermitian_part();
        check_trace(&matrix)?;
        let lo = hermitian_eigvals(&matrix)?.first().copied().unwrap_or(0.0);
        if lo < -PSD_TOL {
            return Err(Error::Contract(format!(
                "density matrix has eigenvalue {lo:.3e}"
            )));
        }
        Ok(Self::dense(matrix))
    }

    fn dense(matrix: ComplexMatrix) -> Self {
        Self {
            dim: matrix.rows(),
            matrix: OnceLock::from(matrix),
            pure: None,
        }
    }

    /// `|ψ⟩⟨ψ|`; ψ must be normalized to 1e-10.
    pub fn from_pure(psi: Vec<Complex64>) -> Result<Self> {
        if psi.is_empty() {
            return Err(Error::InvalidArgument("empty state vector".into()));
        }
        if psi.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite("state vector"));
        }
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument(format!(
                "state vector has squared norm {norm}"
            )));
        }
        Ok(Self {
            dim: psi.len(),
            matrix: OnceLock::new(),
            pure: Some(psi),
        })
    }

    /// Computational basis state `|index⟩` on N qubits.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        let d = 1usize << n_qubits;
        if index >= d {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut psi = vec![Complex64::new(0.0, 0.0); d];
        psi[index] = Complex64::new(1.0, 0.0);
        Self::from_pure(psi)
    }

    /// `|0…0⟩⟨0…0|`.
    pub fn zero_state(n_qubits: usize) -> Result<Self> {
        Self::basis_state(n_qubits, 0)
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self::dense(ComplexMatrix::identity(d).scale_real(1.0 / d as f64))
    }

    /// `Σ_k p_k ρ_k` with p a probability vector.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::InvalidArgument("empty mixture".into()));
        };
        let d = first.dim();
        let total: f64 = parts.iter().map(|(p, _)| p).sum();
        if parts.iter().any(|(p, _)| *p < 0.0) || (total - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument("mixture weights must be a distribution".into()));
        }
        let mut m = ComplexMatrix::zeros(d, d);
        for (p, rho) in parts {
            if rho.dim() != d {
                return Err(Error::DimensionMismatch("mixture of different dimensions".into()));
            }
            m.add_scaled(Complex64::new(*p, 0.0), rho.matrix());
        }
        Self::new(m)
    }

    /// Wraps a reduced state built from PSD pieces. Only the trace is checked.
    pub(crate) fn from_reduction(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NonFinite("reduced state"));
        }
        check_trace(&matrix)?;
        Ok(Self::dense(matrix))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dense form. For a pure state this allocates d² entries on first use.
    pub fn matrix(&self) -> &ComplexMatrix {
        self.matrix.get_or_init(|| {
            let psi = self.pure.as_ref().expect("dense or pure");
            ComplexMatrix::outer(psi, psi)
        })
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix();
        self.matrix.into_inner().expect("initialized")
    }

    pub fn pure_vector(&self) -> Option<&[Complex64]> {
        self.pure.as_deref()
    }

    pub fn is_pure(&self) -> bool {
        self.pure.is_some()
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        match &self.pure {
            Some(psi) => psi.iter().map(|z| z.norm_sqr()).sum::<f64>().powi(2),
            None => self.matrix().frobenius_norm().powi(2),
        }
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigvals(self.matrix())
    }

    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch("trace distance across dimensions".into()));
        }
        trace_norm(&(self.matrix() - other.matrix()))
    }

    /// `ρ = Σ_k w_k |v_k⟩⟨v_k|` with orthonormal v_k.
    pub fn decompose(&self) -> Result<Vec<(f64, Vec<Complex64>)>> {
        if let Some(psi) = &self.pure {
            return Ok(vec![(1.0, psi.clone())]);
        }
        let eig = hermitian_eig(self.matrix())?;
        Ok(eig
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, l)| l.abs() > WEIGHT_FLOOR)
            .map(|(k, &l)| (l, eig.eigenvectors.column(k)))
            .collect())
    }
}

fn check_trace(m: &ComplexMatrix) -> Result<()> {
    let tr = m.trace();
    if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
        return Err(Error::Contract(format!("trace {tr} differs from 1")));
    }
    Ok(())
}
