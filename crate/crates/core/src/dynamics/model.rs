use std::sync::Arc;

use num_complex::Complex64;

use crate::circuits::{circuit_unitary, QuantumCircuit, MAX_SYNTHESIS_QUBITS};
use crate::ensembles::{sample_haar, RngStream, Spectrum};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// Where the eigenbasis `U` of a model comes from.
#[derive(Debug, Clone)]
pub enum DiagonalizerSource {
    /// Haar-random, drawn from the given stream.
    Haar(RngStream),
    /// The unitary of a circuit.
    Circuit(QuantumCircuit),
    /// Local basis: H is diagonal.
    Identity,
    /// A caller-supplied unitary, checked to 1e-10.
    Explicit(ComplexMatrix),
}

#[derive(Debug, Clone)]
enum Basis {
    Dense(ComplexMatrix),
    Circuit(QuantumCircuit),
    Identity,
}

/// `H = U·diag(E)·U†` on N qubits.
///
/// `energies[n]` is the eigenvalue attached to column n of U. With
/// N ≤ 12 the unitary is built densely; larger circuit and identity models
/// stay matrix-free and only support pure-state evolution.
#[derive(Debug, Clone)]
pub struct HamiltonianModel {
    n_qubits: usize,
    energies: Arc<[f64]>,
    spectrum: Arc<Spectrum>,
    cluster_of: Arc<[usize]>,
    basis: Basis,
}

const UNITARY_TOL: f64 = 1e-10;

impl HamiltonianModel {
    /// Energies in eigenvector order, clustered with the default tolerance.
    pub fn new(energies: &[f64], source: DiagonalizerSource) -> Result<Self> {
        Self::with_spectrum(Spectrum::new(energies)?, energies.to_vec(), source)
    }

    pub fn with_tolerance(energies: &[f64], tolerance: f64, source: DiagonalizerSource) -> Result<Self> {
        Self::with_spectrum(Spectrum::from_energies(energies, tolerance)?, energies.to_vec(), source)
    }

    /// Eigenvector n gets the n-th smallest energy.
    pub fn from_spectrum(spectrum: Spectrum, source: DiagonalizerSource) -> Result<Self> {
        let energies = spectrum.energies().to_vec();
        Self::with_spectrum(spectrum, energies, source)
    }

    fn with_spectrum(spectrum: Spectrum, energies: Vec<f64>, source: DiagonalizerSource) -> Result<Self> {
        let d = energies.len();
        if d < 2 || !d.is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "spectrum of size {d} is not 2^N with N >= 1"
            )));
        }
        let n_qubits = d.trailing_zeros() as usize;
        let cluster_of = spectrum.classify(&energies)?;
        let mut model = Self {
            n_qubits,
            energies: energies.into(),
            spectrum: Arc::new(spectrum),
            cluster_of: cluster_of.into(),
            basis: Basis::Identity,
        };
        model.basis = model.make_basis(source)?;
        if n_qubits <= MAX_SYNTHESIS_QUBITS {
            model.materialize()?;
        }
        Ok(model)
    }

    /// Same spectrum and eigenvalue order, new eigenbasis. The spectrum
    /// data is shared, not copied.
    pub fn rediagonalized(&self, source: DiagonalizerSource) -> Result<Self> {
        let mut model = Self {
            basis: Basis::Identity,
            ..self.clone_shallow()
        };
        model.basis = model.make_basis(source)?;
        if model.n_qubits <= MAX_SYNTHESIS_QUBITS {
            model.materialize()?;
        }
        Ok(model)
    }

    fn clone_shallow(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            energies: Arc::clone(&self.energies),
            spectrum: Arc::clone(&self.spectrum),
            cluster_of: Arc::clone(&self.cluster_of),
            basis: Basis::Identity,
        }
    }

    fn make_basis(&self, source: DiagonalizerSource) -> Result<Basis> {
        let (n_qubits, d) = (self.n_qubits, self.dim());
        Ok(match source {
            DiagonalizerSource::Haar(stream) => {
                check_dense(n_qubits)?;
                Basis::Dense(sample_haar(d, &mut stream.rng()))
            }
            DiagonalizerSource::Explicit(u) => {
                if u.rows() != d || u.cols() != d {
                    return Err(Error::DimensionMismatch(format!(
                        "{}x{} unitary for a spectrum of size {d}",
                        u.rows(),
                        u.cols()
                    )));
                }
                let r = u.unitarity_residual();
                if r > UNITARY_TOL {
                    return Err(Error::InvalidArgument(format!("diagonalizer not unitary ({r:.2e})")));
                }
                Basis::Dense(u)
            }
            DiagonalizerSource::Circuit(c) => {
                if c.n_qubits() != n_qubits {
                    return Err(Error::DimensionMismatch(format!(
                        "{}-qubit circuit for a {n_qubits}-qubit spectrum",
                        c.n_qubits()
                    )));
                }
                Basis::Circuit(c)
            }
            DiagonalizerSource::Identity => Basis::Identity,
        })
    }

    /// Builds the dense unitary if it is not there yet.
    pub fn materialize(&mut self) -> Result<()> {
        if !self.is_materialized() {
            self.basis = Basis::Dense(self.unitary()?);
        }
        Ok(())
    }

    pub fn is_materialized(&self) -> bool {
        matches!(self.basis, Basis::Dense(_))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Cluster index of each eigenvector.
    pub fn cluster_of(&self) -> &[usize] {
        &self.cluster_of
    }

    /// Dense `U`, built on demand for matrix-free models.
    pub fn unitary(&self) -> Result<ComplexMatrix> {
        match &self.basis {
            Basis::Dense(u) => Ok(u.clone()),
            Basis::Circuit(c) => circuit_unitary(c),
            Basis::Identity => {
                check_dense(self.n_qubits)?;
                Ok(ComplexMatrix::identity(self.dim()))
            }
        }
    }

    /// Dense `U·diag(E)·U†`.
    pub fn hamiltonian(&self) -> Result<ComplexMatrix> {
        let u = self.unitary()?;
        let mut scaled = u.clone();
        for i in 0..self.dim() {
            for (z, &e) in scaled.row_mut(i).iter_mut().zip(self.energies.iter()) {
                *z *= e;
            }
        }
        Ok((&scaled * &u.adjoint()).hermitian_part())
    }

    /// `U†ψ`: coordinates in the eigenbasis.
    pub fn to_eigenbasis(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(psi.len())?;
        match &self.basis {
            Basis::Dense(u) => u.adjoint_matvec(psi),
            Basis::Circuit(c) => {
                let mut v = psi.to_vec();
                c.apply_adjoint_to_vector(&mut v)?;
                Ok(v)
            }
            Basis::Identity => Ok(psi.to_vec()),
        }
    }

    /// `Uφ`.
    pub fn from_eigenbasis(&self, phi: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(phi.len())?;
        match &self.basis {
            Basis::Dense(u) => u.matvec(phi),
            Basis::Circuit(c) => {
                let mut v = phi.to_vec();
                c.apply_to_vector(&mut v)?;
                Ok(v)
            }
            Basis::Identity => Ok(phi.to_vec()),
        }
    }

    /// `Uφ`, reusing φ's storage when the basis allows it.
    pub(crate) fn from_eigenbasis_owned(&self, mut phi: Vec<Complex64>) -> Result<Vec<Complex64>> {
        self.check_len(phi.len())?;
        match &self.basis {
            Basis::Dense(u) => u.matvec(&phi),
            Basis::Circuit(c) => {
                c.apply_to_vector(&mut phi)?;
                Ok(phi)
            }
            Basis::Identity => Ok(phi),
        }
    }

    /// Eigenvector n, i.e. column n of U.
    pub fn eigenvector(&self, n: usize) -> Result<Vec<Complex64>> {
        match &self.basis {
            Basis::Dense(u) => Ok(u.column(n)),
            _ => {
                let mut e = vec![Complex64::new(0.0, 0.0); self.dim()];
                e[n] = Complex64::new(1.0, 0.0);
                self.from_eigenbasis(&e)
            }
        }
    }

    /// `Σ_{n∈members} coeffs[n]·u_n`, one pass over the needed columns.
    pub(crate) fn combine_columns(&self, members: &[usize], coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
        match &self.basis {
            Basis::Dense(u) => {
                let d = self.dim();
                let mut out = vec![Complex64::new(0.0, 0.0); d];
                for (i, o) in out.iter_mut().enumerate() {
                    let row = u.row(i);
                    *o = members.iter().map(|&n| row[n] * coeffs[n]).sum();
                }
                Ok(out)
            }
            _ => {
                let mut phi = vec![Complex64::new(0.0, 0.0); self.dim()];
                for &n in members {
                    phi[n] = coeffs[n];
                }
                self.from_eigenbasis_owned(phi)
            }
        }
    }

    /// Basis indices grouped by cluster.
    pub(crate) fn cluster_members(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.spectrum.clusters().len()];
        for (n, &j) in self.cluster_of.iter().enumerate() {
            groups[j].push(n);
        }
        groups
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {len} for a model of dimension {}",
                self.dim()
            )));
        }
        Ok(())
    }
}

fn check_dense(n_qubits: usize) -> Result<()> {
    if n_qubits > MAX_SYNTHESIS_QUBITS {
        return Err(Error::TooLarge(format!(
            "dense unitaries limited to {MAX_SYNTHESIS_QUBITS} qubits, got {n_qubits}"
        )));
    }
    Ok(())
}
