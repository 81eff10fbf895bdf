use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Split of N qubits into a subsystem (the qubits in `subsystem`) and an
/// environment (the rest).
///
/// Qubit 0 is the most significant bit of a basis index. Within the
/// subsystem and the environment, qubits keep their global order, so the
/// subsystem index of a basis state reads its subsystem bits from the
/// lowest-numbered qubit down.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LayoutSpec", into = "LayoutSpec")]
pub struct BipartitionLayout {
    n_qubits: usize,
    subsystem: Vec<usize>,
    environment: Vec<usize>,
    /// `full_index[s * d_E + e]` is the global basis index of |s⟩⊗|e⟩.
    full_index: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct LayoutSpec {
    n_qubits: usize,
    subsystem: Vec<usize>,
}

impl TryFrom<LayoutSpec> for BipartitionLayout {
    type Error = Error;

    fn try_from(s: LayoutSpec) -> Result<Self> {
        BipartitionLayout::new(s.n_qubits, &s.subsystem)
    }
}

impl From<BipartitionLayout> for LayoutSpec {
    fn from(l: BipartitionLayout) -> Self {
        LayoutSpec {
            n_qubits: l.n_qubits,
            subsystem: l.subsystem,
        }
    }
}

/// Qubit counts above this are rejected; 2^26 basis states is already far
/// beyond anything dense in this crate.
const MAX_QUBITS: usize = 26;

impl BipartitionLayout {
    pub fn new(n_qubits: usize, subsystem: &[usize]) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "layout needs 1..={MAX_QUBITS} qubits, got {n_qubits}"
            )));
        }
        let mut sub: Vec<usize> = subsystem.to_vec();
        sub.sort_unstable();
        sub.dedup();
        if sub.len() != subsystem.len() {
            return Err(Error::InvalidArgument("repeated subsystem qubit".into()));
        }
        if sub.is_empty() || sub.len() >= n_qubits {
            return Err(Error::InvalidArgument(format!(
                "subsystem must be a nonempty proper subset of {n_qubits} qubits"
            )));
        }
        if let Some(&q) = sub.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::InvalidArgument(format!(
                "qubit {q} out of range for {n_qubits} qubits"
            )));
        }
        let environment: Vec<usize> = (0..n_qubits).filter(|q| !sub.contains(q)).collect();
        let d_s = 1usize << sub.len();
        let d_e = 1usize << environment.len();
        let bit = |q: usize| 1usize << (n_qubits - 1 - q);
        let mut full_index = Vec::with_capacity(d_s * d_e);
        for s in 0..d_s {
            let mut base = 0;
            for (pos, &q) in sub.iter().enumerate() {
                if s >> (sub.len() - 1 - pos) & 1 == 1 {
                    base |= bit(q);
                }
            }
            for e in 0..d_e {
                let mut idx = base;
                for (pos, &q) in environment.iter().enumerate() {
                    if e >> (environment.len() - 1 - pos) & 1 == 1 {
                        idx |= bit(q);
                    }
                }
                full_index.push(idx);
            }
        }
        Ok(Self {
            n_qubits,
            subsystem: sub,
            environment,
            full_index,
        })
    }

    /// The first `m` qubits as subsystem.
    pub fn leading(n_qubits: usize, m: usize) -> Result<Self> {
        Self::new(n_qubits, &(0..m).collect::<Vec<_>>())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn subsystem(&self) -> &[usize] {
        &self.subsystem
    }

    pub fn environment(&self) -> &[usize] {
        &self.environment
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn d_s(&self) -> usize {
        1 << self.subsystem.len()
    }

    pub fn d_e(&self) -> usize {
        1 << self.environment.len()
    }

    /// Global basis index of `|s⟩⊗|e⟩`.
    #[inline]
    pub fn full_index(&self, s: usize, e: usize) -> usize {
        self.full_index[s * self.d_e() + e]
    }
}

/// `tr_E ρ` for a dense d×d operator.
pub fn partial_trace(rho: &ComplexMatrix, layout: &BipartitionLayout) -> Result<ComplexMatrix> {
    let d = layout.dim();
    if rho.rows() != d || rho.cols() != d {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator against a {}-qubit layout",
            rho.rows(),
            rho.cols(),
            layout.n_qubits()
        )));
    }
    let (d_s, d_e) = (layout.d_s(), layout.d_e());
    let mut out = ComplexMatrix::zeros(d_s, d_s);
    for s in 0..d_s {
        for s2 in 0..d_s {
            let mut acc = Complex64::new(0.0, 0.0);
            for e in 0..d_e {
                acc += rho[(layout.full_index(s, e), layout.full_index(s2, e))];
            }
            out[(s, s2)] = acc;
        }
    }
    Ok(out)
}

/// `tr_E |ψ⟩⟨ψ|` straight from the state vector, O(d_S·d).
pub fn reduce_pure(psi: &[Complex64], layout: &BipartitionLayout) -> Result<ComplexMatrix> {
    let mut out = ComplexMatrix::zeros(layout.d_s(), layout.d_s());
    accumulate_reduced(&mut out, psi, 1.0, layout)?;
    Ok(out)
}

/// `out += weight · tr_E |ψ⟩⟨ψ|`.
pub fn accumulate_reduced(
    out: &mut ComplexMatrix,
    psi: &[Complex64],
    weight: f64,
    layout: &BipartitionLayout,
) -> Result<()> {
    if psi.len() != layout.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state of length {} against a {}-qubit layout",
            psi.len(),
            layout.n_qubits()
        )));
    }
    let (d_s, d_e) = (layout.d_s(), layout.d_e());
    // Ψ[s][e] = ψ(s,e); ρ_S = Ψ Ψ†
    if layout.subsystem.iter().enumerate().all(|(i, &q)| i == q) {
        // leading qubits: the rows of Ψ are contiguous blocks of ψ
        for s in 0..d_s {
            let row_s = &psi[s * d_e..(s + 1) * d_e];
            for s2 in s..d_s {
                let row_s2 = &psi[s2 * d_e..(s2 + 1) * d_e];
                let v: Complex64 = row_s.iter().zip(row_s2).map(|(a, b)| a * b.conj()).sum();
                out[(s, s2)] += v * weight;
                if s2 != s {
                    out[(s2, s)] += v.conj() * weight;
                }
            }
        }
        return Ok(());
    }
    let idx = &layout.full_index;
    for s in 0..d_s {
        let row_s = &idx[s * d_e..(s + 1) * d_e];
        for s2 in s..d_s {
            let row_s2 = &idx[s2 * d_e..(s2 + 1) * d_e];
            let v: Complex64 = row_s.iter().zip(row_s2).map(|(&a, &b)| psi[a] * psi[b].conj()).sum();
            out[(s, s2)] += v * weight;
            if s2 != s {
                out[(s2, s)] += v.conj() * weight;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn layout_validation() {
        assert!(BipartitionLayout::new(3, &[]).is_err());
        assert!(BipartitionLayout::new(3, &[0, 1, 2]).is_err());
        assert!(BipartitionLayout::new(3, &[3]).is_err());
        assert!(BipartitionLayout::new(3, &[1, 1]).is_err());
        let l = BipartitionLayout::new(4, &[2, 0]).unwrap();
        assert_eq!(l.subsystem(), &[0, 2]);
        assert_eq!(l.environment(), &[1, 3]);
        assert_eq!((l.d_s(), l.d_e(), l.dim()), (4, 4, 16));
    }

    #[test]
    fn index_map_is_a_bijection() {
        let l = BipartitionLayout::new(5, &[1, 4]).unwrap();
        let mut seen = vec![false; 32];
        for s in 0..l.d_s() {
            for e in 0..l.d_e() {
                let i = l.full_index(s, e);
                assert!(!seen[i]);
                seen[i] = true;
            }
        }
        // qubit 1 is bit 3 (MSB convention), qubit 4 is bit 0
        assert_eq!(l.full_index(0b10, 0), 0b01000);
        assert_eq!(l.full_index(0b01, 0), 0b00001);
    }

    #[test]
    fn product_state_reduces_exactly() {
        let rho_s = ComplexMatrix::from_real_rows(&[&[0.75, 0.25], &[0.25, 0.25]]);
        let rho_e = ComplexMatrix::from_real_diagonal(&[0.5, 0.125, 0.25, 0.125]);
        let l = BipartitionLayout::leading(3, 1).unwrap();
        let got = partial_trace(&rho_s.kron(&rho_e), &l).unwrap();
        assert_eq!(got, rho_s);
    }

    #[test]
    fn bell_state_gives_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [c(s), c(0.0), c(0.0), c(s)];
        for keep in [0usize, 1] {
            let l = BipartitionLayout::new(2, &[keep]).unwrap();
            let via_matrix = partial_trace(&ComplexMatrix::outer(&psi, &psi), &l).unwrap();
            let via_vector = reduce_pure(&psi, &l).unwrap();
            for m in [via_matrix, via_vector] {
                assert!((m[(0, 0)].re - 0.5).abs() < 1e-15);
                assert!((m[(1, 1)].re - 0.5).abs() < 1e-15);
                assert!(m[(0, 1)].norm() < 1e-15);
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let l = BipartitionLayout::leading(2, 1).unwrap();
        assert!(partial_trace(&ComplexMatrix::identity(8), &l).is_err());
        assert!(reduce_pure(&[c(1.0)], &l).is_err());
    }
}
