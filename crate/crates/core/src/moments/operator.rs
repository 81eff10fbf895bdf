use num_complex::Complex64;

use super::perm::{digits, Perm4};
use crate::error::{Error, Result};
use crate::numerics::BipartitionLayout;

/// Largest qubit count for the explicit M constructions.
pub const MAX_M_QUBITS: usize = 4;

/// Entry access for `M = |ψ⟩⟨ψ| ⊗ |ψ⟩⟨ψ| ⊗ Σ_{s,e,s′,e′} |es⟩⟨es′| ⊗ |e′s′⟩⟨e′s|`
/// without storing its d⁸ entries.
struct MOperator<'a> {
    psi: &'a [Complex64],
    /// (s, e) of each global basis index.
    split: Vec<(usize, usize)>,
}

impl<'a> MOperator<'a> {
    fn new(layout: &BipartitionLayout, psi: &'a [Complex64]) -> Result<Self> {
        if layout.n_qubits() > MAX_M_QUBITS {
            return Err(Error::TooLarge(format!(
                "explicit M limited to {MAX_M_QUBITS} qubits, got {}",
                layout.n_qubits()
            )));
        }
        if psi.len() != layout.dim() {
            return Err(Error::DimensionMismatch(format!(
                "state of length {} for a {}-qubit layout",
                psi.len(),
                layout.n_qubits()
            )));
        }
        let mut split = vec![(0, 0); layout.dim()];
        for s in 0..layout.d_s() {
            for e in 0..layout.d_e() {
                split[layout.full_index(s, e)] = (s, e);
            }
        }
        Ok(Self { psi, split })
    }

    fn swap_part(&self, a3: usize, a4: usize, b3: usize, b4: usize) -> bool {
        let ((s, e), (s2, e2)) = (self.split[a3], self.split[a4]);
        let ((t, f), (t2, f2)) = (self.split[b3], self.split[b4]);
        e == f && e2 == f2 && s == t2 && t == s2
    }

    fn entry(&self, a: [usize; 4], b: [usize; 4]) -> Complex64 {
        if !self.swap_part(a[2], a[3], b[2], b[3]) {
            return Complex64::new(0.0, 0.0);
        }
        self.psi[a[0]] * self.psi[b[0]].conj() * self.psi[a[1]] * self.psi[b[1]].conj()
    }
}

/// `tr(M V_π)` for all 24 permutations, lexicographic order.
pub fn m_permutation_traces(layout: &BipartitionLayout, psi: &[Complex64]) -> Result<Vec<(Perm4, Complex64)>> {
    let m = MOperator::new(layout, psi)?;
    let d = layout.dim();
    Ok(Perm4::all()
        .into_iter()
        .map(|pi| {
            let tr = (0..d.pow(4))
                .map(|i| {
                    let b = digits(i, d);
                    m.entry(pi.act(b), b)
                })
                .sum();
            (pi, tr)
        })
        .collect())
}

/// Frobenius norm of M, summed entry by entry over the support of its
/// swap factor. Equals d for every normalized ψ.
pub fn m_matrix_norm_check(layout: &BipartitionLayout, psi: &[Complex64]) -> Result<f64> {
    let m = MOperator::new(layout, psi)?;
    let d = layout.dim();
    let (d_s, d_e) = (layout.d_s(), layout.d_e());
    let mut acc = 0.0;
    for s in 0..d_s {
        for s2 in 0..d_s {
            for e in 0..d_e {
                for e2 in 0..d_e {
                    let a3 = layout.full_index(s, e);
                    let b3 = layout.full_index(s2, e);
                    let a4 = layout.full_index(s2, e2);
                    let b4 = layout.full_index(s, e2);
                    for i in 0..d.pow(4) {
                        let [a1, b1, a2, b2] = digits(i, d);
                        acc += m.entry([a1, a2, a3, a4], [b1, b2, b3, b4]).norm_sqr();
                    }
                }
            }
        }
    }
    Ok(acc.sqrt())
}
