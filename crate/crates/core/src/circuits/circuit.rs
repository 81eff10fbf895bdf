use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::gates::{Gate, GateSet};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// Largest qubit count for dense circuit synthesis.
pub const MAX_SYNTHESIS_QUBITS: usize = 12;

/// One gate applied to specific qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Application {
    pub gate: Gate,
    pub targets: Vec<usize>,
}

/// An ordered gate sequence on N qubits. Its length is the circuit size C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumCircuit {
    n_qubits: usize,
    applications: Vec<Application>,
}

impl QuantumCircuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            applications: Vec::new(),
        }
    }

    pub fn from_applications(n_qubits: usize, applications: Vec<Application>) -> Result<Self> {
        let mut c = Self::new(n_qubits);
        for a in applications {
            c.push(a.gate, &a.targets)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate, targets: &[usize]) -> Result<()> {
        if targets.len() != gate.arity() {
            return Err(Error::InvalidArgument(format!(
                "{gate} takes {} target(s), got {}",
                gate.arity(),
                targets.len()
            )));
        }
        if let Some(&q) = targets.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::InvalidArgument(format!(
                "target {q} out of range for {} qubits",
                self.n_qubits
            )));
        }
        if targets.len() == 2 && targets[0] == targets[1] {
            return Err(Error::InvalidArgument(format!("{gate} targets must differ")));
        }
        self.applications.push(Application {
            gate,
            targets: targets.to_vec(),
        });
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn applications(&self) -> &[Application] {
        &self.applications
    }

    /// Number of gates, C.
    pub fn len(&self) -> usize {
        self.applications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.applications.is_empty()
    }

    /// Gate-wise inverse in reverse order.
    pub fn inverse(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            applications: self
                .applications
                .iter()
                .rev()
                .map(|a| Application {
                    gate: a.gate.inverse(),
                    targets: a.targets.clone(),
                })
                .collect(),
        }
    }

    /// Concatenation: `self` first, then `next`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if self.n_qubits != next.n_qubits {
            return Err(Error::DimensionMismatch("circuits on different qubit counts".into()));
        }
        let mut out = self.clone();
        out.applications.extend(next.applications.iter().cloned());
        Ok(out)
    }

    /// Applies the circuit to a state vector in place (`ψ ← U ψ`).
    pub fn apply_to_vector(&self, psi: &mut [Complex64]) -> Result<()> {
        self.check_dim(psi.len())?;
        for a in &self.applications {
            apply_gate_rows(psi, 1, self.n_qubits, a.gate, &a.targets);
        }
        Ok(())
    }

    /// `ψ ← U† ψ`.
    pub fn apply_adjoint_to_vector(&self, psi: &mut [Complex64]) -> Result<()> {
        self.check_dim(psi.len())?;
        for a in self.applications.iter().rev() {
            apply_gate_rows(psi, 1, self.n_qubits, a.gate.inverse(), &a.targets);
        }
        Ok(())
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if self.n_qubits >= usize::BITS as usize || len != 1usize << self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {len} for a {}-qubit circuit",
                self.n_qubits
            )));
        }
        Ok(())
    }
}

/// Left-multiplies the embedded gate onto `data`, read as 2^N rows of
/// `row_len` entries (row_len = 1 for a state vector).
pub(crate) fn apply_gate_rows(
    data: &mut [Complex64],
    row_len: usize,
    n_qubits: usize,
    gate: Gate,
    targets: &[usize],
) {
    let g = gate.entries();
    let d = 1usize << n_qubits;
    let bit = |q: usize| 1usize << (n_qubits - 1 - q);
    let zero = Complex64::new(0.0, 0.0);
    match targets {
        [q] => {
            let b = bit(*q);
            for k in 0..d / 2 {
                let i0 = insert_zero(k, b) * row_len;
                let i1 = i0 + b * row_len;
                for c in 0..row_len {
                    let (x0, x1) = (data[i0 + c], data[i1 + c]);
                    data[i0 + c] = g[0] * x0 + g[1] * x1;
                    data[i1 + c] = g[2] * x0 + g[3] * x1;
                }
            }
        }
        [qa, qb] => {
            let (ba, bb) = (bit(*qa), bit(*qb));
            // nonzero entries per row; the two-qubit gates here are sparse
            let rows: Vec<Vec<(usize, Complex64)>> = (0..4)
                .map(|r| (0..4).filter(|&c| g[4 * r + c] != zero).map(|c| (c, g[4 * r + c])).collect())
                .collect();
            let (lo, hi) = (ba.min(bb), ba.max(bb));
            let monomial: Option<[(usize, Complex64); 4]> = rows
                .iter()
                .map(|r| (r.len() == 1).then(|| r[0]))
                .collect::<Option<Vec<_>>>()
                .map(|v| [v[0], v[1], v[2], v[3]]);
            for k in 0..d / 4 {
                let base = insert_zero(insert_zero(k, lo), hi);
                let idx = [base, base | bb, base | ba, base | ba | bb].map(|i| i * row_len);
                for c in 0..row_len {
                    let x = idx.map(|i| data[i + c]);
                    match &monomial {
                        Some(m) => {
                            for (&(col, v), &i) in m.iter().zip(&idx) {
                                data[i + c] = v * x[col];
                            }
                        }
                        None => {
                            for (row, &i) in rows.iter().zip(&idx) {
                                data[i + c] = row.iter().map(|&(col, v)| v * x[col]).sum();
                            }
                        }
                    }
                }
            }
        }
        _ => unreachable!("gates act on one or two qubits"),
    }
}

/// Spreads k around a zero at the single-bit mask b.
fn insert_zero(k: usize, b: usize) -> usize {
    let low = k & (b - 1);
    ((k - low) << 1) | low
}

/// Draws C applications: gate uniform over the set; a single-qubit gate
/// lands on a uniform qubit, a two-qubit gate on a uniform pair of distinct
/// qubits (uniform over unordered pairs, with uniformly random orientation).
pub fn sample_random_circuit<R: Rng + ?Sized>(
    n_qubits: usize,
    length: usize,
    gate_set: &GateSet,
    rng: &mut R,
) -> Result<QuantumCircuit> {
    if n_qubits < 2 {
        return Err(Error::InvalidArgument(format!(
            "random circuits need N >= 2, got {n_qubits}"
        )));
    }
    let mut c = QuantumCircuit::new(n_qubits);
    c.applications.reserve(length);
    let gates = gate_set.gates();
    for _ in 0..length {
        let gate = gates[rng.random_range(0..gates.len())];
        let targets = if gate.arity() == 1 {
            vec![rng.random_range(0..n_qubits)]
        } else {
            let a = rng.random_range(0..n_qubits);
            let mut b = rng.random_range(0..n_qubits - 1);
            if b >= a {
                b += 1;
            }
            vec![a, b]
        };
        c.applications.push(Application { gate, targets });
    }
    Ok(c)
}

/// Dense unitary of the circuit; later applications multiply on the left.
pub fn circuit_unitary(c: &QuantumCircuit) -> Result<ComplexMatrix> {
    if c.n_qubits > MAX_SYNTHESIS_QUBITS {
        return Err(Error::TooLarge(format!(
            "dense synthesis limited to {MAX_SYNTHESIS_QUBITS} qubits, got {}",
            c.n_qubits
        )));
    }
    let d = 1usize << c.n_qubits;
    let mut u = ComplexMatrix::identity(d);
    for a in &c.applications {
        apply_gate_rows(u.as_mut_slice(), d, c.n_qubits, a.gate, &a.targets);
    }
    Ok(u)
}

/// Qubits touched by at least one gate.
pub fn circuit_support(c: &QuantumCircuit) -> BTreeSet<usize> {
    c.applications
        .iter()
        .flat_map(|a| a.targets.iter().copied())
        .collect()
}

/// Which expression [`no_touch_probability`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoTouchForm {
    /// `((N−M)/N)^{2C}`.
    PaperBound,
    /// Exact probability under [`sample_random_circuit`].
    Exact,
}

/// Probability that a random C-gate circuit leaves M fixed qubits untouched.
pub fn no_touch_probability(
    n: usize,
    m: usize,
    c: usize,
    gate_set: &GateSet,
    form: NoTouchForm,
) -> Result<f64> {
    if m == 0 || m >= n {
        return Err(Error::InvalidArgument(format!("need 1 <= M < N, got M={m}, N={n}")));
    }
    let (nf, mf) = (n as f64, m as f64);
    let free = (nf - mf) / nf;
    let exponent = i32::try_from(c).map_err(|_| Error::InvalidArgument("C too large".into()))?;
    Ok(match form {
        NoTouchForm::PaperBound => free.powi(2 * exponent),
        NoTouchForm::Exact => {
            let (q1, q2) = gate_set.arity_fractions();
            let pair_free = (nf - mf) * (nf - mf - 1.0) / (nf * (nf - 1.0));
            (q1 * free + q2 * pair_free).powi(exponent)
        }
    })
}

#[derive(Serialize, Deserialize)]
struct CircuitFile {
    n_qubits: usize,
    gates: Vec<GateEntry>,
}

#[derive(Serialize, Deserialize)]
struct GateEntry {
    name: String,
    targets: Vec<usize>,
}

impl QuantumCircuit {
    /// `{"n_qubits": N, "gates": [{"name": ..., "targets": [...]}]}`.
    pub fn to_json(&self) -> Result<String> {
        let file = CircuitFile {
            n_qubits: self.n_qubits,
            gates: self
                .applications
                .iter()
                .map(|a| GateEntry {
                    name: a.gate.name().to_string(),
                    targets: a.targets.clone(),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CircuitFile = serde_json::from_str(text)?;
        let mut c = QuantumCircuit::new(file.n_qubits);
        for entry in file.gates {
            c.push(entry.name.parse()?, &entry.targets)?;
        }
        Ok(c)
    }
}
