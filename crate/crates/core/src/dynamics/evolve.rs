use num_complex::Complex64;

use super::model::HamiltonianModel;
use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::numerics::{accumulate_reduced, partial_trace, reduce_pure, BipartitionLayout, ComplexMatrix};

/// An initial state expressed in the model's eigenbasis, as weighted
/// vectors `(w_k, U†v_k)`.
#[derive(Debug, Clone)]
pub(crate) struct PreparedState {
    pub parts: Vec<(f64, Vec<Complex64>)>,
}

impl PreparedState {
    pub fn new(model: &HamiltonianModel, rho0: &DensityMatrix, layout: &BipartitionLayout) -> Result<Self> {
        check_dims(model, rho0, layout)?;
        let parts = rho0
            .decompose()?
            .into_iter()
            .map(|(w, v)| Ok((w, model.to_eigenbasis(&v)?)))
            .collect::<Result<_>>()?;
        Ok(Self { parts })
    }

    /// `ρ_S(t)` as a raw matrix.
    pub fn reduced_at(&self, model: &HamiltonianModel, layout: &BipartitionLayout, t: f64) -> Result<ComplexMatrix> {
        self.reduced_with_phases(model, layout, &evolution_phases(model.energies(), t))
    }

    /// `ρ_S(t)` given the precomputed `e^{−itE_n}`.
    pub fn reduced_with_phases(
        &self,
        model: &HamiltonianModel,
        layout: &BipartitionLayout,
        phases: &[Complex64],
    ) -> Result<ComplexMatrix> {
        let mut out = ComplexMatrix::zeros(layout.d_s(), layout.d_s());
        for (w, tilde) in &self.parts {
            let rotated: Vec<Complex64> = tilde.iter().zip(phases).map(|(a, p)| a * p).collect();
            let psi_t = model.from_eigenbasis_owned(rotated)?;
            accumulate_reduced(&mut out, &psi_t, *w, layout)?;
        }
        Ok(out)
    }

    /// `ρ̄_S = Σ_j tr_E(P_j ρ P_j)` via `v_j = U P_j ψ̃`.
    pub fn dephased(&self, model: &HamiltonianModel, layout: &BipartitionLayout) -> Result<ComplexMatrix> {
        let groups = model.cluster_members();
        let mut out = ComplexMatrix::zeros(layout.d_s(), layout.d_s());
        for (w, tilde) in &self.parts {
            for members in &groups {
                if members.iter().all(|&n| tilde[n] == Complex64::new(0.0, 0.0)) {
                    continue;
                }
                let v = model.combine_columns(members, tilde)?;
                accumulate_reduced(&mut out, &v, *w, layout)?;
            }
        }
        Ok(out)
    }
}

/// `e^{−itE_n}` for every eigenvalue.
pub fn evolution_phases(energies: &[f64], t: f64) -> Vec<Complex64> {
    energies.iter().map(|&e| Complex64::from_polar(1.0, -t * e)).collect()
}

fn check_dims(model: &HamiltonianModel, rho0: &DensityMatrix, layout: &BipartitionLayout) -> Result<()> {
    if rho0.dim() != model.dim() || layout.dim() != model.dim() {
        return Err(Error::DimensionMismatch(format!(
            "model dimension {}, state {}, layout {}",
            model.dim(),
            rho0.dim(),
            layout.dim()
        )));
    }
    Ok(())
}

/// `ρ_S(t) = tr_E[e^{−itH} ρ0 e^{itH}]`, evolved in the eigenbasis.
pub fn evolve_reduced(
    model: &HamiltonianModel,
    rho0: &DensityMatrix,
    layout: &BipartitionLayout,
    t: f64,
) -> Result<DensityMatrix> {
    let prepared = PreparedState::new(model, rho0, layout)?;
    DensityMatrix::from_reduction(prepared.reduced_at(model, layout, t)?)
}

/// Infinite-time average `ρ̄_S`: ρ0 dephased across energy clusters, then
/// reduced.
pub fn time_averaged_state(
    model: &HamiltonianModel,
    rho0: &DensityMatrix,
    layout: &BipartitionLayout,
) -> Result<DensityMatrix> {
    let prepared = PreparedState::new(model, rho0, layout)?;
    DensityMatrix::from_reduction(prepared.dephased(model, layout)?)
}

/// `Ω_t[ρ0] = Σ_{n,n′ in different clusters} e^{−it(E_n−E_n′)} ρ̃_{nn′} tr_E|u_n⟩⟨u_n′|`
/// with `ρ̃ = U†ρ0U`. Needs a dense basis.
pub fn omega_map(
    model: &HamiltonianModel,
    rho0: &DensityMatrix,
    layout: &BipartitionLayout,
    t: f64,
) -> Result<ComplexMatrix> {
    check_dims(model, rho0, layout)?;
    let d = model.dim();
    let u = model.unitary()?;
    let rho_tilde = &(&u.adjoint() * rho0.matrix()) * &u;
    let e = model.energies();
    let cl = model.cluster_of();

    let mut out = ComplexMatrix::zeros(layout.d_s(), layout.d_s());
    let mut a = vec![Complex64::new(0.0, 0.0); d];
    let mut u_n = vec![Complex64::new(0.0, 0.0); d];
    for n in 0..d {
        // a_n = Σ_{n′} conj(c_{nn′}) u_{n′}, so that tr_E|u_n⟩⟨a_n| sums the row
        a.fill(Complex64::new(0.0, 0.0));
        let mut any = false;
        for n2 in 0..d {
            if cl[n2] == cl[n] || rho_tilde[(n, n2)] == Complex64::new(0.0, 0.0) {
                continue;
            }
            any = true;
            let c = Complex64::from_polar(1.0, -t * (e[n] - e[n2])) * rho_tilde[(n, n2)];
            let cc = c.conj();
            for (i, ai) in a.iter_mut().enumerate() {
                *ai += cc * u[(i, n2)];
            }
        }
        if !any {
            continue;
        }
        for (i, x) in u_n.iter_mut().enumerate() {
            *x = u[(i, n)];
        }
        accumulate_cross(&mut out, &u_n, &a, layout);
    }
    Ok(out)
}

/// `out += tr_E |x⟩⟨y|`.
fn accumulate_cross(out: &mut ComplexMatrix, x: &[Complex64], y: &[Complex64], layout: &BipartitionLayout) {
    let (d_s, d_e) = (layout.d_s(), layout.d_e());
    for s in 0..d_s {
        for s2 in 0..d_s {
            let mut acc = Complex64::new(0.0, 0.0);
            for e in 0..d_e {
                acc += x[layout.full_index(s, e)] * y[layout.full_index(s2, e)].conj();
            }
            out[(s, s2)] += acc;
        }
    }
}

/// Drops every eigenbasis coherence between distinct clusters. Applying it
/// twice gives bit-identical output.
pub fn dephase_eigenbasis(rho_tilde: &ComplexMatrix, cluster_of: &[usize]) -> Result<ComplexMatrix> {
    let d = cluster_of.len();
    if rho_tilde.rows() != d || rho_tilde.cols() != d {
        return Err(Error::DimensionMismatch("dephasing operand".into()));
    }
    Ok(ComplexMatrix::from_fn(d, d, |i, j| {
        if cluster_of[i] == cluster_of[j] {
            rho_tilde[(i, j)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Full-system dephasing `Σ_j P_j ρ P_j` in the local basis.
pub fn dephase_full(model: &HamiltonianModel, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let u = model.unitary()?;
    let tilde = &(&u.adjoint() * rho) * &u;
    let dephased = dephase_eigenbasis(&tilde, model.cluster_of())?;
    Ok(&(&u * &dephased) * &u.adjoint())
}

/// Full-system `ρ(t)`, for small checks.
pub fn evolve_full(model: &HamiltonianModel, rho0: &DensityMatrix, t: f64) -> Result<ComplexMatrix> {
    let u = model.unitary()?;
    let e = model.energies();
    let tilde = &(&u.adjoint() * rho0.matrix()) * &u;
    let rotated = ComplexMatrix::from_fn(e.len(), e.len(), |i, j| {
        tilde[(i, j)] * Complex64::from_polar(1.0, -t * (e[i] - e[j]))
    });
    Ok((&(&u * &rotated) * &u.adjoint()).hermitian_part())
}

/// `tr_E ρ0`, the t = 0 reduced state.
pub fn initial_reduced(rho0: &DensityMatrix, layout: &BipartitionLayout) -> Result<ComplexMatrix> {
    if let Some(psi) = rho0.pure_vector() {
        return reduce_pure(psi, layout);
    }
    partial_trace(rho0.matrix(), layout)
}
