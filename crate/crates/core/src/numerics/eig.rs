//! Hermitian eigendecomposition.
//!
//! Householder reduction to a Hermitian tridiagonal matrix, a diagonal phase
//! change that makes the tridiagonal real symmetric, then the implicit QL
//! iteration with Wilkinson shifts (the classic `tql2` scheme). Eigenvector
//! rotations are applied to the rows of the transposed basis so every update
//! touches contiguous memory.
//!
//! Cost is O(n³) time and O(n²) memory; at n = 4096 that is roughly 512 MiB
//! for the working copies and minutes of single-threaded time, which is the
//! upper end of what this crate ever asks for.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Largest dimension accepted by the dense solvers.
pub const MAX_DIM: usize = 1 << 12;

/// Relative Hermiticity tolerance for input matrices.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues in ascending order, eigenvectors as orthonormal columns.
#[derive(Debug, Clone)]
pub struct HermitianEigResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigResult {
    /// `V·diag(λ)·V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let mut scaled = v.clone();
        for i in 0..n {
            for (z, &l) in scaled.row_mut(i).iter_mut().zip(&self.eigenvalues) {
                *z *= l;
            }
        }
        &scaled * &v.adjoint()
    }
}

fn check_input(a: &ComplexMatrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    if a.rows() > MAX_DIM {
        return Err(Error::TooLarge(format!(
            "dimension {} exceeds {MAX_DIM}",
            a.rows()
        )));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("eigensolver input"));
    }
    let residual = a.hermitian_residual();
    if residual > HERMITIAN_TOL {
        return Err(Error::NotHermitian { residual });
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEigResult> {
    check_input(a)?;
    let n = a.rows();
    let (diag, off, basis_t) = tridiagonalize(a, true);
    let mut basis_t = basis_t.expect("requested basis");
    let mut d = diag;
    let mut e = off;
    tql2(&mut d, &mut e, Some(&mut basis_t))?;

    // Sort ascending, permuting the rows of the transposed basis alongside.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let eigenvalues = order.iter().map(|&i| d[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[(row, col)] = basis_t[src * n + row];
        }
    }
    Ok(HermitianEigResult {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only (ascending); skips all basis bookkeeping.
pub fn hermitian_eigvals(a: &ComplexMatrix) -> Result<Vec<f64>> {
    check_input(a)?;
    let (mut d, mut e, _) = tridiagonalize(a, false);
    tql2(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Trace norm `‖A‖₁` (sum of singular values) of a square matrix.
///
/// Hermitian inputs take the eigenvalue route; anything else goes through
/// the eigenvalues of `A†A`.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "trace norm of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("trace norm input"));
    }
    if a.rows() == 0 || a.max_abs() == 0.0 {
        return Ok(0.0);
    }
    if a.hermitian_residual() <= 1e-13 {
        let h = a.hermitian_part();
        return Ok(hermitian_eigvals(&h)?.iter().map(|x| x.abs()).sum());
    }
    let gram = (&a.adjoint() * a).hermitian_part();
    Ok(hermitian_eigvals(&gram)?
        .iter()
        .map(|&x| x.max(0.0).sqrt())
        .sum())
}

/// Householder reduction `A = Q·T·Q†` followed by the phase change making
/// the subdiagonal real and nonnegative. Returns the real diagonal, the real
/// subdiagonal (padded with a trailing zero to length n) and, on request,
/// the transpose of the combined basis `Q·D` flattened row-major.
fn tridiagonalize(
    a: &ComplexMatrix,
    want_basis: bool,
) -> (Vec<f64>, Vec<f64>, Option<Vec<Complex64>>) {
    let n = a.rows();
    let zero = Complex64::new(0.0, 0.0);
    let mut w: Vec<Complex64> = a.hermitian_part().into_vec();
    let mut q: Option<Vec<Complex64>> = want_basis.then(|| ComplexMatrix::identity(n).into_vec());

    let mut v = vec![zero; n];
    let mut p = vec![zero; n];

    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let m = n - lo;
        let x0 = w[lo * n + k];
        let tail_norm2: f64 = (lo..n).map(|i| w[i * n + k].norm_sqr()).sum();
        let xnorm = tail_norm2.sqrt();
        let below = tail_norm2 - x0.norm_sqr();
        if xnorm == 0.0 || below <= f64::MIN_POSITIVE {
            continue;
        }
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;

        // v = x - alpha e1, normalized
        for (idx, i) in (lo..n).enumerate() {
            v[idx] = w[i * n + k];
        }
        v[0] -= alpha;
        let vnorm = v[..m].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut v[..m] {
            *z /= vnorm;
        }

        // p = A_sub v ; K = v† p ; w_vec = p - K v
        for (pi, i) in (lo..n).enumerate() {
            let row = &w[i * n + lo..i * n + n];
            p[pi] = row.iter().zip(&v[..m]).map(|(&a, &b)| a * b).sum();
        }
        let kk: Complex64 = v[..m].iter().zip(&p[..m]).map(|(a, b)| a.conj() * b).sum();
        for idx in 0..m {
            p[idx] -= kk * v[idx];
        }
        // A_sub -= 2 (v p† + p v†)
        for (ri, i) in (lo..n).enumerate() {
            let vi = v[ri];
            let pi = p[ri];
            let row = &mut w[i * n + lo..i * n + n];
            for (cj, z) in row.iter_mut().enumerate() {
                *z -= 2.0 * (vi * p[cj].conj() + pi * v[cj].conj());
            }
        }
        // column k and row k below the diagonal become (alpha, 0, ..., 0)
        w[lo * n + k] = alpha;
        w[k * n + lo] = alpha.conj();
        for i in lo + 1..n {
            w[i * n + k] = zero;
            w[k * n + i] = zero;
        }

        if let Some(q) = q.as_mut() {
            // Q[:, lo..] <- Q[:, lo..] (I - 2 v v†)
            for r in 0..n {
                let row = &mut q[r * n + lo..r * n + n];
                let s: Complex64 = row.iter().zip(&v[..m]).map(|(&a, &b)| a * b).sum();
                for (z, &vj) in row.iter_mut().zip(&v[..m]) {
                    *z -= 2.0 * s * vj.conj();
                }
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| w[i * n + i].re).collect();
    let mut off = vec![0.0; n];
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for k in 0..n.saturating_sub(1) {
        let t = w[(k + 1) * n + k];
        let r = t.norm();
        off[k] = r;
        phases[k + 1] = if r > 0.0 { phases[k] * (t / r) } else { phases[k] };
    }

    let basis_t = q.map(|q| {
        // (Q·D)^T: row j holds column j of Q scaled by phase j.
        let mut bt = vec![zero; n * n];
        for r in 0..n {
            for c in 0..n {
                bt[c * n + r] = q[r * n + c] * phases[c];
            }
        }
        bt
    });
    (diag, off, basis_t)
}

/// Implicit QL on the real symmetric tridiagonal (d, e) where `e[i]` couples
/// `i` and `i+1`. Rotations are applied to rows of `basis_t` (length n·n).
fn tql2(d: &mut [f64], e: &mut [f64], mut basis_t: Option<&mut Vec<Complex64>>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    let max_iter = 60 * n;
    let mut iterations = 0;
    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            loop {
                iterations += 1;
                if iterations > max_iter {
                    return Err(Error::NoConvergence(iterations));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(bt) = basis_t.as_deref_mut() {
                        let (head, tail) = bt.split_at_mut((i + 1) * n);
                        let row_i = &mut head[i * n..];
                        let row_next = &mut tail[..n];
                        for (zi, zn) in row_i.iter_mut().zip(row_next.iter_mut()) {
                            let hk = *zn;
                            *zn = *zi * s + hk * c;
                            *zi = *zi * c - hk * s;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
