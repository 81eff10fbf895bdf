use num_complex::Complex64;

use super::matrix::ComplexMatrix;

/// Householder QR of a square matrix.
///
/// Returns the unitary factor `Q` and the diagonal of `R`. The diagonal is
/// complex; callers that need the unique factorization with a positive
/// diagonal rescale the columns of `Q` by `r_ii / |r_ii|`.
pub fn householder_qr(a: &ComplexMatrix) -> (ComplexMatrix, Vec<Complex64>) {
    assert!(a.is_square(), "householder_qr expects a square matrix");
    let n = a.rows();
    let zero = Complex64::new(0.0, 0.0);
    let mut r = a.clone();
    let mut reflectors: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut r_diag = vec![zero; n];
    let mut s = vec![zero; n];

    for k in 0..n {
        let x0 = r[(k, k)];
        let xnorm = (k..n).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            reflectors.push(Vec::new());
            continue;
        }
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        let mut v: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            r_diag[k] = x0;
            reflectors.push(Vec::new());
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        apply_reflector(&mut r, &v, k, k, &mut s);
        r_diag[k] = alpha;
        reflectors.push(v);
    }

    // Q = H_0 H_1 ... H_{n-1}, built right to left on the identity.
    let mut q = ComplexMatrix::identity(n);
    for k in (0..n).rev() {
        let v = &reflectors[k];
        if !v.is_empty() {
            apply_reflector(&mut q, v, k, k, &mut s);
        }
    }
    (q, r_diag)
}

/// Left-applies `I − 2vv†` to rows `row0..` and columns `col0..` of `m`.
fn apply_reflector(
    m: &mut ComplexMatrix,
    v: &[Complex64],
    row0: usize,
    col0: usize,
    scratch: &mut [Complex64],
) {
    let n = m.cols();
    let width = n - col0;
    let s = &mut scratch[..width];
    s.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
    for (vi, i) in v.iter().zip(row0..) {
        let row = &m.row(i)[col0..];
        let cv = vi.conj();
        for (acc, &a) in s.iter_mut().zip(row) {
            *acc += cv * a;
        }
    }
    for (vi, i) in v.iter().zip(row0..) {
        let f = 2.0 * vi;
        let row = &mut m.row_mut(i)[col0..];
        for (a, &acc) in row.iter_mut().zip(s.iter()) {
            *a -= f * acc;
        }
    }
}
