use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

use super::*;
use crate::ensembles::RngStream;
use crate::numerics::{hermitian_eigvals, partial_trace, trace_norm, ComplexMatrix};

fn haar_model(energies: &[f64], seed: u64) -> HamiltonianModel {
    HamiltonianModel::new(energies, DiagonalizerSource::Haar(RngStream::new(seed, 7))).unwrap()
}

fn random_energies(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = RngStream::new(seed, 3).rng();
    (0..n).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect()
}

fn random_pure(d: usize, seed: u64) -> DensityMatrix {
    let mut rng = RngStream::new(seed, 5).rng();
    let mut v: Vec<Complex64> = (0..d)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    DensityMatrix::from_pure(v).unwrap()
}

fn random_mixed(d: usize, seed: u64) -> DensityMatrix {
    let a = random_pure(d, seed);
    let b = random_pure(d, seed + 1000);
    let c = DensityMatrix::maximally_mixed(d);
    DensityMatrix::mixture(&[(0.5, &a), (0.3, &b), (0.2, &c)]).unwrap()
}

/// e^{−iHt} by scaling and squaring a Taylor series; independent of the
/// eigenbasis route.
fn expm_minus_i(h: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let d = h.rows();
    let norm = h.frobenius_norm() * t.abs();
    let squarings = (norm.max(1.0).log2().ceil() as i32 + 4).max(0);
    let a = h.scale(Complex64::new(0.0, -t / 2f64.powi(squarings)));
    let mut term = ComplexMatrix::identity(d);
    let mut sum = ComplexMatrix::identity(d);
    for k in 1..30 {
        term = (&term * &a).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[test]
fn t_zero_gives_partial_trace() {
    let m = haar_model(&random_energies(16, 1), 1);
    let layout = BipartitionLayout::new(4, &[1, 3]).unwrap();
    let rho = random_mixed(16, 2);
    let got = evolve_reduced(&m, &rho, &layout, 0.0).unwrap();
    let want = partial_trace(rho.matrix(), &layout).unwrap();
    assert!((got.matrix() - &want).frobenius_norm() < 1e-12);
}

#[test]
fn eigenstate_is_stationary() {
    let m = haar_model(&random_energies(8, 3), 3);
    let layout = BipartitionLayout::leading(3, 1).unwrap();
    let rho = DensityMatrix::from_pure(m.eigenvector(5).unwrap()).unwrap();
    let r0 = evolve_reduced(&m, &rho, &layout, 0.0).unwrap();
    for t in [0.7, 3.0, 100.0] {
        let rt = evolve_reduced(&m, &rho, &layout, t).unwrap();
        assert!((rt.matrix() - r0.matrix()).frobenius_norm() < 1e-12);
        assert!(omega_map(&m, &rho, &layout, t).unwrap().frobenius_norm() < 1e-12);
    }
    let tr = equilibration_trace(&m, &rho, &layout, &[0.0, 1.0, 10.0], 0.1, None).unwrap();
    assert!(tr.distances.iter().all(|&x| x < 1e-12));
}

#[test]
fn matches_matrix_exponential() {
    let layout = BipartitionLayout::leading(3, 1).unwrap();
    let rho = random_mixed(8, 4);
    for source in [DiagonalizerSource::Identity, DiagonalizerSource::Haar(RngStream::root(4))] {
        let m = HamiltonianModel::new(&random_energies(8, 4), source).unwrap();
        let h = m.hamiltonian().unwrap();
        for t in [0.3, 2.5] {
            let u = expm_minus_i(&h, t);
            let full = &(&u * rho.matrix()) * &u.adjoint();
            let want = partial_trace(&full, &layout).unwrap();
            let got = evolve_reduced(&m, &rho, &layout, t).unwrap();
            assert!((got.matrix() - &want).frobenius_norm() < 1e-10);
        }
    }
}

#[test]
fn local_evolution_keeps_subsystem_spectrum() {
    let m = HamiltonianModel::new(&random_energies(8, 5), DiagonalizerSource::Identity).unwrap();
    let layout = BipartitionLayout::leading(3, 1).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // (|0⟩+|1⟩)/√2 ⊗ |00⟩ is a product state
    let mut psi = vec![Complex64::new(0.0, 0.0); 8];
    psi[0] = Complex64::new(s, 0.0);
    psi[4] = Complex64::new(s, 0.0);
    let rho = DensityMatrix::from_pure(psi).unwrap();
    let e0 = evolve_reduced(&m, &rho, &layout, 0.0).unwrap().eigenvalues().unwrap();
    for t in [0.4, 1.9, 7.3] {
        let e = evolve_reduced(&m, &rho, &layout, t).unwrap().eigenvalues().unwrap();
        for (a, b) in e.iter().zip(&e0) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn dephased_state_special_cases() {
    let layout = BipartitionLayout::leading(3, 2).unwrap();
    let diag = DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[
        0.1, 0.2, 0.05, 0.05, 0.3, 0.1, 0.15, 0.05,
    ]))
    .unwrap();
    let m = HamiltonianModel::new(&random_energies(8, 6), DiagonalizerSource::Identity).unwrap();
    let avg = time_averaged_state(&m, &diag, &layout).unwrap();
    let want = partial_trace(diag.matrix(), &layout).unwrap();
    assert!((avg.matrix() - &want).frobenius_norm() < 1e-15);

    let flat = haar_model(&[1.5; 8], 6);
    let rho = random_mixed(8, 6);
    let avg = time_averaged_state(&flat, &rho, &layout).unwrap();
    let want = partial_trace(rho.matrix(), &layout).unwrap();
    assert!((avg.matrix() - &want).frobenius_norm() < 1e-12);
}

#[test]
fn dephased_state_matches_time_samples() {
    let m = haar_model(&random_energies(64, 7), 7);
    let layout = BipartitionLayout::leading(6, 1).unwrap();
    let rho = DensityMatrix::zero_state(6).unwrap();
    let horizon = 1e4 / m.spectrum().delta_e();
    let mut rng = RngStream::root(7).rng();
    let mut acc = ComplexMatrix::zeros(2, 2);
    let n = 10_000;
    for _ in 0..n {
        let t = rng.random::<f64>() * horizon;
        acc = &acc + evolve_reduced(&m, &rho, &layout, t).unwrap().matrix();
    }
    let empirical = acc.scale_real(1.0 / n as f64);
    let avg = time_averaged_state(&m, &rho, &layout).unwrap();
    assert!(trace_norm(&(&empirical - avg.matrix())).unwrap() < 1e-2);
}

#[test]
fn omega_at_t_zero() {
    let m = haar_model(&random_energies(16, 8), 8);
    let layout = BipartitionLayout::leading(4, 2).unwrap();
    let rho = random_pure(16, 8);
    let om = omega_map(&m, &rho, &layout, 0.0).unwrap();
    let r0 = partial_trace(rho.matrix(), &layout).unwrap();
    let avg = time_averaged_state(&m, &rho, &layout).unwrap();
    assert!((&om - &(&r0 - avg.matrix())).frobenius_norm() < 1e-12);
}

#[test]
fn dephasing_is_idempotent() {
    let m = haar_model(&[0.0, 1.0, 1.0, 2.0, 3.0, 3.0, 3.0, 5.0], 9);
    let rho = random_mixed(8, 9);
    let u = m.unitary().unwrap();
    let tilde = &(&u.adjoint() * rho.matrix()) * &u;
    let once = dephase_eigenbasis(&tilde, m.cluster_of()).unwrap();
    let twice = dephase_eigenbasis(&once, m.cluster_of()).unwrap();
    assert_eq!(once, twice);
    let f1 = dephase_full(&m, rho.matrix()).unwrap();
    let f2 = dephase_full(&m, &f1).unwrap();
    assert!((&f1 - &f2).frobenius_norm() < 1e-13);
}

#[test]
fn full_evolution_preserves_spectrum() {
    for n in [2usize, 5, 8] {
        let d = 1 << n;
        let m = haar_model(&random_energies(d, 10 + n as u64), 10);
        let rho = random_mixed(d, 10);
        let e0 = hermitian_eigvals(rho.matrix()).unwrap();
        let et = hermitian_eigvals(&evolve_full(&m, &rho, 3.3).unwrap()).unwrap();
        for (a, b) in e0.iter().zip(&et) {
            assert!((a - b).abs() < 1e-9, "N={n}");
        }
    }
}

#[test]
fn mixed_evolution_is_convex() {
    let m = haar_model(&random_energies(16, 11), 11);
    let layout = BipartitionLayout::new(4, &[2]).unwrap();
    let a = random_pure(16, 11);
    let b = random_pure(16, 12);
    let mix = DensityMatrix::mixture(&[(0.35, &a), (0.65, &b)]).unwrap();
    for t in [0.0, 1.3, 9.9] {
        let ra = evolve_reduced(&m, &a, &layout, t).unwrap();
        let rb = evolve_reduced(&m, &b, &layout, t).unwrap();
        let rm = evolve_reduced(&m, &mix, &layout, t).unwrap();
        let want = &ra.matrix().scale_real(0.35) + &rb.matrix().scale_real(0.65);
        assert!((rm.matrix() - &want).frobenius_norm() < 1e-12);
    }
}

#[test]
fn trace_at_t_zero_is_vacuous() {
    let m = haar_model(&random_energies(16, 12), 12);
    let layout = BipartitionLayout::leading(4, 1).unwrap();
    let rho = DensityMatrix::zero_state(4).unwrap();
    let tr = equilibration_trace(&m, &rho, &layout, &[0.0], 0.1, None).unwrap();
    let r0 = partial_trace(rho.matrix(), &layout).unwrap();
    let avg = time_averaged_state(&m, &rho, &layout).unwrap();
    let want = trace_norm(&(&r0 - avg.matrix())).unwrap();
    assert!((tr.distances[0] - want).abs() < 1e-12);
    assert!(tr.bound_r1[0] >= 2f64.sqrt() / 0.1);
    assert!((tr.mu_abs[0] - 1.0).abs() < 1e-15);
    assert!(tr.bound_r3.is_none());
}

#[test]
fn csv_layout() {
    let tr = EquilibrationTrace {
        times: vec![0.0, 0.5],
        distances: vec![0.25, 1.0 / 3.0],
        mu_abs: vec![1.0, 0.5],
        bound_r1: vec![14.0, 2.0],
        bound_r3: None,
    };
    let mut buf = Vec::new();
    tr.write_csv(&mut buf, &[("seed".into(), "1".into())]).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(
        text,
        "# seed: 1\nt,dist,mu_abs,bound_r1,bound_r3\n0,0.25,1,14,\n0.5,0.333333333333,0.5,2,\n"
    );
}

#[test]
fn time_average_of_stationary_state() {
    let m = haar_model(&random_energies(8, 13), 13);
    let layout = BipartitionLayout::leading(3, 1).unwrap();
    let rho = DensityMatrix::from_pure(m.eigenvector(2).unwrap()).unwrap();
    let mut rng = RngStream::root(13).rng();
    let est = time_average_distance(&m, &rho, &layout, 50.0, 200, &mut rng).unwrap();
    assert!(est.mean < 1e-12 && est.stderr < 1e-12);
    assert!(time_average_distance(&m, &rho, &layout, 50.0, 99, &mut rng).is_err());
}

#[test]
fn time_average_stderr_scaling() {
    let m = haar_model(&random_energies(16, 14), 14);
    let layout = BipartitionLayout::leading(4, 2).unwrap();
    let rho = DensityMatrix::zero_state(4).unwrap();
    // average the ratio over a few independent pairs to damp its own noise
    let mut ratios = Vec::new();
    for k in 0..8 {
        let a = time_average_distance(&m, &rho, &layout, 20.0, 2000, &mut RngStream::new(14, k).rng()).unwrap();
        let b = time_average_distance(&m, &rho, &layout, 20.0, 4000, &mut RngStream::new(15, k).rng()).unwrap();
        ratios.push(a.stderr / b.stderr);
    }
    let r = ratios.iter().sum::<f64>() / ratios.len() as f64;
    assert!((r - 2f64.sqrt()).abs() < 0.2 * 2f64.sqrt(), "ratio {r}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn omega_is_evolved_minus_dephased(seed in 0u64..1_000_000, n in 3usize..=5, m_sub in 1usize..=2, t in 0.0f64..20.0) {
        let d = 1 << n;
        let mut e = random_energies(d, seed);
        // force a degenerate pair now and then
        if seed % 3 == 0 {
            e[1] = e[0];
        }
        let model = haar_model(&e, seed);
        let layout = BipartitionLayout::leading(n, m_sub).unwrap();
        let rho = if seed % 2 == 0 { random_pure(d, seed) } else { random_mixed(d, seed) };
        let om = omega_map(&model, &rho, &layout, t).unwrap();
        let rt = evolve_reduced(&model, &rho, &layout, t).unwrap();
        let avg = time_averaged_state(&model, &rho, &layout).unwrap();
        let diff = rt.matrix() - avg.matrix();
        prop_assert!((&om - &diff).frobenius_norm() < 1e-9);

        let dist = trace_norm(&diff).unwrap();
        prop_assert!((0.0..=2.0).contains(&dist));
        let ds = layout.d_s() as f64;
        prop_assert!(dist <= ds.sqrt() * om.frobenius_norm() + 1e-12);
    }
}
